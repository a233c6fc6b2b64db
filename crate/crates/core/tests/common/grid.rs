use read_engine::stats::TestKind;

/// (kind, statistic, df, p). Chi-square rows are upper tails; t and z rows are
/// two-sided. Reference values computed independently with SciPy.
pub const GOLDEN_GRID: [(TestKind, f64, f64, f64); 60] = [
    (TestKind::ChiSquare, 0.001, 1.0, 0.9747728793699604),
    (TestKind::ChiSquare, 0.1, 1.0, 0.7518296340458492),
    (TestKind::ChiSquare, 0.5, 1.0, 0.47950012218695337),
    (TestKind::ChiSquare, 1.0, 1.0, 0.31731050786291115),
    (TestKind::ChiSquare, 2.5, 1.0, 0.11384629800665763),
    (TestKind::ChiSquare, 3.841458820694124, 1.0, 0.04999999999999989),
    (TestKind::ChiSquare, 6.6667, 1.0, 0.009823090776702492),
    (TestKind::ChiSquare, 10.0, 1.0, 0.001565402258002549),
    (TestKind::ChiSquare, 25.0, 1.0, 5.733031437583875e-07),
    (TestKind::ChiSquare, 51.7, 1.0, 6.466274952741323e-13),
    (TestKind::ChiSquare, 0.5, 2.0, 0.7788007830714049),
    (TestKind::ChiSquare, 3.0, 2.0, 0.22313016014842982),
    (TestKind::ChiSquare, 7.0, 3.0, 0.07189777249646509),
    (TestKind::ChiSquare, 12.0, 5.0, 0.03478778050624185),
    (TestKind::ChiSquare, 0.8, 4.0, 0.938448064449895),
    (TestKind::ChiSquare, 20.0, 10.0, 0.029252688076961124),
    (TestKind::ChiSquare, 45.0, 30.0, 0.03860175826631727),
    (TestKind::ChiSquare, 100.0, 80.0, 0.064570368921133),
    (TestKind::ChiSquare, 150.0, 120.0, 0.03307348091130466),
    (TestKind::ChiSquare, 4.2, 1.5, 0.0762711050665947),
    (TestKind::T, 0.0, 5.0, 1.0),
    (TestKind::T, 0.5, 1.0, 0.7048327646991336),
    (TestKind::T, 1.0, 1.0, 0.49999999999999956),
    (TestKind::T, 2.0, 2.0, 0.1835034190722739),
    (TestKind::T, 3.4641016151377544, 2.0, 0.07417990022744854),
    (TestKind::T, 1.5, 3.0, 0.23058386524482283),
    (TestKind::T, 2.5, 4.0, 0.06676654481198813),
    (TestKind::T, 4.0, 5.0, 0.010323415480831452),
    (TestKind::T, 0.3, 10.0, 0.7703206075657987),
    (TestKind::T, 1.96, 10.0, 0.07843624024769974),
    (TestKind::T, 2.228, 10.0, 0.050011771817111327),
    (TestKind::T, 3.0, 20.0, 0.007075898791211097),
    (TestKind::T, 1.0, 30.0, 0.32530861542602985),
    (TestKind::T, 2.0, 60.0, 0.050033043651457436),
    (TestKind::T, 5.0, 8.0, 0.001052825793366539),
    (TestKind::T, 10.0, 3.0, 0.0021283990584141494),
    (TestKind::T, 0.01, 7.0, 0.9923003176436218),
    (TestKind::T, 6.0, 100.0, 3.17249150280286e-08),
    (TestKind::T, 1.2, 1000.0, 0.23042355232446715),
    (TestKind::T, 30.046, 29.0, 2.1050506508435717e-23),
    (TestKind::Z, 0.0, 0.0, 1.0),
    (TestKind::Z, 0.01, 0.0, 0.9920212873707368),
    (TestKind::Z, 0.1, 0.0, 0.920344325445942),
    (TestKind::Z, 0.5, 0.0, 0.6170750774519738),
    (TestKind::Z, 1.0, 0.0, 0.31731050786291415),
    (TestKind::Z, 1.5, 0.0, 0.13361440253771614),
    (TestKind::Z, 1.6329931618554523, 0.0, 0.10247043485974937),
    (TestKind::Z, 1.96, 0.0, 0.04999579029644087),
    (TestKind::Z, 2.0, 0.0, 0.04550026389635839),
    (TestKind::Z, 2.5, 0.0, 0.012419330651552265),
    (TestKind::Z, 2.575829, 0.0, 0.010000008778481622),
    (TestKind::Z, 3.0, 0.0, 0.0026997960632601866),
    (TestKind::Z, 3.5, 0.0, 0.00046525815807105003),
    (TestKind::Z, 4.0, 0.0, 6.334248366623973e-05),
    (TestKind::Z, 4.5, 0.0, 6.795346249460107e-06),
    (TestKind::Z, 5.0, 0.0, 5.733031437583866e-07),
    (TestKind::Z, 6.0, 0.0, 1.973175290075389e-09),
    (TestKind::Z, 7.0710678118654755, 0.0, 1.5374597944280182e-12),
    (TestKind::Z, 8.0, 0.0, 1.244192114854348e-15),
    (TestKind::Z, -1.2, 0.0, 0.23013934044341644),
];
