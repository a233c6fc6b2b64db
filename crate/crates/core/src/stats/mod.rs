//! Hypothesis tests used to label experiments and to compare title variants.
//!
//! All p-values are two-sided except chi-square, which is the upper tail.
//! No continuity correction is applied anywhere.

mod dist;
mod study;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dist::{
    beta_i, chi_square_sf, erfc, f_sf, gamma_q, ln_gamma, normal_two_sided, t_two_sided,
    upper_tail_p,
};
pub use study::{
    derive_pairs, pair_significance, read_study1_csv, read_study3_csv, study_report, AssociationRow,
    CorrelationRow, DimensionTest, ExperimentRecord, MetricDetail, MetricRow, PairOutcome, PairTestRow, Study1Report,
    Study3Report, StudyInput, StudyMode, StudyReport, TitlePairRecord, Variant, WordPair,
    HIGH_PERCEPTION_THRESHOLD,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestKind {
    ChiSquare,
    Z,
    T,
    R,
    F,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    pub df: f64,
    pub p_value: f64,
    pub kind: TestKind,
}

/// Rows are groups, columns are outcomes: `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContingencyTable2x2 {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl ContingencyTable2x2 {
    pub fn new(a: u64, b: u64, c: u64, d: u64) -> Self {
        ContingencyTable2x2 { a, b, c, d }
    }

    /// Successes and failures for two groups.
    pub fn from_counts(success1: u64, n1: u64, success2: u64, n2: u64) -> Result<Self> {
        if success1 > n1 || success2 > n2 {
            return Err(Error::Argument("success count exceeds trials".into()));
        }
        Ok(Self::new(success1, n1 - success1, success2, n2 - success2))
    }
}

/// Pearson chi-square test of independence on a 2x2 table, df = 1.
pub fn chi_square_2x2(table: ContingencyTable2x2) -> Result<TestResult> {
    let cells = [[table.a, table.b], [table.c, table.d]].map(|r| r.map(|v| v as f64));
    let rows = [cells[0][0] + cells[0][1], cells[1][0] + cells[1][1]];
    let cols = [cells[0][0] + cells[1][0], cells[0][1] + cells[1][1]];
    if rows.iter().chain(&cols).any(|m| *m == 0.0) {
        return Err(Error::Degenerate(format!("table {table:?} has an empty marginal")));
    }
    let n = rows[0] + rows[1];
    let mut statistic = 0.0;
    for (i, row) in cells.iter().enumerate() {
        for (j, observed) in row.iter().enumerate() {
            let expected = rows[i] * cols[j] / n;
            statistic += (observed - expected).powi(2) / expected;
        }
    }
    Ok(TestResult {
        statistic,
        df: 1.0,
        p_value: chi_square_sf(statistic, 1.0),
        kind: TestKind::ChiSquare,
    })
}

/// Pooled two-proportion z test of x1/n1 against x2/n2.
pub fn two_proportion_z(x1: u64, n1: u64, x2: u64, n2: u64) -> Result<TestResult> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::Argument("group sizes must be positive".into()));
    }
    if x1 > n1 || x2 > n2 {
        return Err(Error::Argument("success count exceeds group size".into()));
    }
    let (n1f, n2f) = (n1 as f64, n2 as f64);
    let pooled = (x1 + x2) as f64 / (n1f + n2f);
    if pooled == 0.0 || pooled == 1.0 {
        return Err(Error::Degenerate(format!("pooled proportion is {pooled}")));
    }
    let se = (pooled * (1.0 - pooled) * (1.0 / n1f + 1.0 / n2f)).sqrt();
    let z = (x1 as f64 / n1f - x2 as f64 / n2f) / se;
    Ok(TestResult {
        statistic: z,
        df: 0.0,
        p_value: normal_two_sided(z),
        kind: TestKind::Z,
    })
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample variance (n - 1 denominator).
pub fn sample_variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

fn check_finite(xs: &[f64], name: &str) -> Result<()> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::Argument(format!("{name} contains non-finite values")))
    }
}

/// Paired t test on the differences `y - x`, df = n - 1.
pub fn paired_t_test(x: &[f64], y: &[f64]) -> Result<TestResult> {
    if x.len() != y.len() {
        return Err(Error::Argument(format!("length mismatch: {} vs {}", x.len(), y.len())));
    }
    if x.len() < 2 {
        return Err(Error::Argument("paired t test needs at least two pairs".into()));
    }
    check_finite(x, "x")?;
    check_finite(y, "y")?;
    let d: Vec<f64> = x.iter().zip(y).map(|(a, b)| b - a).collect();
    let var = sample_variance(&d);
    // Differences that are equal up to rounding (4.4 - 3.9 vs 4.5 - 4.0) would
    // otherwise yield an astronomically large t.
    let scale = d.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if var <= 0.0 || var.sqrt() <= 1e-10 * scale {
        return Err(Error::Degenerate("paired differences have zero variance".into()));
    }
    let n = d.len() as f64;
    let t = mean(&d) / (var.sqrt() / n.sqrt());
    let df = n - 1.0;
    Ok(TestResult {
        statistic: t,
        df,
        p_value: t_two_sided(t, df),
        kind: TestKind::T,
    })
}

/// Pearson correlation with a two-sided t-based p-value, df = n - 2.
pub fn pearson_r(x: &[f64], y: &[f64]) -> Result<TestResult> {
    if x.len() != y.len() {
        return Err(Error::Argument(format!("length mismatch: {} vs {}", x.len(), y.len())));
    }
    if x.len() < 3 {
        return Err(Error::Argument("correlation needs at least three observations".into()));
    }
    check_finite(x, "x")?;
    check_finite(y, "y")?;
    let (mx, my) = (mean(x), mean(y));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx).powi(2);
        syy += (b - my).powi(2);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Degenerate("correlation input has zero variance".into()));
    }
    let r = (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0);
    let df = x.len() as f64 - 2.0;
    Ok(TestResult {
        statistic: r,
        df,
        p_value: upper_tail_p(r, TestKind::R, df)?,
        kind: TestKind::R,
    })
}

/// Cronbach's alpha; rows are respondents, columns are items.
pub fn cronbach_alpha(items: &[Vec<f64>]) -> Result<f64> {
    if items.len() < 2 {
        return Err(Error::Argument("need at least two respondents".into()));
    }
    let k = items[0].len();
    if k < 2 {
        return Err(Error::Argument("need at least two items".into()));
    }
    if items.iter().any(|row| row.len() != k) {
        return Err(Error::Argument("ragged item matrix".into()));
    }
    for row in items {
        check_finite(row, "items")?;
    }
    let item_var_sum: f64 = (0..k)
        .map(|j| sample_variance(&items.iter().map(|row| row[j]).collect::<Vec<_>>()))
        .sum();
    let totals: Vec<f64> = items.iter().map(|row| row.iter().sum()).collect();
    let total_var = sample_variance(&totals);
    if total_var <= 0.0 {
        return Err(Error::Degenerate("total score has zero variance".into()));
    }
    let k = k as f64;
    Ok(k / (k - 1.0) * (1.0 - item_var_sum / total_var))
}
