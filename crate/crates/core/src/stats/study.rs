//! Experiment records and the two study-level analyses: per-pair significance of
//! word variants (study 1) and before/after comparison of title variants (study 3).

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::io::Read;

use serde::{Deserialize, Serialize};

use super::{
    chi_square_2x2, cronbach_alpha, paired_t_test, pearson_r, sample_variance, two_proportion_z,
    ContingencyTable2x2, TestResult,
};
use crate::error::{Error, Result};
use crate::model::Dimension;

/// A mean coded perception score at or above this counts as "high".
pub const HIGH_PERCEPTION_THRESHOLD: f64 = 4.0;

/// One participant's exposure to one word.
///
/// `ues_items` are raw 1-5 responses ordered EA, EA-n, FA, FA-n, PU, PU-n, RW,
/// RW-n; the `-n` items are negatively worded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub participant_id: String,
    pub pair_id: String,
    pub word: String,
    pub selected: bool,
    pub ues_items: [u8; 8],
    pub recalled: bool,
}

impl ExperimentRecord {
    pub fn validate(&self) -> Result<()> {
        if let Some(v) = self.ues_items.iter().find(|v| !(1..=5).contains(*v)) {
            return Err(Error::Data(format!(
                "perception item {v} outside 1..=5 for participant {} word {:?}",
                self.participant_id, self.word
            )));
        }
        Ok(())
    }

    /// Items after reverse-coding the negative statements (6 - raw).
    pub fn coded_items(&self) -> [f64; 8] {
        let mut out = [0.0; 8];
        for (i, raw) in self.ues_items.iter().enumerate() {
            let v = f64::from(*raw);
            out[i] = if i % 2 == 1 { 6.0 - v } else { v };
        }
        out
    }

    pub fn perception_score(&self) -> f64 {
        self.coded_items().iter().sum::<f64>() / 8.0
    }

    pub fn high_perception(&self) -> bool {
        self.perception_score() >= HIGH_PERCEPTION_THRESHOLD
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordPair {
    pub pair_id: String,
    pub first: String,
    pub second: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Original,
    Modified,
}

/// Aggregate outcome of one title variant. Rates are percentages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TitlePairRecord {
    pub pair_id: String,
    pub variant: Variant,
    pub selection_rate: f64,
    pub evaluation_avg: f64,
    pub retention_rate: f64,
}

impl TitlePairRecord {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("selection_rate", self.selection_rate), ("retention_rate", self.retention_rate)] {
            if !(0.0..=100.0).contains(&v) {
                return Err(Error::Data(format!("{name} {v} outside [0, 100] in pair {}", self.pair_id)));
            }
        }
        if !(1.0..=5.0).contains(&self.evaluation_avg) {
            return Err(Error::Data(format!(
                "evaluation_avg {} outside [1, 5] in pair {}",
                self.evaluation_avg, self.pair_id
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Deserialize)]
struct Study1Row {
    participant_id: String,
    pair_id: String,
    word: String,
    selected: u8,
    ea: u8,
    ea_n: u8,
    fa: u8,
    fa_n: u8,
    pu: u8,
    pu_n: u8,
    rw: u8,
    rw_n: u8,
    recalled: u8,
}

fn binary(v: u8, what: &str, row: usize) -> Result<bool> {
    match v {
        0 => Ok(false),
        1 => Ok(true),
        other => Err(Error::Data(format!("row {row}: {what} must be 0 or 1, got {other}"))),
    }
}

/// Reads the study 1 CSV (`participant_id,pair_id,word,selected,ea,ea_n,...,rw_n,recalled`).
pub fn read_study1_csv<R: Read>(input: R) -> Result<Vec<ExperimentRecord>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let mut out = Vec::new();
    for (i, row) in reader.deserialize::<Study1Row>().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| Error::Data(format!("row {line}: {e}")))?;
        let record = ExperimentRecord {
            participant_id: row.participant_id,
            pair_id: row.pair_id,
            word: row.word,
            selected: binary(row.selected, "selected", line)?,
            ues_items: [row.ea, row.ea_n, row.fa, row.fa_n, row.pu, row.pu_n, row.rw, row.rw_n],
            recalled: binary(row.recalled, "recalled", line)?,
        };
        record
            .validate()
            .map_err(|e| Error::Data(format!("row {line}: {e}")))?;
        out.push(record);
    }
    Ok(out)
}

/// Reads the study 3 CSV (`pair_id,variant,selection_rate,evaluation_avg,retention_rate`).
pub fn read_study3_csv<R: Read>(input: R) -> Result<Vec<TitlePairRecord>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let mut out = Vec::new();
    for (i, row) in reader.deserialize::<TitlePairRecord>().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| Error::Data(format!("row {line}: {e}")))?;
        row.validate()
            .map_err(|e| Error::Data(format!("row {line}: {e}")))?;
        out.push(row);
    }
    Ok(out)
}

/// Pairs implied by the records: each pair id must carry exactly two words,
/// ordered by first appearance. Output is sorted by pair id.
pub fn derive_pairs(records: &[ExperimentRecord]) -> Result<Vec<WordPair>> {
    let mut words: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for r in records {
        let entry = words.entry(r.pair_id.as_str()).or_default();
        if !entry.contains(&r.word.as_str()) {
            entry.push(&r.word);
        }
    }
    words
        .into_iter()
        .map(|(pair_id, ws)| match ws.as_slice() {
            [a, b] => Ok(WordPair {
                pair_id: pair_id.to_string(),
                first: a.to_string(),
                second: b.to_string(),
            }),
            _ => Err(Error::Data(format!(
                "pair {pair_id} has {} distinct words, expected 2",
                ws.len()
            ))),
        })
        .collect()
}

/// Outcome of one dimension's test within a pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DimensionTest {
    pub dimension: Dimension,
    /// `None` when the test is undefined (e.g. nobody selected either word).
    pub result: Option<TestResult>,
    pub rates: [f64; 2],
    pub significant: bool,
    /// Index (0 or 1) of the word with the higher rate, when significant.
    pub winner: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairOutcome {
    pub pair: WordPair,
    pub exposures: [u64; 2],
    pub tests: Vec<DimensionTest>,
}

impl PairOutcome {
    pub fn test(&self, dimension: Dimension) -> Option<&DimensionTest> {
        self.tests.iter().find(|t| t.dimension == dimension)
    }
}

#[derive(Default, Clone, Copy)]
struct Tally {
    n: u64,
    selected: u64,
    high: u64,
    recalled: u64,
}

fn tallies<'a>(
    records: &'a [ExperimentRecord],
    pairs: &'a [WordPair],
) -> Result<HashMap<(&'a str, &'a str), Tally>> {
    let by_id: HashMap<&str, &WordPair> = pairs.iter().map(|p| (p.pair_id.as_str(), p)).collect();
    if by_id.len() != pairs.len() {
        return Err(Error::Data("pair table repeats a pair id".into()));
    }
    let mut out: HashMap<(&str, &str), Tally> = HashMap::new();
    for r in records {
        let pair = by_id
            .get(r.pair_id.as_str())
            .ok_or_else(|| Error::Data(format!("record pair id {:?} is not in the pair table", r.pair_id)))?;
        if r.word != pair.first && r.word != pair.second {
            return Err(Error::Data(format!(
                "word {:?} is not part of pair {}",
                r.word, pair.pair_id
            )));
        }
        r.validate()?;
        let t = out.entry((pair.pair_id.as_str(), r.word.as_str())).or_default();
        t.n += 1;
        t.selected += u64::from(r.selected);
        t.high += u64::from(r.high_perception());
        t.recalled += u64::from(r.recalled);
    }
    Ok(out)
}

fn judged(dimension: Dimension, test: Result<TestResult>, rates: [f64; 2], alpha: f64) -> DimensionTest {
    let result = test.ok();
    let significant = result.is_some_and(|r| r.p_value < alpha) && rates[0] != rates[1];
    let winner = significant.then(|| usize::from(rates[1] > rates[0]));
    DimensionTest {
        dimension,
        result,
        rates,
        significant,
        winner,
    }
}

/// Per-pair significance on participation (2x2 chi-square on selections),
/// perception (two-proportion z on high-perception observations) and
/// perseverance (2x2 chi-square on recall). A test that is undefined for a
/// pair (empty marginal, pooled proportion 0 or 1) counts as not significant.
pub fn pair_significance(
    records: &[ExperimentRecord],
    pairs: &[WordPair],
    alpha: f64,
) -> Result<Vec<PairOutcome>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Argument(format!("alpha {alpha} outside (0, 1)")));
    }
    let counts = tallies(records, pairs)?;
    let mut out = Vec::with_capacity(pairs.len());
    for pair in pairs {
        let mut t = [Tally::default(); 2];
        for (i, word) in [&pair.first, &pair.second].into_iter().enumerate() {
            t[i] = counts
                .get(&(pair.pair_id.as_str(), word.as_str()))
                .copied()
                .filter(|t| t.n > 0)
                .ok_or_else(|| Error::Data(format!("word {word:?} in pair {} has no exposures", pair.pair_id)))?;
        }
        let rate = |f: fn(&Tally) -> u64| t.map(|x| f(&x) as f64 / x.n as f64);
        let chi = |f: fn(&Tally) -> u64| {
            ContingencyTable2x2::from_counts(f(&t[0]), t[0].n, f(&t[1]), t[1].n).and_then(chi_square_2x2)
        };
        let tests = vec![
            judged(Dimension::Participation, chi(|x| x.selected), rate(|x| x.selected), alpha),
            judged(
                Dimension::Perception,
                two_proportion_z(t[0].high, t[0].n, t[1].high, t[1].n),
                rate(|x| x.high),
                alpha,
            ),
            judged(Dimension::Perseverance, chi(|x| x.recalled), rate(|x| x.recalled), alpha),
        ];
        out.push(PairOutcome {
            pair: pair.clone(),
            exposures: [t[0].n, t[1].n],
            tests,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StudyMode {
    Study1,
    Study3,
}

pub enum StudyInput<'a> {
    Study1 {
        records: &'a [ExperimentRecord],
        pairs: Option<&'a [WordPair]>,
    },
    Study3(&'a [TitlePairRecord]),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairTestRow {
    pub dimension: Dimension,
    pub pair_id: String,
    pub statistic: Option<f64>,
    pub df: Option<f64>,
    pub p: Option<f64>,
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationRow {
    pub first: Dimension,
    pub second: Dimension,
    pub r: Option<f64>,
    pub df: Option<f64>,
    pub p: Option<f64>,
}

/// Association between two dimensions' significance indicators across pairs.
/// `table` is `[both, first only, second only, neither]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssociationRow {
    pub first: Dimension,
    pub second: Dimension,
    pub table: [u64; 4],
    pub statistic: Option<f64>,
    pub df: Option<f64>,
    pub p: Option<f64>,
    pub significant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Study1Report {
    pub alpha: f64,
    pub n_pairs: usize,
    pub n_records: usize,
    pub pair_tests: Vec<PairTestRow>,
    pub fraction_significant: BTreeMap<Dimension, f64>,
    pub correlations: Vec<CorrelationRow>,
    pub associations: Vec<AssociationRow>,
    pub participation_rate: f64,
    pub mean_perception: f64,
    pub sd_perception: Option<f64>,
    pub high_perception_rate: f64,
    pub recall_rate: f64,
    pub cronbach_alpha: Option<f64>,
}

/// Paired t test of one title metric, modified minus original.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricRow {
    pub metric: String,
    pub t: Option<f64>,
    pub df: Option<f64>,
    pub p: Option<f64>,
    pub mean_original: f64,
    pub mean_modified: f64,
}

/// Everything about a metric beyond the fixed row schema.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricDetail {
    pub metric: String,
    pub n: usize,
    pub significant: bool,
    pub sd_original: Option<f64>,
    pub sd_modified: Option<f64>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Study3Report {
    pub alpha: f64,
    pub n_pairs: usize,
    pub metrics: Vec<MetricRow>,
    pub details: Vec<MetricDetail>,
    pub no_effect: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum StudyReport {
    Study1(Study1Report),
    Study3(Study3Report),
}

const DIMENSION_PAIRS: [(Dimension, Dimension); 3] = [
    (Dimension::Participation, Dimension::Perception),
    (Dimension::Participation, Dimension::Perseverance),
    (Dimension::Perception, Dimension::Perseverance),
];

fn sd(xs: &[f64]) -> Option<f64> {
    (xs.len() >= 2).then(|| sample_variance(xs).sqrt())
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

/// Runs the study-level analysis for either study design.
pub fn study_report(input: StudyInput<'_>, alpha: f64) -> Result<StudyReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Argument(format!("alpha {alpha} outside (0, 1)")));
    }
    match input {
        StudyInput::Study1 { records, pairs } => {
            let derived;
            let pairs = match pairs {
                Some(p) => p,
                None => {
                    derived = derive_pairs(records)?;
                    &derived
                }
            };
            study1(records, pairs, alpha).map(StudyReport::Study1)
        }
        StudyInput::Study3(records) => study3(records, alpha).map(StudyReport::Study3),
    }
}

fn study1(records: &[ExperimentRecord], pairs: &[WordPair], alpha: f64) -> Result<Study1Report> {
    let outcomes = pair_significance(records, pairs, alpha)?;
    let mut sorted: Vec<&PairOutcome> = outcomes.iter().collect();
    sorted.sort_by(|a, b| a.pair.pair_id.cmp(&b.pair.pair_id));

    let dims = [Dimension::Participation, Dimension::Perception, Dimension::Perseverance];
    let mut pair_tests = Vec::new();
    for o in &sorted {
        for t in &o.tests {
            pair_tests.push(PairTestRow {
                dimension: t.dimension,
                pair_id: o.pair.pair_id.clone(),
                statistic: t.result.map(|r| r.statistic),
                df: t.result.map(|r| r.df),
                p: t.result.map(|r| r.p_value),
                significant: t.significant,
            });
        }
    }

    let n_pairs = sorted.len();
    let significant = |o: &PairOutcome, d: Dimension| o.test(d).is_some_and(|t| t.significant);
    let fraction_significant = dims
        .iter()
        .map(|d| {
            let k = sorted.iter().filter(|o| significant(o, *d)).count();
            (*d, if n_pairs == 0 { 0.0 } else { k as f64 / n_pairs as f64 })
        })
        .collect();

    // per-word rates, two words per pair
    let word_rates = |d: Dimension| -> Vec<f64> {
        sorted
            .iter()
            .flat_map(|o| o.test(d).map(|t| t.rates).unwrap_or([0.0; 2]))
            .collect()
    };
    let correlations = DIMENSION_PAIRS
        .iter()
        .map(|(a, b)| {
            let r = pearson_r(&word_rates(*a), &word_rates(*b)).ok();
            CorrelationRow {
                first: *a,
                second: *b,
                r: r.map(|r| r.statistic),
                df: r.map(|r| r.df),
                p: r.map(|r| r.p_value),
            }
        })
        .collect();

    let associations = DIMENSION_PAIRS
        .iter()
        .map(|(a, b)| {
            let mut table = [0u64; 4];
            for o in &sorted {
                let idx = match (significant(o, *a), significant(o, *b)) {
                    (true, true) => 0,
                    (true, false) => 1,
                    (false, true) => 2,
                    (false, false) => 3,
                };
                table[idx] += 1;
            }
            let r = chi_square_2x2(ContingencyTable2x2::new(table[0], table[1], table[2], table[3])).ok();
            AssociationRow {
                first: *a,
                second: *b,
                table,
                statistic: r.map(|r| r.statistic),
                df: r.map(|r| r.df),
                p: r.map(|r| r.p_value),
                significant: r.is_some_and(|r| r.p_value < alpha),
            }
        })
        .collect();

    let n = records.len() as f64;
    let scores: Vec<f64> = records.iter().map(ExperimentRecord::perception_score).collect();
    let items: Vec<Vec<f64>> = records.iter().map(|r| r.coded_items().to_vec()).collect();
    let share = |f: fn(&ExperimentRecord) -> bool| records.iter().filter(|r| f(r)).count() as f64 / n;
    Ok(Study1Report {
        alpha,
        n_pairs,
        n_records: records.len(),
        pair_tests,
        fraction_significant,
        correlations,
        associations,
        participation_rate: share(|r| r.selected),
        mean_perception: mean(&scores),
        sd_perception: sd(&scores),
        high_perception_rate: share(ExperimentRecord::high_perception),
        recall_rate: share(|r| r.recalled),
        cronbach_alpha: cronbach_alpha(&items).ok(),
    })
}

fn study3(records: &[TitlePairRecord], alpha: f64) -> Result<Study3Report> {
    let mut by_pair: BTreeMap<&str, [Option<&TitlePairRecord>; 2]> = BTreeMap::new();
    let mut duplicates = Vec::new();
    for r in records {
        r.validate()?;
        let slot = &mut by_pair.entry(r.pair_id.as_str()).or_default()[r.variant as usize];
        if slot.is_some() {
            duplicates.push(format!("{}/{:?}", r.pair_id, r.variant));
        }
        *slot = Some(r);
    }
    if !duplicates.is_empty() {
        return Err(Error::Data(format!("duplicate variants: {}", duplicates.join(", "))));
    }
    let orphans: Vec<&str> = by_pair
        .iter()
        .filter(|(_, v)| v.iter().any(Option::is_none))
        .map(|(k, _)| *k)
        .collect();
    if !orphans.is_empty() {
        return Err(Error::Data(format!("unpaired records for pair ids: {}", orphans.join(", "))));
    }
    if by_pair.is_empty() {
        return Err(Error::Data("no title pairs".into()));
    }

    let pairs: Vec<(&TitlePairRecord, &TitlePairRecord)> = by_pair
        .values()
        .map(|v| (v[0].expect("checked"), v[1].expect("checked")))
        .collect();
    let metric = |name: &str, f: fn(&TitlePairRecord) -> f64| {
        let orig: Vec<f64> = pairs.iter().map(|(o, _)| f(o)).collect();
        let modi: Vec<f64> = pairs.iter().map(|(_, m)| f(m)).collect();
        let test = paired_t_test(&orig, &modi);
        let note = match &test {
            Ok(_) => None,
            Err(Error::Degenerate(_)) => Some("no effect: paired differences are constant".to_string()),
            Err(e) => Some(e.to_string()),
        };
        let test = test.ok();
        let row = MetricRow {
            metric: name.to_string(),
            t: test.map(|r| r.statistic),
            df: test.map(|r| r.df),
            p: test.map(|r| r.p_value),
            mean_original: mean(&orig),
            mean_modified: mean(&modi),
        };
        let detail = MetricDetail {
            metric: name.to_string(),
            n: pairs.len(),
            significant: test.is_some_and(|r| r.p_value < alpha),
            sd_original: sd(&orig),
            sd_modified: sd(&modi),
            note,
        };
        (row, detail)
    };
    let (metrics, details): (Vec<_>, Vec<_>) = [
        metric("selection_rate", |r| r.selection_rate),
        metric("evaluation_avg", |r| r.evaluation_avg),
        metric("retention_rate", |r| r.retention_rate),
    ]
    .into_iter()
    .unzip();
    let no_effect = details.iter().all(|d| !d.significant);
    Ok(Study3Report {
        alpha,
        n_pairs: pairs.len(),
        metrics,
        details,
        no_effect,
    })
}

fn opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "n/a".to_string(), |x| format!("{x:.digits$}"))
}

impl StudyReport {
    /// Human-readable rendering; layout may change between versions.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        match self {
            StudyReport::Study1(r) => {
                let _ = writeln!(s, "Study 1: {} pairs, {} observations, alpha {}", r.n_pairs, r.n_records, r.alpha);
                let _ = writeln!(
                    s,
                    "participation rate {:.3}  mean perception {:.3} (sd {})  high perception {:.3}  recall {:.3}  cronbach alpha {}",
                    r.participation_rate,
                    r.mean_perception,
                    opt(r.sd_perception, 3),
                    r.high_perception_rate,
                    r.recall_rate,
                    opt(r.cronbach_alpha, 3)
                );
                for (d, f) in &r.fraction_significant {
                    let _ = writeln!(s, "  {d:<14} significant in {:.1}% of pairs", f * 100.0);
                }
                for c in &r.correlations {
                    let _ = writeln!(s, "  r({}, {}) = {}  p = {}", c.first, c.second, opt(c.r, 3), opt(c.p, 4));
                }
                for a in &r.associations {
                    let _ = writeln!(
                        s,
                        "  association {} x {}: chi2 = {}  p = {}  table {:?}",
                        a.first,
                        a.second,
                        opt(a.statistic, 3),
                        opt(a.p, 4),
                        a.table
                    );
                }
            }
            StudyReport::Study3(r) => {
                let _ = writeln!(s, "Study 3: {} title pairs, alpha {}", r.n_pairs, r.alpha);
                let _ = writeln!(s, "{:<16}{:>10}{:>10}{:>10}{:>10}{:>8}", "metric", "original", "modified", "t", "p", "sig");
                for (m, d) in r.metrics.iter().zip(&r.details) {
                    let _ = writeln!(
                        s,
                        "{:<16}{:>10.2}{:>10.2}{:>10}{:>10}{:>8}",
                        m.metric,
                        m.mean_original,
                        m.mean_modified,
                        opt(m.t, 3),
                        opt(m.p, 4),
                        if d.significant { "yes" } else { "no" }
                    );
                    if let Some(note) = &d.note {
                        let _ = writeln!(s, "  {note}");
                    }
                }
                if r.no_effect {
                    let _ = writeln!(s, "no effect detected");
                }
            }
        }
        s
    }
}
