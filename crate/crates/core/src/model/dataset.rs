use std::collections::BTreeMap;
use std::io::{Read, Write};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Dimension;
use crate::error::{Error, Result};
use crate::features::{Feature, ReadFeatures};
use crate::report::sig6;
use crate::stats::{pair_significance, ExperimentRecord, WordPair};

/// A word with its binary engagement labels. Features are absent when the
/// word came straight from an experiment and have not been extracted yet.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledWord {
    pub word: String,
    pub features: Option<ReadFeatures>,
    pub labels: BTreeMap<Dimension, u8>,
}

impl LabeledWord {
    pub fn label(&self, dimension: Dimension) -> Option<u8> {
        self.labels.get(&dimension).copied()
    }

    /// The `ie` label must be the conjunction of the other three whenever all four are present.
    pub fn validate(&self) -> Result<()> {
        if let Some((d, v)) = self.labels.iter().find(|(_, v)| **v > 1) {
            return Err(Error::Data(format!("{}: {d} label {v} is not binary", self.word)));
        }
        let get = |d| self.labels.get(&d).copied();
        if let (Some(a), Some(b), Some(c), Some(ie)) = (
            get(Dimension::Participation),
            get(Dimension::Perception),
            get(Dimension::Perseverance),
            get(Dimension::Ie),
        ) {
            if ie != (a & b & c) {
                return Err(Error::Data(format!(
                    "{}: ie label {ie} contradicts dimension labels ({a}, {b}, {c})",
                    self.word
                )));
            }
        }
        Ok(())
    }
}

/// Reads the labeled dataset CSV: `word`, any of the four label columns, and
/// optionally all twelve feature columns.
pub fn read_labeled_csv<R: Read>(input: R) -> Result<Vec<LabeledWord>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| Error::Data(format!("labeled dataset header: {e}")))?
        .clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let word_col = col("word").ok_or_else(|| Error::Data("labeled dataset needs a word column".into()))?;
    let label_cols: Vec<(Dimension, usize)> = Dimension::ALL
        .iter()
        .filter_map(|d| col(d.as_str()).map(|c| (*d, c)))
        .collect();
    let feature_cols: Vec<(Feature, usize)> = Feature::ALL
        .iter()
        .filter_map(|f| col(f.as_str()).map(|c| (*f, c)))
        .collect();
    if !feature_cols.is_empty() && feature_cols.len() != Feature::ALL.len() {
        let missing: Vec<&str> = Feature::ALL
            .iter()
            .filter(|f| col(f.as_str()).is_none())
            .map(|f| f.as_str())
            .collect();
        return Err(Error::Data(format!("incomplete feature columns, missing {}", missing.join(", "))));
    }

    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| Error::Data(format!("row {line}: {e}")))?;
        let cell = |c: usize| record.get(c).unwrap_or("");
        let word = cell(word_col).to_string();
        if word.is_empty() {
            return Err(Error::Data(format!("row {line}: empty word")));
        }
        let mut labels = BTreeMap::new();
        for (d, c) in &label_cols {
            match cell(*c) {
                "" => {}
                "0" => {
                    labels.insert(*d, 0);
                }
                "1" => {
                    labels.insert(*d, 1);
                }
                other => return Err(Error::Data(format!("row {line}: {d} label {other:?} is not 0/1"))),
            }
        }
        let features = if feature_cols.is_empty() {
            None
        } else {
            let mut f = ReadFeatures::default();
            for (feat, c) in &feature_cols {
                let v: f64 = cell(*c)
                    .parse()
                    .map_err(|_| Error::Data(format!("row {line}: {feat} value {:?} is not numeric", cell(*c))))?;
                f.set(*feat, v)
                    .map_err(|e| Error::Data(format!("row {line}: {e}")))?;
            }
            Some(f)
        };
        let lw = LabeledWord { word, features, labels };
        lw.validate()
            .map_err(|e| Error::Data(format!("row {line}: {e}")))?;
        out.push(lw);
    }
    Ok(out)
}

/// Writes `word,participation,perception,perseverance,ie` and, when every row
/// has features, the twelve feature columns. Missing labels are empty cells.
pub fn write_labeled_csv<W: Write>(out: W, rows: &[LabeledWord]) -> Result<()> {
    let with_features = !rows.is_empty() && rows.iter().all(|r| r.features.is_some());
    let mut writer = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Error::Data(e.to_string());
    let mut header: Vec<&str> = vec!["word"];
    header.extend(Dimension::ALL.iter().map(|d| d.as_str()));
    if with_features {
        header.extend(Feature::ALL.iter().map(|f| f.as_str()));
    }
    writer.write_record(&header).map_err(err)?;
    for r in rows {
        let mut rec = vec![r.word.clone()];
        rec.extend(
            Dimension::ALL
                .iter()
                .map(|d| r.label(*d).map(|v| v.to_string()).unwrap_or_default()),
        );
        if let (true, Some(f)) = (with_features, &r.features) {
            rec.extend(Feature::ALL.iter().map(|feat| sig6(f.get(*feat))));
        }
        writer.write_record(&rec).map_err(err)?;
    }
    writer.flush().map_err(|e| Error::Data(e.to_string()))
}

/// Seeded shuffle, then the first `round(n * train_fraction)` items train.
pub fn split_dataset<T: Clone>(data: &[T], train_fraction: f64, seed: u64) -> Result<(Vec<T>, Vec<T>)> {
    if data.is_empty() {
        return Err(Error::Argument("cannot split an empty dataset".into()));
    }
    if !(train_fraction > 0.0 && train_fraction <= 1.0) {
        return Err(Error::Argument(format!("train fraction {train_fraction} outside (0, 1]")));
    }
    let mut order: Vec<usize> = (0..data.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let n_train = (data.len() as f64 * train_fraction).round() as usize;
    let (train, test) = order.split_at(n_train.min(data.len()));
    Ok((
        train.iter().map(|i| data[*i].clone()).collect(),
        test.iter().map(|i| data[*i].clone()).collect(),
    ))
}

/// Labels every word of every pair from raw experiment records.
///
/// Within a pair that differs significantly on a dimension, the word with the
/// higher rate gets 1 and its partner 0; otherwise both get 0. `ie` is the
/// conjunction of the three dimensions. Output follows `pairs`, first word
/// then second.
pub fn label_from_experiment(
    records: &[ExperimentRecord],
    pairs: &[WordPair],
    alpha: f64,
) -> Result<Vec<LabeledWord>> {
    let outcomes = pair_significance(records, pairs, alpha)?;
    let mut out = Vec::with_capacity(outcomes.len() * 2);
    for o in outcomes {
        for (i, word) in [&o.pair.first, &o.pair.second].into_iter().enumerate() {
            let mut labels = BTreeMap::new();
            for t in &o.tests {
                labels.insert(t.dimension, u8::from(t.winner == Some(i)));
            }
            let ie = labels.values().all(|v| *v == 1);
            labels.insert(Dimension::Ie, u8::from(ie));
            out.push(LabeledWord {
                word: word.clone(),
                features: None,
                labels,
            });
        }
    }
    Ok(out)
}
