use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Confusion counts and the metrics derived from them.
///
/// A metric whose denominator is zero is reported as 0.0 and `degenerate` is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassificationMetrics {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
    pub accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub degenerate: bool,
}

impl ClassificationMetrics {
    pub fn from_counts(tp: u64, fp: u64, fn_: u64, tn: u64) -> Self {
        let mut degenerate = false;
        let mut ratio = |num: f64, den: f64| {
            if den > 0.0 {
                num / den
            } else {
                degenerate = true;
                0.0
            }
        };
        let total = (tp + fp + fn_ + tn) as f64;
        let accuracy = ratio((tp + tn) as f64, total);
        let precision = ratio(tp as f64, (tp + fp) as f64);
        let recall = ratio(tp as f64, (tp + fn_) as f64);
        let f1 = ratio(2.0 * precision * recall, precision + recall);
        ClassificationMetrics {
            tp,
            fp,
            fn_,
            tn,
            accuracy,
            precision,
            recall,
            f1,
            degenerate,
        }
    }
}

pub fn evaluate_classification(predictions: &[u8], labels: &[u8]) -> Result<ClassificationMetrics> {
    if predictions.len() != labels.len() {
        return Err(Error::Argument(format!(
            "{} predictions for {} labels",
            predictions.len(),
            labels.len()
        )));
    }
    if predictions.is_empty() {
        return Err(Error::Argument("nothing to evaluate".into()));
    }
    let (mut tp, mut fp, mut fn_, mut tn) = (0, 0, 0, 0);
    for (p, l) in predictions.iter().zip(labels) {
        match (p, l) {
            (1, 1) => tp += 1,
            (1, 0) => fp += 1,
            (0, 1) => fn_ += 1,
            (0, 0) => tn += 1,
            _ => return Err(Error::Argument(format!("non-binary value in ({p}, {l})"))),
        }
    }
    Ok(ClassificationMetrics::from_counts(tp, fp, fn_, tn))
}
