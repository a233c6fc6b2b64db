//! Engagement scorers: the published coefficient tables, logistic training,
//! classification metrics and labeled datasets.

mod dataset;
mod metrics;
mod train;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{Feature, ReadFeatures};

pub use dataset::{
    label_from_experiment, read_labeled_csv, split_dataset, write_labeled_csv, LabeledWord,
};
pub use metrics::{evaluate_classification, ClassificationMetrics};
pub use train::{fit_logistic, fit_logistic_with, FittedModel, ModelArtifact, TrainConfig};

/// The engagement outcomes: three dimensions plus their conjunction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Dimension {
    Participation,
    Perception,
    Perseverance,
    Ie,
}

impl Dimension {
    pub const ALL: [Dimension; 4] = [
        Dimension::Participation,
        Dimension::Perception,
        Dimension::Perseverance,
        Dimension::Ie,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Dimension::Participation => "participation",
            Dimension::Perception => "perception",
            Dimension::Perseverance => "perseverance",
            Dimension::Ie => "ie",
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Dimension {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Dimension::ALL
            .into_iter()
            .find(|d| d.as_str() == s)
            .ok_or_else(|| Error::Argument(format!("unknown dimension {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    Linear,
    Logistic,
}

/// Intercept plus named weights. Features without a weight contribute nothing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientVector {
    pub kind: ModelKind,
    pub intercept: f64,
    pub weights: BTreeMap<Feature, f64>,
}

impl CoefficientVector {
    pub fn new(kind: ModelKind, intercept: f64, weights: impl IntoIterator<Item = (Feature, f64)>) -> Self {
        CoefficientVector {
            kind,
            intercept,
            weights: weights.into_iter().collect(),
        }
    }

    pub fn weight(&self, feature: Feature) -> f64 {
        self.weights.get(&feature).copied().unwrap_or(0.0)
    }

    /// intercept + sum of weight * feature.
    pub fn linear_term(&self, features: &ReadFeatures) -> f64 {
        self.intercept
            + self
                .weights
                .iter()
                .map(|(f, w)| w * features.get(*f))
                .sum::<f64>()
    }

    /// The model's natural output: the linear score or the probability.
    pub fn score(&self, features: &ReadFeatures) -> f64 {
        match self.kind {
            ModelKind::Linear => self.linear_term(features),
            ModelKind::Logistic => sigmoid(self.linear_term(features)),
        }
    }
}

/// The published coefficient tables. Perseverance has none.
pub fn published_coefficients(dimension: Dimension) -> Result<CoefficientVector> {
    use Feature::*;
    match dimension {
        Dimension::Participation => Ok(CoefficientVector::new(
            ModelKind::Linear,
            0.207,
            [
                (Hypernyms, 0.001),
                (Hyponyms, -4.169e-6),
                (DefinitionsSynsets, 0.000),
                (EmotionalityMax, 0.028),
                (EmotionalitySum, -0.021),
                (Length, -0.001),
                (Flesch, 2.634e-6),
                (Syllables, -0.002),
                (Zipf, 0.005),
            ],
        )),
        Dimension::Perception => Ok(CoefficientVector::new(
            ModelKind::Linear,
            2.297,
            [
                (DefinitionsSynsets, 0.000),
                (Hypernyms, -0.005),
                (Hyponyms, 0.000),
                (PosMax, 0.126),
                (EmotionalityMax, 0.047),
                (NegMax, -0.113),
                (Length, -0.019),
                (Flesch, -0.001),
                (Syllables, -0.041),
                (Zipf, 0.108),
                (Frequency, -175.563),
            ],
        )),
        Dimension::Ie => Ok(CoefficientVector::new(
            ModelKind::Logistic,
            -2.0611,
            [
                (DefinitionsSynsets, -0.0375),
                (Hypernyms, -0.1023),
                (Hyponyms, 0.0184),
                (PosMax, 0.1312),
                (NegMax, -0.0686),
                (Syllables, -0.0700),
                (Length, -0.0410),
                (Frequency, -0.2195),
                (Zipf, 0.5569),
            ],
        )),
        Dimension::Perseverance => Err(Error::UnsupportedDimension(
            "no published coefficient table exists for perseverance; train one with fit_logistic".into(),
        )),
    }
}

pub fn linear_score(features: &ReadFeatures, coefs: &CoefficientVector) -> Result<f64> {
    if coefs.kind != ModelKind::Linear {
        return Err(Error::Argument("linear_score needs a linear model".into()));
    }
    Ok(coefs.linear_term(features))
}

pub fn logistic_probability(features: &ReadFeatures, coefs: &CoefficientVector) -> Result<f64> {
    if coefs.kind != ModelKind::Logistic {
        return Err(Error::Argument("logistic_probability needs a logistic model".into()));
    }
    Ok(sigmoid(coefs.linear_term(features)))
}

/// Logistic function without overflow for large |z|.
pub fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// 1 when `probability >= threshold`.
pub fn classify(probability: f64, threshold: f64) -> Result<u8> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::Argument(format!("threshold {threshold} outside [0, 1]")));
    }
    if !(0.0..=1.0).contains(&probability) {
        return Err(Error::Argument(format!("probability {probability} outside [0, 1]")));
    }
    Ok(u8::from(probability >= threshold))
}
