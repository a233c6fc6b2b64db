use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{sigmoid, CoefficientVector, ModelKind};
use crate::error::{Error, Result};
use crate::exec::{chunked_sum, Execution};
use crate::features::{Feature, ReadFeatures};

const GRADIENT_CHUNK: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub iterations: usize,
    pub l2_penalty: f64,
    pub standardize: bool,
    /// Recorded for provenance. Full-batch descent from a zero start draws no
    /// random numbers, so the fit does not depend on it.
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            learning_rate: 0.05,
            iterations: 5000,
            l2_penalty: 0.0,
            standardize: true,
            seed: 42,
        }
    }
}

impl TrainConfig {
    fn validate(&self) -> Result<()> {
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(Error::Argument(format!("learning rate {} must be positive", self.learning_rate)));
        }
        if self.iterations == 0 {
            return Err(Error::Argument("iterations must be positive".into()));
        }
        if !(self.l2_penalty.is_finite() && self.l2_penalty >= 0.0) {
            return Err(Error::Argument(format!("l2 penalty {} must be non-negative", self.l2_penalty)));
        }
        Ok(())
    }
}

/// A trained logistic model in raw feature space plus what produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct FittedModel {
    pub coefficients: CoefficientVector,
    pub config: TrainConfig,
    pub feature_means: BTreeMap<Feature, f64>,
    pub feature_scales: BTreeMap<Feature, f64>,
    /// Penalized mean negative log-likelihood before each update, then after the last.
    pub loss_history: Vec<f64>,
}

impl FittedModel {
    pub fn artifact(&self) -> ModelArtifact {
        ModelArtifact {
            kind: self.coefficients.kind,
            intercept: self.coefficients.intercept,
            weights: self.coefficients.weights.clone(),
            train_config: Some(self.config),
            feature_means: self.feature_means.clone(),
            feature_scales: self.feature_scales.clone(),
        }
    }
}

/// On-disk model description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelArtifact {
    pub kind: ModelKind,
    pub intercept: f64,
    pub weights: BTreeMap<Feature, f64>,
    #[serde(default)]
    pub train_config: Option<TrainConfig>,
    #[serde(default)]
    pub feature_means: BTreeMap<Feature, f64>,
    #[serde(default)]
    pub feature_scales: BTreeMap<Feature, f64>,
}

impl ModelArtifact {
    pub fn from_coefficients(coefficients: &CoefficientVector) -> Self {
        ModelArtifact {
            kind: coefficients.kind,
            intercept: coefficients.intercept,
            weights: coefficients.weights.clone(),
            train_config: None,
            feature_means: BTreeMap::new(),
            feature_scales: BTreeMap::new(),
        }
    }

    pub fn coefficients(&self) -> CoefficientVector {
        CoefficientVector {
            kind: self.kind,
            intercept: self.intercept,
            weights: self.weights.clone(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Data(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let artifact: ModelArtifact =
            serde_json::from_str(text).map_err(|e| Error::Data(format!("invalid model artifact: {e}")))?;
        if !artifact.intercept.is_finite() || artifact.weights.values().any(|w| !w.is_finite()) {
            return Err(Error::Data("model artifact has non-finite coefficients".into()));
        }
        Ok(artifact)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::resource(path, e))?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()?).map_err(|e| Error::resource(path, e))
    }
}

/// Fits a logistic model by full-batch gradient descent.
pub fn fit_logistic(data: &[(ReadFeatures, u8)], config: &TrainConfig) -> Result<FittedModel> {
    fit_logistic_with(data, config, Execution::Sequential)
}

/// As [`fit_logistic`], optionally computing each gradient in parallel. The
/// gradient is reduced over fixed-size chunks in chunk order, so both
/// execution modes produce bit-identical models.
pub fn fit_logistic_with(
    data: &[(ReadFeatures, u8)],
    config: &TrainConfig,
    execution: Execution,
) -> Result<FittedModel> {
    config.validate()?;
    if data.len() < 2 {
        return Err(Error::Degenerate("need at least two samples".into()));
    }
    let mut positives = 0usize;
    for (i, (f, y)) in data.iter().enumerate() {
        if *y > 1 {
            return Err(Error::Argument(format!("sample {i}: label {y} is not binary")));
        }
        if !f.is_finite() {
            return Err(Error::Argument(format!("sample {i}: non-finite feature")));
        }
        positives += usize::from(*y);
    }
    if positives == 0 || positives == data.len() {
        return Err(Error::Degenerate("labels contain a single class".into()));
    }

    let n = data.len() as f64;
    let raw: Vec<[f64; 12]> = data.iter().map(|(f, _)| f.to_array()).collect();
    let mut active = Vec::new();
    let mut means = Vec::new();
    let mut scales = Vec::new();
    for feature in Feature::ALL {
        let j = feature.index();
        let mean = raw.iter().map(|r| r[j]).sum::<f64>() / n;
        let var = raw.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / n;
        // constant columns carry no information beyond the intercept
        if var <= 0.0 {
            continue;
        }
        active.push(feature);
        if config.standardize {
            means.push(mean);
            scales.push(var.sqrt());
        } else {
            means.push(0.0);
            scales.push(1.0);
        }
    }
    let k = active.len();

    // rows of [label, z_1..z_k]
    let rows: Vec<Vec<f64>> = data
        .iter()
        .zip(&raw)
        .map(|((_, y), r)| {
            let mut row = Vec::with_capacity(k + 1);
            row.push(f64::from(*y));
            for (a, f) in active.iter().enumerate() {
                row.push((r[f.index()] - means[a]) / scales[a]);
            }
            row
        })
        .collect();

    let mut theta = vec![0.0; k + 1];
    let mut loss_history = Vec::with_capacity(config.iterations + 1);
    let lambda = config.l2_penalty;
    let pass = |theta: &[f64]| {
        chunked_sum(&rows, GRADIENT_CHUNK, k + 2, execution, |chunk| {
            // [sum(p - y), sum((p - y) z_j)..., sum nll]
            let mut acc = vec![0.0; k + 2];
            for row in chunk {
                let y = row[0];
                let eta = theta[0] + theta[1..].iter().zip(&row[1..]).map(|(w, z)| w * z).sum::<f64>();
                let residual = sigmoid(eta) - y;
                acc[0] += residual;
                for j in 0..k {
                    acc[j + 1] += residual * row[j + 1];
                }
                acc[k + 1] += softplus(eta) - y * eta;
            }
            acc
        })
    };
    let penalty = |theta: &[f64]| 0.5 * lambda * theta[1..].iter().map(|w| w * w).sum::<f64>();

    for _ in 0..config.iterations {
        let sums = pass(&theta);
        loss_history.push(sums[k + 1] / n + penalty(&theta));
        theta[0] -= config.learning_rate * sums[0] / n;
        for j in 1..=k {
            theta[j] -= config.learning_rate * (sums[j] / n + lambda * theta[j]);
        }
    }
    let sums = pass(&theta);
    loss_history.push(sums[k + 1] / n + penalty(&theta));

    let mut intercept = theta[0];
    let mut weights = BTreeMap::new();
    let mut feature_means = BTreeMap::new();
    let mut feature_scales = BTreeMap::new();
    for (a, f) in active.iter().enumerate() {
        let w = theta[a + 1] / scales[a];
        intercept -= w * means[a];
        weights.insert(*f, w);
        feature_means.insert(*f, means[a]);
        feature_scales.insert(*f, scales[a]);
    }
    Ok(FittedModel {
        coefficients: CoefficientVector {
            kind: ModelKind::Logistic,
            intercept,
            weights,
        },
        config: *config,
        feature_means,
        feature_scales,
        loss_history,
    })
}

fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}
