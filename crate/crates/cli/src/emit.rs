//! Serialization of command results in json, csv, or text.

use std::fmt::Write as _;

use read_engine::features::write_features_csv;
use read_engine::model::{write_labeled_csv, ClassificationMetrics, LabeledWord, ModelArtifact};
use read_engine::report::{sig6, to_canonical_json};
use read_engine::rewrite::{write_rewrite_csv, RewriteResult};
use read_engine::stats::StudyReport;
use read_engine::ReadFeatures;
use serde::Serialize;

use crate::config::OutputFormat;
use crate::CliError;

/// Everything a subcommand can produce.
#[derive(Debug, Clone)]
pub enum Report {
    Features(Vec<(String, ReadFeatures)>),
    Scores(Vec<(String, f64)>),
    Rewrite(Vec<RewriteResult>),
    Model(ModelArtifact),
    Metrics(ClassificationMetrics),
    Labeled(Vec<LabeledWord>),
    Study(StudyReport),
}

impl Report {
    pub fn kind(&self) -> &'static str {
        match self {
            Report::Features(_) => "features",
            Report::Scores(_) => "scores",
            Report::Rewrite(_) => "rewrite",
            Report::Model(_) => "model",
            Report::Metrics(_) => "metrics",
            Report::Labeled(_) => "labeled dataset",
            Report::Study(_) => "study report",
        }
    }

    /// The format used when neither flag nor config picks one.
    pub fn default_format(&self) -> OutputFormat {
        match self {
            Report::Model(_) => OutputFormat::Json,
            Report::Metrics(_) | Report::Study(_) => OutputFormat::Text,
            _ => OutputFormat::Csv,
        }
    }
}

#[derive(Serialize)]
struct ScoreRow<'a> {
    word: &'a str,
    score: f64,
}

#[derive(Serialize)]
struct FeatureRow<'a> {
    word: &'a str,
    #[serde(flatten)]
    features: &'a ReadFeatures,
}

fn csv_err(e: impl std::fmt::Display) -> CliError {
    CliError::Data(e.to_string())
}

fn opt(x: Option<f64>) -> String {
    x.map(sig6).unwrap_or_default()
}

fn canonical<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    Ok(to_canonical_json(value)?.into_bytes())
}

fn unsupported(report: &Report, format: OutputFormat) -> CliError {
    CliError::Usage(format!("{} output cannot be written as {format}", report.kind()))
}

/// Serializes `report`. JSON is canonical (sorted keys, six significant
/// digits) except for model artifacts, which keep full precision so they
/// reload exactly.
pub fn emit_report(report: &Report, format: OutputFormat) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    match (report, format) {
        (Report::Features(rows), OutputFormat::Csv) => write_features_csv(&mut buf, rows)?,
        (Report::Features(rows), OutputFormat::Json) => {
            let rows: Vec<FeatureRow> = rows.iter().map(|(word, features)| FeatureRow { word, features }).collect();
            buf = canonical(&rows)?;
        }
        (Report::Scores(rows), OutputFormat::Csv) => {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(["word", "score"]).map_err(csv_err)?;
            for (word, score) in rows {
                w.write_record([word.as_str(), &sig6(*score)]).map_err(csv_err)?;
            }
            w.flush().map_err(csv_err)?;
        }
        (Report::Scores(rows), OutputFormat::Json) => {
            let rows: Vec<ScoreRow> = rows.iter().map(|(word, score)| ScoreRow { word, score: *score }).collect();
            buf = canonical(&rows)?;
        }
        (Report::Rewrite(results), OutputFormat::Csv) => write_rewrite_csv(&mut buf, results)?,
        (Report::Rewrite(results), OutputFormat::Json) => buf = canonical(results)?,
        (Report::Model(artifact), OutputFormat::Json) => buf = artifact.to_json()?.into_bytes(),
        (Report::Metrics(m), OutputFormat::Json) => buf = canonical(m)?,
        (Report::Metrics(m), OutputFormat::Csv) => {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(["tp", "fp", "fn", "tn", "accuracy", "precision", "recall", "f1"])
                .map_err(csv_err)?;
            w.write_record([
                m.tp.to_string(),
                m.fp.to_string(),
                m.fn_.to_string(),
                m.tn.to_string(),
                sig6(m.accuracy),
                sig6(m.precision),
                sig6(m.recall),
                sig6(m.f1),
            ])
            .map_err(csv_err)?;
            w.flush().map_err(csv_err)?;
        }
        (Report::Metrics(m), OutputFormat::Text) => buf = render_metrics(m).into_bytes(),
        (Report::Labeled(rows), OutputFormat::Csv) => write_labeled_csv(&mut buf, rows)?,
        (Report::Labeled(rows), OutputFormat::Json) => buf = canonical(rows)?,
        (Report::Study(r), OutputFormat::Json) => buf = canonical(r)?,
        (Report::Study(r), OutputFormat::Text) => buf = r.render_text().into_bytes(),
        (Report::Study(r), OutputFormat::Csv) => buf = study_csv(r)?,
        (report, format) => return Err(unsupported(report, format)),
    }
    Ok(buf)
}

fn render_metrics(m: &ClassificationMetrics) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "tp {}  fp {}  fn {}  tn {}", m.tp, m.fp, m.fn_, m.tn);
    for (name, v) in [
        ("accuracy", m.accuracy),
        ("precision", m.precision),
        ("recall", m.recall),
        ("f1", m.f1),
    ] {
        let _ = writeln!(s, "{name} {v:.3}");
    }
    if m.degenerate {
        s.push_str("note: at least one metric had a zero denominator and is reported as 0\n");
    }
    s
}

/// Study 1: one row per pair and dimension. Study 3: one row per metric.
fn study_csv(report: &StudyReport) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        match report {
            StudyReport::Study1(r) => {
                w.write_record(["dimension", "pair_id", "statistic", "df", "p", "significant"])
                    .map_err(csv_err)?;
                for row in &r.pair_tests {
                    w.write_record([
                        row.dimension.to_string(),
                        row.pair_id.clone(),
                        opt(row.statistic),
                        opt(row.df),
                        opt(row.p),
                        row.significant.to_string(),
                    ])
                    .map_err(csv_err)?;
                }
            }
            StudyReport::Study3(r) => {
                w.write_record(["metric", "t", "df", "p", "mean_original", "mean_modified"])
                    .map_err(csv_err)?;
                for row in &r.metrics {
                    w.write_record([
                        row.metric.clone(),
                        opt(row.t),
                        opt(row.df),
                        opt(row.p),
                        sig6(row.mean_original),
                        sig6(row.mean_modified),
                    ])
                    .map_err(csv_err)?;
                }
            }
        }
        w.flush().map_err(csv_err)?;
    }
    Ok(buf)
}
