//! The `read-engine` command line: subcommand parsing, config binding, and
//! exit-code mapping over the `read-engine` library.
//!
//! Exit codes: 0 success, 1 usage or data error, 2 resource or I/O error.
//! Every failure writes exactly one `error: ...` line to stderr.

pub mod config;
pub mod emit;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use read_engine::features::extract_batch;
use read_engine::model::{
    classify, evaluate_classification, fit_logistic_with, label_from_experiment, published_coefficients,
    read_labeled_csv, split_dataset, CoefficientVector, Dimension, LabeledWord, ModelArtifact, ModelKind,
    TrainConfig,
};
use read_engine::rewrite::{rewrite_batch, rewrite_sidecar_json, RewritePolicy};
use read_engine::stats::{derive_pairs, read_study1_csv, read_study3_csv, study_report, StudyInput};
use read_engine::{Execution, ReadFeatures, ResourceBundle};

pub use config::{Config, ModelChoice, OutputFormat, CONFIG_ENV};
pub use emit::{emit_report, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Data(_) => 1,
            CliError::Resource(_) => 2,
        }
    }
}

impl From<read_engine::Error> for CliError {
    fn from(e: read_engine::Error) -> Self {
        use read_engine::Error as E;
        match e {
            E::Resource { .. } | E::Parse { .. } | E::Integrity(_) => CliError::Resource(e.to_string()),
            E::Argument(_) | E::UnsupportedDimension(_) => CliError::Usage(e.to_string()),
            E::Degenerate(_) | E::Data(_) => CliError::Data(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    /// The file the primary output went to, when `--output` was given.
    pub report_path: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "read-engine", version, about = "Lexical engagement analytics")]
struct Cli {
    /// Config file (key = value lines); replaces the one named by READ_ENGINE_CONFIG.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Write the primary output here instead of stdout.
    #[arg(long, short = 'o', global = true, value_name = "PATH")]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_name = "DIR")]
    wordnet_dir: Option<PathBuf>,
    #[arg(long, global = true, value_name = "PATH")]
    sentiwordnet: Option<PathBuf>,
    #[arg(long, global = true, value_name = "PATH")]
    frequency: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Study1,
    Study3,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Feature vectors for a newline-delimited word list.
    Features { input: PathBuf },
    /// Model scores for a newline-delimited word list.
    Score {
        input: PathBuf,
        /// participation, perception, ie, or a model artifact path.
        #[arg(long)]
        model: Option<ModelChoice>,
    },
    /// Synonym rewrites for newline-delimited titles.
    Rewrite {
        input: PathBuf,
        #[arg(long)]
        model: Option<ModelChoice>,
        #[arg(long, default_value_t = 0.0)]
        min_delta: f64,
        #[arg(long)]
        max_subs: Option<usize>,
    },
    /// Fits a logistic model on a labeled dataset.
    Train {
        input: PathBuf,
        #[arg(long, value_parser = parse_dimension)]
        dimension: Option<Dimension>,
        #[arg(long)]
        iterations: Option<usize>,
        #[arg(long)]
        learning_rate: Option<f64>,
        #[arg(long)]
        l2: Option<f64>,
        /// Share of rows used for fitting; the rest is the holdout.
        #[arg(long, default_value_t = 0.8)]
        train_fraction: f64,
    },
    /// Classification metrics of a logistic model on a labeled dataset.
    Evaluate {
        input: PathBuf,
        #[arg(long)]
        model: Option<ModelChoice>,
        #[arg(long, value_parser = parse_dimension)]
        dimension: Option<Dimension>,
        #[arg(long, default_value_t = 0.5)]
        threshold: f64,
    },
    /// Labeled dataset from raw study 1 records.
    Label { input: PathBuf },
    /// Study-level statistics.
    Stats {
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
    },
}

fn parse_dimension(s: &str) -> Result<Dimension, String> {
    s.parse().map_err(|e: read_engine::Error| e.to_string())
}

/// Runs one command against the process stdout and stderr.
pub fn run_command<I, S>(argv: I, config: Config) -> CommandOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_command_with(argv, config, &mut stdout.lock(), &mut stderr.lock())
}

/// `argv` excludes the program name. `config` is the base configuration;
/// `--config` replaces it and individual flags override single fields.
pub fn run_command_with<I, S>(argv: I, config: Config, out: &mut dyn Write, err: &mut dyn Write) -> CommandOutcome
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let args = std::iter::once(OsString::from("read-engine")).chain(argv.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => return clap_outcome(e, out, err),
    };
    match execute(cli, config, out) {
        Ok(report_path) => CommandOutcome {
            exit_code: 0,
            report_path,
        },
        Err(e) => {
            let _ = writeln!(err, "error: {}", single_line(&e.to_string()));
            CommandOutcome {
                exit_code: e.exit_code(),
                report_path: None,
            }
        }
    }
}

fn single_line(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn clap_outcome(e: clap::Error, out: &mut dyn Write, err: &mut dyn Write) -> CommandOutcome {
    use clap::error::ErrorKind;
    let rendered = e.render().to_string();
    if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
        let _ = out.write_all(rendered.as_bytes());
        return CommandOutcome {
            exit_code: 0,
            report_path: None,
        };
    }
    let first = if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
        "missing subcommand"
    } else {
        rendered
            .lines()
            .find(|l| !l.trim().is_empty())
            .unwrap_or("invalid arguments")
            .trim()
            .trim_start_matches("error:")
            .trim()
    };
    let _ = writeln!(
        err,
        "error: {}; usage: read-engine [OPTIONS] <features|score|rewrite|train|evaluate|label|stats> ...; see --help",
        single_line(first)
    );
    CommandOutcome {
        exit_code: 1,
        report_path: None,
    }
}

fn resolve_config(cli: &Cli, base: Config) -> Result<Config, CliError> {
    let mut cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => base,
    };
    if let Some(p) = &cli.wordnet_dir {
        cfg.wordnet_dir = p.clone();
    }
    if let Some(p) = &cli.sentiwordnet {
        cfg.sentiwordnet_path = p.clone();
    }
    if let Some(p) = &cli.frequency {
        cfg.frequency_path = p.clone();
    }
    if let Some(a) = cli.alpha {
        cfg.alpha = a;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(f) = cli.format {
        cfg.output_format = Some(f);
    }
    cfg.validate()?;
    Ok(cfg)
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Resource(format!("{}: {e}", path.display())))
}

fn open_input(path: &Path) -> Result<fs::File, CliError> {
    fs::File::open(path).map_err(|e| CliError::Resource(format!("{}: {e}", path.display())))
}

/// Non-blank trimmed lines.
fn read_lines(path: &Path) -> Result<Vec<String>, CliError> {
    Ok(read_input(path)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}

fn load_resources(cfg: &Config) -> Result<ResourceBundle, CliError> {
    cfg.require_resources()?;
    Ok(ResourceBundle::load(&cfg.wordnet_dir, &cfg.sentiwordnet_path, &cfg.frequency_path)?)
}

fn load_model(choice: &ModelChoice) -> Result<CoefficientVector, CliError> {
    match choice {
        ModelChoice::Published(d) => Ok(published_coefficients(*d)?),
        ModelChoice::Artifact(path) => Ok(ModelArtifact::load(path)?.coefficients()),
    }
}

fn extract_all(words: &[String], resources: &ResourceBundle) -> Result<Vec<ReadFeatures>, CliError> {
    extract_batch(words, resources, Execution::default())
        .into_iter()
        .zip(words)
        .map(|(r, w)| r.map_err(|e| CliError::Data(format!("{w}: {e}"))))
        .collect()
}

/// Fills in features for rows that lack them, loading resources only if needed.
fn ensure_features(rows: &mut [LabeledWord], cfg: &Config) -> Result<(), CliError> {
    let missing: Vec<usize> = (0..rows.len()).filter(|i| rows[*i].features.is_none()).collect();
    if missing.is_empty() {
        return Ok(());
    }
    let resources = load_resources(cfg)?;
    let words: Vec<String> = missing.iter().map(|i| rows[*i].word.clone()).collect();
    for (i, f) in missing.into_iter().zip(extract_all(&words, &resources)?) {
        rows[i].features = Some(f);
    }
    Ok(())
}

fn labeled_pairs(rows: &[LabeledWord], dimension: Dimension) -> Result<Vec<(ReadFeatures, u8)>, CliError> {
    rows.iter()
        .map(|r| {
            let label = r
                .label(dimension)
                .ok_or_else(|| CliError::Data(format!("{}: no {dimension} label", r.word)))?;
            let features = r.features.ok_or_else(|| CliError::Data(format!("{}: no features", r.word)))?;
            Ok((features, label))
        })
        .collect()
}

fn predict(pairs: &[(ReadFeatures, u8)], model: &CoefficientVector, threshold: f64) -> Result<Vec<u8>, CliError> {
    if model.kind != ModelKind::Logistic {
        return Err(CliError::Usage("evaluate needs a logistic model".into()));
    }
    pairs
        .iter()
        .map(|(f, _)| Ok(classify(model.score(f), threshold)?))
        .collect()
}

fn execute(cli: Cli, base: Config, out: &mut dyn Write) -> Result<Option<PathBuf>, CliError> {
    let cfg = resolve_config(&cli, base)?;
    let mut notes: Vec<String> = Vec::new();
    let report = match &cli.command {
        Command::Features { input } => {
            let words = read_lines(input)?;
            let resources = load_resources(&cfg)?;
            let features = extract_all(&words, &resources)?;
            Report::Features(words.into_iter().zip(features).collect())
        }
        Command::Score { input, model } => {
            let words = read_lines(input)?;
            let model = load_model(model.as_ref().unwrap_or(&cfg.default_model))?;
            let resources = load_resources(&cfg)?;
            let features = extract_all(&words, &resources)?;
            let scores = features.iter().map(|f| model.score(f));
            Report::Scores(words.into_iter().zip(scores).collect())
        }
        Command::Rewrite {
            input,
            model,
            min_delta,
            max_subs,
        } => {
            let titles = read_lines(input)?;
            let policy = RewritePolicy {
                model: load_model(model.as_ref().unwrap_or(&cfg.default_model))?,
                min_delta: *min_delta,
                max_substitutions: *max_subs,
                ..RewritePolicy::default()
            };
            policy.validate()?;
            let resources = load_resources(&cfg)?;
            Report::Rewrite(rewrite_batch(&titles, &resources, &policy, Execution::default()))
        }
        Command::Train {
            input,
            dimension,
            iterations,
            learning_rate,
            l2,
            train_fraction,
        } => {
            let dimension = dimension.unwrap_or(match cfg.default_model {
                ModelChoice::Published(d) => d,
                ModelChoice::Artifact(_) => Dimension::Ie,
            });
            let mut rows = read_labeled_csv(open_input(input)?)?;
            ensure_features(&mut rows, &cfg)?;
            let data = labeled_pairs(&rows, dimension)?;
            let (train, holdout) = split_dataset(&data, *train_fraction, cfg.seed)?;
            let mut tc = TrainConfig {
                seed: cfg.seed,
                ..TrainConfig::default()
            };
            if let Some(n) = iterations {
                tc.iterations = *n;
            }
            if let Some(lr) = learning_rate {
                tc.learning_rate = *lr;
            }
            if let Some(l2) = l2 {
                tc.l2_penalty = *l2;
            }
            let fitted = fit_logistic_with(&train, &tc, Execution::default())?;
            if !holdout.is_empty() {
                let predictions = predict(&holdout, &fitted.coefficients, 0.5)?;
                let labels: Vec<u8> = holdout.iter().map(|(_, l)| *l).collect();
                let m = evaluate_classification(&predictions, &labels)?;
                notes.push(format!(
                    "{dimension}: trained on {} rows, holdout {} rows: accuracy {:.3} precision {:.3} recall {:.3} f1 {:.3}",
                    train.len(),
                    holdout.len(),
                    m.accuracy,
                    m.precision,
                    m.recall,
                    m.f1
                ));
            }
            Report::Model(fitted.artifact())
        }
        Command::Evaluate {
            input,
            model,
            dimension,
            threshold,
        } => {
            let choice = model.as_ref().unwrap_or(&cfg.default_model);
            let dimension = dimension.unwrap_or(match choice {
                ModelChoice::Published(d) => *d,
                ModelChoice::Artifact(_) => Dimension::Ie,
            });
            let model = load_model(choice)?;
            let mut rows = read_labeled_csv(open_input(input)?)?;
            ensure_features(&mut rows, &cfg)?;
            let data = labeled_pairs(&rows, dimension)?;
            let predictions = predict(&data, &model, *threshold)?;
            let labels: Vec<u8> = data.iter().map(|(_, l)| *l).collect();
            Report::Metrics(evaluate_classification(&predictions, &labels)?)
        }
        Command::Label { input } => {
            let records = read_study1_csv(open_input(input)?)?;
            let pairs = derive_pairs(&records)?;
            Report::Labeled(label_from_experiment(&records, &pairs, cfg.alpha)?)
        }
        Command::Stats { input, mode } => {
            let report = match mode {
                Mode::Study1 => {
                    let records = read_study1_csv(open_input(input)?)?;
                    study_report(StudyInput::Study1 { records: &records, pairs: None }, cfg.alpha)?
                }
                Mode::Study3 => {
                    let records = read_study3_csv(open_input(input)?)?;
                    study_report(StudyInput::Study3(&records), cfg.alpha)?
                }
            };
            Report::Study(report)
        }
    };

    let format = cfg.output_format.unwrap_or_else(|| report.default_format());
    let bytes = emit_report(&report, format)?;
    let write_err = |p: &Path, e: std::io::Error| CliError::Resource(format!("{}: {e}", p.display()));
    match &cli.output {
        Some(path) => {
            fs::write(path, &bytes).map_err(|e| write_err(path, e))?;
            // CSV rewrites carry their candidates in a JSON sidecar next to the output.
            if let (Report::Rewrite(results), OutputFormat::Csv) = (&report, format) {
                let sidecar = sidecar_path(path);
                fs::write(&sidecar, rewrite_sidecar_json(results)?).map_err(|e| write_err(&sidecar, e))?;
            }
            for n in &notes {
                writeln!(out, "{n}").map_err(|e| write_err(Path::new("<stdout>"), e))?;
            }
            Ok(Some(path.clone()))
        }
        None => {
            out.write_all(&bytes)
                .and_then(|_| out.flush())
                .map_err(|e| write_err(Path::new("<stdout>"), e))?;
            Ok(None)
        }
    }
}

/// `titles.csv` -> `titles.candidates.json`.
pub fn sidecar_path(output: &Path) -> PathBuf {
    output.with_extension("candidates.json")
}
