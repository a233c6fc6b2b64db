//! Flat `key = value` configuration, overridden by command-line flags.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use read_engine::model::Dimension;

use crate::CliError;

/// Environment variable naming an alternate config file.
pub const CONFIG_ENV: &str = "READ_ENGINE_CONFIG";

#[derive(Debug, Clone, PartialEq)]
pub enum ModelChoice {
    Published(Dimension),
    Artifact(PathBuf),
}

impl FromStr for ModelChoice {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.parse::<Dimension>() {
            Ok(d) => ModelChoice::Published(d),
            Err(_) => ModelChoice::Artifact(PathBuf::from(s)),
        })
    }
}

impl fmt::Display for ModelChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelChoice::Published(d) => write!(f, "{d}"),
            ModelChoice::Artifact(p) => write!(f, "{}", p.display()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(CliError::Usage(format!("unknown output format {other:?}"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
            OutputFormat::Text => "text",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub wordnet_dir: PathBuf,
    pub sentiwordnet_path: PathBuf,
    pub frequency_path: PathBuf,
    pub default_model: ModelChoice,
    pub alpha: f64,
    pub seed: u64,
    /// `None` lets each command use its natural format.
    pub output_format: Option<OutputFormat>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            wordnet_dir: PathBuf::from("resources/wordnet"),
            sentiwordnet_path: PathBuf::from("resources/SentiWordNet_3.0.0.txt"),
            frequency_path: PathBuf::from("resources/frequency_en.tsv"),
            default_model: ModelChoice::Published(Dimension::Ie),
            alpha: 0.05,
            seed: 42,
            output_format: None,
        }
    }
}

impl Config {
    /// Parses `key = value` lines on top of the defaults. Blank lines and `#`
    /// comments are ignored; relative paths resolve against `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Config, CliError> {
        let mut cfg = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", i + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let path = || base_dir.join(value);
            match key {
                "wordnet_dir" => cfg.wordnet_dir = path(),
                "sentiwordnet_path" => cfg.sentiwordnet_path = path(),
                "frequency_path" => cfg.frequency_path = path(),
                "default_model" => {
                    cfg.default_model = match value.parse::<ModelChoice>() {
                        Ok(ModelChoice::Artifact(_)) => ModelChoice::Artifact(path()),
                        Ok(m) => m,
                        Err(never) => match never {},
                    }
                }
                "alpha" => {
                    cfg.alpha = value
                        .parse()
                        .map_err(|_| CliError::Usage(format!("config line {}: alpha {value:?} is not a number", i + 1)))?
                }
                "seed" => {
                    cfg.seed = value
                        .parse()
                        .map_err(|_| CliError::Usage(format!("config line {}: seed {value:?} is not an integer", i + 1)))?
                }
                "output_format" => cfg.output_format = Some(value.parse()?),
                other => return Err(CliError::Usage(format!("config line {}: unknown key {other:?}", i + 1))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Config, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Resource(format!("config {}: {e}", path.display())))?;
        Config::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// The file named by `READ_ENGINE_CONFIG`, or the defaults.
    pub fn from_env() -> Result<Config, CliError> {
        match std::env::var_os(CONFIG_ENV) {
            Some(p) if !p.is_empty() => Config::load(Path::new(&p)),
            _ => Ok(Config::default()),
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(CliError::Usage(format!("alpha {} outside (0, 1)", self.alpha)));
        }
        Ok(())
    }

    /// Fails with a resource error unless all three lexical resources exist.
    pub fn require_resources(&self) -> Result<(), CliError> {
        for p in [&self.wordnet_dir, &self.sentiwordnet_path, &self.frequency_path] {
            if !p.exists() {
                return Err(CliError::Resource(format!("{} does not exist", p.display())));
            }
        }
        Ok(())
    }
}
