use std::collections::HashMap;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

/// Word counts from a reference corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyTable {
    counts: HashMap<String, u64>,
    total: u64,
    smoothing: Option<f64>,
}

impl FrequencyTable {
    pub fn from_counts<I, S>(counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, u64)>,
        S: AsRef<str>,
    {
        let mut map = HashMap::new();
        for (word, count) in counts {
            let word = word.as_ref().trim().to_lowercase();
            if map.insert(word.clone(), count).is_some() {
                return Err(Error::Argument(format!("duplicate word {word:?}")));
            }
        }
        Self::build(map)
    }

    fn build(counts: HashMap<String, u64>) -> Result<Self> {
        let total = counts
            .values()
            .try_fold(0u64, |acc, c| acc.checked_add(*c))
            .ok_or_else(|| Error::Argument("count total overflows".into()))?;
        if total == 0 {
            return Err(Error::Argument("frequency table total must be positive".into()));
        }
        Ok(FrequencyTable {
            counts,
            total,
            smoothing: None,
        })
    }

    /// Adds `pseudo_count` to every lookup (unseen words included). Off by default.
    pub fn with_smoothing(mut self, pseudo_count: f64) -> Result<Self> {
        if !(pseudo_count.is_finite() && pseudo_count > 0.0) {
            return Err(Error::Argument(format!("bad pseudo-count {pseudo_count}")));
        }
        self.smoothing = Some(pseudo_count);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, word: &str) -> u64 {
        self.counts.get(&word.to_lowercase()).copied().unwrap_or(0)
    }

    /// Relative frequency and Zipf value (log10 of occurrences per billion tokens).
    ///
    /// Unseen words return `(0.0, 0.0)` unless smoothing is enabled.
    pub fn zipf_of(&self, word: &str) -> (f64, f64) {
        let count = self.count(word) as f64;
        let (count, total) = match self.smoothing {
            Some(k) => (count + k, self.total as f64 + k),
            None => (count, self.total as f64),
        };
        if count <= 0.0 {
            return (0.0, 0.0);
        }
        let frequency = count / total;
        (frequency, (frequency * 1e9).log10())
    }
}

/// Reads `word<TAB>count` lines, with an optional `word<TAB>count` header.
pub fn load_frequency_table(path: impl AsRef<Path>) -> Result<FrequencyTable> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::resource(path, e))?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());

    let mut counts = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let (word, count) = line
            .split_once('\t')
            .ok_or_else(|| Error::parse(&name, lineno, "expected word<TAB>count"))?;
        if i == 0 && word.trim().eq_ignore_ascii_case("word") && count.trim().eq_ignore_ascii_case("count")
        {
            continue;
        }
        let count = count.trim();
        let value: u64 = count.parse().map_err(|_| {
            let why = if count.starts_with('-') { "negative" } else { "non-integer" };
            Error::parse(&name, lineno, format!("{why} count {count:?}"))
        })?;
        let word = word.trim().to_lowercase();
        if word.is_empty() {
            return Err(Error::parse(&name, lineno, "empty word"));
        }
        if counts.insert(word.clone(), value).is_some() {
            return Err(Error::parse(&name, lineno, format!("duplicate word {word:?}")));
        }
    }
    FrequencyTable::build(counts).map_err(|e| match e {
        Error::Argument(m) => Error::parse(&name, text.lines().count(), m),
        other => other,
    })
}
