//! Per-word READ features: representativeness (senses, hypernyms, hyponyms),
//! ease of use (length, syllables, Flesch), affect (SentiWordNet maxima and sums)
//! and distribution (relative frequency, Zipf).

use std::collections::HashSet;
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::lexicon::{
    load_frequency_table, load_sentiwordnet, load_wordnet, FrequencyTable, LexicalDatabase,
    SentimentTable,
};
use crate::report::sig6;

/// The three lexical resources feature extraction reads from.
#[derive(Debug, Clone)]
pub struct ResourceBundle {
    pub wordnet: LexicalDatabase,
    pub sentiment: SentimentTable,
    pub frequency: FrequencyTable,
}

impl ResourceBundle {
    pub fn new(wordnet: LexicalDatabase, sentiment: SentimentTable, frequency: FrequencyTable) -> Self {
        ResourceBundle {
            wordnet,
            sentiment,
            frequency,
        }
    }

    pub fn load(
        wordnet_dir: impl AsRef<Path>,
        sentiwordnet: impl AsRef<Path>,
        frequency: impl AsRef<Path>,
    ) -> Result<Self> {
        Ok(ResourceBundle {
            wordnet: load_wordnet(wordnet_dir)?,
            sentiment: load_sentiwordnet(sentiwordnet)?,
            frequency: load_frequency_table(frequency)?,
        })
    }
}

/// Names of the twelve feature components, in CSV column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Feature {
    DefinitionsSynsets,
    Hypernyms,
    Hyponyms,
    PosMax,
    NegMax,
    EmotionalityMax,
    EmotionalitySum,
    Length,
    Syllables,
    Flesch,
    Frequency,
    Zipf,
}

impl Feature {
    pub const ALL: [Feature; 12] = [
        Feature::DefinitionsSynsets,
        Feature::Hypernyms,
        Feature::Hyponyms,
        Feature::PosMax,
        Feature::NegMax,
        Feature::EmotionalityMax,
        Feature::EmotionalitySum,
        Feature::Length,
        Feature::Syllables,
        Feature::Flesch,
        Feature::Frequency,
        Feature::Zipf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Feature::DefinitionsSynsets => "definitions_synsets",
            Feature::Hypernyms => "hypernyms",
            Feature::Hyponyms => "hyponyms",
            Feature::PosMax => "pos_max",
            Feature::NegMax => "neg_max",
            Feature::EmotionalityMax => "emotionality_max",
            Feature::EmotionalitySum => "emotionality_sum",
            Feature::Length => "length",
            Feature::Syllables => "syllables",
            Feature::Flesch => "flesch",
            Feature::Frequency => "frequency",
            Feature::Zipf => "zipf",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Feature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Feature::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Argument(format!("unknown feature {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ReadFeatures {
    pub definitions_synsets: u32,
    pub hypernyms: u32,
    pub hyponyms: u32,
    pub pos_max: f64,
    pub neg_max: f64,
    pub emotionality_max: f64,
    pub emotionality_sum: f64,
    pub length: u32,
    pub syllables: u32,
    pub flesch: f64,
    pub frequency: f64,
    pub zipf: f64,
}

impl ReadFeatures {
    pub fn get(&self, feature: Feature) -> f64 {
        match feature {
            Feature::DefinitionsSynsets => f64::from(self.definitions_synsets),
            Feature::Hypernyms => f64::from(self.hypernyms),
            Feature::Hyponyms => f64::from(self.hyponyms),
            Feature::PosMax => self.pos_max,
            Feature::NegMax => self.neg_max,
            Feature::EmotionalityMax => self.emotionality_max,
            Feature::EmotionalitySum => self.emotionality_sum,
            Feature::Length => f64::from(self.length),
            Feature::Syllables => f64::from(self.syllables),
            Feature::Flesch => self.flesch,
            Feature::Frequency => self.frequency,
            Feature::Zipf => self.zipf,
        }
    }

    /// Sets a component. Count features must be non-negative integers.
    pub fn set(&mut self, feature: Feature, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::Argument(format!("{feature} must be finite, got {value}")));
        }
        let count = || {
            if value >= 0.0 && value.fract() == 0.0 && value <= f64::from(u32::MAX) {
                Ok(value as u32)
            } else {
                Err(Error::Argument(format!("{feature} must be a non-negative integer, got {value}")))
            }
        };
        match feature {
            Feature::DefinitionsSynsets => self.definitions_synsets = count()?,
            Feature::Hypernyms => self.hypernyms = count()?,
            Feature::Hyponyms => self.hyponyms = count()?,
            Feature::PosMax => self.pos_max = value,
            Feature::NegMax => self.neg_max = value,
            Feature::EmotionalityMax => self.emotionality_max = value,
            Feature::EmotionalitySum => self.emotionality_sum = value,
            Feature::Length => self.length = count()?,
            Feature::Syllables => self.syllables = count()?,
            Feature::Flesch => self.flesch = value,
            Feature::Frequency => self.frequency = value,
            Feature::Zipf => self.zipf = value,
        }
        Ok(())
    }

    pub fn to_array(&self) -> [f64; 12] {
        Feature::ALL.map(|f| self.get(f))
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y')
}

/// Heuristic syllable count.
///
/// Counts maximal vowel groups over the word's letters (`y` counts as a vowel
/// except in first position), drops a final silent `e` (one preceded by a
/// consonant) unless that would leave no syllable, adds one back for a final
/// consonant + `le`, and never returns less than one.
pub fn syllable_count(word: &str) -> Result<u32> {
    let letters: Vec<char> = word
        .chars()
        .filter(|c| c.is_alphabetic())
        .flat_map(char::to_lowercase)
        .collect();
    if letters.is_empty() {
        return Err(Error::Argument(format!("{word:?} has no alphabetic characters")));
    }

    let vowel_at = |i: usize| is_vowel(letters[i]) && !(i == 0 && letters[i] == 'y');
    let mut groups = 0u32;
    let mut in_group = false;
    for i in 0..letters.len() {
        let v = vowel_at(i);
        if v && !in_group {
            groups += 1;
        }
        in_group = v;
    }

    let n = letters.len();
    if n >= 2 && letters[n - 1] == 'e' && !vowel_at(n - 2) && groups > 1 {
        groups -= 1;
    }
    if n >= 3 && letters[n - 2] == 'l' && letters[n - 1] == 'e' && !vowel_at(n - 3) {
        groups += 1;
    }
    Ok(groups.max(1))
}

const FLESCH_BASE: f64 = 206.835;
const FLESCH_SENTENCE_WEIGHT: f64 = 1.015;
const FLESCH_SYLLABLE_WEIGHT: f64 = 84.6;

fn flesch_from_counts(words: f64, sentences: f64, syllables: f64) -> f64 {
    FLESCH_BASE - FLESCH_SENTENCE_WEIGHT * (words / sentences) - FLESCH_SYLLABLE_WEIGHT * (syllables / words)
}

/// Flesch Reading Ease of a text.
///
/// Words are whitespace-separated tokens containing a letter. Each run of
/// `.`, `!` or `?` ends a sentence; a text always has at least one.
pub fn flesch_reading_ease(text: &str) -> Result<f64> {
    let mut words = 0u32;
    let mut syllables = 0u32;
    for token in text.split_whitespace() {
        if token.chars().any(char::is_alphabetic) {
            words += 1;
            syllables += syllable_count(token)?;
        }
    }
    if words == 0 {
        return Err(Error::Argument("text contains no words".into()));
    }
    let mut sentences = 0u32;
    let mut in_terminal = false;
    for c in text.chars() {
        let terminal = matches!(c, '.' | '!' | '?');
        if terminal && !in_terminal {
            sentences += 1;
        }
        in_terminal = terminal;
    }
    Ok(flesch_from_counts(
        f64::from(words),
        f64::from(sentences.max(1)),
        f64::from(syllables),
    ))
}

/// Computes the full feature vector for one word.
pub fn extract_features(word: &str, resources: &ResourceBundle) -> Result<ReadFeatures> {
    let trimmed = word.trim();
    if trimmed.is_empty() {
        return Err(Error::Argument("empty word".into()));
    }
    if trimmed.chars().any(char::is_whitespace) {
        return Err(Error::Argument(format!("{word:?} is not a single token")));
    }
    let normalized = trimmed.to_lowercase();

    let synsets = resources.wordnet.synsets_of(&normalized, None);
    let mut hypernyms = HashSet::new();
    let mut hyponyms = HashSet::new();
    let (mut pos_max, mut neg_max, mut emo_max, mut emo_sum) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for s in &synsets {
        hypernyms.extend(s.hypernym_ids.iter().copied());
        hyponyms.extend(s.hyponym_ids.iter().copied());
        let (p, n) = resources.sentiment.sentiment_of(s.id);
        pos_max = pos_max.max(p);
        neg_max = neg_max.max(n);
        emo_max = emo_max.max(p + n);
        emo_sum += p + n;
    }

    let syllables = syllable_count(&normalized)?;
    let (frequency, zipf) = resources.frequency.zipf_of(&normalized);
    Ok(ReadFeatures {
        definitions_synsets: synsets.len() as u32,
        hypernyms: hypernyms.len() as u32,
        hyponyms: hyponyms.len() as u32,
        pos_max,
        neg_max,
        emotionality_max: emo_max,
        emotionality_sum: emo_sum,
        length: normalized.chars().count() as u32,
        syllables,
        flesch: flesch_from_counts(1.0, 1.0, f64::from(syllables)),
        frequency,
        zipf,
    })
}

/// Extracts features for many words, preserving input order.
pub fn extract_batch(
    words: &[String],
    resources: &ResourceBundle,
    execution: Execution,
) -> Vec<Result<ReadFeatures>> {
    exec::map_ordered(words, execution, |w| extract_features(w, resources))
}

/// `word` followed by one column per feature, values at six significant digits.
pub fn write_features_csv<W: Write>(out: W, rows: &[(String, ReadFeatures)]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let io_err = |e: csv::Error| Error::Data(e.to_string());
    let mut header = vec!["word"];
    header.extend(Feature::ALL.iter().map(|f| f.as_str()));
    writer.write_record(&header).map_err(io_err)?;
    for (word, f) in rows {
        let mut record = vec![word.clone()];
        record.extend(Feature::ALL.iter().map(|feat| match feat {
            Feature::DefinitionsSynsets
            | Feature::Hypernyms
            | Feature::Hyponyms
            | Feature::Length
            | Feature::Syllables => format!("{}", f.get(*feat) as u64),
            _ => sig6(f.get(*feat)),
        }));
        writer.write_record(&record).map_err(io_err)?;
    }
    writer.flush().map_err(|e| Error::Data(e.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn syllables_follow_the_rules() {
        for (word, expected) in [
            ("star", 1),
            ("a", 1),
            ("energy", 3),
            ("the", 1),
            ("table", 2),
            ("apple", 2),
            ("whole", 1),
            ("maven", 2),
            ("yellow", 2),
            ("agree", 2),
            ("free", 1),
            ("What's", 1),
            ("rhythm", 1),
        ] {
            assert_eq!(syllable_count(word).unwrap(), expected, "{word}");
        }
        assert!(syllable_count("123").is_err());
        assert!(syllable_count("").is_err());
    }

    #[test]
    fn flesch_examples() {
        let one = flesch_reading_ease("cat").unwrap();
        assert!((one - 121.22).abs() < 1e-9);
        // 206.835 - 1.015 * 3 - 84.6 * 1
        let three = flesch_reading_ease("The cat sat.").unwrap();
        assert!((three - 119.19).abs() < 1e-9, "{three}");
        assert!(flesch_reading_ease("").is_err());
        assert!(flesch_reading_ease(" ... 42 ").is_err());
    }

    #[test]
    fn sentence_runs_count_once() {
        let a = flesch_reading_ease("Wait... what?").unwrap();
        let expected = 206.835 - 1.015 * (2.0 / 2.0) - 84.6 * (2.0 / 2.0);
        assert!((a - expected).abs() < 1e-9);
    }

    #[test]
    fn feature_names_round_trip() {
        for f in Feature::ALL {
            assert_eq!(f.as_str().parse::<Feature>().unwrap(), f);
            assert_eq!(Feature::ALL[f.index()], f);
        }
        assert!("wzipf".parse::<Feature>().is_err());
    }

    #[test]
    fn set_checks_count_fields() {
        let mut f = ReadFeatures::default();
        f.set(Feature::Hypernyms, 3.0).unwrap();
        assert_eq!(f.hypernyms, 3);
        assert!(f.set(Feature::Hypernyms, -1.0).is_err());
        assert!(f.set(Feature::Length, 1.5).is_err());
        assert!(f.set(Feature::Zipf, f64::NAN).is_err());
        f.set(Feature::PosMax, -4.0).unwrap();
        assert_eq!(f.get(Feature::PosMax), -4.0);
    }
}
