//! Lexical resources: WordNet synsets, SentiWordNet scores and word frequencies.
//!
//! Everything here is loaded once and then only read. All stores are `Send + Sync`
//! and can be shared across threads behind a plain reference or an `Arc`.

mod frequency;
mod sentiment;
mod wordnet;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use frequency::{load_frequency_table, FrequencyTable};
pub use sentiment::{load_sentiwordnet, SentimentTable};
pub use wordnet::{load_wordnet, LexicalDatabase, Relation};

/// WordNet syntactic category, one per wndb `ss_type` character.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartOfSpeech {
    Noun,
    Verb,
    Adjective,
    AdjectiveSatellite,
    Adverb,
}

impl PartOfSpeech {
    /// Lookup order used whenever results span several parts of speech.
    pub const ALL: [PartOfSpeech; 5] = [
        PartOfSpeech::Noun,
        PartOfSpeech::Verb,
        PartOfSpeech::Adjective,
        PartOfSpeech::AdjectiveSatellite,
        PartOfSpeech::Adverb,
    ];

    pub fn as_char(self) -> char {
        match self {
            PartOfSpeech::Noun => 'n',
            PartOfSpeech::Verb => 'v',
            PartOfSpeech::Adjective => 'a',
            PartOfSpeech::AdjectiveSatellite => 's',
            PartOfSpeech::Adverb => 'r',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'n' => Some(PartOfSpeech::Noun),
            'v' => Some(PartOfSpeech::Verb),
            'a' => Some(PartOfSpeech::Adjective),
            's' => Some(PartOfSpeech::AdjectiveSatellite),
            'r' => Some(PartOfSpeech::Adverb),
            _ => None,
        }
    }

    /// The category whose data file holds this synset. Satellites live in `data.adj`
    /// and are addressed with `a` by pointers and by SentiWordNet.
    pub fn file_class(self) -> Self {
        match self {
            PartOfSpeech::AdjectiveSatellite => PartOfSpeech::Adjective,
            other => other,
        }
    }
}

impl fmt::Display for PartOfSpeech {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for PartOfSpeech {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => PartOfSpeech::from_char(c),
            _ => None,
        }
        .ok_or_else(|| Error::Argument(format!("unknown part of speech {s:?}")))
    }
}

/// A synset address: part of speech plus byte offset into its data file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SynsetId {
    pub pos: PartOfSpeech,
    pub offset: u32,
}

impl SynsetId {
    pub fn new(pos: PartOfSpeech, offset: u32) -> Self {
        SynsetId { pos, offset }
    }
}

impl fmt::Display for SynsetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:08}-{}", self.offset, self.pos)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Synset {
    pub id: SynsetId,
    /// Lemmas as written in the data file, markers stripped, collocations joined by `_`.
    pub lemmas: Vec<String>,
    pub gloss: String,
    pub hypernym_ids: Vec<SynsetId>,
    pub hyponym_ids: Vec<SynsetId>,
}

impl Synset {
    pub fn contains_lemma(&self, normalized: &str) -> bool {
        self.lemmas.iter().any(|l| normalize_lemma(l) == normalized)
    }
}

/// Lowercases and maps spaces to underscores, the form used by wndb index files.
pub fn normalize_lemma(lemma: &str) -> String {
    lemma.trim().to_lowercase().replace(' ', "_")
}
