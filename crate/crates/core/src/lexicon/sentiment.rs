use std::collections::HashMap;
use std::fs;
use std::path::Path;

use super::{PartOfSpeech, SynsetId};
use crate::error::{Error, Result};

/// SentiWordNet positivity/negativity per synset.
///
/// Keys use the data-file class, so an adjective satellite is looked up under `a`
/// exactly as SentiWordNet lists it.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SentimentTable {
    entries: HashMap<SynsetId, (f64, f64)>,
}

impl SentimentTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Inserts one entry after checking the score constraints.
    pub fn insert(&mut self, id: SynsetId, pos_score: f64, neg_score: f64) -> Result<()> {
        check_scores(pos_score, neg_score).map_err(Error::Argument)?;
        if self.entries.insert(key(id), (pos_score, neg_score)).is_some() {
            return Err(Error::Argument(format!("duplicate sentiment entry {id}")));
        }
        Ok(())
    }

    /// `(pos_score, neg_score)`; synsets SentiWordNet does not cover are neutral.
    pub fn sentiment_of(&self, id: SynsetId) -> (f64, f64) {
        self.entries.get(&key(id)).copied().unwrap_or((0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (SynsetId, (f64, f64))> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }
}

fn key(id: SynsetId) -> SynsetId {
    SynsetId::new(id.pos.file_class(), id.offset)
}

fn check_scores(pos: f64, neg: f64) -> std::result::Result<(), String> {
    if !(0.0..=1.0).contains(&pos) || !(0.0..=1.0).contains(&neg) {
        return Err(format!("score outside [0,1]: pos {pos}, neg {neg}"));
    }
    // scores are multiples of 1/8 in the release, so no tolerance is needed
    if pos + neg > 1.0 {
        return Err(format!("pos + neg exceeds 1: {pos} + {neg}"));
    }
    Ok(())
}

/// Reads the SentiWordNet 3.0 tab-separated release.
///
/// Columns: POS, 8-digit offset, PosScore, NegScore, SynsetTerms, Gloss. Lines
/// starting with `#` are comments. The release ends with a padding record that
/// has no POS and no offset; such records are skipped.
pub fn load_sentiwordnet(path: impl AsRef<Path>) -> Result<SentimentTable> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::resource(path, e))?;
    let text = String::from_utf8_lossy(&bytes);
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());

    let mut table = SentimentTable::new();
    for (lineno, line) in text.lines().enumerate() {
        let lineno = lineno + 1;
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() >= 2 && fields[0].trim().is_empty() && fields[1].trim().is_empty() {
            continue;
        }
        if fields.len() < 4 {
            return Err(Error::parse(&name, lineno, "expected at least 4 tab-separated fields"));
        }
        let pos = fields[0]
            .parse::<PartOfSpeech>()
            .map_err(|_| Error::parse(&name, lineno, format!("bad POS {:?}", fields[0])))?;
        let offset_str = fields[1];
        if offset_str.is_empty() || offset_str.len() > 8 || !offset_str.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(&name, lineno, format!("bad synset id {offset_str:?}")));
        }
        let offset: u32 = offset_str
            .parse()
            .map_err(|_| Error::parse(&name, lineno, format!("bad synset id {offset_str:?}")))?;
        let score = |s: &str, what: &str| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::parse(&name, lineno, format!("non-numeric {what} {s:?}")))
        };
        let pos_score = score(fields[2], "PosScore")?;
        let neg_score = score(fields[3], "NegScore")?;
        check_scores(pos_score, neg_score).map_err(|m| Error::parse(&name, lineno, m))?;
        let id = SynsetId::new(pos, offset);
        if table.entries.insert(key(id), (pos_score, neg_score)).is_some() {
            return Err(Error::parse(&name, lineno, format!("duplicate entry {id}")));
        }
    }
    Ok(table)
}
