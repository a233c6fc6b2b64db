//! Reader for the WordNet wndb(5) plain-text database.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use super::{normalize_lemma, PartOfSpeech, Synset, SynsetId};
use crate::error::{Error, Result};

const FILE_CLASSES: [(PartOfSpeech, &str); 4] = [
    (PartOfSpeech::Noun, "noun"),
    (PartOfSpeech::Verb, "verb"),
    (PartOfSpeech::Adjective, "adj"),
    (PartOfSpeech::Adverb, "adv"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Hypernym,
    Hyponym,
}

/// Synsets plus the lemma index, immutable once built.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LexicalDatabase {
    synsets: HashMap<SynsetId, Synset>,
    /// (file class, offset) -> id; pointers and index files never say `s`.
    locator: HashMap<(PartOfSpeech, u32), SynsetId>,
    index: HashMap<(String, PartOfSpeech), Vec<SynsetId>>,
}

impl LexicalDatabase {
    pub fn len(&self) -> usize {
        self.synsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.synsets.is_empty()
    }

    /// Number of (lemma, part of speech) index keys.
    pub fn index_len(&self) -> usize {
        self.index.len()
    }

    pub fn get(&self, id: SynsetId) -> Option<&Synset> {
        self.synsets.get(&id)
    }

    pub fn synsets(&self) -> impl Iterator<Item = &Synset> {
        self.synsets.values()
    }

    /// Every indexed lemma with its part of speech, sorted.
    pub fn index_keys(&self) -> Vec<(&str, PartOfSpeech)> {
        let mut keys: Vec<_> = self.index.keys().map(|(l, p)| (l.as_str(), *p)).collect();
        keys.sort_unstable();
        keys
    }

    /// Ids indexed under exactly this (normalized lemma, part of speech) key.
    pub fn index_entry(&self, lemma: &str, pos: PartOfSpeech) -> &[SynsetId] {
        self.index
            .get(&(normalize_lemma(lemma), pos))
            .map(Vec::as_slice)
            .unwrap_or(&[])
    }

    /// Synset ids for a lemma. Without `pos`, results run noun, verb, adjective,
    /// satellite, adverb, each in index (sense) order. Asking for `Adjective`
    /// also returns satellites, since wndb files them together.
    pub fn synset_ids_of(&self, lemma: &str, pos: Option<PartOfSpeech>) -> Vec<SynsetId> {
        let key = normalize_lemma(lemma);
        let wanted: &[PartOfSpeech] = match pos {
            None => &PartOfSpeech::ALL,
            Some(PartOfSpeech::Adjective) => {
                &[PartOfSpeech::Adjective, PartOfSpeech::AdjectiveSatellite]
            }
            Some(PartOfSpeech::Noun) => &[PartOfSpeech::Noun],
            Some(PartOfSpeech::Verb) => &[PartOfSpeech::Verb],
            Some(PartOfSpeech::AdjectiveSatellite) => &[PartOfSpeech::AdjectiveSatellite],
            Some(PartOfSpeech::Adverb) => &[PartOfSpeech::Adverb],
        };
        let mut out = Vec::new();
        for p in wanted {
            if let Some(ids) = self.index.get(&(key.clone(), *p)) {
                out.extend_from_slice(ids);
            }
        }
        out
    }

    pub fn synsets_of(&self, lemma: &str, pos: Option<PartOfSpeech>) -> Vec<&Synset> {
        self.synset_ids_of(lemma, pos)
            .into_iter()
            .filter_map(|id| self.synsets.get(&id))
            .collect()
    }

    /// Direct (one-step) hypernyms or hyponyms of a synset, in data-file order.
    pub fn related_synsets(&self, id: SynsetId, relation: Relation) -> Result<Vec<SynsetId>> {
        let synset = self
            .synsets
            .get(&id)
            .ok_or_else(|| Error::Integrity(format!("unknown synset {id}")))?;
        Ok(match relation {
            Relation::Hypernym => synset.hypernym_ids.clone(),
            Relation::Hyponym => synset.hyponym_ids.clone(),
        })
    }

    /// Checks pointer closure and the index/lemma round trip.
    pub fn verify(&self) -> Result<()> {
        for synset in self.synsets.values() {
            if synset.lemmas.is_empty() {
                return Err(Error::Integrity(format!("synset {} has no lemmas", synset.id)));
            }
            for target in synset.hypernym_ids.iter().chain(&synset.hyponym_ids) {
                if !self.synsets.contains_key(target) {
                    return Err(Error::Integrity(format!(
                        "dangling pointer from {} to {}",
                        synset.id, target
                    )));
                }
            }
        }
        for ((lemma, pos), ids) in &self.index {
            for id in ids {
                let synset = self.synsets.get(id).ok_or_else(|| {
                    Error::Integrity(format!("index entry {lemma}/{pos} points at missing {id}"))
                })?;
                if synset.id.pos != *pos || !synset.contains_lemma(lemma) {
                    return Err(Error::Integrity(format!(
                        "index entry {lemma}/{pos} not listed in synset {id}"
                    )));
                }
            }
        }
        Ok(())
    }
}

struct RawPointer {
    symbol: Relation,
    target: (PartOfSpeech, u32),
}

struct RawSynset {
    id: SynsetId,
    lemmas: Vec<String>,
    gloss: String,
    pointers: Vec<RawPointer>,
}

/// Loads `index.*` and `data.*` for all four file classes from a wndb directory.
pub fn load_wordnet(dir: impl AsRef<Path>) -> Result<LexicalDatabase> {
    let dir = dir.as_ref();
    let mut contents = Vec::new();
    for prefix in ["index", "data"] {
        for (class, suffix) in FILE_CLASSES {
            let name = format!("{prefix}.{suffix}");
            let path = dir.join(&name);
            let bytes = fs::read(&path).map_err(|e| Error::resource(&path, e))?;
            contents.push((prefix, class, name, String::from_utf8_lossy(&bytes).into_owned()));
        }
    }

    let mut raw = Vec::new();
    let mut locator = HashMap::new();
    for (_, class, name, text) in contents.iter().filter(|c| c.0 == "data") {
        for (lineno, line) in text.lines().enumerate() {
            if is_header(line) {
                continue;
            }
            let synset = parse_data_line(line).map_err(|m| Error::parse(name, lineno + 1, m))?;
            if synset.id.pos.file_class() != *class {
                return Err(Error::parse(
                    name,
                    lineno + 1,
                    format!("ss_type {} does not belong in {name}", synset.id.pos),
                ));
            }
            if locator.insert((*class, synset.id.offset), synset.id).is_some() {
                return Err(Error::parse(name, lineno + 1, "duplicate synset offset"));
            }
            raw.push(synset);
        }
    }

    let mut synsets = HashMap::with_capacity(raw.len());
    for r in raw {
        let resolve = |target: (PartOfSpeech, u32)| {
            locator.get(&target).copied().ok_or_else(|| {
                Error::Integrity(format!(
                    "dangling pointer from {} to {:08}-{}",
                    r.id, target.1, target.0
                ))
            })
        };
        let mut hypernym_ids = Vec::new();
        let mut hyponym_ids = Vec::new();
        for p in &r.pointers {
            let target = resolve(p.target)?;
            let list = match p.symbol {
                Relation::Hypernym => &mut hypernym_ids,
                Relation::Hyponym => &mut hyponym_ids,
            };
            if !list.contains(&target) {
                list.push(target);
            }
        }
        synsets.insert(
            r.id,
            Synset {
                id: r.id,
                lemmas: r.lemmas,
                gloss: r.gloss,
                hypernym_ids,
                hyponym_ids,
            },
        );
    }

    let mut index: HashMap<(String, PartOfSpeech), Vec<SynsetId>> = HashMap::new();
    for (_, class, name, text) in contents.iter().filter(|c| c.0 == "index") {
        for (lineno, line) in text.lines().enumerate() {
            if is_header(line) || line.trim().is_empty() {
                continue;
            }
            let (lemma, offsets) =
                parse_index_line(line, *class).map_err(|m| Error::parse(name, lineno + 1, m))?;
            let lemma = normalize_lemma(&lemma);
            let mut seen = HashSet::new();
            for offset in offsets {
                let id = locator.get(&(*class, offset)).copied().ok_or_else(|| {
                    Error::Integrity(format!(
                        "index entry {lemma}/{class} points at missing {offset:08}-{class}"
                    ))
                })?;
                if seen.insert(id) {
                    index.entry((lemma.clone(), id.pos)).or_default().push(id);
                }
            }
        }
    }

    let db = LexicalDatabase {
        synsets,
        locator,
        index,
    };
    db.verify()?;
    Ok(db)
}

/// License lines at the top of every wndb file start with two spaces.
fn is_header(line: &str) -> bool {
    line.starts_with("  ")
}

fn parse_data_line(line: &str) -> std::result::Result<RawSynset, String> {
    let (head, gloss) = match line.split_once('|') {
        Some((h, g)) => (h, g.trim()),
        None => (line, ""),
    };
    let mut fields = head.split_whitespace();
    let mut next = |what: &str| fields.next().ok_or_else(|| format!("missing {what}"));

    let offset = parse_offset(next("synset offset")?)?;
    let lex_filenum = next("lex_filenum")?;
    lex_filenum
        .parse::<u8>()
        .map_err(|_| format!("bad lex_filenum {lex_filenum:?}"))?;
    let ss_type = next("ss_type")?;
    let pos = single_char(ss_type)
        .and_then(PartOfSpeech::from_char)
        .ok_or_else(|| format!("bad ss_type {ss_type:?}"))?;
    let w_cnt_str = next("w_cnt")?;
    let w_cnt = usize::from_str_radix(w_cnt_str, 16).map_err(|_| format!("bad w_cnt {w_cnt_str:?}"))?;
    if w_cnt == 0 {
        return Err("synset with zero words".into());
    }
    let mut lemmas = Vec::with_capacity(w_cnt);
    for _ in 0..w_cnt {
        let word = next("word")?;
        next("lex_id")?;
        lemmas.push(strip_adjective_marker(word).to_string());
    }
    let p_cnt_str = next("p_cnt")?;
    let p_cnt: usize = p_cnt_str.parse().map_err(|_| format!("bad p_cnt {p_cnt_str:?}"))?;
    let mut pointers = Vec::new();
    for _ in 0..p_cnt {
        let symbol = next("pointer symbol")?;
        let target = parse_offset(next("pointer offset")?)?;
        let target_pos_str = next("pointer pos")?;
        let target_pos = single_char(target_pos_str)
            .and_then(PartOfSpeech::from_char)
            .ok_or_else(|| format!("bad pointer pos {target_pos_str:?}"))?;
        let source_target = next("pointer source/target")?;
        if source_target.len() != 4 || u16::from_str_radix(source_target, 16).is_err() {
            return Err(format!("bad pointer source/target {source_target:?}"));
        }
        let symbol = match symbol {
            "@" => Relation::Hypernym,
            "~" => Relation::Hyponym,
            _ => continue,
        };
        pointers.push(RawPointer {
            symbol,
            target: (target_pos.file_class(), target),
        });
    }
    // verb frames follow the pointers; not needed.

    Ok(RawSynset {
        id: SynsetId::new(pos, offset),
        lemmas,
        gloss: gloss.to_string(),
        pointers,
    })
}

fn parse_index_line(
    line: &str,
    class: PartOfSpeech,
) -> std::result::Result<(String, Vec<u32>), String> {
    let mut fields = line.split_whitespace();
    let mut next = |what: &str| fields.next().ok_or_else(|| format!("missing {what}"));
    let lemma = next("lemma")?.to_string();
    let pos = next("pos")?;
    if single_char(pos).and_then(PartOfSpeech::from_char).map(PartOfSpeech::file_class)
        != Some(class)
    {
        return Err(format!("pos {pos:?} does not match file"));
    }
    let synset_cnt: usize = next("synset_cnt")?
        .parse()
        .map_err(|_| "bad synset_cnt".to_string())?;
    let p_cnt: usize = next("p_cnt")?.parse().map_err(|_| "bad p_cnt".to_string())?;
    for _ in 0..p_cnt {
        next("ptr_symbol")?;
    }
    next("sense_cnt")?
        .parse::<usize>()
        .map_err(|_| "bad sense_cnt".to_string())?;
    next("tagsense_cnt")?
        .parse::<usize>()
        .map_err(|_| "bad tagsense_cnt".to_string())?;
    let offsets = (0..synset_cnt)
        .map(|_| next("synset offset").and_then(parse_offset))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    Ok((lemma, offsets))
}

fn parse_offset(s: &str) -> std::result::Result<u32, String> {
    if s.len() != 8 || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("bad synset offset {s:?}"));
    }
    s.parse().map_err(|_| format!("bad synset offset {s:?}"))
}

fn single_char(s: &str) -> Option<char> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Some(c),
        _ => None,
    }
}

/// Adjectives may carry a syntactic marker: `(a)`, `(p)` or `(ip)`.
fn strip_adjective_marker(word: &str) -> &str {
    for marker in ["(a)", "(p)", "(ip)"] {
        if let Some(stripped) = word.strip_suffix(marker) {
            return stripped;
        }
    }
    word
}
