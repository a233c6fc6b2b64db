//! Prescriptive rewriting: swap words for same-synset synonyms that the
//! engagement model scores higher, leaving everything else byte-identical.

use std::collections::{HashMap, HashSet};
use std::io::Write;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::features::{extract_features, ResourceBundle};
use crate::lexicon::{LexicalDatabase, SynsetId};
use crate::model::{published_coefficients, CoefficientVector, Dimension};
use crate::report::sig6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub surface: String,
    /// Lowercased word form; empty for separators.
    pub normalized: String,
    pub is_word: bool,
    /// Character offsets, end exclusive.
    pub span: (usize, usize),
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Splits text into maximal alphabetic runs (apostrophes allowed between
/// letters) and the separators between them. Lossless.
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let start = i;
        let is_word = chars[i].is_alphabetic();
        if is_word {
            while i < chars.len() {
                if chars[i].is_alphabetic() {
                    i += 1;
                } else if is_apostrophe(chars[i])
                    && i + 1 < chars.len()
                    && chars[i + 1].is_alphabetic()
                {
                    i += 2;
                } else {
                    break;
                }
            }
        } else {
            while i < chars.len() && !chars[i].is_alphabetic() {
                i += 1;
            }
        }
        let surface: String = chars[start..i].iter().collect();
        let normalized = if is_word { surface.to_lowercase() } else { String::new() };
        tokens.push(Token {
            surface,
            normalized,
            is_word,
            span: (start, i),
        });
    }
    tokens
}

fn synset_as_string<S: Serializer>(id: &SynsetId, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(id)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubstitutionCandidate {
    pub original: String,
    pub replacement: String,
    #[serde(serialize_with = "synset_as_string")]
    pub shared_synset: SynsetId,
    pub original_score: f64,
    pub replacement_score: f64,
    pub delta: f64,
}

#[derive(Debug, Clone)]
pub struct RewritePolicy {
    pub model: CoefficientVector,
    /// A candidate is applied only when `delta > min_delta`.
    pub min_delta: f64,
    /// `None` means unlimited.
    pub max_substitutions: Option<usize>,
    pub skip_stopwords: bool,
    pub allow_multiword: bool,
}

impl Default for RewritePolicy {
    fn default() -> Self {
        RewritePolicy {
            model: published_coefficients(Dimension::Ie).expect("ie coefficients are built in"),
            min_delta: 0.0,
            max_substitutions: None,
            skip_stopwords: true,
            allow_multiword: false,
        }
    }
}

impl RewritePolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.min_delta >= 0.0 && self.min_delta.is_finite()) {
            return Err(Error::Argument(format!("min_delta {} must be finite and >= 0", self.min_delta)));
        }
        Ok(())
    }
}

/// English function words left untouched when `skip_stopwords` is on.
pub const STOPWORDS: [&str; 127] = [
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your", "yours",
    "yourself", "yourselves", "he", "him", "his", "himself", "she", "her", "hers", "herself",
    "it", "its", "itself", "they", "them", "their", "theirs", "themselves", "what", "which",
    "who", "whom", "this", "that", "these", "those", "am", "is", "are", "was", "were", "be",
    "been", "being", "have", "has", "had", "having", "do", "does", "did", "doing", "a", "an",
    "the", "and", "but", "if", "or", "because", "as", "until", "while", "of", "at", "by",
    "for", "with", "about", "against", "between", "into", "through", "during", "before",
    "after", "above", "below", "to", "from", "up", "down", "in", "out", "on", "off", "over",
    "under", "again", "further", "then", "once", "here", "there", "when", "where", "why",
    "how", "all", "any", "both", "each", "few", "more", "most", "other", "some", "such", "no",
    "nor", "not", "only", "own", "same", "so", "than", "too", "very", "s", "t", "can", "will",
    "just", "don", "should", "now",
];

pub fn is_stopword(normalized: &str) -> bool {
    STOPWORDS.contains(&normalized)
}

/// Source of same-meaning alternatives for a word. WordNet is the built-in
/// provider; anything else (a paraphrase service, a curated list) plugs in here.
pub trait CandidateProvider: Sync {
    /// `(shared synset, co-lemma)` pairs for a normalized word, in a stable order.
    fn alternatives(&self, normalized: &str) -> Vec<(SynsetId, String)>;
}

pub struct WordNetProvider<'a>(pub &'a LexicalDatabase);

impl CandidateProvider for WordNetProvider<'_> {
    fn alternatives(&self, normalized: &str) -> Vec<(SynsetId, String)> {
        self.0
            .synsets_of(normalized, None)
            .into_iter()
            .flat_map(|s| s.lemmas.iter().map(move |l| (s.id, l.to_lowercase())))
            .collect()
    }
}

/// A replacement must re-tokenize as the same number of words: letters and
/// inner apostrophes only, plus underscores when multiword lemmas are allowed.
fn admissible_replacement(lemma: &str, allow_multiword: bool) -> bool {
    let parts: Vec<&str> = if allow_multiword {
        lemma.split('_').collect()
    } else {
        vec![lemma]
    };
    parts.iter().all(|p| {
        let toks = tokenize(p);
        toks.len() == 1 && toks[0].is_word
    })
}

fn model_score(word: &str, resources: &ResourceBundle, model: &CoefficientVector) -> Option<f64> {
    extract_features(word, resources).ok().map(|f| model.score(&f))
}

/// Scored alternatives for one word, best first (delta descending, then replacement).
pub fn candidates_for(word: &str, resources: &ResourceBundle, policy: &RewritePolicy) -> Vec<SubstitutionCandidate> {
    candidates_with(word, resources, policy, &WordNetProvider(&resources.wordnet))
}

pub fn candidates_with(
    word: &str,
    resources: &ResourceBundle,
    policy: &RewritePolicy,
    provider: &dyn CandidateProvider,
) -> Vec<SubstitutionCandidate> {
    let normalized = word.trim().to_lowercase();
    if normalized.is_empty() || (policy.skip_stopwords && is_stopword(&normalized)) {
        return Vec::new();
    }
    let Some(original_score) = model_score(&normalized, resources, &policy.model) else {
        return Vec::new();
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (synset, lemma) in provider.alternatives(&normalized) {
        if lemma == normalized || !admissible_replacement(&lemma, policy.allow_multiword) {
            continue;
        }
        // A lemma shared through several synsets scores the same; keep the first.
        if !seen.insert(lemma.clone()) {
            continue;
        }
        let Some(replacement_score) = model_score(&lemma, resources, &policy.model) else {
            continue;
        };
        out.push(SubstitutionCandidate {
            original: normalized.clone(),
            replacement: lemma,
            shared_synset: synset,
            original_score,
            replacement_score,
            delta: replacement_score - original_score,
        });
    }
    out.sort_by(|a, b| b.delta.total_cmp(&a.delta).then_with(|| a.replacement.cmp(&b.replacement)));
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RewriteResult {
    pub original_text: String,
    pub modified_text: String,
    pub substitutions: Vec<SubstitutionCandidate>,
    /// Token index (into `tokenize(original_text)`) of each substitution.
    pub substituted_tokens: Vec<usize>,
    /// Mean model score over word tokens; 0 when there are none.
    pub original_mean_score: f64,
    pub modified_mean_score: f64,
}

/// Mirrors the casing of `like`: all caps, initial capital, or lowercase.
fn match_case(replacement: &str, like: &str) -> String {
    let letters: Vec<char> = like.chars().filter(|c| c.is_alphabetic()).collect();
    let all_caps = letters.len() > 1 && letters.iter().all(|c| c.is_uppercase());
    if all_caps {
        return replacement.to_uppercase();
    }
    let lower = replacement.to_lowercase();
    if letters.first().is_some_and(|c| c.is_uppercase()) {
        let mut chars = lower.chars();
        match chars.next() {
            Some(first) => first.to_uppercase().chain(chars).collect(),
            None => lower,
        }
    } else {
        lower
    }
}

pub fn rewrite_text(text: &str, resources: &ResourceBundle, policy: &RewritePolicy) -> RewriteResult {
    rewrite_with(text, resources, policy, &WordNetProvider(&resources.wordnet))
}

/// Greedy, per token, left to right: each word takes its best candidate when
/// that candidate clears `min_delta`, until `max_substitutions` are used.
pub fn rewrite_with(
    text: &str,
    resources: &ResourceBundle,
    policy: &RewritePolicy,
    provider: &dyn CandidateProvider,
) -> RewriteResult {
    let tokens = tokenize(text);
    let mut cache: HashMap<String, f64> = HashMap::new();
    let mut score_of = |w: &str| -> f64 {
        *cache
            .entry(w.to_string())
            .or_insert_with(|| model_score(w, resources, &policy.model).unwrap_or(0.0))
    };

    let mut modified = String::with_capacity(text.len());
    let mut substitutions = Vec::new();
    let mut substituted_tokens = Vec::new();
    let (mut before, mut after, mut n_words) = (0.0, 0.0, 0usize);
    for (i, tok) in tokens.iter().enumerate() {
        if !tok.is_word {
            modified.push_str(&tok.surface);
            continue;
        }
        n_words += 1;
        let original = score_of(&tok.normalized);
        before += original;
        let budget_left = policy
            .max_substitutions
            .is_none_or(|max| substitutions.len() < max);
        let best = if budget_left {
            candidates_with(&tok.normalized, resources, policy, provider)
                .into_iter()
                .next()
                .filter(|c| c.delta > policy.min_delta)
        } else {
            None
        };
        match best {
            Some(c) => {
                after += c.replacement_score;
                modified.push_str(&match_case(&c.replacement.replace('_', " "), &tok.surface));
                substitutions.push(c);
                substituted_tokens.push(i);
            }
            None => {
                after += original;
                modified.push_str(&tok.surface);
            }
        }
    }
    let mean = |total: f64| if n_words == 0 { 0.0 } else { total / n_words as f64 };
    RewriteResult {
        original_text: text.to_string(),
        modified_text: modified,
        substitutions,
        substituted_tokens,
        original_mean_score: mean(before),
        modified_mean_score: mean(after),
    }
}

/// Rewrites many titles; output order matches input order.
pub fn rewrite_batch(
    texts: &[String],
    resources: &ResourceBundle,
    policy: &RewritePolicy,
    execution: Execution,
) -> Vec<RewriteResult> {
    exec::map_ordered(texts, execution, |t| rewrite_text(t, resources, policy))
}

/// One row per title: original, modified, n_substitutions, original_mean_score, modified_mean_score.
pub fn write_rewrite_csv<W: Write>(out: W, results: &[RewriteResult]) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    let err = |e: csv::Error| Error::Data(e.to_string());
    writer
        .write_record([
            "original",
            "modified",
            "n_substitutions",
            "original_mean_score",
            "modified_mean_score",
        ])
        .map_err(err)?;
    for r in results {
        writer
            .write_record([
                r.original_text.clone(),
                r.modified_text.clone(),
                r.substitutions.len().to_string(),
                sig6(r.original_mean_score),
                sig6(r.modified_mean_score),
            ])
            .map_err(err)?;
    }
    writer.flush().map_err(|e| Error::Data(e.to_string()))
}

#[derive(Serialize)]
struct SidecarEntry<'a> {
    title_index: usize,
    token_index: usize,
    #[serde(flatten)]
    candidate: &'a SubstitutionCandidate,
}

/// Every applied substitution across a batch, as canonical JSON.
pub fn rewrite_sidecar_json(results: &[RewriteResult]) -> Result<String> {
    let entries: Vec<SidecarEntry<'_>> = results
        .iter()
        .enumerate()
        .flat_map(|(title_index, r)| {
            r.substitutions
                .iter()
                .zip(&r.substituted_tokens)
                .map(move |(candidate, token_index)| SidecarEntry {
                    title_index,
                    token_index: *token_index,
                    candidate,
                })
        })
        .collect();
    crate::report::to_canonical_json(&entries)
}
