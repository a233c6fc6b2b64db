//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the verdict lines are always
//! printed; the process exits non-zero if any criterion fails.

mod common;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use read_engine::features::extract_features;
use read_engine::lexicon::load_wordnet;
use read_engine::model::{
    classify, evaluate_classification, fit_logistic, label_from_experiment, linear_score,
    logistic_probability, published_coefficients, sigmoid, ClassificationMetrics, Dimension,
    TrainConfig,
};
use read_engine::report::to_canonical_json;
use read_engine::rewrite::{candidates_for, rewrite_text, tokenize, RewritePolicy, STOPWORDS};
use read_engine::stats::{
    chi_square_2x2, normal_two_sided, paired_t_test, study_report, upper_tail_p,
    ContingencyTable2x2, ExperimentRecord, StudyInput, StudyReport, TitlePairRecord, Variant,
    WordPair,
};
use read_engine::{Feature, ReadFeatures};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(name: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure((got - want).abs() <= tol, || format!("{name}: got {got:.6}, want {want} ± {tol}"))
}

fn expand(tp: usize, fp: usize, fn_: usize, tn: usize) -> (Vec<u8>, Vec<u8>) {
    let mut pred = Vec::new();
    let mut truth = Vec::new();
    for (n, p, t) in [(tp, 1, 1), (fp, 1, 0), (fn_, 0, 1), (tn, 0, 0)] {
        pred.extend(std::iter::repeat_n(p, n));
        truth.extend(std::iter::repeat_n(t, n));
    }
    (pred, truth)
}

// 1 -------------------------------------------------------------------------

fn metric_reproduction() -> Outcome {
    let start = Instant::now();
    // (name, tp, fp, fn, published precision, recall, f1, published accuracy)
    let rows = [
        ("participation", 23, 0, 6, 1.000, 0.793, 0.884, 0.94),
        ("perception", 22, 4, 15, 0.846, 0.595, 0.698, 0.85),
        ("perseverance", 22, 10, 19, 0.688, 0.537, 0.603, 0.81),
        ("ie", 17, 2, 3, 0.895, 0.850, 0.872, 0.97),
    ];
    let mut notes = Vec::new();
    let mut computed: BTreeMap<&str, ClassificationMetrics> = BTreeMap::new();
    for (name, tp, fp, fn_, p, r, f1, _) in rows {
        // TN is whatever remains of the 50-word test set. Perseverance's
        // published counts already exceed 50, so its TN floors at zero.
        let tn = 50usize.saturating_sub(tp + fp + fn_);
        let (pred, truth) = expand(tp, fp, fn_, tn);
        let m = evaluate_classification(&pred, &truth).map_err(|e| e.to_string())?;
        within(&format!("{name} precision"), m.precision, p, 0.001)?;
        within(&format!("{name} recall"), m.recall, r, 0.001)?;
        within(&format!("{name} f1"), m.f1, f1, 0.001)?;
        computed.insert(name, m);
    }
    // The published accuracy column does not follow from the counts.
    for (name, want_computed, published) in [("participation", 0.88, 0.94), ("ie", 0.90, 0.97)] {
        let acc = computed[name].accuracy;
        within(&format!("{name} accuracy from counts"), acc, want_computed, 1e-12)?;
        ensure((acc - published).abs() > 0.001, || {
            format!("{name}: published accuracy {published} unexpectedly derivable")
        })?;
        notes.push(format!("{name} acc {acc:.2} vs published {published}"));
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("P/R/F1 match on 4 rows; {}; {elapsed:?}", notes.join(", ")))
}

// 2 -------------------------------------------------------------------------

fn published_scorers() -> Outcome {
    let zero = ReadFeatures::default();
    let zipf1 = ReadFeatures {
        zipf: 1.0,
        ..Default::default()
    };
    let part = published_coefficients(Dimension::Participation).map_err(|e| e.to_string())?;
    let perc = published_coefficients(Dimension::Perception).map_err(|e| e.to_string())?;
    let ie = published_coefficients(Dimension::Ie).map_err(|e| e.to_string())?;
    let s_part = linear_score(&zero, &part).map_err(|e| e.to_string())?;
    let s_perc = linear_score(&zero, &perc).map_err(|e| e.to_string())?;
    let p0 = logistic_probability(&zero, &ie).map_err(|e| e.to_string())?;
    let p1 = logistic_probability(&zipf1, &ie).map_err(|e| e.to_string())?;
    within("participation intercept", s_part, 0.207, 1e-12)?;
    within("perception intercept", s_perc, 2.297, 1e-12)?;
    // Independent check: 1 / (1 + e^2.0611) and 1 / (1 + e^1.5042).
    within("ie zero vector", p0, 1.0 / (1.0 + 2.0611f64.exp()), 1e-12)?;
    within("ie zero vector", p0, 0.1130, 0.0005)?;
    within("ie zipf=1", p1, 0.1818, 0.0005)?;
    ensure(matches!(classify(p0, 0.5), Ok(0)), || "0.1130 should classify as 0".into())?;
    Ok(format!("0.207, 2.297, p0={p0:.4}, p(zipf=1)={p1:.4}"))
}

// 3 -------------------------------------------------------------------------

/// Synthetic design for the recovery check. Binary spikes on the count
/// features and wide uniform ranges on the continuous ones put every
/// |w| >= 0.05 coefficient at ~2 standard errors from the ±10% band at
/// n = 10,000 (see the decisions ledger); flesch stays fixed because it is a
/// deterministic function of syllables for single words.
fn recovery_sample(rng: &mut ChaCha8Rng) -> ReadFeatures {
    let mut spike = |hi: u32| if rng.gen_bool(0.1) { hi } else { 0 };
    let definitions_synsets = spike(9);
    let hypernyms = spike(30);
    let hyponyms = spike(13);
    let syllables = 1 + spike(52);
    let length = 1 + spike(17);
    ReadFeatures {
        definitions_synsets,
        hypernyms,
        hyponyms,
        syllables,
        length,
        pos_max: rng.gen_range(-15.0..15.0),
        neg_max: rng.gen_range(-26.0..26.0),
        frequency: rng.gen_range(-9.0..9.0),
        zipf: rng.gen_range(-2.8..4.8),
        ..Default::default()
    }
}

fn training_recovery() -> Outcome {
    let truth = published_coefficients(Dimension::Ie).map_err(|e| e.to_string())?;
    let config = TrainConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let data: Vec<(ReadFeatures, u8)> = (0..10_000)
        .map(|_| {
            let x = recovery_sample(&mut rng);
            let p = sigmoid(truth.linear_term(&x));
            (x, u8::from(rng.gen_bool(p)))
        })
        .collect();
    let start = Instant::now();
    let fit = fit_logistic(&data, &config).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();

    let mut failures = Vec::new();
    let mut worst = (0.0f64, Feature::Zipf);
    for (feature, w) in &truth.weights {
        if w.abs() < 0.05 {
            continue;
        }
        let got = fit.coefficients.weight(*feature);
        let rel = (got - w).abs() / w.abs();
        if rel > worst.0 {
            worst = (rel, *feature);
        }
        if rel > 0.10 {
            failures.push(format!("{feature} {got:.4} vs {w} ({:.1}%)", rel * 100.0));
        }
    }
    let d_int = (fit.coefficients.intercept - truth.intercept).abs();
    if d_int > 0.1 {
        failures.push(format!("intercept {:.4} vs {}", fit.coefficients.intercept, truth.intercept));
    }
    if elapsed > Duration::from_secs(30) {
        failures.push(format!("runtime {elapsed:?}"));
    }
    let summary = format!(
        "worst weight {} at {:.1}%, intercept off by {d_int:.3}, {elapsed:?}",
        worst.1,
        worst.0 * 100.0
    );
    if failures.is_empty() {
        Ok(summary)
    } else {
        Err(format!("{}; {summary}", failures.join("; ")))
    }
}

// 4 -------------------------------------------------------------------------

fn lexicon_fidelity() -> Outcome {
    let dir = common::resources_dir().join("wordnet");
    let start = Instant::now();
    let db = load_wordnet(&dir).map_err(|e| format!("{e}; run scripts/fetch_resources.sh"))?;
    db.verify().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let maven = db.synsets_of("maven", None).len();
    let star = db.synsets_of("star", None).len();
    ensure(maven == 1, || format!("maven has {maven} synsets"))?;
    ensure(star == 12, || format!("star has {star} synsets"))?;
    ensure(elapsed < Duration::from_secs(10), || format!("load took {elapsed:?}"))?;
    Ok(format!("maven=1, star=12, {} synsets loaded+verified in {elapsed:?}", db.len()))
}

// 5 -------------------------------------------------------------------------

fn statistical_kernel() -> Outcome {
    let chi = upper_tail_p(6.6667, read_engine::stats::TestKind::ChiSquare, 1.0).map_err(|e| e.to_string())?;
    within("chi-square(6.6667, 1)", chi, 0.0098, 5e-4)?;
    within("z=1.96", normal_two_sided(1.96), 0.0500, 2e-4)?;
    let t = paired_t_test(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).map_err(|e| e.to_string())?;
    within("paired t", t.statistic, 3.464, 0.001)?;
    within("paired t p", t.p_value, 0.0742, 0.002)?;
    let table = chi_square_2x2(ContingencyTable2x2::new(20, 10, 10, 20)).map_err(|e| e.to_string())?;
    within("2x2 statistic", table.statistic, 6.6667, 1e-4)?;
    let mut worst = 0.0f64;
    for (kind, stat, df, want) in common::grid::GOLDEN_GRID {
        let got = upper_tail_p(stat, kind, df).map_err(|e| e.to_string())?;
        worst = worst.max((got - want).abs());
    }
    ensure(worst <= 1e-8, || format!("golden grid max error {worst:.3e}"))?;
    Ok(format!(
        "chi2 p={chi:.5}, t={:.4} p={:.4}, grid max error {worst:.1e}",
        t.statistic, t.p_value
    ))
}

// 6 -------------------------------------------------------------------------

fn fuzz_corpus(vocab: &[&str]) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let separators = [" ", " ", " ", ", ", ": ", " - ", "! ", "? ", " 2024 ", " & ", "... ", "\t"];
    (0..100)
        .map(|i| {
            let n = rng.gen_range(2..10);
            let mut title = String::new();
            if i % 7 == 0 {
                title.push_str(&format!("{} ", rng.gen_range(1..100)));
            }
            for k in 0..n {
                let w = if rng.gen_bool(0.25) {
                    STOPWORDS.choose(&mut rng).unwrap()
                } else {
                    vocab.choose(&mut rng).unwrap()
                };
                let w = match rng.gen_range(0..4) {
                    0 => w.to_uppercase(),
                    1 | 2 => {
                        let mut c = w.chars();
                        c.next().map(|f| f.to_uppercase().chain(c).collect()).unwrap_or_default()
                    }
                    _ => w.to_string(),
                };
                title.push_str(&w);
                if k + 1 < n {
                    title.push_str(separators.choose(&mut rng).unwrap());
                }
            }
            if rng.gen_bool(0.3) {
                title.push('?');
            }
            title
        })
        .collect()
}

fn non_word_layout(text: &str) -> (Vec<String>, usize) {
    let toks = tokenize(text);
    let words = toks.iter().filter(|t| t.is_word).count();
    (toks.into_iter().filter(|t| !t.is_word).map(|t| t.surface).collect(), words)
}

fn rewriter_properties() -> Outcome {
    let res = common::pinned_bundle();
    let policy = RewritePolicy::default();

    let mut vocab: Vec<&str> = res
        .wordnet
        .index_keys()
        .into_iter()
        .map(|(l, _)| l)
        .filter(|l| l.len() >= 3 && l.chars().all(|c| c.is_ascii_lowercase()))
        .collect();
    vocab.dedup();
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let mut sample: Vec<&str> = vocab.choose_multiple(&mut rng, 400).copied().collect();
    sample.extend(["maven", "star", "vigor", "deity", "ocean", "secret", "guide"]);
    let corpus = fuzz_corpus(&sample);

    // Synset membership, built here rather than through candidate generation.
    let mut lemma_sets: Vec<HashSet<String>> = Vec::new();
    for s in res.wordnet.synsets() {
        lemma_sets.push(s.lemmas.iter().map(|l| l.to_lowercase()).collect());
    }
    let co_occur = |a: &str, b: &str| lemma_sets.iter().any(|s| s.contains(a) && s.contains(b));

    let mut n_subs = 0;
    for title in &corpus {
        let r = rewrite_text(title, res, &policy);
        ensure(r == rewrite_text(title, res, &policy), || format!("non-deterministic on {title:?}"))?;
        ensure(r.modified_mean_score >= r.original_mean_score, || {
            format!("score fell on {title:?}: {} -> {}", r.original_mean_score, r.modified_mean_score)
        })?;
        ensure(
            (r.modified_mean_score > r.original_mean_score) == !r.substitutions.is_empty(),
            || format!("equality iff no substitutions violated on {title:?}"),
        )?;
        ensure(non_word_layout(title) == non_word_layout(&r.modified_text), || {
            format!("non-word structure changed: {title:?} -> {:?}", r.modified_text)
        })?;
        for s in &r.substitutions {
            ensure(co_occur(&s.original, &s.replacement), || {
                format!("{} -> {} share no synset", s.original, s.replacement)
            })?;
        }
        n_subs += r.substitutions.len();
        let again = rewrite_text(&r.modified_text, res, &policy);
        ensure((again.original_mean_score - r.modified_mean_score).abs() < 1e-12, || {
            format!("re-scoring {:?} disagrees", r.modified_text)
        })?;
        ensure(
            again.substitutions.is_empty() || again.modified_mean_score > again.original_mean_score,
            || format!("second pass oscillated on {:?}", r.modified_text),
        )?;
    }

    // maven -> star under the published IE model.
    let maven = extract_features("maven", res).map_err(|e| e.to_string())?;
    let star = extract_features("star", res).map_err(|e| e.to_string())?;
    let (pm, ps) = (policy.model.score(&maven), policy.model.score(&star));
    let to_star = candidates_for("maven", res, &policy)
        .into_iter()
        .find(|c| c.replacement == "star")
        .ok_or("star is not offered as a candidate for maven")?;
    ensure(to_star.delta > 0.0, || {
        format!("direction inverted: p(maven)={pm:.4} >= p(star)={ps:.4}")
    })?;
    let title = rewrite_text("The Maven of Media Accountability", res, &policy);
    let chosen = title
        .substitutions
        .iter()
        .find(|s| s.original == "maven")
        .ok_or("maven was not rewritten")?;
    ensure(chosen.delta >= to_star.delta, || "rewrite chose a worse candidate than star".into())?;
    Ok(format!(
        "100 titles, {n_subs} substitutions, all invariants hold; p(maven)={pm:.4} < p(star)={ps:.4}; \
         best for maven is {:?} (delta {:.4})",
        chosen.replacement, chosen.delta
    ))
}

// 7 -------------------------------------------------------------------------

struct PlantedStudy {
    records: Vec<ExperimentRecord>,
    pairs: Vec<WordPair>,
    /// dimension -> pair index -> winning word index
    planted: BTreeMap<Dimension, BTreeMap<usize, usize>>,
}

const N_PAIRS: usize = 250;
const EXPOSURES: usize = 40;

fn planted_study(seed: u64) -> PlantedStudy {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..N_PAIRS).collect();
    order.shuffle(&mut rng);
    // 73/250 = 29.2%, 80/250 = 32%, 70/250 = 28%. The sets overlap heavily so
    // the dimension significance indicators are associated.
    let participation: Vec<usize> = order[..73].to_vec();
    let perception: Vec<usize> = order[..60].iter().chain(&order[100..120]).copied().collect();
    let perseverance: Vec<usize> = order[..50].iter().chain(&order[150..170]).copied().collect();
    let mut planted = BTreeMap::new();
    for (dim, set) in [
        (Dimension::Participation, &participation),
        (Dimension::Perception, &perception),
        (Dimension::Perseverance, &perseverance),
    ] {
        let winners: BTreeMap<usize, usize> = set
            .iter()
            .map(|p| (*p, if *p % 5 == 0 { 1 } else { 0 }))
            .collect();
        planted.insert(dim, winners);
    }

    let pairs: Vec<WordPair> = (0..N_PAIRS)
        .map(|i| WordPair {
            pair_id: format!("p{i:03}"),
            first: format!("alpha{i}"),
            second: format!("beta{i}"),
        })
        .collect();

    // successes out of EXPOSURES: (winner, loser, neither significant)
    let levels = |dim: Dimension| match dim {
        Dimension::Participation => (30, 6, 12),
        Dimension::Perception => (28, 4, 8),
        _ => (24, 2, 4),
    };
    let mut records = Vec::new();
    for (i, pair) in pairs.iter().enumerate() {
        for (w, word) in [&pair.first, &pair.second].into_iter().enumerate() {
            let mut flags: BTreeMap<Dimension, Vec<bool>> = BTreeMap::new();
            for dim in [Dimension::Participation, Dimension::Perception, Dimension::Perseverance] {
                let (hi, lo, flat) = levels(dim);
                let k = match planted[&dim].get(&i) {
                    Some(winner) if *winner == w => hi,
                    Some(_) => lo,
                    None => flat,
                };
                let mut v: Vec<bool> = (0..EXPOSURES).map(|j| j < k).collect();
                v.shuffle(&mut rng);
                flags.insert(dim, v);
            }
            for j in 0..EXPOSURES {
                let high = flags[&Dimension::Perception][j];
                let mut items = [0u8; 8];
                for (q, item) in items.iter_mut().enumerate() {
                    let coded = if high { rng.gen_range(4..=5) } else { rng.gen_range(1..=3) };
                    *item = if q % 2 == 1 { 6 - coded } else { coded };
                }
                records.push(ExperimentRecord {
                    participant_id: format!("u{:05}", (i * 2 + w) * EXPOSURES + j),
                    pair_id: pair.pair_id.clone(),
                    word: word.clone(),
                    selected: flags[&Dimension::Participation][j],
                    ues_items: items,
                    recalled: flags[&Dimension::Perseverance][j],
                });
            }
        }
    }
    PlantedStudy {
        records,
        pairs,
        planted,
    }
}

fn labeling_pipeline() -> Outcome {
    let study = planted_study(7);
    let labels = label_from_experiment(&study.records, &study.pairs, 0.05).map_err(|e| e.to_string())?;
    ensure(labels.len() == 2 * N_PAIRS, || format!("{} labeled words", labels.len()))?;
    let mut mismatches = 0;
    for (i, pair) in study.pairs.iter().enumerate() {
        for w in 0..2 {
            let lw = &labels[2 * i + w];
            ensure(lw.word == if w == 0 { pair.first.clone() } else { pair.second.clone() }, || {
                format!("label order broken at pair {}", pair.pair_id)
            })?;
            let mut all = 1;
            for (dim, winners) in &study.planted {
                let want = u8::from(winners.get(&i) == Some(&w));
                all &= want;
                if lw.label(*dim) != Some(want) {
                    mismatches += 1;
                }
            }
            if lw.label(Dimension::Ie) != Some(all) {
                mismatches += 1;
            }
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} labels differ from the planted truth"))?;

    let report = study_report(
        StudyInput::Study1 {
            records: &study.records,
            pairs: Some(&study.pairs),
        },
        0.05,
    )
    .map_err(|e| e.to_string())?;
    let StudyReport::Study1(r) = report else {
        return Err("expected a study1 report".into());
    };
    for (dim, want) in [
        (Dimension::Participation, 0.292),
        (Dimension::Perception, 0.32),
        (Dimension::Perseverance, 0.28),
    ] {
        within(&format!("{dim} significant fraction"), r.fraction_significant[&dim], want, 1e-12)?;
    }
    for a in &r.associations {
        ensure(a.significant, || format!("association {}-{} not significant: {:?}", a.first, a.second, a.p))?;
    }
    Ok(format!(
        "500 labels exact; significant fractions 29.2%/32%/28%; associations p = {}",
        r.associations
            .iter()
            .map(|a| format!("{:.1e}", a.p.unwrap_or(f64::NAN)))
            .collect::<Vec<_>>()
            .join(", ")
    ))
}

// 8 -------------------------------------------------------------------------

fn keys(v: &Value) -> BTreeSet<String> {
    v.as_object().map(|o| o.keys().cloned().collect()).unwrap_or_default()
}

fn set(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn schema_exact_reports() -> Outcome {
    let study = planted_study(8);
    let s1 = study_report(
        StudyInput::Study1 {
            records: &study.records,
            pairs: Some(&study.pairs),
        },
        0.05,
    )
    .map_err(|e| e.to_string())?;
    let json = to_canonical_json(&s1).map_err(|e| e.to_string())?;
    ensure(json == to_canonical_json(&s1).map_err(|e| e.to_string())?, || "study1 JSON not stable".into())?;
    let v: Value = serde_json::from_str(&json).map_err(|e| e.to_string())?;
    ensure(v["mode"] == "study1", || "study1 mode tag missing".into())?;
    let rows = v["pair_tests"].as_array().ok_or("pair_tests missing")?;
    ensure(rows.len() == 3 * N_PAIRS, || format!("{} pair test rows", rows.len()))?;
    let want = set(&["dimension", "pair_id", "statistic", "df", "p", "significant"]);
    ensure(rows.iter().all(|r| keys(r) == want), || format!("pair test fields differ from {want:?}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut titles = Vec::new();
    for i in 0..30 {
        let base = (rng.gen_range(30.0..60.0), rng.gen_range(3.0..4.2), rng.gen_range(40.0..70.0));
        for (variant, lift) in [(Variant::Original, 0.0), (Variant::Modified, 1.0)] {
            titles.push(TitlePairRecord {
                pair_id: format!("t{i:02}"),
                variant,
                selection_rate: base.0 + lift * rng.gen_range(5.0..15.0),
                evaluation_avg: (base.1 + lift * rng.gen_range(0.2..0.7)).min(5.0),
                retention_rate: base.2 + lift * rng.gen_range(5.0..15.0),
            });
        }
    }
    let s3 = study_report(StudyInput::Study3(&titles), 0.05).map_err(|e| e.to_string())?;
    let v: Value = serde_json::from_str(&to_canonical_json(&s3).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let metrics = v["metrics"].as_array().ok_or("metrics missing")?;
    ensure(metrics.len() == 3, || format!("{} study3 metrics", metrics.len()))?;
    let required = set(&["metric", "t", "df", "p", "mean_original", "mean_modified"]);
    for m in metrics {
        ensure(required.is_subset(&keys(m)), || format!("study3 metric lacks {required:?}: {m}"))?;
        ensure(m["t"].as_f64().is_some_and(|t| t > 0.0), || format!("no lift detected in {m}"))?;
    }
    Ok("human-subject figures are not reproducible without the unpublished raw data; \
        study1/study3 reports are schema-exact and byte-stable on synthetic data"
        .to_string())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("metric reproduction", metric_reproduction),
        ("published-coefficient scorers", published_scorers),
        ("training recovery", training_recovery),
        ("lexicon fidelity", lexicon_fidelity),
        ("statistical kernel accuracy", statistical_kernel),
        ("rewriter property suite", rewriter_properties),
        ("labeling pipeline", labeling_pipeline),
        ("non-reproducibility statement", schema_exact_reports),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS  criterion {}: {name} — {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {}: {name} — {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
