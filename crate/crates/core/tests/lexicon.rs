mod common;

use std::io::Write;
use std::time::Instant;

use read_engine::lexicon::{
    load_frequency_table, load_sentiwordnet, load_wordnet, PartOfSpeech, Relation, SynsetId,
};
use read_engine::Error;

fn noun(offset: u32) -> SynsetId {
    SynsetId::new(PartOfSpeech::Noun, offset)
}

#[test]
fn fixture_counts() {
    let db = load_wordnet(common::fixtures().join("wordnet")).unwrap();
    assert_eq!(db.len(), 5);
    assert_eq!(db.index_len(), 7);
    assert_eq!(db.synsets_of("star", None).len(), 2);
    assert_eq!(db.synsets_of("star", Some(PartOfSpeech::Verb)).len(), 1);
    assert_eq!(db.synsets_of("MAVEN", None)[0].id, noun(4000));
    assert!(db.synsets_of("zzxqy", None).is_empty());
    // '+' pointers on the verb are parsed and dropped.
    let verb = db.synsets_of("star", Some(PartOfSpeech::Verb))[0];
    assert!(verb.hypernym_ids.is_empty() && verb.hyponym_ids.is_empty());
}

#[test]
fn fixture_relations() {
    let db = load_wordnet(common::fixtures().join("wordnet")).unwrap();
    assert_eq!(db.related_synsets(noun(3000), Relation::Hypernym).unwrap(), [noun(1000)]);
    assert!(db.related_synsets(noun(1000), Relation::Hypernym).unwrap().is_empty());
    assert_eq!(
        db.related_synsets(noun(1000), Relation::Hyponym).unwrap(),
        [noun(2000), noun(3000)]
    );
    assert!(matches!(
        db.related_synsets(noun(9999), Relation::Hyponym),
        Err(Error::Integrity(_))
    ));
    for s in db.synsets() {
        assert!(!s.hypernym_ids.contains(&s.id));
    }
}

#[test]
fn fixture_load_is_deterministic() {
    let a = load_wordnet(common::fixtures().join("wordnet")).unwrap();
    let b = load_wordnet(common::fixtures().join("wordnet")).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.index_keys(), b.index_keys());
}

#[test]
fn missing_directory_is_a_resource_error() {
    let dir = tempfile::tempdir().unwrap();
    let err = load_wordnet(dir.path()).unwrap_err();
    assert!(err.is_resource());
    assert!(err.to_string().contains("index.noun"), "{err}");
}

#[test]
fn dangling_pointer_names_both_ids() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["index.verb", "index.adj", "index.adv", "data.verb", "data.adj", "data.adv"] {
        std::fs::write(dir.path().join(f), "").unwrap();
    }
    std::fs::write(dir.path().join("index.noun"), "thing n 1 1 @ 1 0 00000100\n").unwrap();
    std::fs::write(
        dir.path().join("data.noun"),
        "00000100 03 n 01 thing 0 001 @ 00000999 n 0000 | a thing\n",
    )
    .unwrap();
    let msg = load_wordnet(dir.path()).unwrap_err().to_string();
    assert!(msg.contains("00000100-n") && msg.contains("00000999-n"), "{msg}");
}

#[test]
fn malformed_line_reports_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["index.noun", "index.verb", "index.adj", "index.adv", "data.verb", "data.adj", "data.adv"] {
        std::fs::write(dir.path().join(f), "").unwrap();
    }
    std::fs::write(dir.path().join("data.noun"), "  license\n00000100 03 n zz thing 0 000 | x\n").unwrap();
    match load_wordnet(dir.path()).unwrap_err() {
        Error::Parse { file, line, .. } => assert_eq!((file.as_str(), line), ("data.noun", 2)),
        other => panic!("unexpected {other}"),
    }
}

#[test]
fn fixture_sentiment_and_frequency() {
    let swn = load_sentiwordnet(common::fixtures().join("sentiwordnet.txt")).unwrap();
    assert_eq!(swn.len(), 3);
    assert_eq!(swn.sentiment_of(noun(4000)), (0.5, 0.125));
    assert_eq!(swn.sentiment_of(noun(1000)), (0.0, 0.0));

    let freq = load_frequency_table(common::fixtures().join("frequency.tsv")).unwrap();
    assert_eq!(freq.len(), 6);
    assert_eq!(freq.count("STAR"), 154882);
}

#[test]
fn frequency_table_with_many_rows() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "word\tcount").unwrap();
    for i in 0..1000 {
        writeln!(f, "w{i}\t{}", i + 1).unwrap();
    }
    let t = load_frequency_table(f.path()).unwrap();
    assert_eq!(t.len(), 1000);
    assert_eq!(t.total(), 500_500);
}

// Pinned WordNet 3.0 and friends; see scripts/fetch_resources.sh.

#[test]
fn pinned_sense_counts() {
    let db = &common::pinned_bundle().wordnet;
    assert_eq!(db.synsets_of("maven", None).len(), 1);
    assert_eq!(db.synset_ids_of("maven", Some(PartOfSpeech::Noun)).len(), 1);
    let star = db.synsets_of("star", None);
    assert_eq!(star.len(), 12);
    assert_eq!(db.synsets_of("Star", None), star);
    let shared = db.synsets_of("maven", None)[0];
    assert!(shared.contains_lemma("star"));
    assert!(shared.gloss.contains("dazzlingly skilled in any field"), "{}", shared.gloss);
}

#[test]
fn pinned_full_load_and_verify() {
    let dir = common::resources_dir().join("wordnet");
    let start = Instant::now();
    let db = load_wordnet(&dir).unwrap_or_else(|e| panic!("{e}; run scripts/fetch_resources.sh"));
    db.verify().unwrap();
    let elapsed = start.elapsed();
    println!("wordnet: {} synsets, {} index keys, {elapsed:?}", db.len(), db.index_len());
    assert_eq!(db.len(), 117_659);
    for s in db.synsets() {
        assert!(!s.lemmas.is_empty());
        assert!(!s.hypernym_ids.contains(&s.id));
    }
}

#[test]
fn pinned_sentiment_invariants() {
    let swn = &common::pinned_bundle().sentiment;
    assert_eq!(swn.len(), 117_659);
    for (_, (p, n)) in swn.iter() {
        assert!(p >= 0.0 && n >= 0.0 && p + n <= 1.0);
    }
}
