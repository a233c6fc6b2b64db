#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

pub mod grid;

use read_engine::ResourceBundle;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn fixture_bundle() -> ResourceBundle {
    let dir = fixtures();
    ResourceBundle::load(
        dir.join("wordnet"),
        dir.join("sentiwordnet.txt"),
        dir.join("frequency.tsv"),
    )
    .expect("fixture resources load")
}

/// Pinned WordNet 3.0 / SentiWordNet 3.0 / frequency table. Override the
/// location with READ_RESOURCES_DIR.
pub fn resources_dir() -> PathBuf {
    std::env::var_os("READ_RESOURCES_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../resources"))
}

pub fn pinned_bundle() -> &'static ResourceBundle {
    static BUNDLE: OnceLock<ResourceBundle> = OnceLock::new();
    BUNDLE.get_or_init(|| {
        let dir = resources_dir();
        ResourceBundle::load(
            dir.join("wordnet"),
            dir.join("SentiWordNet_3.0.0.txt"),
            dir.join("frequency_en.tsv"),
        )
        .unwrap_or_else(|e| {
            panic!(
                "pinned resources unavailable under {} ({e}); run scripts/fetch_resources.sh \
                 or point READ_RESOURCES_DIR at a directory holding them",
                dir.display()
            )
        })
    })
}
