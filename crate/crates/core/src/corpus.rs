//! The bundled golden files.

use std::io;
use std::path::{Path, PathBuf};

use crate::algebra::wire::to_canonical_json;
use crate::geometry::{builtin_atlas, serialize_atlas, RootSystemData};

/// `(file name, contents)` for every golden file, in a fixed order.
pub fn corpus_files() -> Vec<(&'static str, String)> {
    let atlas = |name: &str| serialize_atlas(&builtin_atlas(name).expect("builtin atlas"));
    vec![
        ("sphere_s2.json", atlas("sphere_S2")),
        ("mirror_pair_7.json", atlas("mirror_pair(7)")),
        ("hk_point.json", atlas("hk_point")),
        ("hk_torus_rank2.json", atlas("hk_torus_rank2")),
        ("su2_roots.json", to_canonical_json(&RootSystemData::su2())),
    ]
}

/// Writes the corpus into `dir` (created if missing); returns the paths.
pub fn emit_examples(dir: &Path) -> io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    corpus_files()
        .into_iter()
        .map(|(name, body)| {
            let path = dir.join(name);
            std::fs::write(&path, body)?;
            Ok(path)
        })
        .collect()
}
