//! Optional on-disk persistence of Lascoux polynomials between runs.

use std::path::PathBuf;

use orthodontia::{Composition, LascouxCache, Polynomial};
use serde::{Deserialize, Serialize};

const ENV_VAR: &str = "ORTHODONTIA_CACHE_DIR";
const FILE: &str = "lascoux.json";

#[derive(Serialize, Deserialize)]
struct Entry {
    alpha: Composition,
    poly: Polynomial,
}

fn path() -> Option<PathBuf> {
    std::env::var_os(ENV_VAR).map(|d| PathBuf::from(d).join(FILE))
}

/// A cache preloaded from `$ORTHODONTIA_CACHE_DIR/lascoux.json` when present.
/// An unreadable file is reported on stderr and ignored.
pub fn load() -> LascouxCache {
    let cache = LascouxCache::new();
    let Some(p) = path() else { return cache };
    let Ok(text) = std::fs::read_to_string(&p) else { return cache };
    match serde_json::from_str::<Vec<Entry>>(&text) {
        Ok(entries) => {
            for e in entries {
                cache.insert(e.alpha, e.poly);
            }
        }
        Err(err) => eprintln!("warning: ignoring cache {}: {err}", p.display()),
    }
    cache
}

pub fn store(cache: &LascouxCache) {
    let Some(p) = path() else { return };
    let entries: Vec<Entry> = cache
        .entries()
        .into_iter()
        .map(|(alpha, poly)| Entry { alpha, poly: (*poly).clone() })
        .collect();
    let result = p
        .parent()
        .map_or(Ok(()), std::fs::create_dir_all)
        .and_then(|()| std::fs::write(&p, serde_json::to_string(&entries).expect("cache serializes")));
    if let Err(err) = result {
        eprintln!("warning: could not write cache {}: {err}", p.display());
    }
}
