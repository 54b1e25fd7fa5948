//! On-disk census cache: one JSON document per `q`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::numth::PrimePower;

use super::{Census, OracleError, RealizedMap};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheDocument {
    pub q: u64,
    pub p: u64,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub version: String,
    /// `[a, b, models]`, sorted by `(a, b)`.
    pub realized: Vec<(i64, i64, u64)>,
}

impl CacheDocument {
    pub fn from_census(c: &Census) -> Self {
        CacheDocument {
            q: c.field.q(),
            p: c.field.p(),
            m: c.field.m(),
            modulus: c.modulus.clone(),
            version: VERSION.to_string(),
            realized: c.realized.iter().map(|(&(a, b), &n)| (a, b, n)).collect(),
        }
    }

    pub fn realized_map(&self) -> RealizedMap {
        self.realized.iter().map(|&(a, b, n)| ((a, b), n)).collect()
    }

    /// Compact JSON plus a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

pub fn cache_path(dir: &Path, q: u64) -> PathBuf {
    dir.join(format!("weilsurf-q{q}.json"))
}

/// The cached map, if the file exists, parses, and matches the field,
/// modulus and tool version. Anything else means "recompute".
pub fn load(path: &Path, field: PrimePower, modulus: &[u32]) -> Option<RealizedMap> {
    let text = fs::read_to_string(path).ok()?;
    let doc: CacheDocument = serde_json::from_str(&text).ok()?;
    let valid = doc.q == field.q()
        && doc.p == field.p()
        && doc.m == field.m()
        && doc.modulus == modulus
        && doc.version == VERSION
        && doc
            .realized
            .windows(2)
            .all(|w| (w[0].0, w[0].1) < (w[1].0, w[1].1));
    valid.then(|| doc.realized_map())
}

pub fn write(path: &Path, doc: &CacheDocument) -> Result<(), OracleError> {
    let io = |source| OracleError::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(io)?;
    }
    fs::write(path, doc.to_json()).map_err(io)
}
