//! Exhaustive census of genus-2 curves over small `F_q`.
//!
//! Every model from [`enumerate_curves`] is point-counted over `F_{q^k}` for
//! `k = 1..4`, its Weil polynomial is read off from `N_1, N_2` and checked
//! against `N_3, N_4`, and the resulting set of realized `(a, b)` is compared
//! with the classifier by [`crosscheck`].

pub mod cache;
pub mod census;
pub mod char2;
pub mod curve;
pub mod enumerate;
pub mod tower;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{classify, Rule};
use crate::gf::{self, FiniteField, GfError};
use crate::numth::{recognize_prime_power, PrimePower};
use crate::weil::{enumerate_candidates, WeilCandidate, WeilError};

pub use cache::CacheDocument;
pub use curve::{Curve, CurveChar2, CurveOdd, TwistClass};
pub use enumerate::enumerate_curves;
pub use tower::Tower;

/// Field sizes the oracle runs on by default.
pub const REQUIRED_Q: [u64; 6] = [2, 3, 4, 5, 7, 9];
/// Larger sizes that need an explicit opt-in.
pub const STRETCH_Q: [u64; 3] = [8, 11, 13];

/// `(a, b)` to number of enumerated models in that isogeny class.
pub type RealizedMap = BTreeMap<(i64, i64), u64>;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("q = {q} is not supported by the oracle (supported: {supported})")]
    Unsupported { q: u64, supported: String },
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Weil(#[from] WeilError),
    #[error("invalid curve model: {0}")]
    InvalidModel(String),
    #[error("point counts {counts:?} of {model} do not come from a Weil polynomial")]
    CountMismatch { model: String, counts: [u64; 4] },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}

/// `N_1..N_4`: projective point counts over `F_q, F_{q^2}, F_{q^3}, F_{q^4}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointCounts {
    pub n: [u64; 4],
}

impl PointCounts {
    pub fn new(n: [u64; 4]) -> Self {
        PointCounts { n }
    }
}

/// Inverts `N_1 = q + 1 + a` and `N_2 = q^2 + 1 - (a^2 - 2b)`. `None` when
/// the parity is wrong, which no genus-2 curve produces.
pub fn weil_from_counts(n1: i64, n2: i64, q: i64) -> Option<(i64, i64)> {
    let a = n1 - q - 1;
    let twice_b = a * a + n2 - q * q - 1;
    (twice_b % 2 == 0).then_some((a, twice_b / 2))
}

/// Whether `N_k = q^k + 1 - p_k` for `k = 1..4`, where `p_k` are the power
/// sums of the roots of `x^4 + a x^3 + b x^2 + a q x + q^2`.
pub fn verify_counts(a: i64, b: i64, q: i64, counts: &PointCounts) -> bool {
    let (a, b, q) = (a as i128, b as i128, q as i128);
    let (e1, e2, e3, e4) = (-a, b, -a * q, q * q);
    let p1 = e1;
    let p2 = e1 * p1 - 2 * e2;
    let p3 = e1 * p2 - e2 * p1 + 3 * e3;
    let p4 = e1 * p3 - e2 * p2 + e3 * p1 - 4 * e4;
    [p1, p2, p3, p4]
        .iter()
        .enumerate()
        .all(|(i, &pk)| q.pow(i as u32 + 1) + 1 - pk == counts.n[i] as i128)
}

/// Reads off the Weil polynomial and checks it against all four counts.
pub fn weil_class(q: u64, counts: &PointCounts) -> Option<(i64, i64)> {
    let q = q as i64;
    let (a, b) = weil_from_counts(counts.n[0] as i64, counts.n[1] as i64, q)?;
    verify_counts(a, b, q, counts).then_some((a, b))
}

pub(crate) fn supported_list(allow_stretch: bool) -> String {
    let mut all: Vec<u64> = REQUIRED_Q.to_vec();
    if allow_stretch {
        all.extend(STRETCH_Q);
        all.sort_unstable();
    }
    all.iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Validates `q` against the supported set.
pub fn supported_field(q: u64, allow_stretch: bool) -> Result<PrimePower, OracleError> {
    let ok = REQUIRED_Q.contains(&q) || (allow_stretch && STRETCH_Q.contains(&q));
    let unsupported = || OracleError::Unsupported {
        q,
        supported: supported_list(allow_stretch),
    };
    if !ok {
        return Err(unsupported());
    }
    recognize_prime_power(q as i128)
        .ok()
        .flatten()
        .ok_or_else(unsupported)
}

/// The base field `GF(q)` the oracle uses for `field`.
pub fn base_field(field: PrimePower) -> Result<Arc<FiniteField>, OracleError> {
    Ok(gf::make_field(field.p(), field.m())?)
}

#[derive(Debug, Clone)]
pub struct OracleOptions {
    /// Worker threads; results do not depend on it.
    pub jobs: usize,
    /// Where cached censuses live; `None` disables caching.
    pub cache_dir: Option<PathBuf>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            cache_dir: None,
        }
    }
}

/// Realized classes for one field.
#[derive(Debug, Clone)]
pub struct Census {
    pub field: PrimePower,
    pub modulus: Vec<u32>,
    pub realized: RealizedMap,
    pub from_cache: bool,
}

impl Census {
    pub fn models(&self) -> u64 {
        self.realized.values().sum()
    }
}

/// Computes (or loads from `opts.cache_dir`) the realized map for `field`.
pub fn realized_map(field: PrimePower, opts: &OracleOptions) -> Result<Census, OracleError> {
    let base = base_field(field)?;
    let modulus = base.modulus().to_vec();
    let cache_path = opts
        .cache_dir
        .as_ref()
        .map(|d| cache::cache_path(d, field.q()));
    if let Some(path) = &cache_path {
        if let Some(realized) = cache::load(path, field, &modulus) {
            return Ok(Census {
                field,
                modulus,
                realized,
                from_cache: true,
            });
        }
    }
    let tower = Tower::new(&base)?;
    let realized = census::realized_map(&tower, opts.jobs)?;
    let out = Census {
        field,
        modulus,
        realized,
        from_cache: false,
    };
    if let Some(path) = &cache_path {
        cache::write(path, &CacheDocument::from_census(&out))?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnomalyKind {
    /// A curve exists but the classifier rules the class out.
    RealizedButRejected,
    /// The classifier predicts a Jacobian but no model lands in the class.
    PredictedButMissing,
    /// A curve lands outside the shape-valid candidate list.
    RealizedOutsideCensus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anomaly {
    pub a: i64,
    pub b: i64,
    pub kind: AnomalyKind,
    pub surface: String,
    pub rule: Option<Rule>,
    pub models: u64,
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub census: Census,
    pub candidates: usize,
    pub classifier_positive: usize,
    pub anomalies: Vec<Anomaly>,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.anomalies.is_empty()
    }
}

/// Compares the realized map with the classifier over all candidates.
pub fn crosscheck(field: PrimePower, opts: &OracleOptions) -> Result<OracleReport, OracleError> {
    let census = realized_map(field, opts)?;
    Ok(compare(census)?)
}

/// The comparison half of [`crosscheck`], for an already computed census.
pub fn compare(census: Census) -> Result<OracleReport, WeilError> {
    let candidates = enumerate_candidates(census.field)?;
    let mut anomalies = Vec::new();
    let mut positive = 0;
    for c in &candidates {
        let cl = classify(c);
        let models = census.realized.get(&(c.a, c.b)).copied().unwrap_or(0);
        let kind = match (cl.has_jacobian(), models > 0) {
            (true, true) | (false, false) => None,
            (true, false) => Some(AnomalyKind::PredictedButMissing),
            (false, true) => Some(AnomalyKind::RealizedButRejected),
        };
        positive += cl.has_jacobian() as usize;
        if let Some(kind) = kind {
            anomalies.push(Anomaly {
                a: c.a,
                b: c.b,
                kind,
                surface: cl.surface.name().to_string(),
                rule: cl.jacobian.map(|j| j.rule),
                models,
            });
        }
    }
    let listed: std::collections::HashSet<(i64, i64)> =
        candidates.iter().map(|c| (c.a, c.b)).collect();
    for (&(a, b), &models) in &census.realized {
        if !listed.contains(&(a, b)) {
            let cl = classify(&WeilCandidate::new(census.field, a, b));
            anomalies.push(Anomaly {
                a,
                b,
                kind: AnomalyKind::RealizedOutsideCensus,
                surface: cl.surface.name().to_string(),
                rule: None,
                models,
            });
        }
    }
    anomalies.sort_by_key(|x| (x.a, x.b));
    Ok(OracleReport {
        census,
        candidates: candidates.len(),
        classifier_positive: positive,
        anomalies,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_examples() {
        assert_eq!(weil_from_counts(8, 36, 7), Some((0, -7)));
        assert_eq!(weil_from_counts(3, 11, 2), Some((0, 3)));
        assert_eq!(weil_from_counts(3, 13, 2), Some((0, 4)));
        for q in [2, 3, 4, 5, 7, 9] {
            assert_eq!(weil_from_counts(q + 1, q * q + 1, q), Some((0, 0)));
        }
        assert_eq!(weil_from_counts(3, 12, 2), None);
    }

    #[test]
    fn forward_counts_verify() {
        // (x^2 + 7)^2 over F_7: a = 0, b = 14
        let q = 7i64;
        let counts = PointCounts::new([8, 78, 344, 2206]);
        assert!(verify_counts(0, 14, q, &counts));
        assert_eq!(weil_class(7, &counts), Some((0, 14)));
        let mut bad = counts;
        bad.n[2] += 1;
        assert!(!verify_counts(0, 14, q, &bad));
        assert_eq!(weil_class(7, &bad), None);
    }

    #[test]
    fn supported_set() {
        for q in REQUIRED_Q {
            assert!(supported_field(q, false).is_ok());
        }
        for q in STRETCH_Q {
            assert!(supported_field(q, false).is_err());
            assert!(supported_field(q, true).is_ok());
        }
        for q in [1, 6, 16, 17] {
            assert!(supported_field(q, true).is_err());
        }
    }
}
