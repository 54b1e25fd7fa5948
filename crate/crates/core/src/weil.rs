//! The candidate Weil polynomial `x^4 + a x^3 + b x^2 + a q x + q^2`: shape
//! test, p-rank, discriminants, and the split into elliptic factors.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numth::{self, padic_valuation, PrimePower};

/// Largest `q` accepted by [`enumerate_candidates`].
pub const MAX_ENUMERATION_Q: u64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeilError {
    #[error("q = {0} exceeds the enumeration cap of {MAX_ENUMERATION_Q}")]
    TooLarge(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WeilCandidate {
    pub field: PrimePower,
    pub a: i64,
    pub b: i64,
}

/// Traces `(s, t)` of the two elliptic factors `(x^2 - s x + q)(x^2 - t x + q)`,
/// ordered so that `|s| >= |t|`, and `s > 0` when `s = -t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SplitPair {
    pub s: i64,
    pub t: i64,
}

impl SplitPair {
    pub fn canonical(x: i64, y: i64) -> Self {
        let (s, t) = match x.abs().cmp(&y.abs()) {
            std::cmp::Ordering::Greater => (x, y),
            std::cmp::Ordering::Less => (y, x),
            std::cmp::Ordering::Equal => (x.max(y), x.min(y)),
        };
        SplitPair { s, t }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeltaPair {
    /// `a^2 - 4(b - 2q)`; a perfect square exactly when the class splits.
    pub big_delta: i128,
    /// `(b + 2q)^2 - 4 q a^2`.
    pub small_delta: i128,
}

impl WeilCandidate {
    pub fn new(field: PrimePower, a: i64, b: i64) -> Self {
        WeilCandidate { field, a, b }
    }

    pub fn q(&self) -> i128 {
        self.field.q() as i128
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    /// Integer form of `|a| <= 4 sqrt(q)` and `2|a| sqrt(q) - 2q <= b <= a^2/4 + 2q`.
    pub fn shape_ok(&self) -> bool {
        let (a, b, q) = (self.a as i128, self.b as i128, self.q());
        if a * a > 16 * q {
            return false;
        }
        let shifted = b + 2 * q;
        shifted >= 0 && shifted * shifted >= 4 * a * a * q && 4 * b <= a * a + 8 * q
    }

    /// `None` unless the candidate passes [`shape_ok`](Self::shape_ok), which
    /// bounds every term well inside `i128`.
    pub fn discriminants(&self) -> Option<DeltaPair> {
        if !self.shape_ok() {
            return None;
        }
        let (a, b, q) = (self.a as i128, self.b as i128, self.q());
        Some(DeltaPair {
            big_delta: a * a - 4 * (b - 2 * q),
            small_delta: (b + 2 * q).pow(2) - 4 * q * a * a,
        })
    }

    /// 2 when `p` does not divide `b`, 1 when it divides `b` but not `a`, else 0.
    pub fn newton_prank(&self) -> u8 {
        let p = self.p();
        if !padic_valuation(self.b as i128, p).is_positive() {
            2
        } else if !padic_valuation(self.a as i128, p).is_positive() {
            1
        } else {
            0
        }
    }

    /// Integer roots `s, t` of `y^2 + a y + (b - 2q)` when the discriminant is
    /// a perfect square.
    pub fn split_factors(&self) -> Option<SplitPair> {
        let delta = self.discriminants()?.big_delta;
        let root = numth::is_perfect_square(delta)?;
        let a = self.a as i128;
        assert_eq!(
            (root - a).rem_euclid(2),
            0,
            "a square discriminant is congruent to a^2 mod 4"
        );
        let x = ((-a + root) / 2) as i64;
        let y = ((-a - root) / 2) as i64;
        Some(SplitPair::canonical(x, y))
    }
}

impl fmt::Display for WeilCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x^4 + ({})x^3 + ({})x^2 + ({})x + {}",
            self.a,
            self.b,
            self.a as i128 * self.q(),
            self.q() * self.q()
        )
    }
}

/// Every shape-valid `(a, b)` for `q`, in lexicographic order.
pub fn enumerate_candidates(field: PrimePower) -> Result<Vec<WeilCandidate>, WeilError> {
    let q = field.q();
    if q > MAX_ENUMERATION_Q {
        return Err(WeilError::TooLarge(q));
    }
    let q = q as i128;
    let a_max = numth::isqrt((16 * q) as u128) as i128;
    let mut out = Vec::new();
    for a in -a_max..=a_max {
        // smallest b with b + 2q >= sqrt(4 a^2 q)
        let need = 4 * a * a * q;
        let mut root = numth::isqrt(need as u128) as i128;
        if root * root < need {
            root += 1;
        }
        let b_min = root - 2 * q;
        let b_max = (a * a + 8 * q).div_euclid(4);
        for b in b_min..=b_max {
            let c = WeilCandidate::new(field, a as i64, b as i64);
            debug_assert!(c.shape_ok());
            out.push(c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn pp(q: i128) -> PrimePower {
        numth::recognize_prime_power(q).unwrap().unwrap()
    }

    fn cand(q: i128, a: i64, b: i64) -> WeilCandidate {
        WeilCandidate::new(pp(q), a, b)
    }

    /// Brute-force sweep of the coefficient region over a box that contains it.
    fn brute_force_count(q: i128) -> usize {
        let mut n = 0;
        for a in -20i128..=20 {
            for b in -200i128..=200 {
                let sq = (q as f64).sqrt();
                let af = a as f64;
                let bf = b as f64;
                // float transcription with a little slack, then settled exactly
                let loose = af.abs() <= 4.0 * sq + 1e-9
                    && 2.0 * af.abs() * sq - 2.0 * q as f64 <= bf + 1e-9
                    && bf <= af * af / 4.0 + 2.0 * q as f64 + 1e-9;
                let exact = a * a <= 16 * q
                    && b + 2 * q >= 0
                    && (b + 2 * q).pow(2) >= 4 * a * a * q
                    && 4 * b <= a * a + 8 * q;
                assert_eq!(loose, exact, "a={a} b={b}");
                n += exact as usize;
            }
        }
        n
    }

    #[test]
    fn shape_examples() {
        assert!(cand(2, 0, 3).shape_ok());
        assert!(!cand(4, 17, 0).shape_ok());
        assert!(!cand(4, 1, -5).shape_ok());
    }

    #[test]
    fn shape_failure_has_root_off_the_circle() {
        let roots = roots_of(&cand(4, 1, -5));
        assert!(roots.iter().any(|r| (r.norm() - 2.0).abs() > 1e-6));
    }

    #[test]
    fn prank_examples() {
        assert_eq!(cand(2, 0, 3).newton_prank(), 2);
        assert_eq!(cand(7, 0, -7).newton_prank(), 0);
        assert_eq!(cand(5, 1, -10).newton_prank(), 1);
    }

    #[test]
    fn split_examples() {
        assert_eq!(
            cand(2, 0, 3).split_factors(),
            Some(SplitPair { s: 1, t: -1 })
        );
        assert_eq!(cand(5, 1, 2).split_factors(), None);
        assert_eq!(
            cand(7, 0, 14).split_factors(),
            Some(SplitPair { s: 0, t: 0 })
        );
    }

    #[test]
    fn enumeration_boundaries_q2() {
        let all = enumerate_candidates(pp(2)).unwrap();
        let has = |a, b| all.iter().any(|c| c.a == a && c.b == b);
        assert!(has(0, 3));
        assert!(has(0, -4));
        // a = -5 passes a^2 <= 32, but [2*5*sqrt(2) - 4, 25/4 + 4] holds no integer
        assert!(!all.iter().any(|c| c.a == -5));
        assert!(!all.iter().any(|c| c.a.abs() >= 6));
        assert_eq!(all.len(), brute_force_count(2));
        assert!(all.windows(2).all(|w| (w[0].a, w[0].b) < (w[1].a, w[1].b)));
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for q in [3, 4, 5, 7, 8, 9] {
            assert_eq!(
                enumerate_candidates(pp(q)).unwrap().len(),
                brute_force_count(q),
                "q={q}"
            );
        }
        assert!(enumerate_candidates(pp(10_007)).is_err());
    }

    #[test]
    fn region_is_sign_symmetric() {
        for q in [2i128, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49] {
            let sq = numth::isqrt(q as u128) as i64 + 1;
            for a in -(4 * sq + 1)..=(4 * sq + 1) {
                let bound = 4 * q as i64 + (a * a + 3) / 4;
                for b in -bound..=bound {
                    assert_eq!(cand(q, a, b).shape_ok(), cand(q, -a, b).shape_ok());
                }
            }
        }
    }

    #[test]
    fn split_pairs_are_elliptic_traces() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 64, 81] {
            for c in enumerate_candidates(pp(q)).unwrap() {
                let cases = [
                    !padic_valuation(c.b as i128, c.p()).is_positive(),
                    padic_valuation(c.b as i128, c.p()).is_positive()
                        && !padic_valuation(c.a as i128, c.p()).is_positive(),
                    padic_valuation(c.b as i128, c.p()).is_positive()
                        && padic_valuation(c.a as i128, c.p()).is_positive(),
                ];
                assert_eq!(cases.iter().filter(|&&x| x).count(), 1);
                if let Some(SplitPair { s, t }) = c.split_factors() {
                    let (s, t, q) = (s as i128, t as i128, q);
                    assert_eq!(s + t, -(c.a as i128));
                    assert_eq!(s * t, c.b as i128 - 2 * q);
                    assert!(s * s <= 4 * q && t * t <= 4 * q);
                    assert!(s.abs() >= t.abs());
                    if s == -t && s != 0 {
                        assert!(s > 0);
                    }
                    if [2, 3, 4, 5, 7, 9].contains(&q) {
                        let coprime = [s, t].iter().filter(|&&x| x % c.p() as i128 != 0).count();
                        assert_eq!(coprime as u8, c.newton_prank());
                    }
                }
            }
        }
    }

    /// Roots of the quartic via `x^4 + a x^3 + b x^2 + a q x + q^2 = x^2 (y^2 + a y + b - 2q)`
    /// with `y = x + q/x`. The discriminant `y^2 - 4q` of `x^2 - y x + q` is
    /// assembled as `(a^2 + D)/4 - 4q -+ (a/2) sqrt(D)` so the exact rational
    /// part does not lose precision at double roots.
    fn roots_of(c: &WeilCandidate) -> Vec<Complex64> {
        let (a, q) = (c.a as f64, c.q() as f64);
        let big_d = c.a as i128 * c.a as i128 - 4 * (c.b as i128 - 2 * c.q());
        let rational = (c.a as i128 * c.a as i128 + big_d) as f64 / 4.0 - 4.0 * q;
        let root_d = Complex64::new(big_d as f64, 0.0).sqrt();
        let mut out = Vec::new();
        for sign in [1.0, -1.0] {
            let y = (-a + sign * root_d) / 2.0;
            let disc = Complex64::new(rational, 0.0) - sign * (a / 2.0) * root_d;
            let d = disc.sqrt();
            out.push((y + d) / 2.0);
            out.push((y - d) / 2.0);
        }
        out
    }

    #[test]
    fn candidates_have_roots_on_the_circle() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49, 125, 1024] {
            let all = enumerate_candidates(pp(q)).unwrap();
            let sample: Vec<_> = all.choose_multiple(&mut rng, 100).collect();
            let qf = q as f64;
            for c in sample {
                let (a, b) = (c.a as f64, c.b as f64);
                for x in roots_of(c) {
                    let residual = x.powi(4) + a * x.powi(3) + b * x.powi(2) + a * qf * x + qf * qf;
                    assert!(
                        residual.norm() <= 1e-9 * qf * qf,
                        "{c}: residual {residual}"
                    );
                    assert!(
                        (x.norm() - qf.sqrt()).abs() <= 1e-9 * qf.sqrt().max(1.0),
                        "{c}: root {x}"
                    );
                }
            }
        }
    }
}
