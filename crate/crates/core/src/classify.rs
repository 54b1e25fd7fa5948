//! Decision engine: is a candidate the Weil polynomial of an abelian surface,
//! is the class principally polarizable, and does it contain a Jacobian.
//!
//! The Jacobian decision walks a fixed list of obstruction rows: `R0..R9` for
//! split classes (traces `s`, `t` of the elliptic factors, `|s| >= |t|`) and
//! `S0..S6` for simple classes. The first row whose side conditions hold is
//! reported; if none fires the class contains a Jacobian.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numth::{self, padic_valuation, Valuation};
use crate::weil::{SplitPair, WeilCandidate};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("{0:?} is not the Weil polynomial of an abelian surface")]
    NotAbelianSurface(WeilCandidate),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NotWeilReason {
    /// Fails the coefficient bounds.
    Shape,
    /// p-rank 1 valuations, but the mixed-case conditions fail.
    MixedFail,
    /// p-rank 0 valuations, matching neither the split nor the simple list.
    SsFail,
}

impl NotWeilReason {
    pub fn code(self) -> &'static str {
        match self {
            NotWeilReason::Shape => "SHAPE",
            NotWeilReason::MixedFail => "MIXED_FAIL",
            NotWeilReason::SsFail => "SS_FAIL",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SurfaceType {
    NotWeil(NotWeilReason),
    Ordinary,
    Mixed,
    Supersingular,
}

impl SurfaceType {
    pub fn is_valid(self) -> bool {
        !matches!(self, SurfaceType::NotWeil(_))
    }

    pub fn name(self) -> &'static str {
        match self {
            SurfaceType::NotWeil(_) => "not_weil",
            SurfaceType::Ordinary => "ordinary",
            SurfaceType::Mixed => "mixed",
            SurfaceType::Supersingular => "supersingular",
        }
    }
}

/// Identifier of the obstruction row that fired, or `None` (`"NONE"`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rule {
    R0,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    S0,
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    #[serde(rename = "NONE")]
    None,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::None => f.write_str("NONE"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JacobianDecision {
    pub exists: bool,
    pub rule: Rule,
}

impl JacobianDecision {
    fn from_rule(rule: Option<Rule>) -> Self {
        match rule {
            Some(rule) => JacobianDecision {
                exists: false,
                rule,
            },
            None => JacobianDecision {
                exists: true,
                rule: Rule::None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub candidate: WeilCandidate,
    pub shape_ok: bool,
    pub surface: SurfaceType,
    pub p_rank: Option<u8>,
    pub simple: Option<bool>,
    pub split: Option<SplitPair>,
    pub principally_polarizable: Option<bool>,
    pub jacobian: Option<JacobianDecision>,
}

impl Classification {
    pub fn has_jacobian(&self) -> bool {
        self.jacobian.is_some_and(|j| j.exists)
    }
}

/// Split supersingular: `v_p(a) >= m/2`, `v_p(b) >= m`, square discriminant,
/// plus two congruence conditions on `p` when `q` is a square.
fn split_supersingular_ok(c: &WeilCandidate, va: Valuation, vb: Valuation, delta: i128) -> bool {
    let m = c.field.m();
    if !(va.at_least_half_of(m) && vb.at_least(m) && numth::is_perfect_square(delta).is_some()) {
        return false;
    }
    let Some(root_q) = c.field.sqrt() else {
        return true;
    };
    let p = c.p();
    // a = sqrt(q) a', b = q b'; the valuation bounds make both exact.
    let a_red = c.a as i128 / root_q as i128;
    let b_red = c.b as i128 / c.q();
    debug_assert_eq!(a_red * root_q as i128, c.a as i128);
    debug_assert_eq!(b_red * c.q(), c.b as i128);
    if b_red == 2 && p % 4 == 1 {
        return false;
    }
    if (a_red - b_red).rem_euclid(2) != 0 && p % 3 == 1 {
        return false;
    }
    true
}

/// Membership in the list of simple supersingular Weil polynomials.
fn simple_supersingular_ok(c: &WeilCandidate) -> bool {
    let (a, b, q) = (c.a as i128, c.b as i128, c.q());
    let p = c.p();
    let square = c.field.is_square();
    let a2 = a * a;
    match () {
        _ if a == 0 && b == 0 => (square && p % 8 != 1) || (!square && p != 2),
        _ if a == 0 && b == -q => (square && p % 12 != 1) || (!square && p != 3),
        _ if a == 0 && b == q => !square,
        _ if a == 0 && b == -2 * q => !square,
        _ if a == 0 && b == 2 * q => square && p % 4 == 1,
        _ if a2 == q && b == q => square && p % 5 != 1,
        _ if a2 == 2 * q && b == q => !square && p == 2,
        _ if a2 == 4 * q && b == 3 * q => square && p % 3 == 1,
        _ if a2 == 5 * q && b == 3 * q => !square && p == 5,
        _ => false,
    }
}

/// The three mutually exclusive valuation cases for a shape-valid candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ValuationCase {
    /// `v_p(b) = 0`.
    Ordinary,
    /// `v_p(a) = 0 < v_p(b)`.
    Mixed,
    /// `v_p(a) > 0` and `v_p(b) > 0`.
    Supersingular,
}

/// `None` when the candidate fails the shape test.
pub fn valuation_case(c: &WeilCandidate) -> Option<ValuationCase> {
    c.discriminants()?;
    let p = c.p();
    let va = padic_valuation(c.a as i128, p);
    let vb = padic_valuation(c.b as i128, p);
    Some(if !vb.is_positive() {
        ValuationCase::Ordinary
    } else if !va.is_positive() {
        ValuationCase::Mixed
    } else {
        ValuationCase::Supersingular
    })
}

/// `(split, simple)`: whether a supersingular-case candidate meets the split
/// conditions and whether it is on the simple list. At most one holds.
pub fn supersingular_membership(c: &WeilCandidate) -> Option<(bool, bool)> {
    if valuation_case(c)? != ValuationCase::Supersingular {
        return None;
    }
    let deltas = c.discriminants()?;
    let p = c.p();
    let va = padic_valuation(c.a as i128, p);
    let vb = padic_valuation(c.b as i128, p);
    Some((
        split_supersingular_ok(c, va, vb, deltas.big_delta),
        simple_supersingular_ok(c),
    ))
}

/// Surface type together with simplicity (absent for non-Weil candidates).
pub fn surface_type(c: &WeilCandidate) -> (SurfaceType, Option<bool>) {
    let Some(case) = valuation_case(c) else {
        return (SurfaceType::NotWeil(NotWeilReason::Shape), None);
    };
    let deltas = c.discriminants().expect("shape checked");
    let delta_square = numth::is_perfect_square(deltas.big_delta).is_some();
    match case {
        ValuationCase::Ordinary => (SurfaceType::Ordinary, Some(!delta_square)),
        ValuationCase::Mixed => {
            let small = deltas.small_delta;
            let vb = padic_valuation(c.b as i128, c.p());
            let delta_ok = small == 0 || !numth::is_padic_square(small, c.p()).expect("nonzero");
            if vb.at_least_half_of(c.field.m()) && delta_ok {
                (SurfaceType::Mixed, Some(!delta_square))
            } else {
                (SurfaceType::NotWeil(NotWeilReason::MixedFail), None)
            }
        }
        ValuationCase::Supersingular => {
            let (split, simple) = supersingular_membership(c).expect("supersingular case");
            assert!(
                !(split && simple),
                "supersingular candidate q={} a={} b={} satisfies both the split and the simple conditions",
                c.q(),
                c.a,
                c.b
            );
            if split || simple {
                (SurfaceType::Supersingular, Some(simple))
            } else {
                (SurfaceType::NotWeil(NotWeilReason::SsFail), None)
            }
        }
    }
}

fn require_valid(c: &WeilCandidate) -> Result<(), ClassifyError> {
    if surface_type(c).0.is_valid() {
        Ok(())
    } else {
        Err(ClassifyError::NotAbelianSurface(*c))
    }
}

/// False exactly when `a^2 - b = q`, `b < 0`, and every prime dividing `b`
/// is `1 mod 3`.
pub fn principally_polarizable(c: &WeilCandidate) -> Result<bool, ClassifyError> {
    require_valid(c)?;
    Ok(!polarization_obstructed(c))
}

fn polarization_obstructed(c: &WeilCandidate) -> bool {
    let (a, b) = (c.a as i128, c.b as i128);
    a * a - b == c.q()
        && b < 0
        && numth::prime_factors(b)
            .expect("b < 0")
            .iter()
            .all(|&r| r % 3 == 1)
}

struct SplitContext {
    p: u64,
    q: i128,
    sqrt_q: Option<i128>,
    prank: u8,
    s: i128,
    t: i128,
}

type SplitRow = (Rule, fn(&SplitContext) -> bool);

const SPLIT_ROWS: [SplitRow; 10] = [
    (Rule::R0, |x| (x.s - x.t).abs() == 1),
    (Rule::R1, |x| {
        x.prank == 2 && x.s == x.t && [-3, -4, -7].contains(&(x.t * x.t - 4 * x.q))
    }),
    (Rule::R2, |x| {
        x.prank == 2 && x.q == 2 && x.s.abs() == 1 && x.t.abs() == 1 && x.s != x.t
    }),
    (Rule::R3, |x| {
        x.prank == 1
            && x.sqrt_q.is_some()
            && x.s * x.s == 4 * x.q
            && x.s != x.t
            && numth::is_squarefree((x.s - x.t).abs()).expect("s != t")
    }),
    (Rule::R4, |x| {
        x.prank == 0 && x.p > 3 && x.s * x.s != x.t * x.t
    }),
    (Rule::R5, |x| {
        x.prank == 0
            && x.p == 3
            && x.sqrt_q.is_none()
            && x.s * x.s == 3 * x.q
            && x.t * x.t == 3 * x.q
    }),
    (Rule::R6, |x| match x.sqrt_q {
        Some(r) if x.prank == 0 && x.p == 3 => (x.s - x.t) % (3 * r) != 0,
        _ => false,
    }),
    (Rule::R7, |x| {
        x.prank == 0 && x.p == 2 && (x.s * x.s - x.t * x.t) % (2 * x.q) != 0
    }),
    (Rule::R8, |x| {
        x.prank == 0 && (x.q == 2 || x.q == 3) && x.s == x.t
    }),
    (Rule::R9, |x| {
        x.prank == 0 && (x.q == 4 || x.q == 9) && x.s * x.s == 4 * x.q && x.t * x.t == 4 * x.q
    }),
];

struct SimpleContext {
    p: u64,
    q: i128,
    square: bool,
    prank: u8,
    a: i128,
    b: i128,
}

type SimpleRow = (Rule, fn(&SimpleContext) -> bool);

const SIMPLE_ROWS: [SimpleRow; 7] = [
    (Rule::S0, |x| {
        x.a * x.a - x.b == x.q && x.b < 0 && divisors_all_one_mod_three(-x.b)
    }),
    (Rule::S1, |x| x.prank == 2 && x.a == 0 && x.b == 1 - 2 * x.q),
    (Rule::S2, |x| {
        x.prank == 2 && x.p > 2 && x.a == 0 && x.b == 2 - 2 * x.q
    }),
    (Rule::S3, |x| {
        x.prank == 0 && x.p % 12 == 11 && x.square && x.a == 0 && x.b == -x.q
    }),
    (Rule::S4, |x| {
        x.prank == 0 && x.p == 3 && x.square && x.a == 0 && x.b == -x.q
    }),
    (Rule::S5, |x| {
        x.prank == 0 && x.p == 2 && !x.square && x.a == 0 && x.b == -x.q
    }),
    (Rule::S6, |x| {
        x.prank == 0 && (x.q == 2 || x.q == 3) && x.a == 0 && x.b == -2 * x.q
    }),
];

/// Every prime divisor of `n > 0` is `1 mod 3`, stripping each divisor found.
fn divisors_all_one_mod_three(mut n: i128) -> bool {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            if d % 3 != 1 {
                return false;
            }
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    n == 1 || n % 3 == 1
}

pub fn jacobian_exists(c: &WeilCandidate) -> Result<JacobianDecision, ClassifyError> {
    require_valid(c)?;
    let prank = c.newton_prank();
    let rule = match c.split_factors() {
        Some(SplitPair { s, t }) => {
            let ctx = SplitContext {
                p: c.p(),
                q: c.q(),
                sqrt_q: c.field.sqrt().map(|r| r as i128),
                prank,
                s: s as i128,
                t: t as i128,
            };
            SPLIT_ROWS
                .iter()
                .find(|(_, row)| row(&ctx))
                .map(|&(rule, _)| rule)
        }
        None => {
            let ctx = SimpleContext {
                p: c.p(),
                q: c.q(),
                square: c.field.is_square(),
                prank,
                a: c.a as i128,
                b: c.b as i128,
            };
            SIMPLE_ROWS
                .iter()
                .find(|(_, row)| row(&ctx))
                .map(|&(rule, _)| rule)
        }
    };
    Ok(JacobianDecision::from_rule(rule))
}

pub fn classify(c: &WeilCandidate) -> Classification {
    let (surface, simple) = surface_type(c);
    let shape_ok = !matches!(surface, SurfaceType::NotWeil(NotWeilReason::Shape));
    if !surface.is_valid() {
        return Classification {
            candidate: *c,
            shape_ok,
            surface,
            p_rank: None,
            simple: None,
            split: None,
            principally_polarizable: None,
            jacobian: None,
        };
    }
    Classification {
        candidate: *c,
        shape_ok,
        surface,
        p_rank: Some(c.newton_prank()),
        simple,
        split: c.split_factors(),
        principally_polarizable: Some(!polarization_obstructed(c)),
        jacobian: Some(jacobian_exists(c).expect("valid surface")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numth::{recognize_prime_power, PrimePower};
    use crate::weil::enumerate_candidates;

    fn cand(q: i128, a: i64, b: i64) -> WeilCandidate {
        WeilCandidate::new(recognize_prime_power(q).unwrap().unwrap(), a, b)
    }

    fn prime_powers_upto(n: i128) -> Vec<PrimePower> {
        (2..=n)
            .filter_map(|q| recognize_prime_power(q).unwrap())
            .collect()
    }

    #[test]
    fn surface_examples() {
        assert_eq!(
            surface_type(&cand(7, 0, -7)),
            (SurfaceType::Supersingular, Some(true))
        );
        assert_eq!(
            surface_type(&cand(7, 0, 14)),
            (SurfaceType::Supersingular, Some(false))
        );
        assert_eq!(
            surface_type(&cand(2, 0, 3)),
            (SurfaceType::Ordinary, Some(false))
        );
        assert_eq!(
            surface_type(&cand(5, 0, -9)),
            (SurfaceType::Ordinary, Some(true))
        );
        assert_eq!(
            surface_type(&cand(4, 17, 0)),
            (SurfaceType::NotWeil(NotWeilReason::Shape), None)
        );
    }

    #[test]
    fn not_weil_reasons() {
        let q9_mixed = cand(9, 1, 3);
        assert_eq!(surface_type(&q9_mixed).0, SurfaceType::Mixed);
        let q27 = cand(27, 1, 3);
        assert_eq!(
            surface_type(&q27).0,
            SurfaceType::NotWeil(NotWeilReason::MixedFail)
        );
        assert_eq!(
            surface_type(&cand(4, 2, 2)).0,
            SurfaceType::NotWeil(NotWeilReason::SsFail)
        );
        assert_eq!(
            surface_type(&cand(9, 0, 9)),
            (SurfaceType::Supersingular, Some(false))
        );
        assert_eq!(
            surface_type(&cand(3, 0, 3)),
            (SurfaceType::Supersingular, Some(true))
        );
    }

    #[test]
    fn polarizability_examples() {
        assert_eq!(principally_polarizable(&cand(7, 0, -7)), Ok(false));
        assert_eq!(principally_polarizable(&cand(7, 2, -3)), Ok(true));
        assert_eq!(principally_polarizable(&cand(5, 0, -9)), Ok(true));
        assert!(principally_polarizable(&cand(4, 17, 0)).is_err());
    }

    #[test]
    fn jacobian_examples() {
        let d = |q, a, b| jacobian_exists(&cand(q, a, b)).unwrap();
        assert_eq!(
            d(2, 0, 3),
            JacobianDecision {
                exists: false,
                rule: Rule::R2
            }
        );
        assert_eq!(
            d(7, 0, -7),
            JacobianDecision {
                exists: false,
                rule: Rule::S0
            }
        );
        assert_eq!(
            d(3, 0, -5),
            JacobianDecision {
                exists: false,
                rule: Rule::S1
            }
        );
        assert_eq!(
            d(9, 0, -9),
            JacobianDecision {
                exists: false,
                rule: Rule::S4
            }
        );
        assert_eq!(
            d(7, 0, 14),
            JacobianDecision {
                exists: true,
                rule: Rule::None
            }
        );
        assert_eq!(
            d(5, 1, 2),
            JacobianDecision {
                exists: true,
                rule: Rule::None
            }
        );
        assert!(jacobian_exists(&cand(4, 17, 0)).is_err());
    }

    #[test]
    fn classify_examples() {
        let c = classify(&cand(2, 0, 3));
        assert_eq!(c.surface, SurfaceType::Ordinary);
        assert_eq!(c.p_rank, Some(2));
        assert_eq!(c.split, Some(SplitPair { s: 1, t: -1 }));
        assert_eq!(c.principally_polarizable, Some(true));
        assert_eq!(
            c.jacobian,
            Some(JacobianDecision {
                exists: false,
                rule: Rule::R2
            })
        );

        let c = classify(&cand(4, 17, 0));
        assert!(!c.shape_ok);
        assert_eq!(c.surface, SurfaceType::NotWeil(NotWeilReason::Shape));
        assert!(c.p_rank.is_none() && c.jacobian.is_none() && c.split.is_none());

        let c = classify(&cand(7, 0, -7));
        assert_eq!(c.surface, SurfaceType::Supersingular);
        assert_eq!(c.simple, Some(true));
        assert_eq!(c.p_rank, Some(0));
        assert_eq!(c.principally_polarizable, Some(false));
        assert_eq!(
            c.jacobian,
            Some(JacobianDecision {
                exists: false,
                rule: Rule::S0
            })
        );
    }

    #[test]
    fn rule_names() {
        assert_eq!(Rule::R7.to_string(), "R7");
        assert_eq!(Rule::None.to_string(), "NONE");
        assert_eq!(serde_json::to_string(&Rule::None).unwrap(), "\"NONE\"");
        assert_eq!(serde_json::to_string(&Rule::S3).unwrap(), "\"S3\"");
    }

    #[test]
    fn s0_matches_polarization_obstruction() {
        for field in prime_powers_upto(169) {
            for c in enumerate_candidates(field).unwrap() {
                let cls = classify(&c);
                if !cls.surface.is_valid() {
                    continue;
                }
                let obstructed = cls.principally_polarizable == Some(false);
                if cls.simple == Some(true) {
                    assert_eq!(cls.jacobian.unwrap().rule == Rule::S0, obstructed, "{c:?}");
                } else {
                    assert!(!obstructed, "split class flagged non-polarizable: {c:?}");
                }
            }
        }
    }

    #[test]
    fn divisor_test_agrees_with_factorization() {
        for n in 1..5000i128 {
            let via_factors = numth::prime_factors(n).unwrap().iter().all(|&r| r % 3 == 1);
            assert_eq!(divisors_all_one_mod_three(n), via_factors, "n={n}");
        }
    }
}
