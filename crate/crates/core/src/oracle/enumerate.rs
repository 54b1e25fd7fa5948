//! Streaming enumeration of every curve model the oracle considers.

use crate::gf::{poly, GFPolynomial};

use super::char2::{self, Char2Family};
use super::curve::{Curve, CurveChar2, CurveOdd, TwistClass};
use super::tower::Tower;

/// Monic polynomials of degree `deg` over `GF(q)`, ordered by the encoded
/// index of their lower coefficients.
pub(crate) fn monic(q: u64, deg: usize, n: u64) -> Vec<u32> {
    let mut coeffs: Vec<u32> = (0..deg as u32).map(|i| (n / q.pow(i) % q) as u32).collect();
    coeffs.push(1);
    coeffs
}

/// Odd `q`: `y^2 = F` for monic squarefree quintics, then `y^2 = c F` for
/// monic squarefree sextics with `c` in {1, fixed nonsquare}.
/// `q = 2^m`: `y^2 + h y = f` for every `h != 0` of degree at most 3 and one
/// `f` per coset of `{u^2 + h u}`, kept when smooth and geometrically
/// irreducible.
pub fn enumerate_curves(tower: &Tower) -> Box<dyn Iterator<Item = Curve> + '_> {
    let base = tower.base();
    let q = tower.q();
    if base.characteristic() == 2 {
        return Box::new(char2::all_h(q).flat_map(move |h| {
            let family = Char2Family::new(tower, h);
            let hp = GFPolynomial::new(base, family.h.clone());
            (0..family.cosets.len())
                .filter_map(|r| {
                    let f = family.cosets.representative(r);
                    family.accepts(tower, &f).then(|| {
                        let c = CurveChar2::unchecked(hp.clone(), GFPolynomial::new(base, f));
                        Curve::Char2(c.expect("family models are well formed"))
                    })
                })
                .collect::<Vec<_>>()
        }));
    }
    let polys = move |deg: usize| {
        (0..q.pow(deg as u32))
            .map(move |n| monic(q, deg, n))
            .filter(move |f| poly::is_squarefree(base, f))
            .map(move |f| GFPolynomial::new(base, f))
    };
    let quintics = polys(5).map(|f| CurveOdd::new(TwistClass::Square, f));
    let sextics = polys(6).flat_map(|f| {
        [TwistClass::Square, TwistClass::Nonsquare].map(|t| CurveOdd::new(t, f.clone()))
    });
    Box::new(
        quintics
            .chain(sextics)
            .map(|c| Curve::Odd(c.expect("enumerated models are well formed"))),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    #[test]
    fn odd_model_counts() {
        for (p, m) in [(3, 1), (5, 1)] {
            let base = make_field(p, m).unwrap();
            let tower = Tower::new(&base).unwrap();
            let q = tower.q();
            let models: Vec<Curve> = enumerate_curves(&tower).collect();
            let quintics = models
                .iter()
                .filter(|c| matches!(c, Curve::Odd(o) if o.poly().degree() == Some(5)))
                .count() as u64;
            assert_eq!(quintics, q.pow(5) - q.pow(4));
            assert_eq!(models.len() as u64 - quintics, 2 * (q.pow(6) - q.pow(5)));
        }
    }

    #[test]
    fn quintic_examples_over_f5() {
        let base = make_field(5, 1).unwrap();
        let tower = Tower::new(&base).unwrap();
        let want = |coeffs: &[u32]| {
            enumerate_curves(&tower)
                .any(|c| matches!(&c, Curve::Odd(o) if o.poly().coeffs() == coeffs))
        };
        assert!(want(&[1, 4, 0, 0, 0, 1]));
        assert!(!want(&[1, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn f2_models_are_smooth_and_exclude_known_bad_model() {
        let base = make_field(2, 1).unwrap();
        let tower = Tower::new(&base).unwrap();
        let models: Vec<Curve> = enumerate_curves(&tower).collect();
        assert!(!models.is_empty());
        for c in &models {
            let Curve::Char2(c) = c else {
                panic!("odd model over F_2")
            };
            assert!(CurveChar2::new(&tower, c.h().clone(), c.f().clone()).is_ok());
            assert!(!(c.h().coeffs() == [1] && c.f().coeffs() == [0, 0, 0, 1, 0, 0, 1]));
        }
    }
}
