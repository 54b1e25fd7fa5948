//! Genus-2 curve models and direct point counting.

use std::fmt;
use std::sync::Arc;

use crate::gf::{self, poly, FiniteField, GFPolynomial};

use super::char2::{self, ReducibilityTest};
use super::tower::{Tower, MAX_K};
use super::{OracleError, PointCounts};

/// Which multiplier `c` the model `y^2 = c F(x)` carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistClass {
    Square,
    Nonsquare,
}

/// The smallest (by encoding) nonsquare of an odd-characteristic field.
pub fn fixed_nonsquare(field: &FiniteField) -> u32 {
    (1..field.size())
        .find(|&x| field.chi(x) == -1)
        .expect("odd-characteristic fields have nonsquares")
}

/// `y^2 = c F(x)` in odd characteristic, `F` monic squarefree of degree 5 or 6.
#[derive(Debug, Clone)]
pub struct CurveOdd {
    twist: TwistClass,
    f: GFPolynomial,
}

impl CurveOdd {
    pub fn new(twist: TwistClass, f: GFPolynomial) -> Result<Self, OracleError> {
        let field = f.field();
        if field.characteristic() == 2 {
            return Err(OracleError::InvalidModel(
                "y^2 = cF(x) needs odd characteristic".into(),
            ));
        }
        let deg = f.degree();
        if !matches!(deg, Some(5 | 6)) || !f.is_monic() {
            return Err(OracleError::InvalidModel(format!(
                "F must be monic of degree 5 or 6: {f}"
            )));
        }
        if deg == Some(5) && twist == TwistClass::Nonsquare {
            return Err(OracleError::InvalidModel(
                "quintic models take c = 1".into(),
            ));
        }
        if !f.is_squarefree() {
            return Err(OracleError::InvalidModel(format!(
                "F is not squarefree: {f}"
            )));
        }
        Ok(CurveOdd { twist, f })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.f.field()
    }

    pub fn twist(&self) -> TwistClass {
        self.twist
    }

    pub fn poly(&self) -> &GFPolynomial {
        &self.f
    }

    /// The leading multiplier `c` as an element of `GF(q)`.
    pub fn multiplier(&self) -> u32 {
        match self.twist {
            TwistClass::Square => 1,
            TwistClass::Nonsquare => fixed_nonsquare(self.field()),
        }
    }

    fn count_in(&self, ext: &FiniteField) -> u64 {
        let c = self.multiplier();
        let f = self.f.coeffs();
        let affine: i64 = (0..ext.size())
            .map(|x| 1 + ext.chi(ext.mul(c, poly::eval(ext, f, x))) as i64)
            .sum();
        let infinity = if self.f.degree() == Some(5) {
            1
        } else {
            1 + ext.chi(c) as i64
        };
        (affine + infinity) as u64
    }
}

/// `y^2 + h(x) y = f(x)` in characteristic 2.
#[derive(Debug, Clone)]
pub struct CurveChar2 {
    h: GFPolynomial,
    f: GFPolynomial,
}

impl CurveChar2 {
    /// Accepts only models that are smooth on both charts and geometrically
    /// irreducible.
    pub fn new(tower: &Tower, h: GFPolynomial, f: GFPolynomial) -> Result<Self, OracleError> {
        let curve = Self::unchecked(h, f)?;
        let (h, f) = (curve.h.coeffs(), curve.f.coeffs());
        if curve.field().size() != tower.base().size()
            || curve.field().modulus() != tower.base().modulus()
        {
            return Err(OracleError::InvalidModel(
                "model and tower use different fields".into(),
            ));
        }
        if !char2::is_smooth(tower, &char2::roots_of_h(tower, h), h, f) {
            return Err(OracleError::InvalidModel(format!(
                "singular model: {curve}"
            )));
        }
        if ReducibilityTest::new(tower, h).is_reducible(f) {
            return Err(OracleError::InvalidModel(format!(
                "reducible model: {curve}"
            )));
        }
        Ok(curve)
    }

    /// Checks only degrees and characteristic. The result may be singular;
    /// used to exercise the count consistency gate.
    pub fn unchecked(h: GFPolynomial, f: GFPolynomial) -> Result<Self, OracleError> {
        if h.field().characteristic() != 2 || f.field().modulus() != h.field().modulus() {
            return Err(OracleError::InvalidModel(
                "h and f must live in one field of characteristic 2".into(),
            ));
        }
        match h.degree() {
            Some(d) if d <= 3 => {}
            _ => {
                return Err(OracleError::InvalidModel(
                    "need h != 0 with deg h <= 3".into(),
                ))
            }
        }
        if f.degree().is_some_and(|d| d > 6) {
            return Err(OracleError::InvalidModel("need deg f <= 6".into()));
        }
        Ok(CurveChar2 { h, f })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.h.field()
    }

    pub fn h(&self) -> &GFPolynomial {
        &self.h
    }

    pub fn f(&self) -> &GFPolynomial {
        &self.f
    }

    fn count_in(&self, ext: &FiniteField) -> u64 {
        let (h, f) = (self.h.coeffs(), self.f.coeffs());
        let points = |hx: u32, fx: u32| -> u64 {
            if hx == 0 {
                1
            } else {
                let hinv = ext.inv(ext.mul(hx, hx)).expect("nonzero");
                if ext.absolute_trace(ext.mul(fx, hinv)) == 0 {
                    2
                } else {
                    0
                }
            }
        };
        let affine: u64 = (0..ext.size())
            .map(|x| points(poly::eval(ext, h, x), poly::eval(ext, f, x)))
            .sum();
        affine + points(self.h.coeff(3), self.f.coeff(6))
    }
}

#[derive(Debug, Clone)]
pub enum Curve {
    Odd(CurveOdd),
    Char2(CurveChar2),
}

impl Curve {
    pub fn field(&self) -> &Arc<FiniteField> {
        match self {
            Curve::Odd(c) => c.field(),
            Curve::Char2(c) => c.field(),
        }
    }

    /// Projective points over `ext`, which must contain the base field with
    /// matching encodings (an extension built over it).
    pub fn count_points_in(&self, ext: &FiniteField) -> u64 {
        match self {
            Curve::Odd(c) => c.count_in(ext),
            Curve::Char2(c) => c.count_in(ext),
        }
    }

    /// Projective points over `GF(q^k)`, building the extension on the fly.
    pub fn count_points(&self, k: u32) -> Result<u64, OracleError> {
        let ext = gf::extend(self.field(), k)?;
        Ok(self.count_points_in(&ext))
    }

    /// `N_1..N_4` using the prebuilt extensions of `tower`.
    pub fn point_counts(&self, tower: &Tower) -> PointCounts {
        let mut n = [0; MAX_K as usize];
        for k in 1..=MAX_K {
            n[k as usize - 1] = self.count_points_in(tower.ext(k));
        }
        PointCounts::new(n)
    }
}

impl fmt::Display for CurveChar2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 + ({}) y = {}", self.h, self.f)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::Odd(c) => match c.twist {
                TwistClass::Square => write!(f, "y^2 = {}", c.f),
                TwistClass::Nonsquare => write!(f, "y^2 = [{}] ({})", c.multiplier(), c.f),
            },
            Curve::Char2(c) => c.fmt(f),
        }
    }
}
