//! Dense univariate polynomials over a [`FiniteField`].
//!
//! The free functions work on coefficient slices (low degree first, no
//! trailing zeros, the zero polynomial is empty) so hot loops can avoid
//! allocating wrapper objects.

use std::fmt;
use std::sync::Arc;

use super::{FiniteField, GFElement, GfError};

pub fn trim(mut f: Vec<u32>) -> Vec<u32> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub fn degree(f: &[u32]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn add(field: &FiniteField, f: &[u32], g: &[u32]) -> Vec<u32> {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| {
            field.add(
                f.get(i).copied().unwrap_or(0),
                g.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    trim(out)
}

pub fn sub(field: &FiniteField, f: &[u32], g: &[u32]) -> Vec<u32> {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| {
            field.sub(
                f.get(i).copied().unwrap_or(0),
                g.get(i).copied().unwrap_or(0),
            )
        })
        .collect();
    trim(out)
}

pub fn mul(field: &FiniteField, f: &[u32], g: &[u32]) -> Vec<u32> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(a, b));
        }
    }
    trim(out)
}

pub fn scale(field: &FiniteField, f: &[u32], c: u32) -> Vec<u32> {
    trim(f.iter().map(|&a| field.mul(a, c)).collect())
}

/// Quotient and remainder. Panics if `divisor` is zero.
pub fn div_rem(field: &FiniteField, f: &[u32], divisor: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let divisor = trim(divisor.to_vec());
    let dd = degree(&divisor).expect("division by the zero polynomial");
    let lead_inv = field.inv(divisor[dd]).expect("nonzero leading coefficient");
    let mut rem = trim(f.to_vec());
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0; rem.len() - dd];
    while rem.len() > dd {
        let shift = rem.len() - 1 - dd;
        let c = field.mul(*rem.last().unwrap(), lead_inv);
        quot[shift] = c;
        for (i, &d) in divisor.iter().enumerate() {
            rem[shift + i] = field.sub(rem[shift + i], field.mul(c, d));
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub fn monic(field: &FiniteField, f: &[u32]) -> Vec<u32> {
    match f.last() {
        Some(&lead) => scale(field, f, field.inv(lead).expect("trimmed polynomial")),
        None => Vec::new(),
    }
}

/// Monic gcd. `gcd(0, 0)` comes back as the zero polynomial.
pub fn gcd(field: &FiniteField, f: &[u32], g: &[u32]) -> Vec<u32> {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let (_, r) = div_rem(field, &a, &b);
        a = b;
        b = r;
    }
    monic(field, &a)
}

/// Horner evaluation at a point of the same field.
#[inline]
pub fn eval(field: &FiniteField, f: &[u32], x: u32) -> u32 {
    f.iter()
        .rev()
        .fold(0, |acc, &c| field.add(field.mul(acc, x), c))
}

pub fn derivative(field: &FiniteField, f: &[u32]) -> Vec<u32> {
    let out = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| field.mul(field.from_int(i as i64), c))
        .collect();
    trim(out)
}

/// `f^e mod modulus`.
pub fn pow_mod(field: &FiniteField, f: &[u32], mut e: u64, modulus: &[u32]) -> Vec<u32> {
    let mut result = div_rem(field, &[1], modulus).1;
    let mut base = div_rem(field, f, modulus).1;
    while e > 0 {
        if e & 1 == 1 {
            result = div_rem(field, &mul(field, &result, &base), modulus).1;
        }
        base = div_rem(field, &mul(field, &base, &base), modulus).1;
        e >>= 1;
    }
    result
}

/// `gcd(f, f')` is a nonzero constant. The zero polynomial is not squarefree.
pub fn is_squarefree(field: &FiniteField, f: &[u32]) -> bool {
    let f = trim(f.to_vec());
    if f.is_empty() {
        return false;
    }
    gcd(field, &f, &derivative(field, &f)).len() == 1
}

/// A polynomial owned by a particular field.
#[derive(Clone)]
pub struct GFPolynomial {
    field: Arc<FiniteField>,
    coeffs: Vec<u32>,
}

impl GFPolynomial {
    /// Builds from raw encoded coefficients, low degree first.
    pub fn new(field: &Arc<FiniteField>, coeffs: Vec<u32>) -> Self {
        assert!(
            coeffs.iter().all(|&c| c < field.size()),
            "coefficient outside the field"
        );
        GFPolynomial {
            field: Arc::clone(field),
            coeffs: trim(coeffs),
        }
    }

    pub fn from_ints(field: &Arc<FiniteField>, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Arc<FiniteField>) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        degree(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn check(&self, other: &GFPolynomial) -> Result<(), GfError> {
        if Arc::ptr_eq(&self.field, &other.field) {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    fn wrap(&self, coeffs: Vec<u32>) -> GFPolynomial {
        GFPolynomial {
            field: Arc::clone(&self.field),
            coeffs,
        }
    }

    pub fn eval(&self, x: &GFElement) -> Result<GFElement, GfError> {
        if !Arc::ptr_eq(&self.field, x.field()) {
            return Err(GfError::FieldMismatch);
        }
        Ok(self
            .field
            .element(eval(&self.field, &self.coeffs, x.value())))
    }

    pub fn derivative(&self) -> GFPolynomial {
        self.wrap(derivative(&self.field, &self.coeffs))
    }

    pub fn add(&self, other: &GFPolynomial) -> Result<GFPolynomial, GfError> {
        self.check(other)?;
        Ok(self.wrap(add(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn mul(&self, other: &GFPolynomial) -> Result<GFPolynomial, GfError> {
        self.check(other)?;
        Ok(self.wrap(mul(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn gcd(&self, other: &GFPolynomial) -> Result<GFPolynomial, GfError> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(GfError::GcdOfZeros);
        }
        Ok(self.wrap(gcd(&self.field, &self.coeffs, &other.coeffs)))
    }

    pub fn is_squarefree(&self) -> bool {
        is_squarefree(&self.field, &self.coeffs)
    }
}

impl PartialEq for GFPolynomial {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) && self.coeffs == other.coeffs
    }
}

impl Eq for GFPolynomial {}

impl fmt::Debug for GFPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GFPolynomial(GF({}), {:?})",
            self.field.size(),
            self.coeffs
        )
    }
}

/// Terms from the top down; coefficients print as their encodings.
impl fmt::Display for GFPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (c, i) {
                (_, 0) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "x^{i}")?,
                (_, 1) => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}
