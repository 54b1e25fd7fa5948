use std::fmt;
use std::sync::Arc;

use crate::numth;

use super::poly;
use super::GfError;

/// Upper bound on the number of elements of any constructed field.
pub const MAX_FIELD_SIZE: u64 = 10_000_000;

/// Log of zero.
pub const ZERO_LOG: u32 = u32::MAX;

/// A finite field `GF(base_size^degree)`, either a prime field or an
/// extension of another [`FiniteField`].
///
/// Elements are encoded as integers `sum c_i * base_size^i` where `c_i` are
/// the (encoded) coefficients over the base field; for the prime field the
/// encoding is the residue itself. Since every layer of a tower uses the same
/// scheme, the encoding is the base-`p` digit string of the coordinates over
/// `GF(p)`, and an element of the base field keeps its encoding when embedded.
///
/// Multiplication, inversion and (for odd `p`) addition go through exp/log
/// and Zech tables built at construction.
pub struct FiniteField {
    p: u32,
    degree: u32,
    abs_degree: u32,
    size: u32,
    base: Option<Arc<FiniteField>>,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    /// Absolute trace of the `j`-th `GF(p)` basis vector `p^j`.
    basis_trace: Vec<u32>,
    /// For `p = 2`: bitmask whose parity with an element gives its trace.
    trace_mask: u32,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("size", &self.size)
            .field("degree", &self.degree)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// The prime field `GF(p)`, or `GF(p^m)` as a degree-`m` extension of it.
pub fn make_field(p: u64, m: u32) -> Result<Arc<FiniteField>, GfError> {
    if !numth::is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    if m == 0 {
        return Err(GfError::ZeroDegree);
    }
    check_size(p, m)?;
    let prime = Arc::new(FiniteField::prime(p as u32));
    if m == 1 {
        Ok(prime)
    } else {
        extend(&prime, m)
    }
}

/// `GF(q^k)` built as a degree-`k` extension of `base = GF(q)`, so that base
/// elements embed as constant polynomials.
pub fn extend(base: &Arc<FiniteField>, k: u32) -> Result<Arc<FiniteField>, GfError> {
    if k == 0 {
        return Err(GfError::ZeroDegree);
    }
    check_size(base.size as u64, k)?;
    if k == 1 {
        return Ok(Arc::clone(base));
    }
    let modulus = first_irreducible(base, k).ok_or(GfError::NoIrreducible(k))?;
    Ok(Arc::new(FiniteField::extension(
        Arc::clone(base),
        k,
        modulus,
    )))
}

fn check_size(base: u64, k: u32) -> Result<(), GfError> {
    match base.checked_pow(k) {
        Some(size) if size <= MAX_FIELD_SIZE => Ok(()),
        _ => Err(GfError::TooLarge { base, degree: k }),
    }
}

/// Lowest monic irreducible of degree `k` over `base`, ordering candidates by
/// their coefficient vectors read from `x^(k-1)` down to the constant term.
fn first_irreducible(base: &FiniteField, k: u32) -> Option<Vec<u32>> {
    let count = (base.size as u64).pow(k);
    (0..count)
        .map(|n| {
            let mut coeffs = digits(n, base.size as u64, k as usize);
            coeffs.push(1);
            coeffs
        })
        .find(|candidate| is_irreducible(base, candidate))
}

fn digits(mut n: u64, radix: u64, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len + 1);
    for _ in 0..len {
        out.push((n % radix) as u32);
        n /= radix;
    }
    out
}

/// Irreducibility over `field` of a monic polynomial: no roots, and
/// `gcd(f, x^(Q^j) - x) = 1` for `1 <= j <= deg/2` where `Q = |field|`.
pub(crate) fn is_irreducible(field: &FiniteField, f: &[u32]) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    if (0..field.size).any(|x| poly::eval(field, f, x) == 0) {
        return false;
    }
    let x = vec![0, 1];
    let mut power = x.clone();
    for _ in 1..=d / 2 {
        power = poly::pow_mod(field, &power, field.size as u64, f);
        let diff = poly::sub(field, &power, &x);
        let g = poly::gcd(field, f, &diff);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FiniteField {
    fn prime(p: u32) -> Self {
        let mut field = FiniteField {
            p,
            degree: 1,
            abs_degree: 1,
            size: p,
            base: None,
            modulus: vec![0, 1],
            exp: Vec::new(),
            log: Vec::new(),
            zech: Vec::new(),
            basis_trace: Vec::new(),
            trace_mask: 0,
        };
        let generator = (1..p)
            .find(|&g| {
                is_generator(p as u64, |e| {
                    numth::pow_mod(g as u128, e as u128, p as u128) as u32
                })
            })
            .expect("every prime field has a primitive root");
        let (exp, log) = power_tables(p, generator, |a, b| {
            ((a as u64 * b as u64) % p as u64) as u32
        });
        field.install_tables(exp, log);
        field
    }

    fn extension(base: Arc<FiniteField>, degree: u32, modulus: Vec<u32>) -> Self {
        let size = base.size.pow(degree);
        let mut field = FiniteField {
            p: base.p,
            degree,
            abs_degree: base.abs_degree * degree,
            size,
            base: Some(base),
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            zech: Vec::new(),
            basis_trace: Vec::new(),
            trace_mask: 0,
        };
        let slow_pow = |g: u32, mut e: u64| {
            let mut acc = 1u32;
            let mut sq = g;
            while e > 0 {
                if e & 1 == 1 {
                    acc = field.slow_mul(acc, sq);
                }
                sq = field.slow_mul(sq, sq);
                e >>= 1;
            }
            acc
        };
        let generator = (2..size)
            .find(|&g| is_generator(size as u64, |e| slow_pow(g, e)))
            .expect("multiplicative group of a finite field is cyclic");
        let (exp, log) = power_tables(size, generator, |a, b| field.slow_mul(a, b));
        field.install_tables(exp, log);
        field
    }

    /// Product via polynomial multiplication over the base field reduced by
    /// the modulus. Used only while the log tables are being built.
    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let base = self.base.as_ref().expect("extension field");
        let d = self.degree as usize;
        let pa = digits(a as u64, base.size as u64, d);
        let pb = digits(b as u64, base.size as u64, d);
        let prod = poly::mul(base, &pa, &pb);
        let (_, rem) = poly::div_rem(base, &prod, &self.modulus);
        rem.iter().rev().fold(0u32, |acc, &c| acc * base.size + c)
    }

    fn install_tables(&mut self, exp: Vec<u32>, log: Vec<u32>) {
        self.zech = exp
            .iter()
            .map(|&e| log[self.add_digits(1, e) as usize])
            .collect();
        self.exp = exp;
        self.log = log;
        self.basis_trace = (0..self.abs_degree)
            .map(|j| self.slow_trace(self.p.pow(j)))
            .collect();
        if self.p == 2 {
            self.trace_mask = self
                .basis_trace
                .iter()
                .enumerate()
                .fold(0, |m, (j, &t)| m | (t << j));
        }
    }

    fn slow_trace(&self, x: u32) -> u32 {
        let mut acc = 0;
        let mut cur = x;
        for _ in 0..self.abs_degree {
            acc = self.add_digits(acc, cur);
            cur = self.pow(cur, self.p as u64);
        }
        debug_assert!(acc < self.p);
        acc
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Degree over the base field (over `GF(p)` for a prime field's extensions).
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Degree over the prime field.
    pub fn absolute_degree(&self) -> u32 {
        self.abs_degree
    }

    pub fn base(&self) -> Option<&Arc<FiniteField>> {
        self.base.as_ref()
    }

    /// Coefficients (low to high) of the defining polynomial over the base.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn base_size(&self) -> u32 {
        self.base.as_ref().map_or(self.p, |b| b.size)
    }

    /// Coordinates of `x` over the base field, low to high.
    pub fn coefficients(&self, x: u32) -> Vec<u32> {
        digits(x as u64, self.base_size() as u64, self.degree as usize)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let order = self.size - 1;
        let la = self.log[a as usize];
        let lb = self.log[b as usize];
        let d = if lb >= la { lb - la } else { lb + order - la };
        let z = self.zech[d as usize];
        if z == ZERO_LOG {
            0
        } else {
            self.exp[((la as u64 + z as u64) % order as u64) as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 || a == 0 {
            return a;
        }
        let order = self.size - 1;
        self.exp[((self.log[a as usize] + order / 2) % order) as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.size - 1;
        let s = self.log[a as usize] + self.log[b as usize];
        self.exp[(if s >= order { s - order } else { s }) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        let order = self.size - 1;
        Ok(self.exp[((order - self.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.size - 1) as u64;
        let l = (self.log[a as usize] as u64 * (e % order)) % order;
        self.exp[l as usize]
    }

    /// The element `n * 1` of the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }

    /// Discrete log to the fixed generator, or [`ZERO_LOG`] for zero.
    #[inline]
    pub fn log(&self, a: u32) -> u32 {
        self.log[a as usize]
    }

    #[inline]
    pub fn exp(&self, l: u32) -> u32 {
        self.exp[l as usize]
    }

    /// `log(1 + g^l)`, or [`ZERO_LOG`] when `1 + g^l = 0`.
    #[inline]
    pub fn zech(&self, l: u32) -> u32 {
        self.zech[l as usize]
    }

    pub fn generator(&self) -> u32 {
        self.exp[1 % self.exp.len()]
    }

    /// Square test in odd characteristic (zero counts as a square).
    pub fn is_square(&self, a: u32) -> Result<bool, GfError> {
        if self.p == 2 {
            return Err(GfError::EvenCharacteristic);
        }
        Ok(a == 0 || self.log[a as usize].is_multiple_of(2))
    }

    /// Quadratic character: 0, 1 or -1. Odd characteristic only.
    #[inline]
    pub fn chi(&self, a: u32) -> i32 {
        debug_assert!(self.p != 2);
        if a == 0 {
            0
        } else if self.log[a as usize].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Trace down to `GF(p)`, returned as a residue in `0..p`.
    pub fn absolute_trace(&self, a: u32) -> u32 {
        if self.p == 2 {
            return (a & self.trace_mask).count_ones() & 1;
        }
        let mut acc = 0u64;
        let mut rest = a;
        for &t in &self.basis_trace {
            acc += (rest % self.p) as u64 * t as u64;
            rest /= self.p;
        }
        (acc % self.p as u64) as u32
    }

    /// Frobenius `x -> x^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    /// Wraps a raw encoded value as an element of this field.
    pub fn element(self: &Arc<Self>, value: u32) -> GFElement {
        assert!(value < self.size, "value {value} outside GF({})", self.size);
        GFElement {
            field: Arc::clone(self),
            value,
        }
    }

    pub fn zero(self: &Arc<Self>) -> GFElement {
        self.element(0)
    }

    pub fn one(self: &Arc<Self>) -> GFElement {
        self.element(1)
    }

    /// Image of a base-field element under the constant-polynomial embedding.
    pub fn embed(self: &Arc<Self>, x: &GFElement) -> Result<GFElement, GfError> {
        match &self.base {
            Some(base) if Arc::ptr_eq(base, &x.field) => Ok(self.element(x.value)),
            _ if Arc::ptr_eq(self, &x.field) => Ok(x.clone()),
            _ => Err(GfError::FieldMismatch),
        }
    }

    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = GFElement> + '_ {
        (0..self.size).map(move |v| self.element(v))
    }
}

fn power_tables(size: u32, generator: u32, mul: impl Fn(u32, u32) -> u32) -> (Vec<u32>, Vec<u32>) {
    let order = size as usize - 1;
    let mut exp = Vec::with_capacity(order);
    let mut log = vec![ZERO_LOG; size as usize];
    let mut cur = 1u32;
    for i in 0..order {
        exp.push(cur);
        log[cur as usize] = i as u32;
        cur = mul(cur, generator);
    }
    debug_assert_eq!(cur, 1);
    (exp, log)
}

/// Checks whether `g` generates the cyclic group of order `size - 1`, given
/// a way to raise it to a power.
fn is_generator(size: u64, pow: impl Fn(u64) -> u32) -> bool {
    let order = size - 1;
    if order == 1 {
        return pow(1) == 1;
    }
    let mut primes = numth::prime_factors(order as i128).expect("order >= 1");
    primes.dedup();
    primes.iter().all(|&r| pow(order / r) != 1)
}

/// An element of a specific [`FiniteField`].
#[derive(Clone)]
pub struct GFElement {
    field: Arc<FiniteField>,
    value: u32,
}

impl GFElement {
    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Coordinates over the base field; length equals the field's degree.
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coefficients(self.value)
    }

    fn same_field(&self, other: &GFElement) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field),
            "arithmetic between elements of different fields"
        );
    }

    fn with(&self, value: u32) -> GFElement {
        GFElement {
            field: Arc::clone(&self.field),
            value,
        }
    }

    pub fn inv(&self) -> Result<GFElement, GfError> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> GFElement {
        self.with(self.field.pow(self.value, e))
    }

    pub fn is_square(&self) -> Result<bool, GfError> {
        self.field.is_square(self.value)
    }

    /// Absolute trace as an element of the prime field's residues.
    pub fn absolute_trace(&self) -> u32 {
        self.field.absolute_trace(self.value)
    }
}

impl PartialEq for GFElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) && self.value == other.value
    }
}

impl Eq for GFElement {}

impl fmt::Debug for GFElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[{}]", self.field.size, self.value)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl std::ops::$trait for &GFElement {
            type Output = GFElement;

            fn $method(self, rhs: &GFElement) -> GFElement {
                self.same_field(rhs);
                self.with(self.field.$op(self.value, rhs.value))
            }
        }

        impl std::ops::$trait for GFElement {
            type Output = GFElement;

            fn $method(self, rhs: GFElement) -> GFElement {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl std::ops::Neg for &GFElement {
    type Output = GFElement;

    fn neg(self) -> GFElement {
        self.with(self.field.neg(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn fields() -> Vec<Arc<FiniteField>> {
        let mut out = Vec::new();
        for (p, m) in [
            (2, 1),
            (2, 2),
            (2, 3),
            (3, 1),
            (3, 2),
            (5, 1),
            (7, 1),
            (13, 1),
        ] {
            let f = make_field(p, m).unwrap();
            for k in 1..=4 {
                out.push(extend(&f, k).unwrap());
            }
        }
        out
    }

    #[test]
    fn small_field_moduli() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.size(), 2);
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn gf9_modulus_is_first_rootless_quadratic() {
        // x^2 + c1 x + c0 over GF(3), ordered by (c1, c0); a quadratic is
        // irreducible exactly when it has no root.
        let first = (0..9u32)
            .map(|n| (n % 3, n / 3))
            .find(|&(c0, c1)| (0..3u32).all(|x| (x * x + c1 * x + c0) % 3 != 0))
            .unwrap();
        assert_eq!(first, (1, 0));
    }

    #[test]
    fn size_cap() {
        assert!(matches!(make_field(2, 24), Err(GfError::TooLarge { .. })));
        let f = make_field(13, 1).unwrap();
        assert!(extend(&f, 7).is_err());
        assert!(make_field(4, 1).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f7.add(3, 5), 1);
        let f9 = make_field(3, 2).unwrap();
        // t is encoded as 3 (coefficient vector [0, 1]).
        assert_eq!(f9.mul(3, 3), 2);
        let f4 = make_field(2, 2).unwrap();
        for x in 1..4 {
            assert_eq!(f4.pow(x, 3), 1);
        }
        assert_eq!(f7.inv(0), Err(GfError::DivisionByZero));
    }

    #[test]
    fn frobenius_fixes_base() {
        let f5 = make_field(5, 1).unwrap();
        let f25 = extend(&f5, 2).unwrap();
        assert_eq!(f25.size(), 25);
        let three = f25.embed(&f5.element(3)).unwrap();
        assert_eq!(three.pow(5).pow(5), three);
        for x in 0..25u32 {
            let fixed = f25.pow(x, 5) == x;
            assert_eq!(fixed, x < 5, "x = {x}");
        }
    }

    #[test]
    fn gf64_contains_gf4() {
        let f4 = make_field(2, 2).unwrap();
        let f64_ = extend(&f4, 3).unwrap();
        assert_eq!(f64_.size(), 64);
        for x in f4.elements() {
            let e = f64_.embed(&x).unwrap();
            assert_eq!(e.pow(4), e);
            // the embedding is a ring homomorphism
            for y in f4.elements() {
                let ey = f64_.embed(&y).unwrap();
                assert_eq!(f64_.embed(&(&x * &y)).unwrap(), &e * &ey);
                assert_eq!(f64_.embed(&(&x + &y)).unwrap(), &e + &ey);
            }
        }
        assert_eq!((0..64u32).filter(|&x| f64_.pow(x, 4) == x).count(), 4);
    }

    #[test]
    fn squares() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.is_square(4), Ok(true));
        assert_eq!(f5.is_square(2), Ok(false));
        assert_eq!(f5.is_square(0), Ok(true));
        let f9 = make_field(3, 2).unwrap();
        let f3 = f9.base().unwrap();
        for x in 1..3u32 {
            assert_eq!(f9.is_square(x), Ok(true));
            assert_eq!(f3.is_square(x), Ok(x == 1));
        }
        assert_eq!(
            make_field(2, 2).unwrap().is_square(1),
            Err(GfError::EvenCharacteristic)
        );
    }

    #[test]
    fn traces() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.absolute_trace(0), 0);
        assert_eq!(f2.absolute_trace(1), 1);
        let f4 = make_field(2, 2).unwrap();
        // omega = t (encoded 2) with t^2 + t + 1 = 0
        assert_eq!(f4.add(f4.mul(2, 2), 2), 1);
        assert_eq!(f4.absolute_trace(2), 1);
        let f8 = make_field(2, 3).unwrap();
        assert_eq!((0..8).filter(|&x| f8.absolute_trace(x) == 0).count(), 4);
    }

    #[test]
    fn trace_matches_frobenius_sum() {
        for f in fields() {
            for x in 0..f.size().min(500) {
                let mut acc = 0;
                let mut cur = x;
                for _ in 0..f.absolute_degree() {
                    acc = f.add(acc, cur);
                    cur = f.frobenius(cur);
                }
                assert!(acc < f.characteristic());
                assert_eq!(f.absolute_trace(x), acc);
            }
        }
    }

    #[test]
    fn field_axioms_on_random_elements() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for f in fields() {
            let n = f.size();
            for _ in 0..200 {
                let x = rng.gen_range(1..n);
                let y = rng.gen_range(0..n);
                let z = rng.gen_range(0..n);
                assert_eq!(f.pow(x, (n - 1) as u64), 1);
                assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
                assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
                assert_eq!(f.add(f.sub(y, z), z), y);
                assert_eq!(
                    f.frobenius(f.add(x, y)),
                    f.add(f.frobenius(x), f.frobenius(y))
                );
                assert_eq!(
                    f.frobenius(f.mul(x, y)),
                    f.mul(f.frobenius(x), f.frobenius(y))
                );
                if f.characteristic() != 2 {
                    let euler = f.pow(x, ((n - 1) / 2) as u64);
                    assert_eq!(f.is_square(x).unwrap(), euler != f.neg(1));
                }
            }
        }
    }

    #[test]
    fn addition_matches_coordinates() {
        for f in fields().into_iter().filter(|f| f.size() <= 256) {
            let base_size = f.base_size();
            for x in 0..f.size() {
                for y in (0..f.size()).step_by(7) {
                    let s = f.coefficients(f.add(x, y));
                    let cx = f.coefficients(x);
                    let cy = f.coefficients(y);
                    let expect: Vec<u32> = match f.base() {
                        Some(b) => cx.iter().zip(&cy).map(|(&a, &c)| b.add(a, c)).collect(),
                        None => vec![(cx[0] + cy[0]) % base_size],
                    };
                    assert_eq!(s, expect);
                }
            }
        }
    }

    #[test]
    fn half_of_units_are_squares() {
        for f in fields().into_iter().filter(|f| f.characteristic() != 2) {
            let squares = (1..f.size()).filter(|&x| f.is_square(x).unwrap()).count();
            assert_eq!(squares as u32, (f.size() - 1) / 2);
        }
    }

    #[test]
    fn tower_moduli_irreducible() {
        for f in fields() {
            if let Some(base) = f.base() {
                assert!(is_irreducible(base, f.modulus()));
            }
        }
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn mixing_fields_panics() {
        let a = make_field(5, 1).unwrap();
        let b = make_field(5, 1).unwrap();
        let _ = &a.one() + &b.one();
    }
}
