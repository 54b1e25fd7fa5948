//! Exact integer number theory: valuations, squares, factorization.
//!
//! Everything here works on `i128` so that the quartic-in-`sqrt(q)` shape
//! inequalities never overflow for inputs below `2^63`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumthError {
    #[error("argument must be nonzero")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is divisible by the prime {1}")]
    NotCoprime(i128, u64),
    #[error("expected an odd prime, got {0}")]
    EvenPrime(u64),
    #[error("prime power {p}^{m} is out of range")]
    OutOfRange { p: u64, m: u32 },
    #[error("expected an integer >= 2, got {0}")]
    TooSmall(i128),
}

/// A `p`-adic valuation. `Infinity` (the valuation of zero) compares greater
/// than every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinity,
}

impl Valuation {
    pub fn is_positive(self) -> bool {
        self > Valuation::Finite(0)
    }

    /// `2 * self >= bound`, with infinity always satisfying it.
    pub fn at_least_half_of(self, bound: u32) -> bool {
        match self {
            Valuation::Finite(v) => 2 * v >= bound,
            Valuation::Infinity => true,
        }
    }

    pub fn at_least(self, bound: u32) -> bool {
        self >= Valuation::Finite(bound)
    }
}

impl std::ops::Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => f.write_str("inf"),
        }
    }
}

/// Largest field size accepted by [`PrimePower::new`]. Keeps `64 q^2` inside `i128`.
pub const MAX_PRIME_POWER: u64 = 1 << 40;

/// `q = p^m` with `p` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    p: u64,
    m: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, m: u32) -> Result<Self, NumthError> {
        if !is_prime(p) {
            return Err(NumthError::NotPrime(p));
        }
        if m == 0 {
            return Err(NumthError::OutOfRange { p, m });
        }
        let q = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_PRIME_POWER)
            .ok_or(NumthError::OutOfRange { p, m })?;
        Ok(PrimePower { p, m, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// True when `q` is a perfect square, i.e. `m` is even.
    pub fn is_square(&self) -> bool {
        self.m.is_multiple_of(2)
    }

    /// The positive integer square root of `q`, when `q` is a square.
    pub fn sqrt(&self) -> Option<u64> {
        self.is_square().then(|| self.p.pow(self.m / 2))
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.m)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn padic_valuation(n: i128, p: u64) -> Valuation {
    debug_assert!(is_prime(p));
    if n == 0 {
        return Valuation::Infinity;
    }
    let p = p as i128;
    let mut n = n;
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Valuation::Finite(v)
}

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut r = (n as f64).sqrt() as u128;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

pub fn is_perfect_square(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n as u128);
    (r * r == n as u128).then_some(r as i128)
}

/// Prime factors of `|n|` with multiplicity, in ascending order.
pub fn prime_factors(n: i128) -> Result<Vec<u64>, NumthError> {
    if n == 0 {
        return Err(NumthError::Zero);
    }
    let mut n = n.unsigned_abs();
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d as u64);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n as u64);
    }
    Ok(out)
}

pub fn is_squarefree(n: i128) -> Result<bool, NumthError> {
    let factors = prime_factors(n)?;
    Ok(factors.windows(2).all(|w| w[0] != w[1]))
}

pub(crate) fn pow_mod(base: u128, mut exp: u128, modulus: u128) -> u128 {
    let mut result = 1 % modulus;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    result
}

/// Quadratic residuosity of a unit modulo an odd prime (Euler's criterion).
pub fn is_square_mod_p(u: i128, p: u64) -> Result<bool, NumthError> {
    if !is_prime(p) {
        return Err(NumthError::NotPrime(p));
    }
    if p == 2 {
        return Err(NumthError::EvenPrime(p));
    }
    let r = u.rem_euclid(p as i128) as u128;
    if r == 0 {
        return Err(NumthError::NotCoprime(u, p));
    }
    Ok(pow_mod(r, (p as u128 - 1) / 2, p as u128) == 1)
}

/// Whether `n` is a square in the `p`-adic integers.
pub fn is_padic_square(n: i128, p: u64) -> Result<bool, NumthError> {
    if n == 0 {
        return Err(NumthError::Zero);
    }
    if !is_prime(p) {
        return Err(NumthError::NotPrime(p));
    }
    let Valuation::Finite(v) = padic_valuation(n, p) else {
        unreachable!("nonzero n has finite valuation");
    };
    if v % 2 == 1 {
        return Ok(false);
    }
    let unit = n / (p as i128).pow(v);
    if p == 2 {
        Ok(unit.rem_euclid(8) == 1)
    } else {
        is_square_mod_p(unit, p)
    }
}

pub fn recognize_prime_power(q: i128) -> Result<Option<PrimePower>, NumthError> {
    if q < 2 {
        return Err(NumthError::TooSmall(q));
    }
    let Ok(q64) = u64::try_from(q) else {
        return Ok(None);
    };
    let p = prime_factors(q)?[0];
    let mut m = 0u32;
    let mut rest = q64;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Ok(None);
    }
    Ok(PrimePower::new(p, m).ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Brute force: does `x^2 = n (mod modulus)` have a solution?
    fn has_sqrt_mod(n: i128, modulus: i128) -> bool {
        let target = n.rem_euclid(modulus);
        (0..modulus).any(|x| (x * x) % modulus == target)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(padic_valuation(-7, 7), Valuation::Finite(1));
        assert_eq!(padic_valuation(0, 5), Valuation::Infinity);
        assert_eq!(padic_valuation(2 * 81 * 5, 3), Valuation::Finite(4));
        assert!(Valuation::Infinity > Valuation::Finite(u32::MAX));
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(is_perfect_square(4), Some(2));
        assert_eq!(is_perfect_square(-4), None);
        assert_eq!(is_perfect_square(76), None);
        assert_eq!(is_perfect_square(0), Some(0));
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(is_squarefree(6), Ok(true));
        assert_eq!(is_squarefree(12), Ok(false));
        assert_eq!(is_squarefree(-49), Ok(false));
        assert_eq!(is_squarefree(1), Ok(true));
        assert_eq!(is_squarefree(0), Err(NumthError::Zero));
    }

    #[test]
    fn factor_examples() {
        assert_eq!(prime_factors(7).unwrap(), vec![7]);
        assert_eq!(prime_factors(-12).unwrap(), vec![2, 2, 3]);
        assert!(prime_factors(1).unwrap().is_empty());
        assert!(prime_factors(0).is_err());
    }

    #[test]
    fn square_mod_p_examples() {
        assert_eq!(is_square_mod_p(1, 7), Ok(true));
        assert_eq!(is_square_mod_p(2, 7), Ok(true));
        assert_eq!(is_square_mod_p(3, 7), Ok(false));
        assert!(is_square_mod_p(14, 7).is_err());
        assert!(is_square_mod_p(3, 2).is_err());
    }

    #[test]
    fn padic_square_examples() {
        assert_eq!(is_padic_square(-7, 7), Ok(false));
        assert_eq!(is_padic_square(17, 2), Ok(true));
        assert_eq!(is_padic_square(18, 7), Ok(true));
        assert!(is_padic_square(0, 3).is_err());
        assert!(has_sqrt_mod(17, 1 << 10));
    }

    #[test]
    fn prime_power_examples() {
        let pp = recognize_prime_power(9).unwrap().unwrap();
        assert_eq!((pp.p(), pp.m()), (3, 2));
        let pp = recognize_prime_power(7).unwrap().unwrap();
        assert_eq!((pp.p(), pp.m()), (7, 1));
        assert_eq!(recognize_prime_power(12).unwrap(), None);
        assert!(recognize_prime_power(1).is_err());
        assert_eq!(PrimePower::new(2, 4).unwrap().sqrt(), Some(4));
        assert_eq!(PrimePower::new(2, 3).unwrap().sqrt(), None);
    }

    #[test]
    fn padic_square_matches_brute_force() {
        for &p in &[2u64, 3, 5, 7, 11, 13] {
            for n in -500i128..=500 {
                if n == 0 {
                    continue;
                }
                let Valuation::Finite(v) = padic_valuation(n, p) else {
                    unreachable!()
                };
                let k = v + if p == 2 { 5 } else { 3 };
                let modulus = (p as i128).pow(k);
                assert_eq!(
                    is_padic_square(n, p).unwrap(),
                    has_sqrt_mod(n, modulus),
                    "n={n} p={p}"
                );
            }
        }
    }

    #[test]
    fn perfect_squares_recognized() {
        for r in 0..=1_000_000i128 {
            assert_eq!(is_perfect_square(r * r), Some(r));
        }
    }

    #[test]
    fn squarefree_agrees_with_factorization() {
        for n in 1..=100_000i128 {
            let f = prime_factors(n).unwrap();
            let mut dedup = f.clone();
            dedup.dedup();
            assert_eq!(is_squarefree(n).unwrap(), dedup.len() == f.len());
            assert_eq!(is_squarefree(-n).unwrap(), dedup.len() == f.len());
        }
    }

    proptest! {
        #[test]
        fn valuation_is_additive(a in -1_000_000i128..1_000_000, b in -1_000_000i128..1_000_000,
                                 pi in 0usize..6) {
            let p = [2u64, 3, 5, 7, 11, 13][pi];
            prop_assert_eq!(padic_valuation(a * b, p), padic_valuation(a, p) + padic_valuation(b, p));
        }

        #[test]
        fn factors_multiply_back(n in 1i128..10_000_000) {
            let f = prime_factors(n).unwrap();
            prop_assert!(f.iter().all(|&p| is_prime(p)));
            prop_assert_eq!(f.iter().map(|&p| p as i128).product::<i128>(), n);
        }
    }
}
