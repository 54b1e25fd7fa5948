//! Characteristic-2 models `y^2 + h(x) y = f(x)` with `h != 0`, `deg h <= 3`,
//! `deg f <= 6`: coset representatives for `f` modulo `u^2 + h u`, and the
//! smoothness and irreducibility filters.
//!
//! Polynomials over `GF(q) = GF(2^m)` are packed as bit vectors: bit
//! `i * m + j` is bit `j` of the encoded coefficient of `x^i`. Addition of
//! encoded elements is XOR, so this is an `F_2`-linear coordinate system.

use crate::gf::{poly, FiniteField};

use super::tower::Tower;

pub const F_COEFFS: usize = 7;
pub const H_COEFFS: usize = 4;

/// Row-reduced set of `F_2` vectors; every pivot bit appears in exactly one row.
#[derive(Debug, Clone, Default)]
pub struct XorBasis {
    rows: Vec<u64>,
}

impl XorBasis {
    fn pivot(v: u64) -> u32 {
        63 - v.leading_zeros()
    }

    pub fn reduce(&self, mut v: u64) -> u64 {
        for &r in &self.rows {
            if v >> Self::pivot(r) & 1 == 1 {
                v ^= r;
            }
        }
        v
    }

    pub fn insert(&mut self, v: u64) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        let p = Self::pivot(v);
        for r in &mut self.rows {
            if *r >> p & 1 == 1 {
                *r ^= v;
            }
        }
        self.rows.push(v);
        true
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }

    pub fn pivots(&self) -> u64 {
        self.rows
            .iter()
            .fold(0, |acc, &r| acc | 1 << Self::pivot(r))
    }
}

pub fn pack(coeffs: &[u32], bits_per_coeff: u32) -> u64 {
    coeffs.iter().enumerate().fold(0, |acc, (i, &c)| {
        acc | (c as u64) << (i as u32 * bits_per_coeff)
    })
}

pub fn unpack(v: u64, bits_per_coeff: u32, len: usize) -> Vec<u32> {
    let mask = (1u64 << bits_per_coeff) - 1;
    (0..len)
        .map(|i| ((v >> (i as u32 * bits_per_coeff)) & mask) as u32)
        .collect()
}

/// `u^2 + h u` over `field`, padded to `F_COEFFS` coefficients.
fn artin_schreier_image(field: &FiniteField, h: &[u32], u: &[u32]) -> Vec<u32> {
    let sq = poly::mul(field, u, u);
    let hu = poly::mul(field, h, u);
    let mut out = poly::add(field, &sq, &hu);
    out.resize(F_COEFFS, 0);
    out
}

/// Span of `{u^2 + h u : deg u <= 3}` for `u` with coefficients in `field`,
/// in packed coordinates.
fn image_span(field: &FiniteField, h: &[u32]) -> XorBasis {
    let bits = field.absolute_degree();
    let mut basis = XorBasis::default();
    for i in 0..H_COEFFS {
        for j in 0..bits {
            let mut u = vec![0; i + 1];
            u[i] = 1 << j;
            basis.insert(pack(&artin_schreier_image(field, h, &u), bits));
        }
    }
    basis
}

/// Coordinates of the canonical complement to the image of `u -> u^2 + h u`
/// inside the space of `f` with `deg f <= 6`.
#[derive(Debug, Clone)]
pub struct CosetSpace {
    bits: u32,
    free: Vec<u32>,
}

impl CosetSpace {
    pub fn new(base: &FiniteField, h: &[u32]) -> Self {
        let bits = base.absolute_degree();
        let image = image_span(base, h);
        debug_assert_eq!(image.rank() as u32, H_COEFFS as u32 * bits - 1);
        let pivots = image.pivots();
        let free = (0..F_COEFFS as u32 * bits)
            .filter(|&b| pivots >> b & 1 == 0)
            .collect();
        CosetSpace { bits, free }
    }

    /// Bit positions (in packed `f` coordinates) that vary across representatives.
    pub fn free_positions(&self) -> &[u32] {
        &self.free
    }

    pub fn len(&self) -> u64 {
        1 << self.free.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The `r`-th representative; bit `i` of `r` drives free position `i`.
    pub fn representative(&self, r: u64) -> Vec<u32> {
        let packed = self
            .free
            .iter()
            .enumerate()
            .filter(|&(i, _)| r >> i & 1 == 1)
            .fold(0u64, |acc, (_, &pos)| acc | 1 << pos);
        unpack(packed, self.bits, F_COEFFS)
    }
}

/// Tests whether `y^2 + h y = f` splits as `(y - u)(y - u - h)` over `GF(q^2)`.
#[derive(Debug, Clone)]
pub struct ReducibilityTest {
    bits: u32,
    span: XorBasis,
}

impl ReducibilityTest {
    pub fn new(tower: &Tower, h: &[u32]) -> Self {
        let ext = tower.ext(2);
        ReducibilityTest {
            bits: ext.absolute_degree(),
            span: image_span(ext, h),
        }
    }

    pub fn is_reducible(&self, f: &[u32]) -> bool {
        self.span.contains(pack(f, self.bits))
    }
}

/// Roots of `h` in `GF(q^2)` and `GF(q^3)`, which together hold every root of
/// a nonzero polynomial of degree at most 3. Returned as `(k, x)` with `x` in
/// `GF(q^k)`.
pub fn roots_of_h(tower: &Tower, h: &[u32]) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for k in [2, 3] {
        let ext = tower.ext(k);
        out.extend(
            (0..ext.size())
                .filter(|&x| poly::eval(ext, h, x) == 0)
                .map(|x| (k, x)),
        );
    }
    out
}

/// No singular point on either chart. Affine: at a root `x0` of `h` the curve
/// is singular iff `h'(x0)^2 f(x0) = f'(x0)^2`. At infinity (`u = 1/x`,
/// `v = y/x^3`) the chart has `h~(0) = h_3`, `h~'(0) = h_2`, `f~(0) = f_6`,
/// `f~'(0) = f_5`.
pub fn is_smooth(tower: &Tower, roots: &[(u32, u32)], h: &[u32], f: &[u32]) -> bool {
    let hd = poly::derivative(tower.base(), h);
    let fd = poly::derivative(tower.base(), f);
    for &(k, x) in roots {
        let ext = tower.ext(k);
        let hdx = poly::eval(ext, &hd, x);
        let lhs = ext.mul(ext.mul(hdx, hdx), poly::eval(ext, f, x));
        let fdx = poly::eval(ext, &fd, x);
        if lhs == ext.mul(fdx, fdx) {
            return false;
        }
    }
    let base = tower.base();
    let coeff = |p: &[u32], i: usize| p.get(i).copied().unwrap_or(0);
    let (h3, h2) = (coeff(h, 3), coeff(h, 2));
    let (f6, f5) = (coeff(f, 6), coeff(f, 5));
    !(h3 == 0 && base.mul(base.mul(h2, h2), f6) == base.mul(f5, f5))
}

/// Everything needed to emit the models for one fixed `h`.
pub struct Char2Family {
    pub h: Vec<u32>,
    pub roots: Vec<(u32, u32)>,
    pub cosets: CosetSpace,
    pub reducible: ReducibilityTest,
}

impl Char2Family {
    pub fn new(tower: &Tower, h: Vec<u32>) -> Self {
        let h = poly::trim(h);
        assert!(
            !h.is_empty() && h.len() <= H_COEFFS,
            "need 0 != h with deg h <= 3"
        );
        Char2Family {
            roots: roots_of_h(tower, &h),
            cosets: CosetSpace::new(tower.base(), &h),
            reducible: ReducibilityTest::new(tower, &h),
            h,
        }
    }

    /// Smooth on both charts and geometrically irreducible.
    pub fn accepts(&self, tower: &Tower, f: &[u32]) -> bool {
        is_smooth(tower, &self.roots, &self.h, f) && !self.reducible.is_reducible(f)
    }
}

/// All nonzero `h` with `deg h <= 3`, by encoded index.
pub fn all_h(q: u64) -> impl Iterator<Item = Vec<u32>> {
    (1..q.pow(H_COEFFS as u32)).map(move |n| {
        poly::trim(
            (0..H_COEFFS as u32)
                .map(|i| (n / q.pow(i) % q) as u32)
                .collect(),
        )
    })
}
