//! Fast realized-map computation.
//!
//! Both engines sum over Frobenius orbit representatives of `GF(q^k)`,
//! weighted by orbit size, since every summand is Frobenius invariant.
//!
//! Odd `q`: with `F = G + c_0`, the character sums `S_k(c_0) = sum_x chi(G(x) + c_0)`
//! for all `q` values of `c_0` come from one table row per `G(x)`, so the
//! inner work per model is a short vector addition.
//!
//! `q = 2^m`: for fixed `h` the trace `Tr(f(x) / h(x)^2)` is linear in the
//! free bits of the coset representative `f`, so the counts of all `2 q^3`
//! representatives at once are a Walsh-Hadamard transform of a histogram of
//! those linear forms.

use rayon::prelude::*;

use crate::gf::{poly, FiniteField, GFPolynomial};

use super::char2::{self, Char2Family};
use super::curve::fixed_nonsquare;
use super::enumerate::{enumerate_curves, monic};
use super::tower::{Tower, MAX_K};
use super::{weil_class, OracleError, PointCounts, RealizedMap};

const KS: usize = MAX_K as usize;

/// Realized map from the fast engines on a pool of `jobs` threads. The
/// result does not depend on `jobs`.
pub fn realized_map(tower: &Tower, jobs: usize) -> Result<RealizedMap, OracleError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| OracleError::ThreadPool(e.to_string()))?;
    let parts: Vec<RealizedMap> = pool.install(|| -> Result<Vec<RealizedMap>, OracleError> {
        if tower.base().characteristic() == 2 {
            let hs: Vec<Vec<u32>> = char2::all_h(tower.q()).collect();
            hs.into_par_iter()
                .map(|h| char2_family_map(tower, h))
                .collect()
        } else {
            let tables = ChiTables::new(tower);
            odd_tasks(tower.q())
                .into_par_iter()
                .map(|(deg, top)| odd_block_map(tower, &tables, deg, &top))
                .collect()
        }
    })?;
    Ok(merge(parts))
}

/// Realized map by direct enumeration and point counting, one model at a
/// time. Slow; kept as an independent reference for the fast engines.
pub fn realized_map_slow(tower: &Tower) -> Result<RealizedMap, OracleError> {
    let mut out = RealizedMap::new();
    for curve in enumerate_curves(tower) {
        let counts = curve.point_counts(tower);
        let key = weil_class(tower.q(), &counts).ok_or_else(|| OracleError::CountMismatch {
            model: curve.to_string(),
            counts: counts.n,
        })?;
        *out.entry(key).or_default() += 1;
    }
    Ok(out)
}

fn merge(parts: Vec<RealizedMap>) -> RealizedMap {
    let mut out = RealizedMap::new();
    for part in parts {
        for (k, v) in part {
            *out.entry(k).or_default() += v;
        }
    }
    out
}

fn record(
    map: &mut RealizedMap,
    q: u64,
    n: [i64; KS],
    model: impl FnOnce() -> String,
) -> Result<(), OracleError> {
    let counts = PointCounts::new(n.map(|x| x as u64));
    match weil_class(q, &counts) {
        Some(key) if n.iter().all(|&x| x >= 0) => {
            *map.entry(key).or_default() += 1;
            Ok(())
        }
        _ => Err(OracleError::CountMismatch {
            model: model(),
            counts: counts.n,
        }),
    }
}

/// `row(k, v)[c] = chi_k(v + c)` for `v` in `GF(q^k)` and `c` in `GF(q)`.
struct ChiTables {
    q: usize,
    rows: Vec<Vec<i8>>,
}

impl ChiTables {
    fn new(tower: &Tower) -> Self {
        let q = tower.q() as usize;
        let rows = (1..=MAX_K)
            .map(|k| {
                let ext = tower.ext(k);
                let mut t = Vec::with_capacity(ext.size() as usize * q);
                for v in 0..ext.size() {
                    t.extend((0..q as u32).map(|c| ext.chi(ext.add(v, c)) as i8));
                }
                t
            })
            .collect();
        ChiTables { q, rows }
    }

    fn row(&self, k: usize, v: u32) -> &[i8] {
        let start = v as usize * self.q;
        &self.rows[k][start..start + self.q]
    }
}

/// Work units: quintics split by `c_4`, sextics by `(c_5, c_4)`.
fn odd_tasks(q: u64) -> Vec<(usize, Vec<u32>)> {
    let q = q as u32;
    let quintic = (0..q).map(|c4| (5, vec![c4]));
    let sextic = (0..q * q).map(|n| (6, vec![n / q, n % q]));
    quintic.chain(sextic).collect()
}

/// One extension level: orbit representatives, their weights and powers.
struct Level<'a> {
    ext: &'a FiniteField,
    weights: Vec<i64>,
    /// `x, x^2, x^3` per representative.
    powers: Vec<[u32; 3]>,
    /// Value of the fixed top part `x^deg + ...` per representative.
    top: Vec<u32>,
}

impl<'a> Level<'a> {
    fn new(tower: &'a Tower, k: u32, top_coeffs: &[u32]) -> Self {
        let ext = tower.ext(k);
        let orbits = tower.orbits(k);
        let weights = orbits.iter().map(|o| o.size as i64).collect();
        let powers = orbits
            .iter()
            .map(|o| {
                let x = o.rep;
                [x, ext.mul(x, x), ext.pow(x, 3)]
            })
            .collect();
        // top_coeffs covers x^4 and up
        let top = orbits
            .iter()
            .map(|o| {
                let v = poly::eval(ext, top_coeffs, o.rep);
                ext.mul(v, ext.pow(o.rep, 4))
            })
            .collect();
        Level {
            ext,
            weights,
            powers,
            top,
        }
    }
}

/// All models whose `F` has the given degree and top coefficients
/// (`top = [c_{deg-1}, ..., c_4]`).
fn odd_block_map(
    tower: &Tower,
    tables: &ChiTables,
    deg: usize,
    top: &[u32],
) -> Result<RealizedMap, OracleError> {
    let base = tower.base();
    let q = tower.q();
    let qs = q as usize;
    // coefficients of x^4.. x^deg, low first
    let mut upper: Vec<u32> = top.iter().rev().copied().collect();
    upper.push(1);
    let levels: Vec<Level> = (1..=MAX_K).map(|k| Level::new(tower, k, &upper)).collect();
    let nonsquare = fixed_nonsquare(base);
    let mut f: Vec<u32> = monic(q, deg, 0);
    f[4..].copy_from_slice(&upper);
    let mut out = RealizedMap::new();
    let mut v3: Vec<Vec<u32>> = levels.iter().map(|l| l.top.clone()).collect();
    let mut v2 = v3.clone();
    let mut sums = vec![[0i64; KS]; qs];
    for c3 in 0..q as u32 {
        for (li, l) in levels.iter().enumerate() {
            for (i, p) in l.powers.iter().enumerate() {
                v3[li][i] = l.ext.add(l.top[i], l.ext.mul(c3, p[2]));
            }
        }
        for c2 in 0..q as u32 {
            for (li, l) in levels.iter().enumerate() {
                for (i, p) in l.powers.iter().enumerate() {
                    v2[li][i] = l.ext.add(v3[li][i], l.ext.mul(c2, p[1]));
                }
            }
            for c1 in 0..q as u32 {
                for (li, l) in levels.iter().enumerate() {
                    let mut acc = vec![0i64; qs];
                    for (i, p) in l.powers.iter().enumerate() {
                        let v = l.ext.add(v2[li][i], l.ext.mul(c1, p[0]));
                        let w = l.weights[i];
                        for (a, &x) in acc.iter_mut().zip(tables.row(li, v)) {
                            *a += w * x as i64;
                        }
                    }
                    for (c0, a) in acc.into_iter().enumerate() {
                        sums[c0][li] = a;
                    }
                }
                f[1] = c1;
                f[2] = c2;
                f[3] = c3;
                for c0 in 0..q as u32 {
                    f[0] = c0;
                    if !poly::is_squarefree(base, &f) {
                        continue;
                    }
                    let s = sums[c0 as usize];
                    let describe = |mult: u32| {
                        let f = &f;
                        move || format!("y^2 = [{mult}] ({})", GFPolynomial::new(base, f.clone()))
                    };
                    let qk = |k: usize| q.pow(k as u32 + 1) as i64;
                    if deg == 5 {
                        let n = std::array::from_fn(|k| qk(k) + s[k] + 1);
                        record(&mut out, q, n, describe(1))?;
                    } else {
                        let n = std::array::from_fn(|k| qk(k) + s[k] + 2);
                        record(&mut out, q, n, describe(1))?;
                        let n = std::array::from_fn(|k| {
                            let sign = if k % 2 == 0 { -1 } else { 1 };
                            qk(k) + sign * s[k] + 1 + sign
                        });
                        record(&mut out, q, n, describe(nonsquare))?;
                    }
                }
            }
        }
    }
    Ok(out)
}

fn walsh_hadamard(v: &mut [i64]) {
    let mut len = 1;
    while len < v.len() {
        for chunk in v.chunks_mut(2 * len) {
            let (lo, hi) = chunk.split_at_mut(len);
            for (x, y) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*x, *y);
                *x = a + b;
                *y = a - b;
            }
        }
        len *= 2;
    }
}

/// All accepted models `y^2 + h y = f` for one `h`.
fn char2_family_map(tower: &Tower, h: Vec<u32>) -> Result<RealizedMap, OracleError> {
    let family = Char2Family::new(tower, h);
    let h = &family.h;
    let bits = tower.base().absolute_degree();
    let free = family.cosets.free_positions();
    let size = family.cosets.len() as usize;
    let h3 = h.get(3).copied().unwrap_or(0);
    let mut totals: Vec<[i64; KS]> = vec![[0; KS]; size];
    for k in 1..=MAX_K {
        let ext = tower.ext(k);
        let mut hist = vec![0i64; size];
        let mut constant = 0i64;
        // linear form of a monomial-basis vector evaluated through `scale`
        let mask_for = |x: u32, scale: u32| -> usize {
            free.iter().enumerate().fold(0usize, |mask, (i, &pos)| {
                let (deg, bit) = (pos / bits, pos % bits);
                let e = ext.mul(1 << bit, ext.pow(x, deg as u64));
                mask | (ext.absolute_trace(ext.mul(e, scale)) as usize) << i
            })
        };
        for o in tower.orbits(k) {
            let w = o.size as i64;
            constant += w;
            let hx = poly::eval(ext, h, o.rep);
            if hx != 0 {
                let scale = ext.inv(ext.mul(hx, hx)).expect("nonzero");
                hist[mask_for(o.rep, scale)] += w;
            }
        }
        // the point(s) at infinity
        constant += 1;
        if h3 != 0 {
            let scale = ext.inv(ext.mul(h3, h3)).expect("nonzero");
            let inf_mask = free.iter().enumerate().fold(0usize, |mask, (i, &pos)| {
                let (deg, bit) = (pos / bits, pos % bits);
                let t = if deg == 6 {
                    ext.absolute_trace(ext.mul(1 << bit, scale))
                } else {
                    0
                };
                mask | (t as usize) << i
            });
            hist[inf_mask] += 1;
        }
        walsh_hadamard(&mut hist);
        for (t, wht) in totals.iter_mut().zip(hist) {
            t[k as usize - 1] = constant + wht;
        }
    }
    let mut out = RealizedMap::new();
    for (r, n) in totals.into_iter().enumerate() {
        let f = family.cosets.representative(r as u64);
        if !family.accepts(tower, &f) {
            continue;
        }
        record(&mut out, tower.q(), n, || format!("y^2 + {h:?} y = {f:?}"))?;
    }
    Ok(out)
}
