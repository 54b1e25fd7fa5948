use std::sync::Arc;

use crate::gf::{self, FiniteField, GfError, ZERO_LOG};

/// Highest extension degree used for point counting.
pub const MAX_K: u32 = 4;

/// A Frobenius orbit `{x, x^q, x^(q^2), ...}` represented by one element.
#[derive(Debug, Clone, Copy)]
pub struct Orbit {
    pub rep: u32,
    pub size: u32,
}

/// `GF(q)` with its extensions `GF(q^k)`, `k = 1..=4`, each built directly
/// over `GF(q)`, and the orbits of `x -> x^q` on each of them.
pub struct Tower {
    exts: Vec<Arc<FiniteField>>,
    orbits: Vec<Vec<Orbit>>,
}

impl Tower {
    pub fn new(base: &Arc<FiniteField>) -> Result<Self, GfError> {
        let exts = (1..=MAX_K)
            .map(|k| gf::extend(base, k))
            .collect::<Result<Vec<_>, _>>()?;
        let q = base.size() as u64;
        let orbits = exts.iter().map(|e| frobenius_orbits(e, q)).collect();
        Ok(Tower { exts, orbits })
    }

    pub fn base(&self) -> &Arc<FiniteField> {
        &self.exts[0]
    }

    /// `GF(q^k)` for `1 <= k <= 4`.
    pub fn ext(&self, k: u32) -> &Arc<FiniteField> {
        &self.exts[k as usize - 1]
    }

    pub fn orbits(&self, k: u32) -> &[Orbit] {
        &self.orbits[k as usize - 1]
    }

    pub fn q(&self) -> u64 {
        self.base().size() as u64
    }
}

fn frobenius_orbits(field: &FiniteField, q: u64) -> Vec<Orbit> {
    let order = field.size() as u64 - 1;
    let mut seen = vec![false; field.size() as usize];
    let mut out = vec![Orbit { rep: 0, size: 1 }];
    seen[0] = true;
    for x in 1..field.size() {
        if seen[x as usize] {
            continue;
        }
        let mut size = 0;
        let mut l = field.log(x) as u64;
        loop {
            let y = field.exp(l as u32);
            if seen[y as usize] {
                break;
            }
            seen[y as usize] = true;
            size += 1;
            l = l * q % order;
        }
        out.push(Orbit { rep: x, size });
    }
    debug_assert!(out
        .iter()
        .all(|o| o.rep == 0 || field.log(o.rep) != ZERO_LOG));
    out
}
