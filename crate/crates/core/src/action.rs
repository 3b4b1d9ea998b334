//! Residue matrices acting on `Z^2 / diag[d1, d2] Z^2`, generating sets for
//! the level groups that act there, and orbit enumeration.
//!
//! A divisor chain `d1 | d2` is split prime by prime. At a prime `q` with
//! `q^l || d1` and `q^(l+k) || d2` the acting group is the level group
//! `G_{l,k}` at `q`; the global group is the product of these local pieces,
//! cut down to a single determinant sign when it is the image of integral
//! matrices of determinant `+-1`.

use crate::error::{HeckeError, Result};
use crate::residue::{crt_idempotent, crt_lift, factor, inv_mod, pow, Budget};

/// A divisor chain `(d1, d2)` with `d1 | d2`, indexing `Z/d1 x Z/d2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chain {
    pub d1: u64,
    pub d2: u64,
}

impl Chain {
    pub fn new(d1: u64, d2: u64) -> Result<Self> {
        if d1 == 0 || d2 == 0 || !d2.is_multiple_of(d1) {
            return Err(HeckeError::invalid(format!("({d1}, {d2}) is not a divisor chain")));
        }
        Ok(Chain { d1, d2 })
    }

    pub fn size(&self) -> u64 {
        self.d1 * self.d2
    }

    /// Lexicographic index: `(x, y) < (x', y')` iff `index` is smaller.
    pub fn index(&self, x: u64, y: u64) -> usize {
        (x * self.d2 + y) as usize
    }

    pub fn point(&self, idx: usize) -> (u64, u64) {
        let idx = idx as u64;
        (idx / self.d2, idx % self.d2)
    }

    pub fn reduce(&self, x: i128, y: i128) -> (u64, u64) {
        (x.rem_euclid(self.d1 as i128) as u64, y.rem_euclid(self.d2 as i128) as u64)
    }
}

/// A matrix `[[a, b], [c, d]]` with row 1 read mod `d1` and row 2 mod `d2`.
/// `c` is a multiple of `d2 / d1`, which makes `c * x mod d2` independent of
/// the lift of `x mod d1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResMat {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl ResMat {
    #[inline]
    pub fn apply(&self, ch: Chain, x: u64, y: u64) -> (u64, u64) {
        let x1 = (self.a as u128 * x as u128 + self.b as u128 * y as u128) % ch.d1 as u128;
        let y1 = (self.c as u128 * x as u128 + self.d as u128 * y as u128) % ch.d2 as u128;
        (x1 as u64, y1 as u64)
    }
}

/// Which subgroup of the level group a generating set should produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// Determinant `1 mod d1`.
    Det1,
    /// Determinant `+1` or `-1 mod d1` (one sign across all primes): the
    /// image of integral matrices with `d2/d1 | x21` and `det = +-1`.
    DetPm,
    /// Every invertible element: the product of the local level groups.
    Full,
}

/// Generating set for the requested subgroup acting on `Z/d1 x Z/d2`.
///
/// Built from per-prime generators, each lifted by CRT to act as the
/// identity at the other primes: the upper unipotent, the lower unipotent
/// with entry `q^k`, and `diag[u^-1, u]` for generators `u` of
/// `(Z/q^(l+k))^*` (plus `diag[1, u]` for the full group). `DetPm` adds
/// the global `diag[1, -1]`.
pub fn generators(ch: Chain, kind: GroupKind) -> Vec<ResMat> {
    let (d1, d2) = (ch.d1, ch.d2);
    let mut gens = Vec::new();
    for (q, m) in factor(d2) {
        let l = crate::residue::valuation(d1, q);
        let k = m - l;
        let big_q = pow(q, m);
        let e = crt_idempotent(big_q, d2 / big_q);
        gens.push(ResMat { a: 1 % d1, b: e % d1, c: 0, d: 1 % d2 });
        gens.push(ResMat { a: 1 % d1, b: 0, c: (pow(q, k) as u128 * e as u128 % d2 as u128) as u64, d: 1 % d2 });
        for u in crate::residue::unit_group_generators(big_q) {
            let lifted = crt_lift(u, 1, big_q, d2);
            let inv = inv_mod(lifted, d2).expect("lift is a unit");
            gens.push(ResMat { a: inv % d1, b: 0, c: 0, d: lifted });
            if kind == GroupKind::Full {
                gens.push(ResMat { a: 1 % d1, b: 0, c: 0, d: lifted });
            }
        }
    }
    if kind == GroupKind::DetPm && d2 > 2 {
        gens.push(ResMat { a: 1 % d1, b: 0, c: 0, d: d2 - 1 });
    }
    gens.retain(|g| *g != ResMat { a: 1 % d1, b: 0, c: 0, d: 1 % d2 });
    gens
}

/// Orbit of `start` as sorted point indices.
pub fn orbit(ch: Chain, gens: &[ResMat], start: (u64, u64), budget: &Budget) -> Result<Vec<usize>> {
    budget.check_det("orbit enumeration on Z/d1 x Z/d2", ch.size() as u128)?;
    let mut seen = vec![false; ch.size() as usize];
    let s = ch.index(start.0 % ch.d1, start.1 % ch.d2);
    seen[s] = true;
    let mut out = vec![s];
    let mut head = 0;
    while head < out.len() {
        let (x, y) = ch.point(out[head]);
        head += 1;
        for g in gens {
            let (x1, y1) = g.apply(ch, x, y);
            let t = ch.index(x1, y1);
            if !seen[t] {
                seen[t] = true;
                out.push(t);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// For every point, the lexicographically least point of its orbit.
pub fn partition(ch: Chain, gens: &[ResMat], budget: &Budget) -> Result<Vec<u32>> {
    budget.check_det("orbit partition of Z/d1 x Z/d2", ch.size() as u128)?;
    let n = ch.size() as usize;
    let mut rep = vec![u32::MAX; n];
    let mut stack = Vec::new();
    for s in 0..n {
        if rep[s] != u32::MAX {
            continue;
        }
        // Points are visited in increasing order, so s is its orbit's minimum.
        rep[s] = s as u32;
        stack.push(s);
        while let Some(t) = stack.pop() {
            let (x, y) = ch.point(t);
            for g in gens {
                let (x1, y1) = g.apply(ch, x, y);
                let u = ch.index(x1, y1);
                if rep[u] == u32::MAX {
                    rep[u] = s as u32;
                    stack.push(u);
                }
            }
        }
    }
    Ok(rep)
}

/// Splits a set of points (closed under `gens`) into orbits, each sorted,
/// ordered by their least element.
pub fn split_orbits(ch: Chain, gens: &[ResMat], points: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    let mut done = std::collections::HashSet::with_capacity(sorted.len());
    let mut out = Vec::new();
    for &s in &sorted {
        if !done.insert(s) {
            continue;
        }
        let mut orb = vec![s];
        let mut head = 0;
        while head < orb.len() {
            let (x, y) = ch.point(orb[head]);
            head += 1;
            for g in gens {
                let (x1, y1) = g.apply(ch, x, y);
                let u = ch.index(x1, y1);
                if done.insert(u) {
                    orb.push(u);
                }
            }
        }
        orb.sort_unstable();
        out.push(orb);
    }
    out
}
