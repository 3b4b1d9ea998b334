//! Machine-word modular arithmetic used by the finite-group enumerations.

use crate::error::{HeckeError, Result};

/// Enumeration limits shared by every operation that walks a finite set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest `|det|` (equivalently `d1 * d2`) a coset enumeration accepts.
    pub max_det: u64,
    /// Largest number of elementary steps (tuples, products, vectors).
    pub max_steps: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_det: 1_000_000, max_steps: 10_000_000 }
    }
}

impl Budget {
    /// A budget whose step limit is `steps`, keeping the default det limit
    /// unless `steps` is smaller.
    pub fn with_steps(steps: u64) -> Self {
        let d = Budget::default();
        Budget { max_det: d.max_det.max(steps / 10), max_steps: steps }
    }

    pub fn check_steps(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.max_steps as u128 {
            return Err(HeckeError::SizeLimit { what: what.into(), needed, budget: self.max_steps });
        }
        Ok(())
    }

    pub fn check_det(&self, what: &str, det: u128) -> Result<()> {
        if det > self.max_det as u128 {
            return Err(HeckeError::SizeLimit { what: what.into(), needed: det, budget: self.max_det });
        }
        Ok(())
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `p^e`, or `None` on overflow.
pub fn checked_pow(p: u64, e: u32) -> Option<u64> {
    p.checked_pow(e)
}

pub fn pow(p: u64, e: u32) -> u64 {
    p.checked_pow(e).expect("prime power overflows u64")
}

/// Reduces a signed value into `[0, m)`.
pub fn reduce(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

/// Inverse of `a` modulo `m`, if it exists. `m = 1` yields `Some(0)`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| reduce(t0, m))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some(e)` when `n = p^e`.
pub fn p_adic_exponent(mut n: u64, p: u64) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    (n == 1).then_some(e)
}

/// Valuation of `n` at `p`; `n` must be nonzero.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0);
    let mut e = 0;
    while n.is_multiple_of(p) {
        n /= p;
        e += 1;
    }
    e
}

/// The CRT idempotent `e` with `e = 1 mod q` and `e = 0 mod r` for coprime
/// `q`, `r`, as a residue mod `q * r`.
pub fn crt_idempotent(q: u64, r: u64) -> u64 {
    let m = q * r;
    if q == 1 {
        return 0;
    }
    if r == 1 {
        return 1 % m;
    }
    let r_inv = inv_mod(r % q, q).expect("coprime moduli");
    mulmod(r, r_inv, m)
}

/// The element `x mod m` with `x = a mod q` and `x = b mod (m / q)`.
pub fn crt_lift(a: u64, b: u64, q: u64, m: u64) -> u64 {
    let r = m / q;
    let e = crt_idempotent(q, r);
    let f = (1 + m - e) % m;
    (mulmod(a % q, e, m) + mulmod(b % r, f, m)) % m
}

/// A small generating set of `(Z/m)^*`, picked greedily in increasing order.
pub fn unit_group_generators(m: u64) -> Vec<u64> {
    if m <= 2 {
        return Vec::new();
    }
    let order = (1..m).filter(|&u| gcd(u, m) == 1).count();
    let mut gens = Vec::new();
    let mut in_group = vec![false; m as usize];
    in_group[1] = true;
    let mut size = 1;
    for u in 2..m {
        if size == order {
            break;
        }
        if gcd(u, m) != 1 || in_group[u as usize] {
            continue;
        }
        gens.push(u);
        // Regenerate the subgroup from 1 under all generators so far.
        in_group.iter_mut().for_each(|b| *b = false);
        in_group[1] = true;
        size = 1;
        let mut stack = vec![1u64];
        while let Some(x) = stack.pop() {
            for &g in &gens {
                let y = mulmod(x, g, m);
                if !in_group[y as usize] {
                    in_group[y as usize] = true;
                    size += 1;
                    stack.push(y);
                }
            }
        }
    }
    gens
}
