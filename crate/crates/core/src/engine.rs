//! Double-coset classification and Hecke products over `Gamma_H \ Delta_H`.
//!
//! An element `(B, b)` is moved to `(diag[d1, d2], u b)` by the row transform
//! `u` of a Smith form of `B`; its double coset is then the orbit of
//! `u b mod diag[d1, d2]` under the integral stabilizer group (global mode)
//! or under the full level group at `p` (local mode). Orbits are tabulated
//! once per divisor chain and keyed by their lexicographically least point.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::action::{generators, partition, Chain, GroupKind};
use crate::error::{HeckeError, Result};
use crate::residue::{gcd, p_adic_exponent, Budget};
use crate::small::{Elem, LeftKey, M2};

/// Degree products above this use the membership count instead of the
/// pairwise product table.
const PAIRWISE_LIMIT: u128 = 250_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Mode {
    Global,
    Local(u64),
}

/// A double coset: its divisor chain and the index of the least point of
/// its vector orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct ClassId {
    pub chain: Chain,
    pub rep: u32,
}

impl ClassId {
    pub fn point(&self) -> (u64, u64) {
        self.chain.point(self.rep as usize)
    }
}

pub(crate) type Sum = BTreeMap<ClassId, BigInt>;

pub(crate) fn add_term(sum: &mut Sum, c: ClassId, n: BigInt) {
    let e = sum.entry(c).or_insert_with(BigInt::zero);
    *e += n;
    if e.is_zero() {
        sum.remove(&c);
    }
}

/// Every Hermite form `[[a, b], [0, d]]` with `a d = d1 d2`, `0 <= b < d`
/// and elementary divisors `(d1, d2)`.
pub(crate) fn hermite_forms_of_type(ch: Chain) -> Vec<M2> {
    let n = ch.size();
    let mut out = Vec::new();
    for a in (1..=n).filter(|a| n.is_multiple_of(*a)) {
        let d = n / a;
        for b in 0..d {
            if gcd(gcd(a, b), d) == ch.d1 {
                out.push(M2 { a: a as i64, b: b as i64, c: 0, d: d as i64 });
            }
        }
    }
    out
}

pub(crate) struct Engine {
    pub mode: Mode,
    pub budget: Budget,
    tables: HashMap<Chain, Rc<Vec<u32>>>,
    cosets: HashMap<Chain, Rc<HashMap<u32, Vec<Elem>>>>,
}

impl Engine {
    pub fn new(mode: Mode, budget: Budget) -> Self {
        Engine { mode, budget, tables: HashMap::new(), cosets: HashMap::new() }
    }

    fn check_chain(&self, ch: Chain) -> Result<()> {
        if let Mode::Local(p) = self.mode {
            if p_adic_exponent(ch.d2, p).is_none() {
                return Err(HeckeError::NotLocallyIntegral { det: (ch.d1 * ch.d2).to_string(), p });
            }
        }
        Ok(())
    }

    pub fn table(&mut self, ch: Chain) -> Result<Rc<Vec<u32>>> {
        if let Some(t) = self.tables.get(&ch) {
            return Ok(t.clone());
        }
        self.check_chain(ch)?;
        let kind = match self.mode {
            Mode::Global => GroupKind::DetPm,
            Mode::Local(_) => GroupKind::Full,
        };
        let t = Rc::new(partition(ch, &generators(ch, kind), &self.budget)?);
        self.tables.insert(ch, t.clone());
        Ok(t)
    }

    /// Chain and transported vector of an element, before orbit lookup.
    pub fn transport(&self, e: &Elem) -> Result<(Chain, (u64, u64))> {
        let (u, d1, d2) = e.m.snf_left().ok_or_else(|| HeckeError::NotInMonoid(format!("{e:?}")))?;
        let w = u.apply(e.v).ok_or_else(|| overflow(e))?;
        let ch = Chain { d1: d1 as u64, d2: d2 as u64 };
        Ok((ch, ch.reduce(w[0] as i128, w[1] as i128)))
    }

    pub fn classify(&mut self, e: &Elem) -> Result<ClassId> {
        let (ch, (x, y)) = self.transport(e)?;
        self.budget.check_det("double coset classification", ch.size() as u128)?;
        let table = self.table(ch)?;
        Ok(ClassId { chain: ch, rep: table[ch.index(x, y)] })
    }

    /// Canonical class of the diagonal element `(diag[d1, d2], (x, y))`.
    pub fn class_of_point(&mut self, ch: Chain, x: u64, y: u64) -> Result<ClassId> {
        let table = self.table(ch)?;
        Ok(ClassId { chain: ch, rep: table[ch.index(x % ch.d1, y % ch.d2)] })
    }

    pub fn rep_elem(c: ClassId) -> Elem {
        let (x, y) = c.point();
        Elem::new(M2::diag(c.chain.d1 as i64, c.chain.d2 as i64), [x as i64, y as i64])
    }

    /// Left-coset representatives of every class with divisor chain `ch`,
    /// in canonical form.
    pub fn cosets_of_chain(&mut self, ch: Chain) -> Result<Rc<HashMap<u32, Vec<Elem>>>> {
        if let Some(c) = self.cosets.get(&ch) {
            return Ok(c.clone());
        }
        let table = self.table(ch)?;
        let forms = hermite_forms_of_type(ch);
        let n = ch.size();
        self.budget.check_steps("left-coset enumeration", forms.len() as u128 * n as u128 * n as u128)?;
        let mut out: HashMap<u32, Vec<Elem>> = HashMap::new();
        for b in forms {
            let (u, _, _) = b.snf_left().expect("nonsingular");
            for x in 0..n as i64 {
                // w = u (x, y) mod chain, updated incrementally in y.
                let base = (u.a as i128 * x as i128, u.c as i128 * x as i128);
                for y in 0..n as i64 {
                    let w = ch.reduce(base.0 + u.b as i128 * y as i128, base.1 + u.d as i128 * y as i128);
                    let rep = table[ch.index(w.0, w.1)];
                    out.entry(rep).or_default().push(Elem::new(b, [x, y]));
                }
            }
        }
        let rc = Rc::new(out);
        self.cosets.insert(ch, rc.clone());
        Ok(rc)
    }

    pub fn left_cosets(&mut self, c: ClassId) -> Result<Vec<Elem>> {
        let all = self.cosets_of_chain(c.chain)?;
        Ok(all.get(&c.rep).cloned().unwrap_or_default())
    }

    pub fn degree(&mut self, c: ClassId) -> Result<u64> {
        let all = self.cosets_of_chain(c.chain)?;
        Ok(all.get(&c.rep).map_or(0, |v| v.len() as u64))
    }

    /// Product of two basis classes.
    pub fn mul_classes(&mut self, x: ClassId, y: ClassId) -> Result<Sum> {
        let dx = self.degree(x)? as u128;
        let dy = self.degree(y)? as u128;
        if dx * dy <= PAIRWISE_LIMIT {
            self.mul_pairwise::<rand_chacha::ChaCha8Rng>(x, y, None)
        } else {
            self.mul_by_membership(x, y)
        }
    }

    /// Coefficient of each class = number of product pairs landing in one
    /// fixed left coset of it. With `rng`, every representative is first
    /// replaced by a random left translate and the lists are shuffled.
    pub fn mul_pairwise<R: Rng>(&mut self, x: ClassId, y: ClassId, rng: Option<&mut R>) -> Result<Sum> {
        let mut lx = self.left_cosets(x)?;
        let mut ly = self.left_cosets(y)?;
        self.budget.check_steps("pairwise coset products", lx.len() as u128 * ly.len() as u128)?;
        if let Some(rng) = rng {
            for e in lx.iter_mut().chain(ly.iter_mut()) {
                *e = random_left_translate(e, rng).ok_or_else(|| overflow(e))?;
            }
            lx.shuffle(rng);
            ly.shuffle(rng);
        }
        let mut counts: HashMap<LeftKey, u64> = HashMap::new();
        for a in &lx {
            for b in &ly {
                let ab = a.mul(b).ok_or_else(|| overflow(a))?;
                *counts.entry(ab.left_key().ok_or_else(|| overflow(&ab))?).or_default() += 1;
            }
        }
        let mut per_class: BTreeMap<ClassId, u64> = BTreeMap::new();
        for (key, n) in counts {
            let e = Elem::new(M2 { a: key.h[0], b: key.h[1], c: 0, d: key.h[2] }, key.w);
            let c = self.classify(&e)?;
            match per_class.get(&c) {
                Some(&m) if m != n => {
                    return Err(HeckeError::FormulaMismatch(format!(
                        "left cosets of one double coset received {m} and {n} products"
                    )))
                }
                _ => {
                    per_class.insert(c, n);
                }
            }
        }
        Ok(per_class.into_iter().map(|(c, n)| (c, BigInt::from(n))).collect())
    }

    /// Coefficient of `xi` = `#{ j : xi * y_j^-1 in Gamma x Gamma }` over the
    /// left cosets `y_j` of `y`; candidate classes are those of `x_i * y`.
    pub fn mul_by_membership(&mut self, x: ClassId, y: ClassId) -> Result<Sum> {
        let lx = self.left_cosets(x)?;
        let ly = self.left_cosets(y)?;
        let y_rep = Self::rep_elem(y);
        let mut targets = BTreeSet::new();
        for a in &lx {
            let ay = a.mul(&y_rep).ok_or_else(|| overflow(a))?;
            targets.insert(self.classify(&ay)?);
        }
        self.budget.check_steps("membership counts", targets.len() as u128 * ly.len() as u128)?;
        let mut out = Sum::new();
        for xi in targets {
            let xi_rep = Self::rep_elem(xi);
            let mut n = 0u64;
            for b in &ly {
                if let Some(q) = xi_rep.div_right(b) {
                    let (ch, _) = self.transport(&q)?;
                    if ch == x.chain && self.classify(&q)? == x {
                        n += 1;
                    }
                }
            }
            if n > 0 {
                out.insert(xi, BigInt::from(n));
            }
        }
        Ok(out)
    }
}

fn overflow(e: &Elem) -> HeckeError {
    HeckeError::SizeLimit { what: format!("machine-word arithmetic on {e:?}"), needed: u128::MAX, budget: i64::MAX as u64 }
}

/// `(X, x) * e` for a random unimodular `X` (a few elementary steps and a
/// sign) and a random small `x`.
pub(crate) fn random_left_translate<R: Rng>(e: &Elem, rng: &mut R) -> Option<Elem> {
    let mut x = M2::IDENTITY;
    for _ in 0..3 {
        let t = rng.gen_range(-2..=2);
        let step = if rng.gen_bool(0.5) { M2 { a: 1, b: t, c: 0, d: 1 } } else { M2 { a: 1, b: 0, c: t, d: 1 } };
        x = step.mul(&x)?;
    }
    if rng.gen_bool(0.5) {
        x = M2::diag(1, -1).mul(&x)?;
    }
    let g = Elem::new(x, [rng.gen_range(-3..=3), rng.gen_range(-3..=3)]);
    g.mul(e)
}
