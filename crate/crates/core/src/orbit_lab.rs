//! The finite groups `G_{l,k} = Gamma_0(p^k) / Gamma(p^l, p^(l+k))` acting
//! on `Z/p^l x Z/p^(l+k)`: enumeration, stabilizers, determinant images,
//! and fiber counts for the Heisenberg `eta` map.
//!
//! Elements are `(a, b, c, d)` with row 1 mod `p^l`, row 2 mod `p^(l+k)` and
//! `p^k | c`. Products are well defined: in row 2, `c a'` and `c b'` only
//! see `a', b'` mod `p^l` because `p^k | c`; row 1 is reduced mod `p^l` and
//! only sees `c'` mod `p^l`. The determinant `ad - bc` is well defined mod
//! `p^l` for the same reason, and the kernel `Gamma(p^l, p^(l+k))` has
//! determinants exactly `1 + p^l Z_p`, so it induces `G_{l,k} -> U_0/U_l`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::action::{generators, orbit, split_orbits, Chain, GroupKind, ResMat};
use crate::error::{HeckeError, Result};
use crate::json::dec;
use crate::linalg::QuotientVector;
use crate::residue::{gcd, inv_mod, is_prime, mulmod, pow, Budget};

/// Shape data of `G_{l,k}` at `p`; arithmetic needs no enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Glk {
    pub p: u64,
    pub l: u32,
    pub k: u32,
    /// `p^l`
    pub m1: u64,
    /// `p^(l+k)`
    pub m2: u64,
    /// `p^k`
    pub pk: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GlkElem {
    #[serde(with = "dec")]
    pub a: u64,
    #[serde(with = "dec")]
    pub b: u64,
    #[serde(with = "dec")]
    pub c: u64,
    #[serde(with = "dec")]
    pub d: u64,
}

impl Glk {
    pub fn new(p: u64, l: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(HeckeError::invalid(format!("{p} is not prime")));
        }
        let m2 = crate::residue::checked_pow(p, l + k)
            .filter(|m| m.checked_mul(pow(p, l)).is_some())
            .ok_or_else(|| HeckeError::SizeLimit { what: format!("G_{{{l},{k}}} at p = {p}"), needed: u128::MAX, budget: u64::MAX })?;
        Ok(Glk { p, l, k, m1: pow(p, l), m2, pk: pow(p, k) })
    }

    pub fn chain(&self) -> Chain {
        Chain { d1: self.m1, d2: self.m2 }
    }

    /// `|G_{l,k}|`, counted from the shape of the tuples.
    pub fn order(&self) -> u128 {
        let (p, l, k) = (self.p as u128, self.l, self.k);
        let phi = |e: u32| if e == 0 { 1 } else { (p - 1) * p.pow(e - 1) };
        match (l, k) {
            (0, _) => phi(k),
            (_, 0) => p.pow(4 * l - 4) * (p * p - 1) * (p * p - p),
            _ => phi(l) * p.pow(l) * p.pow(l) * phi(l + k),
        }
    }

    pub fn identity(&self) -> GlkElem {
        GlkElem { a: 1 % self.m1, b: 0, c: 0, d: 1 % self.m2 }
    }

    /// Tuple shape plus invertibility: `ad - bc` a unit mod `p` when `l >= 1`;
    /// for `l = 0` the first row is void and `d` must be a unit.
    pub fn contains(&self, g: &GlkElem) -> bool {
        if g.a >= self.m1 || g.b >= self.m1 || g.c >= self.m2 || g.d >= self.m2 || !g.c.is_multiple_of(self.pk) {
            return false;
        }
        if self.l == 0 {
            return self.k == 0 || !g.d.is_multiple_of(self.p);
        }
        let det = (g.a as i128 * g.d as i128 - g.b as i128 * g.c as i128).rem_euclid(self.p as i128);
        det != 0
    }

    pub fn mul(&self, x: &GlkElem, y: &GlkElem) -> GlkElem {
        let (m1, m2) = (self.m1 as u128, self.m2 as u128);
        let (a, b, c, d) = (x.a as u128, x.b as u128, x.c as u128, x.d as u128);
        let (e, f, g, h) = (y.a as u128, y.b as u128, y.c as u128, y.d as u128);
        GlkElem {
            a: ((a * e + b * g) % m1) as u64,
            b: ((a * f + b * h) % m1) as u64,
            c: ((c * e + d * g) % m2) as u64,
            d: ((c * f + d * h) % m2) as u64,
        }
    }

    pub fn inverse(&self, x: &GlkElem) -> GlkElem {
        // Lift to an integer matrix; for l = 0 the first row is free, take (1, 0).
        let (a, b) = if self.l == 0 { (1i128, 0i128) } else { (x.a as i128, x.b as i128) };
        let (c, d) = (x.c as i128, x.d as i128);
        let m2 = self.m2 as i128;
        let det = (a * d - b * c).rem_euclid(m2) as u64;
        let t = inv_mod(det, self.m2).expect("group element") as i128;
        let r = |v: i128, m: u64| (v.rem_euclid(m2) * t).rem_euclid(m as i128) as u64;
        GlkElem { a: r(d, self.m1), b: r(-b, self.m1), c: r(-c, self.m2), d: r(a, self.m2) }
    }

    /// `det_{l,k}`: `ad - bc mod p^l`.
    pub fn det(&self, g: &GlkElem) -> UnitFiltrationClass {
        let v = (g.a as i128 * g.d as i128 - g.b as i128 * g.c as i128).rem_euclid(self.m1 as i128) as u64;
        UnitFiltrationClass { p: self.p, l: self.l, value: v }
    }

    pub fn apply(&self, g: &GlkElem, x: (u64, u64)) -> (u64, u64) {
        ResMat { a: g.a, b: g.b, c: g.c, d: g.d }.apply(self.chain(), x.0, x.1)
    }

    /// `(p^j, p^(i+j))` mod the chain.
    pub fn point(&self, j: u32, i: u32) -> Result<(u64, u64)> {
        if j > self.l || i > self.k {
            return Err(HeckeError::invalid(format!("need 0 <= j <= l and 0 <= i <= k, got j = {j}, i = {i}")));
        }
        Ok((pow(self.p, j) % self.m1, pow(self.p, i + j) % self.m2))
    }
}

/// A class in `U_0 / U_l` at `p`, stored as a residue mod `p^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UnitFiltrationClass {
    #[serde(with = "dec")]
    pub p: u64,
    #[serde(with = "dec")]
    pub l: u32,
    #[serde(with = "dec")]
    pub value: u64,
}

/// `G_{l,k}` with every element listed, in increasing tuple order.
#[derive(Clone, Debug)]
pub struct GlkGroup {
    pub shape: Glk,
    pub elements: Vec<GlkElem>,
}

impl GlkGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &GlkElem) -> bool {
        self.elements.binary_search(g).is_ok()
    }
}

/// Enumerates every tuple of the mixed-modulus shape and keeps the
/// invertible ones.
pub fn build_glk(p: u64, l: u32, k: u32, budget: &Budget) -> Result<GlkGroup> {
    let g = Glk::new(p, l, k)?;
    let tuples = g.m1 as u128 * g.m1 as u128 * g.m1 as u128 * g.m2 as u128;
    budget.check_steps(&format!("enumerating G_{{{l},{k}}} at p = {p}"), tuples)?;
    let mut elements = Vec::new();
    for a in 0..g.m1 {
        for b in 0..g.m1 {
            for c in (0..g.m2).step_by(g.pk as usize) {
                for d in 0..g.m2 {
                    let e = GlkElem { a, b, c, d };
                    if g.contains(&e) {
                        elements.push(e);
                    }
                }
            }
        }
    }
    Ok(GlkGroup { shape: g, elements })
}

pub fn glk_det(g: &Glk, x: &GlkElem) -> UnitFiltrationClass {
    g.det(x)
}

/// Orbit (sorted points) and stabilizer of `a` by running over the group.
pub fn orbit_and_stabilizer(group: &GlkGroup, a: &QuotientVector) -> Result<(Vec<(u64, u64)>, Vec<GlkElem>)> {
    let g = group.shape;
    let m = a.modulus();
    if m[0] != g.m1.into() || m[1] != g.m2.into() {
        return Err(HeckeError::invalid(format!("vector modulus {m:?} does not match G_{{{},{}}} at p = {}", g.l, g.k, g.p)));
    }
    let c = a.coords();
    let x = (u64::try_from(&c[0]).unwrap(), u64::try_from(&c[1]).unwrap());
    let mut orbit = BTreeSet::new();
    let mut stab = Vec::new();
    for e in &group.elements {
        let y = g.apply(e, x);
        if y == x {
            stab.push(*e);
        }
        orbit.insert(y);
    }
    Ok((orbit.into_iter().collect(), stab))
}

/// Visits every stabilizer element of `x` without enumerating the group:
/// for each `(a, b, c)` with the first row fixing `x`, solves
/// `d y = y - c x (mod p^(l+k))` for `d`.
pub fn for_each_stabilizer_elem(g: &Glk, x: (u64, u64), mut f: impl FnMut(&GlkElem)) {
    let (m1, m2) = (g.m1, g.m2);
    let y = x.1;
    let gy = gcd(y, m2);
    let step = m2 / gy;
    let y_red = y / gy;
    let y_inv = inv_mod(y_red % step, step).expect("coprime after division");
    for a in 0..m1 {
        for b in 0..m1 {
            if (mulmod(a, x.0, m1) + mulmod(b, y % m1, m1)) % m1 != x.0 {
                continue;
            }
            for c in (0..m2).step_by(g.pk as usize) {
                let t = (y as i128 - c as i128 * x.0 as i128).rem_euclid(m2 as i128) as u64;
                if !t.is_multiple_of(gy) {
                    continue;
                }
                let d0 = mulmod(t / gy, y_inv, step);
                for s in 0..gy {
                    let e = GlkElem { a, b, c, d: d0 + s * step };
                    if g.contains(&e) {
                        f(&e);
                    }
                }
            }
        }
    }
}

/// `(|stabilizer|, det_{l,k}(stabilizer))` for `(p^j, p^(i+j))`.
pub fn stabilizer_det_image(g: &Glk, j: u32, i: u32, budget: &Budget) -> Result<(u128, BTreeSet<u64>)> {
    let x = g.point(j, i)?;
    budget.check_steps("stabilizer by congruence solving", g.m1 as u128 * g.m1 as u128 * g.m1 as u128)?;
    let mut n = 0u128;
    let mut image = BTreeSet::new();
    for_each_stabilizer_elem(g, x, |e| {
        n += 1;
        image.insert(g.det(e).value);
    });
    Ok((n, image))
}

/// `U_n / U_l` as residues mod `p^l`.
pub fn unit_filtration(p: u64, l: u32, n: u32) -> BTreeSet<u64> {
    let m1 = pow(p, l);
    let pn = pow(p, n.min(l));
    (0..m1).filter(|&u| gcd(u, m1) == 1 || m1 == 1).filter(|&u| (u % pn) == (1 % pn)).collect()
}

pub fn formula_exponent(l: u32, k: u32, i: u32, j: u32) -> u32 {
    i.min(k - i).min(l - j)
}

/// The exponent `n` with `det_{l,k}(S_a) = U_n / U_l`, found from the
/// enumerated image; it must agree with `min(i, k - i, l - j)`.
pub fn stab_det_exponent(p: u64, l: u32, k: u32, i: u32, j: u32, budget: &Budget) -> Result<u32> {
    let g = Glk::new(p, l, k)?;
    let (_, image) = stabilizer_det_image(&g, j, i, budget)?;
    let want = formula_exponent(l, k, i, j);
    if image == unit_filtration(p, l, want) {
        return Ok(want);
    }
    let found = (0..=l).find(|&n| image == unit_filtration(p, l, n));
    Err(HeckeError::FormulaMismatch(format!(
        "p = {p}, l = {l}, k = {k}, i = {i}, j = {j}: stabilizer determinants give {found:?}, expected U_{want}"
    )))
}

/// `[U_0 : <-1, U_n>]` in the units mod `p^l`, by generating the subgroup.
pub fn index_u0_pm_un(p: u64, l: u32, n: u32) -> Result<u64> {
    if n > l {
        return Err(HeckeError::invalid(format!("need n <= l, got n = {n}, l = {l}")));
    }
    let m = pow(p, l);
    if m == 1 {
        return Ok(1);
    }
    let mut gens = unit_filtration(p, l, n).into_iter().collect::<Vec<_>>();
    gens.push(m - 1);
    let mut seen = vec![false; m as usize];
    seen[1] = true;
    let mut stack = vec![1u64];
    let mut size = 1u64;
    while let Some(x) = stack.pop() {
        for &g in &gens {
            let y = mulmod(x, g, m);
            if !seen[y as usize] {
                seen[y as usize] = true;
                size += 1;
                stack.push(y);
            }
        }
    }
    let units = (p - 1) * pow(p, l - 1);
    Ok(units / size)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    #[serde(with = "dec")]
    pub p: u64,
    #[serde(with = "dec")]
    pub l: u32,
    #[serde(with = "dec")]
    pub k: u32,
    #[serde(with = "dec")]
    pub i: u32,
    #[serde(with = "dec")]
    pub j: u32,
    #[serde(with = "dec")]
    pub group_order: u128,
    #[serde(with = "dec")]
    pub orbit_size: u64,
    #[serde(with = "dec")]
    pub stab_size: u128,
    #[serde(with = "dec")]
    pub n: u32,
    #[serde(with = "dec")]
    pub fiber_count: u64,
    #[serde(with = "dec")]
    pub formula_count: u64,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Number of `G^+-`-orbits on the `G_{l,k}`-orbit of `(p^j, p^(i+j))`,
/// checked against `[U_0 : +-U_n]`.
///
/// The orbit comes from generator search, the stabilizer from congruence
/// solving and the group order from the tuple count, so the orbit-stabilizer
/// identity is a genuine cross-check.
pub fn fiber_count(p: u64, l: u32, k: u32, i: u32, j: u32, budget: &Budget) -> Result<OrbitReport> {
    let g = Glk::new(p, l, k)?;
    let x = g.point(j, i)?;
    let ch = g.chain();
    let full = orbit(ch, &generators(ch, GroupKind::Full), x, budget)?;
    let (stab_size, image) = stabilizer_det_image(&g, j, i, budget)?;
    let group_order = g.order();
    if full.len() as u128 * stab_size != group_order {
        return Err(HeckeError::FormulaMismatch(format!(
            "orbit {} times stabilizer {stab_size} is not |G| = {group_order}",
            full.len()
        )));
    }
    let want = formula_exponent(l, k, i, j);
    let n = if image == unit_filtration(p, l, want) {
        want
    } else {
        (0..=l).find(|&n| image == unit_filtration(p, l, n)).ok_or_else(|| {
            HeckeError::FormulaMismatch(format!("stabilizer determinant image {image:?} is no U_n"))
        })?
    };
    let fibers = split_orbits(ch, &generators(ch, GroupKind::DetPm), &full).len() as u64;
    let formula_count = index_u0_pm_un(p, l, want)?;
    Ok(OrbitReport {
        p,
        l,
        k,
        i,
        j,
        group_order,
        orbit_size: full.len() as u64,
        stab_size,
        n,
        fiber_count: fibers,
        formula_count,
        matches: fibers == formula_count && n == want,
    })
}

/// Same count from a fully enumerated group: `G^+-` orbits on `G x`.
pub fn fiber_count_by_enumeration(group: &GlkGroup, j: u32, i: u32) -> Result<u64> {
    let g = group.shape;
    let x = g.point(j, i)?;
    let minus = (g.m1 as i128 - 1).rem_euclid(g.m1.max(1) as i128) as u64;
    let pm: Vec<&GlkElem> = group
        .elements
        .iter()
        .filter(|e| {
            let d = g.det(e).value;
            d == 1 % g.m1 || d == minus
        })
        .collect();
    let mut remaining: BTreeSet<(u64, u64)> = group.elements.iter().map(|e| g.apply(e, x)).collect();
    let mut count = 0;
    while let Some(&y) = remaining.iter().next() {
        for e in &pm {
            remaining.remove(&g.apply(e, y));
        }
        count += 1;
    }
    Ok(count)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurjectivityReport {
    #[serde(with = "dec")]
    pub p: u64,
    #[serde(with = "dec")]
    pub l: u32,
    #[serde(with = "dec")]
    pub k: u32,
    /// Entry bound at which the closures were taken.
    #[serde(with = "dec")]
    pub entry_bound: u64,
    #[serde(with = "dec")]
    pub pm_order: u64,
    #[serde(with = "dec")]
    pub pm_reached: u64,
    #[serde(with = "dec")]
    pub one_order: u64,
    #[serde(with = "dec")]
    pub one_reached: u64,
    pub surjective: bool,
}

/// Dense index of `G_{l,k}` tuples.
struct Dense<'a> {
    g: &'a Glk,
}

impl Dense<'_> {
    fn size(&self) -> usize {
        (self.g.m1 * self.g.m1 * self.g.m1 * self.g.m2) as usize
    }
    fn index(&self, e: &GlkElem) -> usize {
        let g = self.g;
        (((e.a * g.m1 + e.b) * g.m1 + e.c / g.pk) * g.m2 + e.d) as usize
    }
}

/// Subgroup closure that grows as generators arrive.
struct Closure<'a> {
    g: &'a Glk,
    dense: Dense<'a>,
    member: Vec<bool>,
    elems: Vec<GlkElem>,
    gens: Vec<GlkElem>,
}

impl<'a> Closure<'a> {
    fn new(g: &'a Glk) -> Self {
        let dense = Dense { g };
        let mut member = vec![false; dense.size()];
        let id = g.identity();
        member[dense.index(&id)] = true;
        Closure { g, dense, member, elems: vec![id], gens: Vec::new() }
    }

    fn add(&mut self, x: GlkElem) {
        if self.member[self.dense.index(&x)] {
            return;
        }
        self.gens.push(x);
        // Everything reachable from the current subgroup by right multiplication.
        let mut head = 0;
        let mut frontier = std::mem::take(&mut self.elems);
        while head < frontier.len() {
            let e = frontier[head];
            head += 1;
            for s in &self.gens {
                let t = self.g.mul(&e, s);
                let ix = self.dense.index(&t);
                if !self.member[ix] {
                    self.member[ix] = true;
                    frontier.push(t);
                }
            }
        }
        self.elems = frontier;
    }
}

/// Reduces the integer matrices of `Gamma_0(p^k)` with `det = +-1` and entries
/// in `[-B, B]`, closes them into subgroups of `G_{l,k}`, and compares with
/// `G^+-` and `G^1`. `B` doubles until both are reached or the step budget
/// runs out.
pub fn integral_surjectivity_check(p: u64, l: u32, k: u32, entry_bound: u64, budget: &Budget) -> Result<SurjectivityReport> {
    let g = Glk::new(p, l, k)?;
    let full = build_glk(p, l, k, budget)?;
    let minus = (g.m1 + g.m1 - 1) % g.m1.max(1);
    let pm_order = full.elements.iter().filter(|e| [1 % g.m1, minus].contains(&g.det(e).value)).count() as u64;
    let one_order = full.elements.iter().filter(|e| g.det(e).value == 1 % g.m1).count() as u64;
    drop(full);
    let mut bound = entry_bound.max(1);
    loop {
        let side = 2 * bound as u128 + 1;
        let c_count = 2 * (bound / g.pk) as u128 + 1;
        budget.check_steps("integral matrix enumeration", side * side * c_count).map_err(|_| {
            HeckeError::BudgetExhausted(format!(
                "integral closure for G_{{{l},{k}}} at p = {p} not complete at entry bound {bound}"
            ))
        })?;
        let mut pm = Closure::new(&g);
        let mut one = Closure::new(&g);
        let b = bound as i64;
        let red = |v: i64, m: u64| v.rem_euclid(m as i64) as u64;
        let step = g.pk as i64;
        for a in -b..=b {
            for bb in -b..=b {
                for c in (-(b / step) * step..=b).step_by(step as usize) {
                    for s in [1i64, -1] {
                        let ds: Vec<i64> = if a == 0 {
                            if bb * c == -s { (-b..=b).collect() } else { Vec::new() }
                        } else {
                            let num = s + bb * c;
                            if num % a == 0 && (num / a).abs() <= b { vec![num / a] } else { Vec::new() }
                        };
                        for d in ds {
                            let e = GlkElem { a: red(a, g.m1), b: red(bb, g.m1), c: red(c, g.m2), d: red(d, g.m2) };
                            pm.add(e);
                            if s == 1 {
                                one.add(e);
                            }
                        }
                    }
                }
            }
        }
        let (pr, or) = (pm.elems.len() as u64, one.elems.len() as u64);
        if pr == pm_order && or == one_order {
            return Ok(SurjectivityReport {
                p,
                l,
                k,
                entry_bound: bound,
                pm_order,
                pm_reached: pr,
                one_order,
                one_reached: or,
                surjective: true,
            });
        }
        if pr > pm_order || or > one_order {
            return Err(HeckeError::FormulaMismatch(format!(
                "closure overshoots: {pr} > {pm_order} or {or} > {one_order}"
            )));
        }
        bound *= 2;
    }
}
