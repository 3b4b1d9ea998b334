//! The Heisenberg monoid `Delta_H = Delta_{Z^2} x Z^2` with product
//! `(A, a)(B, b) = (AB, Ab + |B| a)`, and canonical forms for its left
//! cosets, global double cosets and `p`-local double cosets.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::action::{generators, orbit, Chain, GroupKind};
use crate::engine::{ClassId, Engine, Mode};
use crate::error::{HeckeError, Result};
use crate::json::{dec, dec_pair};
use crate::linalg::{det, hnf_left_with_transform, snf, IntMatrix};
use crate::residue::{is_prime, p_adic_exponent, pow, Budget};
use crate::small::{Elem, M2};

/// `(mat, vec)` with `mat` a nonsingular 2x2 integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HeisElement {
    mat: IntMatrix,
    vec: [BigInt; 2],
}

impl fmt::Debug for HeisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, ({}, {}))", self.mat, self.vec[0], self.vec[1])
    }
}

impl HeisElement {
    pub fn new(mat: IntMatrix, vec: [BigInt; 2]) -> Result<Self> {
        if mat.dim() != 2 {
            return Err(HeckeError::NotInMonoid("matrix part must be 2x2".into()));
        }
        if det(&mat).is_zero() {
            return Err(HeckeError::NotInMonoid(format!("{mat:?} is singular")));
        }
        Ok(HeisElement { mat, vec })
    }

    pub fn from_i64(m: [[i64; 2]; 2], v: [i64; 2]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(&[&m[0], &m[1]]), [v[0].into(), v[1].into()])
    }

    pub fn identity() -> Self {
        HeisElement { mat: IntMatrix::identity(2), vec: [BigInt::zero(), BigInt::zero()] }
    }

    pub fn mat(&self) -> &IntMatrix {
        &self.mat
    }

    pub fn vec(&self) -> &[BigInt; 2] {
        &self.vec
    }

    pub fn det(&self) -> BigInt {
        det(&self.mat)
    }

    /// Membership in `Gamma_H`.
    pub fn is_unit(&self) -> bool {
        self.det().abs().is_one()
    }

    pub(crate) fn to_small(&self) -> Option<Elem> {
        let e = |r, c| self.mat.get(r, c).to_i64();
        Some(Elem::new(M2 { a: e(0, 0)?, b: e(0, 1)?, c: e(1, 0)?, d: e(1, 1)? }, [self.vec[0].to_i64()?, self.vec[1].to_i64()?]))
    }

    pub(crate) fn from_small(e: &Elem) -> Self {
        HeisElement {
            mat: IntMatrix::from_i64(&[&[e.m.a, e.m.b], &[e.m.c, e.m.d]]),
            vec: [e.v[0].into(), e.v[1].into()],
        }
    }
}

#[derive(Serialize, Deserialize)]
struct HeisElementJson {
    mat: IntMatrix,
    vec: [crate::json::DecInt; 2],
}

impl Serialize for HeisElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let [a, b] = self.vec.clone();
        HeisElementJson { mat: self.mat.clone(), vec: [crate::json::DecInt(a), crate::json::DecInt(b)] }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeisElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = HeisElementJson::deserialize(d)?;
        let [a, b] = raw.vec;
        HeisElement::new(raw.mat, [a.0, b.0]).map_err(serde::de::Error::custom)
    }
}

/// `(A, a)(B, b) = (AB, Ab + |B| a)`.
pub fn h_mul(x: &HeisElement, y: &HeisElement) -> HeisElement {
    let mat = x.mat.mul(&y.mat);
    let ab = x.mat.mul_vec(&y.vec);
    let d = y.det();
    let vec = [&ab[0] + &d * &x.vec[0], &ab[1] + &d * &x.vec[1]];
    HeisElement { mat, vec }
}

/// `(C, c)^-1 = (C^-1, -C^-1 c / |C|)`, defined over `Q`; returned only when
/// integral, i.e. for elements of `Gamma_H`.
pub fn h_inverse(x: &HeisElement) -> Option<HeisElement> {
    if !x.is_unit() {
        return None;
    }
    let d = x.det();
    let (a, b, c, e) = (x.mat.get(0, 0), x.mat.get(0, 1), x.mat.get(1, 0), x.mat.get(1, 1));
    // C^-1 = adj(C) / d with d = +-1, so C^-1 = d * adj(C).
    let inv = IntMatrix::new_2x2(&d * e, -(&d * b), -(&d * c), &d * a);
    let w = inv.mul_vec(&x.vec);
    Some(HeisElement { mat: inv, vec: [-(&d * &w[0]), -(&d * &w[1])] })
}

/// Canonical representative `(H, w)` of `Gamma_H * x`: `H = X mat` in
/// Hermite form and `w = X vec mod |det|`.
pub fn h_left_canonical(x: &HeisElement) -> Result<HeisElement> {
    let (h, t) = hnf_left_with_transform(&x.mat).map_err(|_| HeckeError::NotInMonoid(format!("{x:?}")))?;
    let n = x.det().abs();
    let w = t.mul_vec(&x.vec);
    Ok(HeisElement { mat: h, vec: [w[0].mod_floor(&n), w[1].mod_floor(&n)] })
}

/// A global double coset `Gamma_H (diag[d1, d2], v) Gamma_H` with `v` the
/// lexicographically least vector of its class mod `diag[d1, d2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawDoubleCoset")]
pub struct HeisDoubleCoset {
    #[serde(with = "dec_pair")]
    pub d: (u64, u64),
    #[serde(with = "dec_pair")]
    pub v: (u64, u64),
}

#[derive(Deserialize)]
struct RawDoubleCoset {
    #[serde(with = "dec_pair")]
    d: (u64, u64),
    #[serde(with = "dec_pair")]
    v: (u64, u64),
}

impl TryFrom<RawDoubleCoset> for HeisDoubleCoset {
    type Error = HeckeError;
    fn try_from(r: RawDoubleCoset) -> Result<Self> {
        let c = HeisDoubleCoset { d: r.d, v: r.v };
        c.chain()?;
        Ok(c)
    }
}

impl HeisDoubleCoset {
    pub fn identity() -> Self {
        HeisDoubleCoset { d: (1, 1), v: (0, 0) }
    }

    pub fn chain(&self) -> Result<Chain> {
        let ch = Chain::new(self.d.0, self.d.1)?;
        if self.v.0 >= ch.d1 || self.v.1 >= ch.d2 {
            return Err(HeckeError::invalid(format!("{:?} is not reduced mod {:?}", self.v, self.d)));
        }
        Ok(ch)
    }

    /// The representative `(diag[d1, d2], v)`.
    pub fn representative(&self) -> HeisElement {
        HeisElement {
            mat: IntMatrix::diag(&[self.d.0.into(), self.d.1.into()]),
            vec: [self.v.0.into(), self.v.1.into()],
        }
    }

    pub(crate) fn from_class(c: ClassId) -> Self {
        HeisDoubleCoset { d: (c.chain.d1, c.chain.d2), v: c.point() }
    }
}

/// The local double coset of `(diag[p^l, p^(l+k)], (p^j, p^(i+j)))` at `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawLocalParams")]
pub struct HeisLocalParams {
    #[serde(with = "dec")]
    pub p: u64,
    #[serde(with = "dec")]
    pub l: u32,
    #[serde(with = "dec")]
    pub k: u32,
    #[serde(with = "dec")]
    pub j: u32,
    #[serde(with = "dec")]
    pub i: u32,
}

#[derive(Deserialize)]
struct RawLocalParams {
    #[serde(with = "dec")]
    p: u64,
    #[serde(with = "dec")]
    l: u32,
    #[serde(with = "dec")]
    k: u32,
    #[serde(with = "dec")]
    j: u32,
    #[serde(with = "dec")]
    i: u32,
}

impl TryFrom<RawLocalParams> for HeisLocalParams {
    type Error = HeckeError;
    fn try_from(r: RawLocalParams) -> Result<Self> {
        HeisLocalParams::new(r.p, r.l, r.k, r.j, r.i)
    }
}

impl HeisLocalParams {
    pub fn new(p: u64, l: u32, k: u32, j: u32, i: u32) -> Result<Self> {
        let c = HeisLocalParams { p, l, k, j, i };
        c.validate()?;
        Ok(c)
    }

    pub fn identity(p: u64) -> Self {
        HeisLocalParams { p, l: 0, k: 0, j: 0, i: 0 }
    }

    pub fn is_identity(&self) -> bool {
        self.l == 0 && self.k == 0
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(HeckeError::invalid(format!("{} is not prime", self.p)));
        }
        if self.j > self.l || self.i > self.k {
            return Err(HeckeError::invalid(format!("need 0 <= j <= l and 0 <= i <= k, got {self:?}")));
        }
        let e = 2 * self.l as u64 + self.k as u64;
        if crate::residue::checked_pow(self.p, e.min(64) as u32).is_none() || e >= 64 {
            return Err(HeckeError::SizeLimit { what: format!("local class {self:?}"), needed: u128::MAX, budget: u64::MAX });
        }
        Ok(())
    }

    pub fn chain(&self) -> Chain {
        Chain { d1: pow(self.p, self.l), d2: pow(self.p, self.l + self.k) }
    }

    /// `(p^j, p^(i+j))` reduced mod the chain.
    pub fn point(&self) -> (u64, u64) {
        let ch = self.chain();
        (pow(self.p, self.j) % ch.d1, pow(self.p, self.i + self.j) % ch.d2)
    }

    pub fn representative(&self) -> HeisElement {
        let ch = self.chain();
        HeisElement {
            mat: IntMatrix::diag(&[ch.d1.into(), ch.d2.into()]),
            vec: [pow(self.p, self.j).into(), pow(self.p, self.i + self.j).into()],
        }
    }
}

/// Either kind of double-coset key.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HeisClass {
    Local(HeisLocalParams),
    Global(HeisDoubleCoset),
}

/// Divisor chain of `x.mat` and `x.vec` carried to `Z/d1 x Z/d2` by the
/// row transform of a Smith form. A different valid row transform changes
/// the vector by an element of the stabilizer group, so orbits are
/// independent of the choice.
pub fn transport(x: &HeisElement, budget: &Budget) -> Result<(Chain, (u64, u64))> {
    let s = snf(&x.mat).map_err(|_| HeckeError::NotInMonoid(format!("{x:?}")))?;
    let n = &s.d[0] * &s.d[1];
    budget.check_det("quotient module Z^2/AZ^2", n.to_u128().unwrap_or(u128::MAX))?;
    let (d1, d2) = (s.d[0].to_u64().unwrap(), s.d[1].to_u64().unwrap());
    let w = s.u.mul_vec(&x.vec);
    let r = |v: &BigInt, m: u64| v.mod_floor(&BigInt::from(m)).to_u64().unwrap();
    Ok((Chain { d1, d2 }, (r(&w[0], d1), r(&w[1], d2))))
}

/// Global double coset of `x`: divisor chain plus the least vector of the
/// orbit under the image of `{X in GL2(Z) : A^-1 X A integral}`.
pub fn h_double_coset_canonical(x: &HeisElement, budget: &Budget) -> Result<HeisDoubleCoset> {
    let (ch, w) = transport(x, budget)?;
    let orb = orbit(ch, &generators(ch, GroupKind::DetPm), w, budget)?;
    Ok(HeisDoubleCoset { d: (ch.d1, ch.d2), v: ch.point(orb[0]) })
}

fn local_orbit(x: &HeisElement, p: u64, budget: &Budget) -> Result<(Chain, Vec<usize>)> {
    if !is_prime(p) {
        return Err(HeckeError::invalid(format!("{p} is not prime")));
    }
    let d = x.det().abs();
    if d.to_u64().and_then(|d| p_adic_exponent(d, p)).is_none() {
        return Err(HeckeError::NotLocallyIntegral { det: x.det().to_string(), p });
    }
    let (ch, w) = transport(x, budget)?;
    Ok((ch, orbit(ch, &generators(ch, GroupKind::Full), w, budget)?))
}

fn params_in_orbit(p: u64, ch: Chain, orb: &[usize]) -> Option<HeisLocalParams> {
    let l = p_adic_exponent(ch.d1, p)?;
    let k = p_adic_exponent(ch.d2, p)? - l;
    (0..=l)
        .flat_map(|j| (0..=k).map(move |i| HeisLocalParams { p, l, k, j, i }))
        .find(|c| {
            let (x, y) = c.point();
            orb.binary_search(&ch.index(x, y)).is_ok()
        })
}

/// Local parameters of `x` at `p`; the least `(j, i)` when several describe
/// the same class.
pub fn h_local_canonical(x: &HeisElement, p: u64, budget: &Budget) -> Result<HeisLocalParams> {
    let (ch, orb) = local_orbit(x, p, budget)?;
    params_in_orbit(p, ch, &orb).ok_or_else(|| HeckeError::NoLocalParameters(format!("{x:?} at p = {p}")))
}

/// How the parameters `(j, i)` cover the local classes with matrix type
/// `diag[p^l, p^(l+k)]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalClassSurvey {
    #[serde(with = "dec")]
    pub p: u64,
    #[serde(with = "dec")]
    pub l: u32,
    #[serde(with = "dec")]
    pub k: u32,
    /// Number of orbits of the level group on `Z^2 / A Z^2`.
    #[serde(with = "dec")]
    pub classes: usize,
    /// Orbits containing some `(p^j, p^(i+j))`.
    #[serde(with = "dec")]
    pub parameterized: usize,
    /// Pairs of distinct parameter tuples naming the same class.
    pub collisions: Vec<(HeisLocalParams, HeisLocalParams)>,
}

pub fn survey_local_classes(p: u64, l: u32, k: u32, budget: &Budget) -> Result<LocalClassSurvey> {
    HeisLocalParams::new(p, l, k, 0, 0)?;
    let ch = HeisLocalParams { p, l, k, j: 0, i: 0 }.chain();
    let table = crate::action::partition(ch, &generators(ch, GroupKind::Full), budget)?;
    let mut first: std::collections::BTreeMap<u32, HeisLocalParams> = Default::default();
    let mut collisions = Vec::new();
    for j in 0..=l {
        for i in 0..=k {
            let c = HeisLocalParams { p, l, k, j, i };
            let (x, y) = c.point();
            let rep = table[ch.index(x, y)];
            match first.get(&rep) {
                Some(prev) => collisions.push((*prev, c)),
                None => {
                    first.insert(rep, c);
                }
            }
        }
    }
    let classes = table.iter().enumerate().filter(|&(s, &r)| s as u32 == r).count();
    Ok(LocalClassSurvey { p, l, k, classes, parameterized: first.len(), collisions })
}

/// Local classes with `|det| <= p^max_exp`, ordered by `(2l + k, l, k, j, i)`,
/// one tuple per class (least `(j, i)`).
pub fn local_classes(p: u64, max_exp: u32, budget: &Budget) -> Result<Vec<HeisLocalParams>> {
    let mut out = Vec::new();
    for e in 0..=max_exp {
        for l in 0..=e / 2 {
            let k = e - 2 * l;
            let survey = survey_local_classes(p, l, k, budget)?;
            let dup: std::collections::BTreeSet<HeisLocalParams> = survey.collisions.iter().map(|c| c.1).collect();
            for j in 0..=l {
                for i in 0..=k {
                    let c = HeisLocalParams { p, l, k, j, i };
                    if !dup.contains(&c) {
                        out.push(c);
                    }
                }
            }
        }
    }
    Ok(out)
}

pub(crate) fn params_of_class(engine: &mut Engine, c: ClassId) -> Result<HeisLocalParams> {
    let Mode::Local(p) = engine.mode else {
        return Err(HeckeError::LocalityMismatch("global class where a local one was expected".into()));
    };
    let l = p_adic_exponent(c.chain.d1, p).expect("local chain");
    let k = p_adic_exponent(c.chain.d2, p).expect("local chain") - l;
    for j in 0..=l {
        for i in 0..=k {
            let t = HeisLocalParams { p, l, k, j, i };
            let (x, y) = t.point();
            if engine.class_of_point(c.chain, x, y)? == c {
                return Ok(t);
            }
        }
    }
    Err(HeckeError::NoLocalParameters(format!("{:?} at p = {p}", HeisDoubleCoset::from_class(c))))
}

pub(crate) fn class_of_params(engine: &mut Engine, c: &HeisLocalParams) -> Result<ClassId> {
    c.validate()?;
    if engine.mode != Mode::Local(c.p) {
        return Err(HeckeError::LocalityMismatch(format!("class at p = {} in a {:?} computation", c.p, engine.mode)));
    }
    engine.budget.check_det("local class", c.chain().size() as u128)?;
    let (x, y) = c.point();
    engine.class_of_point(c.chain(), x, y)
}

pub(crate) fn class_of_global(engine: &mut Engine, c: &HeisDoubleCoset) -> Result<ClassId> {
    let ch = c.chain()?;
    engine.budget.check_det("global class", ch.size() as u128)?;
    engine.class_of_point(ch, c.v.0, c.v.1)
}

/// Left-coset representatives (in left-canonical form) of a global or local
/// double coset; local classes are realized by integral representatives.
pub fn h_left_cosets(c: &HeisClass, budget: &Budget) -> Result<Vec<HeisElement>> {
    let (mut engine, id) = match c {
        HeisClass::Global(g) => {
            let mut e = Engine::new(Mode::Global, *budget);
            let id = class_of_global(&mut e, g)?;
            (e, id)
        }
        HeisClass::Local(t) => {
            let mut e = Engine::new(Mode::Local(t.p), *budget);
            let id = class_of_params(&mut e, t)?;
            (e, id)
        }
    };
    Ok(engine.left_cosets(id)?.iter().map(HeisElement::from_small).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(m: [[i64; 2]; 2], v: [i64; 2]) -> HeisElement {
        HeisElement::from_i64(m, v).unwrap()
    }

    #[test]
    fn product_examples() {
        let x = h([[1, 0], [0, 2]], [0, 1]);
        let y = h([[2, 0], [0, 1]], [1, 0]);
        assert_eq!(h_mul(&x, &y), h([[2, 0], [0, 2]], [1, 2]));
        let e = HeisElement::identity();
        assert_eq!(h_mul(&e, &x), x);
        assert_eq!(h_mul(&x, &e), x);
        let a = h([[1, 0], [0, 1]], [1, 0]);
        let b = h([[1, 0], [0, 1]], [0, 1]);
        assert_eq!(h_mul(&a, &b), h([[1, 0], [0, 1]], [1, 1]));
    }

    #[test]
    fn inverse_of_unit() {
        let g = h([[2, 1], [1, 1]], [3, -4]);
        let gi = h_inverse(&g).unwrap();
        assert_eq!(h_mul(&g, &gi), HeisElement::identity());
        assert_eq!(h_mul(&gi, &g), HeisElement::identity());
        let g = h([[0, 1], [1, 0]], [5, 2]);
        assert_eq!(h_mul(&g, &h_inverse(&g).unwrap()), HeisElement::identity());
        assert!(h_inverse(&h([[2, 0], [0, 1]], [0, 0])).is_none());
    }

    #[test]
    fn left_canonical_examples() {
        assert_eq!(h_left_canonical(&h([[1, 0], [0, 2]], [0, 5])).unwrap(), h([[1, 0], [0, 2]], [0, 1]));
        let c = h([[1, 0], [0, 2]], [0, 1]);
        assert_eq!(h_left_canonical(&c).unwrap(), c);
        let g = h([[1, 1], [0, 1]], [0, 0]);
        let x = h([[3, 1], [2, 5]], [7, -2]);
        assert_eq!(h_left_canonical(&h_mul(&g, &x)).unwrap(), h_left_canonical(&x).unwrap());
    }

    #[test]
    fn p2_pair_is_split_globally() {
        let b = Budget::default();
        let x = h([[8, 0], [0, 512]], [1, 8]);
        let y = h([[8, 0], [0, 512]], [1, 24]);
        assert_ne!(h_double_coset_canonical(&x, &b).unwrap(), h_double_coset_canonical(&y, &b).unwrap());
        let want = HeisLocalParams::new(2, 3, 6, 0, 3).unwrap();
        assert_eq!(h_local_canonical(&x, 2, &b).unwrap(), want);
        assert_eq!(h_local_canonical(&y, 2, &b).unwrap(), want);
    }

    #[test]
    fn local_canonical_examples() {
        let b = Budget::default();
        assert_eq!(h_local_canonical(&h([[2, 0], [0, 8]], [1, 2]), 2, &b).unwrap(), HeisLocalParams::new(2, 1, 2, 0, 1).unwrap());
        for p in [2i64, 3, 5] {
            assert_eq!(
                h_local_canonical(&h([[p, 0], [0, p]], [0, 0]), p as u64, &b).unwrap(),
                HeisLocalParams::new(p as u64, 1, 0, 1, 0).unwrap()
            );
        }
        assert!(matches!(
            h_local_canonical(&h([[2, 0], [0, 6]], [0, 0]), 2, &b),
            Err(HeckeError::NotLocallyIntegral { .. })
        ));
    }

    #[test]
    fn left_cosets_small() {
        let b = Budget::default();
        let id = h_left_cosets(&HeisClass::Global(HeisDoubleCoset::identity()), &b).unwrap();
        assert_eq!(id, vec![HeisElement::identity()]);
        // All classes with chain (1, 2): 3 Hermite forms times 4 vectors.
        let total: usize = [(0u64, 0u64), (0, 1)]
            .iter()
            .map(|&v| h_left_cosets(&HeisClass::Global(HeisDoubleCoset { d: (1, 2), v }), &b).unwrap().len())
            .sum();
        assert_eq!(total, 12);
        let loc = h_left_cosets(&HeisClass::Local(HeisLocalParams::new(2, 0, 1, 0, 0).unwrap()), &b).unwrap();
        for e in &loc {
            assert_eq!(gl_type(e), (1, 2));
        }
    }

    /// Within the surveyed range the tuples `(j, i)` name every local class
    /// exactly once.
    #[test]
    fn parameters_biject_onto_local_classes() {
        let b = Budget::default();
        for p in [2u64, 3, 5] {
            for l in 0..=3u32 {
                for k in 0..=6u32 {
                    if p.pow(2 * l + k) > 200_000 {
                        continue;
                    }
                    let s = survey_local_classes(p, l, k, &b).unwrap();
                    let n = ((l + 1) * (k + 1)) as usize;
                    assert_eq!((s.classes, s.parameterized), (n, n), "{s:?}");
                    assert!(s.collisions.is_empty(), "{s:?}");
                }
            }
        }
    }

    fn gl_type(e: &HeisElement) -> (u64, u64) {
        let s = snf(e.mat()).unwrap();
        (s.d[0].to_u64().unwrap(), s.d[1].to_u64().unwrap())
    }

    #[test]
    fn json_shapes() {
        let x = h([[1, 2], [3, 4]], [5, -6]);
        let s = crate::json::to_canonical_string(&x).unwrap();
        assert_eq!(s, r#"{"mat":[["1","2"],["3","4"]],"vec":["5","-6"]}"#);
        assert_eq!(crate::json::from_str::<HeisElement>(&s).unwrap(), x);
        assert!(crate::json::from_str::<HeisElement>(r#"{"mat":[[1,2],[2,4]],"vec":[0,0]}"#).is_err());
        let c = HeisLocalParams::new(2, 3, 6, 0, 3).unwrap();
        let s = crate::json::to_canonical_string(&c).unwrap();
        assert_eq!(s, r#"{"i":"3","j":"0","k":"6","l":"3","p":"2"}"#);
        let g = HeisDoubleCoset { d: (8, 512), v: (1, 8) };
        assert_eq!(crate::json::to_canonical_string(&g).unwrap(), r#"{"d":["8","512"],"v":["1","8"]}"#);
        let k: HeisClass = crate::json::from_str(r#"{"d":["8","512"],"v":["1","8"]}"#).unwrap();
        assert_eq!(k, HeisClass::Global(g));
        let k: HeisClass = crate::json::from_str(r#"{"i":"3","j":"0","k":"6","l":"3","p":"2"}"#).unwrap();
        assert_eq!(k, HeisClass::Local(c));
        assert!(crate::json::from_str::<HeisLocalParams>(r#"{"i":"7","j":"0","k":"6","l":"3","p":"2"}"#).is_err());
        assert!(crate::json::from_str::<HeisLocalParams>(r#"{"i":"0","j":"0","k":"1","l":"1","p":"4"}"#).is_err());
        assert!(crate::json::from_str::<HeisDoubleCoset>(r#"{"d":["2","3"],"v":["0","0"]}"#).is_err());
        assert!(crate::json::from_str::<HeisDoubleCoset>(r#"{"d":["2","4"],"v":["2","0"]}"#).is_err());
    }
}
