//! Hecke rings of the Heisenberg monoid: the global ring, the local rings at
//! each prime, the restricted product of the local rings (finite support),
//! and the map `eta*` sending an adelic double coset to the sum of the
//! global double cosets above it.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::action::{generators, orbit, split_orbits, Chain, GroupKind};
use crate::engine::{add_term, ClassId, Engine, Mode, Sum};
use crate::error::{HeckeError, Result};
use crate::gl_hecke::Locality;
use crate::heis::{
    class_of_global, class_of_params, local_classes, params_of_class, HeisClass, HeisDoubleCoset, HeisElement,
    HeisLocalParams,
};
use crate::json::{dec, dec_big};
use crate::orbit_lab::{formula_exponent, index_u0_pm_un};
use crate::residue::{crt_lift, factor, p_adic_exponent, pow, valuation, Budget};

/// Integer combination of Heisenberg double cosets of one locality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeisHeckeElement {
    locality: Locality,
    terms: BTreeMap<HeisClass, BigInt>,
}

impl HeisHeckeElement {
    pub fn zero(locality: Locality) -> Self {
        HeisHeckeElement { locality, terms: BTreeMap::new() }
    }

    pub fn basis(c: HeisClass) -> Self {
        let locality = match c {
            HeisClass::Global(_) => Locality::Global,
            HeisClass::Local(t) => Locality::Local { p: t.p },
        };
        let mut e = Self::zero(locality);
        e.terms.insert(c, BigInt::one());
        e
    }

    pub fn global(c: HeisDoubleCoset) -> Self {
        Self::basis(HeisClass::Global(c))
    }

    pub fn local(c: HeisLocalParams) -> Self {
        Self::basis(HeisClass::Local(c))
    }

    pub fn identity(locality: Locality) -> Self {
        match locality {
            Locality::Global => Self::global(HeisDoubleCoset::identity()),
            Locality::Local { p } => Self::local(HeisLocalParams::identity(p)),
        }
    }

    pub fn add(&mut self, c: HeisClass, n: BigInt) -> Result<()> {
        let ok = match (&c, self.locality) {
            (HeisClass::Global(_), Locality::Global) => true,
            (HeisClass::Local(t), Locality::Local { p }) => t.p == p,
            _ => false,
        };
        if !ok {
            return Err(HeckeError::LocalityMismatch(format!("{c:?} in a {:?} element", self.locality)));
        }
        let e = self.terms.entry(c).or_insert_with(BigInt::zero);
        *e += n;
        if e.is_zero() {
            self.terms.remove(&c);
        }
        Ok(())
    }

    pub fn locality(&self) -> Locality {
        self.locality
    }

    pub fn terms(&self) -> &BTreeMap<HeisClass, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, c: &HeisClass) -> BigInt {
        self.terms.get(c).cloned().unwrap_or_default()
    }
}

#[derive(Serialize, Deserialize)]
struct Term<K> {
    coset: K,
    #[serde(with = "dec_big")]
    coeff: BigInt,
}

#[derive(Serialize, Deserialize)]
struct HeisElementJson {
    locality: Locality,
    terms: Vec<Term<HeisClass>>,
}

impl Serialize for HeisHeckeElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.terms.iter().map(|(c, n)| Term { coset: *c, coeff: n.clone() }).collect();
        HeisElementJson { locality: self.locality, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HeisHeckeElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = HeisElementJson::deserialize(d)?;
        let mut e = HeisHeckeElement::zero(raw.locality);
        for t in raw.terms {
            e.add(t.coset, t.coeff).map_err(serde::de::Error::custom)?;
        }
        Ok(e)
    }
}

/// A double coset of the restricted product: one non-identity local class
/// per prime in the support; the empty support is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdelicCoset {
    support: BTreeMap<u64, HeisLocalParams>,
}

impl AdelicCoset {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Identity components are dropped; a prime may appear only once.
    pub fn new(components: impl IntoIterator<Item = HeisLocalParams>) -> Result<Self> {
        let mut support = BTreeMap::new();
        for c in components {
            c.validate()?;
            if support.contains_key(&c.p) {
                return Err(HeckeError::invalid(format!("prime {} appears twice", c.p)));
            }
            if !c.is_identity() {
                support.insert(c.p, c);
            } else {
                support.remove(&c.p);
            }
        }
        Ok(AdelicCoset { support })
    }

    pub fn at(c: HeisLocalParams) -> Result<Self> {
        Self::new([c])
    }

    pub fn support(&self) -> &BTreeMap<u64, HeisLocalParams> {
        &self.support
    }

    pub fn component(&self, p: u64) -> HeisLocalParams {
        self.support.get(&p).copied().unwrap_or(HeisLocalParams::identity(p))
    }
}

#[derive(Serialize, Deserialize)]
struct AdelicCosetJson {
    support: Vec<HeisLocalParams>,
}

impl Serialize for AdelicCoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AdelicCosetJson { support: self.support.values().copied().collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AdelicCoset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = AdelicCosetJson::deserialize(d)?;
        let mut seen = BTreeSet::new();
        for c in &raw.support {
            if !seen.insert(c.p) {
                return Err(serde::de::Error::custom(format!("prime {} appears twice", c.p)));
            }
        }
        AdelicCoset::new(raw.support).map_err(serde::de::Error::custom)
    }
}

/// Integer combination of adelic double cosets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdelicHeckeElement {
    terms: BTreeMap<AdelicCoset, BigInt>,
}

impl AdelicHeckeElement {
    pub fn basis(c: AdelicCoset) -> Self {
        let mut e = Self::default();
        e.terms.insert(c, BigInt::one());
        e
    }

    pub fn identity() -> Self {
        Self::basis(AdelicCoset::identity())
    }

    /// A local class placed at its prime.
    pub fn embed(c: HeisLocalParams) -> Result<Self> {
        Ok(Self::basis(AdelicCoset::at(c)?))
    }

    pub fn add(&mut self, c: AdelicCoset, n: BigInt) {
        let e = self.terms.entry(c.clone()).or_insert_with(BigInt::zero);
        *e += n;
        if e.is_zero() {
            self.terms.remove(&c);
        }
    }

    pub fn terms(&self) -> &BTreeMap<AdelicCoset, BigInt> {
        &self.terms
    }
}

#[derive(Serialize, Deserialize)]
struct AdelicElementJson {
    terms: Vec<Term<AdelicCoset>>,
}

impl Serialize for AdelicHeckeElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self.terms.iter().map(|(c, n)| Term { coset: c.clone(), coeff: n.clone() }).collect();
        AdelicElementJson { terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AdelicHeckeElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = AdelicElementJson::deserialize(d)?;
        let mut e = AdelicHeckeElement::default();
        for t in raw.terms {
            e.add(t.coset, t.coeff);
        }
        Ok(e)
    }
}

/// How basis products are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMethod {
    /// Pairwise counting for small degree products, membership counting above.
    Auto,
    /// Group all products of left-coset representatives by left coset.
    Pairwise,
    /// Pairwise, after replacing each representative by a random left
    /// translate and shuffling both lists.
    Shuffled { seed: u64 },
    /// `#{ j : xi * y_j^-1 in Gamma x Gamma }` for each candidate `xi`.
    Membership,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NoncommutativityWitness {
    pub u: HeisHeckeElement,
    pub v: HeisHeckeElement,
    pub uv: HeisHeckeElement,
    pub vu: HeisHeckeElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateParams {
    #[serde(with = "dec")]
    pub l: u32,
    #[serde(with = "dec")]
    pub k: u32,
    #[serde(with = "dec")]
    pub j: u32,
    #[serde(with = "dec")]
    pub i: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateChecks {
    /// `[U_0 : +-U_n]` by unit-subgroup enumeration.
    #[serde(with = "dec")]
    pub fiber_size_expected: u64,
    pub formula: String,
    #[serde(with = "dec")]
    pub n: u32,
    /// Every fiber member has the certified local component.
    pub local_components_match: bool,
    /// The full fiber sum passes the equal-weights test.
    pub fiber_sum_in_image: bool,
    /// The distinguished coset alone passes it (must be false).
    pub distinguished_in_image: bool,
}

/// Evidence that `eta*` is not onto: a fiber with more than one global
/// class, and one of its members, which no image element can isolate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    #[serde(with = "dec")]
    pub p: u64,
    pub params: CertificateParams,
    pub coset: AdelicCoset,
    pub fiber: Vec<HeisDoubleCoset>,
    #[serde(with = "dec")]
    pub fiber_size: usize,
    pub distinguished: HeisDoubleCoset,
    pub checks: CertificateChecks,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.fiber_size >= 2
            && self.fiber_size as u64 == self.checks.fiber_size_expected
            && self.fiber.contains(&self.distinguished)
            && self.checks.local_components_match
            && self.checks.fiber_sum_in_image
            && !self.checks.distinguished_in_image
    }
}

/// Shared state for Heisenberg Hecke computations: per-locality orbit tables
/// and left-coset lists, built on first use.
pub struct HeisRing {
    budget: Budget,
    global: Engine,
    locals: BTreeMap<u64, Engine>,
}

impl HeisRing {
    pub fn new(budget: Budget) -> Self {
        HeisRing { budget, global: Engine::new(Mode::Global, budget), locals: BTreeMap::new() }
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    fn engine(&mut self, loc: Locality) -> &mut Engine {
        match loc {
            Locality::Global => &mut self.global,
            Locality::Local { p } => {
                let b = self.budget;
                self.locals.entry(p).or_insert_with(|| Engine::new(Mode::Local(p), b))
            }
        }
    }

    fn class_id(&mut self, c: &HeisClass) -> Result<ClassId> {
        match c {
            HeisClass::Global(g) => class_of_global(&mut self.global, g),
            HeisClass::Local(t) => class_of_params(self.engine(Locality::Local { p: t.p }), t),
        }
    }

    fn key(&mut self, loc: Locality, c: ClassId) -> Result<HeisClass> {
        match loc {
            Locality::Global => Ok(HeisClass::Global(HeisDoubleCoset::from_class(c))),
            Locality::Local { .. } => Ok(HeisClass::Local(params_of_class(self.engine(loc), c)?)),
        }
    }

    fn sum_of(&mut self, x: &HeisHeckeElement) -> Result<Sum> {
        let mut s = Sum::new();
        for (c, n) in &x.terms {
            let id = self.class_id(c)?;
            add_term(&mut s, id, n.clone());
        }
        Ok(s)
    }

    fn element_of(&mut self, loc: Locality, s: Sum) -> Result<HeisHeckeElement> {
        let mut out = HeisHeckeElement::zero(loc);
        for (c, n) in s {
            let k = self.key(loc, c)?;
            out.add(k, n)?;
        }
        Ok(out)
    }

    /// Rewrites every key in canonical form, merging duplicates.
    pub fn normalize(&mut self, x: &HeisHeckeElement) -> Result<HeisHeckeElement> {
        let s = self.sum_of(x)?;
        self.element_of(x.locality, s)
    }

    pub fn canonical_class(&mut self, x: &HeisElement, loc: Locality) -> Result<HeisClass> {
        let e = x.to_small().ok_or_else(|| HeckeError::SizeLimit {
            what: format!("machine-word arithmetic on {x:?}"),
            needed: u128::MAX,
            budget: i64::MAX as u64,
        })?;
        if let Locality::Local { p } = loc {
            let d = x.det().magnitude().clone();
            if u64::try_from(d).ok().and_then(|d| p_adic_exponent(d, p)).is_none() {
                return Err(HeckeError::NotLocallyIntegral { det: x.det().to_string(), p });
            }
        }
        let id = self.engine(loc).classify(&e)?;
        self.key(loc, id)
    }

    pub fn mul(&mut self, x: &HeisHeckeElement, y: &HeisHeckeElement) -> Result<HeisHeckeElement> {
        self.mul_with(x, y, ProductMethod::Auto)
    }

    pub fn mul_with(&mut self, x: &HeisHeckeElement, y: &HeisHeckeElement, method: ProductMethod) -> Result<HeisHeckeElement> {
        if x.locality != y.locality {
            return Err(HeckeError::LocalityMismatch(format!("{:?} times {:?}", x.locality, y.locality)));
        }
        let loc = x.locality;
        let (sx, sy) = (self.sum_of(x)?, self.sum_of(y)?);
        let mut rng = match method {
            ProductMethod::Shuffled { seed } => Some(ChaCha8Rng::seed_from_u64(seed)),
            _ => None,
        };
        let engine = self.engine(loc);
        let mut out = Sum::new();
        for (cx, nx) in &sx {
            for (cy, ny) in &sy {
                let part = match method {
                    ProductMethod::Auto => engine.mul_classes(*cx, *cy)?,
                    ProductMethod::Pairwise => engine.mul_pairwise::<ChaCha8Rng>(*cx, *cy, None)?,
                    ProductMethod::Shuffled { .. } => engine.mul_pairwise(*cx, *cy, rng.as_mut())?,
                    ProductMethod::Membership => engine.mul_by_membership(*cx, *cy)?,
                };
                for (c, n) in part {
                    add_term(&mut out, c, n * nx * ny);
                }
            }
        }
        self.element_of(loc, out)
    }

    pub fn class_degree(&mut self, c: &HeisClass) -> Result<u64> {
        let loc = match c {
            HeisClass::Global(_) => Locality::Global,
            HeisClass::Local(t) => Locality::Local { p: t.p },
        };
        let id = self.class_id(c)?;
        self.engine(loc).degree(id)
    }

    /// Coefficient-weighted number of left cosets.
    pub fn degree(&mut self, x: &HeisHeckeElement) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (c, n) in &x.terms {
            total += n * BigInt::from(self.class_degree(c)?);
        }
        Ok(total)
    }

    pub fn left_cosets(&mut self, c: &HeisClass) -> Result<Vec<HeisElement>> {
        let loc = match c {
            HeisClass::Global(_) => Locality::Global,
            HeisClass::Local(t) => Locality::Local { p: t.p },
        };
        let id = self.class_id(c)?;
        Ok(self.engine(loc).left_cosets(id)?.iter().map(HeisElement::from_small).collect())
    }

    /// Product of the local factors at every prime.
    pub fn adelic_degree(&mut self, x: &AdelicHeckeElement) -> Result<BigInt> {
        let mut total = BigInt::zero();
        for (c, n) in &x.terms {
            let mut d = BigInt::one();
            for t in c.support.values() {
                d *= self.class_degree(&HeisClass::Local(*t))?;
            }
            total += n * d;
        }
        Ok(total)
    }

    /// Componentwise product: local Hecke products at each prime of either
    /// support, tensored together.
    pub fn adelic_mul(&mut self, x: &AdelicHeckeElement, y: &AdelicHeckeElement) -> Result<AdelicHeckeElement> {
        let mut out = AdelicHeckeElement::default();
        for (cx, nx) in &x.terms {
            for (cy, ny) in &y.terms {
                let primes: BTreeSet<u64> = cx.support.keys().chain(cy.support.keys()).copied().collect();
                let mut partial: Vec<(Vec<HeisLocalParams>, BigInt)> = vec![(Vec::new(), nx * ny)];
                for q in primes {
                    let local: Vec<(HeisLocalParams, BigInt)> = match (cx.support.get(&q), cy.support.get(&q)) {
                        (Some(a), None) | (None, Some(a)) => vec![(*a, BigInt::one())],
                        (Some(a), Some(b)) => {
                            let prod = self.mul(&HeisHeckeElement::local(*a), &HeisHeckeElement::local(*b))?;
                            prod.terms
                                .into_iter()
                                .map(|(c, n)| match c {
                                    HeisClass::Local(t) => (t, n),
                                    HeisClass::Global(_) => unreachable!("local product"),
                                })
                                .collect()
                        }
                        (None, None) => unreachable!("prime from a support"),
                    };
                    let mut next = Vec::with_capacity(partial.len() * local.len());
                    for (comps, n) in &partial {
                        for (t, m) in &local {
                            let mut c = comps.clone();
                            c.push(*t);
                            next.push((c, n * m));
                        }
                    }
                    partial = next;
                }
                for (comps, n) in partial {
                    out.add(AdelicCoset::new(comps)?, n);
                }
            }
        }
        Ok(out)
    }

    /// Global double cosets lying over `c`: the vector orbit under the full
    /// product of local level groups, split into orbits of the integral
    /// stabilizer group.
    pub fn eta_fiber(&mut self, c: &AdelicCoset) -> Result<Vec<HeisDoubleCoset>> {
        let (ch, x) = adelic_point(c, &self.budget)?;
        let full = orbit(ch, &generators(ch, GroupKind::Full), x, &self.budget)?;
        let mut out: Vec<HeisDoubleCoset> = split_orbits(ch, &generators(ch, GroupKind::DetPm), &full)
            .into_iter()
            .map(|o| HeisDoubleCoset { d: (ch.d1, ch.d2), v: ch.point(o[0]) })
            .collect();
        out.sort();
        Ok(out)
    }

    pub fn eta_star(&mut self, x: &AdelicHeckeElement) -> Result<HeisHeckeElement> {
        let mut out = HeisHeckeElement::zero(Locality::Global);
        for (c, n) in &x.terms {
            for g in self.eta_fiber(c)? {
                out.add(HeisClass::Global(g), n.clone())?;
            }
        }
        Ok(out)
    }

    /// The adelic double coset containing a global one: its local class at
    /// every prime dividing the determinant.
    pub fn adelic_class_of(&mut self, g: &HeisDoubleCoset) -> Result<AdelicCoset> {
        let ch = g.chain()?;
        let mut comps = Vec::new();
        for (q, m) in factor(ch.d2) {
            let l = valuation(ch.d1, q);
            let local = Chain { d1: pow(q, l), d2: pow(q, m) };
            // diag[d1, d2] is a q-adic unit diagonal times diag[q^l, q^m];
            // that unit diagonal lies in the local level group.
            let engine = self.engine(Locality::Local { p: q });
            let id = engine.class_of_point(local, g.v.0 % local.d1, g.v.1 % local.d2)?;
            comps.push(params_of_class(engine, id)?);
        }
        AdelicCoset::new(comps)
    }

    /// Whether `target` is in the image of `eta*`. Images of basis cosets
    /// are sums over disjoint fibers, so an element is an image exactly when
    /// its coefficients are constant on every fiber it meets.
    pub fn in_eta_image(&mut self, target: &HeisHeckeElement) -> Result<bool> {
        if target.locality != Locality::Global {
            return Err(HeckeError::LocalityMismatch("the image of eta* is global".into()));
        }
        let target = self.normalize(target)?;
        let mut checked = BTreeSet::new();
        for c in target.terms.keys() {
            let HeisClass::Global(g) = c else { unreachable!("global element") };
            let a = self.adelic_class_of(g)?;
            if !checked.insert(a.clone()) {
                continue;
            }
            let fiber = self.eta_fiber(&a)?;
            let w = target.coeff(c);
            if fiber.iter().any(|f| target.coeff(&HeisClass::Global(*f)) != w) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First pair of local classes with `|det| <= p^4` whose products in
    /// both orders differ, scanning classes in increasing order.
    pub fn noncommutativity_witness(&mut self, p: u64) -> Result<NoncommutativityWitness> {
        let classes = local_classes(p, 4, &self.budget)?;
        for (n, a) in classes.iter().enumerate() {
            for b in &classes[n + 1..] {
                let u = HeisHeckeElement::local(*a);
                let v = HeisHeckeElement::local(*b);
                let uv = self.mul(&u, &v)?;
                let vu = self.mul(&v, &u)?;
                if uv != vu {
                    return Ok(NoncommutativityWitness { u, v, uv, vu });
                }
            }
        }
        Err(HeckeError::WitnessNotFound(p))
    }

    /// The certificate at `(l, k, j, i) = (3, 6, 0, 3)` for `p = 2` and
    /// `(2, 4, 0, 2)` otherwise.
    pub fn nonsurjectivity_witness(&mut self, p: u64) -> Result<Certificate> {
        let (l, k, j, i) = if p == 2 { (3, 6, 0, 3) } else { (2, 4, 0, 2) };
        let params = HeisLocalParams::new(p, l, k, j, i)?;
        let coset = AdelicCoset::at(params)?;
        let fiber = self.eta_fiber(&coset)?;
        let n = formula_exponent(l, k, i, j);
        let expected = index_u0_pm_un(p, l, n)?;
        let mut local_ok = true;
        for g in &fiber {
            local_ok &= self.adelic_class_of(g)? == coset;
        }
        let distinguished = *fiber.first().ok_or_else(|| HeckeError::FormulaMismatch("empty fiber".into()))?;
        let mut sum = HeisHeckeElement::zero(Locality::Global);
        for g in &fiber {
            sum.add(HeisClass::Global(*g), BigInt::one())?;
        }
        let fiber_sum_in_image = self.in_eta_image(&sum)?;
        let distinguished_in_image = self.in_eta_image(&HeisHeckeElement::global(distinguished))?;
        Ok(Certificate {
            p,
            params: CertificateParams { l, k, j, i },
            coset,
            fiber_size: fiber.len(),
            fiber,
            distinguished,
            checks: CertificateChecks {
                fiber_size_expected: expected,
                formula: "[U0 : ±Un]".into(),
                n,
                local_components_match: local_ok,
                fiber_sum_in_image,
                distinguished_in_image,
            },
        })
    }
}

/// Chain and CRT-combined vector `(p^j, p^(i+j))` over the support.
fn adelic_point(c: &AdelicCoset, budget: &Budget) -> Result<(Chain, (u64, u64))> {
    let (mut d1, mut d2, mut x, mut y) = (1u64, 1u64, 0u64, 0u64);
    for t in c.support.values() {
        let local = t.chain();
        let size = (d1 as u128 * d2 as u128) * local.size() as u128;
        budget.check_det("eta fiber", size)?;
        let (px, py) = t.point();
        x = crt_lift(px, x, local.d1, d1 * local.d1);
        y = crt_lift(py, y, local.d2, d2 * local.d2);
        d1 *= local.d1;
        d2 *= local.d2;
    }
    Ok((Chain { d1, d2 }, (x, y)))
}

pub fn hecke_mul(x: &HeisHeckeElement, y: &HeisHeckeElement, budget: &Budget) -> Result<HeisHeckeElement> {
    HeisRing::new(*budget).mul(x, y)
}

pub fn adelic_mul(x: &AdelicHeckeElement, y: &AdelicHeckeElement, budget: &Budget) -> Result<AdelicHeckeElement> {
    HeisRing::new(*budget).adelic_mul(x, y)
}

pub fn eta_fiber(c: &AdelicCoset, budget: &Budget) -> Result<Vec<HeisDoubleCoset>> {
    HeisRing::new(*budget).eta_fiber(c)
}

pub fn eta_star(x: &AdelicHeckeElement, budget: &Budget) -> Result<HeisHeckeElement> {
    HeisRing::new(*budget).eta_star(x)
}

pub fn noncommutativity_witness(p: u64, budget: &Budget) -> Result<NoncommutativityWitness> {
    HeisRing::new(*budget).noncommutativity_witness(p)
}

pub fn nonsurjectivity_witness(p: u64, budget: &Budget) -> Result<Certificate> {
    HeisRing::new(*budget).nonsurjectivity_witness(p)
}
