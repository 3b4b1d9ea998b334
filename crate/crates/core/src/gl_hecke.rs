//! The classical Hecke rings of `(GL2(Z), M2(Z) ∩ GL2(Q))` and of its
//! localization at a prime. Double cosets are keyed by elementary divisors;
//! products are computed by multiplying left-coset representatives and
//! grouping by Hermite form.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::action::Chain;
use crate::engine::hermite_forms_of_type;
use crate::error::{HeckeError, Result};
use crate::json::{dec_big, DecInt};
use crate::linalg::{snf, IntMatrix};
use crate::residue::{p_adic_exponent, Budget};
use crate::small::M2;

/// Where double cosets live: over `Z`, or over `Z_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Locality {
    Global,
    Local {
        #[serde(with = "crate::json::dec")]
        p: u64,
    },
}

impl Locality {
    pub fn local(p: u64) -> Result<Self> {
        if !crate::residue::is_prime(p) {
            return Err(HeckeError::invalid(format!("{p} is not prime")));
        }
        Ok(Locality::Local { p })
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Locality::Global => None,
            Locality::Local { p } => Some(*p),
        }
    }
}

/// `Gamma diag[d1, d2] Gamma`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GlDoubleCoset {
    pub divisors: (BigInt, BigInt),
    pub locality: Locality,
}

impl GlDoubleCoset {
    pub fn new(d1: BigInt, d2: BigInt, locality: Locality) -> Result<Self> {
        if !d1.is_positive() || !d2.is_positive() || !(&d2 % &d1).is_zero() {
            return Err(HeckeError::invalid(format!("({d1}, {d2}) is not a divisor chain")));
        }
        if let Locality::Local { p } = locality {
            for d in [&d1, &d2] {
                if d.to_u64().and_then(|d| p_adic_exponent(d, p)).is_none() {
                    return Err(HeckeError::NotLocallyIntegral { det: d.to_string(), p });
                }
            }
        }
        Ok(GlDoubleCoset { divisors: (d1, d2), locality })
    }

    pub fn from_u64(d1: u64, d2: u64, locality: Locality) -> Result<Self> {
        Self::new(d1.into(), d2.into(), locality)
    }

    fn chain(&self, budget: &Budget) -> Result<Chain> {
        let n = &self.divisors.0 * &self.divisors.1;
        let size = n.to_u64().unwrap_or(u64::MAX);
        budget.check_det("GL2 coset enumeration", size as u128)?;
        Chain::new(self.divisors.0.to_u64().unwrap(), self.divisors.1.to_u64().unwrap())
    }
}

/// Integer combination of double cosets of one locality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlHeckeElement {
    locality: Locality,
    terms: BTreeMap<GlDoubleCoset, BigInt>,
}

impl GlHeckeElement {
    pub fn zero(locality: Locality) -> Self {
        GlHeckeElement { locality, terms: BTreeMap::new() }
    }

    pub fn basis(c: GlDoubleCoset) -> Self {
        let mut e = Self::zero(c.locality);
        e.terms.insert(c, BigInt::one());
        e
    }

    pub fn identity(locality: Locality) -> Self {
        Self::basis(GlDoubleCoset { divisors: (BigInt::one(), BigInt::one()), locality })
    }

    pub fn from_terms(locality: Locality, terms: impl IntoIterator<Item = (GlDoubleCoset, BigInt)>) -> Result<Self> {
        let mut e = Self::zero(locality);
        for (c, n) in terms {
            e.add(c, n)?;
        }
        Ok(e)
    }

    pub fn add(&mut self, c: GlDoubleCoset, n: BigInt) -> Result<()> {
        if c.locality != self.locality {
            return Err(HeckeError::LocalityMismatch(format!("{:?} term in a {:?} element", c.locality, self.locality)));
        }
        let e = self.terms.entry(c.clone()).or_insert_with(BigInt::zero);
        *e += n;
        if e.is_zero() {
            self.terms.remove(&c);
        }
        Ok(())
    }

    pub fn locality(&self) -> Locality {
        self.locality
    }

    pub fn terms(&self) -> &BTreeMap<GlDoubleCoset, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, c: &GlDoubleCoset) -> BigInt {
        self.terms.get(c).cloned().unwrap_or_default()
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    divisors: [DecInt; 2],
    #[serde(with = "dec_big")]
    coeff: BigInt,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    locality: Locality,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct CosetJson {
    divisors: [DecInt; 2],
    locality: Locality,
}

impl Serialize for GlDoubleCoset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let divisors = [DecInt(self.divisors.0.clone()), DecInt(self.divisors.1.clone())];
        CosetJson { divisors, locality: self.locality }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GlDoubleCoset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CosetJson::deserialize(d)?;
        let [a, b] = raw.divisors;
        GlDoubleCoset::new(a.0, b.0, raw.locality).map_err(serde::de::Error::custom)
    }
}

impl Serialize for GlHeckeElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|(c, n)| TermJson { divisors: [DecInt(c.divisors.0.clone()), DecInt(c.divisors.1.clone())], coeff: n.clone() })
            .collect();
        ElementJson { locality: self.locality, terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GlHeckeElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementJson::deserialize(d)?;
        let mut e = GlHeckeElement::zero(raw.locality);
        for t in raw.terms {
            let [a, b] = t.divisors;
            let c = GlDoubleCoset::new(a.0, b.0, raw.locality).map_err(serde::de::Error::custom)?;
            e.add(c, t.coeff).map_err(serde::de::Error::custom)?;
        }
        Ok(e)
    }
}

/// Elementary divisors of `m`, as a double coset of the given locality.
pub fn gl_canonicalize(m: &IntMatrix, locality: Locality) -> Result<GlDoubleCoset> {
    if m.dim() != 2 {
        return Err(HeckeError::NotInMonoid("expected a 2x2 matrix".into()));
    }
    let s = snf(m).map_err(|_| HeckeError::NotInMonoid(format!("{m:?} is singular")))?;
    GlDoubleCoset::new(s.d[0].clone(), s.d[1].clone(), locality).map_err(|e| match e {
        HeckeError::NotLocallyIntegral { .. } => HeckeError::NotInMonoid(format!("{m:?}: {e}")),
        other => other,
    })
}

fn small_cosets(c: &GlDoubleCoset, budget: &Budget) -> Result<Vec<M2>> {
    Ok(hermite_forms_of_type(c.chain(budget)?))
}

fn to_int(m: &M2) -> IntMatrix {
    IntMatrix::from_i64(&[&[m.a, m.b], &[m.c, m.d]])
}

/// Hermite-form representatives of the left cosets in `c`.
pub fn gl_left_cosets(c: &GlDoubleCoset, budget: &Budget) -> Result<Vec<IntMatrix>> {
    Ok(small_cosets(c, budget)?.iter().map(to_int).collect())
}

pub fn gl_degree(c: &GlDoubleCoset, budget: &Budget) -> Result<u64> {
    Ok(small_cosets(c, budget)?.len() as u64)
}

/// Coefficient-weighted degree.
pub fn gl_element_degree(x: &GlHeckeElement, budget: &Budget) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for (c, n) in &x.terms {
        total += n * BigInt::from(gl_degree(c, budget)?);
    }
    Ok(total)
}

fn mul_basis(x: &GlDoubleCoset, y: &GlDoubleCoset, budget: &Budget) -> Result<Vec<(GlDoubleCoset, u64)>> {
    let lx = small_cosets(x, budget)?;
    let ly = small_cosets(y, budget)?;
    let n = (&x.divisors.0 * &x.divisors.1) * (&y.divisors.0 * &y.divisors.1);
    budget.check_det("GL2 Hecke product", n.to_u128().unwrap_or(u128::MAX))?;
    budget.check_steps("GL2 pairwise coset products", lx.len() as u128 * ly.len() as u128)?;
    let mut counts: HashMap<M2, u64> = HashMap::new();
    for a in &lx {
        for b in &ly {
            let (h, _) = a.mul(b).and_then(|ab| ab.hnf_left()).expect("bounded by the det budget");
            *counts.entry(h).or_default() += 1;
        }
    }
    let mut per_class: BTreeMap<(i64, i64), u64> = BTreeMap::new();
    for (h, cnt) in counts {
        let d1 = crate::small::gcd_i(crate::small::gcd_i(h.a as i128, h.b as i128), h.d as i128) as i64;
        let d2 = h.a * h.d / d1;
        if let Some(&prev) = per_class.get(&(d1, d2)) {
            if prev != cnt {
                return Err(HeckeError::FormulaMismatch(format!(
                    "left cosets of ({d1}, {d2}) received {prev} and {cnt} products"
                )));
            }
        }
        per_class.insert((d1, d2), cnt);
    }
    per_class
        .into_iter()
        .map(|((d1, d2), cnt)| Ok((GlDoubleCoset::from_u64(d1 as u64, d2 as u64, x.locality)?, cnt)))
        .collect()
}

/// Hecke product by left-coset counting, extended bilinearly.
pub fn gl_hecke_mul(x: &GlHeckeElement, y: &GlHeckeElement, budget: &Budget) -> Result<GlHeckeElement> {
    if x.locality != y.locality {
        return Err(HeckeError::LocalityMismatch(format!("{:?} times {:?}", x.locality, y.locality)));
    }
    let mut out = GlHeckeElement::zero(x.locality);
    for (cx, nx) in &x.terms {
        for (cy, ny) in &y.terms {
            for (c, m) in mul_basis(cx, cy, budget)? {
                out.add(c, nx * ny * BigInt::from(m))?;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn local(p: u64, d1: u64, d2: u64) -> GlDoubleCoset {
        GlDoubleCoset::from_u64(d1, d2, Locality::Local { p }).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let g = Locality::Global;
        let c = gl_canonicalize(&IntMatrix::from_i64(&[&[1, 2], &[3, 4]]), g).unwrap();
        assert_eq!(c.divisors, (1.into(), 2.into()));
        let l3 = Locality::Local { p: 3 };
        assert_eq!(gl_canonicalize(&IntMatrix::from_i64(&[&[3, 0], &[0, 3]]), l3).unwrap(), local(3, 3, 3));
        assert!(matches!(
            gl_canonicalize(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]), l3),
            Err(HeckeError::NotInMonoid(_))
        ));
        assert!(gl_canonicalize(&IntMatrix::from_i64(&[&[1, 2], &[2, 4]]), g).is_err());
    }

    #[test]
    fn left_cosets_of_index_p() {
        let b = Budget::default();
        for p in [2i64, 3, 5] {
            let reps = gl_left_cosets(&local(p as u64, 1, p as u64), &b).unwrap();
            let mut want: Vec<IntMatrix> = (0..p).map(|x| IntMatrix::from_i64(&[&[1, x], &[0, p]])).collect();
            want.push(IntMatrix::from_i64(&[&[p, 0], &[0, 1]]));
            let key = |m: &IntMatrix| format!("{m:?}");
            let mut got = reps.clone();
            got.sort_by_key(key);
            want.sort_by_key(key);
            assert_eq!(got, want);
            assert_eq!(gl_degree(&local(p as u64, p as u64, p as u64), &b).unwrap(), 1);
            assert_eq!(gl_degree(&local(p as u64, 1, (p * p) as u64), &b).unwrap(), (p * p + p) as u64);
        }
    }

    #[test]
    fn square_of_index_p() {
        let b = Budget::default();
        for p in [2u64, 3, 5] {
            let t = GlHeckeElement::basis(local(p, 1, p));
            let sq = gl_hecke_mul(&t, &t, &b).unwrap();
            let want = GlHeckeElement::from_terms(
                Locality::Local { p },
                [(local(p, 1, p * p), BigInt::one()), (local(p, p, p), BigInt::from(p + 1))],
            )
            .unwrap();
            assert_eq!(sq, want);
        }
    }

    #[test]
    fn scalar_and_identity() {
        let b = Budget::default();
        let l = Locality::Local { p: 3 };
        let s = GlHeckeElement::basis(local(3, 3, 3));
        let t = GlHeckeElement::basis(local(3, 1, 3));
        assert_eq!(gl_hecke_mul(&s, &t, &b).unwrap(), GlHeckeElement::basis(local(3, 3, 9)));
        assert_eq!(gl_hecke_mul(&GlHeckeElement::identity(l), &t, &b).unwrap(), t);
    }

    #[test]
    fn coprime_global_product() {
        let b = Budget::default();
        let g = Locality::Global;
        let x = GlHeckeElement::basis(GlDoubleCoset::from_u64(1, 2, g).unwrap());
        let y = GlHeckeElement::basis(GlDoubleCoset::from_u64(1, 3, g).unwrap());
        let want = GlHeckeElement::basis(GlDoubleCoset::from_u64(1, 6, g).unwrap());
        assert_eq!(gl_hecke_mul(&x, &y, &b).unwrap(), want);
        assert_eq!(gl_hecke_mul(&y, &x, &b).unwrap(), want);
    }

    #[test]
    fn locality_mismatch() {
        let x = GlHeckeElement::identity(Locality::Global);
        let y = GlHeckeElement::identity(Locality::Local { p: 2 });
        assert!(matches!(gl_hecke_mul(&x, &y, &Budget::default()), Err(HeckeError::LocalityMismatch(_))));
    }

    #[test]
    fn json_round_trip() {
        let x = GlHeckeElement::from_terms(
            Locality::Local { p: 2 },
            [(local(2, 1, 4), BigInt::one()), (local(2, 2, 2), BigInt::from(3))],
        )
        .unwrap();
        let s = crate::json::to_canonical_string(&x).unwrap();
        assert_eq!(
            s,
            r#"{"locality":{"kind":"local","p":"2"},"terms":[{"coeff":"1","divisors":["1","4"]},{"coeff":"3","divisors":["2","2"]}]}"#
        );
        assert_eq!(crate::json::from_str::<GlHeckeElement>(&s).unwrap(), x);
        assert!(crate::json::from_str::<GlHeckeElement>(r#"{"locality":{"kind":"local","p":"2"},"terms":[{"coeff":"1","divisors":["1","3"]}]}"#).is_err());
    }
}
