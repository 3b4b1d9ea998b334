//! Verification sweeps shared by the command line and the test suites.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{HeckeError, Result};
use crate::gl_hecke::{gl_element_degree, gl_hecke_mul, GlDoubleCoset, GlHeckeElement, Locality};
use crate::heis::{local_classes, HeisLocalParams};
use crate::heis_hecke::{AdelicCoset, AdelicHeckeElement, HeisRing, ProductMethod};
use crate::orbit_lab::{fiber_count, formula_exponent, integral_surjectivity_check, stab_det_exponent};
use crate::residue::{is_prime, pow, Budget};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Detsa,
    FiberCounts,
    Surjectivity,
    Commute,
    Noncommute,
    EtaMult,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Detsa, Suite::FiberCounts, Suite::Surjectivity, Suite::Commute, Suite::Noncommute, Suite::EtaMult];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Detsa => "detsa",
            Suite::FiberCounts => "cor47",
            Suite::Surjectivity => "surjectivity",
            Suite::Commute => "commute",
            Suite::Noncommute => "noncommute",
            Suite::EtaMult => "eta-mult",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = HeckeError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| HeckeError::invalid(format!("unknown suite {s:?}")))
    }
}

/// Sweep bounds. Unset fields fall back to each suite's defaults.
#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub primes: Option<Vec<u64>>,
    pub lmax: Option<u32>,
    pub kmax: Option<u32>,
    /// Prime for single-prime suites.
    pub p: Option<u64>,
    /// Classes with `|det| <= p^max_exp` enter the Heisenberg sweeps.
    pub max_exp: Option<u32>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub case: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    #[serde(with = "crate::json::dec")]
    pub passed: usize,
    #[serde(with = "crate::json::dec")]
    pub failed: usize,
    pub pass: bool,
}

impl SuiteReport {
    fn new(suite: &str, cases: Vec<CaseResult>) -> Self {
        let passed = cases.iter().filter(|c| c.pass).count();
        let failed = cases.len() - passed;
        SuiteReport { suite: suite.into(), cases, passed, failed, pass: failed == 0 }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

fn primes(cfg: &SuiteConfig, default: &[u64]) -> Result<Vec<u64>> {
    let ps = cfg.primes.clone().unwrap_or_else(|| default.to_vec());
    if let Some(q) = ps.iter().find(|&&q| !is_prime(q)) {
        return Err(HeckeError::invalid(format!("{q} is not prime")));
    }
    Ok(ps)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Mismatches become failed cases; anything else aborts the sweep.
fn case<T: Serialize>(case: Value, r: Result<T>, pass: impl FnOnce(&T) -> bool) -> Result<CaseResult> {
    match r {
        Ok(t) => Ok(CaseResult { case, pass: pass(&t), detail: Some(to_value(&t)) }),
        Err(HeckeError::FormulaMismatch(m)) => Ok(CaseResult { case, pass: false, detail: Some(json!(m)) }),
        Err(e) => Err(e),
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig, budget: &Budget) -> Result<SuiteReport> {
    match suite {
        Suite::Detsa => detsa(cfg, budget),
        Suite::FiberCounts => fiber_counts(cfg, budget),
        Suite::Surjectivity => surjectivity(cfg, budget),
        Suite::Commute => commute(cfg, budget),
        Suite::Noncommute => noncommute(cfg, budget),
        Suite::EtaMult => eta_mult(cfg, budget),
    }
}

fn grid(cfg: &SuiteConfig) -> Result<Vec<(u64, u32, u32, u32, u32)>> {
    let (lmax, kmax) = (cfg.lmax.unwrap_or(3), cfg.kmax.unwrap_or(4));
    let mut out = Vec::new();
    for p in primes(cfg, &[2, 3])? {
        for l in 0..=lmax {
            for k in 0..=kmax {
                for j in 0..=l {
                    for i in 0..=k {
                        out.push((p, l, k, i, j));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Stabilizer determinant images against `U_min(i, k-i, l-j)`.
pub fn detsa(cfg: &SuiteConfig, budget: &Budget) -> Result<SuiteReport> {
    let mut cases = Vec::new();
    for (p, l, k, i, j) in grid(cfg)? {
        let label = json!({"p": p.to_string(), "l": l.to_string(), "k": k.to_string(), "i": i.to_string(), "j": j.to_string()});
        let want = formula_exponent(l, k, i, j);
        cases.push(case(label, stab_det_exponent(p, l, k, i, j, budget).map(|n| n.to_string()), |n| {
            *n == want.to_string()
        })?);
    }
    Ok(SuiteReport::new("detsa", cases))
}

/// `G^+-` orbit counts on `G_{l,k} a` against `[U_0 : +-U_n]`.
pub fn fiber_counts(cfg: &SuiteConfig, budget: &Budget) -> Result<SuiteReport> {
    let mut cases = Vec::new();
    for (p, l, k, i, j) in grid(cfg)? {
        let label = json!({"p": p.to_string(), "l": l.to_string(), "k": k.to_string(), "i": i.to_string(), "j": j.to_string()});
        cases.push(case(label, fiber_count(p, l, k, i, j, budget), |r| r.matches)?);
    }
    Ok(SuiteReport::new("cor47", cases))
}

pub const SURJECTIVITY_CASES: [(u64, u32, u32); 4] = [(2, 1, 1), (2, 2, 2), (3, 1, 1), (3, 2, 4)];

/// Closure of reduced integral matrices against `G^+-` and `G^1`. Without
/// explicit bounds the four standard shapes are checked.
pub fn surjectivity(cfg: &SuiteConfig, budget: &Budget) -> Result<SuiteReport> {
    let shapes: Vec<(u64, u32, u32)> = if cfg.primes.is_none() && cfg.lmax.is_none() && cfg.kmax.is_none() {
        SURJECTIVITY_CASES.to_vec()
    } else {
        let mut v = Vec::new();
        for p in primes(cfg, &[2, 3])? {
            for l in 0..=cfg.lmax.unwrap_or(2) {
                for k in 0..=cfg.kmax.unwrap_or(2) {
                    v.push((p, l, k));
                }
            }
        }
        v
    };
    let mut cases = Vec::new();
    for (p, l, k) in shapes {
        let label = json!({"p": p.to_string(), "l": l.to_string(), "k": k.to_string()});
        cases.push(case(label, integral_surjectivity_check(p, l, k, 2, budget), |r| r.surjective)?);
    }
    Ok(SuiteReport::new("surjectivity", cases))
}

fn nontrivial_classes(p: u64, max_exp: u32, budget: &Budget) -> Result<Vec<HeisLocalParams>> {
    Ok(local_classes(p, max_exp, budget)?.into_iter().filter(|c| !c.is_identity()).collect())
}

fn label(c: &HeisLocalParams) -> Value {
    to_value(c)
}

/// Images of local classes at distinct primes commute in the global ring,
/// and their product is the image of the joint adelic coset.
pub fn commute(cfg: &SuiteConfig, budget: &Budget) -> Result<SuiteReport> {
    let ps = primes(cfg, &[2, 3])?;
    let e = cfg.max_exp.unwrap_or(4);
    let mut ring = HeisRing::new(*budget);
    let mut cases = Vec::new();
    for (n, &p) in ps.iter().enumerate() {
        for &q in &ps[n + 1..] {
            let cp = nontrivial_classes(p, e, budget)?;
            let cq = nontrivial_classes(q, e, budget)?;
            for u in &cp {
                let eu = ring.eta_star(&AdelicHeckeElement::embed(*u)?)?;
                for v in &cq {
                    let ev = ring.eta_star(&AdelicHeckeElement::embed(*v)?)?;
                    let uv = ring.mul(&eu, &ev)?;
                    let vu = ring.mul(&ev, &eu)?;
                    let joint = ring.eta_star(&AdelicHeckeElement::basis(AdelicCoset::new([*u, *v])?))?;
                    let commutes = uv == vu;
                    let factorizes = uv == joint;
                    cases.push(CaseResult {
                        case: json!({"u": label(u), "v": label(v)}),
                        pass: commutes && factorizes,
                        detail: (!(commutes && factorizes)).then(|| json!({"commutes": commutes, "factorizes": factorizes})),
                    });
                }
            }
        }
    }
    Ok(SuiteReport::new("commute", cases))
}

/// A noncommuting pair of local classes, with both products recomputed
/// from shuffled random representatives and by membership counting.
pub fn noncommute(cfg: &SuiteConfig, budget: &Budget) -> Result<SuiteReport> {
    let ps = match cfg.p {
        Some(p) => vec![p],
        None => primes(cfg, &[2])?,
    };
    let mut ring = HeisRing::new(*budget);
    let mut cases = Vec::new();
    for p in ps {
        if !is_prime(p) {
            return Err(HeckeError::invalid(format!("{p} is not prime")));
        }
        let w = ring.noncommutativity_witness(p)?;
        let mut stable = true;
        for method in [
            ProductMethod::Shuffled { seed: cfg.seed },
            ProductMethod::Shuffled { seed: cfg.seed.wrapping_add(1) },
            ProductMethod::Pairwise,
            ProductMethod::Membership,
        ] {
            let uv = ring.mul_with(&w.u, &w.v, method)?;
            let vu = ring.mul_with(&w.v, &w.u, method)?;
            stable &= uv == w.uv && vu == w.vu;
        }
        let du = ring.degree(&w.u)?;
        let dv = ring.degree(&w.v)?;
        let degrees = ring.degree(&w.uv)? == &du * &dv && ring.degree(&w.vu)? == du * dv;
        cases.push(CaseResult {
            case: json!({"p": p.to_string()}),
            pass: w.uv != w.vu && stable && degrees,
            detail: Some(json!({"witness": to_value(&w), "representative_independent": stable, "degrees": degrees})),
        });
    }
    Ok(SuiteReport::new("noncommute", cases))
}

/// `eta*` on local classes: injective with `|det| <= p^max_exp`,
/// multiplicative on pairs with `|det| <= p^(max_exp / 2)`, and degree
/// preserving.
pub fn eta_mult(cfg: &SuiteConfig, budget: &Budget) -> Result<SuiteReport> {
    let ps = primes(cfg, &[2, 3])?;
    let e = cfg.max_exp.unwrap_or(4);
    let mut ring = HeisRing::new(*budget);
    let mut cases = Vec::new();
    for &p in &ps {
        let classes = local_classes(p, e, budget)?;
        let mut images = Vec::with_capacity(classes.len());
        let mut degrees_ok = true;
        for c in &classes {
            let a = AdelicHeckeElement::embed(*c)?;
            let img = ring.eta_star(&a)?;
            degrees_ok &= ring.degree(&img)? == ring.adelic_degree(&a)?;
            images.push(img);
        }
        let mut sorted: Vec<String> = images.iter().map(crate::json::to_canonical_string).collect::<Result<_>>()?;
        sorted.sort();
        sorted.dedup();
        let injective = sorted.len() == images.len() && images.iter().all(|x| !x.terms().is_empty());
        cases.push(CaseResult {
            case: json!({"check": "injective", "p": p.to_string(), "classes": classes.len().to_string()}),
            pass: injective && degrees_ok,
            detail: (!(injective && degrees_ok)).then(|| json!({"injective": injective, "degrees": degrees_ok})),
        });
        let small = local_classes(p, e / 2, budget)?;
        for x in &small {
            for y in &small {
                let ax = AdelicHeckeElement::embed(*x)?;
                let ay = AdelicHeckeElement::embed(*y)?;
                let xy = ring.adelic_mul(&ax, &ay)?;
                let lhs = ring.eta_star(&xy)?;
                let ex = ring.eta_star(&ax)?;
                let ey = ring.eta_star(&ay)?;
                let rhs = ring.mul(&ex, &ey)?;
                cases.push(CaseResult {
                    case: json!({"check": "multiplicative", "x": label(x), "y": label(y)}),
                    pass: lhs == rhs,
                    detail: (lhs != rhs).then(|| json!({"eta_of_product": to_value(&lhs), "product_of_etas": to_value(&rhs)})),
                });
            }
        }
    }
    Ok(SuiteReport::new("eta-mult", cases))
}

/// Result of the classical `GL_2` checks.
#[derive(Clone, Debug, Serialize)]
pub struct ClassicalReport {
    /// `(1,p)^2 = (1,p^2) + (p+1)(p,p)` for each prime checked.
    pub t_p_squared: Vec<(String, bool)>,
    #[serde(with = "crate::json::dec")]
    pub pairs: usize,
    #[serde(with = "crate::json::dec")]
    pub noncommuting: usize,
    #[serde(with = "crate::json::dec")]
    pub degree_failures: usize,
}

impl ClassicalReport {
    pub fn pass(&self) -> bool {
        self.t_p_squared.iter().all(|x| x.1) && self.noncommuting == 0 && self.degree_failures == 0
    }
}

fn random_gl_element<R: Rng>(rng: &mut R, locality: Locality) -> Result<GlHeckeElement> {
    let mut x = GlHeckeElement::zero(locality);
    for _ in 0..rng.gen_range(1..=2) {
        let (d1, d2) = match locality {
            Locality::Local { p } => {
                let a = rng.gen_range(0..=1);
                let b = rng.gen_range(0..=2);
                (pow(p, a), pow(p, a + b))
            }
            Locality::Global => {
                let d1 = rng.gen_range(1..=2u64);
                (d1, d1 * rng.gen_range(1..=6u64))
            }
        };
        let mut n = rng.gen_range(-3i64..=3);
        if n == 0 {
            n = 1;
        }
        x.add(GlDoubleCoset::from_u64(d1, d2, locality)?, BigInt::from(n))?;
    }
    Ok(x)
}

/// `(1,p)^2` at `p in {2,3,5}`, then `pairs` random pairs drawn from the
/// local rings at 2, 3, 5 and the global ring: commutativity and degree
/// multiplicativity.
pub fn classical_baseline(pairs: usize, seed: u64, budget: &Budget) -> Result<ClassicalReport> {
    let mut t_p_squared = Vec::new();
    for p in [2u64, 3, 5] {
        let loc = Locality::local(p)?;
        let t = GlHeckeElement::basis(GlDoubleCoset::from_u64(1, p, loc)?);
        let want = GlHeckeElement::from_terms(
            loc,
            [
                (GlDoubleCoset::from_u64(1, p * p, loc)?, BigInt::from(1)),
                (GlDoubleCoset::from_u64(p, p, loc)?, BigInt::from(p + 1)),
            ],
        )?;
        t_p_squared.push((p.to_string(), gl_hecke_mul(&t, &t, budget)? == want));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let localities = [Locality::Local { p: 2 }, Locality::Local { p: 3 }, Locality::Local { p: 5 }, Locality::Global];
    let (mut noncommuting, mut degree_failures) = (0, 0);
    for _ in 0..pairs {
        let loc = localities[rng.gen_range(0..localities.len())];
        let x = random_gl_element(&mut rng, loc)?;
        let y = random_gl_element(&mut rng, loc)?;
        let xy = gl_hecke_mul(&x, &y, budget)?;
        if xy != gl_hecke_mul(&y, &x, budget)? {
            noncommuting += 1;
        }
        if gl_element_degree(&xy, budget)? != gl_element_degree(&x, budget)? * gl_element_degree(&y, budget)? {
            degree_failures += 1;
        }
    }
    Ok(ClassicalReport { t_p_squared, pairs, noncommuting, degree_failures })
}
