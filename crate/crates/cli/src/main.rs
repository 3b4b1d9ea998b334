use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hecke_core::gl_hecke::{gl_degree, gl_hecke_mul, gl_left_cosets, GlDoubleCoset, GlHeckeElement, Locality};
use hecke_core::heis::{h_double_coset_canonical, h_left_canonical, h_local_canonical, HeisElement, HeisLocalParams};
use hecke_core::heis_hecke::{AdelicCoset, HeisHeckeElement, HeisRing, ProductMethod};
use hecke_core::json::{from_str, to_canonical_pretty};
use hecke_core::linalg::{snf, IntMatrix};
use hecke_core::orbit_lab::fiber_count;
use hecke_core::verify::{run_suite, Suite, SuiteConfig};
use hecke_core::{Budget, HeckeError, Result};

/// Hecke rings of GL2 and of the Heisenberg monoid: products, canonical
/// forms, fiber counts and verification sweeps, all as JSON.
#[derive(Parser)]
#[command(name = "hecke", version)]
struct Cli {
    /// Step budget for enumerations.
    #[arg(long, global = true, env = "HECKE_BUDGET")]
    budget: Option<u64>,
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Smith normal form `u * m * v = diag(d)`.
    Snf {
        /// Square integer matrix, e.g. "[[1,2],[3,4]]"; `@path` reads a file.
        #[arg(long)]
        matrix: String,
    },
    /// Left coset representatives of `Gamma diag[d1, d2] Gamma` in GL2.
    GlCosets {
        #[arg(long)]
        d1: u64,
        #[arg(long)]
        d2: u64,
        /// Work in the local ring at this prime.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Product of two GL2 Hecke elements.
    GlMul {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Canonical forms of a Heisenberg monoid element `{mat, vec}`.
    HeisCanon {
        #[arg(long)]
        elem: String,
        /// Also give the local class at this prime.
        #[arg(long)]
        p: Option<u64>,
    },
    /// Product of two Heisenberg Hecke elements of the same locality.
    HeisMul {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Orbit, stabilizer and fiber count at `a = (p^j, p^(i+j))`.
    Orbit(LocalArgs),
    /// Global double cosets above an adelic double coset.
    Fiber {
        /// Adelic coset `{support: [...]}`; overrides the parameter flags.
        #[arg(long)]
        coset: Option<String>,
        #[command(flatten)]
        local: OptLocalArgs,
    },
    /// Certificate that the adelic-to-global map is not onto.
    Witness {
        #[arg(long)]
        p: u64,
    },
    /// Run a verification sweep.
    Verify {
        #[arg(long)]
        suite: String,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',')]
        pset: Option<Vec<u64>>,
        #[arg(long)]
        lmax: Option<u32>,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        p: Option<u64>,
        /// Heisenberg sweeps use classes with `|det| <= p^max_exp`.
        #[arg(long)]
        max_exp: Option<u32>,
    },
}

#[derive(Args)]
struct LocalArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    l: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    i: u32,
    #[arg(long)]
    j: u32,
}

#[derive(Args)]
struct OptLocalArgs {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    i: Option<u32>,
    #[arg(long)]
    j: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Pairwise,
    Shuffled,
    Membership,
}

fn read_arg(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| HeckeError::InvalidInput(format!("{path}: {e}"))),
        None => Ok(s.to_string()),
    }
}

fn parse<T: serde::de::DeserializeOwned>(s: &str) -> Result<T> {
    from_str(&read_arg(s)?)
}

fn value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn locality(p: Option<u64>) -> Result<Locality> {
    p.map_or(Ok(Locality::Global), Locality::local)
}

/// The document to print, and whether it reports a failed check.
fn dispatch(cli: &Cli) -> Result<(Value, bool)> {
    let budget = cli.budget.map_or_else(Budget::default, Budget::with_steps);
    let ok = |v: Value| Ok((v, true));
    match &cli.command {
        Command::Snf { matrix } => {
            let m: IntMatrix = parse(matrix)?;
            ok(value(&snf(&m)?))
        }
        Command::GlCosets { d1, d2, p } => {
            let c = GlDoubleCoset::from_u64(*d1, *d2, locality(*p)?)?;
            let cosets = gl_left_cosets(&c, &budget)?;
            ok(json!({
                "coset": value(&c),
                "degree": gl_degree(&c, &budget)?.to_string(),
                "cosets": value(&cosets),
            }))
        }
        Command::GlMul { x, y } => {
            let x: GlHeckeElement = parse(x)?;
            let y: GlHeckeElement = parse(y)?;
            ok(value(&gl_hecke_mul(&x, &y, &budget)?))
        }
        Command::HeisCanon { elem, p } => {
            let x: HeisElement = parse(elem)?;
            let mut doc = json!({
                "left": value(&h_left_canonical(&x)?),
                "double_coset": value(&h_double_coset_canonical(&x, &budget)?),
            });
            if let Some(p) = p {
                locality(Some(*p))?;
                doc["local"] = value(&h_local_canonical(&x, *p, &budget)?);
            }
            ok(doc)
        }
        Command::HeisMul { x, y, method } => {
            let x: HeisHeckeElement = parse(x)?;
            let y: HeisHeckeElement = parse(y)?;
            let method = match method {
                Method::Auto => ProductMethod::Auto,
                Method::Pairwise => ProductMethod::Pairwise,
                Method::Shuffled => ProductMethod::Shuffled { seed: cli.seed },
                Method::Membership => ProductMethod::Membership,
            };
            ok(value(&HeisRing::new(budget).mul_with(&x, &y, method)?))
        }
        Command::Orbit(a) => {
            locality(Some(a.p))?;
            let r = fiber_count(a.p, a.l, a.k, a.i, a.j, &budget)?;
            let pass = r.matches;
            Ok((value(&r), pass))
        }
        Command::Fiber { coset, local } => {
            let c: AdelicCoset = match coset {
                Some(s) => parse(s)?,
                None => {
                    let missing = || HeckeError::InvalidInput("need --coset or all of --p --l --k --i --j".into());
                    let p = local.p.ok_or_else(missing)?;
                    locality(Some(p))?;
                    let params = HeisLocalParams::new(
                        p,
                        local.l.ok_or_else(missing)?,
                        local.k.ok_or_else(missing)?,
                        local.j.ok_or_else(missing)?,
                        local.i.ok_or_else(missing)?,
                    )?;
                    AdelicCoset::at(params)?
                }
            };
            let fiber = HeisRing::new(budget).eta_fiber(&c)?;
            ok(json!({
                "coset": value(&c),
                "fiber": value(&fiber),
                "fiber_size": fiber.len().to_string(),
            }))
        }
        Command::Witness { p } => {
            locality(Some(*p))?;
            let c = HeisRing::new(budget).nonsurjectivity_witness(*p)?;
            let pass = c.holds();
            Ok((value(&c), pass))
        }
        Command::Verify { suite, pset, lmax, kmax, p, max_exp } => {
            let suite: Suite = suite.parse()?;
            let cfg = SuiteConfig {
                primes: pset.clone(),
                lmax: *lmax,
                kmax: *kmax,
                p: *p,
                max_exp: *max_exp,
                seed: cli.seed,
            };
            let r = run_suite(suite, &cfg, &budget)?;
            let pass = r.pass;
            Ok((value(&r), pass))
        }
    }
}

fn exit_code(e: &HeckeError) -> u8 {
    match e {
        HeckeError::FormulaMismatch(_) | HeckeError::WitnessNotFound(_) => 1,
        HeckeError::SizeLimit { .. } | HeckeError::BudgetExhausted(_) => 3,
        _ => 2,
    }
}

fn error_doc(kind: &str, message: &str) -> Value {
    json!({"error": {"kind": kind, "message": message}})
}

fn emit(doc: &Value, out: Option<&PathBuf>) -> std::result::Result<(), String> {
    let text = to_canonical_pretty(doc).map_err(|e| e.to_string())? + "\n";
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = emit(&error_doc("InvalidInput", e.to_string().trim()), None);
            return ExitCode::from(2);
        }
    };
    let (doc, code) = match dispatch(&cli) {
        Ok((doc, true)) => (doc, 0),
        Ok((doc, false)) => (doc, 1),
        Err(e) => (error_doc(e.kind(), &e.to_string()), exit_code(&e)),
    };
    if let Err(msg) = emit(&doc, cli.out.as_ref()) {
        let _ = emit(&error_doc("InvalidInput", &msg), None);
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
