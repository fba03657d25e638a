//! The `spinkin` command line.
//!
//! Every command prints one JSON document on standard output with a
//! top-level `"schema_version": 1` and `"command"`. Keys are sorted and
//! floats use shortest round-trip formatting, so equal inputs give
//! byte-identical output. Exit status: 0 on success, 1 when a `check` fails,
//! 2 on usage or input errors.

use std::ffi::OsString;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::Vector3;
use serde::Serialize;
use serde_json::{json, Value};

use crate::checks::{check_all, check_kinematic, CheckReport, DEFAULT_SAMPLES};
use crate::decomposition::{canonical_basis, decompose, helicity_basis};
use crate::dirac::boosted_spinors;
use crate::elko::{
    antilinear_family_ab, g_operator, g_operator_from_eigenbasis, helicity_origin_discontinuity, nogo_sweep,
    nogo_witness, rotation_invariant_pair, schur_conditions, Cx2Basis,
};
use crate::error::{Error, Result};
use crate::higher_spin::{
    contraction_identity_residual, extract_gamma_tensor, field_equation_residual, parity_spectrum,
};
use crate::kinematics::{parity_operator, FourMomentum, KinematicOperatorFamily};
use crate::linalg::{ToleranceConfig, C64};
use crate::lorentz::{rep_generators, HalfInt};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable overriding the default absolute and relative tolerance.
pub const TOL_ENV: &str = "SPINKIN_TOL";

#[derive(Debug, Parser)]
#[command(
    name = "spinkin",
    version,
    about = "Kinematic operators on (j,0)⊕(0,j): parity, field equations, Elko checks"
)]
struct Cli {
    /// Absolute and relative tolerance (overrides SPINKIN_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Accepted for explicitness; output is always JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Add wall-clock `runtime_ms` to check reports (breaks byte-identity).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rotation and boost generators and η of (j,0)⊕(0,j).
    Generators(SpinArg),
    /// The parity operator P(q) = exp(2i𝔎·φ)η.
    Parity(Kinematics),
    /// Boosted parity eigenspinors u_σ(q), v_σ(q).
    Spinors(Kinematics),
    /// P_j(q) as a field equation: matrix, spectrum, eigenspinor residuals.
    Fieldeq(Kinematics),
    /// Least-squares fit of the symmetric gamma tensor.
    Gammatensor(GammaArgs),
    /// Charge conjugation and the G(u,v) operator.
    #[command(subcommand)]
    Elko(ElkoCommand),
    /// γ^μ p_μ = m K(q) Ξ(q) for a chosen spinor basis.
    Decompose(DecomposeArgs),
    /// Residual suites with pass/fail exit status.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Debug, Args)]
struct SpinArg {
    /// Spin j, e.g. 1/2, 1, 3/2, 2.
    #[arg(long, value_parser = parse_spin)]
    spin: HalfInt,
}

#[derive(Debug, Args)]
struct Kinematics {
    /// Spin j, e.g. 1/2, 1, 3/2, 2.
    #[arg(long, value_parser = parse_spin)]
    spin: HalfInt,
    #[arg(long)]
    mass: f64,
    /// Three-momentum px,py,pz.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true, default_value = "0,0,0")]
    p: Vec<f64>,
}

#[derive(Debug, Args)]
struct GammaArgs {
    #[arg(long, value_parser = parse_spin)]
    spin: HalfInt,
    /// Number of fitted momenta; at least three per tensor component.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum ElkoCommand {
    /// G(u,v) for u = (a,b), v = (c,d); entries like 1, -i, 0.5+2i.
    G {
        #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true, value_parser = parse_complex)]
        u: Vec<C64>,
        #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true, value_parser = parse_complex)]
        v: Vec<C64>,
    },
    /// Monte-Carlo sweep: no basis satisfies both rotation-invariance conditions.
    Nogo {
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Smallest |det[u v]| admitted into the sweep.
        #[arg(long, default_value_t = 0.1)]
        min_det: f64,
    },
    /// Helicity-built G(p) approaching p = 0 along different rays.
    Origin {
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BasisChoice {
    Canonical,
    Helicity,
}

#[derive(Debug, Args)]
struct DecomposeArgs {
    #[arg(long, value_parser = parse_spin, default_value = "1/2")]
    spin: HalfInt,
    #[arg(long)]
    mass: f64,
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true, default_value = "0,0,0")]
    p: Vec<f64>,
    #[arg(long, value_enum, default_value = "canonical")]
    basis: BasisChoice,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyChoice {
    /// A(0) = η
    Parity,
    /// A(0) = [[0, aI], [a⁻¹I, 0]]
    ParityLike,
    /// A(0) = diag(aΘ, bΘ)∘K (spin 1/2 only)
    Antilinear,
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    /// Fully-kinematic checker on one operator family.
    Kinematic {
        #[arg(long, value_parser = parse_spin, default_value = "1/2")]
        spin: HalfInt,
        #[arg(long, value_enum, default_value = "parity")]
        family: FamilyChoice,
        #[arg(long, value_parser = parse_complex, default_value = "1", allow_hyphen_values = true)]
        a: C64,
        #[arg(long, value_parser = parse_complex, default_value = "1", allow_hyphen_values = true)]
        b: C64,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Every residual suite.
    All {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Momenta per suite.
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
    },
}

fn parse_spin(s: &str) -> std::result::Result<HalfInt, String> {
    HalfInt::from_str(s).map_err(|e| e.to_string())
}

fn parse_complex(s: &str) -> std::result::Result<C64, String> {
    C64::from_str(s.trim()).map_err(|_| format!("not a complex number: {s:?}"))
}

fn momentum(mass: f64, p: &[f64]) -> Result<FourMomentum> {
    match p {
        [x, y, z] => FourMomentum::new(mass, Vector3::new(*x, *y, *z)),
        _ => Err(Error::InvalidArgument(format!("--p needs three components, got {}", p.len()))),
    }
}

fn pair(v: &[C64], flag: &str) -> Result<[C64; 2]> {
    match v {
        [a, b] => Ok([*a, *b]),
        _ => Err(Error::InvalidArgument(format!("--{flag} needs two components, got {}", v.len()))),
    }
}

/// Resolves the tolerance: the flag wins over the environment.
fn tolerance(flag: Option<f64>, env: Option<&str>) -> Result<ToleranceConfig> {
    if let Some(t) = flag {
        return ToleranceConfig::with_tol(t);
    }
    match env {
        Some(raw) => {
            let t: f64 = raw
                .trim()
                .parse()
                .map_err(|_| Error::InvalidTolerance(format!("{TOL_ENV}={raw:?} is not a number")))?;
            ToleranceConfig::with_tol(t)
        }
        None => Ok(ToleranceConfig::default()),
    }
}

fn envelope(command: &str, payload: impl Serialize) -> Result<Value> {
    let mut v = serde_json::to_value(payload).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let map = v.as_object_mut().ok_or_else(|| Error::InvalidArgument("payload must serialise to an object".into()))?;
    map.insert("schema_version".into(), json!(SCHEMA_VERSION));
    map.insert("command".into(), json!(command));
    Ok(v)
}

struct Outcome {
    document: Value,
    pass: bool,
}

fn success(document: Value) -> Outcome {
    Outcome { document, pass: true }
}

fn report(mut r: CheckReport, start: Instant, timing: bool) -> Result<Outcome> {
    if timing {
        r.runtime_ms = Some(start.elapsed().as_millis() as u64);
    }
    let pass = r.pass;
    Ok(Outcome { document: envelope(&r.command.clone(), r)?, pass })
}

fn execute(cli: Cli, env_tol: Option<&str>) -> Result<Outcome> {
    let tol = tolerance(cli.tol, env_tol)?;
    let start = Instant::now();
    match cli.command {
        Command::Generators(SpinArg { spin }) => {
            let rep = rep_generators(spin);
            let residual = rep.generators.algebra_residual();
            success_doc(
                "generators",
                json!({ "spin_twice": spin.twice(), "generators": rep, "algebra_residual": residual }),
            )
        }
        Command::Parity(k) => {
            let q = momentum(k.mass, &k.p)?;
            let p = parity_operator(&rep_generators(k.spin), &q)?;
            success_doc("parity", json!({ "spin_twice": k.spin.twice(), "mass": k.mass, "momentum": k.p, "matrix": p }))
        }
        Command::Spinors(k) => {
            let q = momentum(k.mass, &k.p)?;
            let b = boosted_spinors(k.spin, &q)?;
            let u: Vec<f64> = b.u.iter().map(|s| field_equation_residual(k.spin, s, &q, 1)).collect::<Result<_>>()?;
            let v: Vec<f64> = b.v.iter().map(|s| field_equation_residual(k.spin, s, &q, -1)).collect::<Result<_>>()?;
            success_doc(
                "spinors",
                json!({ "momentum": k.p, "basis": b, "residuals": { "u": u, "v": v }, "independence": b.independence() }),
            )
        }
        Command::Fieldeq(k) => {
            let q = momentum(k.mass, &k.p)?;
            let p = parity_operator(&rep_generators(k.spin), &q)?;
            let spectrum = parity_spectrum(k.spin, &q, 1e-7)?;
            let square = contraction_identity_residual(k.spin, &q)?;
            success_doc(
                "fieldeq",
                json!({
                    "spin_twice": k.spin.twice(), "mass": k.mass, "momentum": k.p,
                    "matrix": p, "spectrum": spectrum, "square_residual": square,
                }),
            )
        }
        Command::Gammatensor(g) => {
            let components =
                (g.spin.twice() as usize + 1) * (g.spin.twice() as usize + 2) * (g.spin.twice() as usize + 3) / 6;
            let samples = g.samples.unwrap_or(4 * components);
            let fit = extract_gamma_tensor(g.spin, samples, g.seed)?;
            let holdout = fit.tensor.reconstruction_residual(100, g.seed.wrapping_add(1))?;
            success_doc("gammatensor", json!({ "fit": fit, "holdout_residual": holdout }))
        }
        Command::Elko(ElkoCommand::G { u, v }) => {
            let basis = Cx2Basis::new(pair(&u, "u")?, pair(&v, "v")?);
            let g = g_operator(&basis, tol.abs_tol)?;
            let route = g.distance(&g_operator_from_eigenbasis(&basis, tol.abs_tol)?);
            success_doc(
                "elko g",
                json!({
                    "basis": basis, "G": g, "eigenbasis_route_distance": route,
                    "schur": schur_conditions(&basis), "witness": nogo_witness(&basis, tol.abs_tol),
                }),
            )
        }
        Command::Elko(ElkoCommand::Nogo { samples, seed, min_det }) => {
            let sweep = nogo_sweep(samples, min_det, seed)?;
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed.wrapping_add(1));
            let constructed_det = (0..100).map(|_| rotation_invariant_pair(&mut rng).det().norm()).fold(0.0, f64::max);
            success_doc("elko nogo", json!({ "sweep": sweep, "constructed_max_det": constructed_det }))
        }
        Command::Elko(ElkoCommand::Origin { mass }) => {
            success_doc("elko origin", helicity_origin_discontinuity(mass, tol.abs_tol)?)
        }
        Command::Decompose(d) => {
            let q = momentum(d.mass, &d.p)?;
            let basis = match d.basis {
                BasisChoice::Canonical => canonical_basis(d.spin, d.mass)?,
                BasisChoice::Helicity => {
                    if d.spin != HalfInt::HALF {
                        return Err(Error::RequiresSpinHalf(d.spin.to_string()));
                    }
                    let p = q.momentum();
                    helicity_basis(d.mass, &if p.norm() > 0.0 { p } else { Vector3::z() })?
                }
            };
            success_doc("decompose", decompose(&basis, &q, &tol)?)
        }
        Command::Check(CheckCommand::Kinematic { spin, family, a, b, samples, seed }) => {
            let rep = rep_generators(spin);
            let (fam, label) = match family {
                FamilyChoice::Parity => (KinematicOperatorFamily::parity(&rep), "parity"),
                FamilyChoice::ParityLike => (KinematicOperatorFamily::parity_like(&rep, a)?, "parity_like"),
                FamilyChoice::Antilinear => {
                    if spin != HalfInt::HALF {
                        return Err(Error::RequiresSpinHalf(spin.to_string()));
                    }
                    (antilinear_family_ab(a, b)?, "antilinear")
                }
            };
            report(check_kinematic(&fam, label, samples, seed, tol.abs_tol.max(1e-8))?, start, cli.timing)
        }
        Command::Check(CheckCommand::All { seed, samples }) => {
            report(check_all(seed, samples, &tol)?, start, cli.timing)
        }
    }
}

fn success_doc(command: &str, payload: impl Serialize) -> Result<Outcome> {
    Ok(success(envelope(command, payload)?))
}

/// Runs the command line and returns the process exit status.
///
/// `env_tol` is the value of [`TOL_ENV`], passed in so the function has no
/// hidden inputs.
pub fn run<I, T>(args: I, env_tol: Option<&str>, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational =
                matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if informational { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if informational { 0 } else { 2 };
        }
    };
    match execute(cli, env_tol) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.document).expect("JSON values serialise");
            if writeln!(out, "{text}").is_err() {
                return 2;
            }
            if outcome.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], env: Option<&str>) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("spinkin").chain(args.iter().copied()), env, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn tolerance_precedence() {
        assert_eq!(tolerance(None, None).unwrap(), ToleranceConfig::default());
        assert_eq!(tolerance(None, Some("1e-6")).unwrap().abs_tol, 1e-6);
        assert_eq!(tolerance(Some(1e-4), Some("1e-6")).unwrap().abs_tol, 1e-4);
        assert!(tolerance(None, Some("abc")).is_err());
        assert!(tolerance(Some(-1.0), None).is_err());
    }

    #[test]
    fn parity_at_rest_is_eta() {
        let (code, out, _) = call(&["parity", "--spin", "1", "--mass", "1", "--p", "0,0,0"], None);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["matrix"]["rows"], 6);
        assert_eq!(v["matrix"]["data"][3], json!([1.0, 0.0]));
        assert_eq!(v["matrix"]["data"][0], json!([0.0, 0.0]));
    }

    #[test]
    fn negative_momentum_components_parse() {
        let (code, out, err) = call(&["parity", "--spin", "1/2", "--mass", "2", "--p", "-1,0.5,-3"], None);
        assert_eq!(code, 0, "{err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["momentum"], json!([-1.0, 0.5, -3.0]));
    }

    #[test]
    fn elko_g_standard_pair() {
        let (code, out, _) = call(&["elko", "g", "--u", "1,0", "--v", "0,1"], None);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["G"]["data"][3], json!([0.0, -1.0]));
        assert_eq!(v["G"]["data"][12], json!([0.0, 1.0]));
        assert_eq!(v["schur"]["r1"], 1.0);
    }

    #[test]
    fn elko_g_complex_entries_and_degenerate() {
        let (code, _, _) = call(&["elko", "g", "--u", "1+2i,-i", "--v", "0.5,3"], None);
        assert_eq!(code, 0);
        let (code, _, err) = call(&["elko", "g", "--u", "1,0", "--v", "2,0"], None);
        assert_eq!(code, 2);
        assert!(err.contains("linearly dependent"));
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, err) = call(&["parity", "--spin", "1", "--mass", "1", "--bogus"], None);
        assert_eq!(code, 2);
        assert!(err.contains("Usage"));
        let (code, _, _) = call(&["frobnicate"], None);
        assert_eq!(code, 2);
        let (code, _, _) = call(&["parity", "--spin", "0.3", "--mass", "1"], None);
        assert_eq!(code, 2);
        let (code, _, err) = call(&["parity", "--spin", "1", "--mass", "1", "--p", "1,2"], None);
        assert_eq!(code, 2);
        assert!(err.contains("three components"));
        let (code, _, _) = call(&["parity", "--spin", "1", "--mass", "1"], Some("nope"));
        assert_eq!(code, 2);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"], None);
        assert_eq!(code, 0);
        assert!(out.contains("check"));
    }

    #[test]
    fn failing_check_exits_one() {
        let (code, out, _) = call(&["check", "kinematic", "--family", "antilinear", "--samples", "5"], None);
        assert_eq!(code, 1);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pass"], false);
        assert!(v.get("runtime_ms").is_none());
    }

    #[test]
    fn timing_is_opt_in() {
        let (code, out, _) = call(&["check", "kinematic", "--samples", "5", "--timing"], None);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(v["runtime_ms"].is_u64());
    }

    #[test]
    fn decompose_helicity() {
        let (code, out, err) = call(&["decompose", "--mass", "1.2", "--p", "0.3,-0.4,1", "--basis", "helicity"], None);
        assert_eq!(code, 0, "{err}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(v["residual"].as_f64().unwrap() < 1e-9);
        assert!(v.get("K").is_some() && v.get("Xi").is_some());
        let (code, _, _) = call(&["decompose", "--spin", "1", "--mass", "1", "--basis", "helicity"], None);
        assert_eq!(code, 2);
    }
}
