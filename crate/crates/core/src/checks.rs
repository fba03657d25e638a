//! Seeded residual suites behind `spinkin check`.
//!
//! Every entry is a residual paired with the tolerance it must not exceed.
//! Lower-bound claims (“at least”) are stored as `threshold − observed`
//! against tolerance 0, so `pass` is uniformly “every residual ≤ its
//! tolerance”. Values that are reported but not gated go to `diagnostics`.

use std::collections::BTreeMap;

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::decomposition::{canonical_basis, decompose, helicity_basis};
use crate::dirac::{boosted_spinors, dirac_operator, gamma_matrices};
use crate::elko::{
    antilinear_family_ab, antilinear_kinematic_solutions, antilinear_square_floor, elko_basis, g_operator,
    helicity_origin_discontinuity, nogo_sweep, rotation_commutant_residual, rotation_invariant_pair, schur_conditions,
    Cx2Basis,
};
use crate::error::{Error, Result};
use crate::higher_spin::{
    extract_gamma_tensor, field_equation_residual, intertwining_residual, parity_spectrum, swap_eigen_residual,
    tensor_swap_operator,
};
use crate::kinematics::{
    is_fully_kinematic, parity_operator, sample_momentum, FourMomentum, KinematicOperatorFamily, KinematicReport,
};
use crate::linalg::{c, ComplexMatrix, ToleranceConfig, C64};
use crate::lorentz::{rep_generators, tensor_rep_generators, HalfInt};

/// Default number of momenta per check; the Dirac identification uses ten
/// times as many and the no-go sweep a hundred times as many.
pub const DEFAULT_SAMPLES: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub command: String,
    pub seed: u64,
    pub samples: usize,
    pub max_residuals: BTreeMap<String, f64>,
    pub tolerances: BTreeMap<String, f64>,
    pub diagnostics: BTreeMap<String, f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

impl CheckReport {
    pub fn new(command: &str, seed: u64, samples: usize) -> Self {
        Self {
            command: command.into(),
            seed,
            samples,
            max_residuals: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            diagnostics: BTreeMap::new(),
            pass: true,
            runtime_ms: None,
        }
    }

    /// Records a residual and updates `pass`; NaN never passes.
    pub fn record(&mut self, name: &str, residual: f64, tolerance: f64) {
        self.pass &= residual <= tolerance;
        self.max_residuals.insert(name.into(), residual);
        self.tolerances.insert(name.into(), tolerance);
    }

    /// Records `threshold − observed ≤ 0`, i.e. `observed ≥ threshold`.
    pub fn record_lower_bound(&mut self, name: &str, observed: f64, threshold: f64) {
        self.record(name, threshold - observed, 0.0);
    }

    pub fn note(&mut self, name: &str, value: f64) {
        self.diagnostics.insert(name.into(), value);
    }

    /// Names of the entries whose residual exceeds its tolerance.
    pub fn failures(&self) -> Vec<&str> {
        self.max_residuals
            .iter()
            .filter(|(k, v)| v.is_nan() || **v > self.tolerances[*k])
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

fn spins(max_twice: u32) -> Vec<HalfInt> {
    (1..=max_twice).map(|t| HalfInt::from_twice(t).expect("positive")).collect()
}

fn momenta(count: usize, seed: u64) -> Vec<FourMomentum> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_momentum(&mut rng)).collect()
}

fn par_max<T: Sync>(items: &[T], f: impl Fn(&T) -> Result<f64> + Sync + Send) -> Result<f64> {
    Ok(items.par_iter().map(f).collect::<Result<Vec<f64>>>()?.into_iter().fold(0.0, f64::max))
}

/// `m P(q)` against `γ^μ p_μ`.
pub fn check_dirac_parity(report: &mut CheckReport, count: usize, seed: u64) -> Result<()> {
    let rep = rep_generators(HalfInt::HALF);
    let r = par_max(&momenta(count, seed), |q| {
        let slash = dirac_operator(q);
        let mp = parity_operator(&rep, q)?.scale_real(q.mass());
        Ok(mp.distance(&slash) / slash.frobenius_norm())
    })?;
    report.record("dirac_parity", r, 1e-10);
    Ok(())
}

/// `P_j² = I`, spectrum `±1` with equal multiplicities, constant determinant.
pub fn check_involution(report: &mut CheckReport, count: usize, seed: u64) -> Result<()> {
    let qs = momenta(count, seed);
    for j in spins(4) {
        let rep = rep_generators(j);
        let rows: Vec<(f64, f64, usize, C64)> = qs
            .par_iter()
            .map(|q| {
                let p = parity_operator(&rep, q)?;
                let square = (&p * &p).distance_from_identity();
                let s = parity_spectrum(j, q, 1e-7)?;
                let n = j.multiplicity();
                let miscount = usize::from(s.plus_count != n || s.minus_count != n);
                Ok((square, s.max_deviation, miscount, c(s.determinant[0], s.determinant[1])))
            })
            .collect::<Result<_>>()?;
        let det0 = rows[0].3;
        let tag = format!("2j={}", j.twice());
        report.record(&format!("involution/square/{tag}"), rows.iter().map(|r| r.0).fold(0.0, f64::max), 1e-7);
        report.record(&format!("involution/eigenvalues/{tag}"), rows.iter().map(|r| r.1).fold(0.0, f64::max), 1e-7);
        report.record(&format!("involution/multiplicity/{tag}"), rows.iter().map(|r| r.2).sum::<usize>() as f64, 0.0);
        let spread = rows.iter().map(|r| (r.3 - det0).norm()).fold(0.0, f64::max);
        report.record(&format!("involution/det_spread/{tag}"), spread, 1e-7);
        report.record(&format!("involution/det_unit/{tag}"), (det0.norm() - 1.0).abs() + det0.im.abs(), 1e-7);
    }
    Ok(())
}

/// Boosted `u` and `v` spinors solve their field equations, `j ≤ 2`.
pub fn check_field_equation(report: &mut CheckReport, count: usize, seed: u64) -> Result<()> {
    let qs = momenta(count, seed);
    for j in spins(4) {
        let r = par_max(&qs, |q| {
            let b = boosted_spinors(j, q)?;
            let mut worst: f64 = 0.0;
            for u in &b.u {
                worst = worst.max(field_equation_residual(j, u, q, 1)?);
            }
            for v in &b.v {
                worst = worst.max(field_equation_residual(j, v, q, -1)?);
            }
            Ok(worst)
        })?;
        report.record(&format!("field_equation/2j={}", j.twice()), r, 1e-9);
    }
    Ok(())
}

fn record_kinematic(report: &mut CheckReport, prefix: &str, k: &KinematicReport, tol: f64) {
    report.record(&format!("{prefix}/square"), k.max_residuals.square, tol);
    report.record(&format!("{prefix}/anticommutator"), k.max_residuals.anticommutator, tol);
    report.record(&format!("{prefix}/covariance"), k.max_residuals.covariance, tol);
}

/// Covariance of the parity family under boosts and rotations, `j ≤ 3/2`.
pub fn check_covariance(report: &mut CheckReport, count: usize, seed: u64) -> Result<()> {
    for j in spins(3) {
        let fam = KinematicOperatorFamily::parity(&rep_generators(j));
        let k = is_fully_kinematic(&fam, count, 1e-8, seed)?;
        report.record(&format!("covariance/2j={}", j.twice()), k.max_residuals.covariance, 1e-8);
    }
    Ok(())
}

/// Parity and the rescaled swap family pass the fully-kinematic checker;
/// the anti-linear `diag(aΘ, bΘ)K` family never squares to the identity.
pub fn check_kinematic_checker(report: &mut CheckReport, count: usize, seed: u64) -> Result<()> {
    let rep = rep_generators(HalfInt::HALF);
    let parity = is_fully_kinematic(&KinematicOperatorFamily::parity(&rep), count, 1e-8, seed)?;
    record_kinematic(report, "kinematic/parity", &parity, 1e-8);

    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut worst = [0.0f64; 3];
    for _ in 0..10 {
        let a = C64::from_polar(10f64.powf(rng.random_range(-1.0..=1.0)), rng.random_range(0.0..std::f64::consts::TAU));
        let fam = KinematicOperatorFamily::parity_like(&rep, a)?;
        let k = is_fully_kinematic(&fam, count.div_ceil(10), 1e-8, rng.random())?;
        let r = k.max_residuals;
        worst = [worst[0].max(r.square), worst[1].max(r.anticommutator), worst[2].max(r.covariance)];
    }
    // The family `[[0, aI], [a⁻¹I, 0]]` grows like `|a|`; scale the gate with it.
    report.record("kinematic/parity_like/square", worst[0], 1e-6);
    report.record("kinematic/parity_like/anticommutator", worst[1], 1e-8);
    report.record("kinematic/parity_like/covariance", worst[2], 1e-8);

    report.record_lower_bound("kinematic/antilinear/square_floor", antilinear_square_floor(9)?, 1.0);
    let anti = is_fully_kinematic(&antilinear_family_ab(c(1.0, 0.0), c(1.0, 0.0))?, count.div_ceil(10), 1e-8, seed)?;
    report.note("kinematic/antilinear/anticommutator", anti.max_residuals.anticommutator);
    report.note("kinematic/antilinear/covariance", anti.max_residuals.covariance);
    Ok(())
}

/// The anti-linear solution space is 2-dimensional and spanned by
/// `diag(Θ,0)K`, `diag(0,Θ)K`.
pub fn check_antilinear_space(report: &mut CheckReport) -> Result<()> {
    let sol = antilinear_kinematic_solutions(1e-10)?;
    report.record("antilinear/dimension", (sol.dimension as f64 - 2.0).abs(), 0.0);
    report.record("antilinear/span", sol.span_residual, 1e-10);
    report.record("antilinear/spanning_maps", sol.spanning_residual, 1e-12);
    Ok(())
}

/// No basis makes `G(u,v)` rotation invariant.
pub fn check_elko_nogo(report: &mut CheckReport, sweep_samples: usize, seed: u64) -> Result<()> {
    let sweep = nogo_sweep(sweep_samples, 0.1, seed)?;
    report.record_lower_bound("elko/nogo/min_max_condition", sweep.min_max_condition, 0.01);
    report.record("elko/nogo/det_over_bound", sweep.max_det_ratio - 1.0, 1e-12);

    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let constructed: Vec<Cx2Basis> = (0..100).map(|_| rotation_invariant_pair(&mut rng)).collect();
    let random: Vec<Cx2Basis> = (0..100).map(|_| Cx2Basis::random(&mut rng)).collect();
    let det = constructed.iter().map(|b| b.det().norm()).fold(0.0, f64::max);
    report.record("elko/constructed/det", det, 1e-10);
    let mismatches = constructed
        .iter()
        .chain(&random)
        .enumerate()
        .map(|(k, b)| {
            let commutes = rotation_commutant_residual(b, 20, seed.wrapping_add(k as u64))? <= 1e-9;
            Ok(usize::from(commutes != schur_conditions(b).hold(1e-10)))
        })
        .collect::<Result<Vec<usize>>>()?
        .into_iter()
        .sum::<usize>();
    report.record("elko/schur_equivalence/mismatches", mismatches as f64, 0.0);
    Ok(())
}

/// `G² = I`, the four eigenvalue relations, and the standard-pair matrix.
pub fn check_g_operator(report: &mut CheckReport, count: usize, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bases = Vec::with_capacity(count);
    while bases.len() < count {
        let b = Cx2Basis::random(&mut rng);
        if b.det().norm() >= 0.1 {
            bases.push(b);
        }
    }
    let (mut square, mut eigen): (f64, f64) = (0.0, 0.0);
    for b in &bases {
        let g = g_operator(b, 1e-12)?;
        square = square.max((&g * &g).distance_from_identity());
        let e = elko_basis(b, 1e-12)?;
        for (s, sign) in [(&e.u_plus, 1.0), (&e.v_plus, 1.0), (&e.u_minus, -1.0), (&e.v_minus, -1.0)] {
            eigen = eigen.max((g.apply(s) - s * c(sign, 0.0)).norm() / s.norm());
        }
    }
    report.record("g_operator/square", square, 1e-10);
    report.record("g_operator/eigen_relations", eigen, 1e-10);
    let (o, i) = (c(0.0, 0.0), c(0.0, 1.0));
    let want = ComplexMatrix::from_rows(&[[o, o, o, -i], [o, o, i, o], [o, -i, o, o], [i, o, o, o]]);
    report.record("g_operator/standard_pair", g_operator(&Cx2Basis::standard(), 1e-12)?.distance(&want), 1e-14);
    Ok(())
}

/// `γ^μ p_μ = m K(q) Ξ(q)` for the parity and helicity bases.
pub fn check_decomposition(report: &mut CheckReport, count: usize, seed: u64, tol: &ToleranceConfig) -> Result<()> {
    let qs = momenta(count, seed);
    let rows: Vec<(f64, f64, f64, f64)> = qs
        .par_iter()
        .map(|q| {
            let canonical = decompose(&canonical_basis(HalfInt::HALF, q.mass())?, q, tol)?;
            let p = q.momentum();
            let dir = if p.norm() > 0.0 { p } else { Vector3::z() };
            let helicity = decompose(&helicity_basis(q.mass(), &dir)?, q, tol)?;
            let deficit = |d: &crate::decomposition::Decomposition| 16.0 - d.rank as f64;
            let chain =
                helicity.chain_residuals.iter().chain(&canonical.chain_residuals).fold(0.0f64, |a, &b| a.max(b))
                    / helicity.k.frobenius_norm().max(1.0);
            Ok((canonical.residual, helicity.residual, deficit(&canonical).max(deficit(&helicity)), chain))
        })
        .collect::<Result<_>>()?;
    let max = |f: fn(&(f64, f64, f64, f64)) -> f64| rows.iter().map(f).fold(0.0, f64::max);
    report.record("decomposition/canonical", max(|r| r.0), 1e-9);
    report.record("decomposition/helicity", max(|r| r.1), 1e-9);
    report.record("decomposition/rank_deficit", max(|r| r.2), 0.0);
    report.record("decomposition/chain", max(|r| r.3), 1e-8);
    Ok(())
}

/// Swap operator identities and the tensor-product intertwining.
pub fn check_tensor_swap(report: &mut CheckReport, count: usize, seed: u64) -> Result<()> {
    let qs = momenta(count, seed);
    for j in [HalfInt::HALF, HalfInt::ONE] {
        let tag = format!("2j={}", j.twice());
        let s = tensor_swap_operator(j);
        report.record(&format!("swap/square/{tag}"), (&s * &s).distance_from_identity(), 0.0);
        let anti = tensor_rep_generators(j)
            .generators
            .boosts
            .iter()
            .map(|k| s.anticommutator(k).frobenius_norm())
            .fold(0.0, f64::max);
        report.record(&format!("swap/anticommutator/{tag}"), anti, 1e-12);
        let r = par_max(&qs, |q| {
            let b = boosted_spinors(j, q)?;
            let mut worst: f64 = 0.0;
            for u in &b.u {
                worst = worst.max(intertwining_residual(j, u, q)?).max(swap_eigen_residual(j, u, q)?);
            }
            Ok(worst)
        })?;
        report.record(&format!("swap/intertwining/{tag}"), r, 1e-9);
    }
    Ok(())
}

/// Helicity-built `G(p)` near the origin: Cauchy along rays, different
/// limits for different azimuths.
pub fn check_origin(report: &mut CheckReport, mass: f64) -> Result<()> {
    let r = helicity_origin_discontinuity(mass, 1e-12)?;
    report.record("origin/ray_cauchy_z", r.ray_cauchy_z, 1e-6);
    report.record("origin/ray_cauchy_x", r.ray_cauchy_x, 1e-6);
    report.record_lower_bound("origin/distance_x_y", r.distance_x_y, 0.1);
    report.note("origin/distance_z_x", r.distance_z_x);
    report.note("origin/distance_z_minus_z", r.distance_z_minus_z);
    Ok(())
}

/// Least-squares recovery of the gamma tensor at spins ½ and 1.
pub fn check_gamma_tensor(report: &mut CheckReport, seed: u64) -> Result<()> {
    let half = extract_gamma_tensor(HalfInt::HALF, 40, seed)?;
    let g = gamma_matrices();
    let recovery = (0..4u8)
        .map(|mu| half.tensor.get(&[mu]).map_or(f64::INFINITY, |m| m.distance(&g.gamma[mu as usize])))
        .fold(0.0, f64::max);
    report.record("gamma_tensor/recovery/2j=1", recovery, 1e-8);
    let one = extract_gamma_tensor(HalfInt::ONE, 60, seed)?;
    report.record("gamma_tensor/holdout/2j=2", one.tensor.reconstruction_residual(100, seed.wrapping_add(1))?, 1e-7);
    Ok(())
}

/// Runs every suite. Each suite draws from its own seed `seed + k`.
pub fn check_all(seed: u64, samples: usize, tol: &ToleranceConfig) -> Result<CheckReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let mut report = CheckReport::new("check all", seed, samples);
    let s = |k: u64| seed.wrapping_add(k);
    check_dirac_parity(&mut report, 10 * samples, s(1))?;
    check_involution(&mut report, samples, s(2))?;
    check_field_equation(&mut report, samples, s(3))?;
    check_covariance(&mut report, samples, s(4))?;
    check_kinematic_checker(&mut report, samples, s(5))?;
    check_antilinear_space(&mut report)?;
    check_elko_nogo(&mut report, 100 * samples, s(7))?;
    check_g_operator(&mut report, samples, s(8))?;
    check_decomposition(&mut report, samples, s(9), tol)?;
    check_tensor_swap(&mut report, samples.div_ceil(2), s(10))?;
    check_origin(&mut report, 1.0)?;
    check_gamma_tensor(&mut report, s(12))?;
    Ok(report)
}

/// The fully-kinematic checker on one family, as a report.
pub fn check_kinematic(
    family: &KinematicOperatorFamily,
    label: &str,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<CheckReport> {
    let k = is_fully_kinematic(family, samples, tol, seed)?;
    let mut report = CheckReport::new("check kinematic", seed, samples);
    record_kinematic(&mut report, label, &k, tol);
    Ok(report)
}
