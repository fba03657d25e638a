//! Charge conjugation on `(½,0)⊕(0,½)`, its eigenspinors (Elko), the
//! operator `G(u,v)` that is `+1` on the self-conjugate and `−1` on the
//! anti-self-conjugate spinors, and numerical certificates that no choice of
//! `u, v` yields a fully kinematic `G`.
//!
//! Conventions: `Θ = [[0, −1], [1, 0]]`, `C = [[0, iΘ], [−iΘ, 0]] ∘ K` and
//! `ũ± = (±iΘu*, u)`, so that `C ũ± = ±ũ±`.

use nalgebra::{DVector, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kinematics::{random_rotation_parameter, rapidity_from_momentum, FourMomentum, KinematicOperatorFamily};
use crate::linalg::{c, expm, kron, nullspace, AntiLinearMap, ComplexMatrix, ComplexVector, C64, I, ONE, ZERO};
use crate::lorentz::{rep_generators, sigma_dot, HalfInt};

/// Wigner's time-reversal matrix `Θ = [[0, −1], [1, 0]]`, with `Θ σ* Θ⁻¹ = −σ`.
pub fn theta() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[[0.0, -1.0], [1.0, 0.0]])
}

/// A pair `u = (a, b)`, `v = (c, d)` in `ℂ²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Cx2Basis {
    pub u: [C64; 2],
    pub v: [C64; 2],
}

impl Cx2Basis {
    pub fn new(u: [C64; 2], v: [C64; 2]) -> Self {
        Self { u, v }
    }

    /// `u = e₁`, `v = e₂`.
    pub fn standard() -> Self {
        Self::new([ONE, ZERO], [ZERO, ONE])
    }

    /// `det[u v] = ad − bc`
    pub fn det(&self) -> C64 {
        let ([a, b], [cc, d]) = (self.u, self.v);
        a * d - b * cc
    }

    /// Errors unless `|det[u v]| > tol`.
    pub fn require_nondegenerate(&self, tol: f64) -> Result<()> {
        let det = self.det().norm();
        if det.is_nan() || det <= tol {
            return Err(Error::DegenerateBasis(det));
        }
        Ok(())
    }

    /// Applies a 2×2 matrix to both vectors.
    pub fn map(&self, m: &ComplexMatrix) -> Self {
        let apply = |x: [C64; 2]| {
            let y = m.apply(&DVector::from_row_slice(&x));
            [y[0], y[1]]
        };
        Self::new(apply(self.u), apply(self.v))
    }

    /// Draws `u, v` uniformly on the unit sphere of `ℂ²` each.
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        let mut unit = || {
            let z: [f64; 4] = std::array::from_fn(|_| gaussian(rng));
            let n = z.iter().map(|x| x * x).sum::<f64>().sqrt();
            [c(z[0] / n, z[1] / n), c(z[2] / n, z[3] / n)]
        };
        let u = unit();
        let v = unit();
        Self::new(u, v)
    }
}

impl Serialize for Cx2Basis {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire {
            u: [[f64; 2]; 2],
            v: [[f64; 2]; 2],
        }
        let pair = |x: [C64; 2]| x.map(|z| [z.re, z.im]);
        Wire { u: pair(self.u), v: pair(self.v) }.serialize(serializer)
    }
}

fn gaussian<R: Rng>(rng: &mut R) -> f64 {
    // Box–Muller; `1 − x` keeps the logarithm finite.
    let x: f64 = rng.random();
    let y: f64 = rng.random();
    (-2.0 * (1.0 - x).ln()).sqrt() * (std::f64::consts::TAU * y).cos()
}

/// `C = [[0, iΘ], [−iΘ, 0]] ∘ K`
pub fn charge_conjugation() -> AntiLinearMap {
    let t = theta();
    let z = ComplexMatrix::zeros(2, 2);
    AntiLinearMap::new(ComplexMatrix::from_blocks(&z, &t.scale(I), &t.scale(-I), &z).expect("2x2 blocks"))
}

/// `(sign·iΘu*, u)`: self-conjugate for `sign = +1`, anti-self-conjugate for −1.
pub fn elko_spinor(u: [C64; 2], sign: i8) -> Result<ComplexVector> {
    let s = crate::dirac::sign_of(sign)?;
    let top = theta().apply(&DVector::from_row_slice(&[u[0].conj(), u[1].conj()])) * c(0.0, s);
    Ok(DVector::from_row_slice(&[top[0], top[1], u[0], u[1]]))
}

/// `ũ±` built from `u` and `ṽ±` built from `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct ElkoBasis {
    pub u_plus: ComplexVector,
    pub u_minus: ComplexVector,
    pub v_plus: ComplexVector,
    pub v_minus: ComplexVector,
}

impl ElkoBasis {
    /// Columns `ũ₊, ṽ₊, ũ₋, ṽ₋`: the `+1` pair first.
    pub fn columns(&self) -> ComplexMatrix {
        ComplexMatrix::from_columns(&[
            self.u_plus.clone(),
            self.v_plus.clone(),
            self.u_minus.clone(),
            self.v_minus.clone(),
        ])
        .expect("4-spinors")
    }
}

pub fn elko_basis(basis: &Cx2Basis, tol: f64) -> Result<ElkoBasis> {
    basis.require_nondegenerate(tol)?;
    Ok(ElkoBasis {
        u_plus: elko_spinor(basis.u, 1)?,
        u_minus: elko_spinor(basis.u, -1)?,
        v_plus: elko_spinor(basis.v, 1)?,
        v_minus: elko_spinor(basis.v, -1)?,
    })
}

/// Closed form of `G(u,v)`: `+1` on `ũ₊, ṽ₊` and `−1` on `ũ₋, ṽ₋`.
pub fn g_operator(basis: &Cx2Basis, tol: f64) -> Result<ComplexMatrix> {
    basis.require_nondegenerate(tol)?;
    let det = basis.det();
    let n = g_numerator(basis);
    let top = n.block(0, 2, 2, 2).scale(det.inv());
    let bottom = n.block(2, 0, 2, 2).scale(det.conj().inv());
    let z = ComplexMatrix::zeros(2, 2);
    ComplexMatrix::from_blocks(&z, &top, &bottom, &z)
}

/// `G(u,v) = V diag(1, 1, −1, −1) V⁻¹` with `V = [ũ₊, ṽ₊, ũ₋, ṽ₋]`.
pub fn g_operator_from_eigenbasis(basis: &Cx2Basis, tol: f64) -> Result<ComplexMatrix> {
    let v = elko_basis(basis, tol)?.columns();
    let d = ComplexMatrix::from_diagonal(&[ONE, ONE, -ONE, -ONE]);
    Ok(&(&v * &d) * &v.inverse()?)
}

/// `G(u,v)` with the denominators `det` and `conj(det)` cleared from its two
/// blocks. Defined for every pair, including degenerate ones.
///
/// With `x = c b̄ − a d̄` and `y = d ā − b c̄` the blocks are
/// `[[−2 Im(b d̄), ix], [iy, −2 Im(a c̄)]]` (top right) and
/// `[[−2 Im(c ā), ix], [iy, −2 Im(d b̄)]]` (bottom left).
pub fn g_numerator(basis: &Cx2Basis) -> ComplexMatrix {
    let ([a, b], [cc, d]) = (basis.u, basis.v);
    let im2 = |z: C64| c(-2.0 * z.im, 0.0);
    let x = cc * b.conj() - a * d.conj();
    let y = d * a.conj() - b * cc.conj();
    let top = ComplexMatrix::from_rows(&[[im2(b * d.conj()), I * x], [I * y, im2(a * cc.conj())]]);
    let bottom = ComplexMatrix::from_rows(&[[im2(cc * a.conj()), I * x], [I * y, im2(d * b.conj())]]);
    let z = ComplexMatrix::zeros(2, 2);
    ComplexMatrix::from_blocks(&z, &top, &bottom, &z).expect("2x2 blocks")
}

/// Residuals of the two conditions for `G(u,v)` to commute with rotations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SchurConditions {
    /// `|a d̄ − c b̄|`
    pub r1: f64,
    /// `|Im(a c̄) − Im(b d̄)|`
    pub r2: f64,
}

impl SchurConditions {
    pub fn hold(&self, tol: f64) -> bool {
        self.r1 <= tol && self.r2 <= tol
    }
}

pub fn schur_conditions(basis: &Cx2Basis) -> SchurConditions {
    let ([a, b], [cc, d]) = (basis.u, basis.v);
    SchurConditions { r1: (a * d.conj() - cc * b.conj()).norm(), r2: ((a * cc.conj()).im - (b * d.conj()).im).abs() }
}

/// `max_R ‖[N, D(R)]‖_F` over `samples` seeded random rotations, where `N`
/// is [`g_numerator`] and `D(R) = exp(i𝔍·θ)`. For a nondegenerate pair this
/// vanishes exactly when `G(u,v)` commutes with every rotation.
pub fn rotation_commutant_residual(basis: &Cx2Basis, samples: usize, seed: u64) -> Result<f64> {
    let rep = rep_generators(HalfInt::HALF);
    let n = g_numerator(basis);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let d = rep.rotation(&random_rotation_parameter(&mut rng))?;
        worst = worst.max(n.commutator(&d).frobenius_norm());
    }
    Ok(worst)
}

/// The no-go implication for a single pair.
///
/// Clearing denominators in `G² = I` yields
/// `|det[u v]|² = r₁² + r₂² − (Im(a c̄) + Im(b d̄))²`, hence
/// `|det[u v]| ≤ √(r₁² + r₂²)`: both conditions at tolerance `tol` force
/// `|det| ≤ √2·tol`, so `u, v` cannot be a basis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NogoWitness {
    pub r1: f64,
    pub r2: f64,
    pub det_abs: f64,
    /// `√(r₁² + r₂²)`
    pub det_bound: f64,
    pub conditions_hold: bool,
    pub conclusion: String,
}

pub fn nogo_witness(basis: &Cx2Basis, tol: f64) -> NogoWitness {
    let s = schur_conditions(basis);
    let det_abs = basis.det().norm();
    let det_bound = s.r1.hypot(s.r2);
    let conditions_hold = s.hold(tol);
    let conclusion = match (conditions_hold, det_abs > tol) {
        (true, false) => "rotation invariant but u, v do not form a basis",
        (false, true) => "u, v form a basis but G(u,v) is not rotation invariant",
        (false, false) => "u, v do not form a basis",
        (true, true) => "rotation invariant basis (contradicts the determinant bound)",
    };
    NogoWitness { r1: s.r1, r2: s.r2, det_abs, det_bound, conditions_hold, conclusion: conclusion.into() }
}

/// Monte-Carlo sweep over random unit-norm pairs with `|det| ≥ min_det`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NogoSweep {
    pub seed: u64,
    pub samples: usize,
    pub min_det: f64,
    /// Smallest `max(r₁, r₂)` observed; positive means no sample satisfied
    /// both conditions.
    pub min_max_condition: f64,
    /// Largest `|det| / √(r₁² + r₂²)`; at most 1.
    pub max_det_ratio: f64,
    pub rejected_draws: usize,
}

pub fn nogo_sweep(samples: usize, min_det: f64, seed: u64) -> Result<NogoSweep> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    if !(min_det > 0.0 && min_det < 1.0) {
        return Err(Error::InvalidArgument(format!("min_det must lie in (0, 1), got {min_det}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bases = Vec::with_capacity(samples);
    let mut rejected_draws = 0;
    while bases.len() < samples {
        let b = Cx2Basis::random(&mut rng);
        if b.det().norm() >= min_det {
            bases.push(b);
        } else {
            rejected_draws += 1;
        }
    }
    let stats: Vec<(f64, f64)> = bases
        .par_iter()
        .map(|b| {
            let w = nogo_witness(b, 0.0);
            (w.r1.max(w.r2), w.det_abs / w.det_bound)
        })
        .collect();
    Ok(NogoSweep {
        seed,
        samples,
        min_det,
        min_max_condition: stats.iter().map(|s| s.0).fold(f64::INFINITY, f64::min),
        max_det_ratio: stats.iter().map(|s| s.1).fold(0.0, f64::max),
        rejected_draws,
    })
}

/// Pairs satisfying both conditions: `a = λ b̄`, `c = λ d̄` with either
/// `λ = 0` and `Im(b d̄) = 0`, or `d = t b` for real `t`.
pub fn rotation_invariant_pair<R: Rng>(rng: &mut R) -> Cx2Basis {
    let z = |rng: &mut R| c(gaussian(rng), gaussian(rng));
    let b = z(rng);
    if rng.random_bool(0.5) {
        let lambda = z(rng);
        let d = b * gaussian(rng);
        Cx2Basis::new([lambda * b.conj(), b], [lambda * d.conj(), d])
    } else {
        let d = b * gaussian(rng);
        Cx2Basis::new([ZERO, b], [ZERO, d])
    }
}

/// Kernel of the anti-linear anticommutation system at spin ½.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AntilinearSolutions {
    /// Complex dimension of the solution space.
    pub dimension: usize,
    pub basis: Vec<ComplexMatrix>,
    /// Largest distance of a kernel vector from `span{diag(Θ,0), diag(0,Θ)}`.
    pub span_residual: f64,
    /// Largest residual of the two spanning maps in the system.
    pub spanning_residual: f64,
}

/// Solves `M conj(i𝔎_a) + i𝔎_a M = 0` for all `a`: the anti-linear maps
/// `M∘K` anticommuting with the boost generators.
pub fn antilinear_kinematic_solutions(tol: f64) -> Result<AntilinearSolutions> {
    let rep = rep_generators(HalfInt::HALF);
    let n = rep.dim();
    let id = ComplexMatrix::identity(n);
    // Column-major vec: vec(M X) = (Xᵀ ⊗ I) vec M and vec(G M) = (I ⊗ G) vec M.
    let blocks: Vec<ComplexMatrix> =
        rep.generators.boost_exponents().iter().map(|g| &kron(&g.conj().transpose(), &id) + &kron(&id, g)).collect();
    let rows = blocks.len() * n * n;
    let system = ComplexMatrix::from_fn(rows, n * n, |r, col| blocks[r / (n * n)].get(r % (n * n), col));
    let kernel = nullspace(&system, tol);
    let basis: Vec<ComplexMatrix> =
        kernel.iter().map(|x| ComplexMatrix::from_fn(n, n, |r, col| x[col * n + r])).collect();

    let spanning = [spanning_map(ONE, ZERO), spanning_map(ZERO, ONE)];
    let span_residual = basis
        .iter()
        .map(|m| {
            let projected = spanning.iter().fold(ComplexMatrix::zeros(n, n), |acc, t| {
                let coeff = t.inner().dotc(m.inner()) / t.inner().dotc(t.inner());
                &acc + &t.scale(coeff)
            });
            m.distance(&projected) / m.frobenius_norm()
        })
        .fold(0.0, f64::max);
    let spanning_residual = spanning
        .iter()
        .map(|t| antilinear_family(t.clone()).map(|f| f.anticommutator_residual()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(AntilinearSolutions { dimension: basis.len(), basis, span_residual, spanning_residual })
}

fn spanning_map(a: C64, b: C64) -> ComplexMatrix {
    ComplexMatrix::block_diag(&theta().scale(a), &theta().scale(b))
}

/// The anti-linear family with rest value `diag(aΘ, bΘ) ∘ K`.
pub fn antilinear_family_ab(a: C64, b: C64) -> Result<KinematicOperatorFamily> {
    antilinear_family(spanning_map(a, b))
}

fn antilinear_family(rest: ComplexMatrix) -> Result<KinematicOperatorFamily> {
    KinematicOperatorFamily::new(rep_generators(HalfInt::HALF).generators, rest, true)
}

/// `min ‖A(0)² − I‖_F` over `|a|, |b|` log-spaced in `[0.1, 10]` (`steps`
/// each) and four phases each.
pub fn antilinear_square_floor(steps: usize) -> Result<f64> {
    if steps < 2 {
        return Err(Error::InvalidArgument("steps must be at least 2".into()));
    }
    let radii: Vec<f64> = (0..steps).map(|k| 10f64.powf(-1.0 + 2.0 * k as f64 / (steps - 1) as f64)).collect();
    let phases = [0.0, 0.5, 1.0, 1.5].map(|t: f64| C64::from_polar(1.0, t * std::f64::consts::PI));
    let mut worst = f64::INFINITY;
    for &ra in &radii {
        for &rb in &radii {
            for &pa in &phases {
                for &pb in &phases {
                    let fam = antilinear_family_ab(pa * ra, pb * rb)?;
                    let sq = AntiLinearMap::new(fam.rest_matrix.clone()).square();
                    worst = worst.min(sq.distance_from_identity());
                }
            }
        }
    }
    Ok(worst)
}

/// Helicity eigenvectors of `σ·p̂` with norm `√m`, in Wigner's phase
/// convention: `h₊ = (e^{−iϕ/2} cos(ϑ/2), e^{iϕ/2} sin(ϑ/2))` and
/// `h₋ = (−e^{−iϕ/2} sin(ϑ/2), e^{iϕ/2} cos(ϑ/2))`, where `(ϑ, ϕ)` are the
/// polar and azimuthal angles of `p̂` (`ϕ = 0` on the `z` axis).
pub fn helicity_spinors(direction: &Vector3<f64>, mass: f64) -> Result<Cx2Basis> {
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::InvalidMass(mass));
    }
    let norm = direction.norm();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::InvalidArgument("helicity needs a nonzero direction".into()));
    }
    let n = direction / norm;
    let polar = n.z.clamp(-1.0, 1.0).acos();
    // `+ 0.0` folds −0 into +0 so that the poles get `ϕ = 0`.
    let azimuth = (n.y + 0.0).atan2(n.x + 0.0);
    let s = mass.sqrt();
    let (em, ep) = (C64::from_polar(s, -azimuth / 2.0), C64::from_polar(s, azimuth / 2.0));
    let (ch, sh) = ((polar / 2.0).cos(), (polar / 2.0).sin());
    Ok(Cx2Basis::new([em * ch, ep * sh], [-em * sh, ep * ch]))
}

/// `G` at momentum `q` for the pair `u, v` given at rest:
/// `B(φ) G(u,v) B(φ)⁻¹`.
pub fn boosted_g_operator(basis: &Cx2Basis, q: &FourMomentum, tol: f64) -> Result<ComplexMatrix> {
    let rep = rep_generators(HalfInt::HALF);
    let phi = rapidity_from_momentum(q)?;
    let g = g_operator(basis, tol)?;
    Ok(&(&rep.boost(&phi)? * &g) * &rep.boost(&-phi)?)
}

/// If `G(u,v)` is the value of a covariant family at rapidity `φ`, the rest
/// value `B(φ)⁻¹ G(u,v) B(φ)` is again of the form `G(Eu, Ev)` with
/// `E = exp(σ·φ/2)`; this returns `(Eu, Ev)`.
pub fn rest_frame_basis(basis: &Cx2Basis, phi: &Vector3<f64>) -> Result<Cx2Basis> {
    let e = expm(&sigma_dot(phi).scale_real(0.5))?;
    Ok(basis.map(&e))
}

/// `G(p)` built from the helicity spinors of `p̂`, evaluated along rays
/// towards the origin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OriginReport {
    pub mass: f64,
    pub epsilon: f64,
    /// `‖G(10⁻³ n̂) − G(ε n̂)‖_F` for `n̂ = ẑ`.
    pub ray_cauchy_z: f64,
    /// Same along `x̂`.
    pub ray_cauchy_x: f64,
    /// `‖G(εẑ) − G(εx̂)‖_F`
    pub distance_z_x: f64,
    /// `‖G(εẑ) − G(−εẑ)‖_F`
    pub distance_z_minus_z: f64,
    /// `‖G(εx̂) − G(εŷ)‖_F`
    pub distance_x_y: f64,
}

pub fn helicity_g(direction: &Vector3<f64>, magnitude: f64, mass: f64, tol: f64) -> Result<ComplexMatrix> {
    let n = direction.normalize();
    let q = FourMomentum::new(mass, n * magnitude)?;
    boosted_g_operator(&helicity_spinors(&n, mass)?, &q, tol)
}

pub fn helicity_origin_discontinuity(mass: f64, tol: f64) -> Result<OriginReport> {
    let epsilon = 1e-6;
    let g = |n: Vector3<f64>, eps: f64| helicity_g(&n, eps * mass, mass, tol);
    let (z, x, y) = (Vector3::z(), Vector3::x(), Vector3::y());
    Ok(OriginReport {
        mass,
        epsilon,
        ray_cauchy_z: g(z, 1e-3)?.distance(&g(z, epsilon)?),
        ray_cauchy_x: g(x, 1e-3)?.distance(&g(x, epsilon)?),
        distance_z_x: g(z, epsilon)?.distance(&g(x, epsilon)?),
        distance_z_minus_z: g(z, epsilon)?.distance(&g(-z, epsilon)?),
        distance_x_y: g(x, epsilon)?.distance(&g(y, epsilon)?),
    })
}
