//! Spin-½: gamma matrices in the chiral basis, `γ^μ p_μ`, and the
//! parity eigenspinors of any `(j,0)⊕(0,j)` representation.
//!
//! The `γ^i` sign is fixed by requiring `γ^μ p_μ = m P(q)` with the boost
//! convention `exp(i𝔎·φ) = diag(exp(σ·φ/2), exp(−σ·φ/2))`, which gives
//! `γ⁰ = η` and `γ^i = [[0, −σ_i], [σ_i, 0]]`.

use nalgebra::DVector;
use serde::Serialize;

use crate::basis::SpinorBasis;
use crate::error::{Error, Result};
use crate::kinematics::{rapidity_from_momentum, FourMomentum};
use crate::linalg::{c, ComplexMatrix, ComplexVector, ZERO};
use crate::lorentz::{chirality_swap, pauli, rep_generators, HalfInt};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GammaSet {
    pub gamma: [ComplexMatrix; 4],
}

impl GammaSet {
    /// `max_{μ,ν} ‖{γ^μ, γ^ν} − 2g^{μν} I‖_F`
    pub fn clifford_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for nu in mu..4 {
                let g = match (mu, nu) {
                    (0, 0) => 2.0,
                    (a, b) if a == b => -2.0,
                    _ => 0.0,
                };
                let r = self.gamma[mu].anticommutator(&self.gamma[nu]);
                worst = worst.max(r.distance(&ComplexMatrix::identity(4).scale_real(g)));
            }
        }
        worst
    }

    /// `γ^μ p_μ = γ⁰E − γ^i p^i`
    pub fn slash(&self, q: &FourMomentum) -> ComplexMatrix {
        let p = q.covariant();
        (0..4).fold(ComplexMatrix::zeros(4, 4), |acc, mu| &acc + &self.gamma[mu].scale_real(p[mu]))
    }
}

pub fn gamma_matrices() -> GammaSet {
    let z = ComplexMatrix::zeros(2, 2);
    let [sx, sy, sz] = pauli();
    let spatial = |s: &ComplexMatrix| ComplexMatrix::from_blocks(&z, &-s, s, &z).expect("2x2 blocks");
    GammaSet { gamma: [chirality_swap(2), spatial(&sx), spatial(&sy), spatial(&sz)] }
}

/// `γ^μ p_μ` for an on-shell momentum.
pub fn dirac_operator(q: &FourMomentum) -> ComplexMatrix {
    gamma_matrices().slash(q)
}

fn unit(n: usize, k: usize, scale: f64) -> ComplexVector {
    DVector::from_fn(n, |i, _| if i == k { c(scale, 0.0) } else { ZERO })
}

/// Parity eigenspinors at rest: `u_σ = (θ_σ, θ_σ)`, `v_σ = (θ_σ, −θ_σ)`
/// with `θ_σ` the `J_z` eigenvectors scaled to give `‖u‖ = ‖v‖ = √(2m)`.
pub fn rest_spinors(j: HalfInt, mass: f64) -> Result<SpinorBasis> {
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::InvalidMass(mass));
    }
    let n = j.multiplicity();
    let s = mass.sqrt();
    let theta: Vec<ComplexVector> = (0..n).map(|k| unit(n, k, s)).collect();
    let stack = |t: &ComplexVector, sign: f64| {
        let mut out = DVector::from_element(2 * n, ZERO);
        out.rows_mut(0, n).copy_from(t);
        out.rows_mut(n, n).copy_from(&(t * c(sign, 0.0)));
        out
    };
    SpinorBasis::new(
        j,
        mass,
        theta.iter().map(|t| stack(t, 1.0)).collect(),
        theta.iter().map(|t| stack(t, -1.0)).collect(),
    )
}

/// Splits a rest-frame spinor `(θ, λ)` into its `+1` and `−1` parity parts,
/// `½(θ+λ, λ+θ)` and `½(θ−λ, λ−θ)`.
pub fn split_rest_spinor(psi: &ComplexVector) -> Result<(ComplexVector, ComplexVector)> {
    if !psi.len().is_multiple_of(2) {
        return Err(Error::DimensionMismatch { expected: psi.len() + 1, found: psi.len() });
    }
    let n = psi.len() / 2;
    let (theta, lambda) = (psi.rows(0, n), psi.rows(n, n));
    let sum = (theta + lambda) * c(0.5, 0.0);
    let diff = (theta - lambda) * c(0.5, 0.0);
    let mut even = DVector::from_element(2 * n, ZERO);
    let mut odd = DVector::from_element(2 * n, ZERO);
    even.rows_mut(0, n).copy_from(&sum);
    even.rows_mut(n, n).copy_from(&sum);
    odd.rows_mut(0, n).copy_from(&diff);
    odd.rows_mut(n, n).copy_from(&(-diff));
    Ok((even, odd))
}

/// Rest spinors carried to `q` by `exp(i𝔎·φ)`.
pub fn boosted_spinors(j: HalfInt, q: &FourMomentum) -> Result<SpinorBasis> {
    let rep = rep_generators(j);
    rest_spinors(j, q.mass())?.boosted(&rep.generators, &rapidity_from_momentum(q)?)
}

/// `‖(γ^μ p_μ − sign·m) ψ‖ / (m ‖ψ‖)`
pub fn dirac_residual(psi: &ComplexVector, q: &FourMomentum, sign: i8) -> Result<f64> {
    let norm = psi.norm();
    if norm == 0.0 {
        return Err(Error::ZeroSpinor);
    }
    if psi.len() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: psi.len() });
    }
    let m = q.mass();
    let op = &dirac_operator(q) - &ComplexMatrix::identity(4).scale_real(sign_of(sign)? * m);
    Ok(op.apply(psi).norm() / (m * norm))
}

pub(crate) fn sign_of(sign: i8) -> Result<f64> {
    match sign {
        1 => Ok(1.0),
        -1 => Ok(-1.0),
        other => Err(Error::InvalidArgument(format!("sign must be +1 or -1, got {other}"))),
    }
}
