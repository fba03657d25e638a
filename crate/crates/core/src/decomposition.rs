//! The operator `Ξ̃(0)` fixed by the η-orthogonality relations of a spinor
//! set, the involution `K(q)` that is `+1` on the `u`'s and `−1` on the
//! `v`'s, and the factorisation `γ^μ p_μ = m K(q) Ξ(q)`.
//!
//! Writing `W` for the matrix of rest spinors (`u`'s first) and
//! `T = 2m diag(I, −I)`, the relations read `W† Ξ̃†(0) η W = T`. They are
//! solved for the `d²` entries of `Ξ̃†(0)` as a dense linear system whose rank
//! certifies uniqueness. At momentum `q` with boost `B = exp(i𝔎·φ)`:
//! `K(q) = W(q) diag(I, −I) W(q)⁻¹` with `W(q) = B W`, and
//! `Ξ(q) = B Ξ̃†(0) B⁻¹`.

use nalgebra::Vector3;
use serde::Serialize;

use crate::basis::SpinorBasis;
use crate::dirac::{dirac_operator, rest_spinors};
use crate::elko::{elko_spinor, helicity_spinors};
use crate::error::{Error, Result};
use crate::kinematics::{parity_operator, rapidity_from_momentum, FourMomentum};
use crate::linalg::{c, kron, ComplexMatrix, ComplexVector, ToleranceConfig, C64, ONE};
use crate::lorentz::{rep_generators, HalfInt};

fn signature(basis: &SpinorBasis) -> ComplexMatrix {
    let n = basis.spin.multiplicity();
    let diag: Vec<C64> = (0..2 * n).map(|k| if k < n { ONE } else { -ONE }).collect();
    ComplexMatrix::from_diagonal(&diag)
}

/// `Ξ̃(0)` together with the evidence that it is the unique solution.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XiSolution {
    pub xi_tilde: ComplexMatrix,
    /// Rank of the constraint system; unique exactly when it equals `unknowns`.
    pub rank: usize,
    pub unknowns: usize,
    /// `‖W† Ξ̃† η W − T‖_F / 2m`
    pub constraint_residual: f64,
}

/// Solves the η-orthogonality relations for `Ξ̃(0)`.
///
/// Unknown `X = Ξ̃†(0)`: in column-major vectorisation
/// `vec(W† X ηW) = ((ηW)ᵀ ⊗ W†) vec X`.
pub fn xi_tilde_at_rest(basis: &SpinorBasis, tol: &ToleranceConfig) -> Result<XiSolution> {
    let d = basis.dim();
    let w = basis.columns();
    let eta = rep_generators(basis.spin).eta;
    let t = signature(basis).scale_real(2.0 * basis.mass);
    let system = kron(&(&eta * &w).transpose(), &w.adjoint());
    let unknowns = d * d;
    let rank = system.rank(tol.abs_tol);
    if rank < unknowns {
        return Err(Error::RankDeficient { rank, expected: unknowns });
    }
    let rhs = ComplexVector::from_fn(unknowns, |k, _| t.get(k % d, k / d));
    let sol = system.inner().clone().lu().solve(&rhs).ok_or(Error::Singular)?;
    let x = ComplexMatrix::from_fn(d, d, |r, col| sol[col * d + r]);
    let xi_tilde = x.adjoint();
    let constraint_residual = xi_constraint_residual(basis, &xi_tilde);
    Ok(XiSolution { xi_tilde, rank, unknowns, constraint_residual })
}

/// `Ξ̃(0)` from `Ξ̃†(0) = W^{−†} T W⁻¹ η`, the inverse-matrix route.
pub fn xi_tilde_closed_form(basis: &SpinorBasis) -> Result<ComplexMatrix> {
    let w = basis.columns();
    let w_inv = w.inverse()?;
    let eta = rep_generators(basis.spin).eta;
    let t = signature(basis).scale_real(2.0 * basis.mass);
    let x = &(&(&w_inv.adjoint() * &t) * &w_inv) * &eta;
    Ok(x.adjoint())
}

/// `‖W† Ξ̃† η W − T‖_F / 2m`
pub fn xi_constraint_residual(basis: &SpinorBasis, xi_tilde: &ComplexMatrix) -> f64 {
    let w = basis.columns();
    let eta = rep_generators(basis.spin).eta;
    let t = signature(basis).scale_real(2.0 * basis.mass);
    let lhs = &(&(&w.adjoint() * &xi_tilde.adjoint()) * &eta) * &w;
    lhs.distance(&t) / (2.0 * basis.mass)
}

/// The unique linear map with `K u_σ = u_σ` and `K v_σ = −v_σ`.
pub fn k_operator(basis: &SpinorBasis) -> Result<ComplexMatrix> {
    let w = basis.columns();
    Ok(&(&w * &signature(basis)) * &w.inverse()?)
}

/// `K(0) = (1/2m) Σ (u u† + v v†) Ξ̃†(0) η`
pub fn k_from_xi(basis: &SpinorBasis, xi_tilde: &ComplexMatrix) -> ComplexMatrix {
    let eta = rep_generators(basis.spin).eta;
    (&(&basis.completeness_sum() * &xi_tilde.adjoint()) * &eta).scale_real(0.5 / basis.mass)
}

/// `max_{σ,σ′} |u_σ† v_σ′|`
pub fn max_cross_overlap(basis: &SpinorBasis) -> f64 {
    basis.u.iter().flat_map(|u| basis.v.iter().map(move |v| u.dotc(v).norm())).fold(0.0, f64::max)
}

/// Whether the `u`-span and `v`-span are Hermitian orthogonal, i.e. whether
/// `K(0)` is Hermitian.
pub fn hermiticity_condition(basis: &SpinorBasis, abs_tol: f64) -> bool {
    max_cross_overlap(basis) <= abs_tol * 2.0 * basis.mass
}

/// Replaces each of the `u` and `v` sets by `U (U†U / 2m)^{−1/2}`: same
/// span, so the same `K`, with `U†U = 2m I`.
pub fn lowdin_orthonormalize(basis: &SpinorBasis, tol: f64) -> Result<SpinorBasis> {
    let fix = |set: &[ComplexVector]| -> Result<Vec<ComplexVector>> {
        let u = ComplexMatrix::from_columns(set)?;
        let s = (&u.adjoint() * &u).scale_real(0.5 / basis.mass);
        let eig = nalgebra::SymmetricEigen::new(s.into_inner());
        let smallest = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        if smallest.is_nan() || smallest <= tol {
            return Err(Error::DegenerateBasis(smallest.max(0.0)));
        }
        let v = ComplexMatrix::from(eig.eigenvectors);
        let inv_sqrt: Vec<C64> = eig.eigenvalues.iter().map(|&l| c(l.powf(-0.5), 0.0)).collect();
        let root = &(&v * &ComplexMatrix::from_diagonal(&inv_sqrt)) * &v.adjoint();
        let fixed = &u * &root;
        Ok((0..set.len()).map(|k| fixed.column(k)).collect())
    };
    SpinorBasis::new(basis.spin, basis.mass, fix(&basis.u)?, fix(&basis.v)?)
}

/// The parity eigenbasis at rest.
pub fn canonical_basis(j: HalfInt, mass: f64) -> Result<SpinorBasis> {
    rest_spinors(j, mass)
}

/// The spin-½ basis built from the helicity spinors `h±` of `direction`
/// (norm `√m`): `u = (ũ₊(h₊), ũ₊(h₋))`, `v = (ũ₋(h₊), ũ₋(h₋))`. Its `K(0)`
/// is the charge-conjugation split `G(h₊, h₋)`.
pub fn helicity_basis(mass: f64, direction: &Vector3<f64>) -> Result<SpinorBasis> {
    let h = helicity_spinors(direction, mass)?;
    SpinorBasis::new(
        HalfInt::HALF,
        mass,
        vec![elko_spinor(h.u, 1)?, elko_spinor(h.v, 1)?],
        vec![elko_spinor(h.u, -1)?, elko_spinor(h.v, -1)?],
    )
}

/// Everything computed on the way from a rest basis to `K(q) Ξ(q)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Decomposition {
    pub spin_twice: u32,
    pub mass: f64,
    pub momentum: [f64; 3],
    /// The Hermitian-orthogonal rest basis actually used.
    pub rest_basis: SpinorBasis,
    pub xi_tilde_rest: ComplexMatrix,
    pub rank: usize,
    #[serde(rename = "K")]
    pub k: ComplexMatrix,
    #[serde(rename = "Xi")]
    pub xi: ComplexMatrix,
    /// `‖P(q) − K(q) Ξ(q)‖_F / ‖P(q)‖_F`; at spin ½ this equals
    /// `‖γ^μ p_μ − m K Ξ‖_F / ‖γ^μ p_μ‖_F`.
    pub residual: f64,
    /// Distances between consecutive products of [`derivation_chain`].
    pub chain_residuals: Vec<f64>,
    /// `‖Ξ̃ from the linear system − Ξ̃ from W⁻¹‖_F`
    pub route_agreement: f64,
}

/// The five equal expressions for `K(q)` in the Hermitian case:
///
/// 1. `W(q) diag(I, −I) W(q)⁻¹`
/// 2. `(1/2m) Σ w(q) w(q)† Ξ̃†(q) η` with `Ξ̃(q) = B Ξ̃(0) B⁻¹`
/// 3. `B Ξ̃†(0) B† η`
/// 4. `(B Ξ̃†(0) B⁻¹)(B η B⁻¹)`
/// 5. `Ξ(q) P(q)` with `P(q) = exp(2i𝔎·φ) η`
pub fn derivation_chain(rest: &SpinorBasis, xi_tilde: &ComplexMatrix, q: &FourMomentum) -> Result<[ComplexMatrix; 5]> {
    let rep = rep_generators(rest.spin);
    let phi = rapidity_from_momentum(q)?;
    let b = rep.boost(&phi)?;
    let b_inv = rep.boost(&-phi)?;
    let x = xi_tilde.adjoint();
    let moved = rest.map(&b);
    let step1 = k_operator(&moved)?;
    let xi_tilde_q = &(&b * xi_tilde) * &b_inv;
    let step2 = (&(&moved.completeness_sum() * &xi_tilde_q.adjoint()) * &rep.eta).scale_real(0.5 / rest.mass);
    let step3 = &(&(&b * &x) * &b.adjoint()) * &rep.eta;
    let xi_q = &(&b * &x) * &b_inv;
    let step4 = &xi_q * &(&(&b * &rep.eta) * &b_inv);
    let step5 = &xi_q * &parity_operator(&rep, q)?;
    Ok([step1, step2, step3, step4, step5])
}

/// Builds `K(q)` and `Ξ(q)` from a rest basis and checks `K Ξ = P(q)`.
///
/// A rest basis whose `u`- and `v`-spans are not Hermitian orthogonal is
/// rejected: `Ξ` at rest then needs a definition beyond the η-relations.
pub fn decompose(rest: &SpinorBasis, q: &FourMomentum, tol: &ToleranceConfig) -> Result<Decomposition> {
    if (q.mass() - rest.mass).abs() > tol.rel_tol * rest.mass {
        return Err(Error::OffShell(format!("basis mass {} but momentum mass {}", rest.mass, q.mass())));
    }
    let overlap = max_cross_overlap(rest);
    if overlap > tol.abs_tol * 2.0 * rest.mass {
        return Err(Error::NonHermitianBasis(overlap));
    }
    let basis = lowdin_orthonormalize(rest, tol.abs_tol)?;
    let solution = xi_tilde_at_rest(&basis, tol)?;
    let route_agreement = solution.xi_tilde.distance(&xi_tilde_closed_form(&basis)?);
    let chain = derivation_chain(&basis, &solution.xi_tilde, q)?;
    let chain_residuals = chain.windows(2).map(|w| w[0].distance(&w[1])).collect();

    let rep = rep_generators(basis.spin);
    let phi = rapidity_from_momentum(q)?;
    let b = rep.boost(&phi)?;
    let xi = &(&b * &solution.xi_tilde.adjoint()) * &rep.boost(&-phi)?;
    let k = k_operator(&basis.map(&b))?;
    let product = &k * &xi;
    let residual = if basis.spin == HalfInt::HALF {
        let slash = dirac_operator(q);
        slash.distance(&product.scale_real(q.mass())) / slash.frobenius_norm()
    } else {
        let p = parity_operator(&rep, q)?;
        p.distance(&product) / p.frobenius_norm()
    };
    let m = q.momentum();
    Ok(Decomposition {
        spin_twice: basis.spin.twice(),
        mass: basis.mass,
        momentum: [m.x, m.y, m.z],
        rest_basis: basis.clone(),
        xi_tilde_rest: solution.xi_tilde,
        rank: solution.rank,
        k,
        xi,
        residual,
        chain_residuals,
        route_agreement,
    })
}

/// `‖γ^μ p_μ − m K(q) Ξ(q)‖_F / ‖γ^μ p_μ‖_F` for a spin-½ rest basis.
pub fn decomposition_residual(rest: &SpinorBasis, q: &FourMomentum, tol: &ToleranceConfig) -> Result<f64> {
    if rest.spin != HalfInt::HALF {
        return Err(Error::RequiresSpinHalf(rest.spin.to_string()));
    }
    Ok(decompose(rest, q, tol)?.residual)
}
