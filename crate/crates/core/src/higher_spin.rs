//! Spin-`j` parity operator as a field equation, its spectrum, the symmetric
//! gamma tensor `γ^{μ₁⋯μ_{2j}}` recovered by least squares, and the swap
//! operator on `(j,0)⊗(0,j)`.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dirac::sign_of;
use crate::error::{Error, Result};
use crate::kinematics::{parity_operator, sample_momentum, FourMomentum, KinematicOperatorFamily};
use crate::linalg::{c, kron_vec, ComplexMatrix, ComplexVector, C64, ONE, ZERO};
use crate::lorentz::{rep_generators, tensor_rep_generators, HalfInt};

/// `‖(P_j(q) − sign) ψ‖ / ‖ψ‖`, with `P_j` in exponential form.
pub fn field_equation_residual(j: HalfInt, psi: &ComplexVector, q: &FourMomentum, sign: i8) -> Result<f64> {
    let norm = psi.norm();
    if norm == 0.0 {
        return Err(Error::ZeroSpinor);
    }
    if psi.len() != j.dirac_dim() {
        return Err(Error::DimensionMismatch { expected: j.dirac_dim(), found: psi.len() });
    }
    let p = parity_operator(&rep_generators(j), q)?;
    let shifted = &p - &ComplexMatrix::identity(psi.len()).scale_real(sign_of(sign)?);
    Ok(shifted.apply(psi).norm() / norm)
}

/// `‖P_j(q)² − I‖_F / dim`: the on-shell content of `(p^μ p_μ)^{2j} = m^{4j}`.
pub fn contraction_identity_residual(j: HalfInt, q: &FourMomentum) -> Result<f64> {
    let p = parity_operator(&rep_generators(j), q)?;
    Ok((&p * &p).distance_from_identity() / p.rows() as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ParitySpectrum {
    pub eigenvalues: Vec<[f64; 2]>,
    pub determinant: [f64; 2],
    /// Eigenvalues within `tol` of +1 and of −1.
    pub plus_count: usize,
    pub minus_count: usize,
    /// Largest distance of an eigenvalue from the nearer of ±1.
    pub max_deviation: f64,
}

/// Eigenvalues and determinant of `P_j(q)`, with eigenvalues classified as
/// +1 or −1 when within `tol`.
pub fn parity_spectrum(j: HalfInt, q: &FourMomentum, tol: f64) -> Result<ParitySpectrum> {
    let p = parity_operator(&rep_generators(j), q)?;
    let ev = p.eigenvalues()?;
    let det = p.determinant()?;
    let dist = |z: &C64, t: f64| (z - c(t, 0.0)).norm();
    let plus_count = ev.iter().filter(|z| dist(z, 1.0) <= tol).count();
    let minus_count = ev.iter().filter(|z| dist(z, -1.0) <= tol).count();
    let max_deviation = ev.iter().map(|z| dist(z, 1.0).min(dist(z, -1.0))).fold(0.0, f64::max);
    Ok(ParitySpectrum {
        eigenvalues: ev.iter().map(|z| [z.re, z.im]).collect(),
        determinant: [det.re, det.im],
        plus_count,
        minus_count,
        max_deviation,
    })
}

/// Sorted multi-indices of length `n` over `{0,1,2,3}`.
pub fn symmetric_indices(n: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, start: u8, prefix: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for mu in start..4 {
            prefix.push(mu);
            rec(n, mu, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Number of distinct orderings of a sorted multi-index.
fn orderings(index: &[u8]) -> f64 {
    let fact = |k: usize| (1..=k).map(|x| x as f64).product::<f64>();
    let mut counts = [0usize; 4];
    for &mu in index {
        counts[mu as usize] += 1;
    }
    fact(index.len()) / counts.iter().map(|&k| fact(k)).product::<f64>()
}

fn monomial(index: &[u8], p: &[f64; 4]) -> f64 {
    index.iter().map(|&mu| p[mu as usize]).product()
}

/// Symmetric rank-`2j` tensor of matrices, stored once per sorted multi-index.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaTensor {
    pub spin: HalfInt,
    pub components: BTreeMap<Vec<u8>, ComplexMatrix>,
}

impl GammaTensor {
    /// Component for any ordering of the indices.
    pub fn get(&self, indices: &[u8]) -> Option<&ComplexMatrix> {
        let mut key = indices.to_vec();
        key.sort_unstable();
        self.components.get(&key)
    }

    /// `γ^{μ₁⋯μ_{2j}} p_{μ₁}⋯p_{μ_{2j}}`
    pub fn contract(&self, q: &FourMomentum) -> ComplexMatrix {
        let p = q.covariant();
        let p = [p[0], p[1], p[2], p[3]];
        let d = self.spin.dirac_dim();
        self.components
            .iter()
            .fold(ComplexMatrix::zeros(d, d), |acc, (idx, g)| &acc + &g.scale_real(orderings(idx) * monomial(idx, &p)))
    }

    /// `max ‖contract(q) − m^{2j} P_j(q)‖_F / ‖m^{2j} P_j(q)‖_F` over `samples`
    /// fresh momenta.
    pub fn reconstruction_residual(&self, samples: usize, seed: u64) -> Result<f64> {
        let rep = rep_generators(self.spin);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let qs: Vec<FourMomentum> = (0..samples).map(|_| sample_momentum(&mut rng)).collect();
        let res: Vec<f64> = qs
            .par_iter()
            .map(|q| {
                let target = parity_operator(&rep, q)?.scale_real(q.mass().powi(self.spin.twice() as i32));
                Ok(self.contract(q).distance(&target) / target.frobenius_norm())
            })
            .collect::<Result<_>>()?;
        Ok(res.into_iter().fold(0.0, f64::max))
    }
}

impl Serialize for GammaTensor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Component<'a> {
            indices: &'a [u8],
            matrix: &'a ComplexMatrix,
        }
        #[derive(Serialize)]
        struct Wire<'a> {
            spin_twice: u32,
            components: Vec<Component<'a>>,
        }
        Wire {
            spin_twice: self.spin.twice(),
            components: self.components.iter().map(|(k, m)| Component { indices: k, matrix: m }).collect(),
        }
        .serialize(serializer)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaTensorFit {
    pub seed: u64,
    pub samples: usize,
    pub tensor: GammaTensor,
    /// Worst relative residual on the fitted samples.
    pub max_residual: f64,
    /// Smallest singular value of the scaled design matrix over the largest.
    pub design_conditioning: f64,
}

/// Least-squares fit of `γ^{μ₁⋯μ_{2j}}` to `m^{2j} P_j(q)` over seeded
/// on-shell samples across masses.
///
/// Every sample row is divided by `E^{2j}` (the target is homogeneous of
/// degree `2j` in `p_μ`). The minimum-norm solution is taken from the SVD.
pub fn extract_gamma_tensor(j: HalfInt, sample_count: usize, seed: u64) -> Result<GammaTensorFit> {
    let n = j.twice() as usize;
    let indices = symmetric_indices(n);
    let unknowns = indices.len();
    if sample_count < 3 * unknowns {
        return Err(Error::InvalidArgument(format!(
            "need at least {} samples for spin {j}, got {sample_count}",
            3 * unknowns
        )));
    }
    let rep = rep_generators(j);
    let d = j.dirac_dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let qs: Vec<FourMomentum> = (0..sample_count).map(|_| sample_momentum(&mut rng)).collect();

    let rows: Vec<(Vec<f64>, ComplexMatrix)> = qs
        .par_iter()
        .map(|q| {
            let e = q.energy();
            let p = q.covariant() / e;
            let p = [p[0], p[1], p[2], p[3]];
            let design: Vec<f64> = indices.iter().map(|idx| orderings(idx) * monomial(idx, &p)).collect();
            let target = parity_operator(&rep, q)?.scale_real((q.mass() / e).powi(n as i32));
            Ok((design, target))
        })
        .collect::<Result<_>>()?;

    let a = DMatrix::from_fn(sample_count, unknowns, |r, k| rows[r].0[k]);
    let b_re = DMatrix::from_fn(sample_count, d * d, |r, k| rows[r].1.get(k / d, k % d).re);
    let b_im = DMatrix::from_fn(sample_count, d * d, |r, k| rows[r].1.get(k / d, k % d).im);

    let svd = nalgebra::SVD::new(a, true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let eps = 1e-12 * smax;
    let rank = svd.rank(eps);
    if rank < unknowns {
        return Err(Error::RankDeficient { rank, expected: unknowns });
    }
    let x_re = svd.solve(&b_re, eps).map_err(|e| Error::InvalidArgument(e.into()))?;
    let x_im = svd.solve(&b_im, eps).map_err(|e| Error::InvalidArgument(e.into()))?;

    let mut components = BTreeMap::new();
    for (k, idx) in indices.iter().enumerate() {
        let m = ComplexMatrix::from_fn(d, d, |r, col| c(x_re[(k, r * d + col)], x_im[(k, r * d + col)]));
        components.insert(idx.clone(), m);
    }
    let tensor = GammaTensor { spin: j, components };
    let max_residual = qs
        .par_iter()
        .map(|q| {
            let target = parity_operator(&rep, q)?.scale_real(q.mass().powi(n as i32));
            Ok(tensor.contract(q).distance(&target) / target.frobenius_norm())
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(GammaTensorFit { seed, samples: sample_count, tensor, max_residual, design_conditioning: smin / smax })
}

/// The swap `S(x⊗y) = y⊗x` on `ℂ^{2j+1} ⊗ ℂ^{2j+1}`.
pub fn tensor_swap_operator(j: HalfInt) -> ComplexMatrix {
    let n = j.multiplicity();
    ComplexMatrix::from_fn(n * n, n * n, |row, col| {
        let (a, b) = (col / n, col % n);
        if row == b * n + a {
            ONE
        } else {
            ZERO
        }
    })
}

/// The kinematic family on `(j,0)⊗(0,j)` with rest value the swap operator.
pub fn swap_family(j: HalfInt) -> KinematicOperatorFamily {
    KinematicOperatorFamily::new(tensor_rep_generators(j).generators, tensor_swap_operator(j), false)
        .expect("swap matches product dimension")
}

/// `t(ψ_R, ψ_L) = ψ_R ⊗ ψ_L`, mapping `(j,0)⊕(0,j)` into `(j,0)⊗(0,j)`.
pub fn tensor_product_map(psi: &ComplexVector) -> Result<ComplexVector> {
    if !psi.len().is_multiple_of(2) {
        return Err(Error::DimensionMismatch { expected: psi.len() + 1, found: psi.len() });
    }
    let n = psi.len() / 2;
    let right: ComplexVector = DVector::from_iterator(n, psi.rows(0, n).iter().copied());
    let left: ComplexVector = DVector::from_iterator(n, psi.rows(n, n).iter().copied());
    Ok(kron_vec(&right, &left))
}

/// `‖t(P(q)ψ) − A(q) t(ψ)‖ / ‖t(ψ)‖` with `A` the swap family.
pub fn intertwining_residual(j: HalfInt, psi: &ComplexVector, q: &FourMomentum) -> Result<f64> {
    let p = parity_operator(&rep_generators(j), q)?;
    let a = swap_family(j).evaluate(q)?;
    let t_psi = tensor_product_map(psi)?;
    let norm = t_psi.norm();
    if norm == 0.0 {
        return Err(Error::ZeroSpinor);
    }
    let lhs = tensor_product_map(&p.apply(psi))?;
    Ok((lhs - a.apply(&t_psi)).norm() / norm)
}

/// `‖A(q) t(ψ) − t(ψ)‖ / ‖t(ψ)‖`: zero when `tψ` is a +1 eigenvector.
pub fn swap_eigen_residual(j: HalfInt, psi: &ComplexVector, q: &FourMomentum) -> Result<f64> {
    let a = swap_family(j).evaluate(q)?;
    let t_psi = tensor_product_map(psi)?;
    let norm = t_psi.norm();
    if norm == 0.0 {
        return Err(Error::ZeroSpinor);
    }
    Ok((a.apply(&t_psi) - &t_psi).norm() / norm)
}
