//! Generators of the chiral `(j,0)⊕(0,j)` and `(j,0)⊗(0,j)` representations
//! and the matching 4-vector transformations.
//!
//! Conventions:
//! - the top block of a `(j,0)⊕(0,j)` spinor is the `(j,0)` component, so
//!   `exp(i𝔎·φ) = diag(exp(+J·φ), exp(−J·φ))`;
//! - inside each block the basis is the `J_z` eigenbasis, `m = j, j−1, …, −j`;
//! - the metric is `diag(+1, −1, −1, −1)`.

use std::fmt;

use nalgebra::{Matrix4, Vector3, Vector4};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{c, expm, kron, ComplexMatrix, I, ONE, ZERO};

/// Largest admissible rapidity (and rotation angle bound for the same guard).
pub const MAX_RAPIDITY: f64 = 30.0;

/// A non-negative half-integer `j = twice_value / 2`, with `j ≥ 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HalfInt {
    twice_value: u32,
}

impl HalfInt {
    pub const HALF: HalfInt = HalfInt { twice_value: 1 };
    pub const ONE: HalfInt = HalfInt { twice_value: 2 };
    pub const THREE_HALVES: HalfInt = HalfInt { twice_value: 3 };
    pub const TWO: HalfInt = HalfInt { twice_value: 4 };

    pub fn from_twice(twice_value: u32) -> Result<Self> {
        if twice_value == 0 {
            return Err(Error::InvalidSpin(twice_value));
        }
        Ok(Self { twice_value })
    }

    pub fn twice(self) -> u32 {
        self.twice_value
    }

    pub fn value(self) -> f64 {
        self.twice_value as f64 / 2.0
    }

    /// `2j + 1`, the size of one chiral block.
    pub fn multiplicity(self) -> usize {
        self.twice_value as usize + 1
    }

    /// `2(2j + 1)`, the dimension of `(j,0)⊕(0,j)`.
    pub fn dirac_dim(self) -> usize {
        2 * self.multiplicity()
    }

    /// Projections `m = j, j−1, …, −j`.
    pub fn projections(self) -> Vec<f64> {
        (0..self.multiplicity()).map(|k| self.value() - k as f64).collect()
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice_value.is_multiple_of(2) {
            write!(f, "{}", self.twice_value / 2)
        } else {
            write!(f, "{}/2", self.twice_value)
        }
    }
}

/// Parses `j` written as `1/2`, `3/2`, `1`, `0.5`, `1.5`, ….
impl std::str::FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidArgument(format!("spin must be a positive multiple of 1/2, got {s:?}"));
        let twice = match s.split_once('/') {
            Some((num, "2")) => num.trim().parse::<u32>().map_err(|_| bad())?,
            Some(_) => return Err(bad()),
            None => {
                let x: f64 = s.parse().map_err(|_| bad())?;
                let t = 2.0 * x;
                if !(t.is_finite() && t >= 1.0 && t.fract() == 0.0 && t <= u32::MAX as f64) {
                    return Err(bad());
                }
                t as u32
            }
        };
        Self::from_twice(twice).map_err(|_| bad())
    }
}

/// Spin-`j` angular momentum matrices `(J_x, J_y, J_z)` in the descending
/// `J_z` eigenbasis.
pub fn spin_matrices(j: HalfInt) -> [ComplexMatrix; 3] {
    let n = j.multiplicity();
    let jj = j.value() * (j.value() + 1.0);
    let ms = j.projections();
    // J₊ |m⟩ = √(j(j+1) − m(m+1)) |m+1⟩; |m+1⟩ sits one index earlier.
    let raise = ComplexMatrix::from_fn(n, n, |row, col| {
        if col >= 1 && row == col - 1 {
            let m = ms[col];
            c((jj - m * (m + 1.0)).max(0.0).sqrt(), 0.0)
        } else {
            ZERO
        }
    });
    let lower = raise.adjoint();
    let jx = (&raise + &lower).scale_real(0.5);
    let jy = (&raise - &lower).scale(c(0.0, -0.5));
    let jz = ComplexMatrix::from_diagonal(&ms.iter().map(|&m| c(m, 0.0)).collect::<Vec<_>>());
    [jx, jy, jz]
}

/// Rotation and boost generators of a finite-dimensional representation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Generators {
    /// `𝔍_x, 𝔍_y, 𝔍_z`
    pub rotations: [ComplexMatrix; 3],
    /// `𝔎_x, 𝔎_y, 𝔎_z`
    pub boosts: [ComplexMatrix; 3],
}

fn contract(gens: &[ComplexMatrix; 3], v: &Vector3<f64>) -> ComplexMatrix {
    let n = gens[0].rows();
    gens.iter().zip(v.iter()).fold(ComplexMatrix::zeros(n, n), |acc, (g, &x)| &acc + &g.scale_real(x))
}

impl Generators {
    pub fn dim(&self) -> usize {
        self.rotations[0].rows()
    }

    /// `exp(i𝔎·φ)`.
    pub fn boost(&self, phi: &Vector3<f64>) -> Result<ComplexMatrix> {
        guard_parameter(phi)?;
        expm(&contract(&self.boosts, phi).scale(I))
    }

    /// `exp(i𝔍·θ)`.
    pub fn rotation(&self, theta: &Vector3<f64>) -> Result<ComplexMatrix> {
        guard_parameter(theta)?;
        expm(&contract(&self.rotations, theta).scale(I))
    }

    /// `i𝔎_a`, the generators that appear in the exponent of a boost.
    pub fn boost_exponents(&self) -> [ComplexMatrix; 3] {
        [0, 1, 2].map(|a| self.boosts[a].scale(I))
    }

    /// Largest deviation from `[𝔍_a,𝔍_b] = iε𝔍_c`, `[𝔎_a,𝔎_b] = −iε𝔍_c` and
    /// `[𝔍_a,𝔎_b] = iε𝔎_c`.
    pub fn algebra_residual(&self) -> f64 {
        let (jm, km) = (&self.rotations, &self.boosts);
        let mut worst: f64 = 0.0;
        for (a, b, cc) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            worst = worst
                .max(jm[a].commutator(&jm[b]).distance(&jm[cc].scale(I)))
                .max(km[a].commutator(&km[b]).distance(&jm[cc].scale(-I)))
                .max(jm[a].commutator(&km[b]).distance(&km[cc].scale(I)));
        }
        worst
    }
}

fn guard_parameter(v: &Vector3<f64>) -> Result<()> {
    let n = v.norm();
    if !n.is_finite() {
        return Err(Error::InvalidArgument("non-finite group parameter".into()));
    }
    if n > MAX_RAPIDITY {
        return Err(Error::RapidityOverflow(n));
    }
    Ok(())
}

/// Generators of `(j,0)⊕(0,j)` together with the chirality swap `η`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RepGenerators {
    pub spin: HalfInt,
    #[serde(flatten)]
    pub generators: Generators,
    pub eta: ComplexMatrix,
}

impl RepGenerators {
    pub fn dim(&self) -> usize {
        self.spin.dirac_dim()
    }

    pub fn rotations(&self) -> &[ComplexMatrix; 3] {
        &self.generators.rotations
    }

    pub fn boosts(&self) -> &[ComplexMatrix; 3] {
        &self.generators.boosts
    }

    pub fn boost(&self, phi: &Vector3<f64>) -> Result<ComplexMatrix> {
        self.generators.boost(phi)
    }

    pub fn rotation(&self, theta: &Vector3<f64>) -> Result<ComplexMatrix> {
        self.generators.rotation(theta)
    }
}

/// `η = [[0, I], [I, 0]]` with identity blocks of size `n`.
pub fn chirality_swap(n: usize) -> ComplexMatrix {
    let id = ComplexMatrix::identity(n);
    let z = ComplexMatrix::zeros(n, n);
    ComplexMatrix::from_blocks(&z, &id, &id, &z).expect("square blocks")
}

/// `𝔍 = diag(J, J)`, `𝔎 = diag(−iJ, +iJ)` and `η`.
pub fn rep_generators(j: HalfInt) -> RepGenerators {
    let spin = spin_matrices(j);
    let rotations = [0, 1, 2].map(|a| ComplexMatrix::block_diag(&spin[a], &spin[a]));
    let boosts = [0, 1, 2].map(|a| ComplexMatrix::block_diag(&spin[a].scale(-I), &spin[a].scale(I)));
    RepGenerators { spin: j, generators: Generators { rotations, boosts }, eta: chirality_swap(j.multiplicity()) }
}

/// Generators of `(j,0)⊗(0,j)` on the `(2j+1)²`-dimensional product space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensorRepGenerators {
    pub spin: HalfInt,
    #[serde(flatten)]
    pub generators: Generators,
}

/// `J⊗ = J⊗I + I⊗J`, `K⊗ = (−iJ)⊗I + I⊗(+iJ)`.
pub fn tensor_rep_generators(j: HalfInt) -> TensorRepGenerators {
    let spin = spin_matrices(j);
    let id = ComplexMatrix::identity(j.multiplicity());
    let rotations = [0, 1, 2].map(|a| &kron(&spin[a], &id) + &kron(&id, &spin[a]));
    let boosts = [0, 1, 2].map(|a| &kron(&spin[a].scale(-I), &id) + &kron(&id, &spin[a].scale(I)));
    TensorRepGenerators { spin: j, generators: Generators { rotations, boosts } }
}

/// Minkowski metric `diag(+1, −1, −1, −1)`.
pub fn metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

/// A 4×4 real matrix acting on contravariant `(p⁰, p¹, p², p³)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzTransform {
    pub matrix: Matrix4<f64>,
}

impl LorentzTransform {
    pub fn identity() -> Self {
        Self { matrix: Matrix4::identity() }
    }

    pub fn apply(&self, p: &Vector4<f64>) -> Vector4<f64> {
        self.matrix * p
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LorentzTransform) -> LorentzTransform {
        LorentzTransform { matrix: self.matrix * other.matrix }
    }

    /// Max-entry deviation of `Λᵀ g Λ` from `g`.
    pub fn metric_residual(&self) -> f64 {
        let g = metric();
        (self.matrix.transpose() * g * self.matrix - g).amax()
    }

    /// The vector rotation represented by `exp(i𝔍·θ)` in these conventions:
    /// a rotation by `−|θ|` about `θ̂`.
    pub fn rotation(theta: &Vector3<f64>) -> Result<Self> {
        guard_parameter(theta)?;
        let angle = theta.norm();
        let mut matrix = Matrix4::identity();
        if angle > 0.0 {
            let n = theta / angle;
            let (s, co) = (-angle).sin_cos();
            for a in 0..3 {
                for b in 0..3 {
                    let delta = if a == b { 1.0 } else { 0.0 };
                    let mut cross = 0.0;
                    for k in 0..3 {
                        cross += levi_civita(a, k, b) * n[k];
                    }
                    matrix[(a + 1, b + 1)] = co * delta + (1.0 - co) * n[a] * n[b] + s * cross;
                }
            }
        }
        Ok(Self { matrix })
    }
}

fn levi_civita(a: usize, b: usize, cc: usize) -> f64 {
    match (a, b, cc) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Pure boost with rapidity vector `φ`, taking a particle at rest to
/// momentum along `+φ̂`. Paired with `exp(i𝔎·φ)` on spinors.
pub fn vector_boost(phi: &Vector3<f64>) -> Result<LorentzTransform> {
    guard_parameter(phi)?;
    let rapidity = phi.norm();
    let mut matrix = Matrix4::identity();
    if rapidity > 0.0 {
        let n = phi / rapidity;
        let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
        matrix[(0, 0)] = ch;
        for a in 0..3 {
            matrix[(0, a + 1)] = sh * n[a];
            matrix[(a + 1, 0)] = sh * n[a];
            for b in 0..3 {
                let delta = if a == b { 1.0 } else { 0.0 };
                matrix[(a + 1, b + 1)] = delta + (ch - 1.0) * n[a] * n[b];
            }
        }
    }
    Ok(LorentzTransform { matrix })
}

/// Pauli matrices `σ_x, σ_y, σ_z`.
pub fn pauli() -> [ComplexMatrix; 3] {
    [
        ComplexMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]),
        ComplexMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]),
        ComplexMatrix::from_rows(&[[ONE, ZERO], [ZERO, -ONE]]),
    ]
}

/// `σ·v`
pub fn sigma_dot(v: &Vector3<f64>) -> ComplexMatrix {
    contract(&pauli(), v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::C64;
    use proptest::prelude::*;

    fn all_spins() -> Vec<HalfInt> {
        (1..=4).map(|t| HalfInt::from_twice(t).unwrap()).collect()
    }

    #[test]
    fn half_int_labels() {
        assert!(HalfInt::from_twice(0).is_err());
        assert_eq!(HalfInt::THREE_HALVES.to_string(), "3/2");
        assert_eq!(HalfInt::TWO.to_string(), "2");
        assert_eq!(HalfInt::ONE.dirac_dim(), 6);
    }

    #[test]
    fn half_int_parsing() {
        assert_eq!("1/2".parse::<HalfInt>().unwrap(), HalfInt::HALF);
        assert_eq!("1".parse::<HalfInt>().unwrap(), HalfInt::ONE);
        assert_eq!(" 3/2".parse::<HalfInt>().unwrap(), HalfInt::THREE_HALVES);
        assert_eq!("1.5".parse::<HalfInt>().unwrap(), HalfInt::THREE_HALVES);
        assert_eq!("2".parse::<HalfInt>().unwrap(), HalfInt::TWO);
        for bad in ["0", "0.3", "1/3", "-1", "x", "", "inf"] {
            assert!(bad.parse::<HalfInt>().is_err(), "{bad}");
        }
    }

    #[test]
    fn spin_half_is_pauli_over_two() {
        let j = spin_matrices(HalfInt::HALF);
        for (a, s) in pauli().iter().enumerate() {
            assert!(j[a].distance(&s.scale_real(0.5)) < 1e-15);
        }
    }

    #[test]
    fn spin_one_jz_and_commutator() {
        let j = spin_matrices(HalfInt::ONE);
        let want = ComplexMatrix::from_diagonal(&[ONE, ZERO, -ONE]);
        assert_eq!(j[2], want);
        let r = &j[0].commutator(&j[1]) - &j[2].scale(I);
        assert!(r.frobenius_norm() < 1e-14);
    }

    #[test]
    fn spin_matrices_are_hermitian_with_casimir() {
        for s in all_spins() {
            let j = spin_matrices(s);
            let n = s.multiplicity();
            let mut casimir = ComplexMatrix::zeros(n, n);
            for m in &j {
                assert!(m.distance(&m.adjoint()) < 1e-14);
                casimir = &casimir + &(m * m);
            }
            let jj = s.value() * (s.value() + 1.0);
            assert!(casimir.distance(&ComplexMatrix::identity(n).scale_real(jj)) < 1e-12);
        }
    }

    #[test]
    fn rep_invariants_hold_up_to_spin_two() {
        for s in all_spins() {
            let rep = rep_generators(s);
            assert!(rep.generators.algebra_residual() < 1e-12, "spin {s}");
            assert_eq!(&rep.eta * &rep.eta, ComplexMatrix::identity(rep.dim()));
            for a in 0..3 {
                assert!(rep.eta.anticommutator(&rep.boosts()[a]).frobenius_norm() < 1e-14);
                assert!(rep.eta.commutator(&rep.rotations()[a]).frobenius_norm() < 1e-14);
            }
        }
    }

    #[test]
    fn spin_half_boost_along_z() {
        let rep = rep_generators(HalfInt::HALF);
        let phi = 0.7;
        let b = rep.boost(&Vector3::new(0.0, 0.0, phi)).unwrap();
        let (p, m) = ((phi / 2.0).exp(), (-phi / 2.0).exp());
        let want = ComplexMatrix::from_diagonal(&[c(p, 0.0), c(m, 0.0), c(m, 0.0), c(p, 0.0)]);
        assert!(b.distance(&want) < 1e-14);
    }

    #[test]
    fn vector_boost_examples() {
        let id = vector_boost(&Vector3::zeros()).unwrap();
        assert_eq!(id, LorentzTransform::identity());
        let b = vector_boost(&Vector3::new(0.0, 0.0, 2f64.ln())).unwrap();
        let p = b.apply(&Vector4::new(1.0, 0.0, 0.0, 0.0));
        assert!((p - Vector4::new(1.25, 0.0, 0.0, 0.75)).amax() < 1e-15);
        let phi = Vector3::new(0.3, -1.1, 0.4);
        let round = vector_boost(&phi).unwrap().compose(&vector_boost(&-phi).unwrap());
        assert!((round.matrix - Matrix4::identity()).amax() < 1e-12);
        assert!(matches!(vector_boost(&Vector3::new(31.0, 0.0, 0.0)), Err(Error::RapidityOverflow(_))));
    }

    #[test]
    fn rotation_sign_matches_spinor_rotation() {
        // exp(iσ·θ/2) σ·v exp(−iσ·θ/2) = σ·(R v)
        let theta = Vector3::new(0.4, -0.9, 1.3);
        let v = Vector3::new(0.2, 0.5, -0.7);
        let rep = rep_generators(HalfInt::HALF);
        let d = rep.rotation(&theta).unwrap();
        let top = d.block(0, 0, 2, 2);
        let lhs = &(&top * &sigma_dot(&v)) * &top.adjoint();
        let r = LorentzTransform::rotation(&theta).unwrap();
        let rv = r.apply(&Vector4::new(0.0, v.x, v.y, v.z));
        let rhs = sigma_dot(&Vector3::new(rv[1], rv[2], rv[3]));
        assert!(lhs.distance(&rhs) < 1e-14);
    }

    #[test]
    fn tensor_generators_spin_half() {
        let t = tensor_rep_generators(HalfInt::HALF);
        let kz = &t.generators.boosts[2];
        // diagonal Kronecker sum: (−i m₁) + (i m₂) for m ∈ {½, −½}
        let diag: Vec<C64> = (0..4).map(|k| kz.get(k, k)).collect();
        assert_eq!(diag, vec![ZERO, -I, I, ZERO]);
        assert!(kz.max_abs() - 1.0 < 1e-15);
        let jm = &t.generators.rotations;
        assert!(jm[0].commutator(&jm[1]).distance(&jm[2].scale(I)) < 1e-14);
        assert!(t.generators.algebra_residual() < 1e-13);
    }

    proptest! {
        #[test]
        fn rotations_unitary_boosts_hermitian_positive(
            twice in 1u32..=4,
            x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0,
            scale in 0.0f64..std::f64::consts::TAU,
        ) {
            let rep = rep_generators(HalfInt::from_twice(twice).unwrap());
            let dir = Vector3::new(x, y, z);
            prop_assume!(dir.norm() > 1e-3);
            let v = dir.normalize() * scale;
            let u = rep.rotation(&v).unwrap();
            prop_assert!((&u * &u.adjoint()).distance_from_identity() < 1e-10);
            let v = dir.normalize() * (scale / 2.0);
            let b = rep.boost(&v).unwrap();
            prop_assert!(b.distance(&b.adjoint()) < 1e-10 * b.frobenius_norm());
            let ev = b.eigenvalues().unwrap();
            prop_assert!(ev.iter().all(|e| e.re > 0.0 && e.im.abs() < 1e-8 * e.re.max(1.0)));
        }

        #[test]
        fn vector_boosts_and_rotations_preserve_metric(
            x in -3.0f64..3.0, y in -3.0f64..3.0, z in -3.0f64..3.0,
        ) {
            let v = Vector3::new(x, y, z);
            prop_assert!(vector_boost(&v).unwrap().metric_residual() < 1e-9);
            prop_assert!(LorentzTransform::rotation(&v).unwrap().metric_residual() < 1e-13);
        }
    }
}
