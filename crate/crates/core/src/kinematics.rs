//! Momenta, rapidities, boosts, the momentum-dependent parity operator and a
//! checker for fully kinematic operator families.
//!
//! A kinematic family is fixed by its rest-frame matrix `A(0)` and evaluated
//! at momentum `q` as `A(q) = B(φ) A(0) B(φ)⁻¹` with `B(φ) = exp(i𝔎·φ)` and
//! `φ` the rapidity of `q`. For an anti-linear family (`ψ ↦ M ψ*`) the same
//! rule reads `M(q) = B M(0) conj(B⁻¹)`.

use nalgebra::{Vector3, Vector4};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::lorentz::{vector_boost, Generators, LorentzTransform, RepGenerators, MAX_RAPIDITY};

/// On-shell four-momentum of a massive particle (natural units).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FourMomentum {
    mass: f64,
    momentum: [f64; 3],
}

impl FourMomentum {
    pub fn new(mass: f64, momentum: Vector3<f64>) -> Result<Self> {
        if !(mass.is_finite() && mass > 0.0) {
            return Err(Error::InvalidMass(mass));
        }
        if !momentum.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidArgument("non-finite momentum".into()));
        }
        Ok(Self { mass, momentum: [momentum.x, momentum.y, momentum.z] })
    }

    pub fn at_rest(mass: f64) -> Result<Self> {
        Self::new(mass, Vector3::zeros())
    }

    /// Reads a contravariant `(E, p)` and checks it lies on the positive
    /// mass shell of `mass`.
    pub fn from_four_vector(v: &Vector4<f64>, mass: f64) -> Result<Self> {
        let p = Vector3::new(v[1], v[2], v[3]);
        let m2 = v[0] * v[0] - p.norm_squared();
        let scale = (v[0] * v[0]).max(mass * mass);
        if v[0] <= 0.0 || (m2 - mass * mass).abs() > 1e-8 * scale {
            return Err(Error::OffShell(format!("E = {}, |p| = {}, expected mass {}", v[0], p.norm(), mass)));
        }
        Self::new(mass, p)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn momentum(&self) -> Vector3<f64> {
        Vector3::from(self.momentum)
    }

    /// `E = √(m² + |p|²)`
    pub fn energy(&self) -> f64 {
        self.mass.hypot(self.momentum().norm())
    }

    /// Contravariant `(E, p¹, p², p³)`.
    pub fn contravariant(&self) -> Vector4<f64> {
        let p = self.momentum();
        Vector4::new(self.energy(), p.x, p.y, p.z)
    }

    /// Covariant `p_μ = (E, −p¹, −p², −p³)`.
    pub fn covariant(&self) -> Vector4<f64> {
        let p = self.momentum();
        Vector4::new(self.energy(), -p.x, -p.y, -p.z)
    }

    /// Relative deviation of `E² − |p|²` from `m²`.
    pub fn shell_residual(&self) -> f64 {
        let e = self.energy();
        ((e * e - self.momentum().norm_squared()) - self.mass * self.mass).abs() / (self.mass * self.mass)
    }

    pub fn transformed(&self, lambda: &LorentzTransform) -> Result<Self> {
        Self::from_four_vector(&lambda.apply(&self.contravariant()), self.mass)
    }
}

/// `φ = asinh(|p|/m) p̂`, zero at rest.
pub fn rapidity_from_momentum(q: &FourMomentum) -> Result<Vector3<f64>> {
    let p = q.momentum();
    let norm = p.norm();
    if norm == 0.0 {
        return Ok(Vector3::zeros());
    }
    let rapidity = (norm / q.mass()).asinh();
    if rapidity > MAX_RAPIDITY {
        return Err(Error::RapidityOverflow(rapidity));
    }
    Ok(p * (rapidity / norm))
}

/// `exp(i𝔎·φ)` in the representation `rep`.
pub fn boost_matrix(rep: &RepGenerators, phi: &Vector3<f64>) -> Result<ComplexMatrix> {
    rep.boost(phi)
}

/// `P(q) = exp(2i𝔎·φ) η`.
pub fn parity_operator(rep: &RepGenerators, q: &FourMomentum) -> Result<ComplexMatrix> {
    let phi = rapidity_from_momentum(q)?;
    if 2.0 * phi.norm() > MAX_RAPIDITY {
        return Err(Error::RapidityOverflow(2.0 * phi.norm()));
    }
    Ok(&rep.boost(&(phi * 2.0))? * &rep.eta)
}

/// `P(q) = B(φ) η B(φ)⁻¹`, the conjugated form of [`parity_operator`].
pub fn parity_operator_conjugated(rep: &RepGenerators, q: &FourMomentum) -> Result<ComplexMatrix> {
    let phi = rapidity_from_momentum(q)?;
    let b = rep.boost(&phi)?;
    let b_inv = rep.boost(&-phi)?;
    Ok(&(&b * &rep.eta) * &b_inv)
}

/// An operator family defined by its rest-frame value and the boost rule.
#[derive(Clone, Debug, PartialEq)]
pub struct KinematicOperatorFamily {
    pub generators: Generators,
    pub rest_matrix: ComplexMatrix,
    /// When set, the family acts as `ψ ↦ M ψ*`.
    pub antilinear: bool,
}

impl KinematicOperatorFamily {
    pub fn new(generators: Generators, rest_matrix: ComplexMatrix, antilinear: bool) -> Result<Self> {
        if !rest_matrix.is_square() {
            return Err(Error::NonSquare { rows: rest_matrix.rows(), cols: rest_matrix.cols() });
        }
        if rest_matrix.rows() != generators.dim() {
            return Err(Error::DimensionMismatch { expected: generators.dim(), found: rest_matrix.rows() });
        }
        Ok(Self { generators, rest_matrix, antilinear })
    }

    /// The parity family, `A(0) = η`.
    pub fn parity(rep: &RepGenerators) -> Self {
        Self::new(rep.generators.clone(), rep.eta.clone(), false).expect("η matches rep dimension")
    }

    /// `A(0) = [[0, a I], [a⁻¹ I, 0]]` for nonzero complex `a`; `a = 1` is parity.
    pub fn parity_like(rep: &RepGenerators, a: C64) -> Result<Self> {
        if a.norm() == 0.0 || !a.norm().is_finite() {
            return Err(Error::InvalidArgument(format!("a must be nonzero and finite, got {a}")));
        }
        let n = rep.spin.multiplicity();
        let id = ComplexMatrix::identity(n);
        let z = ComplexMatrix::zeros(n, n);
        let rest = ComplexMatrix::from_blocks(&z, &id.scale(a), &id.scale(a.inv()), &z)?;
        Self::new(rep.generators.clone(), rest, false)
    }

    pub fn dim(&self) -> usize {
        self.rest_matrix.rows()
    }

    /// `D A D⁻¹` (linear) or `D M conj(D⁻¹)` (anti-linear).
    pub fn conjugate(&self, a: &ComplexMatrix, d: &ComplexMatrix, d_inv: &ComplexMatrix) -> ComplexMatrix {
        if self.antilinear {
            &(d * a) * &d_inv.conj()
        } else {
            &(d * a) * d_inv
        }
    }

    /// Matrix of `A(q)` (the linear part when anti-linear).
    pub fn evaluate(&self, q: &FourMomentum) -> Result<ComplexMatrix> {
        let phi = rapidity_from_momentum(q)?;
        let b = self.generators.boost(&phi)?;
        let b_inv = self.generators.boost(&-phi)?;
        Ok(self.conjugate(&self.rest_matrix, &b, &b_inv))
    }

    /// The linear map `A(q) ∘ A(q)`.
    pub fn square(&self, q: &FourMomentum) -> Result<ComplexMatrix> {
        let a = self.evaluate(q)?;
        Ok(if self.antilinear { &a * &a.conj() } else { &a * &a })
    }

    /// `max_a ‖{A(0), i𝔎_a}‖_F`.
    ///
    /// For anti-linear `A = M∘K` the anticommutator with the boost exponent
    /// `G = i𝔎_a` is the linear map `M conj(G) + G M` acting on `ψ*`.
    pub fn anticommutator_residual(&self) -> f64 {
        let m = &self.rest_matrix;
        self.generators
            .boost_exponents()
            .iter()
            .map(|g| {
                if self.antilinear {
                    (&(m * &g.conj()) + &(g * m)).frobenius_norm()
                } else {
                    m.anticommutator(g).frobenius_norm()
                }
            })
            .fold(0.0, f64::max)
    }
}

/// `‖A(Λq) − D A(q) D⁻¹‖_F / ‖A(q)‖_F` where `D` represents `Λ` on spinors.
pub fn covariance_residual(
    fam: &KinematicOperatorFamily,
    q: &FourMomentum,
    lambda: &LorentzTransform,
    d: &ComplexMatrix,
) -> Result<f64> {
    let moved = q.transformed(lambda)?;
    let a = fam.evaluate(q)?;
    let d_inv = d.inverse()?;
    let expected = fam.conjugate(&a, d, &d_inv);
    Ok(fam.evaluate(&moved)?.distance(&expected) / a.frobenius_norm())
}

/// Draws a momentum: `m` log-uniform in `[0.1, 10]`, `|p|` uniform in
/// `[0, 5m]`, direction uniform on the sphere.
pub fn sample_momentum<R: Rng>(rng: &mut R) -> FourMomentum {
    let mass = 10f64.powf(rng.random_range(-1.0..=1.0));
    let magnitude = rng.random_range(0.0..=5.0) * mass;
    FourMomentum::new(mass, random_unit_vector(rng) * magnitude).expect("sampled mass is positive")
}

pub fn random_unit_vector<R: Rng>(rng: &mut R) -> Vector3<f64> {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let az: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let r = (1.0 - z * z).max(0.0).sqrt();
    Vector3::new(r * az.cos(), r * az.sin(), z)
}

/// Random pure boost with rapidity up to 1.5.
pub fn random_boost_parameter<R: Rng>(rng: &mut R) -> Vector3<f64> {
    random_unit_vector(rng) * rng.random_range(0.0..=1.5)
}

/// Random rotation angle-vector, angle in `[0, 2π)`.
pub fn random_rotation_parameter<R: Rng>(rng: &mut R) -> Vector3<f64> {
    random_unit_vector(rng) * rng.random_range(0.0..std::f64::consts::TAU)
}

/// Covariance residual under a boost `φ` and a rotation `θ`.
pub fn covariance_pair_residual(
    fam: &KinematicOperatorFamily,
    q: &FourMomentum,
    boost: &Vector3<f64>,
    rotation: &Vector3<f64>,
) -> Result<(f64, f64)> {
    let rb = covariance_residual(fam, q, &vector_boost(boost)?, &fam.generators.boost(boost)?)?;
    let rr = covariance_residual(fam, q, &LorentzTransform::rotation(rotation)?, &fam.generators.rotation(rotation)?)?;
    Ok((rb, rr))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KinematicResiduals {
    /// `max ‖A(q)² − I‖_F`
    pub square: f64,
    /// `max_a ‖{A(0), i𝔎_a}‖_F`
    pub anticommutator: f64,
    /// `max ‖A(Λq) − D A(q) D⁻¹‖_F / ‖A(q)‖_F`
    pub covariance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KinematicReport {
    pub seed: u64,
    pub samples: usize,
    pub tol: f64,
    pub squares_to_identity: bool,
    pub anticommutes: bool,
    pub covariant: bool,
    pub max_residuals: KinematicResiduals,
}

impl KinematicReport {
    pub fn is_fully_kinematic(&self) -> bool {
        self.squares_to_identity && self.anticommutes && self.covariant
    }
}

/// Evaluates both conditions of a fully kinematic operator and the
/// covariance rule over `samples` seeded random momenta, boosts and rotations.
pub fn is_fully_kinematic(
    fam: &KinematicOperatorFamily,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<KinematicReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draws: Vec<_> = (0..samples)
        .map(|_| {
            let q = sample_momentum(&mut rng);
            let b = random_boost_parameter(&mut rng);
            let r = random_rotation_parameter(&mut rng);
            (q, b, r)
        })
        .collect();
    let id = ComplexMatrix::identity(fam.dim());
    let per_sample: Vec<(f64, f64)> = draws
        .par_iter()
        .map(|(q, b, r)| {
            let square = fam.square(q)?.distance(&id);
            let (rb, rr) = covariance_pair_residual(fam, q, b, r)?;
            Ok((square, rb.max(rr)))
        })
        .collect::<Result<_>>()?;
    let square = per_sample.iter().map(|s| s.0).fold(0.0, f64::max);
    let covariance = per_sample.iter().map(|s| s.1).fold(0.0, f64::max);
    let anticommutator = fam.anticommutator_residual();
    Ok(KinematicReport {
        seed,
        samples,
        tol,
        squares_to_identity: square <= tol,
        anticommutes: anticommutator <= tol,
        covariant: covariance <= tol,
        max_residuals: KinematicResiduals { square, anticommutator, covariance },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::lorentz::{rep_generators, HalfInt};
    use proptest::prelude::*;

    fn q(m: f64, p: [f64; 3]) -> FourMomentum {
        FourMomentum::new(m, Vector3::from(p)).unwrap()
    }

    #[test]
    fn momentum_validation() {
        assert_eq!(FourMomentum::at_rest(0.0).unwrap_err(), Error::InvalidMass(0.0));
        assert!(FourMomentum::at_rest(-1.0).is_err());
        assert!(FourMomentum::new(1.0, Vector3::new(f64::NAN, 0.0, 0.0)).is_err());
        let k = q(1.0, [0.0, 0.0, 0.75]);
        assert_eq!(k.energy(), 1.25);
        assert!(k.shell_residual() < 1e-15);
    }

    #[test]
    fn rapidity_examples() {
        assert_eq!(rapidity_from_momentum(&q(1.0, [0.0; 3])).unwrap(), Vector3::zeros());
        let ln2 = 2f64.ln();
        let phi = rapidity_from_momentum(&q(1.0, [0.0, 0.0, 0.75])).unwrap();
        assert!((phi - Vector3::new(0.0, 0.0, ln2)).norm() < 1e-15);
        let phi2 = rapidity_from_momentum(&q(2.0, [0.0, 0.0, 1.5])).unwrap();
        assert!((phi2 - phi).norm() < 1e-15);
        let far = q(1.0, [0.0, 0.0, 1e14]);
        assert!(matches!(rapidity_from_momentum(&far), Err(Error::RapidityOverflow(_))));
    }

    #[test]
    fn boost_matrix_examples() {
        let rep = rep_generators(HalfInt::HALF);
        assert!(boost_matrix(&rep, &Vector3::zeros()).unwrap().distance_from_identity() < 1e-15);
        let b = boost_matrix(&rep, &Vector3::new(0.0, 0.0, 2f64.ln())).unwrap();
        let top = b.block(0, 0, 2, 2);
        let s = 2f64.sqrt();
        let want = ComplexMatrix::from_diagonal(&[c(s, 0.0), c(1.0 / s, 0.0)]);
        assert!(top.distance(&want) < 1e-15);
        // half-angle identities with cosh φ = 1.25
        let (ch, sh) = (((1.25 + 1.0) / 2.0f64).sqrt(), ((1.25 - 1.0) / 2.0f64).sqrt());
        assert!((ch - 1.0606601717798212).abs() < 1e-15);
        assert!((sh - 0.3535533905932738).abs() < 1e-15);
        assert!((top.get(0, 0).re - (ch + sh)).abs() < 1e-15);
        assert!((top.get(1, 1).re - (ch - sh)).abs() < 1e-15);
    }

    #[test]
    fn boost_has_unit_determinant() {
        for twice in 1..=4 {
            let rep = rep_generators(HalfInt::from_twice(twice).unwrap());
            let b = boost_matrix(&rep, &Vector3::new(0.4, -1.2, 0.9)).unwrap();
            let det = b.determinant().unwrap();
            assert!((det - c(1.0, 0.0)).norm() < 1e-10, "spin {twice}/2: det {det}");
        }
    }

    #[test]
    fn spin_half_boost_matches_half_angle_form() {
        // exp(i𝔎·φ) top block = cosh(φ/2) I + σ·p̂ sinh(φ/2)
        let rep = rep_generators(HalfInt::HALF);
        let k = q(1.3, [0.4, -2.0, 1.1]);
        let phi = rapidity_from_momentum(&k).unwrap();
        let (n, r) = (phi.normalize(), phi.norm());
        let b = boost_matrix(&rep, &phi).unwrap();
        let want = &ComplexMatrix::identity(2).scale_real((r / 2.0).cosh())
            + &crate::lorentz::sigma_dot(&n).scale_real((r / 2.0).sinh());
        assert!(b.block(0, 0, 2, 2).distance(&want) < 1e-13);
    }

    #[test]
    fn parity_at_rest_is_eta() {
        for twice in 1..=4 {
            let rep = rep_generators(HalfInt::from_twice(twice).unwrap());
            let p = parity_operator(&rep, &FourMomentum::at_rest(3.0).unwrap()).unwrap();
            assert_eq!(p, rep.eta);
        }
    }

    #[test]
    fn spin_one_parity_is_involution() {
        let rep = rep_generators(HalfInt::ONE);
        let p = parity_operator(&rep, &q(1.0, [0.0, 0.0, 0.75])).unwrap();
        assert!((&p * &p).distance_from_identity() < 1e-10);
    }

    #[test]
    fn parity_family_is_fully_kinematic() {
        let rep = rep_generators(HalfInt::HALF);
        let report = is_fully_kinematic(&KinematicOperatorFamily::parity(&rep), 50, 1e-9, 7).unwrap();
        assert!(report.is_fully_kinematic(), "{report:?}");
    }

    #[test]
    fn parity_like_family_with_a_two() {
        let rep = rep_generators(HalfInt::HALF);
        let fam = KinematicOperatorFamily::parity_like(&rep, c(2.0, 0.0)).unwrap();
        let report = is_fully_kinematic(&fam, 50, 1e-9, 11).unwrap();
        assert!(report.is_fully_kinematic(), "{report:?}");
        assert!(KinematicOperatorFamily::parity_like(&rep, c(0.0, 0.0)).is_err());
        let eta = KinematicOperatorFamily::parity_like(&rep, c(1.0, 0.0)).unwrap();
        assert_eq!(eta.rest_matrix, rep.eta);
    }

    #[test]
    fn antilinear_theta_family_is_not_an_involution() {
        let rep = rep_generators(HalfInt::HALF);
        let theta = ComplexMatrix::from_real_rows(&[[0.0, -1.0], [1.0, 0.0]]);
        let rest = ComplexMatrix::block_diag(&theta, &theta);
        let fam = KinematicOperatorFamily::new(rep.generators.clone(), rest, true).unwrap();
        let report = is_fully_kinematic(&fam, 30, 1e-9, 3).unwrap();
        assert!(report.anticommutes);
        assert!(report.covariant);
        assert!(!report.squares_to_identity);
        assert!((report.max_residuals.square - 4.0).abs() < 1e-9);
        // as a linear map the same matrix does not anticommute
        let linear = KinematicOperatorFamily { antilinear: false, ..fam };
        assert!(linear.anticommutator_residual() > 0.5);
    }

    #[test]
    fn family_rejects_mismatched_rest_matrix() {
        let rep = rep_generators(HalfInt::ONE);
        assert!(KinematicOperatorFamily::new(rep.generators.clone(), ComplexMatrix::identity(4), false).is_err());
        assert!(is_fully_kinematic(&KinematicOperatorFamily::parity(&rep), 0, 1e-9, 0).is_err());
    }

    #[test]
    fn covariance_identity_is_zero() {
        let rep = rep_generators(HalfInt::ONE);
        let fam = KinematicOperatorFamily::parity(&rep);
        let k = q(0.7, [0.3, 0.1, -0.4]);
        let r = covariance_residual(&fam, &k, &LorentzTransform::identity(), &ComplexMatrix::identity(6)).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn covariance_rejects_inconsistent_transform() {
        let rep = rep_generators(HalfInt::HALF);
        let fam = KinematicOperatorFamily::parity(&rep);
        let mut bad = LorentzTransform::identity();
        bad.matrix[(0, 0)] = 2.0;
        let k = q(1.0, [0.0, 0.0, 0.5]);
        assert!(matches!(covariance_residual(&fam, &k, &bad, &ComplexMatrix::identity(4)), Err(Error::OffShell(_))));
    }

    #[test]
    fn rotation_example_spin_three_halves() {
        let rep = rep_generators(HalfInt::THREE_HALVES);
        let fam = KinematicOperatorFamily::parity(&rep);
        let k = q(2.0, [1.0, -3.0, 0.5]);
        let (rb, rr) =
            covariance_pair_residual(&fam, &k, &Vector3::new(0.2, 0.9, -0.4), &Vector3::new(1.0, 2.0, -0.5)).unwrap();
        assert!(rb < 1e-9 && rr < 1e-9, "{rb} {rr}");
    }

    #[test]
    fn sampler_respects_ranges() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let k = sample_momentum(&mut rng);
            assert!((0.1..=10.0).contains(&k.mass()));
            assert!(k.momentum().norm() <= 5.0 * k.mass() * (1.0 + 1e-12));
        }
    }

    proptest! {
        #[test]
        fn parity_evaluation_orders_agree(
            twice in 1u32..=4, m in 0.1f64..10.0,
            px in -5.0f64..5.0, py in -5.0f64..5.0, pz in -5.0f64..5.0,
        ) {
            let rep = rep_generators(HalfInt::from_twice(twice).unwrap());
            let k = q(m, [px * m / 2.0, py * m / 2.0, pz * m / 2.0]);
            let a = parity_operator(&rep, &k).unwrap();
            let b = parity_operator_conjugated(&rep, &k).unwrap();
            prop_assert!(a.distance(&b) <= 1e-10 * a.frobenius_norm());
            prop_assert!(a.trace().norm() <= 1e-9 * a.frobenius_norm());
            let det = a.determinant().unwrap();
            let det_eta = rep.eta.determinant().unwrap();
            prop_assert!((det - det_eta).norm() < 1e-6);
        }

        #[test]
        fn collinear_rapidities_add(
            m in 0.1f64..10.0, r1 in 0.0f64..3.0, r2 in 0.0f64..3.0,
            x in -1.0f64..1.0, y in -1.0f64..1.0, z in -1.0f64..1.0,
        ) {
            let dir = Vector3::new(x, y, z);
            prop_assume!(dir.norm() > 1e-2);
            let n = dir.normalize();
            let k = FourMomentum::new(m, n * (m * r1.sinh())).unwrap();
            let moved = k.transformed(&vector_boost(&(n * r2)).unwrap()).unwrap();
            let total = rapidity_from_momentum(&moved).unwrap();
            prop_assert!((total.norm() - (r1 + r2)).abs() <= 1e-10 * (1.0 + r1 + r2));
        }
    }
}
