//! Property-based invariants over randomly generated momenta and bases.

use nalgebra::Vector3;
use proptest::prelude::*;
use spinkin::decomposition::{canonical_basis, decomposition_residual};
use spinkin::dirac::dirac_operator;
use spinkin::elko::{g_operator, helicity_g, nogo_witness, schur_conditions, Cx2Basis};
use spinkin::kinematics::{parity_operator, FourMomentum};
use spinkin::linalg::{c, ToleranceConfig};
use spinkin::lorentz::{rep_generators, HalfInt};

fn momentum() -> impl Strategy<Value = FourMomentum> {
    (0.1f64..10.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, 0.0f64..5.0).prop_map(|(m, x, y, z, r)| {
        let dir = Vector3::new(x, y, z);
        let p = if dir.norm() > 1e-3 { dir.normalize() * (r * m) } else { Vector3::zeros() };
        FourMomentum::new(m, p).unwrap()
    })
}

fn spin() -> impl Strategy<Value = HalfInt> {
    (1u32..=4).prop_map(|t| HalfInt::from_twice(t).unwrap())
}

fn pair() -> impl Strategy<Value = Cx2Basis> {
    prop::array::uniform4((-1.0f64..1.0, -1.0f64..1.0))
        .prop_map(|e| Cx2Basis::new([c(e[0].0, e[0].1), c(e[1].0, e[1].1)], [c(e[2].0, e[2].1), c(e[3].0, e[3].1)]))
        .prop_filter("nondegenerate", |b| b.det().norm() > 1e-2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parity_is_an_involution(j in spin(), q in momentum()) {
        let p = parity_operator(&rep_generators(j), &q).unwrap();
        prop_assert!((&p * &p).distance_from_identity() < 1e-7);
    }

    #[test]
    fn spin_half_parity_is_the_dirac_operator(q in momentum()) {
        let slash = dirac_operator(&q);
        let p = parity_operator(&rep_generators(HalfInt::HALF), &q).unwrap().scale_real(q.mass());
        prop_assert!(p.distance(&slash) <= 1e-10 * slash.frobenius_norm());
    }

    #[test]
    fn g_operator_is_an_involution(b in pair()) {
        let g = g_operator(&b, 1e-12).unwrap();
        prop_assert!((&g * &g).distance_from_identity() < 1e-8 / b.det().norm());
    }

    #[test]
    fn determinant_never_exceeds_the_schur_bound(b in pair()) {
        let s = schur_conditions(&b);
        prop_assert!(b.det().norm() <= (s.r1.hypot(s.r2)) * (1.0 + 1e-12) + 1e-15);
        prop_assert!(!nogo_witness(&b, 1e-10).conditions_hold);
    }

    #[test]
    fn decomposition_holds_for_the_canonical_basis(q in momentum()) {
        let basis = canonical_basis(HalfInt::HALF, q.mass()).unwrap();
        prop_assert!(decomposition_residual(&basis, &q, &ToleranceConfig::default()).unwrap() < 1e-9);
    }

    #[test]
    fn helicity_g_depends_only_on_the_azimuth(theta in 0.05f64..3.09, theta2 in 0.05f64..3.09, phi in -3.0f64..3.0) {
        let dir = |t: f64| Vector3::new(t.sin() * phi.cos(), t.sin() * phi.sin(), t.cos());
        let a = helicity_g(&dir(theta), 1e-3, 1.0, 1e-12).unwrap();
        let b = helicity_g(&dir(theta2), 1e-3, 1.0, 1e-12).unwrap();
        prop_assert!(a.distance(&b) < 1e-9);
    }
}
