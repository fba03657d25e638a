//! At spin ½ the boosted parity operator is the Dirac operator: m P(q) = γ^μ p_μ.

use nalgebra::Vector3;
use spinkin::dirac::dirac_operator;
use spinkin::kinematics::{parity_operator, FourMomentum};
use spinkin::lorentz::{rep_generators, HalfInt};

fn main() -> spinkin::Result<()> {
    let rep = rep_generators(HalfInt::HALF);
    for p in [Vector3::zeros(), Vector3::new(0.0, 0.0, 1.0), Vector3::new(3.0, -2.0, 0.5)] {
        let q = FourMomentum::new(1.5, p)?;
        let parity = parity_operator(&rep, &q)?;
        let slash = dirac_operator(&q);
        let residual = parity.scale_real(q.mass()).distance(&slash) / slash.frobenius_norm();
        println!(
            "p = {p:?}: ‖mP − γp‖/‖γp‖ = {residual:.2e}, ‖P² − I‖ = {:.2e}",
            (&parity * &parity).distance_from_identity()
        );
    }
    Ok(())
}
