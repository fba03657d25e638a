//! P_j(q)ψ = ±ψ as a field equation for any spin: spectrum and boosted spinors.

use nalgebra::Vector3;
use spinkin::dirac::boosted_spinors;
use spinkin::higher_spin::{contraction_identity_residual, field_equation_residual, parity_spectrum};
use spinkin::kinematics::FourMomentum;
use spinkin::lorentz::HalfInt;

fn main() -> spinkin::Result<()> {
    let q = FourMomentum::new(1.0, Vector3::new(0.4, -1.2, 2.0))?;
    for twice in 1..=4 {
        let j = HalfInt::from_twice(twice)?;
        let spectrum = parity_spectrum(j, &q, 1e-7)?;
        let basis = boosted_spinors(j, &q)?;
        let mut worst: f64 = 0.0;
        for u in &basis.u {
            worst = worst.max(field_equation_residual(j, u, &q, 1)?);
        }
        for v in &basis.v {
            worst = worst.max(field_equation_residual(j, v, &q, -1)?);
        }
        println!(
            "j = {j}: +1 ×{}, −1 ×{}, ‖P² − I‖ = {:.1e}, worst spinor residual {worst:.1e}",
            spectrum.plus_count,
            spectrum.minus_count,
            contraction_identity_residual(j, &q)?
        );
    }
    Ok(())
}
