//! Which operator families are fully kinematic: parity, its rescalings,
//! the tensor swap, and the anti-linear diag(aΘ, bΘ)K family.

use spinkin::elko::{antilinear_family_ab, antilinear_square_floor};
use spinkin::higher_spin::swap_family;
use spinkin::kinematics::{is_fully_kinematic, KinematicOperatorFamily};
use spinkin::linalg::c;
use spinkin::lorentz::{rep_generators, HalfInt};

fn main() -> spinkin::Result<()> {
    let rep = rep_generators(HalfInt::HALF);
    let families = [
        ("parity", KinematicOperatorFamily::parity(&rep)),
        ("parity-like a = 2 − i", KinematicOperatorFamily::parity_like(&rep, c(2.0, -1.0))?),
        ("tensor swap, j = 1", swap_family(HalfInt::ONE)),
        ("anti-linear a = b = 1", antilinear_family_ab(c(1.0, 0.0), c(1.0, 0.0))?),
    ];
    for (name, family) in &families {
        let r = is_fully_kinematic(family, 50, 1e-8, 7)?;
        println!(
            "{name:24} fully kinematic: {:5}  (square {:.1e}, anticommutator {:.1e}, covariance {:.1e})",
            r.is_fully_kinematic(),
            r.max_residuals.square,
            r.max_residuals.anticommutator,
            r.max_residuals.covariance
        );
    }
    println!("anti-linear family: min ‖A² − I‖ over |a|,|b| ∈ [0.1, 10] = {:.3}", antilinear_square_floor(9)?);
    Ok(())
}
