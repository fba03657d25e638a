//! Recover the symmetric gamma tensor γ^{μ₁…μ_{2j}} from P_j(q) by least squares.

use spinkin::dirac::gamma_matrices;
use spinkin::higher_spin::extract_gamma_tensor;
use spinkin::lorentz::HalfInt;

fn main() -> spinkin::Result<()> {
    let half = extract_gamma_tensor(HalfInt::HALF, 40, 1)?;
    let gammas = gamma_matrices();
    for mu in 0..4u8 {
        let fitted = half.tensor.get(&[mu]).expect("component exists");
        println!("γ^{mu}: distance from the Dirac matrix {:.1e}", fitted.distance(&gammas.gamma[mu as usize]));
    }
    let one = extract_gamma_tensor(HalfInt::ONE, 60, 1)?;
    println!(
        "spin 1: {} components, fit residual {:.1e}, held-out residual {:.1e}",
        one.tensor.components.len(),
        one.max_residual,
        one.tensor.reconstruction_residual(100, 2)?
    );
    Ok(())
}
