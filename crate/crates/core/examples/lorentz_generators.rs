//! Rotation and boost generators of (j,0)⊕(0,j) and their Lie algebra.

use spinkin::lorentz::{rep_generators, HalfInt};

fn main() -> spinkin::Result<()> {
    for twice in 1..=4 {
        let j = HalfInt::from_twice(twice)?;
        let rep = rep_generators(j);
        println!("j = {j}: dimension {}, algebra residual {:.2e}", rep.dim(), rep.generators.algebra_residual());
    }
    Ok(())
}
