//! No choice of (u, v) makes G(u,v) commute with every rotation: the two
//! conditions force det[u v] = 0.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spinkin::elko::{nogo_sweep, rotation_commutant_residual, rotation_invariant_pair, schur_conditions};

fn main() -> spinkin::Result<()> {
    let sweep = nogo_sweep(10_000, 0.1, 42)?;
    println!(
        "{} random bases with |det| ≥ {}: smallest max(r1, r2) = {:.4}, largest |det|/√(r1² + r2²) = {:.6}",
        sweep.samples, sweep.min_det, sweep.min_max_condition, sweep.max_det_ratio
    );
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let pair = rotation_invariant_pair(&mut rng);
    let s = schur_conditions(&pair);
    println!(
        "a pair satisfying both conditions: r1 = {:.1e}, r2 = {:.1e}, |det| = {:.1e}, commutant residual {:.1e}",
        s.r1,
        s.r2,
        pair.det().norm(),
        rotation_commutant_residual(&pair, 20, 1)?
    );
    Ok(())
}
