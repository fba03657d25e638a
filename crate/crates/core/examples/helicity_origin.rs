//! G built from helicity spinors near p = 0: it converges along each ray,
//! but the limit depends on the azimuth of the ray.

use nalgebra::Vector3;
use spinkin::elko::{helicity_g, helicity_origin_discontinuity};

fn main() -> spinkin::Result<()> {
    let report = helicity_origin_discontinuity(1.0, 1e-12)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serialisable"));
    let at = |x: f64, y: f64, z: f64| helicity_g(&Vector3::new(x, y, z), 1e-6, 1.0, 1e-12);
    let reference = at(1.0, 0.0, 0.0)?;
    for deg in [0, 45, 90, 135, 180] {
        let phi = f64::from(deg).to_radians();
        let g = at(phi.cos(), phi.sin(), 0.0)?;
        println!("azimuth {deg:3}°: ‖G − G(εx̂)‖ = {:.4}", g.distance(&reference));
    }
    Ok(())
}
