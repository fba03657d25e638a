//! Every residual suite in one report, as printed by `spinkin check all`.

use spinkin::checks::check_all;
use spinkin::linalg::ToleranceConfig;

fn main() -> spinkin::Result<()> {
    let report = check_all(42, 20, &ToleranceConfig::default())?;
    for (name, residual) in &report.max_residuals {
        println!("{name:40} {residual:10.3e}  ≤ {:.0e}", report.tolerances[name]);
    }
    println!("pass: {}", report.pass);
    Ok(())
}
