//! Elko spinors of a chosen pair (u, v) and the operator G(u,v) that is
//! +1 on the self-conjugate and −1 on the anti-self-conjugate spinors.

use spinkin::elko::{elko_basis, g_operator, nogo_witness, Cx2Basis};
use spinkin::linalg::{c, ComplexMatrix};

fn print_matrix(m: &ComplexMatrix) {
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| format!("{:>14.4}", m.get(i, j))).collect();
        println!("  {}", row.join(" "));
    }
}

fn main() -> spinkin::Result<()> {
    for basis in [Cx2Basis::standard(), Cx2Basis::new([c(1.0, 0.5), c(0.0, -1.0)], [c(0.3, 0.0), c(2.0, 1.0)])] {
        let g = g_operator(&basis, 1e-12)?;
        let e = elko_basis(&basis, 1e-12)?;
        let eigen = (g.apply(&e.u_plus) - &e.u_plus).norm() + (g.apply(&e.v_minus) + &e.v_minus).norm();
        let w = nogo_witness(&basis, 1e-10);
        println!("det[u v] = {:.3}", basis.det());
        println!("G =");
        print_matrix(&g);
        println!(
            "‖G² − I‖ = {:.1e}, eigen-relation residual {eigen:.1e}; r1 = {:.3}, r2 = {:.3}: {}\n",
            (&g * &g).distance_from_identity(),
            w.r1,
            w.r2,
            w.conclusion
        );
    }
    Ok(())
}
