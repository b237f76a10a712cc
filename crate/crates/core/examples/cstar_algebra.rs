//! Block algebras: norms, tensor products, irreps and the rank-one test.

use rtp::cstar::{block_irrep, diag, irreps_of, rank_at_most_one, tensor_algebra, tensor_elements, BlockAlgebra};
use rtp::linalg::{c64, real};

fn main() -> rtp::Result<()> {
    // M_2 ⊕ ℂ
    let a = BlockAlgebra::new(&[2, 1])?;
    let x = diag(&a, &[c64(1.0, 1.0), real(-2.0), real(0.5)])?;
    println!("A = {:?}, dim {}, ‖x‖ = {:.6}", a.blocks(), a.dim(), x.op_norm());

    let b = BlockAlgebra::full(3)?;
    let ab = tensor_algebra(&a, &b);
    let xb = tensor_elements(&x, &b.unit());
    println!("A ⊗ M_3 = {:?}, ‖x ⊗ 1‖ = {:.6}", ab.blocks(), xb.op_norm());

    for (i, pi) in irreps_of(&a).iter().enumerate() {
        println!("irrep {i}: dimension {}, ‖π(x)‖ = {:.6}", pi.rep_dim(), pi.apply(&x)?.op_norm());
    }

    let e11 = a.matrix_unit(rtp::cstar::UnitIndex { block: 0, row: 0, col: 0 });
    println!("e11 rank ≤ 1 in every irrep: {}", rank_at_most_one(&e11, &a)?);
    println!("1 rank ≤ 1 in every irrep: {}", rank_at_most_one(&a.unit(), &a)?);
    println!("block 0 irrep is a *-hom with defect {:.1e}", block_irrep(&a, 0).defects().max());
    Ok(())
}
