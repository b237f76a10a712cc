//! A right Hilbert module, its rank-one operators and a balanced tensor product.

use rtp::cstar::{block_irrep, BlockAlgebra};
use rtp::linalg::{c64, CVec};
use rtp::module::{compact_dimension, interior_tensor, module_norm, rank_one_matrix, validate_module, HModule};

fn main() -> rtp::Result<()> {
    // The right ideal e11·(M_2 ⊕ M_2) ⊕ (M_2 ⊕ M_2) has block multiplicities (1, 2).
    let a = BlockAlgebra::new(&[2, 2])?;
    let x = HModule::right_ideal(&a, &[1, 2])?;
    let report = validate_module(&x, 1e-9)?;
    println!("cdim {}, valid {}, worst defect {:.1e}", x.cdim(), report.pass, report.max_defect());
    println!("dim K(X) = {}", compact_dimension(&x));

    let xi = CVec::from_fn(x.cdim(), |i, _| c64(1.0 + i as f64, 0.5));
    println!("‖ξ‖ = {:.6}", module_norm(&x, &xi)?);
    let gram = x.inner(&xi, &xi)?;
    let diagonal: Vec<Vec<f64>> = gram.blocks().iter().map(|m| m.diagonal().iter().map(|z| z.re).collect()).collect();
    println!("⟨ξ, ξ⟩ has diagonal {diagonal:?} and is positive: {}", gram.is_positive(1e-9));

    let t = rank_one_matrix(&x, &xi, &xi);
    println!("T_ξ,ξ on coordinates is {}×{}", t.nrows(), t.ncols());

    for b in 0..a.num_blocks() {
        let h = interior_tensor(&x, &block_irrep(&a, b))?;
        println!("X ⊗ H_{b}: dimension {} ({} relations)", h.dim(), h.null_dim());
    }
    Ok(())
}
