//! Irreps of a level algebra factor into irreps of the local algebras.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rtp::cstar::irreps_of;
use rtp::limit::random::random_algebra_family;
use rtp::limit::{factorize_irrep, level_layout};

fn main() -> rtp::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = random_algebra_family(&mut rng, true);
    let s = f.level(0..f.len().min(3))?;
    let a = level_layout(&f, &s).product().clone();
    println!("level {:?}: blocks {:?}", s.indices(), a.blocks());
    for pi in irreps_of(&a) {
        let fac = factorize_irrep(&f, &s, &pi, 1e-9)?;
        let dims: Vec<usize> = fac.factors.iter().map(|p| p.rep_dim()).collect();
        println!(
            "block {} = tuple {:?}, factor dimensions {dims:?}, intertwiner defect {:.1e}",
            fac.block, fac.tuple, fac.intertwining_defect
        );
    }
    Ok(())
}
