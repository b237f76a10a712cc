//! Inducing a product representation level by level agrees with the product of inductions.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rtp::limit::induction_commutes_check;
use rtp::limit::random::random_coherent_family;

fn main() -> rtp::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (f, reps) = random_coherent_family(&mut rng, 3);
    let s = f.level(0..f.len())?;
    let r = induction_commutes_check(&f, &reps, &s, 1e-9, &mut rng)?;
    println!("{} indices: pass {}, worst defect {:.1e}", f.len(), r.pass, r.max_defect());
    for (k, v) in &r.info {
        println!("  {k} = {v}");
    }
    Ok(())
}
