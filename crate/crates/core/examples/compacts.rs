//! The compacts of level modules embed by T ↦ T ⊗ p_x.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rtp::limit::compacts_iso_check;
use rtp::limit::random::{random_compatible_family, random_module_levels};

fn main() -> rtp::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = random_compatible_family(&mut rng);
    let [s, _, spp] = random_module_levels(&mut rng, &f);
    let r = compacts_iso_check(&f, &s, &spp, 1e-9, &mut rng)?;
    println!("{:?} → {:?}: pass {}", s.indices(), spp.indices(), r.pass);
    for d in &r.defects {
        println!("  {:<18} {:.2e}", d.location, d.value);
    }
    Ok(())
}
