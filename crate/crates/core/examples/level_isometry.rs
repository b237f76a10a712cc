//! Levels of a random compatible family: connecting maps are isometric and compose.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rtp::limit::random::{random_compatible_family, random_module_levels};
use rtp::limit::{connecting_map, functoriality_defect, level_module};

fn main() -> rtp::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = random_compatible_family(&mut rng);
    let [s, sp, spp] = random_module_levels(&mut rng, &f);
    println!("{} indices, exceptional {:?}", f.len(), f.base().exceptional());
    for (name, a, b) in [("S → S'", &s, &sp), ("S' → S''", &sp, &spp), ("S → S''", &s, &spp)] {
        let (map, report) = connecting_map(&f, a, b, 1e-9)?;
        println!(
            "{name}: {:?} → {:?}, cdim {} → {}, worst defect {:.1e}",
            a.indices(),
            b.indices(),
            level_module(&f, a).cdim(),
            map.iota.nrows(),
            report.max_defect()
        );
    }
    println!("functoriality defect {:.1e}", functoriality_defect(&f, &s, &sp, &spp)?);
    Ok(())
}
