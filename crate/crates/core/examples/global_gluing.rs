//! Two places, F_2 and F_3: the level module, the product of local inductions and
//! induction on the product group all agree.

use rtp::group::Rep;
use rtp::parabolic::{adelic_family, global_induction_check, KChoice};

fn main() -> rtp::Result<()> {
    let af = adelic_family(&[2, 3], &[KChoice::Full, KChoice::Full], 0, 1e-9)?;
    println!("family coherent: {}", af.report.pass);
    let rhos: Vec<Rep> = af.locals.iter().map(|l| l.l_table().irrep(0).clone()).collect();
    let r = global_induction_check(&af, &rhos, 0, 1e-9)?;
    println!("dimension {}, pass {}", r.info_usize("dim").unwrap_or(0), r.pass);
    for d in r.defects.iter().filter(|d| d.location.ends_with("intertwiner")) {
        println!("  {:<28} {:.1e}", d.location, d.value);
    }
    Ok(())
}
