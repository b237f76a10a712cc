//! E(G/N) for GL_2(F_q) and parabolic induction through it.

use rtp::parabolic::{asspar_check, build_datum, local_induction_check, KChoice, LocalCorrespondence};

fn main() -> rtp::Result<()> {
    for q in [2, 3] {
        let lc = LocalCorrespondence::new(&build_datum(q, KChoice::Full)?, 0, 1e-9)?;
        println!(
            "q = {q}: |G| = {}, |G/N| = {}, c = {:.6}, ranges agree {}",
            lc.datum.group().order(),
            lc.module().cdim(),
            lc.c,
            asspar_check(&lc, 1e-9).pass
        );
        let table = lc.l_table();
        for i in 0..table.len() {
            let r = local_induction_check(&lc, table.irrep(i), 0, 1e-9)?;
            println!(
                "  ρ = {:<8} dim {} decomposes as {}",
                table.label(i),
                r.info_usize("dim").unwrap_or(0),
                r.info.get("decomposition").map(|v| v.to_string()).unwrap_or_default()
            );
        }
    }
    Ok(())
}
