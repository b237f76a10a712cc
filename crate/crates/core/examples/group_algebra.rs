//! Characters, the Haar projection p_K and the Gelfand test on S_3.

use rtp::group::{
    convolve, gelfand_check, invariant_subspace, proj_pk, subgroup_generate, CharacterTable, FiniteGroup,
};

fn main() -> rtp::Result<()> {
    let g = FiniteGroup::symmetric(3)?;
    let table = CharacterTable::compute(&g, 0)?;
    println!("S_3 irreps: dimensions {:?}", table.dims());
    for i in 0..table.len() {
        let chi: Vec<String> = table.character(i).iter().map(|z| format!("{:+.0}", z.re)).collect();
        println!("  {:<8} {}", table.label(i), chi.join(" "));
    }

    for gens in [vec![], vec![1], vec![3]] {
        let k = subgroup_generate(&g, &gens)?;
        let p = proj_pk(&k);
        let verdict = gelfand_check(&k, 1e-9);
        let fixed: Vec<usize> =
            table.irreps().iter().map(|pi| invariant_subspace(pi, &k).map(|m| m.ncols())).collect::<Result<_, _>>()?;
        println!(
            "|K| = {}: p_K idempotent to {:.1e}, Gelfand {}, dim V^K per irrep {fixed:?}",
            k.order(),
            convolve(&p, &p)?.distance(&p)?,
            verdict.gelfand
        );
    }
    Ok(())
}
