//! Finite products of local correspondences `E(G_v/N_v)` as a restricted family,
//! and global parabolic induction on `∏ G_v`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cstar::{mixed_radix, AlgElement};
use crate::error::{Error, Result};
use crate::group::{induce, invariant_subspace, FiniteGroup, Rep, Subgroup};
use crate::limit::{
    coherence_check, induction_commutes_check, left_action_level, level_layout, level_representation,
    validate_corr_family, AlgebraFamily, CorrFamily, Level, LocalRep, ModuleFamily,
};
use crate::linalg::{CMat, CVec};
use crate::parabolic::datum::{build_datum, KChoice};
use crate::parabolic::local::{compare_reps, LocalCorrespondence};
use crate::report::{ReportBuilder, VerificationReport};

/// One local correspondence per place, assembled into a [`CorrFamily`] with `E = ∅`.
#[derive(Clone, Debug)]
pub struct AdelicFamily {
    pub locals: Vec<LocalCorrespondence>,
    pub family: CorrFamily,
    /// Correspondence validation, `α_v(p_{K_v})x_v = x_v`, and coherence at every place.
    pub report: VerificationReport,
}

/// Builds `E(G_v/N_v)` over `F_q` for each `q` in `fields`, with `A_v = ℂ[L_v]`,
/// `p_v = p_{K_v∩L_v}`, `A'_v = ℂ[G_v]` and `p'_v = p_{K_v}`.
pub fn adelic_family(fields: &[u32], k_choices: &[KChoice], seed: u64, tol: f64) -> Result<AdelicFamily> {
    if fields.len() != k_choices.len() {
        return Err(Error::Shape("one K choice per place required".into()));
    }
    let locals = fields
        .iter()
        .zip(k_choices)
        .map(|(&q, k)| LocalCorrespondence::new(&build_datum(q, k.clone())?, seed, tol))
        .collect::<Result<Vec<_>>>()?;
    let family = family_of(&locals)?;
    let report = family_report(&family, tol);
    Ok(AdelicFamily { locals, family, report })
}

fn family_of(locals: &[LocalCorrespondence]) -> Result<CorrFamily> {
    let base = AlgebraFamily::new(
        locals.iter().map(|l| l.fourier_l.algebra().clone()).collect(),
        locals.iter().map(LocalCorrespondence::projection).collect(),
        [],
    )?;
    let modules = ModuleFamily::new(
        base,
        locals.iter().map(|l| l.module().clone()).collect(),
        locals.iter().map(|l| l.x.clone()).collect(),
    )?;
    let primed = AlgebraFamily::new(
        locals.iter().map(|l| l.fourier_g.algebra().clone()).collect(),
        locals.iter().map(LocalCorrespondence::primed_projection).collect(),
        [],
    )?;
    CorrFamily::new(modules, primed, locals.iter().map(|l| l.correspondence.left.clone()).collect())
}

/// `validate_corr_family` and `coherence_check`, absorbed under `family/` and `coherence/`.
pub fn family_report(f: &CorrFamily, tol: f64) -> VerificationReport {
    let mut rep = ReportBuilder::new("adelic_family", tol);
    rep.absorb("family", &validate_corr_family(f, tol)).absorb("coherence", &coherence_check(f, tol));
    rep.info("places", f.len());
    rep.finish()
}

impl AdelicFamily {
    /// The same family with `p'_v` replaced, revalidated.
    pub fn with_primed_projection(&self, v: usize, p: AlgElement, tol: f64) -> Result<AdelicFamily> {
        let family = self.family.clone().with_primed_projection(v, p)?;
        let report = family_report(&family, tol);
        Ok(AdelicFamily { locals: self.locals.clone(), family, report })
    }

    pub fn len(&self) -> usize {
        self.locals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locals.is_empty()
    }

    /// `∏ G_v` with elements in mixed radix, the last place fastest.
    pub fn product_group(&self) -> FiniteGroup {
        FiniteGroup::direct_product(&self.locals.iter().map(|l| l.datum.group().clone()).collect::<Vec<_>>())
    }
}

/// `π_v` from `ρ_v`, with `h_v` a unit `K_v∩L_v`-fixed vector when one exists.
pub fn local_rep(lc: &LocalCorrespondence, rho: &Rep) -> Result<LocalRep> {
    let pi = lc.fourier_l.star_hom(rho)?;
    let fixed = invariant_subspace(rho, &lc.datum.k_cap_l_in_l())?;
    let h = (fixed.ncols() > 0).then(|| CVec::from(fixed.column(0)));
    Ok(LocalRep::new(pi, h))
}

/// The three global inductions of `⊗ρ_v` compared on `∏ G_v`:
///
/// * `level`: `X_S ⊗_{A_S} H_S` from the level correspondence, read on group elements
///   through `⊗ F_v(δ_{g_v})`;
/// * `local_product`: the outer tensor product of the local inductions `X_v ⊗ V_{ρ_v}`;
/// * `borel`: `Ind_{∏B_v}^{∏G_v} ⊗(ρ_v ∘ pr_v)`.
///
/// Entries: `dimension_*` (all `∏[G_v:B_v] dim ρ_v`), `local_product/*` and `borel/*`
/// (characters and unitary intertwiners against the level side) and `commutes/*`
/// (the level-by-level tensor isomorphism).
pub fn global_induction_check(af: &AdelicFamily, rhos: &[Rep], seed: u64, tol: f64) -> Result<VerificationReport> {
    if rhos.len() != af.len() {
        return Err(Error::Shape(format!("{} characters for {} places", rhos.len(), af.len())));
    }
    let s = af.family.level(0..af.len())?;
    let reps = af.locals.iter().zip(rhos).map(|(lc, r)| local_rep(lc, r)).collect::<Result<Vec<_>>>()?;
    let level = level_side(af, &reps, &s, tol)?;
    let local_product = Rep::outer_tensor(
        &af.locals.iter().zip(rhos).map(|(lc, r)| lc.induced_through_module(r)).collect::<Result<Vec<_>>>()?,
    );
    let borel = borel_side(af, rhos)?;
    let expected: usize = af.locals.iter().zip(rhos).map(|(lc, r)| lc.datum.b.index() * r.dim()).product();

    let mut rep = ReportBuilder::new("global_induction", tol);
    rep.require_eq("dimension_level", level.dim(), expected)
        .require_eq("dimension_local_product", local_product.dim(), expected)
        .require_eq("dimension_borel", borel.dim(), expected)
        .defect("rep_level", level.defects().max());
    for (name, other) in [("local_product", &local_product), ("borel", &borel)] {
        let mut sub = ReportBuilder::new(name, tol);
        compare_reps(&mut sub, &level, other, seed);
        rep.absorb(name, &sub.finish());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rep.absorb("commutes", &induction_commutes_check(&af.family, &reps, &s, tol, &mut rng)?);
    rep.info("dim", level.dim()).info("places", af.len());
    Ok(rep.finish())
}

fn level_side(af: &AdelicFamily, reps: &[LocalRep], s: &Level, tol: f64) -> Result<Rep> {
    let c_s = left_action_level(&af.family, s, tol)?;
    let pi_s = level_representation(af.family.base(), reps, s, tol)?;
    let units: Vec<CMat> = (0..pi_s.domain().dim()).map(|k| pi_s.unit_matrix(k)).collect();
    let (_, images) = c_s.induce(&units)?;
    let layout = level_layout(af.family.primed(), s);
    let product = af.product_group();
    let orders: Vec<usize> = af.locals.iter().map(|l| l.datum.group().order()).collect();
    let d = images.first().map_or(0, |m| m.nrows());
    let matrices = (0..product.order())
        .map(|x| {
            let parts = crate::cstar::split_radix(&orders, x);
            let deltas: Vec<AlgElement> = af.locals.iter().zip(&parts).map(|(l, &g)| l.fourier_g.delta(g)).collect();
            let coords = layout.tensor(&deltas.iter().collect::<Vec<_>>()).coords();
            coords
                .iter()
                .zip(&images)
                .filter(|(c, _)| c.norm() > 0.0)
                .fold(CMat::zeros(d, d), |acc, (c, m)| acc + m * *c)
        })
        .collect();
    Rep::new(&product, matrices)
}

fn borel_side(af: &AdelicFamily, rhos: &[Rep]) -> Result<Rep> {
    let product = af.product_group();
    let orders: Vec<usize> = af.locals.iter().map(|l| l.datum.group().order()).collect();
    let b_members: Vec<&[usize]> = af.locals.iter().map(|l| l.datum.b.members()).collect();
    // Sorted member lists and a monotone radix encoding: positions in ∏B_v match
    // the element order of the direct product of the B_v.
    let mut members = vec![];
    let b_orders: Vec<usize> = b_members.iter().map(|m| m.len()).collect();
    for i in 0..b_orders.iter().product() {
        let parts = crate::cstar::split_radix(&b_orders, i);
        members.push(mixed_radix(&orders, parts.iter().zip(&b_members).map(|(&p, m)| m[p])));
    }
    let prod_b = Subgroup::new(&product, members)?;
    let pulled = af
        .locals
        .iter()
        .zip(rhos)
        .map(|(lc, r)| r.pullback(&lc.datum.b.as_group(), &lc.datum.levi_projection()))
        .collect::<Result<Vec<_>>>()?;
    induce(&prod_b, &Rep::outer_tensor(&pulled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::proj_pk;

    const TOL: f64 = 1e-9;

    fn two_three() -> AdelicFamily {
        adelic_family(&[2, 3], &[KChoice::Full, KChoice::Full], 5, TOL).unwrap()
    }

    #[test]
    fn the_family_is_coherent() {
        let af = two_three();
        assert!(af.report.pass, "{:?}", af.report.failures());
        assert!(af.report.defect("coherence/v0/coherence").is_some());
        assert!(af.report.defect("family/v1/fixes_x").is_some());
    }

    #[test]
    fn a_wrong_primed_projection_is_localized() {
        let af = two_three();
        let lc = &af.locals[1];
        let sl2 = build_datum(3, KChoice::Sl2).unwrap();
        let wrong = lc.fourier_g.forward(&proj_pk(&sl2.k)).unwrap();
        let bad = af.with_primed_projection(1, wrong, TOL).unwrap();
        assert!(!bad.report.pass);
        let failing: Vec<&str> = bad.report.failures().iter().map(|d| d.location.as_str()).collect();
        assert!(failing.iter().all(|l| l.contains("v1/")), "{failing:?}");
        assert!(failing.contains(&"coherence/v1/coherence"));
    }

    #[test]
    fn trivial_characters_induce_to_dimension_twelve() {
        let af = two_three();
        let rhos: Vec<Rep> = af.locals.iter().map(|l| l.l_table().irrep(0).clone()).collect();
        let r = global_induction_check(&af, &rhos, 3, TOL).unwrap();
        assert!(r.pass, "{:?}", r.failures());
        assert_eq!(r.info_usize("dim"), Some(12));
        assert!(r.defect("borel/intertwiner").unwrap() < TOL);
    }

    #[test]
    fn a_ramified_character_still_matches() {
        let af = two_three();
        let rhos = vec![af.locals[0].l_table().irrep(0).clone(), af.locals[1].l_table().irrep(1).clone()];
        let r = global_induction_check(&af, &rhos, 4, TOL).unwrap();
        assert!(r.pass, "{:?}", r.failures());
    }

    #[test]
    fn one_character_per_place() {
        let af = two_three();
        assert!(global_induction_check(&af, &[], 0, TOL).is_err());
        assert!(adelic_family(&[2], &[], 0, TOL).is_err());
    }
}
