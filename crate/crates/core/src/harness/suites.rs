//! The seeded randomized and fixture suites.
//!
//! Each suite is a list of items. Item `i` draws from its own stream
//! [`RunConfig::rng`]`(i)` and items run on the configured pool, so a report does
//! not depend on the number of workers. Item reports are absorbed in item order
//! under `item{i:03}/`.

use rand::Rng;
use rayon::prelude::*;

use crate::cstar::{block_irrep, irreps_of, StarHom};
use crate::error::{Error, Result};
use crate::group::Rep;
use crate::harness::config::RunConfig;
use crate::limit::random::{
    corner_family, counterexample_family, random_algebra_family, random_coherent_family, random_compatible_family,
    random_level_chain, random_module_levels, Budget,
};
use crate::limit::{
    check_direct_limit_identity, coherence_check, coherence_sufficient_check, commuting_square_check,
    compacts_iso_check, connecting_map, factorize_irrep, functoriality_defect, induction_commutes_check,
    level_layout, validate_corr_family, CorrFamily, LocalRep,
};
use crate::linalg::{self, CMat};
use crate::parabolic::{
    adelic_family, asspar_check, build_datum, global_induction_check, local_induction_check, local_rep, KChoice,
    LocalCorrespondence,
};
use crate::report::{ReportBuilder, VerificationReport};

pub const SUITES: [&str; 6] = ["isometry", "compacts", "coherence", "induction", "parabolic", "factorization"];

/// Composition of connecting maps is checked against this bound rather than `tol`.
pub const FUNCTORIALITY_TOL: f64 = 1e-12;

/// Suite parameters beyond the run configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOptions {
    /// Number of random items; each suite has its own default.
    pub count: Option<usize>,
    /// Field sizes of the parabolic places.
    pub fields: Vec<u32>,
    /// One character label of `L_v` per place.
    pub rhos: Vec<String>,
    /// One choice of `K_v` per place.
    pub k: Vec<KChoice>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            count: None,
            fields: vec![2, 3],
            rhos: vec!["trivial".into(), "trivial".into()],
            k: vec![KChoice::Full, KChoice::Full],
        }
    }
}

impl SuiteOptions {
    /// Pads `rhos` with `trivial` and `k` with `full` to one entry per field.
    pub fn normalized(&self) -> Result<SuiteOptions> {
        let n = self.fields.len();
        if n == 0 {
            return Err(Error::Parse("at least one field size is required".into()));
        }
        if self.rhos.len() > n || self.k.len() > n {
            return Err(Error::Parse(format!("more characters or K choices than the {n} places")));
        }
        let mut o = self.clone();
        o.rhos.resize(n, "trivial".into());
        o.k.resize(n, KChoice::Full);
        Ok(o)
    }
}

/// Runs suite `name`; unknown names are parse errors.
pub fn run_suite(name: &str, opts: &SuiteOptions, cfg: &RunConfig) -> Result<VerificationReport> {
    cfg.check()?;
    let start = std::time::Instant::now();
    let mut report = cfg.install(|| match name {
        "isometry" => Ok(items(name, cfg, opts.count.unwrap_or(100), isometry_item)),
        "compacts" => Ok(items(name, cfg, opts.count.unwrap_or(100), compacts_item)),
        "coherence" => coherence_suite(cfg, opts.count.unwrap_or(30)),
        "induction" => induction_suite(cfg, opts.count.unwrap_or(12)),
        "parabolic" => parabolic_suite(cfg, &opts.normalized()?),
        "factorization" => Ok(items(name, cfg, opts.count.unwrap_or(40), factorization_item)),
        other => Err(Error::Parse(format!("unknown suite {other:?}; expected one of {}", SUITES.join(", ")))),
    })??;
    report.ms = Some(start.elapsed().as_secs_f64() * 1e3);
    Ok(cfg.finish(report))
}

/// Runs `count` items in parallel and absorbs them in order. An item that errors
/// is recorded as a failed `error` entry with its message.
fn items(
    name: &str,
    cfg: &RunConfig,
    count: usize,
    item: impl Fn(&RunConfig, u64) -> Result<VerificationReport> + Sync,
) -> VerificationReport {
    let reports: Vec<VerificationReport> =
        (0..count as u64).into_par_iter().map(|i| item(cfg, i).unwrap_or_else(|e| error_report(cfg.tol, &e))).collect();
    let mut rep = ReportBuilder::new(format!("suite/{name}"), cfg.tol);
    for (i, r) in reports.iter().enumerate() {
        rep.absorb(&format!("item{i:03}"), r);
    }
    summarize(rep, cfg, count)
}

fn error_report(tol: f64, e: &Error) -> VerificationReport {
    let mut rep = ReportBuilder::new("error", tol);
    rep.require("error", false).info("error", e.to_string());
    rep.finish()
}

fn summarize(mut rep: ReportBuilder, cfg: &RunConfig, count: usize) -> VerificationReport {
    rep.info("items", count).info("seed", cfg.seed);
    let mut r = rep.finish();
    let max = r.max_defect();
    r.info.insert("max_defect".into(), max.into());
    r
}

fn isometry_item(cfg: &RunConfig, i: u64) -> Result<VerificationReport> {
    let mut rng = cfg.rng(i);
    let f = random_compatible_family(&mut rng);
    let [s, sp, spp] = random_module_levels(&mut rng, &f);
    let mut rep = ReportBuilder::new("isometry", cfg.tol);
    for (name, a, b) in [("S_Sp", &s, &sp), ("Sp_Spp", &sp, &spp), ("S_Spp", &s, &spp)] {
        rep.absorb(name, &connecting_map(&f, a, b, cfg.tol)?.1);
    }
    rep.defect_within("functoriality", functoriality_defect(&f, &s, &sp, &spp)?, FUNCTORIALITY_TOL);
    rep.absorb("direct_limit", &check_direct_limit_identity(&f, &s, &sp, cfg.tol, &mut rng)?);
    let max_block = (0..f.len()).flat_map(|v| f.base().algebra(v).blocks().to_vec()).max().unwrap_or(0);
    rep.info("indices", f.len())
        .info("exceptional", f.base().exceptional().len())
        .info("max_block_dim", max_block)
        .info("level_size", spp.len());
    Ok(rep.finish())
}

fn compacts_item(cfg: &RunConfig, i: u64) -> Result<VerificationReport> {
    // Same stream and draws as the isometry item, so both suites see the same families.
    let mut rng = cfg.rng(i);
    let f = random_compatible_family(&mut rng);
    let [s, _, spp] = random_module_levels(&mut rng, &f);
    compacts_iso_check(&f, &s, &spp, cfg.tol, &mut rng)
}

/// The rank-two counterexample must pass the fixed-vector condition and fail
/// coherence, with the blame on `rank_one_pprime` at every index.
fn counterexample_report(tol: f64) -> VerificationReport {
    let f = counterexample_family(3);
    let fam = validate_corr_family(&f, tol);
    let coh = coherence_check(&f, tol);
    let suff = coherence_sufficient_check(&f, tol);
    let blamed: Vec<&str> = suff.failures().iter().map(|d| d.location.as_str()).collect();
    let mut rep = ReportBuilder::new("counterexample", tol);
    rep.require("fixed_vector_and_compatibility", fam.pass)
        .require("coherence_fails", !coh.pass)
        .require("blames_rank_one_pprime", !blamed.is_empty() && blamed.iter().all(|l| l.ends_with("/rank_one_pprime")))
        .info("coherence_defect", coh.defects.iter().map(|d| d.value).fold(0.0, f64::max))
        .info("blamed", blamed.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    rep.finish()
}

fn coherent_family_report(f: &CorrFamily, tol: f64) -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new("coherent", tol);
    rep.absorb("coherence", &coherence_check(f, tol)).absorb("sufficient", &coherence_sufficient_check(f, tol));
    let e = f.level(f.base().exceptional().iter().copied())?;
    let all = f.level(0..f.len())?;
    rep.absorb("square", &commuting_square_check(f, &e, &all, tol)?);
    rep.info("indices", f.len());
    Ok(rep.finish())
}

fn coherence_suite(cfg: &RunConfig, count: usize) -> Result<VerificationReport> {
    let random = items("coherence", cfg, count, |cfg, i| {
        let (f, _) = random_coherent_family(&mut cfg.rng(i), 3);
        coherent_family_report(&f, cfg.tol)
    });
    let mut rep = ReportBuilder::new("suite/coherence", cfg.tol);
    rep.absorb("counterexample", &counterexample_report(cfg.tol))
        .absorb("corner", &coherent_family_report(&corner_family(2), cfg.tol)?)
        .absorb("random", &random);
    Ok(summarize(rep, cfg, count))
}

fn induction_suite(cfg: &RunConfig, count: usize) -> Result<VerificationReport> {
    let random = items("induction", cfg, count, |cfg, i| {
        let mut rng = cfg.rng(i);
        let (f, reps) = random_coherent_family(&mut rng, 4);
        let s = f.level(0..f.len())?;
        induction_commutes_check(&f, &reps, &s, cfg.tol, &mut rng)
    });
    let af = adelic_family(&[2, 3], &[KChoice::Full, KChoice::Full], cfg.seed, cfg.tol)?;
    let reps = af
        .locals
        .iter()
        .map(|lc| local_rep(lc, lc.l_table().irrep(0)))
        .collect::<Result<Vec<LocalRep>>>()?;
    let s = af.family.level(0..af.len())?;
    let toy = induction_commutes_check(&af.family, &reps, &s, cfg.tol, &mut cfg.rng(count as u64))?;
    let mut rep = ReportBuilder::new("suite/induction", cfg.tol);
    rep.absorb("random", &random).absorb("parabolic", &toy);
    Ok(summarize(rep, cfg, count))
}

/// Local checks for every character of each `L_v`, then the family and the
/// global comparison for the chosen characters.
fn parabolic_suite(cfg: &RunConfig, opts: &SuiteOptions) -> Result<VerificationReport> {
    let tol = cfg.tol;
    let locals: Vec<VerificationReport> = opts
        .fields
        .par_iter()
        .zip(&opts.k)
        .map(|(&q, k)| local_report(q, k, cfg))
        .collect::<Result<_>>()?;
    let af = adelic_family(&opts.fields, &opts.k, cfg.seed, tol)?;
    let rhos = af
        .locals
        .iter()
        .zip(&opts.rhos)
        .map(|(lc, label)| Ok(lc.l_table().irrep(lc.l_table().find(label)?).clone()))
        .collect::<Result<Vec<Rep>>>()?;
    let mut rep = ReportBuilder::new("suite/parabolic", tol);
    for (q, r) in opts.fields.iter().zip(&locals) {
        rep.absorb(&format!("q{q}"), r);
    }
    rep.absorb("family", &af.report).absorb("global", &global_induction_check(&af, &rhos, cfg.seed, tol)?);
    rep.info("fields", opts.fields.clone()).info("rho", opts.rhos.clone());
    Ok(summarize(rep, cfg, opts.fields.len()))
}

fn local_report(q: u32, k: &KChoice, cfg: &RunConfig) -> Result<VerificationReport> {
    let datum = build_datum(q, k.clone())?;
    let lc = LocalCorrespondence::new(&datum, cfg.seed, cfg.tol)?;
    let mut rep = ReportBuilder::new("local", cfg.tol);
    rep.absorb("asspar", &asspar_check(&lc, cfg.tol));
    let table = lc.l_table();
    for i in 0..table.len() {
        rep.absorb(&format!("induction/{}", table.label(i)), &local_induction_check(&lc, table.irrep(i), cfg.seed, cfg.tol)?);
    }
    rep.info("order_G", datum.group().order())
        .info("order_B", datum.b.order())
        .info("order_L", datum.l.order())
        .info("order_N", datum.n.order())
        .info("order_K", datum.k.order())
        .info("cdim", lc.module().cdim())
        .info("c", lc.c);
    Ok(rep.finish())
}

/// `σ ↦ UσU*` on every matrix unit.
fn conjugate(pi: &StarHom, u: &CMat) -> Result<StarHom> {
    let images = (0..pi.domain().dim()).map(|k| u * pi.unit_matrix(k) * u.adjoint()).collect();
    StarHom::from_matrices(pi.domain(), images)
}

/// Largest level algebra the factorization suite enumerates.
pub const FACTORIZATION_LEVEL_DIM: usize = 400;

fn factorization_item(cfg: &RunConfig, i: u64) -> Result<VerificationReport> {
    let mut rng = cfg.rng(i);
    let f = random_algebra_family(&mut rng, true);
    let e: Vec<usize> = f.exceptional().iter().copied().collect();
    let budget = Budget { max_indices: 4, max_cdim: usize::MAX, max_algebra_dim: FACTORIZATION_LEVEL_DIM };
    let [_, _, top] = random_level_chain(&mut rng, f.len(), &e, |v| (1, f.algebra(v).dim()), budget);
    let s = f.level(top)?;
    let layout = level_layout(&f, &s);
    let a = layout.product().clone();
    let mut rep = ReportBuilder::new("factorization", cfg.tol);
    let irreps = irreps_of(&a);
    for (b, pi) in irreps.iter().enumerate() {
        let u = linalg::random_unitary(&mut rng, pi.rep_dim());
        let fac = factorize_irrep(&f, &s, &conjugate(pi, &u)?, cfg.tol)?;
        let dims: usize = fac.factors.iter().map(StarHom::rep_dim).product();
        rep.require(format!("block{b}/tuple"), fac.block == b && fac.tuple == layout.block_tuple(b))
            .require_eq(format!("block{b}/dimension"), dims, a.blocks()[b])
            .defect(format!("block{b}/intertwiner"), fac.intertwining_defect)
            .defect(format!("block{b}/unitary"), fac.unitarity_defect)
            .require(format!("block{b}/rank_at_most_one"), fac.rank_at_most_one.iter().all(|&(_, r)| r));
    }
    let tuples: usize = s.indices().iter().map(|&v| f.algebra(v).num_blocks()).product();
    rep.require_eq("enumeration", irreps.len(), tuples);
    // Rebuilding from a block tuple returns the same block.
    let b = rng.random_range(0..irreps.len());
    let again = factorize_irrep(&f, &s, &block_irrep(&a, b), cfg.tol)?;
    rep.require("round_trip", again.block == b);
    rep.info("level_size", s.len()).info("blocks", irreps.len()).info("level_dim", a.dim());
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(seed: u64, jobs: usize) -> RunConfig {
        RunConfig::new(seed, 1e-9, jobs).unwrap()
    }

    fn small(count: usize) -> SuiteOptions {
        SuiteOptions { count: Some(count), ..SuiteOptions::default() }
    }

    #[test]
    fn unknown_suite_is_a_parse_error() {
        assert!(matches!(run_suite("nope", &small(1), &cfg(0, 1)), Err(Error::Parse(_))));
    }

    #[test]
    fn small_suites_pass() {
        for name in ["isometry", "compacts", "coherence", "factorization"] {
            let r = run_suite(name, &small(4), &cfg(1, 2)).unwrap();
            assert!(r.pass, "{name}: {:?}", r.failures());
            assert_eq!(r.ms, None);
        }
    }

    #[test]
    fn reports_do_not_depend_on_the_pool() {
        let a = run_suite("isometry", &small(6), &cfg(5, 1)).unwrap();
        let b = run_suite("isometry", &small(6), &cfg(5, 4)).unwrap();
        assert_eq!(crate::report::to_json_string(&a), crate::report::to_json_string(&b));
    }

    #[test]
    fn padding_of_parabolic_options() {
        let o = SuiteOptions { fields: vec![2, 3, 4], rhos: vec!["char1".into()], k: vec![], count: None };
        let n = o.normalized().unwrap();
        assert_eq!(n.rhos, ["char1", "trivial", "trivial"]);
        assert_eq!(n.k.len(), 3);
        let empty = SuiteOptions { fields: vec![], ..SuiteOptions::default() };
        assert!(empty.normalized().is_err());
    }
}
