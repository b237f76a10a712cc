//! Command implementations with the exit-code contract: 0 pass, 1 fail, 2 parse error.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cstar::block_irrep;
use crate::error::{Error, Result};
use crate::harness::config::RunConfig;
use crate::harness::fixtures::resolve;
use crate::harness::input::{validate_document, Document};
use crate::harness::suites::{run_suite, SuiteOptions};
use crate::limit::{
    check_direct_limit_identity, coherence_check, coherence_sufficient_check, commuting_square_check,
    compacts_iso_check, connecting_map, induction_commutes_check, level_algebra, level_module, level_projection,
    level_vector, AlgebraFamily, CorrFamily, Level, LocalRep,
};
use crate::linalg::{self, CVec};
use crate::module::{module_norm, validate_module};
use crate::report::{to_json_string, ReportBuilder, VerificationReport, SCHEMA};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

/// What a command prints and how it exits.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    /// JSON document for stdout or `--out`; empty when the command failed early.
    pub json: String,
    /// Diagnostic for stderr.
    pub message: Option<String>,
}

impl Outcome {
    pub fn from_report(report: &VerificationReport) -> Self {
        let message = (!report.pass).then(|| {
            let worst: Vec<String> =
                report.failures().iter().take(8).map(|d| format!("{} = {:.3e}", d.location, d.value)).collect();
            format!("{} failed: {}", report.check, worst.join(", "))
        });
        Outcome {
            code: if report.pass { EXIT_PASS } else { EXIT_FAIL },
            json: to_json_string(report) + "\n",
            message,
        }
    }

    /// Parse and I/O problems exit 2; anything else raised by a check exits 1.
    pub fn from_error(e: &Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::Io(_) => EXIT_PARSE,
            _ => EXIT_FAIL,
        };
        Outcome { code, json: String::new(), message: Some(e.to_string()) }
    }

    fn of(result: Result<VerificationReport>, cfg: &RunConfig) -> Self {
        match result {
            Ok(r) => Self::from_report(&cfg.finish(r)),
            Err(e) => Self::from_error(&e),
        }
    }
}

fn read(path: &Path) -> Result<Document> {
    Document::read(&resolve(path))
}

pub fn cmd_validate(path: &Path, cfg: &RunConfig) -> Outcome {
    Outcome::of(read(path).and_then(|d| cfg.install(|| validate_document(&d, cfg.tol))?), cfg)
}

fn need<'a, T>(x: Option<&'a T>, what: &str, doc: &Document) -> Result<&'a T> {
    x.ok_or_else(|| Error::Parse(format!("a {what} is required, got a {}", doc.kind())))
}

fn level_of(f: &AlgebraFamily, s: &[usize]) -> Result<Level> {
    f.level(s.iter().copied())
}

/// Describes the level algebra (and module, if any) at `S`, and validates them.
pub fn cmd_level_build(path: &Path, s: &[usize], cfg: &RunConfig) -> Outcome {
    let run = || -> Result<VerificationReport> {
        let doc = read(path)?;
        let base = need(doc.algebra_family(), "family document", &doc)?;
        let lvl = level_of(base, s)?;
        let mut rep = ReportBuilder::new("level_build", cfg.tol);
        let a = level_algebra(base, &lvl);
        let p = level_projection(base, &lvl);
        rep.defect("projection", p.projection_defect())
            .info("S", lvl.indices().to_vec())
            .info("algebra_blocks", a.blocks().to_vec())
            .info("algebra_dim", a.dim())
            .info("projection_ranks", p.block_ranks(1e-9));
        if let Some(f) = doc.module_family() {
            let x = level_module(f, &lvl);
            let xs = level_vector(f, &lvl);
            rep.absorb("module", &cfg.install(|| validate_module(&x, cfg.tol))??)
                .info("cdim", x.cdim())
                .info("vector_norm", module_norm(&x, &xs)?);
        }
        Ok(rep.finish())
    };
    Outcome::of(run(), cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Isometry,
    Compacts,
    Coherence,
    Induction,
}

/// `π_v` the first block irrep of `A_v` not killing `p_v`, with `h_v` in the range
/// of `π_v(p_v)`. Exceptional indices get block 0 and no `h_v`.
pub fn canonical_reps(f: &CorrFamily, s: &Level) -> Vec<LocalRep> {
    s.indices()
        .iter()
        .map(|&v| {
            let a = f.base().algebra(v);
            let p = f.base().projection(v);
            if f.base().is_exceptional(v) {
                return LocalRep::new(block_irrep(a, 0), None);
            }
            let chosen = (0..a.num_blocks()).find_map(|b| {
                let pi = block_irrep(a, b);
                let pp = pi.apply(p).ok()?.block(0).clone();
                let col = (0..pp.ncols()).map(|c| pp.column(c).clone_owned()).find(|c| c.norm() > 0.5)?;
                let n = col.norm();
                Some((pi, col / linalg::real(n)))
            });
            match chosen {
                Some((pi, h)) => LocalRep::new(pi, Some(CVec::from(h))),
                None => LocalRep::new(block_irrep(a, 0), None),
            }
        })
        .collect()
}

pub fn cmd_check(kind: CheckKind, path: &Path, s: &[usize], sp: &[usize], cfg: &RunConfig) -> Outcome {
    let run = || -> Result<VerificationReport> {
        let doc = read(path)?;
        let base = need(doc.algebra_family(), "family document", &doc)?;
        let (lvl, lvl_p) = (level_of(base, s)?, level_of(base, sp)?);
        if !lvl.is_subset_of(&lvl_p) {
            return Err(Error::Level(format!("S = {s:?} is not contained in S' = {sp:?}")));
        }
        let mut rng = cfg.rng(0);
        let tol = cfg.tol;
        cfg.install(|| match kind {
            CheckKind::Isometry => {
                let f = need(doc.module_family(), "module or correspondence family", &doc)?;
                let mut rep = ReportBuilder::new("check/isometry", tol);
                rep.absorb("connecting", &connecting_map(f, &lvl, &lvl_p, tol)?.1)
                    .absorb("direct_limit", &check_direct_limit_identity(f, &lvl, &lvl_p, tol, &mut rng)?);
                Ok(rep.finish())
            }
            CheckKind::Compacts => {
                let f = need(doc.module_family(), "module or correspondence family", &doc)?;
                compacts_iso_check(f, &lvl, &lvl_p, tol, &mut rng)
            }
            CheckKind::Coherence => {
                let f = need(doc.corr_family(), "correspondence family", &doc)?;
                let mut rep = ReportBuilder::new("check/coherence", tol);
                rep.absorb("coherence", &coherence_check(f, tol))
                    .absorb("sufficient", &coherence_sufficient_check(f, tol))
                    .absorb("square", &commuting_square_check(f, &lvl, &lvl_p, tol)?);
                Ok(rep.finish())
            }
            CheckKind::Induction => {
                let f = need(doc.corr_family(), "correspondence family", &doc)?;
                let mut rep = ReportBuilder::new("check/induction", tol);
                for (name, l) in [("S", &lvl), ("Sprime", &lvl_p)] {
                    let reps = canonical_reps(f, l);
                    rep.absorb(name, &induction_commutes_check(f, &reps, l, tol, &mut rng)?);
                }
                Ok(rep.finish())
            }
        })?
    };
    Outcome::of(run(), cfg)
}

pub fn cmd_suite(name: &str, opts: &SuiteOptions, cfg: &RunConfig) -> Outcome {
    Outcome::of(run_suite(name, opts, cfg), cfg)
}

/// The parabolic pipeline for the given places and characters.
pub fn cmd_parabolic_demo(opts: &SuiteOptions, cfg: &RunConfig) -> Outcome {
    cmd_suite("parabolic", opts, cfg)
}

/// One row of a merged summary.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub check: String,
    pub pass: bool,
    pub reports: usize,
    pub max_defect: f64,
    pub ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub schema: String,
    pub pass: bool,
    pub checks: Vec<SummaryRow>,
}

/// Merges reports by check name, in order of first appearance.
pub fn merge_reports(reports: &[VerificationReport]) -> Summary {
    let mut rows: Vec<SummaryRow> = Vec::new();
    for r in reports {
        let idx = match rows.iter().position(|row| row.check == r.check) {
            Some(i) => i,
            None => {
                rows.push(SummaryRow { check: r.check.clone(), pass: true, reports: 0, max_defect: 0.0, ms: None });
                rows.len() - 1
            }
        };
        let row = &mut rows[idx];
        row.pass &= r.pass;
        row.reports += 1;
        row.max_defect = row.max_defect.max(r.max_defect());
        row.ms = match (row.ms, r.ms) {
            (Some(a), Some(b)) => Some(a + b),
            (a, b) => a.or(b),
        };
    }
    Summary { schema: SCHEMA.into(), pass: rows.iter().all(|r| r.pass), checks: rows }
}

pub fn read_report(path: &Path) -> Result<VerificationReport> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let r: VerificationReport = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if r.schema != SCHEMA {
        return Err(Error::Parse(format!("{}: schema {:?}, expected {SCHEMA:?}", path.display(), r.schema)));
    }
    Ok(r)
}

/// Exit 0 when every merged report passed (or there were none), 1 otherwise.
pub fn cmd_report(paths: &[PathBuf]) -> Outcome {
    match paths.iter().map(|p| read_report(p)).collect::<Result<Vec<_>>>() {
        Ok(reports) => {
            let summary = merge_reports(&reports);
            Outcome {
                code: if summary.pass { EXIT_PASS } else { EXIT_FAIL },
                json: to_json_string(&summary) + "\n",
                message: None,
            }
        }
        Err(e) => Outcome::from_error(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::fixtures::fixture_dir;

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn exit_codes_of_validate() {
        assert_eq!(cmd_validate(Path::new("families/counterexample.json"), &cfg()).code, EXIT_PASS);
        let bad = cmd_validate(Path::new("families/corrupted_projection.json"), &cfg());
        assert_eq!(bad.code, EXIT_FAIL);
        assert!(bad.message.unwrap().contains("v1/projection"));
        assert_eq!(cmd_validate(Path::new("families/malformed.json"), &cfg()).code, EXIT_PARSE);
        assert_eq!(cmd_validate(Path::new("no/such/file.json"), &cfg()).code, EXIT_PARSE);
    }

    #[test]
    fn merging() {
        assert_eq!(merge_reports(&[]), Summary { schema: SCHEMA.into(), pass: true, checks: vec![] });
        let mut a = ReportBuilder::new("x", 1e-9);
        a.defect("d", 1e-12);
        let a = a.finish();
        let mut b = ReportBuilder::new("x", 1e-9);
        b.defect("d", 1e-3);
        let b = b.finish();
        let one = merge_reports(std::slice::from_ref(&a));
        assert_eq!(one.checks[0].max_defect, a.max_defect());
        assert_eq!(one.checks[0].ms, a.ms);
        let two = merge_reports(&[a, b]);
        assert_eq!(two.checks.len(), 1);
        assert_eq!(two.checks[0].max_defect, 1e-3);
        assert!(!two.pass);
    }

    #[test]
    fn checks_on_the_fixtures() {
        let path = fixture_dir().join("families/counterexample.json");
        let coh = cmd_check(CheckKind::Coherence, &path, &[0], &[0, 1], &cfg());
        assert_eq!(coh.code, EXIT_FAIL);
        let corner = fixture_dir().join("families/corner.json");
        for kind in [CheckKind::Isometry, CheckKind::Compacts, CheckKind::Coherence, CheckKind::Induction] {
            let o = cmd_check(kind, &corner, &[0], &[0, 1], &cfg());
            assert_eq!(o.code, EXIT_PASS, "{kind:?}: {:?}", o.message);
        }
        let o = cmd_check(CheckKind::Isometry, &corner, &[0, 1], &[1], &cfg());
        assert_eq!(o.code, EXIT_FAIL);
    }

    #[test]
    fn level_build_reports_dimensions() {
        let o = cmd_level_build(Path::new("families/compatible.json"), &[0, 1], &cfg());
        assert_eq!(o.code, EXIT_PASS, "{:?}", o.message);
        let r: VerificationReport = serde_json::from_str(&o.json).unwrap();
        assert!(r.info_usize("cdim").is_some());
        assert_eq!(r.ms, None);
    }
}
