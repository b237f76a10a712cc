//! The shipped fixture documents, regenerated from code.

use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::group::FiniteGroup;
use crate::harness::input::Document;
use crate::limit::random::{corner_family, counterexample_family, random_compatible_family};
use crate::limit::AlgebraFamily;
use crate::linalg;
use crate::parabolic::{FiniteField, Gl2};

/// `$RTP_FIXTURES`, or the `fixtures/` directory of this crate.
pub fn fixture_dir() -> PathBuf {
    std::env::var_os("RTP_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
}

/// `path` itself when it exists, otherwise the same relative path under [`fixture_dir`].
pub fn resolve(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        path.to_path_buf()
    } else {
        fixture_dir().join(path)
    }
}

fn gl2(q: u32) -> FiniteGroup {
    Gl2::new(&FiniteField::new(q).expect("prime")).expect("GL_2 enumerates").group
}

/// A compatible module family drawn from a fixed seed.
pub fn compatible_fixture() -> crate::limit::ModuleFamily {
    random_compatible_family(&mut ChaCha8Rng::seed_from_u64(7))
}

/// The compatible family's algebras with `p_1` halved, so index 1 is not a projection.
pub fn corrupted_fixture() -> AlgebraFamily {
    let base = compatible_fixture().base().clone();
    let algebras = (0..base.len()).map(|v| base.algebra(v).clone()).collect();
    let mut projections: Vec<_> = (0..base.len()).map(|v| base.projection(v).clone()).collect();
    projections[1] = projections[1].scale(linalg::real(0.5));
    AlgebraFamily::new(algebras, projections, base.exceptional().iter().copied()).expect("same shapes")
}

/// `(relative path, contents)` for every fixture.
pub fn generate() -> Vec<(String, String)> {
    let groups = [
        ("c2", FiniteGroup::cyclic(2).expect("order 2")),
        ("s3", FiniteGroup::symmetric(3).expect("S_3")),
        ("gl2_f2", gl2(2)),
        ("gl2_f3", gl2(3)),
    ];
    let mut out: Vec<(String, String)> =
        groups.into_iter().map(|(name, g)| (format!("groups/{name}.json"), Document::Group(g.to_json()).to_json())).collect();
    let families = [
        ("counterexample", Document::CorrFamily(counterexample_family(3))),
        ("corner", Document::CorrFamily(corner_family(2))),
        ("compatible", Document::ModuleFamily(compatible_fixture())),
        ("corrupted_projection", Document::AlgebraFamily(corrupted_fixture())),
    ];
    out.extend(families.into_iter().map(|(name, d)| (format!("families/{name}.json"), d.to_json())));
    out.push(("families/malformed.json".into(), "{\"schema\": \"rtp/1\", \"kind\": \"corr_family\", \"data\": [\n".into()));
    out
}

/// Writes every fixture under `dir`.
pub fn write_all(dir: &Path) -> Result<Vec<PathBuf>> {
    generate()
        .into_iter()
        .map(|(rel, text)| {
            let path = dir.join(rel);
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, text)?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::input::validate_document;

    #[test]
    fn generated_fixtures_parse_and_validate_as_intended() {
        for (rel, text) in generate() {
            let parsed = Document::from_json(&text);
            if rel.contains("malformed") {
                assert!(parsed.is_err());
                continue;
            }
            let rep = validate_document(&parsed.unwrap(), 1e-9).unwrap();
            assert_eq!(rep.pass, !rel.contains("corrupted"), "{rel}: {:?}", rep.failures());
        }
    }

    #[test]
    fn corruption_is_reported_at_its_index() {
        let rep = validate_document(&Document::AlgebraFamily(corrupted_fixture()), 1e-9).unwrap();
        let failing: Vec<&str> = rep.failures().iter().map(|d| d.location.as_str()).collect();
        assert_eq!(failing, ["v1/projection"]);
    }
}
