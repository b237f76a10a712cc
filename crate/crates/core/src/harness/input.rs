//! Versioned input documents: `{"schema": "rtp/1", "kind": .., "data": ..}`.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupJson};
use crate::limit::{
    validate_algebra_family, validate_corr_family, validate_module_family, AlgebraFamily, CorrFamily, ModuleFamily,
};
use crate::module::{validate_module, HModule};
use crate::report::{to_json_string, ReportBuilder, VerificationReport, SCHEMA};

/// Anything `validate` accepts.
#[derive(Clone, Debug)]
pub enum Document {
    Group(GroupJson),
    Module(HModule),
    AlgebraFamily(AlgebraFamily),
    ModuleFamily(ModuleFamily),
    CorrFamily(CorrFamily),
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    schema: String,
    kind: String,
    data: Value,
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Group(_) => "group",
            Document::Module(_) => "hmodule",
            Document::AlgebraFamily(_) => "algebra_family",
            Document::ModuleFamily(_) => "module_family",
            Document::CorrFamily(_) => "corr_family",
        }
    }

    /// Parses and shape-checks a document. Every failure here is a parse error.
    pub fn from_json(text: &str) -> Result<Self> {
        let env: Envelope = serde_json::from_str(text)?;
        if env.schema != SCHEMA {
            return Err(Error::Parse(format!("schema {:?}, expected {SCHEMA:?}", env.schema)));
        }
        let data = env.data;
        Ok(match env.kind.as_str() {
            "group" => Document::Group(serde_json::from_value(data)?),
            "hmodule" => Document::Module(serde_json::from_value(data)?),
            "algebra_family" => Document::AlgebraFamily(serde_json::from_value(data)?),
            "module_family" => Document::ModuleFamily(serde_json::from_value(data)?),
            "corr_family" => Document::CorrFamily(serde_json::from_value(data)?),
            other => return Err(Error::Parse(format!("unknown document kind {other:?}"))),
        })
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let data = match self {
            Document::Group(g) => serde_json::to_value(g),
            Document::Module(m) => serde_json::to_value(m),
            Document::AlgebraFamily(f) => serde_json::to_value(f),
            Document::ModuleFamily(f) => serde_json::to_value(f),
            Document::CorrFamily(f) => serde_json::to_value(f),
        }
        .expect("documents serialize");
        to_json_string(&Envelope { schema: SCHEMA.into(), kind: self.kind().into(), data }) + "\n"
    }

    /// The algebra family underneath a family document.
    pub fn algebra_family(&self) -> Option<&AlgebraFamily> {
        match self {
            Document::AlgebraFamily(f) => Some(f),
            Document::ModuleFamily(f) => Some(f.base()),
            Document::CorrFamily(f) => Some(f.base()),
            _ => None,
        }
    }

    pub fn module_family(&self) -> Option<&ModuleFamily> {
        match self {
            Document::ModuleFamily(f) => Some(f),
            Document::CorrFamily(f) => Some(f.modules()),
            _ => None,
        }
    }

    pub fn corr_family(&self) -> Option<&CorrFamily> {
        match self {
            Document::CorrFamily(f) => Some(f),
            _ => None,
        }
    }
}

/// The validation that fits the document kind.
pub fn validate_document(doc: &Document, tol: f64) -> Result<VerificationReport> {
    Ok(match doc {
        Document::Group(g) => {
            let mut rep = ReportBuilder::new("validate_group", tol);
            match FiniteGroup::from_json(g) {
                Ok(grp) => {
                    rep.require("group_axioms", true).info("order", grp.order()).info("abelian", grp.is_abelian());
                }
                Err(e) => {
                    rep.require("group_axioms", false).info("error", e.to_string());
                }
            }
            rep.finish()
        }
        Document::Module(m) => validate_module(m, tol)?,
        Document::AlgebraFamily(f) => validate_algebra_family(f, tol),
        Document::ModuleFamily(f) => validate_module_family(f, tol),
        Document::CorrFamily(f) => validate_corr_family(f, tol),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limit::random::counterexample_family;

    #[test]
    fn round_trip() {
        let doc = Document::CorrFamily(counterexample_family(2));
        let back = Document::from_json(&doc.to_json()).unwrap();
        assert_eq!(back.corr_family(), doc.corr_family());
        assert_eq!(back.kind(), "corr_family");
    }

    #[test]
    fn schema_and_kind_are_checked() {
        let doc = Document::CorrFamily(counterexample_family(1)).to_json();
        assert!(matches!(Document::from_json(&doc.replace("rtp/1", "rtp/0")), Err(Error::Parse(_))));
        assert!(matches!(Document::from_json(&doc.replace("corr_family", "sheaf")), Err(Error::Parse(_))));
        assert!(matches!(Document::from_json("{"), Err(Error::Parse(_))));
    }

    #[test]
    fn a_bad_table_is_a_failed_validation() {
        let mut g = FiniteGroup::cyclic(3).unwrap().to_json();
        g.mult[1][1] = 1;
        let rep = validate_document(&Document::Group(g), 1e-9).unwrap();
        assert!(!rep.pass);
    }
}
