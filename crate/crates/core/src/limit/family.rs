//! Indexed families with an exceptional set, and finite levels `S ⊇ E`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cstar::{AlgElement, BlockAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, c64, CVec};
use crate::module::{
    rank_one, validate_correspondence, validate_module, Correspondence, HModule, LeftAction, TraceGeometry,
};
use crate::report::{ReportBuilder, VerificationReport};

/// `(A_v, p_v)_{v ∈ I}` with exceptional set `E`. Indices are `0..len`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AlgebraFamilyJson", into = "AlgebraFamilyJson")]
pub struct AlgebraFamily {
    algebras: Vec<BlockAlgebra>,
    projections: Vec<AlgElement>,
    exceptional: BTreeSet<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraFamilyJson {
    pub projections: Vec<AlgElement>,
    #[serde(default)]
    pub exceptional: Vec<usize>,
}

impl TryFrom<AlgebraFamilyJson> for AlgebraFamily {
    type Error = Error;
    fn try_from(j: AlgebraFamilyJson) -> Result<Self> {
        let algebras = j.projections.iter().map(|p| p.algebra().clone()).collect();
        AlgebraFamily::new(algebras, j.projections, j.exceptional)
    }
}

impl From<AlgebraFamily> for AlgebraFamilyJson {
    fn from(f: AlgebraFamily) -> Self {
        AlgebraFamilyJson { projections: f.projections, exceptional: f.exceptional.into_iter().collect() }
    }
}

impl AlgebraFamily {
    /// Shape checks only; projections and the nonvanishing rule are checked by
    /// [`validate_algebra_family`].
    pub fn new(
        algebras: Vec<BlockAlgebra>,
        projections: Vec<AlgElement>,
        exceptional: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        if algebras.len() != projections.len() {
            return Err(Error::Shape("one projection per algebra required".into()));
        }
        for (v, (a, p)) in algebras.iter().zip(&projections).enumerate() {
            if !p.algebra().same_shape(a) {
                return Err(Error::Shape(format!("p_{v} does not live in A_{v}")));
            }
        }
        let exceptional: BTreeSet<usize> = exceptional.into_iter().collect();
        if let Some(&v) = exceptional.iter().find(|&&v| v >= algebras.len()) {
            return Err(Error::Shape(format!("exceptional index {v} out of range")));
        }
        Ok(AlgebraFamily { algebras, projections, exceptional })
    }

    pub fn len(&self) -> usize {
        self.algebras.len()
    }

    pub fn is_empty(&self) -> bool {
        self.algebras.is_empty()
    }

    pub fn algebra(&self, v: usize) -> &BlockAlgebra {
        &self.algebras[v]
    }

    pub fn projection(&self, v: usize) -> &AlgElement {
        &self.projections[v]
    }

    pub fn exceptional(&self) -> &BTreeSet<usize> {
        &self.exceptional
    }

    pub fn is_exceptional(&self, v: usize) -> bool {
        self.exceptional.contains(&v)
    }

    /// Indices outside `E`, in order.
    pub fn regular(&self) -> Vec<usize> {
        (0..self.len()).filter(|v| !self.is_exceptional(*v)).collect()
    }

    pub fn level(&self, indices: impl IntoIterator<Item = usize>) -> Result<Level> {
        Level::new(indices.into_iter().collect(), self.len(), &self.exceptional)
    }
}

/// Checks that every `p_v` is a projection and that `p_v ≠ 0` off `E`.
///
/// Per-index work runs on the current rayon pool; entries are ordered by index.
pub fn validate_algebra_family(f: &AlgebraFamily, tol: f64) -> VerificationReport {
    let mut rep = ReportBuilder::new("validate_algebra_family", tol);
    let per: Vec<(f64, Option<bool>)> = (0..f.len())
        .into_par_iter()
        .map(|v| {
            let p = f.projection(v);
            let nonzero = (!f.is_exceptional(v)).then(|| p.op_norm() > 0.5);
            (p.projection_defect(), nonzero)
        })
        .collect();
    for (v, (proj, nonzero)) in per.into_iter().enumerate() {
        rep.defect(format!("v{v}/projection"), proj);
        match nonzero {
            Some(ok) => {
                rep.require(format!("v{v}/nonzero"), ok);
            }
            None => {
                rep.info(format!("v{v}/exempt"), true);
            }
        }
    }
    rep.info("indices", f.len());
    rep.finish()
}

/// `(X_v, x_v)_{v ∈ I}` over an algebra family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModuleFamilyJson", into = "ModuleFamilyJson")]
pub struct ModuleFamily {
    base: AlgebraFamily,
    modules: Vec<HModule>,
    vectors: Vec<CVec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleFamilyJson {
    pub base: AlgebraFamily,
    pub modules: Vec<HModule>,
    pub vectors: Vec<Vec<[f64; 2]>>,
}

impl TryFrom<ModuleFamilyJson> for ModuleFamily {
    type Error = Error;
    fn try_from(j: ModuleFamilyJson) -> Result<Self> {
        let vectors = j.vectors.iter().map(|v| cvec_from_pairs(v)).collect();
        ModuleFamily::new(j.base, j.modules, vectors)
    }
}

impl From<ModuleFamily> for ModuleFamilyJson {
    fn from(f: ModuleFamily) -> Self {
        ModuleFamilyJson {
            vectors: f.vectors.iter().map(cvec_to_pairs).collect(),
            base: f.base,
            modules: f.modules,
        }
    }
}

pub fn cvec_from_pairs(v: &[[f64; 2]]) -> CVec {
    CVec::from_iterator(v.len(), v.iter().map(|&[re, im]| c64(re, im)))
}

pub fn cvec_to_pairs(v: &CVec) -> Vec<[f64; 2]> {
    v.iter().map(|z| [z.re, z.im]).collect()
}

impl ModuleFamily {
    pub fn new(base: AlgebraFamily, modules: Vec<HModule>, vectors: Vec<CVec>) -> Result<Self> {
        if modules.len() != base.len() || vectors.len() != base.len() {
            return Err(Error::Shape("one module and one vector per index required".into()));
        }
        for v in 0..base.len() {
            if !modules[v].algebra().same_shape(base.algebra(v)) {
                return Err(Error::Shape(format!("X_{v} is not a module over A_{v}")));
            }
            if vectors[v].len() != modules[v].cdim() {
                return Err(Error::Shape(format!("x_{v} has the wrong length")));
            }
        }
        Ok(ModuleFamily { base, modules, vectors })
    }

    pub fn base(&self) -> &AlgebraFamily {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.base.len()
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_empty()
    }

    pub fn module(&self, v: usize) -> &HModule {
        &self.modules[v]
    }

    pub fn vector(&self, v: usize) -> &CVec {
        &self.vectors[v]
    }

    pub fn level(&self, indices: impl IntoIterator<Item = usize>) -> Result<Level> {
        self.base.level(indices)
    }

    /// Replaces one distinguished vector (fault injection and perturbation studies).
    pub fn with_vector(mut self, v: usize, x: CVec) -> Result<Self> {
        if x.len() != self.modules[v].cdim() {
            return Err(Error::Shape(format!("x_{v} has the wrong length")));
        }
        self.vectors[v] = x;
        Ok(self)
    }
}

/// Module axioms for each `X_v`, then for `v ∉ E`: `⟨x_v, x_v⟩ = p_v` (entry
/// `compatible`), and the derived identities `x_v·p_v = x_v` (entry `fixed`,
/// measured as `‖⟨x·p − x, x·p − x⟩‖ = ‖x·p − x‖²`) and `T_{x_v,x_v}` a projection
/// (entry `rank_one_projection`, in the operator norm of `End*(X_v)`).
///
/// Both derived entries are bounded by a constant times the compatibility defect,
/// which is why the fixed-vector defect is reported squared.
pub fn validate_module_family(f: &ModuleFamily, tol: f64) -> VerificationReport {
    let mut rep = ReportBuilder::new("validate_module_family", tol);
    rep.absorb("base", &validate_algebra_family(&f.base, tol));
    let per: Vec<(usize, VerificationReport, Option<[f64; 3]>)> = (0..f.len())
        .into_par_iter()
        .map(|v| {
            let x_mod = f.module(v);
            let module_rep = validate_module(x_mod, tol).expect("shapes checked at construction");
            let derived = (!f.base.is_exceptional(v)).then(|| {
                let x = f.vector(v);
                let p = f.base.projection(v);
                let compat = x_mod.inner(x, x).expect("shape").distance(p).expect("shape");
                let diff = x_mod.act(x, p).expect("shape") - x;
                let fixed = x_mod.inner(&diff, &diff).expect("shape").op_norm();
                let t = rank_one(x_mod, x, x).expect("shape");
                let geom = TraceGeometry::of(x_mod);
                let sq = t.matrix() * t.matrix() - t.matrix();
                let proj = geom.norm_of(&sq).max(geom.norm_of(&(t.adjoint_matrix() - t.matrix())));
                [compat, fixed, proj]
            });
            (v, module_rep, derived)
        })
        .collect();
    for (v, module_rep, derived) in per {
        rep.absorb(&format!("v{v}/module"), &module_rep);
        if let Some([compat, fixed, proj]) = derived {
            rep.defect(format!("v{v}/compatible"), compat)
                .defect(format!("v{v}/fixed"), fixed)
                .defect(format!("v{v}/rank_one_projection"), proj);
        }
    }
    rep.finish()
}

/// Correspondences `(X_v, x_v)` with left actions of `(A'_v, p'_v)`.
///
/// The primed algebras form their own [`AlgebraFamily`] with the same exceptional set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CorrFamilyJson", into = "CorrFamilyJson")]
pub struct CorrFamily {
    modules: ModuleFamily,
    primed: AlgebraFamily,
    actions: Vec<LeftAction>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorrFamilyJson {
    pub modules: ModuleFamily,
    pub primed_projections: Vec<AlgElement>,
    /// `actions[v][k]` is `α_v(e_k)` as a row-major `m_v x m_v` matrix of `[re, im]`.
    pub actions: Vec<Vec<Vec<[f64; 2]>>>,
}

impl TryFrom<CorrFamilyJson> for CorrFamily {
    type Error = Error;
    fn try_from(j: CorrFamilyJson) -> Result<Self> {
        let algebras: Vec<BlockAlgebra> = j.primed_projections.iter().map(|p| p.algebra().clone()).collect();
        let primed = AlgebraFamily::new(
            algebras.clone(),
            j.primed_projections,
            j.modules.base().exceptional().iter().copied(),
        )?;
        if j.actions.len() != algebras.len() {
            return Err(Error::Shape("one action per index required".into()));
        }
        let mut actions = Vec::new();
        for (v, (imgs, a)) in j.actions.iter().zip(&algebras).enumerate() {
            let m = j.modules.module(v).cdim();
            let mats = imgs
                .iter()
                .map(|flat| {
                    if flat.len() != m * m {
                        return Err(Error::Shape(format!("action image at index {v} has the wrong size")));
                    }
                    Ok(linalg::CMat::from_row_iterator(m, m, flat.iter().map(|&[re, im]| c64(re, im))))
                })
                .collect::<Result<Vec<_>>>()?;
            actions.push(LeftAction::new(a.clone(), mats)?);
        }
        CorrFamily::new(j.modules, primed, actions)
    }
}

impl From<CorrFamily> for CorrFamilyJson {
    fn from(f: CorrFamily) -> Self {
        let actions = f
            .actions
            .iter()
            .map(|a| {
                a.images()
                    .iter()
                    .map(|m| {
                        let mut out = Vec::with_capacity(m.len());
                        for i in 0..m.nrows() {
                            for j in 0..m.ncols() {
                                out.push([m[(i, j)].re, m[(i, j)].im]);
                            }
                        }
                        out
                    })
                    .collect()
            })
            .collect();
        CorrFamilyJson { primed_projections: f.primed.projections, modules: f.modules, actions }
    }
}

impl CorrFamily {
    pub fn new(modules: ModuleFamily, primed: AlgebraFamily, actions: Vec<LeftAction>) -> Result<Self> {
        if primed.len() != modules.len() || actions.len() != modules.len() {
            return Err(Error::Shape("primed data must cover every index".into()));
        }
        if primed.exceptional() != modules.base().exceptional() {
            return Err(Error::Shape("primed family must share the exceptional set".into()));
        }
        for v in 0..modules.len() {
            if !actions[v].aprime().same_shape(primed.algebra(v)) {
                return Err(Error::Shape(format!("α_{v} is not defined on A'_{v}")));
            }
            Correspondence::new(modules.module(v).clone(), actions[v].clone())?;
        }
        Ok(CorrFamily { modules, primed, actions })
    }

    pub fn modules(&self) -> &ModuleFamily {
        &self.modules
    }

    pub fn base(&self) -> &AlgebraFamily {
        self.modules.base()
    }

    pub fn primed(&self) -> &AlgebraFamily {
        &self.primed
    }

    pub fn action(&self, v: usize) -> &LeftAction {
        &self.actions[v]
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn correspondence(&self, v: usize) -> Correspondence {
        Correspondence::new(self.modules.module(v).clone(), self.actions[v].clone()).expect("checked")
    }

    /// `α_v(p'_v)` as an operator on `X_v`.
    pub fn primed_projection_image(&self, v: usize) -> linalg::CMat {
        self.actions[v].apply(self.primed.projection(v)).expect("checked")
    }

    /// Replaces `p'_v` (fault injection).
    pub fn with_primed_projection(mut self, v: usize, p: AlgElement) -> Result<Self> {
        let mut projections = self.primed.projections.clone();
        projections[v] = p;
        self.primed = AlgebraFamily::new(
            self.primed.algebras.clone(),
            projections,
            self.primed.exceptional.iter().copied(),
        )?;
        Ok(self)
    }

    pub fn level(&self, indices: impl IntoIterator<Item = usize>) -> Result<Level> {
        self.modules.level(indices)
    }
}

/// Per-index correspondence validation plus `α_v(p'_v)·x_v = x_v` for `v ∉ E`
/// (entry `fixes_x`).
pub fn validate_corr_family(f: &CorrFamily, tol: f64) -> VerificationReport {
    let mut rep = ReportBuilder::new("validate_corr_family", tol);
    rep.absorb("modules", &validate_module_family(&f.modules, tol));
    rep.absorb("primed", &validate_algebra_family(&f.primed, tol));
    let per: Vec<(VerificationReport, Option<f64>)> = (0..f.len())
        .into_par_iter()
        .map(|v| {
            let c = validate_correspondence(&f.correspondence(v), tol);
            let fixes = (!f.base().is_exceptional(v)).then(|| fixed_vector_defect(f, v));
            (c, fixes)
        })
        .collect();
    for (v, (c, fixes)) in per.into_iter().enumerate() {
        rep.absorb(&format!("v{v}/correspondence"), &c);
        if let Some(d) = fixes {
            rep.defect(format!("v{v}/fixes_x"), d);
        }
    }
    rep.finish()
}

/// `‖α_v(p'_v) x_v − x_v‖` in the module norm.
pub fn fixed_vector_defect(f: &CorrFamily, v: usize) -> f64 {
    let x_mod = f.modules.module(v);
    let x = f.modules.vector(v);
    let diff = f.primed_projection_image(v) * x - x;
    crate::module::module_norm(x_mod, &diff).expect("shape")
}

/// A finite level: strictly increasing indices containing `E`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Level {
    indices: Vec<usize>,
}

impl Level {
    pub fn new(indices: Vec<usize>, len: usize, exceptional: &BTreeSet<usize>) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Level(format!("indices {indices:?} are not strictly increasing")));
        }
        if let Some(&v) = indices.iter().find(|&&v| v >= len) {
            return Err(Error::Level(format!("index {v} is outside the family")));
        }
        let missing: Vec<usize> = exceptional.iter().copied().filter(|v| !indices.contains(v)).collect();
        if !missing.is_empty() {
            return Err(Error::Level(format!("level {indices:?} misses exceptional indices {missing:?}")));
        }
        Ok(Level { indices })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.indices.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Level) -> bool {
        self.indices.iter().all(|&v| other.contains(v))
    }

    /// Positions of `self`'s indices inside `other`, or a level error when `self ⊄ other`.
    pub fn positions_in(&self, other: &Level) -> Result<Vec<usize>> {
        self.indices
            .iter()
            .map(|v| {
                other
                    .indices
                    .binary_search(v)
                    .map_err(|_| Error::Level(format!("{:?} is not contained in {:?}", self.indices, other.indices)))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{real, ONE, ZERO};

    fn scalar_family(n: usize, e: &[usize]) -> AlgebraFamily {
        let c = BlockAlgebra::scalars();
        AlgebraFamily::new(vec![c.clone(); n], vec![c.unit(); n], e.iter().copied()).unwrap()
    }

    fn c2_family(n: usize) -> ModuleFamily {
        let x = HModule::hilbert_space(2).unwrap();
        let v = CVec::from_vec(vec![ONE, ZERO]);
        ModuleFamily::new(scalar_family(n, &[]), vec![x; n], vec![v; n]).unwrap()
    }

    #[test]
    fn scalar_family_passes() {
        assert!(validate_algebra_family(&scalar_family(4, &[]), 1e-12).pass);
    }

    #[test]
    fn non_idempotent_projection_is_localized() {
        let c = BlockAlgebra::scalars();
        let mut ps = vec![c.unit(); 3];
        ps[1] = c.unit().scale(real(2.0));
        let f = AlgebraFamily::new(vec![c; 3], ps, []).unwrap();
        let r = validate_algebra_family(&f, 1e-9);
        assert!(!r.pass);
        let bad: Vec<&str> = r.failures().iter().map(|d| d.location.as_str()).collect();
        assert_eq!(bad, vec!["v1/projection"]);
    }

    #[test]
    fn zero_projection_exempt_in_e() {
        let c = BlockAlgebra::scalars();
        let f = AlgebraFamily::new(vec![c.clone(); 2], vec![c.zero(), c.unit()], [0]).unwrap();
        assert!(validate_algebra_family(&f, 1e-9).pass);
        let g = AlgebraFamily::new(vec![c.clone(); 2], vec![c.zero(), c.unit()], []).unwrap();
        assert!(!validate_algebra_family(&g, 1e-9).pass);
    }

    #[test]
    fn c2_family_is_compatible_and_scaling_breaks_it() {
        let f = c2_family(3);
        let r = validate_module_family(&f, 1e-12);
        assert!(r.pass, "{:?}", r.failures());
        let g = f.with_vector(1, CVec::from_vec(vec![real(2.0), ZERO])).unwrap();
        let r = validate_module_family(&g, 1e-9);
        assert!(!r.pass);
        assert!((r.defect("v1/compatible").unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn levels_must_contain_e() {
        let f = scalar_family(4, &[2]);
        assert!(f.level([0, 2]).is_ok());
        assert!(matches!(f.level([0, 1]), Err(Error::Level(_))));
        assert!(matches!(f.level([2, 0]), Err(Error::Level(_))));
        let s = f.level([2]).unwrap();
        let t = f.level([0, 2, 3]).unwrap();
        assert_eq!(s.positions_in(&t).unwrap(), vec![1]);
        assert!(t.positions_in(&s).is_err());
    }

    #[test]
    fn family_json_roundtrip() {
        let f = c2_family(2);
        let s = serde_json::to_string(&f).unwrap();
        let back: ModuleFamily = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
