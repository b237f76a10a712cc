//! Right Hilbert C*-modules over block algebras in raw coordinates.
//!
//! A module of complex dimension `m` over `A` is stored as two sparse
//! coordinate tensors indexed by the matrix units `e_k` of `A`:
//!
//! * action: `(x·e_k)_i = Σ_j R_k[i, j] x_j`
//! * gram:   `⟨x, y⟩_k = Σ_{i,j} conj(x_i) G_k[i, j] y_j`
//!
//! The inner product is conjugate-linear in the first argument.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cstar::{AlgElement, BlockAlgebra, UnitIndex};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec, C64, ONE, ZERO};
use crate::report::{ReportBuilder, VerificationReport};

/// One sparse `m x m` matrix per algebra coordinate, stored compressed by coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct CoordTensor {
    ptr: Vec<usize>,
    entries: Vec<(usize, usize, C64)>,
}

impl CoordTensor {
    /// Builds from `(k, i, j, v)` entries; duplicates are summed, zeros dropped.
    pub fn from_entries(ncoords: usize, mut raw: Vec<(usize, usize, usize, C64)>) -> Self {
        raw.sort_by_key(|e| (e.0, e.1, e.2));
        let mut merged: Vec<(usize, usize, usize, C64)> = Vec::with_capacity(raw.len());
        for e in raw {
            match merged.last_mut() {
                Some(last) if (last.0, last.1, last.2) == (e.0, e.1, e.2) => last.3 += e.3,
                _ => merged.push(e),
            }
        }
        merged.retain(|e| e.3 != ZERO);
        let mut ptr = vec![0; ncoords + 1];
        for e in &merged {
            ptr[e.0 + 1] += 1;
        }
        for k in 0..ncoords {
            ptr[k + 1] += ptr[k];
        }
        let entries = merged.into_iter().map(|(_, i, j, v)| (i, j, v)).collect();
        CoordTensor { ptr, entries }
    }

    pub fn from_dense(mats: &[CMat]) -> Self {
        let mut raw = Vec::new();
        for (k, m) in mats.iter().enumerate() {
            for i in 0..m.nrows() {
                for j in 0..m.ncols() {
                    if m[(i, j)] != ZERO {
                        raw.push((k, i, j, m[(i, j)]));
                    }
                }
            }
        }
        Self::from_entries(mats.len(), raw)
    }

    pub fn ncoords(&self) -> usize {
        self.ptr.len() - 1
    }

    pub fn slice(&self, k: usize) -> &[(usize, usize, C64)] {
        &self.entries[self.ptr[k]..self.ptr[k + 1]]
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn dense(&self, k: usize, m: usize) -> CMat {
        let mut out = CMat::zeros(m, m);
        for &(i, j, v) in self.slice(k) {
            out[(i, j)] += v;
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, usize, C64)> + '_ {
        (0..self.ncoords()).flat_map(move |k| self.slice(k).iter().map(move |&(i, j, v)| (k, i, j, v)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HModule {
    algebra: BlockAlgebra,
    cdim: usize,
    action: CoordTensor,
    gram: CoordTensor,
}

impl HModule {
    /// Builds a module from explicit tensors. Only shapes are checked here; use
    /// [`validate_module`] for the module axioms.
    pub fn from_tensors(
        algebra: BlockAlgebra,
        cdim: usize,
        action: CoordTensor,
        gram: CoordTensor,
    ) -> Result<Self> {
        if cdim == 0 {
            return Err(Error::Shape("module dimension must be positive".into()));
        }
        for (name, t) in [("action", &action), ("gram", &gram)] {
            if t.ncoords() != algebra.dim() {
                return Err(Error::Shape(format!(
                    "{name} tensor has {} coordinates, algebra has {}",
                    t.ncoords(),
                    algebra.dim()
                )));
            }
            if t.entries.iter().any(|&(i, j, _)| i >= cdim || j >= cdim) {
                return Err(Error::Shape(format!("{name} tensor index out of range")));
            }
        }
        Ok(HModule { algebra, cdim, action, gram })
    }

    /// Dense constructor: one `m x m` matrix per algebra coordinate for each tensor.
    pub fn from_dense(algebra: BlockAlgebra, cdim: usize, action: &[CMat], gram: &[CMat]) -> Result<Self> {
        for m in action.iter().chain(gram) {
            if m.shape() != (cdim, cdim) {
                return Err(Error::Shape(format!("tensor slice has shape {:?}", m.shape())));
            }
        }
        if action.len() != algebra.dim() || gram.len() != algebra.dim() {
            return Err(Error::Shape("one slice per algebra coordinate required".into()));
        }
        Self::from_tensors(algebra, cdim, CoordTensor::from_dense(action), CoordTensor::from_dense(gram))
    }

    /// The right ideal `eA` where `e` is the diagonal projection with `ranks[b]`
    /// leading ones in block `b`; inner product `⟨x, y⟩ = x* y`.
    ///
    /// Basis vectors are the matrix units `e^b_{ij}` with `i < ranks[b]`, block by
    /// block, row-major. `ranks = blocks` gives `A` over itself.
    pub fn right_ideal(algebra: &BlockAlgebra, ranks: &[usize]) -> Result<Self> {
        if ranks.len() != algebra.num_blocks() {
            return Err(Error::Shape("one rank per block required".into()));
        }
        let mut basis_offset = Vec::new();
        let mut m = 0;
        for (b, (&r, &d)) in ranks.iter().zip(algebra.blocks()).enumerate() {
            if r > d {
                return Err(Error::Validation(format!("rank {r} exceeds block {b} dimension {d}")));
            }
            basis_offset.push(m);
            m += r * d;
        }
        if m == 0 {
            return Err(Error::Validation("zero module".into()));
        }
        let idx = |b: usize, i: usize, j: usize| basis_offset[b] + i * algebra.blocks()[b] + j;
        let mut action = Vec::new();
        let mut gram = Vec::new();
        for (b, (&r, &d)) in ranks.iter().zip(algebra.blocks()).enumerate() {
            for p in 0..d {
                for q in 0..d {
                    let k = algebra.coord(UnitIndex { block: b, row: p, col: q });
                    for i in 0..r {
                        // e_{ip} · e_{pq} = e_{iq}
                        action.push((k, idx(b, i, q), idx(b, i, p), ONE));
                        // ⟨e_{ip}, e_{iq}⟩ = e_{pi} e_{iq} = e_{pq}
                        gram.push((k, idx(b, i, p), idx(b, i, q), ONE));
                    }
                }
            }
        }
        let n = algebra.dim();
        Self::from_tensors(
            algebra.clone(),
            m,
            CoordTensor::from_entries(n, action),
            CoordTensor::from_entries(n, gram),
        )
    }

    /// `X ⊕ Y` over a common algebra, coordinates of `X` first.
    pub fn direct_sum(x: &HModule, y: &HModule) -> Result<Self> {
        if !x.algebra.same_shape(&y.algebra) {
            return Err(Error::Shape("direct sum needs a common algebra".into()));
        }
        let n = x.algebra.dim();
        fn shift(t: &CoordTensor, off: usize) -> impl Iterator<Item = (usize, usize, usize, C64)> + '_ {
            t.iter().map(move |(k, i, j, v)| (k, i + off, j + off, v))
        }
        let action = shift(&x.action, 0).chain(shift(&y.action, x.cdim)).collect();
        let gram = shift(&x.gram, 0).chain(shift(&y.gram, x.cdim)).collect();
        Self::from_tensors(
            x.algebra.clone(),
            x.cdim + y.cdim,
            CoordTensor::from_entries(n, action),
            CoordTensor::from_entries(n, gram),
        )
    }

    /// `A` as a module over itself with `⟨a, b⟩ = a* b`.
    pub fn canonical(algebra: &BlockAlgebra) -> Self {
        Self::right_ideal(algebra, algebra.blocks()).expect("full ranks are valid")
    }

    /// The same module in the basis `e'_i = s_i e_i`; coordinates change by
    /// `x' = S⁻¹x`. Keeps the tensors sparse while making the basis non-orthonormal.
    pub fn rescale_basis(&self, s: &[C64]) -> Result<Self> {
        if s.len() != self.cdim || s.contains(&ZERO) {
            return Err(Error::Shape("one nonzero scale per basis vector required".into()));
        }
        let n = self.algebra.dim();
        let action = self.action.iter().map(|(k, i, j, v)| (k, i, j, v * s[j] / s[i])).collect();
        let gram = self.gram.iter().map(|(k, i, j, v)| (k, i, j, s[i].conj() * v * s[j])).collect();
        Self::from_tensors(
            self.algebra.clone(),
            self.cdim,
            CoordTensor::from_entries(n, action),
            CoordTensor::from_entries(n, gram),
        )
    }

    /// `C^n` over `C` with the standard inner product.
    pub fn hilbert_space(n: usize) -> Result<Self> {
        let id = CMat::identity(n, n);
        Self::from_dense(BlockAlgebra::scalars(), n, std::slice::from_ref(&id), std::slice::from_ref(&id))
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn cdim(&self) -> usize {
        self.cdim
    }

    pub fn action_tensor(&self) -> &CoordTensor {
        &self.action
    }

    pub fn gram_tensor(&self) -> &CoordTensor {
        &self.gram
    }

    pub fn basis_vector(&self, i: usize) -> CVec {
        let mut v = CVec::zeros(self.cdim);
        v[i] = ONE;
        v
    }

    fn check_vec(&self, x: &CVec) -> Result<()> {
        if x.len() == self.cdim {
            Ok(())
        } else {
            Err(Error::Shape(format!("vector of length {} in a module of dimension {}", x.len(), self.cdim)))
        }
    }

    /// `x · a`.
    pub fn act(&self, x: &CVec, a: &AlgElement) -> Result<CVec> {
        self.check_vec(x)?;
        if !a.algebra().same_shape(&self.algebra) {
            return Err(Error::Shape("algebra element from a different algebra".into()));
        }
        let coeffs = a.coords();
        let mut y = CVec::zeros(self.cdim);
        for (k, c) in coeffs.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            for &(i, j, v) in self.action.slice(k) {
                y[i] += c * v * x[j];
            }
        }
        Ok(y)
    }

    /// `⟨x, y⟩ ∈ A`.
    pub fn inner(&self, x: &CVec, y: &CVec) -> Result<AlgElement> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        let mut coords = vec![ZERO; self.algebra.dim()];
        for (k, c) in coords.iter_mut().enumerate() {
            for &(i, j, v) in self.gram.slice(k) {
                *c += x[i].conj() * v * y[j];
            }
        }
        AlgElement::from_coords(&self.algebra, &coords)
    }

    /// The matrix `R_a` of `x ↦ x·a`.
    pub fn action_matrix(&self, a: &AlgElement) -> CMat {
        let coeffs = a.coords();
        let mut out = CMat::zeros(self.cdim, self.cdim);
        for (k, c) in coeffs.iter().enumerate() {
            if *c == ZERO {
                continue;
            }
            for &(i, j, v) in self.action.slice(k) {
                out[(i, j)] += c * v;
            }
        }
        out
    }

    pub fn unit_action(&self, k: usize) -> CMat {
        self.action.dense(k, self.cdim)
    }

    pub fn unit_gram(&self, k: usize) -> CMat {
        self.gram.dense(k, self.cdim)
    }

    /// Scalar Gram matrix `τ(⟨e_i, e_j⟩)` for the trace `τ = Σ_b tr`, which is
    /// faithful, so this matrix is positive definite on a valid module.
    pub fn trace_gram(&self) -> CMat {
        let mut out = CMat::zeros(self.cdim, self.cdim);
        for u in self.algebra.units().into_iter().filter(|u| u.row == u.col) {
            for &(i, j, v) in self.gram.slice(self.algebra.coord(u)) {
                out[(i, j)] += v;
            }
        }
        out
    }

    /// Dense `⟨e_i, e_j⟩` coordinates, indexed `[i * m + j][k]`.
    pub fn basis_gram(&self) -> Vec<Vec<C64>> {
        let m = self.cdim;
        let mut out = vec![vec![ZERO; self.algebra.dim()]; m * m];
        for (k, i, j, v) in self.gram.iter() {
            out[i * m + j][k] += v;
        }
        out
    }

    /// For each block `b`, the number of copies of the block's row space in the
    /// module: `rank(R_{e^b_00})`. The compact operators are `⊕_b M_{n_b}`.
    pub fn block_multiplicities(&self) -> Vec<usize> {
        (0..self.algebra.num_blocks())
            .map(|b| {
                let k = self.algebra.coord(UnitIndex { block: b, row: 0, col: 0 });
                linalg::rank(&self.unit_action(k), 1e-9)
            })
            .collect()
    }
}

/// `‖x‖ = ‖⟨x, x⟩‖^{1/2}`.
pub fn module_norm(x_mod: &HModule, x: &CVec) -> Result<f64> {
    Ok(x_mod.inner(x, x)?.op_norm().sqrt())
}

/// Exterior tensor product `X ⊗ Y` over `A ⊗ B`.
pub fn exterior_tensor(x: &HModule, y: &HModule) -> HModule {
    let a = &x.algebra;
    let b = &y.algebra;
    let layout = crate::cstar::TensorLayout::new(vec![a.clone(), b.clone()]);
    let prod = layout.product().clone();
    let ua = a.units();
    let ub = b.units();
    let m2 = y.cdim;
    let combine = |tx: &CoordTensor, ty: &CoordTensor| {
        let mut raw = Vec::with_capacity(tx.nnz() * ty.nnz());
        for (ka, &unit_a) in ua.iter().enumerate() {
            let sa = tx.slice(ka);
            if sa.is_empty() {
                continue;
            }
            for (kb, &unit_b) in ub.iter().enumerate() {
                let sb = ty.slice(kb);
                if sb.is_empty() {
                    continue;
                }
                let k = prod.coord(layout.unit_of(&[unit_a, unit_b]));
                for &(i1, j1, v1) in sa {
                    for &(i2, j2, v2) in sb {
                        raw.push((k, i1 * m2 + i2, j1 * m2 + j2, v1 * v2));
                    }
                }
            }
        }
        CoordTensor::from_entries(prod.dim(), raw)
    };
    let action = combine(&x.action, &y.action);
    let gram = combine(&x.gram, &y.gram);
    HModule { algebra: prod, cdim: x.cdim * y.cdim, action, gram }
}

/// Below this many dense gram entries the axioms are checked on every basis pair;
/// above it, on seeded random vectors and algebra elements.
const BASIS_CHECK_BUDGET: usize = 400_000;

/// Checks the module axioms and reports each defect as a norm.
///
/// Reported entries: `right_action` ((x·a)·b = x·(ab)), `unit` (x·1 = x),
/// `linearity` (⟨x, y·a⟩ = ⟨x, y⟩a), `symmetry` (⟨x, y⟩* = ⟨y, x⟩), `positivity`
/// (negative part of the Gram matrix of each block) and `nondegenerate` (smallest
/// eigenvalue of the trace Gram matrix must exceed `tol`).
pub fn validate_module(x: &HModule, tol: f64) -> Result<VerificationReport> {
    let mut rep = ReportBuilder::new("validate_module", tol);
    let m = x.cdim;
    let alg = &x.algebra;
    rep.info("cdim", m).info("algebra_dim", alg.dim());

    // x·1 = x
    let unit_defect = linalg::max_abs(&(x.action_matrix(&alg.unit()) - CMat::identity(m, m)));
    rep.defect("unit", unit_defect);

    let units = alg.units();
    let generators: Vec<usize> = (0..units.len())
        .filter(|&k| units[k].row == 0 || units[k].col == 0)
        .collect();
    let r: Vec<CMat> = (0..units.len()).map(|k| x.unit_action(k)).collect();
    // (x·e_a)·e_g = x·(e_a e_g): R_g R_a = R_{a g}
    let mut act_defect: f64 = 0.0;
    for (a, ua) in units.iter().enumerate() {
        for &g in &generators {
            let ug = units[g];
            let lhs = &r[g] * &r[a];
            let d = if ua.block == ug.block && ua.col == ug.row {
                let ag = alg.coord(UnitIndex { block: ua.block, row: ua.row, col: ug.col });
                linalg::max_abs(&(lhs - &r[ag]))
            } else {
                linalg::max_abs(&lhs)
            };
            act_defect = act_defect.max(d);
        }
    }
    rep.defect("right_action", act_defect);

    let dense_size = m * m * alg.dim();
    if dense_size <= BASIS_CHECK_BUDGET {
        rep.info("mode", "basis");
        let bg = x.basis_gram();
        let elem = |i: usize, j: usize| AlgElement::from_coords(alg, &bg[i * m + j]).expect("length");
        let grams: Vec<Vec<AlgElement>> =
            (0..m).map(|i| (0..m).map(|j| elem(i, j)).collect()).collect();
        let mut sym: f64 = 0.0;
        for i in 0..m {
            for j in 0..m {
                sym = sym.max((&grams[i][j].adjoint() - &grams[j][i]).max_abs());
            }
        }
        rep.defect("symmetry", sym);
        // ⟨e_i, e_j·e_g⟩ = Σ_l R_g[l, j] ⟨e_i, e_l⟩ against ⟨e_i, e_j⟩ e_g
        let mut lin: f64 = 0.0;
        for &g in &generators {
            let eg = alg.matrix_unit(units[g]);
            for i in 0..m {
                for j in 0..m {
                    let mut lhs = alg.zero();
                    for l in 0..m {
                        let c = r[g][(l, j)];
                        if c != ZERO {
                            lhs = &lhs + &grams[i][l].scale(c);
                        }
                    }
                    let rhs = &grams[i][j] * &eg;
                    lin = lin.max((&lhs - &rhs).max_abs());
                }
            }
        }
        rep.defect("linearity", lin);
        // Positivity: for each block, the (m d) x (m d) matrix [⟨e_i,e_j⟩_b] is PSD.
        let mut neg: f64 = 0.0;
        for (b, &d) in alg.blocks().iter().enumerate() {
            let mut big = CMat::zeros(m * d, m * d);
            for i in 0..m {
                for j in 0..m {
                    let blk = grams[i][j].block(b);
                    for p in 0..d {
                        for q in 0..d {
                            big[(i * d + p, j * d + q)] = blk[(p, q)];
                        }
                    }
                }
            }
            let (vals, _) = linalg::hermitian_eigen(&big);
            neg = neg.max(-vals.first().copied().unwrap_or(0.0));
        }
        rep.defect("positivity", neg.max(0.0));
    } else {
        rep.info("mode", "sampled");
        let mut rng = ChaCha8Rng::seed_from_u64(0x6d6f64);
        let mut sym: f64 = 0.0;
        let mut lin: f64 = 0.0;
        let mut neg: f64 = 0.0;
        for _ in 0..8 {
            let xv = linalg::random_complex(&mut rng, m, 1).column(0).into_owned();
            let yv = linalg::random_complex(&mut rng, m, 1).column(0).into_owned();
            let a = AlgElement::new(
                alg,
                alg.blocks().iter().map(|&d| linalg::random_complex(&mut rng, d, d)).collect(),
            )?;
            let xy = x.inner(&xv, &yv)?;
            let yx = x.inner(&yv, &xv)?;
            sym = sym.max((&xy.adjoint() - &yx).max_abs());
            let lhs = x.inner(&xv, &x.act(&yv, &a)?)?;
            lin = lin.max((&lhs - &(&xy * &a)).max_abs());
            neg = neg.max(-x.inner(&xv, &xv)?.min_eigenvalue());
        }
        rep.defect("symmetry", sym);
        rep.defect("linearity", lin);
        rep.defect("positivity", neg.max(0.0));
    }

    let (tv, _) = linalg::hermitian_eigen(&x.trace_gram());
    let smallest = tv.first().copied().unwrap_or(0.0);
    rep.info("trace_gram_min_eigenvalue", smallest);
    rep.defect_within("nondegenerate", if smallest > tol { 0.0 } else { tol - smallest }, 0.0);
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::real;

    #[test]
    fn canonical_module_is_valid() {
        let a = BlockAlgebra::new(&[1, 2]).unwrap();
        let x = HModule::canonical(&a);
        assert_eq!(x.cdim(), 5);
        let r = validate_module(&x, 1e-12).unwrap();
        assert!(r.pass, "{:?}", r.failures());
        assert!(r.max_defect() < 1e-14);
    }

    #[test]
    fn hilbert_space_is_valid() {
        let x = HModule::hilbert_space(2).unwrap();
        assert!(validate_module(&x, 1e-12).unwrap().pass);
    }

    #[test]
    fn injected_negative_eigenvalue_is_reported() {
        // Perturb the standard gram of C^2 over C to diag(1, -0.25).
        let g = CMat::from_row_slice(2, 2, &[ONE, ZERO, ZERO, real(-0.25)]);
        let x = HModule::from_dense(BlockAlgebra::scalars(), 2, &[CMat::identity(2, 2)], &[g]).unwrap();
        let r = validate_module(&x, 1e-9).unwrap();
        assert!(!r.pass);
        assert!((r.defect("positivity").unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn shape_errors_are_distinct() {
        let bad = HModule::from_dense(
            BlockAlgebra::scalars(),
            2,
            &[CMat::identity(3, 3)],
            &[CMat::identity(2, 2)],
        );
        assert!(matches!(bad, Err(Error::Shape(_))));
    }

    #[test]
    fn module_norm_examples() {
        let x = HModule::hilbert_space(2).unwrap();
        let v = CVec::from_vec(vec![real(3.0), real(4.0)]);
        assert!((module_norm(&x, &v).unwrap() - 5.0).abs() < 1e-12);
        assert_eq!(module_norm(&x, &CVec::zeros(2)).unwrap(), 0.0);
        // ⟨x, x⟩ = e11 in M2 over itself for x = e11.
        let a = BlockAlgebra::full(2).unwrap();
        let m = HModule::canonical(&a);
        let e11 = CVec::from_vec(vec![ONE, ZERO, ZERO, ZERO]);
        assert!((module_norm(&m, &e11).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exterior_tensor_with_scalars_is_identity() {
        let a = BlockAlgebra::new(&[1, 2]).unwrap();
        let x = HModule::canonical(&a);
        let c = HModule::hilbert_space(1).unwrap();
        let xc = exterior_tensor(&x, &c);
        assert_eq!(xc.cdim(), x.cdim());
        assert_eq!(xc.algebra().blocks(), a.blocks());
        assert_eq!(xc.action_tensor(), x.action_tensor());
        assert_eq!(xc.gram_tensor(), x.gram_tensor());
    }

    #[test]
    fn exterior_tensor_gram_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a = BlockAlgebra::new(&[1, 2]).unwrap();
        let b = BlockAlgebra::new(&[2]).unwrap();
        let x = HModule::right_ideal(&a, &[1, 1]).unwrap();
        let y = HModule::canonical(&b);
        let xy = exterior_tensor(&x, &y);
        assert_eq!(xy.cdim(), x.cdim() * y.cdim());
        assert!(validate_module(&xy, 1e-10).unwrap().pass);
        for _ in 0..5 {
            let mut r = |n| linalg::random_complex(&mut rng, n, 1).column(0).into_owned();
            let (x1, x2, y1, y2) = (r(x.cdim()), r(x.cdim()), r(y.cdim()), r(y.cdim()));
            let lhs = xy.inner(&x1.kronecker(&y1), &x2.kronecker(&y2)).unwrap();
            // Oracle: Kronecker of the factor inner products, block by block.
            let gx = x.inner(&x1, &x2).unwrap();
            let gy = y.inner(&y1, &y2).unwrap();
            let rhs = crate::cstar::tensor_elements(&gx, &gy);
            assert!((&lhs - &rhs).max_abs() < 1e-9);
        }
    }

    #[test]
    fn block_multiplicities_of_right_ideal() {
        let a = BlockAlgebra::new(&[2, 3]).unwrap();
        let x = HModule::right_ideal(&a, &[1, 2]).unwrap();
        assert_eq!(x.block_multiplicities(), vec![1, 2]);
        assert_eq!(x.cdim(), 1 * 2 + 2 * 3);
    }
}
