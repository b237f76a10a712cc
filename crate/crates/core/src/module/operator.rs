//! Adjointable and compact operators on a Hilbert module.

use crate::cstar::DEFAULT_TOL;
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, CVec};
use crate::module::HModule;

/// The scalar geometry of a module under the faithful trace `τ = Σ_b tr`.
///
/// `X` with `(x, y) = τ⟨x, y⟩` is the Hilbert space `X ⊗_A L²(A, τ)`, on which
/// `End*_A(X)` acts faithfully. Operator norms and adjoints are computed there.
#[derive(Clone, Debug)]
pub struct TraceGeometry {
    pub gram: CMat,
    pub sqrt: CMat,
    pub inv_sqrt: CMat,
    pub inverse: CMat,
}

impl TraceGeometry {
    pub fn of(x: &HModule) -> Self {
        let gram = x.trace_gram();
        let (sqrt, inv_sqrt) = linalg::psd_sqrt_pair(&gram);
        let inverse = &inv_sqrt * &inv_sqrt;
        TraceGeometry { gram, sqrt, inv_sqrt, inverse }
    }

    /// `M⁻¹ Tᴴ M`.
    pub fn adjoint_of(&self, t: &CMat) -> CMat {
        &self.inverse * t.adjoint() * &self.gram
    }

    /// Norm of `T` in `End*_A(X)`.
    pub fn norm_of(&self, t: &CMat) -> f64 {
        linalg::spectral_norm(&(&self.sqrt * t * &self.inv_sqrt))
    }
}

/// An adjointable operator with its adjoint attached.
#[derive(Clone, Debug, PartialEq)]
pub struct ModOperator {
    matrix: CMat,
    adjoint: CMat,
}

impl ModOperator {
    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn adjoint_matrix(&self) -> &CMat {
        &self.adjoint
    }

    pub fn star(&self) -> ModOperator {
        ModOperator { matrix: self.adjoint.clone(), adjoint: self.matrix.clone() }
    }

    pub fn compose(&self, other: &ModOperator) -> ModOperator {
        ModOperator {
            matrix: &self.matrix * &other.matrix,
            adjoint: &other.adjoint * &self.adjoint,
        }
    }

    pub fn apply(&self, x: &CVec) -> CVec {
        &self.matrix * x
    }

    /// `max ‖T² − T‖, ‖T* − T‖` entrywise.
    pub fn projection_defect(&self) -> f64 {
        let sq = &self.matrix * &self.matrix;
        linalg::max_abs(&(&sq - &self.matrix)).max(linalg::max_abs(&(&self.adjoint - &self.matrix)))
    }
}

/// Largest entry of `T R_k − R_k T` over the generating matrix units of `A`.
pub fn a_linearity_defect(x: &HModule, t: &CMat) -> f64 {
    let units = x.algebra().units();
    let mut d: f64 = 0.0;
    for (k, u) in units.iter().enumerate() {
        if u.row != 0 && u.col != 0 {
            continue;
        }
        let r = x.unit_action(k);
        d = d.max(linalg::max_abs(&(t * &r - &r * t)));
    }
    d
}

/// Largest entry of `⟨Tx, y⟩ − ⟨x, Sy⟩` on basis vectors, over all coordinates of `A`.
pub fn adjoint_defect(x: &HModule, t: &CMat, s: &CMat) -> f64 {
    let th = t.adjoint();
    (0..x.algebra().dim())
        .map(|k| {
            let g = x.unit_gram(k);
            linalg::max_abs(&(&th * &g - &g * s))
        })
        .fold(0.0, f64::max)
}

/// Attaches the gram-adjoint to `T`, or fails if `T` is not `A`-linear.
pub fn adjoint(x: &HModule, t: &CMat) -> Result<ModOperator> {
    adjoint_with(x, &TraceGeometry::of(x), t, DEFAULT_TOL)
}

pub fn adjoint_with(x: &HModule, geom: &TraceGeometry, t: &CMat, tol: f64) -> Result<ModOperator> {
    let m = x.cdim();
    if t.shape() != (m, m) {
        return Err(Error::Shape(format!("operator of shape {:?} on a module of dimension {m}", t.shape())));
    }
    let scale = linalg::max_abs(t).max(1.0);
    let lin = a_linearity_defect(x, t);
    if lin > tol * scale {
        return Err(Error::NotAdjointable { defect: lin });
    }
    let s = geom.adjoint_of(t);
    let d = adjoint_defect(x, t, &s);
    if d > tol * scale {
        return Err(Error::NotAdjointable { defect: d });
    }
    Ok(ModOperator { matrix: t.clone(), adjoint: s })
}

/// Matrix of `T_{ξ,η}: z ↦ ξ⟨η, z⟩`, that is `Σ_k (R_k ξ)(ηᴴ G_k)`.
pub fn rank_one_matrix(x: &HModule, xi: &CVec, eta: &CVec) -> CMat {
    let m = x.cdim();
    let mut out = CMat::zeros(m, m);
    let act = x.action_tensor();
    let gram = x.gram_tensor();
    for k in 0..x.algebra().dim() {
        let gs = gram.slice(k);
        let rs = act.slice(k);
        if gs.is_empty() || rs.is_empty() {
            continue;
        }
        let mut col = CVec::zeros(m);
        for &(i, j, v) in rs {
            col[i] += v * xi[j];
        }
        let mut row = CVec::zeros(m);
        for &(i, j, v) in gs {
            row[j] += eta[i].conj() * v;
        }
        out += &col * row.transpose();
    }
    out
}

pub fn rank_one(x: &HModule, xi: &CVec, eta: &CVec) -> Result<ModOperator> {
    let m = x.cdim();
    if xi.len() != m || eta.len() != m {
        return Err(Error::Validation("vectors do not belong to this module".into()));
    }
    Ok(ModOperator {
        matrix: rank_one_matrix(x, xi, eta),
        adjoint: rank_one_matrix(x, eta, xi),
    })
}

/// `Σ_{ij} c_ij T_{e_i, e_j} = Σ_k R_k C G_k`: the general element of the compact span.
pub fn compact_from_coefficients(x: &HModule, c: &CMat) -> CMat {
    let m = x.cdim();
    let mut out = CMat::zeros(m, m);
    let act = x.action_tensor();
    let gram = x.gram_tensor();
    for k in 0..x.algebra().dim() {
        let gs = gram.slice(k);
        for &(i, j, r) in act.slice(k) {
            for &(a, b, g) in gs {
                out[(i, b)] += r * c[(j, a)] * g;
            }
        }
    }
    out
}

/// `T_{e_i, e_j}` for every basis pair, row-major in `(i, j)`.
pub fn compact_basis(x: &HModule) -> Vec<ModOperator> {
    let m = x.cdim();
    let mut out = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            out.push(rank_one(x, &x.basis_vector(i), &x.basis_vector(j)).expect("basis vectors"));
        }
    }
    out
}

/// Dimension of the linear span of a list of matrices.
pub fn span_dimension(mats: &[CMat]) -> usize {
    if mats.is_empty() {
        return 0;
    }
    let n = mats[0].len();
    let mut stacked = CMat::zeros(n, mats.len());
    for (c, m) in mats.iter().enumerate() {
        stacked.set_column(c, &CVec::from_column_slice(m.as_slice()));
    }
    linalg::rank(&stacked, 1e-9)
}

/// `dim 𝕂_A(X) = Σ_b n_b²` from the block multiplicities.
pub fn compact_dimension(x: &HModule) -> usize {
    x.block_multiplicities().iter().map(|n| n * n).sum()
}

/// Norm of `T` in `End*_A(X)`.
pub fn operator_norm(x: &HModule, t: &CMat) -> f64 {
    TraceGeometry::of(x).norm_of(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstar::{AlgElement, BlockAlgebra};
    use crate::linalg::{random_complex, ONE, ZERO};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rvec(rng: &mut ChaCha8Rng, n: usize) -> CVec {
        random_complex(rng, n, 1).column(0).into_owned()
    }

    fn mixed_module() -> HModule {
        HModule::right_ideal(&BlockAlgebra::new(&[1, 2]).unwrap(), &[1, 1]).unwrap()
    }

    #[test]
    fn rank_one_of_zero_is_zero() {
        let x = mixed_module();
        let t = rank_one(&x, &CVec::zeros(x.cdim()), &x.basis_vector(0)).unwrap();
        assert_eq!(linalg::max_abs(t.matrix()), 0.0);
    }

    #[test]
    fn rank_one_adjoint_is_swapped() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = mixed_module();
        let geom = TraceGeometry::of(&x);
        for _ in 0..10 {
            let (xi, eta) = (rvec(&mut rng, x.cdim()), rvec(&mut rng, x.cdim()));
            let t = rank_one(&x, &xi, &eta).unwrap();
            // Oracle: the gram-solved adjoint.
            let solved = geom.adjoint_of(t.matrix());
            assert!(linalg::max_abs(&(solved - t.adjoint_matrix())) < 1e-12);
            assert!(adjoint_defect(&x, t.matrix(), t.adjoint_matrix()) < 1e-12);
            // T_{ξ,η} z = ξ⟨η,z⟩ directly.
            let z = rvec(&mut rng, x.cdim());
            let direct = x.act(&xi, &x.inner(&eta, &z).unwrap()).unwrap();
            assert!((t.apply(&z) - direct).iter().all(|e| e.norm() < 1e-12));
        }
    }

    #[test]
    fn rank_one_of_unit_vector_is_projection() {
        let a = BlockAlgebra::full(2).unwrap();
        let x = HModule::canonical(&a);
        // x = e11 has ⟨x, x⟩ = e11, a projection.
        let e11 = x.basis_vector(0);
        let t = rank_one(&x, &e11, &e11).unwrap();
        assert!(t.projection_defect() < 1e-14);
    }

    #[test]
    fn identity_adjoint_and_rank_one_roundtrip() {
        let x = mixed_module();
        let id = adjoint(&x, &CMat::identity(x.cdim(), x.cdim())).unwrap();
        assert!(linalg::max_abs(&(id.adjoint_matrix() - CMat::identity(x.cdim(), x.cdim()))) < 1e-12);
        let t = rank_one(&x, &x.basis_vector(1), &x.basis_vector(2)).unwrap();
        let again = adjoint(&x, t.matrix()).unwrap();
        assert!(linalg::max_abs(&(again.adjoint_matrix() - t.adjoint_matrix())) < 1e-12);
    }

    #[test]
    fn right_action_breaking_map_is_rejected() {
        // A ⊕ A over A = M2: keep the first copy, transpose coordinates of the second.
        let a = BlockAlgebra::full(2).unwrap();
        let x = HModule::direct_sum(&HModule::canonical(&a), &HModule::canonical(&a)).unwrap();
        let mut t = CMat::zeros(8, 8);
        for i in 0..4 {
            t[(i, i)] = ONE;
        }
        for (src, dst) in [(4, 4), (5, 6), (6, 5), (7, 7)] {
            t[(dst, src)] = ONE;
        }
        assert!(matches!(adjoint(&x, &t), Err(Error::NotAdjointable { .. })));
        // The coordinate swap of the two summands is A-linear.
        let mut swap = CMat::zeros(8, 8);
        for i in 0..4 {
            swap[(i, i + 4)] = ONE;
            swap[(i + 4, i)] = ONE;
        }
        assert!(adjoint(&x, &swap).is_ok());
    }

    #[test]
    fn compact_span_dimensions() {
        let cn = HModule::hilbert_space(3).unwrap();
        let mats: Vec<CMat> = compact_basis(&cn).into_iter().map(|t| t.matrix().clone()).collect();
        assert_eq!(span_dimension(&mats), 9);
        let m2 = HModule::canonical(&BlockAlgebra::full(2).unwrap());
        let mats: Vec<CMat> = compact_basis(&m2).into_iter().map(|t| t.matrix().clone()).collect();
        assert_eq!(span_dimension(&mats), 4);
        assert_eq!(compact_dimension(&m2), 4);
    }

    #[test]
    fn compact_span_is_star_algebra() {
        let x = mixed_module();
        let basis: Vec<CMat> = compact_basis(&x).into_iter().map(|t| t.matrix().clone()).collect();
        let dim = span_dimension(&basis);
        assert_eq!(dim, compact_dimension(&x));
        let ortho = {
            let n = basis[0].len();
            let mut s = CMat::zeros(n, basis.len());
            for (c, m) in basis.iter().enumerate() {
                s.set_column(c, &CVec::from_column_slice(m.as_slice()));
            }
            linalg::range_basis(&s, 1e-9)
        };
        let residual = |m: &CMat| {
            let v = CVec::from_column_slice(m.as_slice());
            (&v - &ortho * (ortho.adjoint() * &v)).iter().fold(0.0f64, |a, e| a.max(e.norm()))
        };
        let geom = TraceGeometry::of(&x);
        for a in &basis {
            assert!(residual(&geom.adjoint_of(a)) < 1e-9);
            for b in basis.iter().step_by(3) {
                assert!(residual(&(a * b)) < 1e-9);
            }
        }
    }

    #[test]
    fn bilinearity_of_rank_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let alg = BlockAlgebra::new(&[1, 2]).unwrap();
        let x = HModule::canonical(&alg);
        for _ in 0..5 {
            let (xi, eta) = (rvec(&mut rng, x.cdim()), rvec(&mut rng, x.cdim()));
            let a = AlgElement::new(&alg, alg.blocks().iter().map(|&d| random_complex(&mut rng, d, d)).collect())
                .unwrap();
            let lhs = rank_one_matrix(&x, &x.act(&xi, &a).unwrap(), &eta);
            let rhs = rank_one_matrix(&x, &xi, &x.act(&eta, &a.adjoint()).unwrap());
            assert!(linalg::max_abs(&(lhs - rhs)) < 1e-9);
        }
    }

    #[test]
    fn operator_norm_of_scalar_and_rank_one() {
        let x = mixed_module();
        let m = x.cdim();
        let two = CMat::identity(m, m) * crate::linalg::real(2.0);
        assert!((operator_norm(&x, &two) - 2.0).abs() < 1e-12);
        // ‖T_{ξ,ξ}‖ = ‖⟨ξ,ξ⟩‖ = ‖ξ‖².
        let xi = CVec::from_fn(m, |i, _| if i == 1 { crate::linalg::real(3.0) } else { ZERO });
        let t = rank_one_matrix(&x, &xi, &xi);
        let expect = x.inner(&xi, &xi).unwrap().op_norm();
        assert!((operator_norm(&x, &t) - expect).abs() < 1e-9);
    }

    #[test]
    fn random_compact_matches_rank_one_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = mixed_module();
        let m = x.cdim();
        let c = random_complex(&mut rng, m, m);
        let mut direct = CMat::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                direct += rank_one_matrix(&x, &x.basis_vector(i), &x.basis_vector(j)) * c[(i, j)];
            }
        }
        assert!(linalg::max_abs(&(direct - compact_from_coefficients(&x, &c))) < 1e-12);
    }
}
