//! Level operators and representations, factorization of level irreps, and the
//! canonical identification of induced representations.

use rand::Rng;
use rayon::prelude::*;

use crate::cstar::{block_irrep, rank_at_most_one, split_radix, StarHom, UnitIndex};
use crate::error::{Error, Result};
use crate::limit::checks::left_action_level;
use crate::limit::family::{AlgebraFamily, CorrFamily, Level, ModuleFamily};
use crate::limit::level::{level_layout, level_module};
use crate::linalg::{self, CMat, CVec};
use crate::module::{
    a_linearity_defect, commutant_dimension, interior_tensor_from_units, module_norm, rep_multiplicities,
    InteriorTensor, TraceGeometry,
};
use crate::report::{ReportBuilder, VerificationReport};

/// A representation `π_v` of `A_v` on `H_v = ℂ^d` with an optional unit vector `h_v`.
///
/// `h_v` is only needed where `(H_v, h_v)` enters a restricted product, that is
/// off the exceptional set.
#[derive(Clone, Debug)]
pub struct LocalRep {
    pub pi: StarHom,
    pub h: Option<CVec>,
}

impl LocalRep {
    pub fn new(pi: StarHom, h: Option<CVec>) -> Self {
        LocalRep { pi, h }
    }

    pub fn dim(&self) -> usize {
        self.pi.rep_dim()
    }

    pub fn units(&self) -> Vec<CMat> {
        (0..self.pi.domain().dim()).map(|k| self.pi.unit_matrix(k)).collect()
    }
}

/// `(‖π_v(p_v)h_v − h_v‖, |‖h_v‖ − 1|)`, when `h_v` is given.
pub fn local_rep_defects(f: &AlgebraFamily, v: usize, r: &LocalRep) -> Option<(f64, f64)> {
    let h = r.h.as_ref()?;
    let ph = r.pi.apply(f.projection(v)).ok()?.block(0) * h;
    Some(((ph - h).norm(), (h.norm() - 1.0).abs()))
}

fn check_reps(f: &AlgebraFamily, reps: &[LocalRep], s: &Level, tol: f64) -> Result<()> {
    if reps.len() != s.len() {
        return Err(Error::Shape(format!("{} local representations for a level of size {}", reps.len(), s.len())));
    }
    for (&v, r) in s.indices().iter().zip(reps) {
        if !r.pi.domain().same_shape(f.algebra(v)) || r.pi.codomain().num_blocks() != 1 {
            return Err(Error::Shape(format!("π_{v} is not a representation of A_{v}")));
        }
        if r.h.as_ref().is_some_and(|h| h.len() != r.dim()) {
            return Err(Error::Shape(format!("h_{v} has the wrong length")));
        }
    }
    let bad: Vec<usize> = s
        .indices()
        .iter()
        .zip(reps)
        .filter(|(&v, r)| {
            !f.is_exceptional(v)
                && local_rep_defects(f, v, r).is_some_and(|(fix, norm)| !(fix <= tol && norm <= tol))
        })
        .map(|(&v, _)| v)
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::Precondition { indices: bad, message: "π_v(p_v)h_v = h_v with ‖h_v‖ = 1 fails".into() })
    }
}

/// `π_S(⊗a_v) = ⊗π_v(a_v)` on `⊗_{v ∈ S} H_v`, as a validated [`StarHom`].
///
/// `reps` is aligned with the indices of `S`.
pub fn level_representation(f: &AlgebraFamily, reps: &[LocalRep], s: &Level, tol: f64) -> Result<StarHom> {
    check_reps(f, reps, s, tol)?;
    let layout = level_layout(f, s);
    let local: Vec<Vec<CMat>> = reps.iter().map(LocalRep::units).collect();
    let images: Vec<CMat> = layout
        .product()
        .units()
        .into_par_iter()
        .map(|u| {
            let parts = layout.split_unit(u);
            let mats = parts.iter().enumerate().map(|(i, &p)| &local[i][layout.factors()[i].coord(p)]);
            linalg::kron_many(mats)
        })
        .collect();
    let pi = StarHom::from_matrices(layout.product(), images)?;
    let d = pi.defects().max();
    if d > tol {
        return Err(Error::Validation(format!("level representation is not a *-homomorphism (defect {d:.3e})")));
    }
    Ok(pi)
}

/// `⊗_{v ∈ S} B_v` on `X_S` with its norm in `End*(X_S)`.
#[derive(Clone, Debug)]
pub struct LevelOperator {
    pub matrix: CMat,
    pub norm: f64,
    /// `‖B_v‖` for `v ∈ S`, in the order of `S`.
    pub local_norms: Vec<f64>,
}

/// Tensor product of adjointable `B_v` over `S`. `ops` has one operator per index
/// of the family; off `S` it must fix `x_v` and be a contraction, which is what
/// makes `⊗_v B_v` meaningful on the restricted product.
///
/// A family of Hilbert spaces with unit vectors is the special case `A_v = ℂ`.
pub fn level_operator(f: &ModuleFamily, ops: &[CMat], s: &Level, tol: f64) -> Result<LevelOperator> {
    if ops.len() != f.len() {
        return Err(Error::Shape("one operator per index required".into()));
    }
    let mut norms = Vec::with_capacity(f.len());
    for (v, b) in ops.iter().enumerate() {
        let x = f.module(v);
        if b.shape() != (x.cdim(), x.cdim()) {
            return Err(Error::Shape(format!("B_{v} has shape {:?}", b.shape())));
        }
        let lin = a_linearity_defect(x, b);
        if lin > tol * linalg::max_abs(b).max(1.0) {
            return Err(Error::NotAdjointable { defect: lin });
        }
        norms.push(TraceGeometry::of(x).norm_of(b));
    }
    let bad: Vec<usize> = (0..f.len())
        .filter(|&v| !s.contains(v))
        .filter(|&v| {
            let x = f.vector(v);
            let moved = module_norm(f.module(v), &(&ops[v] * x - x)).expect("shape");
            !(moved <= tol && norms[v] <= 1.0 + tol)
        })
        .collect();
    if !bad.is_empty() {
        return Err(Error::Precondition { indices: bad, message: "B_v must fix x_v and be contractive off S".into() });
    }
    let matrix = linalg::kron_many(s.indices().iter().map(|&v| &ops[v]));
    let norm = TraceGeometry::of(&level_module(f, s)).norm_of(&matrix);
    let local_norms = s.indices().iter().map(|&v| norms[v]).collect();
    Ok(LevelOperator { matrix, norm, local_norms })
}

/// An irreducible level representation written as a tensor product of block irreps.
#[derive(Clone, Debug)]
pub struct Factorization {
    /// Block of `A_S` carrying the representation.
    pub block: usize,
    /// The same block as one block index per `v ∈ S`.
    pub tuple: Vec<usize>,
    pub factors: Vec<StarHom>,
    /// `rank_at_most_one(p_v)` for each `v ∉ E`, the hypothesis of the factorization theorem.
    pub rank_at_most_one: Vec<(usize, bool)>,
    /// Unitary `U` with `U ρ(a) = (⊗π_v)(a) U`.
    pub intertwiner: CMat,
    pub intertwining_defect: f64,
    pub unitarity_defect: f64,
}

/// Splits an irreducible representation `ρ` of `A_S` into block irreps of the
/// factors and builds the unitary equivalence with their tensor product.
pub fn factorize_irrep(f: &AlgebraFamily, s: &Level, rho: &StarHom, tol: f64) -> Result<Factorization> {
    let layout = level_layout(f, s);
    let a = layout.product();
    if !rho.domain().same_shape(a) || rho.codomain().num_blocks() != 1 {
        return Err(Error::Shape("ρ is not a representation of A_S".into()));
    }
    let d = rho.defects().max();
    if d > tol {
        return Err(Error::Validation(format!("ρ is not a *-homomorphism (defect {d:.3e})")));
    }
    let units: Vec<CMat> = (0..a.dim()).map(|k| rho.unit_matrix(k)).collect();
    let comm = commutant_dimension(a, &units);
    if comm != 1 {
        return Err(Error::Precondition {
            indices: s.indices().to_vec(),
            message: format!("ρ is not irreducible (commutant dimension {comm})"),
        });
    }
    let (mult, _) = rep_multiplicities(a, &units);
    let block = mult.iter().position(|&n| n == 1).expect("irreducible means one block");
    let tuple = layout.block_tuple(block);
    let factors: Vec<StarHom> = s.indices().iter().zip(&tuple).map(|(&v, &b)| block_irrep(f.algebra(v), b)).collect();
    let locals: Vec<LocalRep> = factors.iter().map(|pi| LocalRep::new(pi.clone(), None)).collect();
    let rebuilt = level_representation(f, &locals, s, tol)?;
    let target: Vec<CMat> = (0..a.dim()).map(|k| rebuilt.unit_matrix(k)).collect();

    // U = Σ_i σ(e_{i0}) v wᴴ ρ(e_{0i}) with w, v unit vectors spanning the ranges of e_00.
    let dim_b = a.blocks()[block];
    let unit = |r: usize, c: usize| a.coord(UnitIndex { block, row: r, col: c });
    let w = unit_range_vector(&units[unit(0, 0)]);
    let v = unit_range_vector(&target[unit(0, 0)]);
    let mut u = CMat::zeros(rebuilt.rep_dim(), rho.rep_dim());
    for i in 0..dim_b {
        u += &target[unit(i, 0)] * &v * w.adjoint() * &units[unit(0, i)];
    }
    let rank_one = f
        .regular()
        .into_iter()
        .map(|v| (v, rank_at_most_one(f.projection(v), f.algebra(v)).unwrap_or(false)))
        .collect();
    Ok(Factorization {
        block,
        tuple,
        factors,
        rank_at_most_one: rank_one,
        intertwining_defect: linalg::intertwining_defect(&u, &units, &target),
        unitarity_defect: linalg::unitarity_defect(&u),
        intertwiner: u,
    })
}

/// Normalized column of largest norm of a rank-one projection.
fn unit_range_vector(p: &CMat) -> CVec {
    let best = (0..p.ncols())
        .max_by(|&a, &b| p.column(a).norm().partial_cmp(&p.column(b).norm()).unwrap())
        .expect("nonempty");
    let col = p.column(best).clone_owned();
    let n = col.norm();
    col / linalg::real(n)
}

/// `(T ⊗ 1_d) M` without forming the Kronecker product.
fn left_kron_identity(t: &CMat, d: usize, m: &CMat) -> CMat {
    let n = t.nrows();
    let mut out = CMat::zeros(n * d, m.ncols());
    for c in 0..m.ncols() {
        let y = CMat::from_fn(t.ncols(), d, |i, a| m[(i * d + a, c)]);
        let z = t * y;
        for i in 0..n {
            for a in 0..d {
                out[(i * d + a, c)] = z[(i, a)];
            }
        }
    }
    out
}

/// `Q (T ⊗ 1) L` computed without the Kronecker product.
fn induced(t_int: &InteriorTensor, t: &CMat) -> CMat {
    &t_int.quotient * left_kron_identity(t, t_int.hdim, &t_int.lift)
}

/// `X_S ⊗_{A_S} H_S ≅ ⊗_{v ∈ S}(X_v ⊗_{A_v} H_v)` through
/// `(⊗w_v) ⊗ (⊗y_v) ↦ ⊗(w_v ⊗ y_v)`, as representations of `A'_S`.
///
/// Entries: `dimension`, `unitary`, `well_defined` (relations of the left side map
/// to zero), `simple_tensor` (the defining formula on random simple tensors),
/// `equivariant` (on the generators `1 ⊗ … ⊗ e_u ⊗ … ⊗ 1` of `A'_S`, with `e_u` a
/// generating unit or the unit of `A'_v`) and, for `v ∈ S ∖ E`,
/// `v{v}/distinguished_norm` (`‖x_v ⊗ h_v‖ = 1`).
pub fn induction_commutes_check<R: Rng + ?Sized>(
    f: &CorrFamily,
    reps: &[LocalRep],
    s: &Level,
    tol: f64,
    rng: &mut R,
) -> Result<VerificationReport> {
    let c_s = left_action_level(f, s, tol)?;
    let pi_s = level_representation(f.base(), reps, s, tol)?;
    let units_s: Vec<CMat> = (0..pi_s.domain().dim()).map(|k| pi_s.unit_matrix(k)).collect();
    let t_s = interior_tensor_from_units(&c_s.module, &units_s)?;
    let locals: Vec<InteriorTensor> = s
        .indices()
        .par_iter()
        .zip(reps)
        .map(|(&v, r)| interior_tensor_from_units(f.modules().module(v), &r.units()))
        .collect::<Result<_>>()?;
    let m_dims: Vec<usize> = s.indices().iter().map(|&v| f.modules().module(v).cdim()).collect();
    let d_dims: Vec<usize> = reps.iter().map(LocalRep::dim).collect();
    let d_s: usize = d_dims.iter().product();

    // (⊗Q_v) P with P the reordering (i_S, a_S) ↦ ((i_v, a_v))_v of raw indices.
    let q_tot = linalg::kron_many(locals.iter().map(|t| &t.quotient));
    let raw = t_s.cdim * t_s.hdim;
    let mut q_perm = CMat::zeros(q_tot.nrows(), raw);
    for r in 0..raw {
        let i = split_radix(&m_dims, r / d_s);
        let a = split_radix(&d_dims, r % d_s);
        let mut idx = 0;
        for p in 0..m_dims.len() {
            idx = idx * m_dims[p] * d_dims[p] + i[p] * d_dims[p] + a[p];
        }
        q_perm.set_column(r, &q_tot.column(idx));
    }
    let u = &q_perm * &t_s.lift;

    let mut rep = ReportBuilder::new("induction_commutes", tol);
    rep.require_eq("dimension", t_s.dim(), q_tot.nrows());
    rep.defect("unitary", linalg::unitarity_defect(&u));
    let null_proj = CMat::identity(raw, raw) - &t_s.lift * &t_s.quotient;
    rep.defect("well_defined", linalg::max_abs(&(&q_perm * null_proj)));

    let mut simple: f64 = 0.0;
    for _ in 0..4 {
        let ws: Vec<CVec> = m_dims.iter().map(|&m| random_unit(rng, m)).collect();
        let ys: Vec<CVec> = d_dims.iter().map(|&d| random_unit(rng, d)).collect();
        let w = ws.iter().fold(CVec::from_element(1, linalg::ONE), |acc, x| acc.kronecker(x));
        let y = ys.iter().fold(CVec::from_element(1, linalg::ONE), |acc, x| acc.kronecker(x));
        let lhs = &u * t_s.simple(&w, &y);
        let rhs = locals
            .iter()
            .zip(ws.iter().zip(&ys))
            .fold(CVec::from_element(1, linalg::ONE), |acc, (t, (w, y))| acc.kronecker(&t.simple(w, y)));
        simple = simple.max((lhs - rhs).norm());
    }
    rep.defect("simple_tensor", simple);

    // Local generators of A'_S and their images on both sides.
    let mut equiv: f64 = 0.0;
    for (p, &v) in s.indices().iter().enumerate() {
        let ap = f.primed().algebra(v);
        let alpha = f.action(v);
        let mut elems: Vec<CMat> = ap
            .units()
            .into_iter()
            .filter(|u| u.row == 0 || u.col == 0)
            .map(|u| alpha.unit_image(ap.coord(u)).clone())
            .collect();
        elems.push(alpha.apply(&ap.unit())?);
        for a_v in elems {
            let factors: Vec<CMat> = s
                .indices()
                .iter()
                .enumerate()
                .map(|(q, &w)| {
                    if q == p {
                        a_v.clone()
                    } else {
                        f.action(w).apply(&f.primed().algebra(w).unit()).expect("shape")
                    }
                })
                .collect();
            let big = linalg::kron_many(factors.iter());
            let left = induced(&t_s, &big);
            let right = linalg::kron_many(
                factors.iter().zip(&locals).map(|(a, t)| induced(t, a)).collect::<Vec<_>>().iter(),
            );
            equiv = equiv.max(linalg::max_abs(&(&u * left - right * &u)));
        }
    }
    rep.defect("equivariant", equiv);

    for ((&v, r), t) in s.indices().iter().zip(reps).zip(&locals) {
        if f.base().is_exceptional(v) {
            continue;
        }
        if let Some(h) = &r.h {
            let xh = t.simple(f.modules().vector(v), h);
            rep.defect(format!("v{v}/distinguished_norm"), (xh.norm() - 1.0).abs());
        }
    }
    rep.info("dim", t_s.dim()).info("S", s.indices().to_vec());
    Ok(rep.finish())
}

fn random_unit<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVec {
    let v = CVec::from_column_slice(linalg::random_complex(rng, n, 1).as_slice());
    let norm = v.norm();
    v / linalg::real(norm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstar::{irreps_of, BlockAlgebra};
    use crate::limit::random::{left_multiplication, random_algebra_family, random_coherent_family};
    use crate::module::HModule;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-9;

    fn conjugate(pi: &StarHom, u: &CMat) -> StarHom {
        let units = pi.domain().units().into_iter().map(|k| u * pi.unit_matrix(pi.domain().coord(k)) * u.adjoint());
        StarHom::from_matrices(pi.domain(), units.collect()).unwrap()
    }

    fn direct_sum(a: &StarHom, b: &StarHom) -> StarHom {
        let (m, n) = (a.rep_dim(), b.rep_dim());
        let units = (0..a.domain().dim())
            .map(|k| {
                let mut out = CMat::zeros(m + n, m + n);
                out.view_mut((0, 0), (m, m)).copy_from(&a.unit_matrix(k));
                out.view_mut((m, m), (n, n)).copy_from(&b.unit_matrix(k));
                out
            })
            .collect();
        StarHom::from_matrices(a.domain(), units).unwrap()
    }

    /// A level with `E` and one more index, small enough to enumerate.
    fn small_level(f: &AlgebraFamily, v: usize) -> Level {
        let mut idx: Vec<usize> = f.exceptional().iter().copied().chain([v]).collect();
        idx.sort_unstable();
        f.level(idx).unwrap()
    }

    #[test]
    fn every_level_irrep_factorizes() {
        for seed in 0..8 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_algebra_family(&mut rng, true);
            let s = small_level(&f, f.regular()[0]);
            let layout = level_layout(&f, &s);
            let a = layout.product().clone();
            for (b, pi) in irreps_of(&a).iter().enumerate() {
                let rho = conjugate(pi, &linalg::random_unitary(&mut rng, pi.rep_dim()));
                let fac = factorize_irrep(&f, &s, &rho, TOL).unwrap();
                assert_eq!(fac.block, b);
                assert_eq!(fac.tuple, layout.block_tuple(b));
                let dims: usize = fac.factors.iter().map(StarHom::rep_dim).product();
                assert_eq!(dims, a.blocks()[b]);
                assert!(fac.intertwining_defect < TOL, "seed {seed}: {}", fac.intertwining_defect);
                assert!(fac.unitarity_defect < TOL);
                assert!(fac.rank_at_most_one.iter().all(|&(_, r)| r));
            }
        }
    }

    #[test]
    fn reducible_representation_is_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_algebra_family(&mut rng, true);
        let s = small_level(&f, f.regular()[0]);
        let a = level_layout(&f, &s).product().clone();
        let pi = block_irrep(&a, 0);
        let rho = direct_sum(&pi, &pi);
        assert!(matches!(factorize_irrep(&f, &s, &rho, TOL), Err(Error::Precondition { .. })));
    }

    fn canonical_family(seed: u64) -> (ModuleFamily, ChaCha8Rng) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = random_algebra_family(&mut rng, false);
        let n = base.len();
        let modules = (0..n).map(|v| HModule::canonical(base.algebra(v))).collect();
        let vectors = (0..n).map(|v| CVec::from_vec(base.projection(v).coords())).collect();
        (ModuleFamily::new(base, modules, vectors).unwrap(), rng)
    }

    #[test]
    fn level_operator_norm_is_the_product_of_local_norms() {
        for seed in 0..6 {
            let (f, mut rng) = canonical_family(seed);
            let s = small_level(f.base(), f.base().regular()[0]);
            let mut elems = Vec::new();
            let ops: Vec<CMat> = (0..f.len())
                .map(|v| {
                    let a = f.base().algebra(v);
                    if s.contains(v) {
                        let blocks = a.blocks().iter().map(|&d| linalg::random_complex(&mut rng, d, d)).collect();
                        let x = crate::cstar::AlgElement::new(a, blocks).unwrap();
                        let m = left_multiplication(&x);
                        elems.push(x);
                        m
                    } else {
                        CMat::identity(a.dim(), a.dim())
                    }
                })
                .collect();
            let op = level_operator(&f, &ops, &s, TOL).unwrap();
            // ‖L_a‖ on A over itself is the C*-norm of a.
            let expected: Vec<f64> = elems
                .iter()
                .map(|x| x.blocks().iter().map(linalg::spectral_norm).fold(0.0, f64::max))
                .collect();
            for (got, want) in op.local_norms.iter().zip(&expected) {
                assert!((got - want).abs() < 1e-9 * want.max(1.0), "seed {seed}");
            }
            let product: f64 = expected.iter().product();
            assert!((op.norm - product).abs() < 1e-9 * product.max(1.0), "seed {seed}: {} vs {product}", op.norm);
        }
    }

    #[test]
    fn level_operator_preconditions() {
        let (f, _) = canonical_family(2);
        let v = f.base().regular()[0];
        let s = small_level(f.base(), v);
        let id = |w: usize| CMat::identity(f.module(w).cdim(), f.module(w).cdim());
        let outside = (0..f.len()).find(|w| !s.contains(*w));
        if let Some(w) = outside {
            let ops: Vec<CMat> = (0..f.len()).map(|u| if u == w { id(u) * linalg::real(2.0) } else { id(u) }).collect();
            match level_operator(&f, &ops, &s, TOL) {
                Err(Error::Precondition { indices, .. }) => assert_eq!(indices, [w]),
                other => panic!("expected a precondition error, got {other:?}"),
            }
        }
        let m2 = BlockAlgebra::full(2).unwrap();
        let g = ModuleFamily::new(
            AlgebraFamily::new(vec![m2.clone()], vec![m2.unit()], []).unwrap(),
            vec![HModule::canonical(&m2)],
            vec![CVec::from_vec(m2.unit().coords())],
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let generic = linalg::random_complex(&mut rng, 4, 4);
        let s = g.level([0]).unwrap();
        assert!(matches!(level_operator(&g, &[generic], &s, TOL), Err(Error::NotAdjointable { .. })));
    }

    #[test]
    fn induction_commutes_on_random_coherent_families() {
        for seed in 0..12 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (f, reps) = random_coherent_family(&mut rng, 4);
            let s = f.level(0..f.len()).unwrap();
            let r = induction_commutes_check(&f, &reps, &s, TOL, &mut rng).unwrap();
            assert!(r.pass, "seed {seed}: {:?}", r.failures());
            let local: usize = (0..f.len())
                .map(|v| f.correspondence(v).induce(&reps[v].units()).unwrap().0.dim())
                .product();
            assert_eq!(r.info_usize("dim"), Some(local));
        }
    }

    #[test]
    fn level_representation_is_a_tensor_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (f, reps) = random_coherent_family(&mut rng, 3);
        let s = f.level(0..f.len()).unwrap();
        let rho = level_representation(f.base(), &reps, &s, TOL).unwrap();
        assert_eq!(rho.rep_dim(), reps.iter().map(LocalRep::dim).product::<usize>());
        assert!(rho.defects().max() < TOL);
    }
}
