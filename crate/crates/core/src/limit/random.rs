//! Seeded random families and levels for the randomized suites.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cstar::{AlgElement, BlockAlgebra, StarHom, UnitIndex};
use crate::limit::family::{AlgebraFamily, CorrFamily, Level, ModuleFamily};
use crate::limit::reps::LocalRep;
use crate::linalg::{self, CMat, CVec, C64, ONE, ZERO};
use crate::module::{HModule, LeftAction};

/// Size limits for random levels.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_indices: usize,
    pub max_cdim: usize,
    pub max_algebra_dim: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_indices: 4, max_cdim: 144, max_algebra_dim: 3000 }
    }
}

fn random_blocks<R: Rng + ?Sized>(rng: &mut R, max_blocks: usize, max_dim: usize) -> BlockAlgebra {
    let n = rng.random_range(1..=max_blocks);
    let dims: Vec<usize> = (0..n).map(|_| rng.random_range(1..=max_dim)).collect();
    BlockAlgebra::new(&dims).expect("positive dims")
}

fn random_exceptional<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<usize> {
    if rng.random_bool(0.5) {
        vec![rng.random_range(0..n)]
    } else {
        Vec::new()
    }
}

/// Block-diagonal unitary of `a`.
fn random_unitary_element<R: Rng + ?Sized>(rng: &mut R, a: &BlockAlgebra) -> AlgElement {
    let data = a.blocks().iter().map(|&d| linalg::random_unitary(rng, d)).collect();
    AlgElement::new(a, data).expect("shape")
}

/// `U diag(1^{r_b}, 0) U*` blockwise for a block unitary `U`.
fn projection_with_ranks(a: &BlockAlgebra, ranks: &[usize], u: &AlgElement) -> AlgElement {
    let data = a
        .blocks()
        .iter()
        .zip(ranks)
        .zip(u.blocks())
        .map(|((&d, &r), ub)| {
            let mut p = CMat::zeros(d, d);
            for i in 0..r {
                p[(i, i)] = ONE;
            }
            ub * p * ub.adjoint()
        })
        .collect();
    AlgElement::new(a, data).expect("shape")
}

/// Per-block ranks, nonzero overall unless `allow_zero`; `rank_one` caps them at 1.
fn random_ranks<R: Rng + ?Sized>(rng: &mut R, a: &BlockAlgebra, allow_zero: bool, rank_one: bool) -> Vec<usize> {
    let mut ranks: Vec<usize> =
        a.blocks().iter().map(|&d| rng.random_range(0..=if rank_one { 1 } else { d })).collect();
    if !allow_zero && ranks.iter().all(|&r| r == 0) {
        let b = rng.random_range(0..ranks.len());
        ranks[b] = 1;
    }
    ranks
}

/// A family with `|I| ∈ 2..=6`, `|E| ≤ 1`, one or two blocks of dimension at most 3
/// per index, and random projections. With `rank_one` every block of `p_v` has
/// rank at most one.
pub fn random_algebra_family<R: Rng + ?Sized>(rng: &mut R, rank_one: bool) -> AlgebraFamily {
    let n = rng.random_range(2..=6);
    let e = random_exceptional(rng, n);
    let mut algebras = Vec::with_capacity(n);
    let mut projections = Vec::with_capacity(n);
    for v in 0..n {
        let a = random_blocks(rng, 2, 3);
        let ranks = random_ranks(rng, &a, e.contains(&v), rank_one);
        let u = random_unitary_element(rng, &a);
        projections.push(projection_with_ranks(&a, &ranks, &u));
        algebras.push(a);
    }
    AlgebraFamily::new(algebras, projections, e).expect("shapes")
}

/// A compatible family: `X_v = e_v A_v` for a diagonal projection `e_v`, and
/// `x_v = V_v P U_v*` with `p_v = U_v P U_v*`, so that `⟨x_v, x_v⟩ = p_v` off `E`.
/// At exceptional indices `x_v` is an arbitrary vector. Half of the modules are
/// presented in a rescaled, non-orthonormal basis.
pub fn random_compatible_family<R: Rng + ?Sized>(rng: &mut R) -> ModuleFamily {
    let n = rng.random_range(2..=6);
    let e = random_exceptional(rng, n);
    let mut algebras = Vec::with_capacity(n);
    let mut projections = Vec::with_capacity(n);
    let mut modules = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    for v in 0..n {
        let a = random_blocks(rng, 2, 3);
        let ranks = random_ranks(rng, &a, e.contains(&v), false);
        let mut module_ranks: Vec<usize> =
            ranks.iter().zip(a.blocks()).map(|(&r, &d)| rng.random_range(r..=d)).collect();
        if module_ranks.iter().all(|&r| r == 0) {
            module_ranks[0] = 1;
        }
        let u = random_unitary_element(rng, &a);
        let p = projection_with_ranks(&a, &ranks, &u);
        let x_mod = HModule::right_ideal(&a, &module_ranks).expect("ranks within blocks");
        let x = if e.contains(&v) {
            CVec::from_column_slice(linalg::random_complex(rng, x_mod.cdim(), 1).as_slice())
        } else {
            let mut coords = Vec::with_capacity(x_mod.cdim());
            for (b, &d) in a.blocks().iter().enumerate() {
                let (r, er) = (ranks[b], module_ranks[b]);
                let w = linalg::random_unitary(rng, er.max(1));
                let ub = u.block(b).adjoint();
                for i in 0..er {
                    for j in 0..d {
                        let mut z = ZERO;
                        for t in 0..r {
                            z += w[(i, t)] * ub[(t, j)];
                        }
                        coords.push(z);
                    }
                }
            }
            CVec::from_vec(coords)
        };
        // Half the time, move to a non-orthonormal basis.
        let (x_mod, x) = if rng.random_bool(0.5) {
            let scales: Vec<C64> = (0..x_mod.cdim())
                .map(|_| C64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..std::f64::consts::TAU)))
                .collect();
            let x = CVec::from_iterator(x.len(), x.iter().zip(&scales).map(|(z, s)| z / s));
            (x_mod.rescale_basis(&scales).expect("nonzero scales"), x)
        } else {
            (x_mod, x)
        };
        algebras.push(a);
        projections.push(p);
        modules.push(x_mod);
        vectors.push(x);
    }
    let base = AlgebraFamily::new(algebras, projections, e).expect("shapes");
    ModuleFamily::new(base, modules, vectors).expect("shapes")
}

/// A chain `S ⊆ S' ⊆ S''` of levels with `S''` inside the budget.
///
/// `size(v)` gives `(cdim, algebra dim)` of the local object at `v`.
pub fn random_level_chain<R: Rng + ?Sized>(
    rng: &mut R,
    len: usize,
    exceptional: &[usize],
    size: impl Fn(usize) -> (usize, usize),
    budget: Budget,
) -> [Vec<usize>; 3] {
    let mut top: Vec<usize> = exceptional.to_vec();
    let (mut m, mut d) = top.iter().fold((1, 1), |(m, d), &v| (m * size(v).0, d * size(v).1));
    let mut rest: Vec<usize> = (0..len).filter(|v| !exceptional.contains(v)).collect();
    rest.shuffle(rng);
    let target = rng.random_range(top.len().max(1)..=budget.max_indices);
    for v in rest {
        if top.len() >= target {
            break;
        }
        let (mv, dv) = size(v);
        if m * mv <= budget.max_cdim && d * dv <= budget.max_algebra_dim {
            top.push(v);
            m *= mv;
            d *= dv;
        }
    }
    top.sort_unstable();
    let shrink = |rng: &mut R, from: &[usize]| -> Vec<usize> {
        from.iter().copied().filter(|v| exceptional.contains(v) || rng.random_bool(0.6)).collect()
    };
    let mid = shrink(rng, &top);
    let low = shrink(rng, &mid);
    [low, mid, top]
}

/// Levels `S ⊆ S' ⊆ S''` of a module family within the default budget.
pub fn random_module_levels<R: Rng + ?Sized>(rng: &mut R, f: &ModuleFamily) -> [Level; 3] {
    let e: Vec<usize> = f.base().exceptional().iter().copied().collect();
    let chain = random_level_chain(rng, f.len(), &e, |v| (f.module(v).cdim(), f.base().algebra(v).dim()), Budget::default());
    chain.map(|s| f.level(s).expect("chain contains E"))
}

/// Left multiplication by `a` on `A` over itself, in the basis of matrix units.
pub(crate) fn left_multiplication(a: &AlgElement) -> CMat {
    let alg = a.algebra();
    let n = alg.dim();
    let mut m = CMat::zeros(n, n);
    for u in alg.units() {
        let d = alg.blocks()[u.block];
        let blk = a.block(u.block);
        for i in 0..d {
            let z = blk[(i, u.row)];
            if z != ZERO {
                let dst = alg.coord(UnitIndex { block: u.block, row: i, col: u.col });
                m[(dst, alg.coord(u))] += z;
            }
        }
    }
    m
}

/// Largest product of `dim A_v · dim π_v` over the indices of [`random_coherent_family`].
pub const COHERENT_LEVEL_DIM: usize = 512;

/// One index of a coherent family: action, module vector, projections and representation.
struct CoherentIndex {
    algebra: BlockAlgebra,
    projection: AlgElement,
    primed_projection: AlgElement,
    action: LeftAction,
    vector: CVec,
    rep: LocalRep,
}

impl CoherentIndex {
    fn cost(&self) -> usize {
        self.algebra.dim() * self.rep.dim()
    }
}

fn coherent_index<R: Rng + ?Sized>(rng: &mut R, a: BlockAlgebra) -> CoherentIndex {
    let block = rng.random_range(0..a.num_blocks());
    let w = random_unitary_element(rng, &a);
    let mut ranks = vec![0; a.num_blocks()];
    ranks[block] = 1;
    let p = projection_with_ranks(&a, &ranks, &w);
    let u = random_unitary_element(rng, &a);
    let pp = &(&u.adjoint() * &p) * &u;
    let images: Vec<CMat> = a
        .units()
        .into_iter()
        .map(|k| left_multiplication(&(&(&u * &a.matrix_unit(k)) * &u.adjoint())))
        .collect();
    let action = LeftAction::new(a.clone(), images).expect("shape");

    // π: blocks in `chosen` summed, conjugated by a random unitary.
    let chosen: Vec<usize> = (0..a.num_blocks()).filter(|&b| b == block || rng.random_bool(0.5)).collect();
    let mut offsets = Vec::with_capacity(chosen.len());
    let mut dim = 0;
    for &b in &chosen {
        offsets.push(dim);
        dim += a.blocks()[b];
    }
    let conj = linalg::random_unitary(rng, dim);
    let unit_images: Vec<CMat> = a
        .units()
        .into_iter()
        .map(|k| {
            let mut m = CMat::zeros(dim, dim);
            if let Some(i) = chosen.iter().position(|&b| b == k.block) {
                m[(offsets[i] + k.row, offsets[i] + k.col)] = ONE;
            }
            &conj * m * conj.adjoint()
        })
        .collect();
    let at = offsets[chosen.iter().position(|&b| b == block).expect("chosen")];
    let mut h = CVec::zeros(dim);
    let range = w.block(block).column(0);
    for i in 0..a.blocks()[block] {
        h[at + i] = range[i];
    }
    let rep = LocalRep::new(StarHom::from_matrices(&a, unit_images).expect("shape"), Some(&conj * h));
    CoherentIndex { vector: CVec::from_vec(p.coords()), algebra: a, projection: p, primed_projection: pp, action, rep }
}

/// A coherent family with representations satisfying the level preconditions.
///
/// `X_v = A_v` over itself with `p_v` a rank-one projection and `x_v = p_v`;
/// `A'_v = A_v` acts by `a' ↦ L_{u a' u*}` with `p'_v = u* p_v u`, so that
/// `α_v(p'_v) = L_{p_v} = T_{x_v, x_v}`. `π_v` is a random unitary conjugate of a
/// sum of block irreps containing the block of `p_v`, and `h_v` spans `π_v(p_v)`.
/// An index that would push the product of `dim A_v · dim π_v` past
/// [`COHERENT_LEVEL_DIM`] gets `A_v = ℂ` instead.
pub fn random_coherent_family<R: Rng + ?Sized>(rng: &mut R, max_len: usize) -> (CorrFamily, Vec<LocalRep>) {
    let n = rng.random_range(1..=max_len);
    let e = if n > 1 { random_exceptional(rng, n) } else { Vec::new() };
    let mut cost = 1;
    let mut parts = Vec::with_capacity(n);
    for _ in 0..n {
        let a = random_blocks(rng, 2, 2);
        let mut part = coherent_index(rng, a);
        if cost * part.cost() > COHERENT_LEVEL_DIM {
            part = coherent_index(rng, BlockAlgebra::new(&[1]).expect("positive dims"));
        }
        cost *= part.cost();
        parts.push(part);
    }
    let algebras: Vec<BlockAlgebra> = parts.iter().map(|p| p.algebra.clone()).collect();
    let base = AlgebraFamily::new(algebras.clone(), parts.iter().map(|p| p.projection.clone()).collect(), e.clone())
        .expect("shapes");
    let modules = algebras.iter().map(HModule::canonical).collect();
    let mods = ModuleFamily::new(base, modules, parts.iter().map(|p| p.vector.clone()).collect()).expect("shapes");
    let primed = AlgebraFamily::new(algebras, parts.iter().map(|p| p.primed_projection.clone()).collect(), e)
        .expect("shapes");
    let reps = parts.iter().map(|p| p.rep.clone()).collect();
    let actions = parts.into_iter().map(|p| p.action).collect();
    (CorrFamily::new(mods, primed, actions).expect("shapes"), reps)
}

/// `A'_v = M₂`, `p'_v = 1`, `A_v = ℂ`, `p_v = 1`, `X_v = ℂ²`, `x_v = (1, 0)ᵀ` at
/// every index, with the standard action: compatible, but not coherent.
pub fn counterexample_family(n: usize) -> CorrFamily {
    let c = BlockAlgebra::scalars();
    let m2 = BlockAlgebra::full(2).expect("2 > 0");
    let base = AlgebraFamily::new(vec![c.clone(); n], vec![c.unit(); n], []).expect("shapes");
    let x = HModule::hilbert_space(2).expect("2 > 0");
    let mods = ModuleFamily::new(base, vec![x; n], vec![CVec::from_vec(vec![ONE, ZERO]); n]).expect("shapes");
    let primed = AlgebraFamily::new(vec![m2.clone(); n], vec![m2.unit(); n], []).expect("shapes");
    let images: Vec<CMat> = m2
        .units()
        .into_iter()
        .map(|u| {
            let mut m = CMat::zeros(2, 2);
            m[(u.row, u.col)] = ONE;
            m
        })
        .collect();
    let action = LeftAction::new(m2, images).expect("shape");
    CorrFamily::new(mods, primed, vec![action; n]).expect("shapes")
}

/// The same module data with `p'_v = e₁₁`, which makes the family coherent.
pub fn corner_family(n: usize) -> CorrFamily {
    let f = counterexample_family(n);
    let m2 = BlockAlgebra::full(2).expect("2 > 0");
    let e11 = m2.matrix_unit(UnitIndex { block: 0, row: 0, col: 0 });
    (0..n).fold(f, |f, v| f.with_primed_projection(v, e11.clone()).expect("shape"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstar::rank_at_most_one;
    use crate::limit::family::{validate_algebra_family, validate_corr_family, validate_module_family};
    use crate::limit::reps::local_rep_defects;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_families_validate() {
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            assert!(validate_algebra_family(&random_algebra_family(&mut rng, false), 1e-9).pass);
            assert!(validate_module_family(&random_compatible_family(&mut rng), 1e-9).pass);
            let (f, reps) = random_coherent_family(&mut rng, 4);
            assert!(validate_corr_family(&f, 1e-9).pass);
            for (v, r) in reps.iter().enumerate() {
                let (moved, norm) = local_rep_defects(f.base(), v, r).unwrap();
                assert!(moved < 1e-9 && norm < 1e-9);
            }
        }
    }

    #[test]
    fn rank_one_families_have_rank_one_projections() {
        for seed in 0..20 {
            let f = random_algebra_family(&mut ChaCha8Rng::seed_from_u64(seed), true);
            for v in 0..f.len() {
                assert!(rank_at_most_one(f.projection(v), f.algebra(v)).unwrap());
            }
        }
    }

    #[test]
    fn coherent_families_respect_the_size_budget() {
        for seed in 0..40 {
            let (f, reps) = random_coherent_family(&mut ChaCha8Rng::seed_from_u64(seed), 4);
            let cost: usize = (0..f.len()).map(|v| f.base().algebra(v).dim() * reps[v].dim()).product();
            assert!(cost <= COHERENT_LEVEL_DIM);
        }
    }

    #[test]
    fn level_chains_are_nested_and_within_budget() {
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_compatible_family(&mut rng);
            let [a, b, c] = random_module_levels(&mut rng, &f);
            assert!(a.is_subset_of(&b) && b.is_subset_of(&c));
            assert!(c.len() <= Budget::default().max_indices.max(f.base().exceptional().len()));
            assert!(f.base().exceptional().iter().all(|&v| a.contains(v)));
        }
    }

    #[test]
    fn same_seed_same_family() {
        let a = random_compatible_family(&mut ChaCha8Rng::seed_from_u64(9));
        let b = random_compatible_family(&mut ChaCha8Rng::seed_from_u64(9));
        assert_eq!(a.len(), b.len());
        for v in 0..a.len() {
            assert_eq!(a.vector(v), b.vector(v));
        }
    }
}
