//! The level-by-level checks of the direct-limit, compacts and coherence results.

use rand::Rng;
use rayon::prelude::*;

use crate::cstar::{irreps_of, rank_at_most_one, AlgElement, BlockAlgebra, TensorLayout, UnitIndex};
use crate::error::{Error, Result};
use crate::limit::family::{fixed_vector_defect, CorrFamily, Level, ModuleFamily};
use crate::limit::level::{
    level_layout, level_module, operator_embedding, AlgebraConnection, ConnectingMap,
};
use crate::linalg::{self, CMat, CVec, ZERO};
use crate::module::{
    commutant_dimension, compact_dimension, compact_from_coefficients, interior_tensor_from_units,
    rank_one_matrix, span_dimension, Correspondence, LeftAction, TraceGeometry,
};
use crate::report::{ReportBuilder, VerificationReport};

/// Above this many columns the interior tensor `X_S ⊗ L²(A_{S'})` is not formed
/// and the identity is checked on random simple tensors only.
pub const FULL_LIMIT_COLUMNS: usize = 400;

/// Number of random samples used by the sampled entries.
const SAMPLES: usize = 6;

fn random_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVec {
    let m = linalg::random_complex(rng, n, 1);
    CVec::from_column_slice(m.as_slice())
}

/// `X_S ⊗_{A_S} A_{S'} ≅ ι(X_S)·A_{S'}` through `x ⊗ b ↦ ι(x)·b`.
///
/// Entries: `inner_product` (the `A_{S'}`-valued identity
/// `⟨ι(x)·b, ι(y)·c⟩ = b*φ(⟨x, y⟩)c` on random simple tensors) and, when the
/// balanced product is small enough, `isometry` (the induced map is isometric from
/// the interior tensor with `L²(A_{S'})` into `X_{S'}`) and `dimension` (its
/// dimension equals that of the image). The image dimension is reported as
/// `image_dim` next to `cdim_Sprime`, so `onto` says whether `ι(X_S)` generates.
pub fn check_direct_limit_identity<R: Rng + ?Sized>(
    f: &ModuleFamily,
    s: &Level,
    sp: &Level,
    tol: f64,
    rng: &mut R,
) -> Result<VerificationReport> {
    let map = ConnectingMap::new(f, s, sp)?;
    let xs = level_module(f, s);
    let xsp = level_module(f, sp);
    let a_s = map.algebra.domain().clone();
    let a_sp = map.algebra.codomain().clone();
    let mut rep = ReportBuilder::new("direct_limit_identity", tol);

    // Columns R'_k ι of the image, one block per matrix unit of A_{S'}.
    let dsp = a_sp.dim();
    let ms = xs.cdim();
    let msp = xsp.cdim();
    let mut v_map = CMat::zeros(msp, ms * dsp);
    for k in 0..dsp {
        for &(i, j, val) in xsp.action_tensor().slice(k) {
            for c in 0..ms {
                let z = map.iota[(j, c)];
                if z != ZERO {
                    v_map[(i, c * dsp + k)] += val * z;
                }
            }
        }
    }
    let image_dim = linalg::rank(&(&v_map * v_map.adjoint()), 1e-10);
    rep.info("image_dim", image_dim).info("cdim_Sprime", msp).info("onto", image_dim == msp);

    let mut worst: f64 = 0.0;
    for _ in 0..SAMPLES {
        let x = random_vec(rng, ms);
        let y = random_vec(rng, ms);
        let b = random_element(rng, &a_sp);
        let c = random_element(rng, &a_sp);
        let lhs = xsp.inner(&xsp.act(&map.apply(&x), &b)?, &xsp.act(&map.apply(&y), &c)?)?;
        let inner = map.algebra.apply(&xs.inner(&x, &y)?)?;
        let rhs = &(&b.adjoint() * &inner) * &c;
        let scale = 1.0 + x.norm() * y.norm() * b.op_norm() * c.op_norm();
        worst = worst.max((&lhs - &rhs).max_abs() / scale);
    }
    rep.defect("inner_product", worst);

    if ms * dsp <= FULL_LIMIT_COLUMNS {
        // π(a) = left multiplication by φ(a) on L²(A_{S'}) in matrix-unit coordinates.
        let units_sp = a_sp.units();
        let pi_units: Vec<CMat> = (0..a_s.dim())
            .map(|k| {
                let mut m = CMat::zeros(dsp, dsp);
                for &(kp, c) in map.algebra.unit_image(k) {
                    let u = units_sp[kp];
                    let d = a_sp.blocks()[u.block];
                    for t in 0..d {
                        let src = a_sp.coord(UnitIndex { block: u.block, row: u.col, col: t });
                        let dst = a_sp.coord(UnitIndex { block: u.block, row: u.row, col: t });
                        m[(dst, src)] += c;
                    }
                }
                m
            })
            .collect();
        let t = interior_tensor_from_units(&xs, &pi_units)?;
        let geom = TraceGeometry::of(&xsp);
        let vl = &v_map * &t.lift;
        let gram = vl.adjoint() * &geom.gram * &vl;
        rep.defect("isometry", linalg::max_abs(&(gram - CMat::identity(t.dim(), t.dim()))));
        rep.require_eq("dimension", t.dim(), image_dim);
        rep.info("mode", "full").info("balanced_dim", t.dim());
    } else {
        rep.info("mode", "sampled");
    }
    rep.info("S", s.indices().to_vec()).info("Sprime", sp.indices().to_vec());
    Ok(rep.finish())
}

fn random_element<R: Rng + ?Sized>(rng: &mut R, a: &BlockAlgebra) -> AlgElement {
    let data = a.blocks().iter().map(|&d| linalg::random_complex(rng, d, d)).collect();
    AlgElement::new(a, data).expect("shape")
}

/// `Φ(T) = T ⊗ (⊗_{v ∈ S'∖S} T_{x_v, x_v})` at the positions of `S'`.
pub fn compact_connection(f: &ModuleFamily, map: &ConnectingMap, sp: &Level, t: &CMat) -> CMat {
    operator_embedding(sp, &map.positions, |v| f.module(v).cdim(), t, |v| {
        let x = f.vector(v);
        rank_one_matrix(f.module(v), x, x)
    })
}

/// `T_{ξ,η} ↦ T_{ιξ,ιη}` is an isometric *-homomorphism `𝕂(X_S) → 𝕂(X_{S'})`
/// given by `T ↦ T ⊗ p_{x_v}`.
///
/// Entries: `rank_one_rule` (`T_{ιξ,ιη} = Φ(T_{ξ,η})`), `linear_extension`
/// (`Φ(T_C) = T_{ιCιᴴ}`), `intertwines` (`Φ(T)ι = ιT`), `multiplicative`,
/// `adjoint`, `isometry` (relative norm difference) and `dimension`
/// (`dim 𝕂(X_S) = Π_{v ∈ S} dim 𝕂(X_v)`), all on random compacts.
pub fn compacts_iso_check<R: Rng + ?Sized>(
    f: &ModuleFamily,
    s: &Level,
    sp: &Level,
    tol: f64,
    rng: &mut R,
) -> Result<VerificationReport> {
    let map = ConnectingMap::new(f, s, sp)?;
    let xs = level_module(f, s);
    let xsp = level_module(f, sp);
    let geom_s = TraceGeometry::of(&xs);
    let geom_sp = TraceGeometry::of(&xsp);
    let ms = xs.cdim();
    let iota = &map.iota;
    let phi = |t: &CMat| compact_connection(f, &map, sp, t);
    let mut rank_rule: f64 = 0.0;
    let mut linear: f64 = 0.0;
    let mut intertwines: f64 = 0.0;
    let mut mult: f64 = 0.0;
    let mut adj: f64 = 0.0;
    let mut iso: f64 = 0.0;
    for _ in 0..SAMPLES {
        let xi = random_vec(rng, ms);
        let eta = random_vec(rng, ms);
        let t = rank_one_matrix(&xs, &xi, &eta);
        let direct = rank_one_matrix(&xsp, &(iota * &xi), &(iota * &eta));
        rank_rule = rank_rule.max(linalg::max_abs(&(direct - phi(&t))));

        let c1 = linalg::random_complex(rng, ms, ms);
        let c2 = linalg::random_complex(rng, ms, ms);
        let t1 = compact_from_coefficients(&xs, &c1);
        let t2 = compact_from_coefficients(&xs, &c2);
        let (p1, p2) = (phi(&t1), phi(&t2));
        let scale = 1.0 + linalg::max_abs(&t1) * linalg::max_abs(&t2);
        linear = linear.max(
            linalg::max_abs(&(&p1 - compact_from_coefficients(&xsp, &(iota * &c1 * iota.adjoint()))))
                / (1.0 + linalg::max_abs(&t1)),
        );
        intertwines = intertwines.max(linalg::max_abs(&(&p1 * iota - iota * &t1)) / (1.0 + linalg::max_abs(&t1)));
        // Product through the structure constants: T_{C1} T_{C2} = T_{T_{C1} C2}.
        let prod = phi(&compact_from_coefficients(&xs, &(&t1 * &c2)));
        mult = mult.max(linalg::max_abs(&(&p1 * &p2 - prod)) / scale);
        let star = phi(&compact_from_coefficients(&xs, &c1.adjoint()));
        adj = adj.max(linalg::max_abs(&(geom_sp.adjoint_of(&p1) - star)) / (1.0 + linalg::max_abs(&t1)));
        let n_s = geom_s.norm_of(&t1);
        let n_sp = geom_sp.norm_of(&p1);
        iso = iso.max((n_s - n_sp).abs() / n_s.max(1.0));
    }
    let mut rep = ReportBuilder::new("compacts_iso", tol);
    rep.defect("rank_one_rule", rank_rule)
        .defect("linear_extension", linear)
        .defect("intertwines", intertwines)
        .defect("multiplicative", mult)
        .defect("adjoint", adj)
        .defect("isometry", iso);
    let local: usize = s.indices().iter().map(|&v| compact_dimension(f.module(v))).product();
    let level = compact_dimension(&xs);
    rep.require_eq("dimension", level, local);
    rep.info("compact_dim_S", level);
    Ok(rep.finish())
}

/// The left action of `A'_S = ⊗_{v ∈ S} A'_v` on `X_S`, `α_S(⊗a'_v) = ⊗α_v(a'_v)`.
///
/// Fails with a precondition error listing every `v ∉ E` where `α_v(p'_v)x_v ≠ x_v`.
pub fn left_action_level(f: &CorrFamily, s: &Level, tol: f64) -> Result<Correspondence> {
    check_asstwo(f, tol)?;
    let layout = level_layout(f.primed(), s);
    let a = layout.product().clone();
    let images: Vec<CMat> = a
        .units()
        .into_par_iter()
        .map(|u| level_unit_action(f, s, &layout.split_unit(u), &layout))
        .collect();
    Correspondence::new(level_module(f.modules(), s), LeftAction::new(a, images)?)
}

fn level_unit_action(
    f: &CorrFamily,
    s: &Level,
    parts: &[UnitIndex],
    layout: &TensorLayout,
) -> CMat {
    let mats: Vec<&CMat> = s
        .indices()
        .iter()
        .zip(parts)
        .enumerate()
        .map(|(i, (&v, &u))| f.action(v).unit_image(layout.factors()[i].coord(u)))
        .collect();
    linalg::kron_many(mats)
}

pub(crate) fn check_asstwo(f: &CorrFamily, tol: f64) -> Result<()> {
    let bad: Vec<usize> = f
        .base()
        .regular()
        .into_iter()
        .filter(|&v| !(fixed_vector_defect(f, v) <= tol))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::Precondition { indices: bad, message: "α_v(p'_v) does not fix x_v".into() })
    }
}

/// `α_v(p'_v) = T_{x_v, x_v}` for every `v ∉ E`, measured in the operator norm of
/// `End*(X_v)` (entries `v{v}/coherence`). Exceptional indices are listed as exempt.
pub fn coherence_check(f: &CorrFamily, tol: f64) -> VerificationReport {
    let mut rep = ReportBuilder::new("coherence", tol);
    let per: Vec<Option<f64>> =
        (0..f.len()).into_par_iter().map(|v| (!f.base().is_exceptional(v)).then(|| coherence_defect(f, v))).collect();
    for (v, d) in per.into_iter().enumerate() {
        match d {
            Some(d) => {
                rep.defect(format!("v{v}/coherence"), d);
            }
            None => {
                rep.info(format!("v{v}/exempt"), true);
            }
        }
    }
    rep.finish()
}

/// `‖α_v(p'_v) − T_{x_v, x_v}‖` in `End*(X_v)`.
pub fn coherence_defect(f: &CorrFamily, v: usize) -> f64 {
    let x_mod = f.modules().module(v);
    let x = f.modules().vector(v);
    let diff = f.primed_projection_image(v) - rank_one_matrix(x_mod, x, x);
    TraceGeometry::of(x_mod).norm_of(&diff)
}

/// Whether `span α_v(A'_v) ⊇ 𝕂(X_v)` at every index, by comparing the rank of the
/// joint span with the rank of the image of `α_v` (entries `v{v}/contains_compacts`).
pub fn type_i_check(f: &CorrFamily, tol: f64) -> VerificationReport {
    let mut rep = ReportBuilder::new("type_i", tol);
    let per: Vec<(usize, usize, usize)> = (0..f.len())
        .into_par_iter()
        .map(|v| {
            let x = f.modules().module(v);
            let alpha: Vec<CMat> = f.action(v).images().to_vec();
            let m = x.cdim();
            let mut joint = alpha.clone();
            for i in 0..m {
                for j in 0..m {
                    joint.push(rank_one_matrix(x, &x.basis_vector(i), &x.basis_vector(j)));
                }
            }
            (span_dimension(&alpha), span_dimension(&joint), compact_dimension(x))
        })
        .collect();
    for (v, (alpha, joint, compact)) in per.into_iter().enumerate() {
        rep.require_eq(format!("v{v}/contains_compacts"), joint, alpha);
        rep.info(format!("v{v}/alpha_rank"), alpha).info(format!("v{v}/compact_dim"), compact);
    }
    rep.finish()
}

/// The three hypotheses of the sufficient condition for coherence, per `v ∉ E`,
/// and the conclusion where all three hold.
///
/// Entries: `v{v}/irreducible_images` (each irrep of `A_v` induces through `X_v` to
/// an irreducible or zero representation of `A'_v`), `v{v}/rank_one_pprime`,
/// `v{v}/support` (`π'(p'_v) ≠ 0 ⇒ π(p_v) ≠ 0` over the irreps `π` of `A_v`) and,
/// only when those hold, `v{v}/coherence`.
pub fn coherence_sufficient_check(f: &CorrFamily, tol: f64) -> VerificationReport {
    let mut rep = ReportBuilder::new("coherence_sufficient", tol);
    let per: Vec<Option<Hypotheses>> =
        (0..f.len()).into_par_iter().map(|v| (!f.base().is_exceptional(v)).then(|| hypotheses(f, v))).collect();
    for (v, h) in per.into_iter().enumerate() {
        let Some(h) = h else {
            rep.info(format!("v{v}/exempt"), true);
            continue;
        };
        rep.require(format!("v{v}/irreducible_images"), h.irreducible)
            .require(format!("v{v}/rank_one_pprime"), h.rank_one)
            .require(format!("v{v}/support"), h.support);
        rep.info(format!("v{v}/induced_dims"), h.induced_dims.clone());
        if h.irreducible && h.rank_one && h.support {
            rep.defect(format!("v{v}/coherence"), coherence_defect(f, v));
        } else {
            rep.info(format!("v{v}/conclusion"), "not asserted");
        }
    }
    rep.finish()
}

struct Hypotheses {
    irreducible: bool,
    rank_one: bool,
    support: bool,
    induced_dims: Vec<usize>,
}

fn hypotheses(f: &CorrFamily, v: usize) -> Hypotheses {
    let c = f.correspondence(v);
    let a = f.base().algebra(v);
    let ap = f.primed().algebra(v);
    let p = f.base().projection(v);
    let pp = f.primed().projection(v);
    let mut irreducible = true;
    let mut support = true;
    let mut induced_dims = Vec::new();
    for (b, pi) in irreps_of(a).iter().enumerate() {
        let units: Vec<CMat> = (0..a.dim()).map(|k| pi.unit_matrix(k)).collect();
        let (t, images) = c.induce(&units).expect("irrep of the right algebra");
        induced_dims.push(t.dim());
        if t.dim() > 0 && commutant_dimension(ap, &images) != 1 {
            irreducible = false;
        }
        let pp_image = pp
            .coords()
            .iter()
            .enumerate()
            .filter(|(_, z)| **z != ZERO)
            .fold(CMat::zeros(t.dim(), t.dim()), |acc, (k, z)| acc + &images[k] * *z);
        let pp_nonzero = t.dim() > 0 && linalg::max_abs(&pp_image) > 1e-8;
        let p_nonzero = p.block(b).iter().any(|z| z.norm() > 1e-8);
        if pp_nonzero && !p_nonzero {
            support = false;
        }
    }
    let rank_one = rank_at_most_one(pp, ap).unwrap_or(false);
    Hypotheses { irreducible, rank_one, support, induced_dims }
}

/// The commuting square relating the level left actions with the compact
/// connecting map, for generating units `a'` of `A'_S`.
///
/// Entries: `intertwines` (`α_{S'}(φ'(a'))ι = ια_S(a')`, which needs only that
/// `α_v(p'_v)` fixes `x_v`) and `square` (`α_{S'}(φ'(a')) = α_S(a') ⊗ T_{x_v,x_v}`,
/// which is the coherent case).
pub fn commuting_square_check(f: &CorrFamily, s: &Level, sp: &Level, tol: f64) -> Result<VerificationReport> {
    let map = ConnectingMap::new(f.modules(), s, sp)?;
    let conn = AlgebraConnection::new(f.primed(), s, sp)?;
    let layout = level_layout(f.primed(), s);
    let layout_sp = level_layout(f.primed(), sp);
    let units_sp = layout_sp.product().units();
    let gens: Vec<(usize, UnitIndex)> =
        layout.product().units().into_iter().enumerate().filter(|(_, u)| u.row == 0 || u.col == 0).collect();
    let per: Vec<(f64, f64)> = gens
        .into_par_iter()
        .map(|(k, u)| {
            let alpha_s = level_unit_action(f, s, &layout.split_unit(u), &layout);
            let m = map.iota.nrows();
            let mut big = CMat::zeros(m, m);
            for &(kp, c) in conn.unit_image(k) {
                big += level_unit_action(f, sp, &layout_sp.split_unit(units_sp[kp]), &layout_sp) * c;
            }
            let inter = linalg::max_abs(&(&big * &map.iota - &map.iota * &alpha_s));
            let square = linalg::max_abs(&(&big - compact_connection(f.modules(), &map, sp, &alpha_s)));
            (inter, square)
        })
        .collect();
    let mut rep = ReportBuilder::new("commuting_square", tol);
    rep.defect("intertwines", per.iter().map(|p| p.0).fold(0.0, f64::max));
    rep.defect("square", per.iter().map(|p| p.1).fold(0.0, f64::max));
    rep.info("S", s.indices().to_vec()).info("Sprime", sp.indices().to_vec());
    Ok(rep.finish())
}
