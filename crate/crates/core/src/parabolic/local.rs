//! The correspondence `E(G/N)` from `ℂ[G]` to `ℂ[L]`, its distinguished vector,
//! and the local comparison with parabolic induction.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{induce, proj_pk, CharacterTable, Fourier, GroupAlgebraElement, Rep};
use crate::linalg::{self, CMat, CVec, C64, ONE, ZERO};
use crate::module::{validate_correspondence, CoordTensor, Correspondence, HModule, LeftAction};
use crate::parabolic::datum::ParabolicDatum;
use crate::report::{ReportBuilder, VerificationReport};

/// `E(G/N)` with its left `ℂ[G]`-action, both group algebras in Fourier form.
#[derive(Clone, Debug)]
pub struct LocalCorrespondence {
    pub datum: ParabolicDatum,
    /// Fourier form of `ℂ[L]`, the coefficient algebra.
    pub fourier_l: Fourier,
    /// Fourier form of `ℂ[G]`, acting on the left.
    pub fourier_g: Fourier,
    /// Cosets `xN` listed by smallest element; basis of `X` is `δ_{xN}` in this order.
    pub cosets: Vec<Vec<usize>>,
    pub correspondence: Correspondence,
    /// Distinguished vector `x = c·1_{KN/N}`.
    pub x: CVec,
    /// The normalization `c`.
    pub c: f64,
}

/// `xN ↦ (its position, …)` lookups on `G/N`.
struct CosetSpace {
    cosets: Vec<Vec<usize>>,
    of: Vec<usize>,
}

impl CosetSpace {
    fn new(d: &ParabolicDatum) -> Self {
        let cosets = d.n.left_cosets();
        let mut of = vec![0; d.group().order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                of[x] = i;
            }
        }
        CosetSpace { cosets, of }
    }

    fn rep(&self, i: usize) -> usize {
        self.cosets[i][0]
    }

    fn len(&self) -> usize {
        self.cosets.len()
    }
}

/// `δ_{xN}·l = δ_{xlN}` extended linearly to `ℂ[L]`, and the inner product
/// `⟨f₁, f₂⟩(l) = Σ_x conj(f₁(x)) f₂(x·l)`, both read in Fourier coordinates.
fn egn_module(d: &ParabolicDatum, space: &CosetSpace, fl: &Fourier) -> Result<HModule> {
    let g = d.group();
    let m = space.len();
    let lmem = d.l.members();
    let alg = fl.algebra();
    let mut action = Vec::new();
    let mut gram = Vec::new();
    for k in 0..alg.dim() {
        let pre = fl.unit_preimage(k);
        for (pos, &l) in lmem.iter().enumerate() {
            let a = pre.at(pos);
            if a.norm() > 1e-15 {
                for y in 0..m {
                    action.push((k, space.of[g.mul(space.rep(y), l)], y, a));
                }
            }
        }
    }
    for (pos, &l) in lmem.iter().enumerate() {
        let f = fl.delta(pos).coords();
        for x in 0..m {
            let y = space.of[g.mul(space.rep(x), l)];
            for (k, &z) in f.iter().enumerate() {
                if z != ZERO {
                    gram.push((k, x, y, z));
                }
            }
        }
    }
    HModule::from_tensors(alg.clone(), m, CoordTensor::from_entries(alg.dim(), action), CoordTensor::from_entries(alg.dim(), gram))
}

/// `λ(g)δ_{xN} = δ_{gxN}`.
fn left_translation(d: &ParabolicDatum, space: &CosetSpace, g: usize) -> CMat {
    let m = space.len();
    let mut out = CMat::zeros(m, m);
    for x in 0..m {
        out[(space.of[d.group().mul(g, space.rep(x))], x)] = ONE;
    }
    out
}

fn egn_action(d: &ParabolicDatum, space: &CosetSpace, fg: &Fourier) -> Result<LeftAction> {
    let m = space.len();
    let lambda: Vec<CMat> = (0..d.group().order()).map(|g| left_translation(d, space, g)).collect();
    let images = (0..fg.algebra().dim())
        .map(|k| {
            let pre = fg.unit_preimage(k);
            lambda.iter().enumerate().fold(CMat::zeros(m, m), |acc, (g, l)| acc + l * pre.at(g))
        })
        .collect();
    LeftAction::new(fg.algebra().clone(), images)
}

/// Builds `E(G/N)` and validates it as a correspondence; `seed` fixes the irreps.
pub fn build_egn(d: &ParabolicDatum, seed: u64, tol: f64) -> Result<(Correspondence, Fourier, Fourier, Vec<Vec<usize>>)> {
    let fl = Fourier::compute(&d.l.as_group(), seed)?;
    let fg = Fourier::compute(d.group(), seed)?;
    let space = CosetSpace::new(d);
    let module = egn_module(d, &space, &fl)?;
    let action = egn_action(d, &space, &fg)?;
    let c = Correspondence::new(module, action)?;
    let report = validate_correspondence(&c, tol);
    if !report.pass {
        let worst = report.failures().iter().map(|f| f.value).fold(0.0, f64::max);
        return Err(Error::Validation(format!("E(G/N) is not a correspondence (worst defect {worst:.3e})")));
    }
    Ok((c, fl, fg, space.cosets))
}

/// `⟨f₁, f₂⟩` as a function on `L`, indexed by positions in `L`.
pub fn egn_inner(d: &ParabolicDatum, cosets: &[Vec<usize>], f1: &CVec, f2: &CVec) -> Vec<C64> {
    let g = d.group();
    let mut of = vec![0; g.order()];
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            of[x] = i;
        }
    }
    d.l.members()
        .iter()
        .map(|&l| (0..cosets.len()).map(|x| f1[x].conj() * f2[of[g.mul(cosets[x][0], l)]]).sum())
        .collect()
}

/// `c·1_{KN/N}` with `c > 0` solving `c²⟨1, 1⟩ = p_{K∩L}` in least squares.
///
/// Fails with [`Error::Incompatible`] when no positive `c` reaches `tol`.
pub fn distinguished_vector(d: &ParabolicDatum, cosets: &[Vec<usize>], tol: f64) -> Result<(CVec, f64)> {
    let ind = CVec::from_iterator(
        cosets.len(),
        cosets.iter().map(|c| if c.iter().any(|&x| d.k.contains(x)) { ONE } else { ZERO }),
    );
    let phi = egn_inner(d, cosets, &ind, &ind);
    let p = proj_pk(&d.k_cap_l_in_l());
    let num: f64 = phi.iter().zip(p.coeffs()).map(|(a, b)| (a.conj() * b).re).sum();
    let den: f64 = phi.iter().map(|a| a.norm_sqr()).sum();
    let c2 = num / den;
    let defect = phi.iter().zip(p.coeffs()).map(|(a, b)| (a * c2 - b).norm()).fold(0.0, f64::max);
    if !(c2 > 0.0) || defect > tol {
        return Err(Error::Incompatible { defect });
    }
    let c = c2.sqrt();
    Ok((ind * linalg::real(c), c))
}

impl LocalCorrespondence {
    pub fn new(datum: &ParabolicDatum, seed: u64, tol: f64) -> Result<Self> {
        let (correspondence, fourier_l, fourier_g, cosets) = build_egn(datum, seed, tol)?;
        let (x, c) = distinguished_vector(datum, &cosets, tol)?;
        Ok(LocalCorrespondence { datum: datum.clone(), fourier_l, fourier_g, cosets, correspondence, x, c })
    }

    pub fn module(&self) -> &HModule {
        &self.correspondence.module
    }

    /// `p_{K∩L}` in the Fourier algebra of `L`.
    pub fn projection(&self) -> crate::cstar::AlgElement {
        self.fourier_l.forward(&proj_pk(&self.datum.k_cap_l_in_l())).expect("same group")
    }

    /// `p_K` in the Fourier algebra of `G`.
    pub fn primed_projection(&self) -> crate::cstar::AlgElement {
        self.fourier_g.forward(&proj_pk(&self.datum.k)).expect("same group")
    }

    /// `α(p_K)` on `X`.
    pub fn alpha_pk(&self) -> CMat {
        self.correspondence.left.apply(&self.primed_projection()).expect("same algebra")
    }

    /// `ρ` of `L`, as unit images of the Fourier algebra of `L`.
    pub fn l_units(&self, rho: &Rep) -> Result<Vec<CMat>> {
        self.fourier_l.unit_images(rho)
    }

    /// `X ⊗_{ℂ[L]} V_ρ` as a representation of `G`.
    pub fn induced_through_module(&self, rho: &Rep) -> Result<Rep> {
        let (_, images) = self.correspondence.induce(&self.l_units(rho)?)?;
        self.fourier_g.group_rep(&images)
    }

    /// `Ind_B^G(ρ ∘ pr)` with `ρ` extended trivially on `N`.
    pub fn induced_from_borel(&self, rho: &Rep) -> Result<Rep> {
        let pulled = rho.pullback(&self.datum.b.as_group(), &self.datum.levi_projection())?;
        induce(&self.datum.b, &pulled)
    }

    /// The characters of `L` in the fixed order, `"trivial"` first.
    pub fn l_table(&self) -> &CharacterTable {
        self.fourier_l.table()
    }
}

/// Compares `α(p_K)X` with `x·ℂ[L]` as complex subspaces of `X`.
///
/// Entries: `dimension` (equal complex dimensions), `x_in_alpha` and
/// `alpha_in_x` (residuals of each basis after projecting onto the other span).
pub fn asspar_check(lc: &LocalCorrespondence, tol: f64) -> VerificationReport {
    asspar_check_with(lc, &lc.x, tol)
}

/// [`asspar_check`] for an arbitrary vector in place of `x`.
pub fn asspar_check_with(lc: &LocalCorrespondence, x: &CVec, tol: f64) -> VerificationReport {
    let module = lc.module();
    let alpha = linalg::range_basis(&lc.alpha_pk(), 1e-9);
    let xa_cols: Vec<CVec> = (0..module.algebra().dim()).map(|k| module.unit_action(k) * x).collect();
    let xa = CMat::from_columns(&xa_cols);
    let xa = linalg::range_basis(&xa, 1e-9);
    let residual = |basis: &CMat, onto: &CMat| {
        let proj = onto * onto.adjoint();
        linalg::max_abs(&(basis - &proj * basis))
    };
    let mut rep = ReportBuilder::new("asspar", tol);
    rep.require_eq("dimension", xa.ncols(), alpha.ncols())
        .defect("x_in_alpha", if xa.ncols() == 0 { 0.0 } else { residual(&xa, &alpha) })
        .defect("alpha_in_x", if alpha.ncols() == 0 { 0.0 } else { residual(&alpha, &xa) })
        .info("dim", alpha.ncols())
        .info("q", lc.datum.q());
    rep.finish()
}

/// `E(G/N) ⊗ V_ρ` against `Ind_B^G ρ`: dimensions, characters on every conjugacy
/// class, and a unitary intertwiner.
///
/// Entries: `dimension_module`, `dimension_induced` (both `[G:B]·dim ρ`),
/// `characters`, `intertwiner_found`, `intertwiner` and `unitary`.
pub fn local_induction_check(lc: &LocalCorrespondence, rho: &Rep, seed: u64, tol: f64) -> Result<VerificationReport> {
    let a = lc.induced_through_module(rho)?;
    let b = lc.induced_from_borel(rho)?;
    let expected = lc.datum.b.index() * rho.dim();
    let mut rep = ReportBuilder::new("local_induction", tol);
    rep.require_eq("dimension_module", a.dim(), expected).require_eq("dimension_induced", b.dim(), expected);
    compare_reps(&mut rep, &a, &b, seed);
    let table = lc.fourier_g.table();
    let da = table.decompose(&a)?;
    rep.defect("rep_module", a.defects().max())
        .info("q", lc.datum.q())
        .info("rho_dim", rho.dim())
        .info("dim", a.dim())
        .info("decomposition", da.dims())
        .info("c", lc.c);
    Ok(rep.finish())
}

/// Characters on conjugacy classes and a unitary intertwiner from `a` to `b`.
pub(crate) fn compare_reps(rep: &mut ReportBuilder, a: &Rep, b: &Rep, seed: u64) {
    if a.dim() != b.dim() {
        rep.require("intertwiner_found", false);
        return;
    }
    let classes = a.group().conjugacy_classes();
    let (ca, cb) = (a.character(), b.character());
    let chars = classes.iter().map(|c| (ca[c[0]] - cb[c[0]]).norm()).fold(0.0, f64::max);
    rep.defect("characters", chars);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Intertwining a generating set suffices; the defect below is taken over all of G.
    let gens = a.group().generators();
    let pick = |r: &Rep| gens.iter().map(|&g| r.matrix(g).clone()).collect::<Vec<_>>();
    match linalg::unitary_intertwiner(&mut rng, &pick(a), &pick(b), 1e-9) {
        Some(u) => {
            // Group averaging is the orthogonal projection onto the intertwiners; it
            // removes the solver's residual before the polar part is taken again.
            let avg = a
                .matrices()
                .iter()
                .zip(b.matrices())
                .fold(CMat::zeros(u.nrows(), u.ncols()), |acc, (x, y)| acc + y * &u * x.adjoint());
            let u = linalg::polar_unitary(&avg);
            rep.require("intertwiner_found", true)
                .defect("intertwiner", linalg::intertwining_defect(&u, a.matrices(), b.matrices()))
                .defect("unitary", linalg::unitarity_defect(&u));
        }
        None => {
            rep.require("intertwiner_found", false);
        }
    }
}

/// `ρ` of `L` from its label in [`LocalCorrespondence::l_table`].
pub fn l_character(lc: &LocalCorrespondence, label: &str) -> Result<Rep> {
    let t = lc.l_table();
    Ok(t.irrep(t.find(label)?).clone())
}

/// `⟨x, x⟩` as an element of `ℂ[L]`.
pub fn x_inner(lc: &LocalCorrespondence) -> GroupAlgebraElement {
    let v = egn_inner(&lc.datum, &lc.cosets, &lc.x, &lc.x);
    GroupAlgebraElement::new(&lc.datum.l.as_group(), v).expect("one value per element of L")
}
