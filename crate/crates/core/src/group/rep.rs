//! Unitary representations of finite groups, induction and invariants.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::algebra::{modular_delta, GroupAlgebraElement};
use crate::group::table::{FiniteGroup, Subgroup};
use crate::linalg::{self, CMat, C64, ZERO};

/// `g ↦ π(g)`, one `d x d` matrix per group element.
#[derive(Clone, Debug)]
pub struct Rep {
    group: FiniteGroup,
    matrices: Vec<CMat>,
}

/// Worst homomorphism and unitarity defects of a [`Rep`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RepDefects {
    pub homomorphism: f64,
    pub unitarity: f64,
}

impl RepDefects {
    pub fn max(&self) -> f64 {
        self.homomorphism.max(self.unitarity)
    }
}

impl Rep {
    /// Checks shapes only; see [`Rep::defects`] and [`Rep::validated`].
    pub fn new(group: &FiniteGroup, matrices: Vec<CMat>) -> Result<Self> {
        if matrices.len() != group.order() {
            return Err(Error::Shape(format!("{} matrices for a group of order {}", matrices.len(), group.order())));
        }
        let d = matrices[0].nrows();
        if matrices.iter().any(|m| m.shape() != (d, d)) {
            return Err(Error::Shape("matrices of a representation must share one square shape".into()));
        }
        Ok(Rep { group: group.clone(), matrices })
    }

    /// [`Rep::new`] followed by the representation laws within `tol`.
    pub fn validated(group: &FiniteGroup, matrices: Vec<CMat>, tol: f64) -> Result<Self> {
        let r = Self::new(group, matrices)?;
        let d = r.defects();
        if d.max() > tol {
            return Err(Error::Validation(format!(
                "not a unitary representation (homomorphism {:.3e}, unitarity {:.3e})",
                d.homomorphism, d.unitarity
            )));
        }
        Ok(r)
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Rep { group: group.clone(), matrices: vec![CMat::identity(1, 1); group.order()] }
    }

    /// `λ(g)δ_x = δ_{gx}` on `ℂ^{|G|}`.
    pub fn regular(group: &FiniteGroup) -> Self {
        let matrices = (0..group.order()).map(|g| GroupAlgebraElement::delta(group, g).regular_matrix()).collect();
        Rep { group: group.clone(), matrices }
    }

    /// A one-dimensional representation from its values.
    pub fn from_character(group: &FiniteGroup, values: &[C64]) -> Result<Self> {
        Self::new(group, values.iter().map(|&z| CMat::from_element(1, 1, z)).collect())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.matrices[0].nrows()
    }

    pub fn matrix(&self, g: usize) -> &CMat {
        &self.matrices[g]
    }

    pub fn matrices(&self) -> &[CMat] {
        &self.matrices
    }

    pub fn character(&self) -> Vec<C64> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    /// `π(f) = Σ f(g) π(g)`.
    pub fn apply(&self, f: &GroupAlgebraElement) -> Result<CMat> {
        if f.group() != &self.group {
            return Err(Error::Shape("element of another group algebra".into()));
        }
        let d = self.dim();
        Ok(f.coeffs().iter().zip(&self.matrices).filter(|(c, _)| **c != ZERO).fold(CMat::zeros(d, d), |acc, (c, m)| acc + m * *c))
    }

    pub fn defects(&self) -> RepDefects {
        let g = &self.group;
        let n = g.order();
        let d = self.dim();
        let mut hom: f64 = linalg::max_abs(&(&self.matrices[0] - CMat::identity(d, d)));
        for a in 0..n {
            for b in 0..n {
                let diff = &self.matrices[a] * &self.matrices[b] - &self.matrices[g.mul(a, b)];
                hom = hom.max(linalg::max_abs(&diff));
            }
        }
        let unitarity = self.matrices.iter().map(linalg::unitarity_defect).fold(0.0, f64::max);
        RepDefects { homomorphism: hom, unitarity }
    }

    /// `U π(g) U*`.
    pub fn conjugate(&self, u: &CMat) -> Self {
        Rep { group: self.group.clone(), matrices: self.matrices.iter().map(|m| u * m * u.adjoint()).collect() }
    }

    /// Restriction to a subgroup, as a representation of [`Subgroup::as_group`].
    pub fn restrict(&self, h: &Subgroup) -> Result<Self> {
        if h.parent() != &self.group {
            return Err(Error::Validation("subgroup of another group".into()));
        }
        Ok(Rep { group: h.as_group(), matrices: h.members().iter().map(|&x| self.matrices[x].clone()).collect() })
    }

    /// Pullback along a homomorphism `φ: K → G` given by the images of the elements of `K`.
    pub fn pullback(&self, k: &FiniteGroup, images: &[usize]) -> Result<Self> {
        if images.len() != k.order() {
            return Err(Error::Shape("one image per element required".into()));
        }
        let r = Rep { group: k.clone(), matrices: images.iter().map(|&x| self.matrices[x].clone()).collect() };
        Ok(r)
    }

    /// `π ⊕ σ`.
    pub fn direct_sum(&self, other: &Rep) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::Shape("representations of different groups".into()));
        }
        let (m, n) = (self.dim(), other.dim());
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                let mut out = CMat::zeros(m + n, m + n);
                out.view_mut((0, 0), (m, m)).copy_from(a);
                out.view_mut((m, m), (n, n)).copy_from(b);
                out
            })
            .collect();
        Ok(Rep { group: self.group.clone(), matrices })
    }

    /// `π₁ ⊠ ⋯ ⊠ π_r` on [`FiniteGroup::direct_product`] of the groups.
    pub fn outer_tensor(reps: &[Rep]) -> Self {
        let groups: Vec<FiniteGroup> = reps.iter().map(|r| r.group.clone()).collect();
        let product = FiniteGroup::direct_product(&groups);
        let orders: Vec<usize> = groups.iter().map(FiniteGroup::order).collect();
        let matrices = (0..product.order())
            .map(|x| {
                let parts = crate::cstar::split_radix(&orders, x);
                linalg::kron_many(reps.iter().zip(&parts).map(|(r, &p)| &r.matrices[p]))
            })
            .collect();
        Rep { group: product, matrices }
    }
}

/// `(1/|G|) Σ_g conj(χ(g)) ψ(g)`.
pub fn character_inner(g: &FiniteGroup, chi: &[C64], psi: &[C64]) -> C64 {
    let s: C64 = chi.iter().zip(psi).map(|(a, b)| a.conj() * b).sum();
    s / linalg::real(g.order() as f64)
}

/// `Ind_H^G π` on functions `f: G → V` with `f(gh) = π(h⁻¹) f(g)`, coordinates
/// `f(r_i)` at the smallest element `r_i` of each left coset.
///
/// Block `(i, j)` of `Ind π(g)` is `π(r_i⁻¹ g r_j)` when that lies in `H`. `π` is a
/// representation of [`Subgroup::as_group`].
pub fn induce(h: &Subgroup, pi: &Rep) -> Result<Rep> {
    if pi.group().order() != h.order() {
        return Err(Error::Validation(format!(
            "representation of a group of order {} induced from a subgroup of order {}",
            pi.group().order(),
            h.order()
        )));
    }
    let g = h.parent();
    let reps: Vec<usize> = h.left_cosets().iter().map(|c| c[0]).collect();
    let m = reps.len();
    let d = pi.dim();
    let matrices = (0..g.order())
        .map(|x| {
            let mut out = CMat::zeros(m * d, m * d);
            for (j, &rj) in reps.iter().enumerate() {
                let y = g.mul(x, rj);
                let (i, hh) = reps
                    .iter()
                    .enumerate()
                    .find_map(|(i, &ri)| h.position(g.ldiv(ri, y)).map(|p| (i, p)))
                    .expect("cosets cover G");
                let scale = linalg::real(modular_delta(g, h.members()[hh]).sqrt());
                out.view_mut((i * d, j * d), (d, d)).copy_from(&(pi.matrix(hh) * scale));
            }
            out
        })
        .collect();
    Ok(Rep { group: g.clone(), matrices })
}

/// `χ_{Ind π}(g) = (1/|H|) Σ_{x : x⁻¹gx ∈ H} χ_π(x⁻¹gx)`.
pub fn induced_character(h: &Subgroup, chi: &[C64]) -> Vec<C64> {
    let g = h.parent();
    let n = g.order();
    (0..n)
        .map(|y| {
            let s: C64 = (0..n)
                .filter_map(|x| h.position(g.mul(g.ldiv(x, y), x)).map(|p| chi[p]))
                .sum();
            s / linalg::real(h.order() as f64)
        })
        .collect()
}

/// Orthonormal basis (columns) of `V^K`, the range of `(1/|K|) Σ_{k ∈ K} π(k)`.
pub fn invariant_subspace(pi: &Rep, k: &Subgroup) -> Result<CMat> {
    if k.parent() != pi.group() {
        return Err(Error::Validation("subgroup of another group".into()));
    }
    let d = pi.dim();
    let avg = k.members().iter().fold(CMat::zeros(d, d), |acc, &x| acc + pi.matrix(x))
        * linalg::real(1.0 / k.order() as f64);
    Ok(linalg::range_basis(&avg, 1e-9))
}

/// Wire form: row-major `[re, im]` matrices, one per element.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepJson {
    pub dim: usize,
    pub matrices: Vec<Vec<[f64; 2]>>,
}

impl From<&Rep> for RepJson {
    fn from(r: &Rep) -> Self {
        let d = r.dim();
        let matrices = r
            .matrices
            .iter()
            .map(|m| (0..d * d).map(|i| m[(i / d, i % d)]).map(|z| [z.re, z.im]).collect())
            .collect();
        RepJson { dim: d, matrices }
    }
}

impl RepJson {
    pub fn into_rep(self, group: &FiniteGroup, tol: f64) -> Result<Rep> {
        let d = self.dim;
        let matrices = self
            .matrices
            .iter()
            .map(|m| {
                if m.len() != d * d {
                    return Err(Error::Shape(format!("matrix with {} entries, expected {}", m.len(), d * d)));
                }
                Ok(CMat::from_row_iterator(d, d, m.iter().map(|&[re, im]| linalg::c64(re, im))))
            })
            .collect::<Result<_>>()?;
        Rep::validated(group, matrices, tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::table::subgroup_generate;
    use crate::linalg::ONE;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3).unwrap()
    }

    #[test]
    fn regular_and_trivial_are_representations() {
        let g = s3();
        assert!(Rep::regular(&g).defects().max() < 1e-15);
        assert!(Rep::trivial(&g).defects().max() == 0.0);
    }

    #[test]
    fn induction_from_the_whole_group_is_the_identity() {
        let g = s3();
        let sign: Vec<C64> = g.labels().iter().map(|l| linalg::real(perm_sign(l))).collect();
        let pi = Rep::from_character(&g, &sign).unwrap();
        let ind = induce(&Subgroup::whole(&g), &pi.restrict(&Subgroup::whole(&g)).unwrap()).unwrap();
        for x in 0..6 {
            assert_eq!(ind.matrix(x), pi.matrix(x));
        }
    }

    #[test]
    fn induction_from_the_trivial_subgroup_is_regular() {
        let g = s3();
        let e = Subgroup::trivial(&g);
        let ind = induce(&e, &Rep::trivial(&e.as_group())).unwrap();
        assert_eq!(ind.dim(), 6);
        for x in 0..6 {
            assert_eq!(ind.matrix(x), Rep::regular(&g).matrix(x));
        }
    }

    #[test]
    fn induced_character_matches_the_formula() {
        let g = FiniteGroup::symmetric(4).unwrap();
        let h = subgroup_generate(&g, &[1, 3]).unwrap();
        let hg = h.as_group();
        let sign: Vec<C64> = hg.labels().iter().map(|l| linalg::real(perm_sign(l))).collect();
        let pi = Rep::from_character(&hg, &sign).unwrap();
        let ind = induce(&h, &pi).unwrap();
        assert_eq!(ind.dim(), h.index());
        assert!(ind.defects().max() < 1e-12);
        let formula = induced_character(&h, &pi.character());
        let diff = ind.character().iter().zip(&formula).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(diff < 1e-9);
    }

    #[test]
    fn invariant_subspaces() {
        let g = s3();
        let whole = Subgroup::whole(&g);
        assert_eq!(invariant_subspace(&Rep::trivial(&g), &whole).unwrap().ncols(), 1);
        assert_eq!(invariant_subspace(&Rep::regular(&g), &whole).unwrap().ncols(), 1);
        let t = subgroup_generate(&g, &[1]).unwrap();
        assert_eq!(invariant_subspace(&Rep::regular(&g), &t).unwrap().ncols(), 3);
    }

    #[test]
    fn rep_json_roundtrip() {
        let g = s3();
        let r = Rep::regular(&g);
        let j: RepJson = serde_json::from_str(&serde_json::to_string(&RepJson::from(&r)).unwrap()).unwrap();
        let back = j.into_rep(&g, 1e-12).unwrap();
        assert_eq!(back.matrices(), r.matrices());
    }

    #[test]
    fn outer_tensor_character_is_the_product() {
        let g = s3();
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let sign = Rep::from_character(&c2, &[ONE, -ONE]).unwrap();
        let t = Rep::outer_tensor(&[Rep::regular(&g), sign.clone()]);
        assert_eq!(t.dim(), 6);
        assert!(t.defects().max() < 1e-15);
        let chi = t.character();
        assert_eq!(chi[1], linalg::real(-6.0));
    }

    /// Sign of a permutation given in one-line notation with digits `1..n`.
    fn perm_sign(label: &str) -> f64 {
        let p: Vec<usize> = label.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
        let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        if inversions % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}
