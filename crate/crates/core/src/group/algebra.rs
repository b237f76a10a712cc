//! The group algebra `ℂ[G]` with convolution, subgroup projections and Hecke algebras.

use std::ops::{Add, Sub};

use crate::error::{Error, Result};
use crate::group::table::{FiniteGroup, Subgroup};
use crate::linalg::{self, CMat, C64, ONE, ZERO};

/// A function `G → ℂ`, one coefficient per element.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement {
    group: FiniteGroup,
    coeffs: Vec<C64>,
}

/// The modular quasi-character `Δ(h) = δ_G(h)/δ_H(h)` entering induction.
/// Finite groups are unimodular, so it is identically 1.
pub fn modular_delta(_g: &FiniteGroup, _x: usize) -> f64 {
    1.0
}

impl GroupAlgebraElement {
    pub fn new(group: &FiniteGroup, coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::Shape(format!("{} coefficients for a group of order {}", coeffs.len(), group.order())));
        }
        Ok(GroupAlgebraElement { group: group.clone(), coeffs })
    }

    pub fn zero(group: &FiniteGroup) -> Self {
        GroupAlgebraElement { group: group.clone(), coeffs: vec![ZERO; group.order()] }
    }

    pub fn delta(group: &FiniteGroup, x: usize) -> Self {
        let mut f = Self::zero(group);
        f.coeffs[x] = ONE;
        f
    }

    /// `δ_e`, the unit for convolution.
    pub fn unit(group: &FiniteGroup) -> Self {
        Self::delta(group, 0)
    }

    /// The indicator of a set of elements.
    pub fn indicator(group: &FiniteGroup, set: &[usize]) -> Self {
        let mut f = Self::zero(group);
        for &x in set {
            f.coeffs[x] = ONE;
        }
        f
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn at(&self, x: usize) -> C64 {
        self.coeffs[x]
    }

    pub fn scale(&self, s: C64) -> Self {
        GroupAlgebraElement { group: self.group.clone(), coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::Shape("elements of different group algebras".into()))
        }
    }

    /// `max_x |f(x) − g(x)|`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        self.same_group(other)?;
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// `L(f) = Σ f(g) λ(g)` in the left regular representation, `λ(g)δ_x = δ_{gx}`.
    pub fn regular_matrix(&self) -> CMat {
        let n = self.group.order();
        let mut m = CMat::zeros(n, n);
        for (g, &c) in self.coeffs.iter().enumerate() {
            if c != ZERO {
                for x in 0..n {
                    m[(self.group.mul(g, x), x)] += c;
                }
            }
        }
        m
    }

    /// The C*-norm, that of `L(f)`.
    pub fn norm(&self) -> f64 {
        linalg::spectral_norm(&self.regular_matrix())
    }
}

impl Add for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn add(self, rhs: Self) -> GroupAlgebraElement {
        assert!(self.group == rhs.group, "elements of different group algebras");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        GroupAlgebraElement { group: self.group.clone(), coeffs }
    }
}

impl Sub for &GroupAlgebraElement {
    type Output = GroupAlgebraElement;
    fn sub(self, rhs: Self) -> GroupAlgebraElement {
        assert!(self.group == rhs.group, "elements of different group algebras");
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        GroupAlgebraElement { group: self.group.clone(), coeffs }
    }
}

/// `(f ∗ g)(x) = Σ_y f(y) g(y⁻¹x)` with counting weights.
pub fn convolve(f: &GroupAlgebraElement, g: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    f.same_group(g)?;
    let grp = &f.group;
    let mut out = vec![ZERO; grp.order()];
    for (y, &a) in f.coeffs.iter().enumerate() {
        if a == ZERO {
            continue;
        }
        for (z, &b) in g.coeffs.iter().enumerate() {
            if b != ZERO {
                out[grp.mul(y, z)] += a * b;
            }
        }
    }
    Ok(GroupAlgebraElement { group: grp.clone(), coeffs: out })
}

/// `f*(x) = conj(f(x⁻¹))`.
pub fn star(f: &GroupAlgebraElement) -> GroupAlgebraElement {
    let grp = &f.group;
    let coeffs = (0..grp.order()).map(|x| f.coeffs[grp.inv(x)].conj()).collect();
    GroupAlgebraElement { group: grp.clone(), coeffs }
}

/// `p_K = (1/|K|) 1_K`, the projection of volume-one Haar measure on `K`.
pub fn proj_pk(k: &Subgroup) -> GroupAlgebraElement {
    GroupAlgebraElement::indicator(k.parent(), k.members()).scale(linalg::real(1.0 / k.order() as f64))
}

/// `p_K ∗ f ∗ p_K`.
pub fn k_average(k: &Subgroup, f: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    let p = proj_pk(k);
    convolve(&convolve(&p, f)?, &p)
}

/// The Hecke algebra `p_K ∗ ℂ[G] ∗ p_K` with its double-coset basis.
#[derive(Clone, Debug)]
pub struct Hecke {
    pub double_cosets: Vec<Vec<usize>>,
    /// `p_K ∗ δ_g ∗ p_K = 1_D / |D|` for the smallest `g` of each double coset `D`.
    pub basis: Vec<GroupAlgebraElement>,
}

pub fn hecke(k: &Subgroup) -> Hecke {
    let g = k.parent();
    let double_cosets = k.double_cosets(k);
    let basis = double_cosets
        .iter()
        .map(|d| GroupAlgebraElement::indicator(g, d).scale(linalg::real(1.0 / d.len() as f64)))
        .collect();
    Hecke { double_cosets, basis }
}

/// Commutativity of `ℋ(G, K)`, checked on all basis pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct GelfandVerdict {
    pub gelfand: bool,
    /// Largest coefficient of a commutator `h_i ∗ h_j − h_j ∗ h_i`.
    pub defect: f64,
    pub double_cosets: usize,
}

pub fn gelfand_check(k: &Subgroup, tol: f64) -> GelfandVerdict {
    let h = hecke(k);
    let mut defect: f64 = 0.0;
    for i in 0..h.basis.len() {
        for j in 0..i {
            let ab = convolve(&h.basis[i], &h.basis[j]).expect("same group");
            let ba = convolve(&h.basis[j], &h.basis[i]).expect("same group");
            defect = defect.max((&ab - &ba).max_abs());
        }
    }
    GelfandVerdict { gelfand: defect <= tol, defect, double_cosets: h.basis.len() }
}
