//! Block-diagonal presentation of finite-dimensional C*-algebras.
//!
//! A [`BlockAlgebra`] is `M_{d_1} ⊕ ... ⊕ M_{d_k}`. Elements carry one dense
//! complex matrix per block. Flattened coordinates enumerate matrix units block by
//! block, row-major inside each block; every linear map between algebras in this
//! crate is written in those coordinates.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64, ONE};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockAlgebra {
    blocks: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// Position of one matrix unit `e^{(block)}_{row,col}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnitIndex {
    pub block: usize,
    pub row: usize,
    pub col: usize,
}

impl BlockAlgebra {
    pub fn new(dims: &[usize]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::Validation("block list is empty".into()));
        }
        if let Some(i) = dims.iter().position(|&d| d == 0) {
            return Err(Error::Validation(format!("block {i} has dimension 0")));
        }
        Ok(BlockAlgebra { blocks: dims.to_vec(), label: None })
    }

    /// `M_n` as a single block.
    pub fn full(n: usize) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn scalars() -> Self {
        BlockAlgebra { blocks: vec![1], label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// Linear dimension `Σ d_i²`.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|d| d * d).sum()
    }

    /// Dimension of the defining representation, `Σ d_i`.
    pub fn rep_dim(&self) -> usize {
        self.blocks.iter().sum()
    }

    pub fn same_shape(&self, other: &BlockAlgebra) -> bool {
        self.blocks == other.blocks
    }

    /// First flattened coordinate of each block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.blocks.len());
        let mut acc = 0;
        for d in &self.blocks {
            off.push(acc);
            acc += d * d;
        }
        off
    }

    pub fn coord(&self, unit: UnitIndex) -> usize {
        let d = self.blocks[unit.block];
        self.offsets()[unit.block] + unit.row * d + unit.col
    }

    pub fn units(&self) -> Vec<UnitIndex> {
        let mut out = Vec::with_capacity(self.dim());
        for (b, &d) in self.blocks.iter().enumerate() {
            for row in 0..d {
                for col in 0..d {
                    out.push(UnitIndex { block: b, row, col });
                }
            }
        }
        out
    }

    pub fn zero(&self) -> AlgElement {
        AlgElement {
            algebra: self.clone(),
            data: self.blocks.iter().map(|&d| CMat::zeros(d, d)).collect(),
        }
    }

    pub fn unit(&self) -> AlgElement {
        AlgElement {
            algebra: self.clone(),
            data: self.blocks.iter().map(|&d| CMat::identity(d, d)).collect(),
        }
    }

    pub fn matrix_unit(&self, unit: UnitIndex) -> AlgElement {
        let mut z = self.zero();
        z.data[unit.block][(unit.row, unit.col)] = ONE;
        z
    }

    /// Identity on one block, zero elsewhere (the central support of a block).
    pub fn block_unit(&self, block: usize) -> AlgElement {
        let mut z = self.zero();
        let d = self.blocks[block];
        z.data[block] = CMat::identity(d, d);
        z
    }
}

/// Builds `M_{d_1} ⊕ ... ⊕ M_{d_k}`.
pub fn make_algebra(dims: &[usize]) -> Result<BlockAlgebra> {
    BlockAlgebra::new(dims)
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgElement {
    algebra: BlockAlgebra,
    data: Vec<CMat>,
}

impl AlgElement {
    pub fn new(algebra: &BlockAlgebra, data: Vec<CMat>) -> Result<Self> {
        if data.len() != algebra.num_blocks() {
            return Err(Error::Validation(format!(
                "element has {} blocks, algebra has {}",
                data.len(),
                algebra.num_blocks()
            )));
        }
        for (i, (m, &d)) in data.iter().zip(algebra.blocks()).enumerate() {
            if m.shape() != (d, d) {
                return Err(Error::Validation(format!(
                    "block {i} has shape {:?}, expected ({d}, {d})",
                    m.shape()
                )));
            }
        }
        Ok(AlgElement { algebra: algebra.clone(), data })
    }

    pub fn from_coords(algebra: &BlockAlgebra, coords: &[C64]) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::Shape(format!(
                "{} coordinates for an algebra of dimension {}",
                coords.len(),
                algebra.dim()
            )));
        }
        let mut data = Vec::with_capacity(algebra.num_blocks());
        let mut at = 0;
        for &d in algebra.blocks() {
            data.push(CMat::from_row_slice(d, d, &coords[at..at + d * d]));
            at += d * d;
        }
        Ok(AlgElement { algebra: algebra.clone(), data })
    }

    /// Element with the same matrix in a single-block algebra `M_n`.
    pub fn from_matrix(m: CMat) -> Self {
        let n = m.nrows();
        assert_eq!(n, m.ncols(), "square matrix expected");
        AlgElement { algebra: BlockAlgebra { blocks: vec![n], label: None }, data: vec![m] }
    }

    pub fn coords(&self) -> Vec<C64> {
        let mut out = Vec::with_capacity(self.algebra.dim());
        for m in &self.data {
            // row-major flattening
            for r in 0..m.nrows() {
                for c in 0..m.ncols() {
                    out.push(m[(r, c)]);
                }
            }
        }
        out
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn blocks(&self) -> &[CMat] {
        &self.data
    }

    pub fn block(&self, i: usize) -> &CMat {
        &self.data[i]
    }

    pub fn block_mut(&mut self, i: usize) -> &mut CMat {
        &mut self.data[i]
    }

    fn check_same(&self, other: &AlgElement) -> Result<()> {
        if self.algebra.same_shape(&other.algebra) {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "algebras {:?} and {:?} differ",
                self.algebra.blocks(),
                other.algebra.blocks()
            )))
        }
    }

    pub fn checked_mul(&self, other: &AlgElement) -> Result<AlgElement> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a * b))
    }

    pub fn checked_add(&self, other: &AlgElement) -> Result<AlgElement> {
        self.check_same(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    fn zip_with(&self, other: &AlgElement, f: impl Fn(&CMat, &CMat) -> CMat) -> AlgElement {
        AlgElement {
            algebra: self.algebra.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn map_blocks(&self, f: impl Fn(&CMat) -> CMat) -> AlgElement {
        AlgElement { algebra: self.algebra.clone(), data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, s: C64) -> AlgElement {
        self.map_blocks(|m| m * s)
    }

    pub fn adjoint(&self) -> AlgElement {
        self.map_blocks(|m| m.adjoint())
    }

    /// The C*-norm: largest singular value over all blocks.
    pub fn op_norm(&self) -> f64 {
        self.data.iter().map(linalg::spectral_norm).fold(0.0, f64::max)
    }

    /// Largest absolute coordinate; a cheap, basis-dependent defect measure.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(linalg::max_abs).fold(0.0, f64::max)
    }

    pub fn distance(&self, other: &AlgElement) -> Result<f64> {
        self.check_same(other)?;
        Ok((self - other).op_norm())
    }

    pub fn hermitian_defect(&self) -> f64 {
        self.data.iter().map(|m| linalg::max_abs(&(m - m.adjoint()))).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_defect() <= tol
    }

    /// Smallest eigenvalue of the Hermitian part over all blocks.
    pub fn min_eigenvalue(&self) -> f64 {
        self.data
            .iter()
            .map(|m| linalg::hermitian_eigen(m).0.first().copied().unwrap_or(0.0))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn is_positive(&self, tol: f64) -> bool {
        self.is_hermitian(tol) && self.min_eigenvalue() >= -tol
    }

    /// `max(‖p² − p‖, ‖p* − p‖)`.
    pub fn projection_defect(&self) -> f64 {
        let sq = self * self;
        let idem = (&sq - self).op_norm();
        let herm = (&self.adjoint() - self).op_norm();
        idem.max(herm)
    }

    pub fn is_projection(&self, tol: f64) -> bool {
        self.projection_defect() <= tol
    }

    /// Matrix rank of each block.
    pub fn block_ranks(&self, rel: f64) -> Vec<usize> {
        self.data.iter().map(|m| linalg::rank(m, rel)).collect()
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.max_abs() <= tol
    }
}

pub fn op_norm(a: &AlgElement) -> f64 {
    a.op_norm()
}

pub fn is_positive(a: &AlgElement, tol: f64) -> bool {
    a.is_positive(tol)
}

pub fn is_projection(p: &AlgElement, tol: f64) -> bool {
    p.is_projection(tol)
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl<'a> $tr<&'a AlgElement> for &'a AlgElement {
            type Output = AlgElement;
            fn $method(self, rhs: &'a AlgElement) -> AlgElement {
                assert!(
                    self.algebra.same_shape(&rhs.algebra),
                    "algebra mismatch in arithmetic"
                );
                self.zip_with(rhs, |a, b| a $op b)
            }
        }
        impl $tr<AlgElement> for AlgElement {
            type Output = AlgElement;
            fn $method(self, rhs: AlgElement) -> AlgElement {
                &self $op &rhs
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for &AlgElement {
    type Output = AlgElement;
    fn neg(self) -> AlgElement {
        self.map_blocks(|m| -m)
    }
}

impl Mul<C64> for &AlgElement {
    type Output = AlgElement;
    fn mul(self, s: C64) -> AlgElement {
        self.scale(s)
    }
}

/// JSON shape: `{"algebra": {...}, "data": [[[re,im], ...], ...]}` with one
/// row-major list per block.
#[derive(Serialize, Deserialize)]
pub struct AlgElementJson {
    pub algebra: BlockAlgebra,
    pub data: Vec<Vec<[f64; 2]>>,
}

impl From<&AlgElement> for AlgElementJson {
    fn from(a: &AlgElement) -> Self {
        AlgElementJson {
            algebra: a.algebra.clone(),
            data: a
                .data
                .iter()
                .map(|m| {
                    let mut v = Vec::with_capacity(m.len());
                    for r in 0..m.nrows() {
                        for c in 0..m.ncols() {
                            v.push([m[(r, c)].re, m[(r, c)].im]);
                        }
                    }
                    v
                })
                .collect(),
        }
    }
}

impl TryFrom<AlgElementJson> for AlgElement {
    type Error = Error;
    fn try_from(j: AlgElementJson) -> Result<Self> {
        let alg = BlockAlgebra::new(&j.algebra.blocks)?;
        if j.data.len() != alg.num_blocks() {
            return Err(Error::Validation("block count mismatch in element data".into()));
        }
        let mut data = Vec::new();
        for (flat, &d) in j.data.iter().zip(alg.blocks()) {
            if flat.len() != d * d {
                return Err(Error::Validation(format!(
                    "block of dimension {d} needs {} entries, got {}",
                    d * d,
                    flat.len()
                )));
            }
            let vals: Vec<C64> = flat.iter().map(|p| C64::new(p[0], p[1])).collect();
            data.push(CMat::from_row_slice(d, d, &vals));
        }
        let alg = match j.algebra.label {
            Some(l) => alg.with_label(l),
            None => alg,
        };
        AlgElement::new(&alg, data)
    }
}

impl Serialize for AlgElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgElementJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = AlgElementJson::deserialize(d)?;
        AlgElement::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// Diagonal element helper used in tests and fixtures.
pub fn diag(algebra: &BlockAlgebra, entries: &[C64]) -> Result<AlgElement> {
    if entries.len() != algebra.rep_dim() {
        return Err(Error::Shape("diagonal length must equal Σ d_i".into()));
    }
    let mut z = algebra.zero();
    let mut at = 0;
    for (b, &d) in algebra.blocks().iter().enumerate() {
        for i in 0..d {
            z.data[b][(i, i)] = entries[at];
            at += 1;
        }
    }
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c64, random_complex, real};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m2(vals: [f64; 4]) -> AlgElement {
        let a = BlockAlgebra::full(2).unwrap();
        AlgElement::new(&a, vec![CMat::from_row_slice(2, 2, &vals.map(real))]).unwrap()
    }

    #[test]
    fn make_algebra_dimensions() {
        assert_eq!(make_algebra(&[1]).unwrap().dim(), 1);
        assert_eq!(make_algebra(&[2]).unwrap().dim(), 4);
        assert_eq!(make_algebra(&[1, 2]).unwrap().dim(), 5);
        assert!(make_algebra(&[]).is_err());
        assert!(make_algebra(&[2, 0]).is_err());
    }

    #[test]
    fn op_norm_examples() {
        let a = BlockAlgebra::full(2).unwrap();
        assert!((a.unit().op_norm() - 1.0).abs() < 1e-15);
        assert_eq!(a.zero().op_norm(), 0.0);
        // Oracle: singular values are square roots of eig(a*a) = {9, 16}.
        let d = m2([3.0, 0.0, 0.0, -4.0]);
        let (ev, _) = linalg::hermitian_eigen(&(d.block(0).adjoint() * d.block(0)));
        let oracle = ev.last().unwrap().sqrt();
        assert!((d.op_norm() - oracle).abs() < 1e-12);
        assert!((d.op_norm() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn positivity_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = BlockAlgebra::new(&[1, 3]).unwrap();
        let b = AlgElement::new(
            &a,
            vec![random_complex(&mut rng, 1, 1), random_complex(&mut rng, 3, 3)],
        )
        .unwrap();
        assert!((&b.adjoint() * &b).is_positive(1e-9));
        assert!(!(-&a.unit()).is_positive(1e-9));
        // Hermitian with spectrum {1, -0.5}: rotate diag(1, -0.5) by a real rotation.
        let (c, s) = (0.6f64, 0.8f64);
        let h = m2([
            c * c - 0.5 * s * s,
            c * s + 0.5 * c * s,
            c * s + 0.5 * c * s,
            s * s - 0.5 * c * c,
        ]);
        let (ev, _) = linalg::hermitian_eigen(h.block(0));
        assert!((ev[0] + 0.5).abs() < 1e-12 && (ev[1] - 1.0).abs() < 1e-12);
        assert!(!h.is_positive(1e-9));
    }

    #[test]
    fn projection_examples() {
        let a = BlockAlgebra::full(2).unwrap();
        assert!(a.unit().is_projection(1e-12));
        assert!(a.matrix_unit(UnitIndex { block: 0, row: 0, col: 0 }).is_projection(1e-12));
        let half = m2([0.5, 0.5, 0.5, 0.5]);
        let sq = half.block(0) * half.block(0);
        assert!(linalg::max_abs(&(sq - half.block(0))) < 1e-15);
        assert!(half.is_projection(1e-12));
        assert!(!m2([1.0, 1.0, 0.0, 0.0]).is_projection(1e-9));
    }

    #[test]
    fn coords_roundtrip_and_units() {
        let a = BlockAlgebra::new(&[1, 2]).unwrap();
        let coords: Vec<C64> = (0..5).map(|i| c64(i as f64, -(i as f64))).collect();
        let e = AlgElement::from_coords(&a, &coords).unwrap();
        assert_eq!(e.coords(), coords);
        assert_eq!(e.block(1)[(0, 1)], c64(2.0, -2.0));
        let u = UnitIndex { block: 1, row: 1, col: 0 };
        assert_eq!(a.coord(u), 3);
        assert_eq!(a.units()[3], u);
    }

    #[test]
    fn json_shape() {
        let a = BlockAlgebra::new(&[1, 2]).unwrap();
        let v = serde_json::to_value(&a).unwrap();
        assert_eq!(v, serde_json::json!({"blocks": [1, 2]}));
        let e = a.unit();
        let s = serde_json::to_string(&e).unwrap();
        assert!(s.starts_with("{\"algebra\":{\"blocks\":[1,2]},\"data\":[[[1.0,0.0]]"));
        let back: AlgElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
        assert!(serde_json::from_str::<AlgElement>(
            r#"{"algebra":{"blocks":[2]},"data":[[[1,0]]]}"#
        )
        .is_err());
    }
}
