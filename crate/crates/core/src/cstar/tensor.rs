//! Spatial tensor products of block algebras and the index bookkeeping that goes
//! with them.
//!
//! Blocks of `A ⊗ B` are `d_i·e_j` in lexicographic `(i, j)` order, and inside a
//! block the row index of `e ⊗ f` is `r_e · dim(f) + r_f` (first factor most
//! significant). Folding binary products from the left reproduces the n-ary
//! [`TensorLayout`] exactly, so both views can be mixed freely.

use crate::cstar::algebra::{AlgElement, BlockAlgebra, UnitIndex};
use crate::linalg::{CMat, ONE};

/// `A ⊗ B` with lexicographically ordered blocks.
pub fn tensor_algebra(a: &BlockAlgebra, b: &BlockAlgebra) -> BlockAlgebra {
    let mut dims = Vec::with_capacity(a.num_blocks() * b.num_blocks());
    for &d in a.blocks() {
        for &e in b.blocks() {
            dims.push(d * e);
        }
    }
    BlockAlgebra::new(&dims).expect("tensor of nonempty algebras is nonempty")
}

/// The element map `(a, b) ↦ a ⊗ b`: blockwise Kronecker products.
pub fn tensor_elements(a: &AlgElement, b: &AlgElement) -> AlgElement {
    let alg = tensor_algebra(a.algebra(), b.algebra());
    let mut data = Vec::with_capacity(alg.num_blocks());
    for x in a.blocks() {
        for y in b.blocks() {
            data.push(x.kronecker(y));
        }
    }
    AlgElement::new(&alg, data).expect("kronecker blocks match tensor shape")
}

/// Ordered tensor product of several algebras, with helpers to move between block
/// tuples / multi-indices and the flattened product algebra.
#[derive(Clone, Debug)]
pub struct TensorLayout {
    factors: Vec<BlockAlgebra>,
    product: BlockAlgebra,
}

impl TensorLayout {
    pub fn new(factors: Vec<BlockAlgebra>) -> Self {
        let mut product = BlockAlgebra::scalars();
        for f in &factors {
            product = tensor_algebra(&product, f);
        }
        TensorLayout { factors, product }
    }

    pub fn factors(&self) -> &[BlockAlgebra] {
        &self.factors
    }

    pub fn product(&self) -> &BlockAlgebra {
        &self.product
    }

    /// Block index of the product for a tuple of factor block indices.
    pub fn block_index(&self, tuple: &[usize]) -> usize {
        let mut idx = 0;
        for (f, &b) in self.factors.iter().zip(tuple) {
            idx = idx * f.num_blocks() + b;
        }
        idx
    }

    pub fn block_tuple(&self, mut block: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (i, f) in self.factors.iter().enumerate().rev() {
            out[i] = block % f.num_blocks();
            block /= f.num_blocks();
        }
        out
    }

    /// Per-factor block dimensions for a product block.
    pub fn block_dims(&self, tuple: &[usize]) -> Vec<usize> {
        self.factors.iter().zip(tuple).map(|(f, &b)| f.blocks()[b]).collect()
    }

    /// Product matrix unit for a list of factor matrix units.
    pub fn unit_of(&self, units: &[UnitIndex]) -> UnitIndex {
        let tuple: Vec<usize> = units.iter().map(|u| u.block).collect();
        let dims = self.block_dims(&tuple);
        let row = mixed_radix(&dims, units.iter().map(|u| u.row));
        let col = mixed_radix(&dims, units.iter().map(|u| u.col));
        UnitIndex { block: self.block_index(&tuple), row, col }
    }

    /// Factor matrix units of a product matrix unit.
    pub fn split_unit(&self, unit: UnitIndex) -> Vec<UnitIndex> {
        let tuple = self.block_tuple(unit.block);
        let dims = self.block_dims(&tuple);
        let rows = split_radix(&dims, unit.row);
        let cols = split_radix(&dims, unit.col);
        tuple
            .iter()
            .zip(rows.iter().zip(&cols))
            .map(|(&block, (&row, &col))| UnitIndex { block, row, col })
            .collect()
    }

    /// `⊗ a_i` for one element per factor.
    pub fn tensor(&self, elems: &[&AlgElement]) -> AlgElement {
        assert_eq!(elems.len(), self.factors.len());
        let mut acc = BlockAlgebra::scalars().unit();
        for e in elems {
            acc = tensor_elements(&acc, e);
        }
        acc
    }
}

/// `Σ digits[i] · Π_{j>i} dims[j]`.
pub fn mixed_radix(dims: &[usize], digits: impl IntoIterator<Item = usize>) -> usize {
    let mut idx = 0;
    for (d, x) in dims.iter().zip(digits) {
        idx = idx * d + x;
    }
    idx
}

pub fn split_radix(dims: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; dims.len()];
    for i in (0..dims.len()).rev() {
        out[i] = idx % dims[i];
        idx /= dims[i];
    }
    out
}

/// Kronecker product whose factors are taken in an interleaved order.
///
/// The output has `row_dims.len()` tensor factors. The factors listed in
/// `inner_pos` (ascending) come from `inner`, a matrix over those factors in the
/// same order; each remaining position `p` is filled by `fill[p]`. Row and column
/// multi-indices are mixed-radix in output order. Used for `a ↦ a ⊗ p` and
/// `w ↦ w ⊗ x` when the new indices sit between old ones.
pub fn interleave(
    row_dims: &[usize],
    col_dims: &[usize],
    inner_pos: &[usize],
    inner: &CMat,
    fill: &[Option<&CMat>],
) -> CMat {
    let n = row_dims.len();
    debug_assert_eq!(col_dims.len(), n);
    debug_assert_eq!(fill.len(), n);
    let inner_row_dims: Vec<usize> = inner_pos.iter().map(|&p| row_dims[p]).collect();
    let inner_col_dims: Vec<usize> = inner_pos.iter().map(|&p| col_dims[p]).collect();
    let rows: usize = row_dims.iter().product();
    let cols: usize = col_dims.iter().product();
    let is_inner: Vec<bool> = (0..n).map(|p| inner_pos.contains(&p)).collect();

    let decompose = |dims: &[usize], inner_dims: &[usize], idx: usize| -> (usize, Vec<usize>) {
        let digits = split_radix(dims, idx);
        let inner_idx = mixed_radix(
            inner_dims,
            inner_pos.iter().map(|&p| digits[p]),
        );
        (inner_idx, digits)
    };
    let row_info: Vec<(usize, Vec<usize>)> =
        (0..rows).map(|r| decompose(row_dims, &inner_row_dims, r)).collect();
    let col_info: Vec<(usize, Vec<usize>)> =
        (0..cols).map(|c| decompose(col_dims, &inner_col_dims, c)).collect();

    let mut out = CMat::zeros(rows, cols);
    for (r, (ri, rd)) in row_info.iter().enumerate() {
        for (c, (ci, cd)) in col_info.iter().enumerate() {
            let mut v = inner[(*ri, *ci)];
            if v.re == 0.0 && v.im == 0.0 {
                continue;
            }
            for p in 0..n {
                if !is_inner[p] {
                    v *= fill[p].map_or(ONE, |m| m[(rd[p], cd[p])]);
                }
            }
            out[(r, c)] = v;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, random_complex};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_element(rng: &mut ChaCha8Rng, a: &BlockAlgebra) -> AlgElement {
        let data = a.blocks().iter().map(|&d| random_complex(rng, d, d)).collect();
        AlgElement::new(a, data).unwrap()
    }

    #[test]
    fn tensor_block_examples() {
        let c = BlockAlgebra::scalars();
        let m2 = BlockAlgebra::full(2).unwrap();
        let cm2 = BlockAlgebra::new(&[1, 2]).unwrap();
        assert_eq!(tensor_algebra(&c, &m2).blocks(), &[2]);
        assert_eq!(tensor_algebra(&cm2, &m2).blocks(), &[2, 4]);
    }

    #[test]
    fn tensor_is_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = BlockAlgebra::new(&[1, 2]).unwrap();
        let b = BlockAlgebra::new(&[2, 3]).unwrap();
        for _ in 0..5 {
            let (x, x2) = (random_element(&mut rng, &a), random_element(&mut rng, &a));
            let (y, y2) = (random_element(&mut rng, &b), random_element(&mut rng, &b));
            let lhs = &tensor_elements(&x, &y) * &tensor_elements(&x2, &y2);
            let rhs = tensor_elements(&(&x * &x2), &(&y * &y2));
            // Oracle: direct Kronecker of block matrices, compared blockwise.
            for (i, xb) in (&x * &x2).blocks().iter().enumerate() {
                for (j, yb) in (&y * &y2).blocks().iter().enumerate() {
                    let k = i * b.num_blocks() + j;
                    assert!(max_abs(&(lhs.block(k) - xb.kronecker(yb))) < 1e-12);
                }
            }
            assert!((&lhs - &rhs).max_abs() < 1e-12);
        }
    }

    #[test]
    fn associativity_of_blocks() {
        let a = BlockAlgebra::new(&[1, 2]).unwrap();
        let b = BlockAlgebra::new(&[3]).unwrap();
        let c = BlockAlgebra::new(&[1, 1]).unwrap();
        let left = tensor_algebra(&tensor_algebra(&a, &b), &c);
        let right = tensor_algebra(&a, &tensor_algebra(&b, &c));
        assert_eq!(left.blocks(), right.blocks());
        let layout = TensorLayout::new(vec![a, b, c]);
        assert_eq!(layout.product().blocks(), left.blocks());
    }

    #[test]
    fn layout_unit_roundtrip() {
        let layout = TensorLayout::new(vec![
            BlockAlgebra::new(&[1, 2]).unwrap(),
            BlockAlgebra::new(&[2, 1]).unwrap(),
        ]);
        for u in layout.product().units() {
            let parts = layout.split_unit(u);
            assert_eq!(layout.unit_of(&parts), u);
            let e = layout.tensor(&[
                &layout.factors()[0].matrix_unit(parts[0]),
                &layout.factors()[1].matrix_unit(parts[1]),
            ]);
            assert_eq!(e, layout.product().matrix_unit(u));
        }
    }

    #[test]
    fn interleave_matches_permuted_kron() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_complex(&mut rng, 2, 2);
        let c = random_complex(&mut rng, 3, 3);
        let b = random_complex(&mut rng, 2, 2);
        // inner = a ⊗ c at positions 0, 2; b fills position 1.
        let inner = a.kronecker(&c);
        let out = interleave(&[2, 2, 3], &[2, 2, 3], &[0, 2], &inner, &[None, Some(&b), None]);
        let direct = a.kronecker(&b).kronecker(&c);
        assert!(max_abs(&(out - direct)) < 1e-14);
    }
}
