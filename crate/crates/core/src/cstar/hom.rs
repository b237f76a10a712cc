//! *-homomorphisms between block algebras, stored as explicit coordinate maps.

use crate::cstar::algebra::{AlgElement, BlockAlgebra, UnitIndex, DEFAULT_TOL};
use crate::cstar::tensor::{tensor_algebra, tensor_elements};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, ZERO};

#[derive(Clone, Debug)]
pub struct StarHom {
    domain: BlockAlgebra,
    codomain: BlockAlgebra,
    /// `codomain.dim() x domain.dim()`; column `k` holds the image of unit `k`.
    matrix: CMat,
    tol: f64,
}

/// Multiplicativity and star-preservation defects of a linear map.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct HomDefects {
    pub multiplicative: f64,
    pub star: f64,
}

impl HomDefects {
    pub fn max(&self) -> f64 {
        self.multiplicative.max(self.star)
    }
}

impl StarHom {
    pub fn new(domain: BlockAlgebra, codomain: BlockAlgebra, matrix: CMat) -> Result<Self> {
        if matrix.shape() != (codomain.dim(), domain.dim()) {
            return Err(Error::Shape(format!(
                "map matrix is {:?}, expected ({}, {})",
                matrix.shape(),
                codomain.dim(),
                domain.dim()
            )));
        }
        Ok(StarHom { domain, codomain, matrix, tol: DEFAULT_TOL })
    }

    /// Builds the map from the images of the domain's matrix units, in unit order.
    pub fn from_unit_images(domain: &BlockAlgebra, images: &[AlgElement]) -> Result<Self> {
        if images.len() != domain.dim() {
            return Err(Error::Shape("one image per matrix unit required".into()));
        }
        let codomain = images
            .first()
            .map(|e| e.algebra().clone())
            .ok_or_else(|| Error::Shape("empty image list".into()))?;
        let mut matrix = CMat::zeros(codomain.dim(), domain.dim());
        for (k, img) in images.iter().enumerate() {
            if !img.algebra().same_shape(&codomain) {
                return Err(Error::Shape("images live in different algebras".into()));
            }
            for (r, v) in img.coords().into_iter().enumerate() {
                matrix[(r, k)] = v;
            }
        }
        Ok(StarHom { domain: domain.clone(), codomain, matrix, tol: DEFAULT_TOL })
    }

    /// A representation on `C^n`: unit images given as `n x n` matrices.
    pub fn from_matrices(domain: &BlockAlgebra, images: Vec<CMat>) -> Result<Self> {
        let elems: Vec<AlgElement> = images.into_iter().map(AlgElement::from_matrix).collect();
        Self::from_unit_images(domain, &elems)
    }

    pub fn identity(a: &BlockAlgebra) -> Self {
        let n = a.dim();
        StarHom { domain: a.clone(), codomain: a.clone(), matrix: CMat::identity(n, n), tol: DEFAULT_TOL }
    }

    /// `a ↦ u a u*` for a unitary `u` of the same algebra.
    pub fn conjugation(u: &AlgElement) -> Self {
        let a = u.algebra();
        let images: Vec<AlgElement> =
            a.units().into_iter().map(|e| &(u * &a.matrix_unit(e)) * &u.adjoint()).collect();
        Self::from_unit_images(a, &images).expect("images share the algebra")
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn domain(&self) -> &BlockAlgebra {
        &self.domain
    }

    pub fn codomain(&self) -> &BlockAlgebra {
        &self.codomain
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn apply(&self, a: &AlgElement) -> Result<AlgElement> {
        if !a.algebra().same_shape(&self.domain) {
            return Err(Error::Shape("element is not in the domain".into()));
        }
        let x = linalg::CVec::from_vec(a.coords());
        let y = &self.matrix * x;
        AlgElement::from_coords(&self.codomain, y.as_slice())
    }

    pub fn image_of_unit(&self, k: usize) -> AlgElement {
        AlgElement::from_coords(&self.codomain, self.matrix.column(k).clone_owned().as_slice())
            .expect("column has codomain length")
    }

    /// For representations (single-block codomain): the image as a plain matrix.
    pub fn unit_matrix(&self, k: usize) -> CMat {
        self.image_of_unit(k).block(0).clone()
    }

    pub fn rep_dim(&self) -> usize {
        self.codomain.rep_dim()
    }

    /// True when the map is identically zero.
    pub fn is_degenerate(&self) -> bool {
        linalg::max_abs(&self.matrix) == 0.0
    }

    pub fn is_injective(&self) -> bool {
        linalg::rank(&self.matrix, 1e-10) == self.domain.dim()
    }

    pub fn compose(&self, inner: &StarHom) -> Result<StarHom> {
        if !inner.codomain.same_shape(&self.domain) {
            return Err(Error::Shape("composition of incompatible maps".into()));
        }
        StarHom::new(inner.domain.clone(), self.codomain.clone(), &self.matrix * &inner.matrix)
    }

    /// Measures `φ(ab) − φ(a)φ(b)` and `φ(a*) − φ(a)*` on matrix units.
    ///
    /// Small domains are checked on every pair of units. Larger ones are checked on
    /// pairs `(u, g)` with `g` in the generating set `{e_{i0}, e_{0j}}` of each block;
    /// multiplicativity on those pairs together with `φ(e_{i0}e_{0j}) =
    /// φ(e_{i0})φ(e_{0j})` implies it on all pairs by induction on word length.
    pub fn defects(&self) -> HomDefects {
        let units = self.domain.units();
        let images: Vec<AlgElement> = (0..units.len()).map(|k| self.image_of_unit(k)).collect();
        let mut star: f64 = 0.0;
        for (k, u) in units.iter().enumerate() {
            let t = UnitIndex { block: u.block, row: u.col, col: u.row };
            let kt = self.domain.coord(t);
            star = star.max((&images[k].adjoint() - &images[kt]).max_abs());
        }
        let generators: Vec<usize> = if units.len() * units.len() <= 4096 {
            (0..units.len()).collect()
        } else {
            (0..units.len())
                .filter(|&k| units[k].row == 0 || units[k].col == 0)
                .collect()
        };
        let zero = self.codomain.zero();
        let mut mult: f64 = 0.0;
        for (a, ua) in units.iter().enumerate() {
            for &b in &generators {
                let ub = units[b];
                let expected = if ua.block == ub.block && ua.col == ub.row {
                    &images[self.domain.coord(UnitIndex { block: ua.block, row: ua.row, col: ub.col })]
                } else {
                    &zero
                };
                let got = &images[a] * &images[b];
                mult = mult.max((&got - expected).max_abs());
            }
        }
        HomDefects { multiplicative: mult, star }
    }
}

pub fn validate_star_hom(phi: &StarHom, tol: f64) -> bool {
    phi.defects().max() <= tol
}

/// `a ↦ a ⊗ p` from `A_F` into `A_F ⊗ A_k`.
///
/// A zero `p` gives the zero map, which [`StarHom::is_degenerate`] reports.
pub fn embed_corner(a_f: &BlockAlgebra, a_k: &BlockAlgebra, p: &AlgElement) -> Result<StarHom> {
    if !p.algebra().same_shape(a_k) {
        return Err(Error::Shape("projection does not live in A_k".into()));
    }
    if !p.is_projection(DEFAULT_TOL) {
        return Err(Error::Validation(format!(
            "p_k is not a projection (defect {:.3e})",
            p.projection_defect()
        )));
    }
    let images: Vec<AlgElement> =
        a_f.units().into_iter().map(|u| tensor_elements(&a_f.matrix_unit(u), p)).collect();
    if images.is_empty() {
        return StarHom::new(a_f.clone(), tensor_algebra(a_f, a_k), CMat::zeros(0, 0));
    }
    StarHom::from_unit_images(a_f, &images)
}

/// One irreducible representation per block: the coordinate projection.
pub fn irreps_of(a: &BlockAlgebra) -> Vec<StarHom> {
    (0..a.num_blocks()).map(|b| block_irrep(a, b)).collect()
}

pub fn block_irrep(a: &BlockAlgebra, block: usize) -> StarHom {
    let d = a.blocks()[block];
    let target = BlockAlgebra::full(d).expect("block dimension is positive");
    let mut m = CMat::from_element(d * d, a.dim(), ZERO);
    let off = a.offsets()[block];
    for i in 0..d * d {
        m[(i, off + i)] = linalg::ONE;
    }
    StarHom::new(a.clone(), target, m).expect("shape by construction")
}

/// Whether `π(p)` has rank at most one for every irreducible `π`, i.e. every block
/// of `p` has matrix rank ≤ 1.
pub fn rank_at_most_one(p: &AlgElement, a: &BlockAlgebra) -> Result<bool> {
    if !p.algebra().same_shape(a) {
        return Err(Error::Shape("projection does not live in the algebra".into()));
    }
    if !p.is_projection(DEFAULT_TOL) {
        return Err(Error::Validation("rank_at_most_one needs a projection".into()));
    }
    Ok(p.block_ranks(1e-8).iter().all(|&r| r <= 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{random_complex, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rand_elem(rng: &mut ChaCha8Rng, a: &BlockAlgebra) -> AlgElement {
        AlgElement::new(a, a.blocks().iter().map(|&d| random_complex(rng, d, d)).collect()).unwrap()
    }

    #[test]
    fn identity_and_conjugation_are_star_homs() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = BlockAlgebra::new(&[1, 2]).unwrap();
        assert!(validate_star_hom(&StarHom::identity(&a), 1e-12));
        let u = AlgElement::new(&a, vec![random_unitary(&mut rng, 1), random_unitary(&mut rng, 2)])
            .unwrap();
        assert!(validate_star_hom(&StarHom::conjugation(&u), 1e-12));
    }

    #[test]
    fn transpose_is_not_multiplicative() {
        let a = BlockAlgebra::full(2).unwrap();
        let images: Vec<AlgElement> = a
            .units()
            .into_iter()
            .map(|u| a.matrix_unit(UnitIndex { block: 0, row: u.col, col: u.row }))
            .collect();
        let t = StarHom::from_unit_images(&a, &images).unwrap();
        // Oracle: e12 e21 = e11 but T(e12)T(e21) = e21 e12 = e22.
        let e12 = a.matrix_unit(UnitIndex { block: 0, row: 0, col: 1 });
        let e21 = a.matrix_unit(UnitIndex { block: 0, row: 1, col: 0 });
        let lhs = t.apply(&(&e12 * &e21)).unwrap();
        let rhs = &t.apply(&e12).unwrap() * &t.apply(&e21).unwrap();
        assert!((&lhs - &rhs).max_abs() > 0.5);
        assert!(!validate_star_hom(&t, 1e-9));
        assert!(t.defects().multiplicative >= 1.0);
    }

    #[test]
    fn embed_corner_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let af = BlockAlgebra::new(&[1, 2]).unwrap();
        let ak = BlockAlgebra::full(2).unwrap();
        let unital = embed_corner(&af, &ak, &ak.unit()).unwrap();
        assert!(validate_star_hom(&unital, 1e-12));
        let uimg = unital.apply(&af.unit()).unwrap();
        assert!((&uimg - &unital.codomain().unit()).max_abs() < 1e-15);

        let e11 = ak.matrix_unit(UnitIndex { block: 0, row: 0, col: 0 });
        let corner = embed_corner(&af, &ak, &e11).unwrap();
        assert!(validate_star_hom(&corner, 1e-12));
        assert!(corner.is_injective());
        for _ in 0..10 {
            let a = rand_elem(&mut rng, &af);
            assert!((corner.apply(&a).unwrap().op_norm() - a.op_norm()).abs() < 1e-12);
        }

        let zero = embed_corner(&af, &ak, &ak.zero()).unwrap();
        assert!(zero.is_degenerate());
        assert!(!zero.is_injective());

        let not_proj = &ak.unit() * crate::linalg::real(2.0);
        assert!(embed_corner(&af, &ak, &not_proj).is_err());
    }

    #[test]
    fn irreps_counts() {
        assert_eq!(irreps_of(&BlockAlgebra::full(2).unwrap()).len(), 1);
        let cm2 = BlockAlgebra::new(&[1, 2]).unwrap();
        let irr = irreps_of(&cm2);
        assert_eq!(irr.iter().map(|p| p.rep_dim()).collect::<Vec<_>>(), vec![1, 2]);
        for p in &irr {
            assert!(validate_star_hom(p, 1e-14));
        }
        let t = tensor_algebra(&cm2, &cm2);
        // Oracle: block pairs enumerate as 2 x 2.
        assert_eq!(irreps_of(&t).len(), cm2.num_blocks() * cm2.num_blocks());
    }

    #[test]
    fn rank_at_most_one_cases() {
        let m2 = BlockAlgebra::full(2).unwrap();
        let e11 = m2.matrix_unit(UnitIndex { block: 0, row: 0, col: 0 });
        assert!(rank_at_most_one(&e11, &m2).unwrap());
        assert!(!rank_at_most_one(&m2.unit(), &m2).unwrap());
        let m23 = BlockAlgebra::new(&[2, 3]).unwrap();
        let p = m23.matrix_unit(UnitIndex { block: 0, row: 0, col: 0 });
        // Oracle: blockwise ranks (1, 0).
        assert_eq!(p.block_ranks(1e-10), vec![1, 0]);
        assert!(rank_at_most_one(&p, &m23).unwrap());
        assert!(rank_at_most_one(&(&m2.unit() * crate::linalg::real(3.0)), &m2).is_err());
    }
}
