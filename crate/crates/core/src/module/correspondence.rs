//! Correspondences: a Hilbert `A`-module with a left action of another algebra.

use crate::cstar::{AlgElement, BlockAlgebra, UnitIndex};
use crate::error::{Error, Result};
use crate::linalg::{self, CMat, ZERO};
use crate::module::interior::{interior_tensor_from_units, InteriorTensor};
use crate::module::operator::{a_linearity_defect, TraceGeometry};
use crate::module::HModule;
use crate::report::{ReportBuilder, VerificationReport};

/// Images `α(e_u)` of the matrix units of `A'` as operators on the module.
#[derive(Clone, Debug, PartialEq)]
pub struct LeftAction {
    aprime: BlockAlgebra,
    images: Vec<CMat>,
}

impl LeftAction {
    pub fn new(aprime: BlockAlgebra, images: Vec<CMat>) -> Result<Self> {
        if images.len() != aprime.dim() {
            return Err(Error::Shape(format!(
                "{} images for an algebra of dimension {}",
                images.len(),
                aprime.dim()
            )));
        }
        if let Some(m) = images.first() {
            if !m.is_square() || images.iter().any(|x| x.shape() != m.shape()) {
                return Err(Error::Shape("left action images must be square of one size".into()));
            }
        }
        Ok(LeftAction { aprime, images })
    }

    pub fn aprime(&self) -> &BlockAlgebra {
        &self.aprime
    }

    pub fn images(&self) -> &[CMat] {
        &self.images
    }

    pub fn unit_image(&self, k: usize) -> &CMat {
        &self.images[k]
    }

    pub fn apply(&self, a: &AlgElement) -> Result<CMat> {
        if !a.algebra().same_shape(&self.aprime) {
            return Err(Error::Shape("element of a different algebra".into()));
        }
        let m = self.images[0].nrows();
        let mut out = CMat::zeros(m, m);
        for (k, c) in a.coords().iter().enumerate() {
            if *c != ZERO {
                out += &self.images[k] * *c;
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Correspondence {
    pub module: HModule,
    pub left: LeftAction,
}

impl Correspondence {
    pub fn new(module: HModule, left: LeftAction) -> Result<Self> {
        if left.images.first().map(|m| m.nrows()) != Some(module.cdim()) {
            return Err(Error::Shape("left action images do not match the module dimension".into()));
        }
        Ok(Correspondence { module, left })
    }

    pub fn aprime(&self) -> &BlockAlgebra {
        &self.left.aprime
    }

    /// `X ⊗_A H` for `π` given on matrix units, with the induced `A'` representation
    /// as images of the matrix units of `A'`.
    pub fn induce(&self, pi_units: &[CMat]) -> Result<(InteriorTensor, Vec<CMat>)> {
        let t = interior_tensor_from_units(&self.module, pi_units)?;
        let images = self.left.images.iter().map(|a| t.induced(a)).collect();
        Ok((t, images))
    }
}

/// Checks that `α` lands in the adjointable operators and is a *-homomorphism for
/// the module adjoint.
///
/// Entries: `a_linear` (`α(e_u)` commutes with the right action), `star`
/// (`α(e_u)^‡ = α(e_u*)` with `‡` the module adjoint) and `multiplicative`
/// (`α(e_u)α(g) = α(e_u g)` for generating units `g`).
pub fn validate_correspondence(c: &Correspondence, tol: f64) -> VerificationReport {
    let mut rep = ReportBuilder::new("validate_correspondence", tol);
    let x = &c.module;
    let alg = &c.left.aprime;
    let geom = TraceGeometry::of(x);
    let units = alg.units();
    let images = &c.left.images;
    let mut lin: f64 = 0.0;
    let mut star: f64 = 0.0;
    for (k, u) in units.iter().enumerate() {
        lin = lin.max(a_linearity_defect(x, &images[k]));
        let kt = alg.coord(UnitIndex { block: u.block, row: u.col, col: u.row });
        star = star.max(linalg::max_abs(&(geom.adjoint_of(&images[k]) - &images[kt])));
    }
    let mut mult: f64 = 0.0;
    for (a, ua) in units.iter().enumerate() {
        for (g, ug) in units.iter().enumerate() {
            if ug.row != 0 && ug.col != 0 {
                continue;
            }
            let prod = &images[a] * &images[g];
            let d = if ua.block == ug.block && ua.col == ug.row {
                let ag = alg.coord(UnitIndex { block: ua.block, row: ua.row, col: ug.col });
                linalg::max_abs(&(prod - &images[ag]))
            } else {
                linalg::max_abs(&prod)
            };
            mult = mult.max(d);
        }
    }
    rep.defect("a_linear", lin).defect("star", star).defect("multiplicative", mult);
    rep.info("aprime_dim", alg.dim()).info("cdim", x.cdim());
    rep.finish()
}

/// Multiplicity of each block of `A` in a representation given on matrix units,
/// plus the dimension of the part where `π(1)` vanishes.
pub fn rep_multiplicities(a: &BlockAlgebra, units: &[CMat]) -> (Vec<usize>, usize) {
    let d = units.first().map_or(0, |m| m.nrows());
    let mult: Vec<usize> = (0..a.num_blocks())
        .map(|b| linalg::rank(&units[a.coord(UnitIndex { block: b, row: 0, col: 0 })], 1e-8))
        .collect();
    let covered: usize = mult.iter().zip(a.blocks()).map(|(n, db)| n * db).sum();
    (mult, d.saturating_sub(covered))
}

/// `dim` of the commutant of a representation: `Σ_b n_b² + z²` with `z` the
/// dimension of the degenerate part.
pub fn commutant_dimension(a: &BlockAlgebra, units: &[CMat]) -> usize {
    let (mult, z) = rep_multiplicities(a, units);
    mult.iter().map(|n| n * n).sum::<usize>() + z * z
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstar::block_irrep;
    use crate::linalg::random_unitary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn m2_on_c2() -> Correspondence {
        let x = HModule::hilbert_space(2).unwrap();
        let m2 = BlockAlgebra::full(2).unwrap();
        let images = (0..4).map(|k| block_irrep(&m2, 0).unit_matrix(k)).collect();
        Correspondence::new(x, LeftAction::new(m2, images).unwrap()).unwrap()
    }

    #[test]
    fn standard_action_is_valid() {
        let c = m2_on_c2();
        let r = validate_correspondence(&c, 1e-12);
        assert!(r.pass, "{:?}", r.failures());
    }

    #[test]
    fn transpose_action_is_not() {
        let mut c = m2_on_c2();
        c.left.images.swap(1, 2);
        // swapping e12 and e21 keeps the star rule but breaks multiplicativity
        let r = validate_correspondence(&c, 1e-9);
        assert!(!r.pass);
        assert!(r.defect("multiplicative").unwrap() > 0.5);
    }

    #[test]
    fn commutant_dimension_of_sums() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = BlockAlgebra::new(&[1, 2]).unwrap();
        // block-1 irrep twice, plus one zero dimension: 2² + 1².
        let u = random_unitary(&mut rng, 5);
        let units: Vec<CMat> = (0..a.dim())
            .map(|k| {
                let b = block_irrep(&a, 1).unit_matrix(k);
                let mut m = CMat::zeros(5, 5);
                m.view_mut((0, 0), (2, 2)).copy_from(&b);
                m.view_mut((2, 2), (2, 2)).copy_from(&b);
                &u * m * u.adjoint()
            })
            .collect();
        assert_eq!(rep_multiplicities(&a, &units), (vec![0, 2], 1));
        assert_eq!(commutant_dimension(&a, &units), 5);
        // Oracle: solve the commutant equations directly.
        assert_eq!(linalg::intertwiner_space(&units, &units, 1e-9).len(), 5);
    }
}
