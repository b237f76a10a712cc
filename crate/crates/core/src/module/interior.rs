//! Balanced tensor products `X ⊗_A H` with a representation of `A`.

use crate::cstar::StarHom;
use crate::error::{Error, Result};
use crate::linalg::{self, CMat};
use crate::module::HModule;

/// Eigenvalues below this fraction of the largest are treated as relations.
pub const NULL_CUTOFF: f64 = 1e-8;

/// The Hilbert space `X ⊗_A H` in orthonormal coordinates.
///
/// Vectors of `X ⊗ H` are indexed `i * dim H + a`. The quotient map `Q` sends them
/// to orthonormal coordinates of the completion and `L` is a right inverse of `Q`
/// supported on the orthogonal complement of the relations.
#[derive(Clone, Debug)]
pub struct InteriorTensor {
    pub cdim: usize,
    pub hdim: usize,
    pub quotient: CMat,
    pub lift: CMat,
    /// Largest discarded eigenvalue and smallest kept one, for auditing the cutoff.
    pub discarded_max: f64,
    pub kept_min: f64,
}

impl InteriorTensor {
    pub fn dim(&self) -> usize {
        self.quotient.nrows()
    }

    pub fn null_dim(&self) -> usize {
        self.cdim * self.hdim - self.dim()
    }

    /// The operator induced by an adjointable `T` on `X`: `Q (T ⊗ 1) L`.
    pub fn induced(&self, t: &CMat) -> CMat {
        let big = t.kronecker(&CMat::identity(self.hdim, self.hdim));
        &self.quotient * big * &self.lift
    }

    /// Image of a simple tensor `x ⊗ h`.
    pub fn simple(&self, x: &linalg::CVec, h: &linalg::CVec) -> linalg::CVec {
        &self.quotient * x.kronecker(h)
    }
}

/// Semi-inner product matrix `⟨x_i ⊗ h_a, x_j ⊗ h_b⟩ = Σ_k G_k[i, j] π(e_k)[a, b]`.
pub fn balanced_gram(x: &HModule, pi_units: &[CMat]) -> Result<CMat> {
    if pi_units.len() != x.algebra().dim() {
        return Err(Error::Shape("one representation matrix per matrix unit required".into()));
    }
    let d = pi_units.first().map_or(0, |m| m.nrows());
    let m = x.cdim();
    let mut g = CMat::zeros(m * d, m * d);
    for (k, i, j, v) in x.gram_tensor().iter() {
        let p = &pi_units[k];
        for a in 0..d {
            for b in 0..d {
                g[(i * d + a, j * d + b)] += v * p[(a, b)];
            }
        }
    }
    Ok(g)
}

pub fn interior_tensor(x: &HModule, pi: &StarHom) -> Result<InteriorTensor> {
    if !pi.domain().same_shape(x.algebra()) {
        return Err(Error::Shape("representation of a different algebra".into()));
    }
    if pi.codomain().num_blocks() != 1 {
        return Err(Error::Shape("representation must land in a single matrix block".into()));
    }
    let units: Vec<CMat> = (0..x.algebra().dim()).map(|k| pi.unit_matrix(k)).collect();
    interior_tensor_from_units(x, &units)
}

/// Same as [`interior_tensor`] with `π` given by the images of the matrix units.
pub fn interior_tensor_from_units(x: &HModule, pi_units: &[CMat]) -> Result<InteriorTensor> {
    let hdim = pi_units.first().map_or(0, |m| m.nrows());
    let g = balanced_gram(x, pi_units)?;
    let (vals, vecs) = linalg::hermitian_eigen(&g);
    let top = vals.last().copied().unwrap_or(0.0).max(0.0);
    let cut = NULL_CUTOFF * top;
    let keep: Vec<usize> = (0..vals.len()).filter(|&i| top > 0.0 && vals[i] > cut).collect();
    let n = g.nrows();
    let r = keep.len();
    let mut quotient = CMat::zeros(r, n);
    let mut lift = CMat::zeros(n, r);
    for (row, &i) in keep.iter().enumerate() {
        let s = vals[i].sqrt();
        let col = vecs.column(i);
        for c in 0..n {
            quotient[(row, c)] = col[c].conj() * s;
            lift[(c, row)] = col[c] / s;
        }
    }
    let discarded_max = vals.iter().filter(|&&v| !(top > 0.0 && v > cut)).fold(0.0f64, |a, &v| a.max(v.abs()));
    let kept_min = keep.iter().map(|&i| vals[i]).fold(f64::INFINITY, f64::min);
    Ok(InteriorTensor { cdim: x.cdim(), hdim, quotient, lift, discarded_max, kept_min })
}

/// Largest image under `Q` of a relation `x·a ⊗ h − x ⊗ π(a)h`, over basis `x`, `h`
/// and matrix units `a`.
pub fn relation_defect(x: &HModule, pi_units: &[CMat], t: &InteriorTensor) -> f64 {
    let d = t.hdim;
    let id_d = CMat::identity(d, d);
    let id_m = CMat::identity(x.cdim(), x.cdim());
    (0..x.algebra().dim())
        .map(|k| {
            let rel = x.unit_action(k).kronecker(&id_d) - id_m.kronecker(&pi_units[k]);
            linalg::max_abs(&(&t.quotient * rel))
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstar::{block_irrep, BlockAlgebra, StarHom};
    use crate::linalg::random_unitary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_module_gives_back_h() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a = BlockAlgebra::new(&[1, 2]).unwrap();
        let x = HModule::canonical(&a);
        // π = irrep on block 1 conjugated by a random unitary, plus the block-0 irrep summed in.
        let u = random_unitary(&mut rng, 3);
        let units: Vec<CMat> = (0..a.dim())
            .map(|k| {
                let mut m = CMat::zeros(3, 3);
                let b0 = block_irrep(&a, 0).unit_matrix(k);
                let b1 = block_irrep(&a, 1).unit_matrix(k);
                m.view_mut((0, 0), (1, 1)).copy_from(&b0);
                m.view_mut((1, 1), (2, 2)).copy_from(&b1);
                &u * m * u.adjoint()
            })
            .collect();
        let pi = StarHom::from_matrices(&a, units.clone()).unwrap();
        let t = interior_tensor(&x, &pi).unwrap();
        assert_eq!(t.dim(), 3);
        assert_eq!(t.null_dim(), x.cdim() * 3 - 3);
        assert!(relation_defect(&x, &units, &t) < 1e-9);
        // Pairing preserved: Qᴴ Q reproduces the semi-inner product.
        let g = balanced_gram(&x, &units).unwrap();
        assert!(linalg::max_abs(&(t.quotient.adjoint() * &t.quotient - g)) < 1e-9);
    }

    #[test]
    fn dimension_counts_multiplicities() {
        // X = e A for e = (1, e11) in C ⊕ M2; with the M2 irrep, X ⊗ H has dimension 1.
        let a = BlockAlgebra::new(&[1, 2]).unwrap();
        let x = HModule::right_ideal(&a, &[1, 1]).unwrap();
        let t = interior_tensor(&x, &block_irrep(&a, 1)).unwrap();
        assert_eq!(t.dim(), 1);
        let t0 = interior_tensor(&x, &block_irrep(&a, 0)).unwrap();
        assert_eq!(t0.dim(), 1);
        assert!(t.kept_min > 1e3 * t.discarded_max.max(1e-300) || t.discarded_max < 1e-12);
    }
}
