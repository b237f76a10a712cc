//! Dense complex linear algebra shared by every other module.
//!
//! Everything is built on `nalgebra` matrices over `Complex<f64>`. The helpers here
//! stay small: Kronecker products, Hermitian eigendecompositions, ranks and null
//! spaces via SVD, and the intertwiner solver used to compare representations.

use nalgebra::{DMatrix, DVector, SymmetricEigen, SVD};
use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

pub type C64 = Complex<f64>;
pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub const ZERO: C64 = Complex { re: 0.0, im: 0.0 };
pub const ONE: C64 = Complex { re: 1.0, im: 0.0 };

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

#[inline]
pub fn real(re: f64) -> C64 {
    Complex::new(re, 0.0)
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

/// Kronecker product of a list of matrices, first factor most significant.
pub fn kron_many<'a, I>(mats: I) -> CMat
where
    I: IntoIterator<Item = &'a CMat>,
{
    let mut acc = CMat::from_element(1, 1, ONE);
    for m in mats {
        acc = acc.kronecker(m);
    }
    acc
}

/// Singular values in descending order.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.partial_cmp(a).unwrap());
    s
}

pub fn spectral_norm(m: &CMat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Largest absolute entry; the cheap defect measure used for identity checks.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn frobenius(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
///
/// The input is symmetrized first so that roundoff asymmetry does not leak in.
pub fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let h = (m + m.adjoint()).scale(0.5);
    let eig = SymmetricEigen::new(h);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Threshold below which singular values count as zero: `rel * max(s)`,
/// floored at `abs_floor` so that the zero matrix has rank 0.
fn cutoff(svals: &[f64], rel: f64, abs_floor: f64) -> f64 {
    let top = svals.first().copied().unwrap_or(0.0);
    (rel * top).max(abs_floor)
}

pub fn rank(m: &CMat, rel: f64) -> usize {
    let s = singular_values(m);
    let cut = cutoff(&s, rel, 1e-12);
    s.iter().filter(|&&x| x > cut).count()
}

fn full_svd(m: &CMat) -> (CMat, Vec<f64>, CMat) {
    // Pad to a square matrix so that U and V are both complete unitaries.
    let n = m.nrows().max(m.ncols());
    let mut sq = CMat::zeros(n, n);
    sq.view_mut((0, 0), (m.nrows(), m.ncols())).copy_from(m);
    let svd = SVD::new(sq, true, true);
    let u = svd.u.expect("requested U");
    let vt = svd.v_t.expect("requested V^T");
    let s: Vec<f64> = svd.singular_values.iter().copied().collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| s[b].partial_cmp(&s[a]).unwrap());
    let mut u2 = CMat::zeros(n, n);
    let mut v2 = CMat::zeros(n, n);
    let v = vt.adjoint();
    let mut s2 = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        u2.set_column(dst, &u.column(src));
        v2.set_column(dst, &v.column(src));
        s2.push(s[src]);
    }
    (u2, s2, v2)
}

/// Orthonormal basis (as columns) of the null space of `m`.
pub fn null_space(m: &CMat, rel: f64) -> CMat {
    let cols = m.ncols();
    if cols == 0 {
        return CMat::zeros(0, 0);
    }
    if m.nrows() == 0 {
        return CMat::identity(cols, cols);
    }
    let (_, s, v) = full_svd(m);
    let cut = cutoff(&s, rel, 1e-12);
    let r = s.iter().take(m.nrows().min(cols)).filter(|&&x| x > cut).count();
    v.view((0, r), (cols, cols - r)).into_owned()
}

/// Orthonormal basis (as columns) of the column space of `m`.
pub fn range_basis(m: &CMat, rel: f64) -> CMat {
    if m.nrows() == 0 || m.ncols() == 0 {
        return CMat::zeros(m.nrows(), 0);
    }
    let (u, s, _) = full_svd(m);
    let cut = cutoff(&s, rel, 1e-12);
    let r = s.iter().take(m.nrows().min(m.ncols())).filter(|&&x| x > cut).count();
    u.view((0, 0), (m.nrows(), r)).into_owned()
}

/// Unitary factor of the polar decomposition, `U V^*` from the SVD.
pub fn polar_unitary(t: &CMat) -> CMat {
    let (u, _, v) = full_svd(t);
    let r = t.nrows();
    let c = t.ncols();
    let k = r.min(c);
    u.view((0, 0), (r, k)) * v.view((0, 0), (c, k)).adjoint()
}

/// Square root and inverse square root of a positive definite Hermitian matrix.
pub fn psd_sqrt_pair(m: &CMat) -> (CMat, CMat) {
    let (vals, vecs) = hermitian_eigen(m);
    let n = vals.len();
    let mut s = CMat::zeros(n, n);
    let mut si = CMat::zeros(n, n);
    for (i, &l) in vals.iter().enumerate() {
        let l = l.max(0.0);
        s[(i, i)] = real(l.sqrt());
        si[(i, i)] = if l > 0.0 { real(1.0 / l.sqrt()) } else { ZERO };
    }
    (&vecs * &s * vecs.adjoint(), &vecs * si * vecs.adjoint())
}

pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMat {
    CMat::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        c64(re, im)
    })
}

pub fn random_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    let g = random_complex(rng, n, n);
    (&g + g.adjoint()).scale(0.5)
}

/// Haar-ish random unitary (polar part of a Gaussian matrix).
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    polar_unitary(&random_complex(rng, n, n))
}

/// Solves `T src[i] = dst[i] T` for all `i` and returns a basis of solutions.
///
/// `src` matrices are `p x p`, `dst` matrices are `q x q`, solutions `q x p`.
pub fn intertwiner_space(src: &[CMat], dst: &[CMat], rel: f64) -> Vec<CMat> {
    assert_eq!(src.len(), dst.len());
    let p = src.first().map_or(0, |m| m.nrows());
    let q = dst.first().map_or(0, |m| m.nrows());
    if p == 0 || q == 0 {
        return Vec::new();
    }
    let unknowns = p * q;
    let ip = CMat::identity(p, p);
    let iq = CMat::identity(q, q);
    // vec is column-major: vec(T A) = (A^T (x) I_q) vec T and vec(B T) = (I_p (x) B) vec T.
    let mut system = CMat::zeros(unknowns * src.len(), unknowns);
    for (i, (a, b)) in src.iter().zip(dst).enumerate() {
        let block = a.transpose().kronecker(&iq) - ip.kronecker(b);
        system.view_mut((i * unknowns, 0), (unknowns, unknowns)).copy_from(&block);
    }
    // QR first so the SVD runs on a square factor without squaring the spectrum.
    let r = system.qr().r();
    null_space(&r, rel)
        .column_iter()
        .map(|col| CMat::from_column_slice(q, p, col.clone_owned().as_slice()))
        .collect()
}

/// Finds a unitary `U` with `U src[i] U^* = dst[i]`, if the solution space allows one.
///
/// A generic element of the intertwiner space is invertible when the two families
/// are equivalent; its polar part is then a unitary intertwiner because `T^*T`
/// commutes with the (unitary, *-closed) source family.
pub fn unitary_intertwiner<R: Rng + ?Sized>(
    rng: &mut R,
    src: &[CMat],
    dst: &[CMat],
    rel: f64,
) -> Option<CMat> {
    let p = src.first()?.nrows();
    let q = dst.first()?.nrows();
    if p != q {
        return None;
    }
    let basis = intertwiner_space(src, dst, rel);
    if basis.is_empty() {
        return None;
    }
    let mut t = CMat::zeros(q, p);
    for b in &basis {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        t += b * c64(re, im);
    }
    if rank(&t, 1e-8) < p {
        return None;
    }
    Some(polar_unitary(&t))
}

/// `max_i ||U src[i] - dst[i] U||`, the intertwining defect.
pub fn intertwining_defect(u: &CMat, src: &[CMat], dst: &[CMat]) -> f64 {
    src.iter()
        .zip(dst)
        .map(|(a, b)| max_abs(&(u * a - b * u)))
        .fold(0.0, f64::max)
}

/// `||U^*U - 1|| + ||UU^* - 1||` style unitarity defect (max entry).
pub fn unitarity_defect(u: &CMat) -> f64 {
    let n = u.nrows();
    let m = u.ncols();
    let a = max_abs(&(u.adjoint() * u - CMat::identity(m, m)));
    let b = max_abs(&(u * u.adjoint() - CMat::identity(n, n)));
    a.max(b)
}
