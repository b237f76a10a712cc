//! Irreducible representations, decomposition, and the Fourier isomorphism
//! `ℂ[G] ≅ ⊕_i M_{d_i}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cstar::{AlgElement, BlockAlgebra, StarHom, UnitIndex};
use crate::error::{Error, Result};
use crate::group::algebra::GroupAlgebraElement;
use crate::group::rep::{character_inner, Rep};
use crate::group::table::FiniteGroup;
use crate::linalg::{self, CMat, C64, ZERO};

/// Redraws allowed before giving up on a non-degenerate commutant element.
const MAX_DRAWS: usize = 32;

/// Gap below which two commutant eigenvalues are treated as one.
const EIGEN_GAP: f64 = 1e-7;

/// The irreducible unitary representations of a group, one per class of irreps.
///
/// Irreps are ordered by dimension, then by character values compared element by
/// element (larger real part first, then larger imaginary part). The trivial
/// representation is always first. The ordering depends only on the characters,
/// so it does not depend on the seed; the matrices do, up to unitary equivalence.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: FiniteGroup,
    irreps: Vec<Rep>,
    characters: Vec<Vec<C64>>,
    classes: Vec<Vec<usize>>,
    draws: usize,
}

/// Multiplicities of the irreps in a representation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    /// `(label, dimension, multiplicity)` for each irrep occurring.
    pub parts: Vec<(String, usize, usize)>,
    /// Largest distance of a character inner product from the nearest integer.
    pub defect: f64,
}

impl Decomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.parts.iter().flat_map(|&(_, d, m)| std::iter::repeat_n(d, m)).collect()
    }
}

impl CharacterTable {
    /// Irreps from the eigenspaces of a random self-adjoint element of the
    /// commutant of the left regular representation, re-drawn until every
    /// eigenspace is irreducible.
    pub fn compute(group: &FiniteGroup, seed: u64) -> Result<Self> {
        let n = group.order();
        let lambda: Vec<CMat> = (0..n).map(|g| GroupAlgebraElement::delta(group, g).regular_matrix()).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for draw in 1..=MAX_DRAWS {
            if let Some(found) = Self::attempt(group, &lambda, &mut rng) {
                let (irreps, characters) = found;
                return Ok(CharacterTable { group: group.clone(), irreps, characters, classes: group.conjugacy_classes(), draws: draw });
            }
        }
        Err(Error::Validation(format!("no non-degenerate commutant element in {MAX_DRAWS} draws")))
    }

    fn attempt(group: &FiniteGroup, lambda: &[CMat], rng: &mut ChaCha8Rng) -> Option<(Vec<Rep>, Vec<Vec<C64>>)> {
        let n = group.order();
        // H = Σ c_g ρ(g) with ρ the right regular representation, ρ(g)δ_x = δ_{xg⁻¹}.
        let scale = 1.0 / (n as f64).sqrt();
        let raw: Vec<C64> =
            (0..n).map(|_| linalg::c64(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))).collect();
        let mut h = CMat::zeros(n, n);
        for g in 0..n {
            let c = (raw[g] + raw[group.inv(g)].conj()) * linalg::real(0.5 * scale);
            for x in 0..n {
                h[(group.mul(x, group.inv(g)), x)] += c;
            }
        }
        let (vals, vecs) = linalg::hermitian_eigen(&h);
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            match clusters.last_mut() {
                Some(c) if (vals[i] - vals[*c.last().expect("nonempty")]).abs() < EIGEN_GAP => c.push(i),
                _ => clusters.push(vec![i]),
            }
        }
        let mut found: Vec<(Rep, Vec<C64>, usize)> = Vec::new();
        for c in &clusters {
            let v = CMat::from_fn(n, c.len(), |r, k| vecs[(r, c[k])]);
            let mats: Vec<CMat> = lambda.iter().map(|l| v.adjoint() * l * &v).collect();
            let rep = Rep::new(group, mats).ok()?;
            let chi = rep.character();
            let norm = character_inner(group, &chi, &chi);
            if (norm.re - 1.0).abs() > 1e-6 {
                return None;
            }
            match found.iter_mut().find(|(_, x, _)| max_diff(x, &chi) < 1e-6) {
                Some(entry) => entry.2 += 1,
                None => found.push((rep, chi, 1)),
            }
        }
        // Each irrep occurs in the regular representation as often as its dimension.
        if found.iter().any(|(r, _, copies)| *copies != r.dim()) {
            return None;
        }
        found.sort_by(|a, b| a.0.dim().cmp(&b.0.dim()).then_with(|| character_order(&a.1, &b.1)));
        let characters = found.iter().map(|(_, chi, _)| chi.clone()).collect();
        Some((found.into_iter().map(|(r, _, _)| r).collect(), characters))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn irreps(&self) -> &[Rep] {
        &self.irreps
    }

    pub fn irrep(&self, i: usize) -> &Rep {
        &self.irreps[i]
    }

    pub fn len(&self) -> usize {
        self.irreps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.irreps.iter().map(Rep::dim).collect()
    }

    pub fn character(&self, i: usize) -> &[C64] {
        &self.characters[i]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Commutant elements drawn before success.
    pub fn draws(&self) -> usize {
        self.draws
    }

    /// `"trivial"` for the first irrep and `"char{i}"` otherwise.
    pub fn label(&self, i: usize) -> String {
        if i == 0 {
            "trivial".into()
        } else {
            format!("char{i}")
        }
    }

    /// Inverse of [`CharacterTable::label`].
    pub fn find(&self, label: &str) -> Result<usize> {
        let i = match label {
            "trivial" => 0,
            _ => label
                .strip_prefix("char")
                .and_then(|s| s.parse::<usize>().ok())
                .ok_or_else(|| Error::Parse(format!("unknown irrep label {label:?}")))?,
        };
        if i >= self.len() {
            return Err(Error::Parse(format!("{label} out of range: the group has {} irreps", self.len())));
        }
        Ok(i)
    }

    /// Character values on the conjugacy classes, one row per irrep.
    pub fn class_values(&self) -> Vec<Vec<C64>> {
        self.characters.iter().map(|chi| self.classes.iter().map(|c| chi[c[0]]).collect()).collect()
    }

    /// Multiplicities `⟨χ_π, χ_i⟩` rounded to integers.
    pub fn decompose(&self, pi: &Rep) -> Result<Decomposition> {
        if pi.group() != &self.group {
            return Err(Error::Validation("representation of another group".into()));
        }
        let chi = pi.character();
        let mut parts = Vec::new();
        let mut defect: f64 = 0.0;
        for (i, c) in self.characters.iter().enumerate() {
            let m = character_inner(&self.group, c, &chi);
            let rounded = m.re.round();
            defect = defect.max((m - linalg::real(rounded)).norm());
            if rounded >= 0.5 {
                parts.push((self.label(i), self.irreps[i].dim(), rounded as usize));
            }
        }
        Ok(Decomposition { parts, defect })
    }
}

/// Decomposes `π` against a freshly computed character table.
pub fn decompose_rep(pi: &Rep, seed: u64) -> Result<Decomposition> {
    CharacterTable::compute(pi.group(), seed)?.decompose(pi)
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn character_order(a: &[C64], b: &[C64]) -> std::cmp::Ordering {
    let q = |x: f64| (x * 1e6).round() as i64;
    for (x, y) in a.iter().zip(b) {
        let ord = q(y.re).cmp(&q(x.re)).then(q(y.im).cmp(&q(x.im)));
        if ord.is_ne() {
            return ord;
        }
    }
    std::cmp::Ordering::Equal
}

/// `ℂ[G] ≅ ⊕_i M_{d_i}` through `f ↦ (Σ_g f(g) π_i(g))_i`.
#[derive(Clone, Debug)]
pub struct Fourier {
    table: CharacterTable,
    algebra: BlockAlgebra,
}

impl Fourier {
    pub fn new(table: CharacterTable) -> Self {
        let algebra = BlockAlgebra::new(&table.dims()).expect("positive dims");
        Fourier { table, algebra }
    }

    pub fn compute(group: &FiniteGroup, seed: u64) -> Result<Self> {
        Ok(Self::new(CharacterTable::compute(group, seed)?))
    }

    pub fn table(&self) -> &CharacterTable {
        &self.table
    }

    pub fn group(&self) -> &FiniteGroup {
        self.table.group()
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn forward(&self, f: &GroupAlgebraElement) -> Result<AlgElement> {
        let blocks = self.table.irreps.iter().map(|pi| pi.apply(f)).collect::<Result<Vec<_>>>()?;
        AlgElement::new(&self.algebra, blocks)
    }

    /// `F(δ_g)`.
    pub fn delta(&self, g: usize) -> AlgElement {
        let blocks = self.table.irreps.iter().map(|pi| pi.matrix(g).clone()).collect();
        AlgElement::new(&self.algebra, blocks).expect("block shapes")
    }

    /// `f(g) = Σ_i (d_i/|G|) tr(π_i(g)* a_i)`.
    pub fn inverse(&self, a: &AlgElement) -> Result<GroupAlgebraElement> {
        if !a.algebra().same_shape(&self.algebra) {
            return Err(Error::Shape("element of another algebra".into()));
        }
        let g = self.group();
        let n = g.order() as f64;
        let coeffs = (0..g.order())
            .map(|x| {
                self.table
                    .irreps
                    .iter()
                    .enumerate()
                    .map(|(i, pi)| (pi.matrix(x).adjoint() * a.block(i)).trace() * linalg::real(pi.dim() as f64 / n))
                    .sum()
            })
            .collect();
        GroupAlgebraElement::new(g, coeffs)
    }

    /// The preimage of the matrix unit `e_k`.
    pub fn unit_preimage(&self, k: usize) -> GroupAlgebraElement {
        let u: UnitIndex = self.algebra.units()[k];
        self.inverse(&self.algebra.matrix_unit(u)).expect("same algebra")
    }

    /// `π(e_k)` for every matrix unit, the data a [`StarHom`] needs.
    pub fn unit_images(&self, pi: &Rep) -> Result<Vec<CMat>> {
        (0..self.algebra.dim()).into_par_iter().map(|k| pi.apply(&self.unit_preimage(k))).collect()
    }

    /// A representation of `G` as a representation of the Fourier algebra.
    pub fn star_hom(&self, pi: &Rep) -> Result<StarHom> {
        StarHom::from_matrices(&self.algebra, self.unit_images(pi)?)
    }

    /// A representation of the Fourier algebra, given by unit images, as one of `G`.
    pub fn group_rep(&self, units: &[CMat]) -> Result<Rep> {
        if units.len() != self.algebra.dim() {
            return Err(Error::Shape("one image per matrix unit required".into()));
        }
        let d = units.first().map_or(0, |m| m.nrows());
        let g = self.group();
        let matrices = (0..g.order())
            .map(|x| {
                self.delta(x)
                    .coords()
                    .iter()
                    .zip(units)
                    .filter(|(c, _)| **c != ZERO)
                    .fold(CMat::zeros(d, d), |acc, (c, m)| acc + m * *c)
            })
            .collect();
        Rep::new(g, matrices)
    }
}

/// The left regular representation `ℂ[G] → M_{|G|}` as a star-homomorphism on
/// the Fourier algebra.
pub fn regular_rep_embed(fourier: &Fourier) -> StarHom {
    fourier.star_hom(&Rep::regular(fourier.group())).expect("regular representation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::algebra::convolve;
    use crate::group::rep::{induce, induced_character};
    use crate::group::table::subgroup_generate;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3).unwrap()
    }

    #[test]
    fn s3_irreps() {
        let t = CharacterTable::compute(&s3(), 0).unwrap();
        assert_eq!(t.dims(), [1, 1, 2]);
        assert!(t.character(0).iter().all(|z| (z - linalg::real(1.0)).norm() < 1e-9));
        for pi in t.irreps() {
            assert!(pi.defects().max() < 1e-10);
        }
        assert_eq!(t.label(0), "trivial");
        assert_eq!(t.find("char2").unwrap(), 2);
        assert!(t.find("char3").is_err());
    }

    #[test]
    fn regular_rep_of_s3_decomposes_by_dimension() {
        let d = decompose_rep(&Rep::regular(&s3()), 1).unwrap();
        assert_eq!(d.parts, [("trivial".into(), 1, 1), ("char1".into(), 1, 1), ("char2".into(), 2, 2)]);
        assert!(d.defect < 1e-9);
        let d = decompose_rep(&Rep::trivial(&s3()), 1).unwrap();
        assert_eq!(d.parts, [("trivial".into(), 1, 1)]);
    }

    #[test]
    fn ordering_does_not_depend_on_the_seed() {
        let g = FiniteGroup::symmetric(4).unwrap();
        let a = CharacterTable::compute(&g, 3).unwrap();
        let b = CharacterTable::compute(&g, 11).unwrap();
        assert_eq!(a.dims(), [1, 1, 2, 3, 3]);
        for i in 0..a.len() {
            assert!(max_diff(a.character(i), b.character(i)) < 1e-9);
        }
    }

    #[test]
    fn characters_are_orthonormal_class_functions() {
        let g = FiniteGroup::symmetric(4).unwrap();
        let t = CharacterTable::compute(&g, 0).unwrap();
        for i in 0..t.len() {
            for j in 0..t.len() {
                let ip = character_inner(&g, t.character(i), t.character(j));
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ip - linalg::real(want)).norm() < 1e-9);
            }
            for class in t.classes() {
                assert!(class.iter().all(|&x| (t.character(i)[x] - t.character(i)[class[0]]).norm() < 1e-9));
            }
        }
        assert_eq!(t.len(), t.classes().len());
    }

    #[test]
    fn fourier_is_a_star_isomorphism() {
        let g = s3();
        let f = Fourier::compute(&g, 0).unwrap();
        let a = GroupAlgebraElement::new(&g, (0..6).map(|x| linalg::c64(x as f64, 1.0 - x as f64)).collect()).unwrap();
        let b = GroupAlgebraElement::new(&g, (0..6).map(|x| linalg::c64(0.5, x as f64)).collect()).unwrap();
        let fa = f.forward(&a).unwrap();
        let fb = f.forward(&b).unwrap();
        let fab = f.forward(&convolve(&a, &b).unwrap()).unwrap();
        assert!((&fa * &fb).distance(&fab).unwrap() < 1e-9);
        assert!(f.forward(&crate::group::algebra::star(&a)).unwrap().distance(&fa.adjoint()).unwrap() < 1e-9);
        assert!(f.inverse(&fa).unwrap().distance(&a).unwrap() < 1e-12);
        let hom = regular_rep_embed(&f);
        assert!(hom.defects().max() < 1e-12);
        assert!(hom.is_injective());
    }

    #[test]
    fn trivial_group_embeds_as_scalars() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let f = Fourier::compute(&g, 0).unwrap();
        assert_eq!(f.algebra().blocks(), [1]);
        assert_eq!(regular_rep_embed(&f).rep_dim(), 1);
    }

    #[test]
    fn group_rep_roundtrip() {
        let g = s3();
        let f = Fourier::compute(&g, 0).unwrap();
        let pi = Rep::regular(&g);
        let back = f.group_rep(&f.unit_images(&pi).unwrap()).unwrap();
        for x in 0..6 {
            assert!(linalg::max_abs(&(back.matrix(x) - pi.matrix(x))) < 1e-12);
        }
    }

    #[test]
    fn frobenius_reciprocity() {
        let g = FiniteGroup::symmetric(4).unwrap();
        let h = subgroup_generate(&g, &[1, 2]).unwrap();
        let tg = CharacterTable::compute(&g, 0).unwrap();
        let th = CharacterTable::compute(&h.as_group(), 0).unwrap();
        for pi in th.irreps() {
            let ind = induced_character(&h, &pi.character());
            assert!(max_diff(&ind, &induce(&h, pi).unwrap().character()) < 1e-9);
            for sigma in tg.irreps() {
                let lhs = character_inner(&g, &ind, &sigma.character());
                let res = sigma.restrict(&h).unwrap();
                let rhs = character_inner(&h.as_group(), &pi.character(), &res.character());
                assert!((lhs - rhs).norm() < 1e-9);
            }
        }
    }
}
