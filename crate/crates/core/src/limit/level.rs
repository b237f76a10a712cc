//! Level objects `A_S`, `X_S` and the connecting maps between levels.

use crate::cstar::{interleave, AlgElement, BlockAlgebra, StarHom, TensorLayout, UnitIndex};
use crate::error::{Error, Result};
use crate::limit::family::{AlgebraFamily, Level, ModuleFamily};
use crate::linalg::{self, CMat, CVec, C64, ONE, ZERO};
use crate::module::{exterior_tensor, CoordTensor, HModule};
use crate::report::{ReportBuilder, VerificationReport};

pub fn level_layout(f: &AlgebraFamily, s: &Level) -> TensorLayout {
    TensorLayout::new(s.indices().iter().map(|&v| f.algebra(v).clone()).collect())
}

/// `A_S = ⊗_{v ∈ S} A_v` in the order of `S` (the scalars for `S = ∅`).
pub fn level_algebra(f: &AlgebraFamily, s: &Level) -> BlockAlgebra {
    level_layout(f, s).product().clone()
}

/// `⊗_{v ∈ S} p_v`.
pub fn level_projection(f: &AlgebraFamily, s: &Level) -> AlgElement {
    let layout = level_layout(f, s);
    let ps: Vec<&AlgElement> = s.indices().iter().map(|&v| f.projection(v)).collect();
    layout.tensor(&ps)
}

/// The connecting map `A_S → A_{S'}`, `a ↦ a ⊗ (⊗_{v ∈ S'∖S} p_v)`, with each new
/// factor at its own position in `S'`.
#[derive(Clone, Debug)]
pub struct AlgebraConnection {
    from: TensorLayout,
    to: TensorLayout,
    /// Sparse image of each matrix unit of `A_S` in coordinates of `A_{S'}`.
    images: Vec<Vec<(usize, C64)>>,
}

impl AlgebraConnection {
    pub fn new(f: &AlgebraFamily, s: &Level, sp: &Level) -> Result<Self> {
        let pos = s.positions_in(sp)?;
        let from = level_layout(f, s);
        let to = level_layout(f, sp);
        // Nonzero entries of each appended projection, as (unit, value).
        let new: Vec<(usize, Vec<(UnitIndex, C64)>)> = (0..sp.len())
            .filter(|p| !pos.contains(p))
            .map(|p| {
                let v = sp.indices()[p];
                let proj = f.projection(v);
                let mut entries = Vec::new();
                for (b, blk) in proj.blocks().iter().enumerate() {
                    for r in 0..blk.nrows() {
                        for c in 0..blk.ncols() {
                            if blk[(r, c)] != ZERO {
                                entries.push((UnitIndex { block: b, row: r, col: c }, blk[(r, c)]));
                            }
                        }
                    }
                }
                (p, entries)
            })
            .collect();
        let dest = to.product();
        let images = from
            .product()
            .units()
            .into_iter()
            .map(|u| {
                let parts = from.split_unit(u);
                let mut units = vec![UnitIndex { block: 0, row: 0, col: 0 }; sp.len()];
                for (i, &p) in pos.iter().enumerate() {
                    units[p] = parts[i];
                }
                let mut out = Vec::new();
                cartesian(&new, &mut units, ONE, 0, &mut |units, c| {
                    out.push((dest.coord(to.unit_of(units)), c));
                });
                out
            })
            .collect();
        Ok(AlgebraConnection { from, to, images })
    }

    pub fn domain(&self) -> &BlockAlgebra {
        self.from.product()
    }

    pub fn codomain(&self) -> &BlockAlgebra {
        self.to.product()
    }

    pub fn unit_image(&self, k: usize) -> &[(usize, C64)] {
        &self.images[k]
    }

    pub fn apply(&self, a: &AlgElement) -> Result<AlgElement> {
        if !a.algebra().same_shape(self.domain()) {
            return Err(Error::Shape("element is not in A_S".into()));
        }
        let mut coords = vec![ZERO; self.codomain().dim()];
        for (k, c) in a.coords().into_iter().enumerate() {
            if c != ZERO {
                for &(kp, v) in &self.images[k] {
                    coords[kp] += c * v;
                }
            }
        }
        AlgElement::from_coords(self.codomain(), &coords)
    }

    /// The dense coordinate matrix as a [`StarHom`].
    pub fn to_star_hom(&self) -> StarHom {
        let mut m = CMat::zeros(self.codomain().dim(), self.domain().dim());
        for (k, img) in self.images.iter().enumerate() {
            for &(kp, v) in img {
                m[(kp, k)] += v;
            }
        }
        StarHom::new(self.domain().clone(), self.codomain().clone(), m).expect("shape by construction")
    }
}

/// Calls `emit` for every choice of one entry per appended factor.
fn cartesian(
    new: &[(usize, Vec<(UnitIndex, C64)>)],
    units: &mut Vec<UnitIndex>,
    acc: C64,
    depth: usize,
    emit: &mut dyn FnMut(&[UnitIndex], C64),
) {
    if depth == new.len() {
        emit(units, acc);
        return;
    }
    let (p, entries) = &new[depth];
    for &(u, c) in entries {
        units[*p] = u;
        cartesian(new, units, acc * c, depth + 1, emit);
    }
}

/// `X_S = ⊗_{v ∈ S} X_v` (exterior tensor product in the order of `S`).
pub fn level_module(f: &ModuleFamily, s: &Level) -> HModule {
    let mut x = HModule::hilbert_space(1).expect("C over C");
    for &v in s.indices() {
        x = exterior_tensor(&x, f.module(v));
    }
    x
}

/// `⊗_{v ∈ S} x_v`.
pub fn level_vector(f: &ModuleFamily, s: &Level) -> CVec {
    let mut out = CVec::from_element(1, ONE);
    for &v in s.indices() {
        out = out.kronecker(f.vector(v));
    }
    out
}

/// The module connecting map `ι: X_S → X_{S'}`, `w ↦ w ⊗ (⊗_{v ∈ S'∖S} x_v)`.
#[derive(Clone, Debug)]
pub struct ConnectingMap {
    pub iota: CMat,
    pub algebra: AlgebraConnection,
    /// Positions of `S` inside `S'`.
    pub positions: Vec<usize>,
}

impl ConnectingMap {
    pub fn new(f: &ModuleFamily, s: &Level, sp: &Level) -> Result<Self> {
        let positions = s.positions_in(sp)?;
        let algebra = AlgebraConnection::new(f.base(), s, sp)?;
        let iota = embedding_matrix(sp, &positions, |v| f.module(v).cdim(), |v| {
            let x = f.vector(v);
            CMat::from_column_slice(x.len(), 1, x.as_slice())
        });
        Ok(ConnectingMap { iota, algebra, positions })
    }

    pub fn apply(&self, w: &CVec) -> CVec {
        &self.iota * w
    }
}

/// `M ↦ M ⊗ (⊗_{new} fill_v)` as a matrix, for vectors (`fill` a column) or
/// operators (`fill` square) depending on what `fill` returns.
pub(crate) fn embedding_matrix(
    sp: &Level,
    positions: &[usize],
    dim: impl Fn(usize) -> usize,
    fill: impl Fn(usize) -> CMat,
) -> CMat {
    let n = sp.len();
    let fills: Vec<Option<CMat>> = (0..n)
        .map(|p| (!positions.contains(&p)).then(|| fill(sp.indices()[p])))
        .collect();
    let rows: Vec<usize> = sp.indices().iter().map(|&v| dim(v)).collect();
    let cols: Vec<usize> = (0..n)
        .map(|p| fills[p].as_ref().map_or(rows[p], |m| m.ncols()))
        .collect();
    let inner_dim: usize = positions.iter().map(|&p| rows[p]).product();
    let refs: Vec<Option<&CMat>> = fills.iter().map(|m| m.as_ref()).collect();
    interleave(&rows, &cols, positions, &CMat::identity(inner_dim, inner_dim), &refs)
}

/// `T ↦ T ⊗ (⊗_{new} B_v)` for operators on level modules.
pub(crate) fn operator_embedding(
    sp: &Level,
    positions: &[usize],
    dim: impl Fn(usize) -> usize,
    t: &CMat,
    fill: impl Fn(usize) -> CMat,
) -> CMat {
    let n = sp.len();
    let fills: Vec<Option<CMat>> = (0..n)
        .map(|p| (!positions.contains(&p)).then(|| fill(sp.indices()[p])))
        .collect();
    let dims: Vec<usize> = sp.indices().iter().map(|&v| dim(v)).collect();
    let refs: Vec<Option<&CMat>> = fills.iter().map(|m| m.as_ref()).collect();
    interleave(&dims, &dims, positions, t, &refs)
}

/// Builds `ι` and checks `⟨ι w, ι z⟩ = φ(⟨w, z⟩)` on every basis pair.
///
/// Entries: `gram_identity` (largest coordinate of the difference of the two
/// sides, over all pairs) and `distinguished` (`ι(⊗_S x_v) − ⊗_{S'} x_v`).
pub fn connecting_map(f: &ModuleFamily, s: &Level, sp: &Level, tol: f64) -> Result<(ConnectingMap, VerificationReport)> {
    let map = ConnectingMap::new(f, s, sp)?;
    let xs = level_module(f, s);
    let xsp = level_module(f, sp);
    let mut rep = ReportBuilder::new("connecting_map", tol);
    rep.defect("gram_identity", gram_identity_defect(&map, &xs, &xsp));
    let dist = map.apply(&level_vector(f, s)) - level_vector(f, sp);
    rep.defect("distinguished", dist.iter().fold(0.0, |a, z| a.max(z.norm())));
    rep.info("S", s.indices().to_vec()).info("Sprime", sp.indices().to_vec());
    rep.info("cdim_S", xs.cdim()).info("cdim_Sprime", xsp.cdim());
    Ok((map, rep.finish()))
}

/// Largest coordinate of `⟨ι e_i, ι e_j⟩_{S'} − φ(⟨e_i, e_j⟩_S)` over all pairs.
///
/// `ι` has at most one nonzero per row, so the pullback of the `S'` gram is
/// computed entry by entry from its sparse tensor.
pub fn gram_identity_defect(map: &ConnectingMap, xs: &HModule, xsp: &HModule) -> f64 {
    let mut source: Vec<Option<(usize, C64)>> = vec![None; map.iota.nrows()];
    for r in 0..map.iota.nrows() {
        for c in 0..map.iota.ncols() {
            let v = map.iota[(r, c)];
            if v != ZERO {
                debug_assert!(source[r].is_none(), "ι has one nonzero per row");
                source[r] = Some((c, v));
            }
        }
    }
    let ncoord = xsp.algebra().dim();
    let mut raw = Vec::new();
    for (k, i, j, v) in xsp.gram_tensor().iter() {
        if let (Some((a, ca)), Some((b, cb))) = (source[i], source[j]) {
            raw.push((k, a, b, ca.conj() * v * cb));
        }
    }
    let pulled = CoordTensor::from_entries(ncoord, raw);
    let mut raw = Vec::new();
    for (k, i, j, v) in xs.gram_tensor().iter() {
        for &(kp, c) in map.algebra.unit_image(k) {
            raw.push((kp, i, j, -(v * c)));
        }
    }
    for (k, i, j, v) in pulled.iter() {
        raw.push((k, i, j, v));
    }
    let diff = CoordTensor::from_entries(ncoord, raw);
    diff.iter().fold(0.0, |a, (_, _, _, v)| a.max(v.norm()))
}

/// `‖ι_{S→S''} − ι_{S'→S''} ι_{S→S'}‖` entrywise.
pub fn functoriality_defect(f: &ModuleFamily, s: &Level, sp: &Level, spp: &Level) -> Result<f64> {
    let direct = ConnectingMap::new(f, s, spp)?;
    let first = ConnectingMap::new(f, s, sp)?;
    let second = ConnectingMap::new(f, sp, spp)?;
    Ok(linalg::max_abs(&(&direct.iota - &second.iota * &first.iota)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cstar::{embed_corner, op_norm, tensor_algebra};
    use crate::linalg::random_complex;
    use crate::module::HModule;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn family(algs: &[&[usize]]) -> AlgebraFamily {
        let algebras: Vec<BlockAlgebra> = algs.iter().map(|d| BlockAlgebra::new(d).unwrap()).collect();
        let ps = algebras
            .iter()
            .map(|a| {
                // rank-one projection e00 in the last block
                let b = a.num_blocks() - 1;
                a.matrix_unit(UnitIndex { block: b, row: 0, col: 0 })
            })
            .collect();
        AlgebraFamily::new(algebras, ps, []).unwrap()
    }

    #[test]
    fn level_algebra_examples() {
        let f = family(&[&[2], &[3], &[1, 2]]);
        assert_eq!(level_algebra(&f, &f.level([1]).unwrap()).blocks(), &[3]);
        assert_eq!(level_algebra(&f, &f.level([0, 1]).unwrap()).blocks(), &[6]);
        assert_eq!(level_algebra(&f, &f.level([]).unwrap()).blocks(), &[1]);
    }

    #[test]
    fn connection_matches_embed_corner_when_appending() {
        let f = family(&[&[1, 2], &[2]]);
        let s = f.level([0]).unwrap();
        let sp = f.level([0, 1]).unwrap();
        let conn = AlgebraConnection::new(&f, &s, &sp).unwrap().to_star_hom();
        let oracle = embed_corner(f.algebra(0), f.algebra(1), f.projection(1)).unwrap();
        assert_eq!(conn.codomain().blocks(), tensor_algebra(f.algebra(0), f.algebra(1)).blocks());
        assert!(linalg::max_abs(&(conn.matrix() - oracle.matrix())) < 1e-15);
        assert!(conn.defects().max() < 1e-12);
    }

    #[test]
    fn connection_inserting_in_the_middle_is_isometric_star_hom() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let f = family(&[&[1, 2], &[2], &[1, 1]]);
        let s = f.level([0, 2]).unwrap();
        let sp = f.level([0, 1, 2]).unwrap();
        let conn = AlgebraConnection::new(&f, &s, &sp).unwrap();
        assert!(conn.to_star_hom().defects().max() < 1e-12);
        let a_s = conn.domain().clone();
        for _ in 0..5 {
            let a = AlgElement::new(&a_s, a_s.blocks().iter().map(|&d| random_complex(&mut rng, d, d)).collect())
                .unwrap();
            let img = conn.apply(&a).unwrap();
            assert!((op_norm(&img) - op_norm(&a)).abs() < 1e-9 * op_norm(&a));
        }
    }

    fn c2_modules(n: usize) -> ModuleFamily {
        let c = BlockAlgebra::scalars();
        let base = AlgebraFamily::new(vec![c.clone(); n], vec![c.unit(); n], []).unwrap();
        let x = HModule::hilbert_space(2).unwrap();
        ModuleFamily::new(base, vec![x; n], vec![CVec::from_vec(vec![ONE, ZERO]); n]).unwrap()
    }

    #[test]
    fn c2_family_connecting_map_is_exactly_isometric() {
        let f = c2_modules(3);
        let s = f.level([1]).unwrap();
        let sp = f.level([0, 1, 2]).unwrap();
        let (map, rep) = connecting_map(&f, &s, &sp, 1e-12).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.max_defect(), 0.0);
        assert_eq!(map.iota.shape(), (8, 2));
        // ι(e_1) = x ⊗ e_1 ⊗ x = e_(0,1,0) = index 2
        assert_eq!(map.iota[(2, 1)], ONE);
        assert_eq!(functoriality_defect(&f, &s, &f.level([1, 2]).unwrap(), &sp).unwrap(), 0.0);
    }

    #[test]
    fn identity_connection() {
        let f = c2_modules(2);
        let s = f.level([0, 1]).unwrap();
        let (map, rep) = connecting_map(&f, &s, &s, 1e-12).unwrap();
        assert!(rep.pass);
        assert_eq!(map.iota, CMat::identity(4, 4));
    }

    #[test]
    fn not_a_subset_is_a_level_error() {
        let f = c2_modules(3);
        let s = f.level([0, 1]).unwrap();
        let sp = f.level([0, 2]).unwrap();
        assert!(matches!(connecting_map(&f, &s, &sp, 1e-9), Err(Error::Level(_))));
    }
}
