//! Finite groups as multiplication tables, and their subgroups.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, PartialEq, Eq)]
struct Table {
    order: usize,
    mult: Vec<usize>,
    inv: Vec<usize>,
    labels: Vec<String>,
}

/// A finite group on `0..n` with `0` the identity. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    table: Arc<Table>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.table, &other.table) || self.table == other.table
    }
}

/// Wire form: `mult[a][b]` is the index of `ab`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupJson {
    pub order: usize,
    pub mult: Vec<Vec<usize>>,
    #[serde(default)]
    pub labels: Vec<String>,
}

/// Validates a multiplication table. Labels default to the element indices.
pub fn group_from_table(table: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::Validation("a group has at least one element".into()));
    }
    let mut mult = Vec::with_capacity(n * n);
    for (a, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Validation(format!("row {a} has {} entries, expected {n}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(Error::Validation(format!("row {a} contains {bad}, out of range")));
        }
        mult.extend_from_slice(row);
    }
    for a in 0..n {
        if mult[a] != a || mult[a * n] != a {
            return Err(Error::Validation(format!("element 0 is not a two-sided identity at {a}")));
        }
    }
    let mut inv = vec![usize::MAX; n];
    for a in 0..n {
        let right = (0..n).filter(|&b| mult[a * n + b] == 0).collect::<Vec<_>>();
        match right.as_slice() {
            [b] if mult[b * n + a] == 0 => inv[a] = *b,
            _ => return Err(Error::Validation(format!("element {a} has no two-sided inverse"))),
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = mult[a * n + b];
            for c in 0..n {
                if mult[ab * n + c] != mult[a * n + mult[b * n + c]] {
                    return Err(Error::Validation(format!("associativity fails at ({a}, {b}, {c})")));
                }
            }
        }
    }
    let labels = labels.unwrap_or_else(|| (0..n).map(|g| g.to_string()).collect());
    if labels.len() != n {
        return Err(Error::Validation(format!("{} labels for {n} elements", labels.len())));
    }
    Ok(FiniteGroup { table: Arc::new(Table { order: n, mult, inv, labels }) })
}

impl FiniteGroup {
    /// Builds the group generated by concrete elements under `mul`, listing the
    /// closure with `identity` first and the rest in the order of `T`.
    pub fn from_elements<T, F>(identity: T, generators: &[T], mul: F, label: impl Fn(&T) -> String) -> Result<Self>
    where
        T: Ord + Clone,
        F: Fn(&T, &T) -> T,
    {
        let mut seen: std::collections::BTreeSet<T> = [identity.clone()].into();
        let mut frontier = vec![identity.clone()];
        while let Some(x) = frontier.pop() {
            for g in generators {
                let y = mul(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut elems: Vec<T> = vec![identity.clone()];
        elems.extend(seen.into_iter().filter(|x| *x != identity));
        let index: BTreeMap<&T, usize> = elems.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        index
                            .get(&mul(a, b))
                            .copied()
                            .ok_or_else(|| Error::Validation("multiplication leaves the generated set".into()))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<_>>()?;
        group_from_table(&table, Some(elems.iter().map(label).collect()))
    }

    /// The cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("a group has at least one element".into()));
        }
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        group_from_table(&table, None)
    }

    /// The symmetric group on `n` letters, elements as permutations in one-line notation.
    pub fn symmetric(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Validation("need at least one letter".into()));
        }
        let id: Vec<usize> = (0..n).collect();
        let mut gens = Vec::new();
        if n > 1 {
            let mut swap = id.clone();
            swap.swap(0, 1);
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            gens.push(swap);
            gens.push(cycle);
        }
        // (στ)(i) = σ(τ(i)).
        let compose = |s: &Vec<usize>, t: &Vec<usize>| t.iter().map(|&i| s[i]).collect::<Vec<_>>();
        Self::from_elements(id, &gens, compose, |p| p.iter().map(|i| (i + 1).to_string()).collect())
    }

    /// `G₁ × ⋯ × G_r` with mixed-radix element indices, the last factor fastest.
    pub fn direct_product(factors: &[FiniteGroup]) -> Self {
        let orders: Vec<usize> = factors.iter().map(FiniteGroup::order).collect();
        let n: usize = orders.iter().product();
        let split = |mut x: usize| {
            let mut out = vec![0; orders.len()];
            for p in (0..orders.len()).rev() {
                out[p] = x % orders[p];
                x /= orders[p];
            }
            out
        };
        let join = |parts: &[usize]| parts.iter().zip(&orders).fold(0, |acc, (&x, &o)| acc * o + x);
        let parts: Vec<Vec<usize>> = (0..n).map(split).collect();
        let mut mult = Vec::with_capacity(n * n);
        for a in &parts {
            for b in &parts {
                let ab: Vec<usize> = factors.iter().enumerate().map(|(p, g)| g.mul(a[p], b[p])).collect();
                mult.push(join(&ab));
            }
        }
        let inv = parts
            .iter()
            .map(|a| join(&factors.iter().enumerate().map(|(p, g)| g.inv(a[p])).collect::<Vec<_>>()))
            .collect();
        let labels = parts
            .iter()
            .map(|a| {
                let inner: Vec<&str> = factors.iter().enumerate().map(|(p, g)| g.label(a[p])).collect();
                format!("({})", inner.join(", "))
            })
            .collect();
        FiniteGroup { table: Arc::new(Table { order: n, mult, inv, labels }) }
    }

    pub fn order(&self) -> usize {
        self.table.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.mult[a * self.table.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.table.inv[a]
    }

    /// `a⁻¹ b`.
    pub fn ldiv(&self, a: usize, b: usize) -> usize {
        self.mul(self.inv(a), b)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.table.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.table.labels
    }

    /// A generating set chosen greedily: each element not yet generated is added.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut reached = vec![false; self.order()];
        reached[0] = true;
        for x in 0..self.order() {
            if !reached[x] {
                gens.push(x);
                for y in subgroup_generate(self, &gens).expect("elements of the group").members() {
                    reached[*y] = true;
                }
            }
        }
        gens
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, listed by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|g| self.mul(self.mul(g, a), self.inv(g))).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                class_of[x] = classes.len();
            }
            classes.push(class);
        }
        classes
    }

    pub fn to_json(&self) -> GroupJson {
        let n = self.order();
        GroupJson {
            order: n,
            mult: (0..n).map(|a| self.table.mult[a * n..(a + 1) * n].to_vec()).collect(),
            labels: self.table.labels.clone(),
        }
    }

    pub fn from_json(j: &GroupJson) -> Result<Self> {
        if j.order != j.mult.len() {
            return Err(Error::Validation(format!("order {} but {} rows", j.order, j.mult.len())));
        }
        let labels = (!j.labels.is_empty()).then(|| j.labels.clone());
        group_from_table(&j.mult, labels)
    }
}

/// A subgroup, stored as the sorted list of its members in the parent.
#[derive(Clone, Debug, PartialEq)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl Subgroup {
    /// Checks closure under products and inverses exactly.
    pub fn new(parent: &FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = parent.order();
        let mut mask = vec![false; n];
        for x in members {
            if x >= n {
                return Err(Error::Validation(format!("{x} is not an element of a group of order {n}")));
            }
            mask[x] = true;
        }
        let members: Vec<usize> = (0..n).filter(|&x| mask[x]).collect();
        if !mask[0] {
            return Err(Error::Validation("subset does not contain the identity".into()));
        }
        for &a in &members {
            if !mask[parent.inv(a)] {
                return Err(Error::Validation(format!("not closed under inverses at {a}")));
            }
            if let Some(&b) = members.iter().find(|&&b| !mask[parent.mul(a, b)]) {
                return Err(Error::Validation(format!("not closed under products at ({a}, {b})")));
            }
        }
        Ok(Subgroup { parent: parent.clone(), members, mask })
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Subgroup { parent: parent.clone(), members: (0..parent.order()).collect(), mask: vec![true; parent.order()] }
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        let mut mask = vec![false; parent.order()];
        mask[0] = true;
        Subgroup { parent: parent.clone(), members: vec![0], mask }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.parent != other.parent {
            return Err(Error::Validation("subgroups of different groups".into()));
        }
        Subgroup::new(&self.parent, self.members.iter().copied().filter(|&x| other.contains(x)))
    }

    /// Position of a member in [`Subgroup::members`], which is its index in [`Subgroup::as_group`].
    pub fn position(&self, x: usize) -> Option<usize> {
        self.members.binary_search(&x).ok()
    }

    /// The subgroup as a group in its own right, elements in the order of `members`.
    pub fn as_group(&self) -> FiniteGroup {
        let table: Vec<Vec<usize>> = self
            .members
            .iter()
            .map(|&a| self.members.iter().map(|&b| self.position(self.parent.mul(a, b)).expect("closed")).collect())
            .collect();
        let labels = self.members.iter().map(|&a| self.parent.label(a).to_string()).collect();
        group_from_table(&table, Some(labels)).expect("a subgroup table is a group table")
    }

    /// Left cosets `gH`, each sorted, listed by their smallest element, which is
    /// the coset representative.
    pub fn left_cosets(&self) -> Vec<Vec<usize>> {
        self.cosets(|g, h| self.parent.mul(g, h))
    }

    /// Right cosets `Hg`, listed like [`Subgroup::left_cosets`].
    pub fn right_cosets(&self) -> Vec<Vec<usize>> {
        self.cosets(|g, h| self.parent.mul(h, g))
    }

    fn cosets(&self, act: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
        let n = self.parent.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = self.members.iter().map(|&h| act(g, h)).collect();
            coset.sort_unstable();
            for &x in &coset {
                seen[x] = true;
            }
            out.push(coset);
        }
        out
    }

    /// Double cosets `H g K`, listed by smallest element.
    pub fn double_cosets(&self, k: &Subgroup) -> Vec<Vec<usize>> {
        let n = self.parent.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut d: Vec<usize> = self
                .members
                .iter()
                .flat_map(|&h| k.members.iter().map(move |&kk| (h, kk)))
                .map(|(h, kk)| self.parent.mul(self.parent.mul(h, g), kk))
                .collect();
            d.sort_unstable();
            d.dedup();
            for &x in &d {
                seen[x] = true;
            }
            out.push(d);
        }
        out
    }

    /// `|HK| = |G|`, that is `H` acts transitively on `G/K`.
    pub fn product_covers(&self, k: &Subgroup) -> (usize, bool) {
        let mut mask = vec![false; self.parent.order()];
        for &h in &self.members {
            for &kk in &k.members {
                mask[self.parent.mul(h, kk)] = true;
            }
        }
        let covered = mask.iter().filter(|&&b| b).count();
        (covered, covered == self.parent.order())
    }
}

/// The smallest subgroup containing `generators`.
pub fn subgroup_generate(g: &FiniteGroup, generators: &[usize]) -> Result<Subgroup> {
    let n = g.order();
    if let Some(&bad) = generators.iter().find(|&&x| x >= n) {
        return Err(Error::Validation(format!("{bad} is not an element of a group of order {n}")));
    }
    let mut mask = vec![false; n];
    mask[0] = true;
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        for &s in generators {
            let y = g.mul(x, s);
            if !mask[y] {
                mask[y] = true;
                frontier.push(y);
            }
        }
    }
    // Closure under right multiplication by generators is a subgroup in a finite group.
    Subgroup::new(g, (0..n).filter(|&x| mask[x]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_generators_generate() {
        for g in [FiniteGroup::symmetric(4).unwrap(), FiniteGroup::cyclic(12).unwrap(), FiniteGroup::cyclic(1).unwrap()] {
            let gens = g.generators();
            assert_eq!(subgroup_generate(&g, &gens).unwrap().order(), g.order());
        }
        assert_eq!(FiniteGroup::cyclic(7).unwrap().generators(), vec![1]);
    }

    #[test]
    fn cyclic_two_is_valid() {
        let g = group_from_table(&[vec![0, 1], vec![1, 0]], None).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn s3_from_two_generators() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.label(0), "123");
        // Three classes of sizes 1, 2, 3.
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, [1, 2, 3]);
        let transposition = (0..6).find(|&x| x != 0 && g.mul(x, x) == 0).unwrap();
        let three_cycle = (0..6).find(|&x| g.mul(g.mul(x, x), x) == 0 && x != 0).unwrap();
        assert_eq!(subgroup_generate(&g, &[transposition, three_cycle]).unwrap().order(), 6);
        assert_eq!(subgroup_generate(&g, &[three_cycle]).unwrap().order(), 3);
    }

    #[test]
    fn broken_associativity_is_rejected() {
        // Z/4 with row 1 rearranged.
        let mut t: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| (a + b) % 4).collect()).collect();
        t[1][1] = 3;
        t[1][2] = 2;
        t[1][3] = 0;
        let err = group_from_table(&t, None).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn identity_must_be_zero() {
        let t = vec![vec![1, 0], vec![0, 1]];
        assert!(group_from_table(&t, None).is_err());
    }

    #[test]
    fn cosets_partition_and_use_minimal_representatives() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let t = (1..6).find(|&x| g.mul(x, x) == 0).unwrap();
        let h = subgroup_generate(&g, &[t]).unwrap();
        let cosets = h.left_cosets();
        assert_eq!(cosets.len(), 3);
        assert_eq!(cosets.iter().map(Vec::len).sum::<usize>(), 6);
        for c in &cosets {
            let r = c[0];
            assert!(c.iter().all(|&x| h.contains(g.ldiv(r, x))));
        }
        assert_eq!(h.double_cosets(&h).len(), 2);
    }

    #[test]
    fn subgroup_as_group_keeps_the_law() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let c3 = subgroup_generate(&g, &[(1..6).find(|&x| x != 0 && g.mul(g.mul(x, x), x) == 0).unwrap()]).unwrap();
        let k = c3.as_group();
        assert_eq!(k.order(), 3);
        assert!(k.is_abelian());
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(c3.members()[k.mul(a, b)], g.mul(c3.members()[a], c3.members()[b]));
            }
        }
    }

    #[test]
    fn direct_product_orders_and_json_roundtrip() {
        let g = FiniteGroup::direct_product(&[FiniteGroup::cyclic(2).unwrap(), FiniteGroup::symmetric(3).unwrap()]);
        assert_eq!(g.order(), 12);
        let back = FiniteGroup::from_json(&serde_json::from_str(&serde_json::to_string(&g.to_json()).unwrap()).unwrap())
            .unwrap();
        assert_eq!(back, g);
        assert!(group_from_table(&g.to_json().mult, None).is_ok());
    }

    #[test]
    fn not_closed_subset_is_rejected() {
        let g = FiniteGroup::cyclic(4).unwrap();
        assert!(Subgroup::new(&g, [0, 1]).is_err());
        assert!(Subgroup::new(&g, [0, 2]).is_ok());
    }
}
