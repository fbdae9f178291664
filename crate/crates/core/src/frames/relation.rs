use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest point count the library accepts.
pub const MAX_POINTS: usize = 12;

/// A subset of `0..n`, bit `i` set iff point `i` is a member.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointSet(pub u32);

impl PointSet {
    pub const EMPTY: PointSet = PointSet(0);

    pub fn full(n: usize) -> PointSet {
        PointSet(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(i: usize) -> PointSet {
        PointSet(1 << i)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> PointSet {
        PointSet(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: PointSet) -> PointSet {
        PointSet(self.0 | other.0)
    }

    pub fn intersection(self, other: PointSet) -> PointSet {
        PointSet(self.0 & other.0)
    }

    pub fn difference(self, other: PointSet) -> PointSet {
        PointSet(self.0 & !other.0)
    }

    /// Complement relative to `0..n`.
    pub fn complement(self, n: usize) -> PointSet {
        PointSet(!self.0 & PointSet::full(n).0)
    }

    pub fn is_subset(self, other: PointSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `0..n` in lexicographic order of their characteristic
    /// vectors `(χ(0), χ(1), …, χ(n-1))`.
    pub fn all_subsets(n: usize) -> Vec<PointSet> {
        let mut sets: Vec<PointSet> = (0..1u32 << n).map(PointSet).collect();
        sets.sort_by_key(|s| s.lex_key(n));
        sets
    }

    /// Sort key realizing the characteristic-vector order on `0..n`.
    pub fn lex_key(self, n: usize) -> u32 {
        self.0.reverse_bits() >> (32 - n.max(1)) as u32
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A binary relation on `0..n`, stored as one successor bitmask per point.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    rows: Vec<PointSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Relation {
        assert!(n <= MAX_POINTS, "relation on {n} points exceeds {MAX_POINTS}");
        Relation {
            rows: vec![PointSet::EMPTY; n],
        }
    }

    pub fn identity(n: usize) -> Relation {
        let mut r = Relation::empty(n);
        for i in 0..n {
            r.insert(i, i);
        }
        r
    }

    pub fn total(n: usize) -> Relation {
        Relation {
            rows: vec![PointSet::full(n); n],
        }
    }

    /// Builds a relation from index pairs; `None` if a pair is out of range.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Option<Relation> {
        let mut r = Relation::empty(n);
        for (i, j) in pairs {
            if i >= n || j >= n {
                return None;
            }
            r.insert(i, j);
        }
        Some(r)
    }

    pub fn from_rows(rows: Vec<PointSet>) -> Relation {
        let n = rows.len();
        assert!(n <= MAX_POINTS);
        let full = PointSet::full(n);
        assert!(rows.iter().all(|r| r.is_subset(full)), "row out of range");
        Relation { rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn universe(&self) -> PointSet {
        PointSet::full(self.len())
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn insert(&mut self, i: usize, j: usize) {
        self.rows[i].insert(j);
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |j| (i, j)))
    }

    pub fn rows(&self) -> &[PointSet] {
        &self.rows
    }

    /// `R[i]`.
    pub fn successors(&self, i: usize) -> PointSet {
        self.rows[i]
    }

    /// `R⁻¹[i]`.
    pub fn predecessors(&self, i: usize) -> PointSet {
        PointSet::from_indices((0..self.len()).filter(|&x| self.contains(x, i)))
    }

    /// `R[U]`.
    pub fn image(&self, set: PointSet) -> PointSet {
        set.iter()
            .fold(PointSet::EMPTY, |acc, i| acc.union(self.rows[i]))
    }

    /// `R⁻¹[U]`.
    pub fn preimage(&self, set: PointSet) -> PointSet {
        PointSet::from_indices(
            (0..self.len()).filter(|&x| !self.rows[x].intersection(set).is_empty()),
        )
    }

    /// `{x : R[x] ⊆ U}`.
    pub fn box_of(&self, set: PointSet) -> PointSet {
        PointSet::from_indices((0..self.len()).filter(|&x| self.rows[x].is_subset(set)))
    }

    pub fn inverse(&self) -> Relation {
        let n = self.len();
        let mut out = Relation::empty(n);
        for (i, j) in self.pairs() {
            out.insert(j, i);
        }
        out
    }

    /// `x (self ; other) y` iff some `z` has `x self z` and `z other y`.
    pub fn then(&self, other: &Relation) -> Relation {
        assert_eq!(self.len(), other.len());
        Relation {
            rows: self.rows.iter().map(|row| other.image(*row)).collect(),
        }
    }

    pub fn intersection(&self, other: &Relation) -> Relation {
        assert_eq!(self.len(), other.len());
        Relation {
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.intersection(*b))
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.len() == other.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(*b))
    }

    /// First pair of `self` missing from `other`.
    pub fn first_pair_outside(&self, other: &Relation) -> Option<(usize, usize)> {
        self.pairs().find(|&(i, j)| !other.contains(i, j))
    }

    pub fn first_irreflexive_point(&self) -> Option<usize> {
        (0..self.len()).find(|&i| !self.contains(i, i))
    }

    /// A triple `(x, y, z)` with `x R y`, `y R z` and not `x R z`.
    pub fn first_transitivity_violation(&self) -> Option<(usize, usize, usize)> {
        for (x, y) in self.pairs() {
            if let Some(z) = self.rows[y].difference(self.rows[x]).first() {
                return Some((x, y, z));
            }
        }
        None
    }

    /// A pair `x ≠ y` with `x R y` and `y R x`.
    pub fn first_antisymmetry_violation(&self) -> Option<(usize, usize)> {
        self.pairs().find(|&(x, y)| x != y && self.contains(y, x))
    }

    /// A pair `x R y` without `y R x`.
    pub fn first_symmetry_violation(&self) -> Option<(usize, usize)> {
        self.pairs().find(|&(x, y)| !self.contains(y, x))
    }

    pub fn is_reflexive(&self) -> bool {
        self.first_irreflexive_point().is_none()
    }

    pub fn is_transitive(&self) -> bool {
        self.first_transitivity_violation().is_none()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.first_antisymmetry_violation().is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_symmetry_violation().is_none()
    }

    pub fn is_quasi_order(&self) -> bool {
        self.is_reflexive() && self.is_transitive()
    }

    pub fn is_partial_order(&self) -> bool {
        self.is_quasi_order() && self.is_antisymmetric()
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_quasi_order() && self.is_symmetric()
    }

    /// Reflexive-transitive closure.
    pub fn saturate(&self) -> Relation {
        let mut out = self.clone();
        for i in 0..out.len() {
            out.insert(i, i);
        }
        // Warshall
        for k in 0..out.len() {
            for i in 0..out.len() {
                if out.contains(i, k) {
                    out.rows[i] = out.rows[i].union(out.rows[k]);
                }
            }
        }
        out
    }

    /// Relabels points: `i` becomes `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Relation {
        let mut out = Relation::empty(self.len());
        for (i, j) in self.pairs() {
            out.insert(perm[i], perm[j]);
        }
        out
    }

    /// Equivalence classes in order of their least member; `None` unless
    /// the relation is an equivalence.
    pub fn classes(&self) -> Option<Vec<PointSet>> {
        if !self.is_equivalence() {
            return None;
        }
        let mut seen = PointSet::EMPTY;
        let mut out = Vec::new();
        for i in 0..self.len() {
            if !seen.contains(i) {
                out.push(self.rows[i]);
                seen = seen.union(self.rows[i]);
            }
        }
        Some(out)
    }

    /// The equivalence whose classes are `blocks`.
    pub fn from_partition(n: usize, blocks: &[PointSet]) -> Relation {
        let mut r = Relation::empty(n);
        for block in blocks {
            for i in block.iter() {
                r.rows[i] = r.rows[i].union(*block);
            }
        }
        r
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation({})", self.len())?;
        f.debug_set().entries(self.pairs()).finish()
    }
}
