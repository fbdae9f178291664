//! All small frames up to isomorphism.
//!
//! Orders are grown one point at a time: every order on `n` points restricts
//! to an order on its first `n - 1` points, so extending one representative
//! of each smaller class by every compatible downset/upset pair reaches
//! every class. Frames are then built over each order: for an intuitionistic
//! frame `Q` is determined by its cluster partition as `R ; E_Q`, and for an
//! MS4-frame `E` ranges over all partitions. Duplicates are removed by
//! [`canonical_form`], and each emitted frame is relabeled into its
//! canonical numbering, so output never depends on generation order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frames::{
    default_names, er, has_clean_clusters, is_finite_mgrz, qe, validate_int_frame, validate_ms4_frame, Frame,
    FrameKind, IntFrame, KripkeFrame, Ms4Frame, PointSet, Relation,
};
use crate::semantics::{frame_validates, ValidityOptions};
use crate::syntax::{corpus, CorpusName};

/// Largest frame size [`enumerate_frames`] accepts.
pub const MAX_ENUMERATION_POINTS: usize = 5;
/// Largest frame size [`canonical_form`] accepts.
pub const MAX_CANONICAL_POINTS: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("enumeration needs at least one point")]
    NoPoints,
    #[error("{0} points requested; enumeration is capped at {MAX_ENUMERATION_POINTS}")]
    TooLarge(usize),
    #[error("canonical forms are capped at {MAX_CANONICAL_POINTS} points, got {0}")]
    CanonicalTooLarge(usize),
    #[error("filter `{filter}` does not apply to {kind} frames")]
    FilterKind { filter: Filter, kind: FrameKind },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Filter {
    /// Intuitionistic frames with clean clusters.
    MPlus,
    /// MS4-frames with antisymmetric `R`.
    Mgrz,
    /// MGrz-frames validating the translated Casari formula.
    MPlusGrz,
}

impl Filter {
    pub const ALL: [Filter; 3] = [Filter::MPlus, Filter::Mgrz, Filter::MPlusGrz];

    pub fn as_str(self) -> &'static str {
        match self {
            Filter::MPlus => "m_plus",
            Filter::Mgrz => "mgrz",
            Filter::MPlusGrz => "m_plus_grz",
        }
    }

    pub fn kind(self) -> FrameKind {
        match self {
            Filter::MPlus => FrameKind::Int,
            Filter::Mgrz | Filter::MPlusGrz => FrameKind::Ms4,
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Filter::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| format!("unknown filter `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub max_points: usize,
    pub kind: FrameKind,
    pub filters: BTreeSet<Filter>,
}

impl EnumerationConfig {
    pub fn new(kind: FrameKind, max_points: usize) -> EnumerationConfig {
        EnumerationConfig {
            max_points,
            kind,
            filters: BTreeSet::new(),
        }
    }

    pub fn with_filter(mut self, filter: Filter) -> EnumerationConfig {
        self.filters.insert(filter);
        self
    }

    pub fn check(&self) -> Result<(), EnumerationError> {
        if self.max_points == 0 {
            return Err(EnumerationError::NoPoints);
        }
        if self.max_points > MAX_ENUMERATION_POINTS {
            return Err(EnumerationError::TooLarge(self.max_points));
        }
        if let Some(&filter) = self.filters.iter().find(|f| f.kind() != self.kind) {
            return Err(EnumerationError::FilterKind { filter, kind: self.kind });
        }
        Ok(())
    }
}

/// Frames of every size `1..=max_points` passing all filters, one per
/// isomorphism class, ordered by size and then canonical form.
pub fn enumerate_frames(cfg: &EnumerationConfig) -> Result<Vec<Frame>, EnumerationError> {
    cfg.check()?;
    Ok(match cfg.kind {
        FrameKind::Int => int_frames(cfg.max_points)
            .into_iter()
            .filter(|f| cfg.filters.iter().all(|&flt| passes_int(flt, f)))
            .map(Frame::Int)
            .collect(),
        FrameKind::Ms4 => ms4_frames(cfg.max_points)
            .into_iter()
            .filter(|g| cfg.filters.iter().all(|&flt| passes_ms4(flt, g)))
            .map(Frame::Ms4)
            .collect(),
    })
}

fn passes_int(filter: Filter, f: &IntFrame) -> bool {
    match filter {
        Filter::MPlus => has_clean_clusters(f),
        Filter::Mgrz | Filter::MPlusGrz => false,
    }
}

fn passes_ms4(filter: Filter, g: &Ms4Frame) -> bool {
    match filter {
        Filter::Mgrz => is_finite_mgrz(g),
        Filter::MPlusGrz => is_m_plus_grz(g),
        Filter::MPlus => false,
    }
}

/// MGrz-frame validating the Gödel translation of the monadic Casari formula.
pub fn is_m_plus_grz(g: &Ms4Frame) -> bool {
    let casari = &corpus(CorpusName::CasariTranslated)[0];
    is_finite_mgrz(g)
        && frame_validates(g, casari, ValidityOptions::unbounded()).expect("casari has one letter")
}

/// Combinatorial candidate for [`is_m_plus_grz`]: `R` antisymmetric and no
/// two distinct points related by both `R` and `E`.
pub fn m_plus_grz_shortcut(g: &Ms4Frame) -> bool {
    is_finite_mgrz(g) && g.r().intersection(g.e()).is_subset(&Relation::identity(g.len()))
}

/// All intuitionistic frames with `1..=max` points.
pub fn int_frames(max: usize) -> Vec<IntFrame> {
    (1..=max).flat_map(int_frames_of_size).collect()
}

/// All MS4-frames with `1..=max` points.
pub fn ms4_frames(max: usize) -> Vec<Ms4Frame> {
    (1..=max).flat_map(ms4_frames_of_size).collect()
}

pub fn int_frames_of_size(n: usize) -> Vec<IntFrame> {
    let parts = partitions(n);
    let candidates: Vec<IntFrame> = enumerate_partial_orders(n)
        .par_iter()
        .flat_map_iter(|r| {
            parts.iter().filter_map(move |e| {
                let q = qe(r, e);
                let names = default_names(n);
                if !validate_int_frame(&names, r, &q).is_valid() || er(&q).ok().as_ref() != Some(e) {
                    return None;
                }
                Some(IntFrame::new(names, r.clone(), q).expect("validated"))
            })
        })
        .collect();
    dedup(candidates)
}

pub fn ms4_frames_of_size(n: usize) -> Vec<Ms4Frame> {
    let parts = partitions(n);
    let candidates: Vec<Ms4Frame> = enumerate_quasi_orders(n)
        .par_iter()
        .flat_map_iter(|r| {
            parts.iter().filter_map(move |e| {
                let names = default_names(n);
                validate_ms4_frame(&names, r, e)
                    .is_valid()
                    .then(|| Ms4Frame::new(names, r.clone(), e.clone()).expect("validated"))
            })
        })
        .collect();
    dedup(candidates)
}

fn dedup<F: KripkeFrame>(candidates: Vec<F>) -> Vec<F> {
    let canonical: BTreeMap<u128, F> = candidates
        .into_par_iter()
        .map(|f| {
            let (key, perm) = canonical_key(&[f.order(), f.quantifier()]);
            (key, relabel(&f, &perm))
        })
        .collect();
    canonical.into_values().collect()
}

fn relabel<F: KripkeFrame>(f: &F, perm: &[usize]) -> F {
    F::from_relations(default_names(f.len()), f.order().permuted(perm), f.quantifier().permuted(perm))
        .expect("isomorphic copy is valid")
}

/// Partial orders on `n` points, one per isomorphism class, canonically
/// numbered and sorted.
pub fn enumerate_partial_orders(n: usize) -> Vec<Relation> {
    grow_orders(n, true)
}

/// Quasi-orders on `n` points, one per isomorphism class.
pub fn enumerate_quasi_orders(n: usize) -> Vec<Relation> {
    grow_orders(n, false)
}

fn grow_orders(n: usize, antisymmetric: bool) -> Vec<Relation> {
    if n == 0 {
        return vec![Relation::empty(0)];
    }
    let smaller = grow_orders(n - 1, antisymmetric);
    let extended: Vec<Relation> = smaller
        .par_iter()
        .flat_map_iter(|r| extensions(r, antisymmetric))
        .collect();
    let canonical: BTreeMap<u128, Relation> = extended
        .into_par_iter()
        .map(|r| {
            let (key, perm) = canonical_key(&[&r]);
            (key, r.permuted(&perm))
        })
        .collect();
    canonical.into_values().collect()
}

/// Adds a point `p` with predecessors `down` and successors `up`.
fn extensions(r: &Relation, antisymmetric: bool) -> Vec<Relation> {
    let m = r.len();
    let sets = PointSet::all_subsets(m);
    let downsets: Vec<PointSet> = sets.iter().copied().filter(|&d| r.preimage(d).is_subset(d)).collect();
    let upsets: Vec<PointSet> = sets.iter().copied().filter(|&u| r.image(u).is_subset(u)).collect();
    let mut out = Vec::new();
    for &down in &downsets {
        for &up in &upsets {
            if antisymmetric && !down.intersection(up).is_empty() {
                continue;
            }
            if !down.iter().all(|x| up.is_subset(r.successors(x))) {
                continue;
            }
            let mut rows: Vec<PointSet> = r.rows().to_vec();
            for x in down.iter() {
                rows[x].insert(m);
            }
            let mut own = up;
            own.insert(m);
            rows.push(own);
            out.push(Relation::from_rows(rows));
        }
    }
    out
}

/// All equivalence relations on `n` points, by restricted growth strings.
pub fn partitions(n: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn go(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Relation>) {
        let n = labels.len();
        if i == n {
            let blocks: Vec<PointSet> = (0..=max)
                .map(|b| PointSet::from_indices((0..n).filter(|&x| labels[x] == b)))
                .filter(|s| !s.is_empty())
                .collect();
            out.push(Relation::from_partition(n, &blocks));
            return;
        }
        for b in 0..=max + 1 {
            labels[i] = b;
            go(i + 1, max.max(b), labels, out);
        }
    }
    if n == 0 {
        return vec![Relation::empty(0)];
    }
    go(1, 0, &mut labels, &mut out);
    out
}

/// Smallest encoding of the relations under any relabeling, with the
/// permutation attaining it (`i ↦ perm[i]`).
fn canonical_key(rels: &[&Relation]) -> (u128, Vec<usize>) {
    let n = rels[0].len();
    let mut best: Option<(u128, Vec<usize>)> = None;
    for inv in (0..n).permutations(n) {
        // inv[new] = old
        let mut key = 0u128;
        for rel in rels {
            for a in 0..n {
                for b in 0..n {
                    key = (key << 1) | rel.contains(inv[a], inv[b]) as u128;
                }
            }
        }
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((key, inv));
        }
    }
    let (key, inv) = best.unwrap_or((0, Vec::new()));
    let mut perm = vec![0; n];
    for (new, &old) in inv.iter().enumerate() {
        perm[old] = new;
    }
    (key, perm)
}

/// Minimal relation-matrix encoding over all relabelings; two frames of the
/// same kind have equal forms iff they are isomorphic.
pub fn canonical_form<F: KripkeFrame>(frame: &F) -> Result<Vec<u8>, EnumerationError> {
    let n = frame.len();
    if n > MAX_CANONICAL_POINTS {
        return Err(EnumerationError::CanonicalTooLarge(n));
    }
    let (key, _) = canonical_key(&[frame.order(), frame.quantifier()]);
    let bytes = (2 * n * n).div_ceil(8);
    let kind = match F::KIND {
        FrameKind::Int => 0,
        FrameKind::Ms4 => 1,
    };
    let mut out = vec![kind, n as u8];
    out.extend_from_slice(&key.to_be_bytes()[16 - bytes..]);
    Ok(out)
}
