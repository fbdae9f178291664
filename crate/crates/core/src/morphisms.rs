//! Maps between finite frames and the morphism conditions on them.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frames::{has_clean_clusters, IntFrame, KripkeFrame, Ms4Frame, PointSet, Relation};
use crate::functors::{sigma, skeleton};

/// Largest source frame for reduction enumeration.
pub const MAX_SOURCE_POINTS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("image {value} at position {point} is out of range for a {target}-point target")]
    ImageOutOfRange {
        point: usize,
        value: usize,
        target: usize,
    },
    #[error("map has {found} entries but the source has {expected} points")]
    SourceMismatch { expected: usize, found: usize },
    #[error("map targets {found} points but the target has {expected}")]
    TargetMismatch { expected: usize, found: usize },
    #[error("source has {0} points; enumeration is capped at {MAX_SOURCE_POINTS}")]
    TooLarge(usize),
    #[error("the target frame does not have clean clusters")]
    TargetNotClean,
    #[error("the map is not a reduction of the skeleton onto the target")]
    NotReduction,
    #[error("lifted map fails the morphism check at point {0}")]
    LiftFailed(usize),
    #[error("lifted map is not onto")]
    LiftNotOnto,
}

/// A total map between the points of two frames.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrameMap {
    image: Vec<usize>,
    target_len: usize,
}

impl FrameMap {
    pub fn new(image: Vec<usize>, target_len: usize) -> Result<FrameMap, MorphismError> {
        if let Some((point, &value)) = image.iter().enumerate().find(|(_, &v)| v >= target_len) {
            return Err(MorphismError::ImageOutOfRange {
                point,
                value,
                target: target_len,
            });
        }
        Ok(FrameMap { image, target_len })
    }

    pub fn identity(n: usize) -> FrameMap {
        FrameMap {
            image: (0..n).collect(),
            target_len: n,
        }
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn source_len(&self) -> usize {
        self.image.len()
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn apply_set(&self, set: PointSet) -> PointSet {
        PointSet::from_indices(set.iter().map(|x| self.image[x]))
    }

    pub fn is_onto(&self) -> bool {
        self.apply_set(PointSet::full(self.source_len())) == PointSet::full(self.target_len)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FrameMap) -> FrameMap {
        FrameMap {
            image: self.image.iter().map(|&y| other.image[y]).collect(),
            target_len: other.target_len,
        }
    }

    fn fits(&self, source: usize, target: usize) -> bool {
        self.source_len() == source && self.target_len == target
    }

    /// Checks the map against concrete frame sizes.
    pub fn check_sizes(&self, source: usize, target: usize) -> Result<(), MorphismError> {
        if self.source_len() != source {
            return Err(MorphismError::SourceMismatch {
                expected: source,
                found: self.source_len(),
            });
        }
        if self.target_len != target {
            return Err(MorphismError::TargetMismatch {
                expected: target,
                found: self.target_len,
            });
        }
        Ok(())
    }
}

/// JSON form of a map: source and target are frame references such as
/// file paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub source: String,
    pub target: String,
    pub image: Vec<usize>,
}

impl MapFile {
    pub fn new(source: impl Into<String>, target: impl Into<String>, map: &FrameMap) -> MapFile {
        MapFile {
            source: source.into(),
            target: target.into(),
            image: map.image.clone(),
        }
    }
}

/// `S₂[f(x)] = f S₁[x]` for every `x`.
pub fn is_p_morphism(f: &FrameMap, s1: &Relation, s2: &Relation) -> bool {
    f.fits(s1.len(), s2.len())
        && (0..s1.len()).all(|x| s2.successors(f.apply(x)) == f.apply_set(s1.successors(x)))
}

/// `Q₂⁻¹[f(x)] = R₂⁻¹ f Q₁⁻¹[x]` for every `x`.
pub fn condition4(f: &FrameMap, a: &IntFrame, b: &IntFrame) -> bool {
    f.fits(a.len(), b.len())
        && (0..a.len()).all(|x| {
            b.q().predecessors(f.apply(x)) == b.r().preimage(f.apply_set(a.q().predecessors(x)))
        })
}

/// `E_{Q₂}[f(x)] ⊆ R₂⁻¹ f E_{Q₁}[x]` for every `x`. For maps that are
/// p-morphisms for `R` and `Q` this is equivalent to [`condition4`]; the
/// reverse inclusion fails whenever an `E_{Q₂}`-class is not an
/// `R₂`-downset, even for the identity.
pub fn condition4_eform(f: &FrameMap, a: &IntFrame, b: &IntFrame) -> bool {
    let (ea, eb) = (a.eq(), b.eq());
    f.fits(a.len(), b.len())
        && (0..a.len()).all(|x| {
            eb.successors(f.apply(x))
                .is_subset(b.r().preimage(f.apply_set(ea.successors(x))))
        })
}

pub fn is_mipc_morphism(f: &FrameMap, a: &IntFrame, b: &IntFrame) -> bool {
    is_p_morphism(f, a.r(), b.r()) && is_p_morphism(f, a.q(), b.q()) && condition4(f, a, b)
}

pub fn is_ms4_morphism(f: &FrameMap, a: &Ms4Frame, b: &Ms4Frame) -> bool {
    is_p_morphism(f, a.r(), b.r()) && is_p_morphism(f, a.e(), b.e())
}

/// The morphism notion that belongs to each frame kind.
pub trait Morphic: KripkeFrame {
    fn is_morphism(f: &FrameMap, a: &Self, b: &Self) -> bool;
}

impl Morphic for IntFrame {
    fn is_morphism(f: &FrameMap, a: &Self, b: &Self) -> bool {
        is_mipc_morphism(f, a, b)
    }
}

impl Morphic for Ms4Frame {
    fn is_morphism(f: &FrameMap, a: &Self, b: &Self) -> bool {
        is_ms4_morphism(f, a, b)
    }
}

pub fn is_reduction<F: Morphic>(f: &FrameMap, a: &F, b: &F) -> bool {
    f.fits(a.len(), b.len()) && f.is_onto() && F::is_morphism(f, a, b)
}

/// All morphisms `a → b`, in lexicographic order of image vectors.
pub fn enumerate_morphisms<F: Morphic>(a: &F, b: &F) -> Result<Vec<FrameMap>, MorphismError> {
    enumerate(a, b, |f| F::is_morphism(f, a, b))
}

/// All reductions `a ↠ b`, in lexicographic order of image vectors.
pub fn enumerate_reductions<F: Morphic>(a: &F, b: &F) -> Result<Vec<FrameMap>, MorphismError> {
    enumerate(a, b, |f| f.is_onto() && F::is_morphism(f, a, b))
}

fn enumerate<F, P>(a: &F, b: &F, keep: P) -> Result<Vec<FrameMap>, MorphismError>
where
    F: KripkeFrame,
    P: Fn(&FrameMap) -> bool + Sync,
{
    let (n, m) = (a.len(), b.len());
    if n > MAX_SOURCE_POINTS {
        return Err(MorphismError::TooLarge(n));
    }
    if n == 0 || m == 0 {
        return Ok(Vec::new());
    }
    // split on the first image point; each block is itself in order
    let blocks: Vec<Vec<FrameMap>> = (0..m)
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            let mut image = vec![0; n];
            image[0] = first;
            loop {
                let f = FrameMap {
                    image: image.clone(),
                    target_len: m,
                };
                if keep(&f) {
                    out.push(f);
                }
                let mut i = n;
                loop {
                    i -= 1;
                    if i == 0 {
                        return out;
                    }
                    image[i] += 1;
                    if image[i] < m {
                        break;
                    }
                    image[i] = 0;
                }
            }
        })
        .collect();
    Ok(blocks.into_iter().flatten().collect())
}

/// Given a reduction `f` of the skeleton of `h` onto a clean-cluster frame
/// `target`, returns `f ∘ π` as a reduction of `h` onto `sigma(target)`.
pub fn lift_reduction(h: &Ms4Frame, target: &IntFrame, f: &FrameMap) -> Result<FrameMap, MorphismError> {
    if !has_clean_clusters(target) {
        return Err(MorphismError::TargetNotClean);
    }
    let (skel, pi) = skeleton(h);
    f.check_sizes(skel.len(), target.len())?;
    if !is_reduction(f, &skel, target) {
        return Err(MorphismError::NotReduction);
    }
    let g = pi.as_map().then(f);
    let s = sigma(target);
    let fails = |x: usize| {
        s.r().successors(g.apply(x)) != g.apply_set(h.r().successors(x))
            || s.e().successors(g.apply(x)) != g.apply_set(h.e().successors(x))
    };
    if let Some(x) = (0..h.len()).find(|&x| fails(x)) {
        return Err(MorphismError::LiftFailed(x));
    }
    if !g.is_onto() {
        return Err(MorphismError::LiftNotOnto);
    }
    Ok(g)
}
