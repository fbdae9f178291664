//! The skeleton of an MS4-frame, the frame `sigma` builds from an
//! intuitionistic frame, and isomorphism search.

use thiserror::Error;

use crate::frames::{er, qe, IntFrame, KripkeFrame, Ms4Frame, Relation};
use crate::morphisms::{is_ms4_morphism, FrameMap, MorphismError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FunctorError {
    #[error("the map is not an MS4-morphism")]
    NotMorphism,
    #[error("the map sends points {0} and {1} of one class to different classes")]
    NotClassConstant(usize, usize),
    #[error(transparent)]
    Map(#[from] MorphismError),
}

/// The quotient of an MS4-frame's points by `E_R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    class_of: Vec<usize>,
    classes: usize,
}

impl QuotientMap {
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> usize {
        self.classes
    }

    pub fn source_len(&self) -> usize {
        self.class_of.len()
    }

    /// Least point of each class.
    pub fn representatives(&self) -> Vec<usize> {
        (0..self.classes)
            .map(|c| self.class_of.iter().position(|&k| k == c).expect("classes are onto"))
            .collect()
    }

    pub fn as_map(&self) -> FrameMap {
        FrameMap::new(self.class_of.clone(), self.classes).expect("class indices in range")
    }
}

fn class_name(names: &[String], members: impl Iterator<Item = usize>) -> String {
    let inner: Vec<&str> = members.map(|x| names[x].as_str()).collect();
    format!("{{{}}}", inner.join(","))
}

/// `(Y/E_R, R', Q')` with `[x] R' [y]` iff `x R y` and `[x] Q' [y]` iff
/// `x Q_E y`. Classes are numbered by their least point.
pub fn skeleton(g: &Ms4Frame) -> (IntFrame, QuotientMap) {
    let cluster = er(g.r()).expect("R of a valid frame is a quasi-order");
    let blocks = cluster.classes().expect("E_R is an equivalence");
    let n = g.len();
    let mut class_of = vec![0; n];
    for (c, block) in blocks.iter().enumerate() {
        for x in block.iter() {
            class_of[x] = c;
        }
    }
    let reps: Vec<usize> = blocks.iter().map(|b| b.first().expect("blocks are nonempty")).collect();
    let q_e = qe(g.r(), g.e());
    let lift = |s: &Relation| {
        Relation::from_pairs(
            reps.len(),
            reps.iter().enumerate().flat_map(|(i, &x)| {
                reps.iter()
                    .enumerate()
                    .filter(move |&(_, &y)| s.contains(x, y))
                    .map(move |(j, _)| (i, j))
            }),
        )
        .expect("class indices in range")
    };
    let (r, q) = (lift(g.r()), lift(&q_e));
    let names: Vec<String> = blocks.iter().map(|b| class_name(g.names(), b.iter())).collect();
    let frame = IntFrame::new(names, r.clone(), q.clone())
        .or_else(|_| IntFrame::with_default_names(r, q))
        .expect("skeleton of a valid frame is valid");
    let classes = blocks.len();
    (frame, QuotientMap { class_of, classes })
}

/// The map induced on skeletons by an MS4-morphism.
pub fn skeleton_map(f: &FrameMap, a: &Ms4Frame, b: &Ms4Frame) -> Result<FrameMap, FunctorError> {
    f.check_sizes(a.len(), b.len())?;
    if !is_ms4_morphism(f, a, b) {
        return Err(FunctorError::NotMorphism);
    }
    let (_, pa) = skeleton(a);
    let (_, pb) = skeleton(b);
    let mut image: Vec<Option<(usize, usize)>> = vec![None; pa.classes()];
    for x in 0..a.len() {
        let target = pb.class_of(f.apply(x));
        match image[pa.class_of(x)] {
            None => image[pa.class_of(x)] = Some((x, target)),
            Some((y, t)) if t != target => return Err(FunctorError::NotClassConstant(y, x)),
            Some(_) => {}
        }
    }
    let image = image.into_iter().map(|e| e.expect("every class has a point").1).collect();
    Ok(FrameMap::new(image, pb.classes())?)
}

/// `(X, R, E_Q)`.
pub fn sigma(f: &IntFrame) -> Ms4Frame {
    Ms4Frame::new(f.names().to_vec(), f.r().clone(), f.eq()).expect("sigma of a valid frame is valid")
}

/// `sigma` on maps: the same function on points.
pub fn sigma_map(f: &FrameMap) -> FrameMap {
    f.clone()
}

/// Whether `perm` maps `a` onto `b` preserving and reflecting both relations.
pub fn is_isomorphism<F: KripkeFrame>(a: &F, b: &F, perm: &[usize]) -> bool {
    let n = a.len();
    if b.len() != n || perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return false;
        }
    }
    a.order().permuted(perm) == *b.order() && a.quantifier().permuted(perm) == *b.quantifier()
}

type Signature = [usize; 4];

fn signatures<F: KripkeFrame>(f: &F) -> Vec<Signature> {
    let (r, q) = (f.order(), f.quantifier());
    (0..f.len())
        .map(|x| {
            [
                r.successors(x).len(),
                r.predecessors(x).len(),
                q.successors(x).len(),
                q.predecessors(x).len(),
            ]
        })
        .collect()
}

/// The first isomorphism `a → b` in lexicographic order of image vectors.
pub fn find_isomorphism<F: KripkeFrame>(a: &F, b: &F) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let (sa, sb) = (signatures(a), signatures(b));
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort_unstable();
    kb.sort_unstable();
    if ka != kb {
        return None;
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(a, b, &sa, &sb, &mut perm, &mut used).then_some(perm)
}

fn extend<F: KripkeFrame>(
    a: &F,
    b: &F,
    sa: &[Signature],
    sb: &[Signature],
    perm: &mut Vec<usize>,
    used: &mut [bool],
) -> bool {
    let x = perm.len();
    if x == a.len() {
        return true;
    }
    let rels = [(a.order(), b.order()), (a.quantifier(), b.quantifier())];
    for y in 0..b.len() {
        if used[y] || sa[x] != sb[y] {
            continue;
        }
        let consistent = rels.iter().all(|(ra, rb)| {
            ra.contains(x, x) == rb.contains(y, y)
                && perm.iter().enumerate().all(|(w, &z)| {
                    ra.contains(w, x) == rb.contains(z, y) && ra.contains(x, w) == rb.contains(y, z)
                })
        });
        if !consistent {
            continue;
        }
        perm.push(y);
        used[y] = true;
        if extend(a, b, sa, sb, perm, used) {
            return true;
        }
        perm.pop();
        used[y] = false;
    }
    false
}

/// Checks that `skeleton(sigma(f))` is `f` with every point in its own
/// class, numbered as before.
pub fn rho_sigma_is_identity(f: &IntFrame) -> bool {
    let (skel, pi) = skeleton(&sigma(f));
    let identity = (0..f.len()).all(|x| pi.class_of(x) == x) && pi.classes() == f.len();
    identity && skel.r() == f.r() && skel.q() == f.q()
}
