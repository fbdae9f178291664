//! Deliberately naive reference implementations: boolean matrices, clauses
//! read straight off the definitions, no bitsets and no shared code with
//! the library beyond the formula AST.

#![allow(dead_code)]

use std::collections::BTreeMap;

use monadic_kripke::frames::KripkeFrame;
use monadic_kripke::syntax::{Formula, Node};

pub type Mat = Vec<Vec<bool>>;

pub fn mat_of<F: KripkeFrame>(f: &F) -> (Mat, Mat) {
    let n = f.len();
    let grab = |rel: &monadic_kripke::frames::Relation| {
        (0..n).map(|i| (0..n).map(|j| rel.contains(i, j)).collect()).collect()
    };
    (grab(f.order()), grab(f.quantifier()))
}

pub fn from_bits(n: usize, bits: u32) -> Mat {
    (0..n).map(|i| (0..n).map(|j| bits >> (i * n + j) & 1 == 1).collect()).collect()
}

pub fn reflexive(m: &Mat) -> bool {
    (0..m.len()).all(|i| m[i][i])
}

pub fn transitive(m: &Mat) -> bool {
    let n = m.len();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(m[i][j] && m[j][k]) || m[i][k])))
}

pub fn antisymmetric(m: &Mat) -> bool {
    let n = m.len();
    (0..n).all(|i| (0..n).all(|j| i == j || !(m[i][j] && m[j][i])))
}

pub fn symmetric(m: &Mat) -> bool {
    let n = m.len();
    (0..n).all(|i| (0..n).all(|j| m[i][j] == m[j][i]))
}

pub fn subset(a: &Mat, b: &Mat) -> bool {
    let n = a.len();
    (0..n).all(|i| (0..n).all(|j| !a[i][j] || b[i][j]))
}

/// `x ~ y` iff `x S y` and `y S x`.
pub fn sym_part(s: &Mat) -> Mat {
    let n = s.len();
    (0..n).map(|i| (0..n).map(|j| s[i][j] && s[j][i]).collect()).collect()
}

/// `x (R;E) y` iff `x R z` and `z E y` for some `z`.
pub fn compose(r: &Mat, e: &Mat) -> Mat {
    let n = r.len();
    (0..n)
        .map(|i| (0..n).map(|j| (0..n).any(|k| r[i][k] && e[k][j])).collect())
        .collect()
}

pub fn subsets(n: usize) -> Vec<Vec<bool>> {
    (0..1u32 << n).map(|b| (0..n).map(|i| b >> i & 1 == 1).collect()).collect()
}

pub fn is_upset(r: &Mat, u: &[bool]) -> bool {
    let n = r.len();
    (0..n).all(|x| !u[x] || (0..n).all(|y| !r[x][y] || u[y]))
}

/// Every condition of a finite intuitionistic frame, including the one the
/// library derives from the others.
pub fn is_int_frame(r: &Mat, q: &Mat) -> bool {
    let n = r.len();
    let partial = reflexive(r) && transitive(r) && antisymmetric(r);
    let quasi = reflexive(q) && transitive(q);
    if !(partial && quasi && subset(r, q)) {
        return false;
    }
    let upsets_closed = subsets(n).iter().filter(|u| is_upset(r, u)).all(|u| {
        let image: Vec<bool> = (0..n).map(|y| (0..n).any(|x| u[x] && q[x][y])).collect();
        is_upset(r, &image)
    });
    let eq = sym_part(q);
    let factor = (0..n).all(|x| (0..n).all(|y| !q[x][y] || (0..n).any(|z| r[x][z] && eq[z][y])));
    upsets_closed && factor
}

pub fn is_ms4_frame(r: &Mat, e: &Mat) -> bool {
    let n = r.len();
    let qo = reflexive(r) && transitive(r);
    let eqv = reflexive(e) && transitive(e) && symmetric(e);
    let commute = (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| !(e[x][y] && r[y][z]) || (0..n).any(|u| r[x][u] && e[u][z])))
    });
    qo && eqv && commute
}

pub fn clean(r: &Mat, q: &Mat) -> bool {
    let eq = sym_part(q);
    let n = r.len();
    (0..n).all(|x| (0..n).all(|y| x == y || !(r[x][y] && eq[x][y])))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically least relabeled matrix pair.
pub fn canon(a: &Mat, b: &Mat) -> Vec<bool> {
    let n = a.len();
    permutations(n)
        .into_iter()
        .map(|p| {
            let mut key = Vec::with_capacity(2 * n * n);
            for m in [a, b] {
                for i in 0..n {
                    for j in 0..n {
                        key.push(m[p[i]][p[j]]);
                    }
                }
            }
            key
        })
        .min()
        .unwrap_or_default()
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Reading {
    Intuitionistic,
    Modal,
}

/// Truth vector of a node, computed clause by clause.
pub fn truth(
    reading: Reading,
    r: &Mat,
    s: &Mat,
    val: &BTreeMap<String, Vec<bool>>,
    node: &Node,
) -> Vec<bool> {
    let n = r.len();
    let sub = |a: &Node| truth(reading, r, s, val, a);
    let all = |rel: &Mat, x: usize, t: &[bool]| (0..n).all(|y| !rel[x][y] || t[y]);
    match node {
        Node::Letter(p) => val[p].clone(),
        Node::Top => vec![true; n],
        Node::Bottom => vec![false; n],
        Node::And(a, b) => {
            let (a, b) = (sub(a), sub(b));
            (0..n).map(|x| a[x] && b[x]).collect()
        }
        Node::Or(a, b) => {
            let (a, b) = (sub(a), sub(b));
            (0..n).map(|x| a[x] || b[x]).collect()
        }
        Node::Implies(a, b) => {
            let (a, b) = (sub(a), sub(b));
            let imp: Vec<bool> = (0..n).map(|y| !a[y] || b[y]).collect();
            match reading {
                Reading::Intuitionistic => (0..n).map(|x| all(r, x, &imp)).collect(),
                Reading::Modal => imp,
            }
        }
        Node::Not(a) => {
            let neg: Vec<bool> = sub(a).into_iter().map(|t| !t).collect();
            match reading {
                Reading::Intuitionistic => (0..n).map(|x| all(r, x, &neg)).collect(),
                Reading::Modal => neg,
            }
        }
        Node::Box(a) => {
            let a = sub(a);
            (0..n).map(|x| all(r, x, &a)).collect()
        }
        Node::Forall(a) => {
            let a = sub(a);
            (0..n).map(|x| all(s, x, &a)).collect()
        }
        // some Q-predecessor satisfies a
        Node::Exists(a) => {
            let a = sub(a);
            (0..n).map(|x| (0..n).any(|y| s[y][x] && a[y])).collect()
        }
    }
}

/// Truth at every point under every admissible valuation.
pub fn valid(reading: Reading, r: &Mat, s: &Mat, formula: &Formula) -> bool {
    let n = r.len();
    let sets: Vec<Vec<bool>> = subsets(n)
        .into_iter()
        .filter(|u| reading == Reading::Modal || is_upset(r, u))
        .collect();
    let letters: Vec<String> = formula.letters().into_iter().collect();
    let mut digits = vec![0usize; letters.len()];
    loop {
        let val: BTreeMap<String, Vec<bool>> = letters
            .iter()
            .zip(&digits)
            .map(|(l, &d)| (l.clone(), sets[d].clone()))
            .collect();
        if truth(reading, r, s, &val, formula.root()).contains(&false) {
            return false;
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return true;
            }
            digits[i] += 1;
            if digits[i] < sets.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// `S₂[f(x)] = f S₁[x]` for every `x`.
pub fn p_morphism(f: &[usize], s1: &Mat, s2: &Mat) -> bool {
    let (n, m) = (s1.len(), s2.len());
    (0..n).all(|x| {
        (0..m).all(|y| s2[f[x]][y] == (0..n).any(|z| s1[x][z] && f[z] == y))
    })
}

/// `Q₂⁻¹[f(x)] = R₂⁻¹ f Q₁⁻¹[x]` for every `x`.
pub fn back_condition(f: &[usize], r2: &Mat, q1: &Mat, q2: &Mat) -> bool {
    let (n, m) = (q1.len(), q2.len());
    (0..n).all(|x| {
        (0..m).all(|y| q2[y][f[x]] == (0..n).any(|z| q1[z][x] && r2[y][f[z]]))
    })
}

pub fn all_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| (0..m).map(move |y| [p.clone(), vec![y]].concat()))
            .collect();
    }
    out
}

pub fn onto(f: &[usize], m: usize) -> bool {
    (0..m).all(|y| f.contains(&y))
}
