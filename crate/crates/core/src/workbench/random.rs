use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::syntax::{Formula, Node};

const LETTERS: [&str; 6] = ["p", "q", "r", "s", "t", "u"];

/// Size limits for generated intuitionistic formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FormulaShape {
    /// Letters are drawn from the first `letters` of `p, q, r, s, t, u`.
    pub letters: usize,
    /// Maximum tree height; leaves have height 0.
    pub max_depth: usize,
}

fn node<R: Rng>(rng: &mut R, shape: FormulaShape, depth: usize) -> Node {
    let leaf = |rng: &mut R| match rng.gen_range(0..shape.letters + 2) {
        0 => Node::Top,
        1 => Node::Bottom,
        i => Node::letter(LETTERS[i - 2]),
    };
    if depth == 0 || rng.gen_bool(0.2) {
        return leaf(rng);
    }
    let d = depth - 1;
    match rng.gen_range(0..6) {
        0 => Node::not(node(rng, shape, d)),
        1 => Node::and(node(rng, shape, d), node(rng, shape, d)),
        2 => Node::or(node(rng, shape, d), node(rng, shape, d)),
        3 => Node::implies(node(rng, shape, d), node(rng, shape, d)),
        4 => Node::forall(node(rng, shape, d)),
        _ => Node::exists(node(rng, shape, d)),
    }
}

pub fn random_formula<R: Rng>(rng: &mut R, shape: FormulaShape) -> Formula {
    let letters = shape.letters.clamp(1, LETTERS.len());
    let shape = FormulaShape { letters, ..shape };
    Formula::intuitionistic(node(rng, shape, shape.max_depth)).expect("generator emits no box")
}

/// `count` formulas from a ChaCha8 stream seeded with `seed`.
pub fn random_formulas(seed: u64, count: usize, shape: FormulaShape) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_formula(&mut rng, shape)).collect()
}
