//! Truth sets, frame validity and countermodels.
//!
//! A formula is evaluated bottom-up to the set of points where it holds.
//! On an [`IntFrame`] the clauses are intuitionistic: implication looks at
//! `R`-successors, `forall` at `Q`-successors and `exists` at
//! `Q`-predecessors, and valuations assign `R`-upsets. On an [`Ms4Frame`]
//! the base is classical, `box` looks at `R`-successors and `forall` at the
//! `E`-class, and valuations assign arbitrary subsets. `~a` is evaluated as
//! `a -> F` in both.
//!
//! Validity checks enumerate every admissible valuation: letters in sorted
//! order, the first letter varying slowest, and each letter's sets in
//! characteristic-vector order. The first failure found (lowest point
//! under the first failing valuation) is the reported countermodel.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::frames::{Frame, FrameFile, IntFrame, KripkeFrame, Ms4Frame, PointSet, Relation};
use crate::syntax::{print, Formula, Language, Node};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("expected {expected} formula, got {found}")]
    WrongLanguage { expected: Language, found: Language },
    #[error("valuation of `{letter}` is not an admissible set")]
    InadmissibleValuation { letter: String },
    #[error("valuation assigns nothing to `{0}`")]
    MissingLetter(String),
    #[error("point {point} is out of range for a {points}-point frame")]
    PointOutOfRange { point: usize, points: usize },
    #[error("formula has {letters} letters; the cap is {cap}")]
    LetterCapExceeded { letters: usize, cap: usize },
    #[error("frame has {points} points; validity checks are capped at {cap}")]
    FrameTooLarge { points: usize, cap: usize },
}

/// All `R`-upsets in characteristic-vector order.
pub fn upsets(r: &Relation) -> Vec<PointSet> {
    PointSet::all_subsets(r.len())
        .into_iter()
        .filter(|&u| r.image(u).is_subset(u))
        .collect()
}

/// Assignment of point sets to letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Valuation {
    assignment: BTreeMap<String, PointSet>,
}

impl Valuation {
    pub fn new() -> Valuation {
        Valuation::default()
    }

    pub fn with(mut self, letter: impl Into<String>, set: PointSet) -> Valuation {
        self.assignment.insert(letter.into(), set);
        self
    }

    pub fn set(&mut self, letter: impl Into<String>, set: PointSet) {
        self.assignment.insert(letter.into(), set);
    }

    pub fn get(&self, letter: &str) -> Option<PointSet> {
        self.assignment.get(letter).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, PointSet)> {
        self.assignment.iter().map(|(k, v)| (k.as_str(), *v))
    }

    /// Letter → sorted point indices.
    pub fn to_indices(&self) -> BTreeMap<String, Vec<usize>> {
        self.assignment
            .iter()
            .map(|(k, v)| (k.clone(), v.to_vec()))
            .collect()
    }
}

/// How `exists` is read on an intuitionistic frame. The two readings agree
/// on every frame; the alternative exists for cross-checking.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExistsClause {
    /// `x ⊨ ∃φ` iff some `y Q x` has `y ⊨ φ`.
    #[default]
    QPredecessor,
    /// `x ⊨ ∃φ` iff some `y` with `x E_Q y` has `y ⊨ φ`.
    EqPartner,
}

/// Frame-side semantics: which sets a valuation may assign and how each
/// connective acts on truth sets.
pub trait Semantics: KripkeFrame {
    const LANGUAGE: Language;

    fn admissible_sets(&self) -> Vec<PointSet>;

    fn is_admissible(&self, set: PointSet) -> bool;

    #[doc(hidden)]
    fn apply(&self, op: &Op, values: &[PointSet], letters: &[PointSet], exists: ExistsClause) -> PointSet;
}

impl Semantics for IntFrame {
    const LANGUAGE: Language = Language::Intuitionistic;

    fn admissible_sets(&self) -> Vec<PointSet> {
        upsets(self.r())
    }

    fn is_admissible(&self, set: PointSet) -> bool {
        set.is_subset(self.universe()) && self.r().image(set).is_subset(set)
    }

    fn apply(&self, op: &Op, v: &[PointSet], letters: &[PointSet], exists: ExistsClause) -> PointSet {
        let n = self.len();
        match *op {
            Op::Letter(i) => letters[i],
            Op::Top => self.universe(),
            Op::Bottom => PointSet::EMPTY,
            Op::And(a, b) => v[a].intersection(v[b]),
            Op::Or(a, b) => v[a].union(v[b]),
            Op::Implies(a, b) => self.r().box_of(v[a].complement(n).union(v[b])),
            Op::Not(a) => self.r().box_of(v[a].complement(n)),
            Op::Forall(a) => self.q().box_of(v[a]),
            Op::Exists(a) => match exists {
                ExistsClause::QPredecessor => self.q().image(v[a]),
                ExistsClause::EqPartner => self.eq().image(v[a]),
            },
            Op::Box(_) => unreachable!("box in an intuitionistic formula"),
        }
    }
}

impl Semantics for Ms4Frame {
    const LANGUAGE: Language = Language::Modal;

    fn admissible_sets(&self) -> Vec<PointSet> {
        PointSet::all_subsets(self.len())
    }

    fn is_admissible(&self, set: PointSet) -> bool {
        set.is_subset(self.universe())
    }

    fn apply(&self, op: &Op, v: &[PointSet], letters: &[PointSet], _: ExistsClause) -> PointSet {
        let n = self.len();
        match *op {
            Op::Letter(i) => letters[i],
            Op::Top => self.universe(),
            Op::Bottom => PointSet::EMPTY,
            Op::And(a, b) => v[a].intersection(v[b]),
            Op::Or(a, b) => v[a].union(v[b]),
            Op::Implies(a, b) => v[a].complement(n).union(v[b]),
            Op::Not(a) => v[a].complement(n),
            Op::Box(a) => self.r().box_of(v[a]),
            Op::Forall(a) => self.e().box_of(v[a]),
            Op::Exists(_) => unreachable!("exists in a modal formula"),
        }
    }
}

/// One post-order step of a compiled formula; operands index earlier steps.
#[doc(hidden)]
#[derive(Clone, Copy, Debug)]
pub enum Op {
    Letter(usize),
    Top,
    Bottom,
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Implies(usize, usize),
    Forall(usize),
    Exists(usize),
    Box(usize),
}

struct Compiled<'a> {
    letters: Vec<String>,
    ops: Vec<Op>,
    nodes: Vec<&'a Node>,
}

impl<'a> Compiled<'a> {
    fn new(formula: &'a Formula) -> Compiled<'a> {
        let letters: Vec<String> = formula.letters().into_iter().collect();
        let mut c = Compiled {
            letters,
            ops: Vec::new(),
            nodes: Vec::new(),
        };
        c.push(formula.root());
        c
    }

    fn push(&mut self, node: &'a Node) -> usize {
        let op = match node {
            Node::Letter(name) => Op::Letter(self.letters.binary_search(name).expect("letter collected")),
            Node::Top => Op::Top,
            Node::Bottom => Op::Bottom,
            Node::Not(a) => Op::Not(self.push(a)),
            Node::And(a, b) => {
                let (a, b) = (self.push(a), self.push(b));
                Op::And(a, b)
            }
            Node::Or(a, b) => {
                let (a, b) = (self.push(a), self.push(b));
                Op::Or(a, b)
            }
            Node::Implies(a, b) => {
                let (a, b) = (self.push(a), self.push(b));
                Op::Implies(a, b)
            }
            Node::Forall(a) => Op::Forall(self.push(a)),
            Node::Exists(a) => Op::Exists(self.push(a)),
            Node::Box(a) => Op::Box(self.push(a)),
        };
        self.ops.push(op);
        self.nodes.push(node);
        self.ops.len() - 1
    }

    fn eval_all<F: Semantics>(&self, frame: &F, letters: &[PointSet], exists: ExistsClause, out: &mut Vec<PointSet>) {
        out.clear();
        for op in &self.ops {
            let value = frame.apply(op, out, letters, exists);
            out.push(value);
        }
    }

    fn eval<F: Semantics>(&self, frame: &F, letters: &[PointSet], exists: ExistsClause) -> PointSet {
        let mut values = Vec::with_capacity(self.ops.len());
        self.eval_all(frame, letters, exists, &mut values);
        *values.last().expect("formula has a root")
    }

    fn letter_values<F: Semantics>(&self, frame: &F, valuation: &Valuation) -> Result<Vec<PointSet>, SemanticsError> {
        self.letters
            .iter()
            .map(|l| {
                let set = valuation
                    .get(l)
                    .ok_or_else(|| SemanticsError::MissingLetter(l.clone()))?;
                if frame.is_admissible(set) {
                    Ok(set)
                } else {
                    Err(SemanticsError::InadmissibleValuation { letter: l.clone() })
                }
            })
            .collect()
    }
}

fn check_language<F: Semantics>(formula: &Formula) -> Result<(), SemanticsError> {
    if formula.language() != F::LANGUAGE {
        return Err(SemanticsError::WrongLanguage {
            expected: F::LANGUAGE,
            found: formula.language(),
        });
    }
    Ok(())
}

/// `{x : x ⊨_v φ}`.
pub fn truth_set<F: Semantics>(frame: &F, valuation: &Valuation, formula: &Formula) -> Result<PointSet, SemanticsError> {
    truth_set_with(frame, valuation, formula, ExistsClause::default())
}

pub fn truth_set_with<F: Semantics>(
    frame: &F,
    valuation: &Valuation,
    formula: &Formula,
    exists: ExistsClause,
) -> Result<PointSet, SemanticsError> {
    check_language::<F>(formula)?;
    let compiled = Compiled::new(formula);
    let letters = compiled.letter_values(frame, valuation)?;
    Ok(compiled.eval(frame, &letters, exists))
}

/// Truth set of every subformula occurrence, in post-order.
pub fn subformula_truth_sets<'a, F: Semantics>(
    frame: &F,
    valuation: &Valuation,
    formula: &'a Formula,
) -> Result<Vec<(&'a Node, PointSet)>, SemanticsError> {
    check_language::<F>(formula)?;
    let compiled = Compiled::new(formula);
    let letters = compiled.letter_values(frame, valuation)?;
    let mut values = Vec::new();
    compiled.eval_all(frame, &letters, ExistsClause::default(), &mut values);
    Ok(compiled.nodes.iter().copied().zip(values).collect())
}

fn satisfies<F: Semantics>(frame: &F, valuation: &Valuation, point: usize, formula: &Formula) -> Result<bool, SemanticsError> {
    if point >= frame.len() {
        return Err(SemanticsError::PointOutOfRange {
            point,
            points: frame.len(),
        });
    }
    Ok(truth_set(frame, valuation, formula)?.contains(point))
}

pub fn satisfies_int(frame: &IntFrame, valuation: &Valuation, point: usize, formula: &Formula) -> Result<bool, SemanticsError> {
    satisfies(frame, valuation, point, formula)
}

pub fn satisfies_ms4(frame: &Ms4Frame, valuation: &Valuation, point: usize, formula: &Formula) -> Result<bool, SemanticsError> {
    satisfies(frame, valuation, point, formula)
}

/// Size caps for exhaustive validity checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidityOptions {
    pub letter_cap: usize,
    pub max_points: usize,
}

impl Default for ValidityOptions {
    fn default() -> Self {
        ValidityOptions {
            letter_cap: 3,
            max_points: 6,
        }
    }
}

impl ValidityOptions {
    /// Library limits only: 12 points, and as many letters as a 12-point
    /// frame's valuation space can be stepped through.
    pub fn unbounded() -> Self {
        ValidityOptions {
            letter_cap: usize::MAX,
            max_points: crate::frames::MAX_POINTS,
        }
    }
}

/// A failing point under a valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel {
    pub frame: Frame,
    pub valuation: Valuation,
    pub point: usize,
    pub formula: Formula,
}

#[derive(Serialize)]
struct CountermodelJson {
    frame: FrameFile,
    valuation: BTreeMap<String, Vec<usize>>,
    point: usize,
    formula: String,
}

impl Countermodel {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CountermodelJson {
            frame: FrameFile::from_any(&self.frame),
            valuation: self.valuation.to_indices(),
            point: self.point,
            formula: print(&self.formula),
        })
        .expect("countermodel serializes")
    }
}

/// First failure under the deterministic valuation order, if any.
pub fn countermodel<F>(frame: &F, formula: &Formula, options: ValidityOptions) -> Result<Option<Countermodel>, SemanticsError>
where
    F: Semantics + Into<Frame>,
{
    Ok(search(frame, formula, options)?.map(|(letters, point)| {
        let compiled = Compiled::new(formula);
        let valuation = compiled
            .letters
            .iter()
            .cloned()
            .zip(letters)
            .fold(Valuation::new(), |v, (l, s)| v.with(l, s));
        Countermodel {
            frame: frame.clone().into(),
            valuation,
            point,
            formula: formula.clone(),
        }
    }))
}

/// Whether `formula` holds at every point under every admissible valuation.
pub fn frame_validates<F: Semantics>(frame: &F, formula: &Formula, options: ValidityOptions) -> Result<bool, SemanticsError> {
    Ok(search(frame, formula, options)?.is_none())
}

fn search<F: Semantics>(
    frame: &F,
    formula: &Formula,
    options: ValidityOptions,
) -> Result<Option<(Vec<PointSet>, usize)>, SemanticsError> {
    check_language::<F>(formula)?;
    if frame.len() > options.max_points {
        return Err(SemanticsError::FrameTooLarge {
            points: frame.len(),
            cap: options.max_points,
        });
    }
    let compiled = Compiled::new(formula);
    let k = compiled.letters.len();
    if k > options.letter_cap {
        return Err(SemanticsError::LetterCapExceeded {
            letters: k,
            cap: options.letter_cap,
        });
    }
    let sets = frame.admissible_sets();
    let universe = frame.universe();
    let mut digits = vec![0usize; k];
    let mut letters = vec![sets[0]; k];
    let mut values = Vec::with_capacity(compiled.ops.len());
    loop {
        for (slot, &d) in letters.iter_mut().zip(&digits) {
            *slot = sets[d];
        }
        compiled.eval_all(frame, &letters, ExistsClause::default(), &mut values);
        let truth = *values.last().expect("formula has a root");
        if let Some(point) = universe.difference(truth).first() {
            return Ok(Some((letters, point)));
        }
        // odometer, last letter fastest
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < sets.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}
