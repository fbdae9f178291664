//! Finite frames for the two languages.
//!
//! An [`IntFrame`] `(X, R, Q)` has a partial order `R` and a quasi-order
//! `Q ⊇ R` whose every step factors as an `R`-step followed by an
//! `E_Q`-step. An [`Ms4Frame`] `(Y, R, E)` has a quasi-order `R` and an
//! equivalence `E` satisfying the commutativity condition
//! `x E y, y R z ⟹ ∃u: x R u, u E z`.
//!
//! Upset closure of `Q` (`U` an `R`-upset implies `Q[U]` is one) holds in
//! every finite frame with `R ⊆ Q` and `Q` transitive, so the validator does
//! not check it separately: if `u ∈ U`, `u Q w` and `w R w'`, then
//! `u Q w'` because `R ⊆ Q`.
//!
//! Point names are for display; every algorithm works on indices.

mod json;
mod relation;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use json::FrameFile;
pub use relation::{PointSet, Relation, MAX_POINTS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FrameKind {
    #[serde(rename = "int")]
    Int,
    #[serde(rename = "ms4")]
    Ms4,
}

impl fmt::Display for FrameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrameKind::Int => "int",
            FrameKind::Ms4 => "ms4",
        })
    }
}

/// One frame condition, named by what it requires.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    NonEmpty,
    WithinSizeLimit,
    UniqueNames,
    RelationSize,
    RReflexive,
    RTransitive,
    RAntisymmetric,
    QReflexive,
    QTransitive,
    /// `R ⊆ Q`.
    RWithinQ,
    /// `x Q y ⟹ ∃z: x R z, z E_Q y`.
    QFactorsThroughR,
    EReflexive,
    ETransitive,
    ESymmetric,
    /// `x E y, y R z ⟹ ∃u: x R u, u E z`.
    Commutativity,
}

impl Condition {
    pub fn describe(self) -> &'static str {
        match self {
            Condition::NonEmpty => "frame has at least one point",
            Condition::WithinSizeLimit => "frame has at most 12 points",
            Condition::UniqueNames => "point names are distinct",
            Condition::RelationSize => "relations range over the point set",
            Condition::RReflexive => "R is reflexive",
            Condition::RTransitive => "R is transitive",
            Condition::RAntisymmetric => "R is antisymmetric",
            Condition::QReflexive => "Q is reflexive",
            Condition::QTransitive => "Q is transitive",
            Condition::RWithinQ => "R is contained in Q",
            Condition::QFactorsThroughR => "x Q y implies x R z and z E_Q y for some z",
            Condition::EReflexive => "E is reflexive",
            Condition::ETransitive => "E is transitive",
            Condition::ESymmetric => "E is symmetric",
            Condition::Commutativity => "x E y and y R z imply x R u and u E z for some u",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "violated: {}; witness {:?}", self.condition.describe(), self.witness)
    }
}

/// Every violated condition with its first witness. Empty iff valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, condition: Condition) -> Option<&Violation> {
        self.violations.iter().find(|v| v.condition == condition)
    }

    fn push(&mut self, condition: Condition, witness: Vec<usize>) {
        self.violations.push(Violation { condition, witness });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("invalid frame:\n{0}")]
    Invalid(ValidationReport),
    #[error("relation is not a quasi-order")]
    NotQuasiOrder,
    #[error("pair {pair:?} of relation {relation} is out of range for {points} points")]
    IndexOutOfRange {
        relation: &'static str,
        pair: [usize; 2],
        points: usize,
    },
    #[error("{kind} frame needs relation {relation}")]
    MissingRelation { kind: FrameKind, relation: &'static str },
    #[error("{kind} frame must not carry relation {relation}")]
    UnexpectedRelation { kind: FrameKind, relation: &'static str },
    #[error("frame has {0} points; at most 12 are supported")]
    TooLarge(usize),
}

/// Names `x0, x1, …`.
pub fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

fn check_shape(names: &[String], relations: [&Relation; 2], report: &mut ValidationReport) -> bool {
    let n = names.len();
    if n == 0 {
        report.push(Condition::NonEmpty, vec![]);
        return false;
    }
    if n > MAX_POINTS {
        report.push(Condition::WithinSizeLimit, vec![n]);
        return false;
    }
    if let Some(bad) = relations.iter().position(|r| r.len() != n) {
        report.push(Condition::RelationSize, vec![bad, relations[bad].len()]);
        return false;
    }
    for j in 0..n {
        if let Some(i) = (0..j).find(|&i| names[i] == names[j]) {
            report.push(Condition::UniqueNames, vec![i, j]);
            break;
        }
    }
    true
}

fn check_order_conditions(r: &Relation, partial: bool, report: &mut ValidationReport) {
    if let Some(x) = r.first_irreflexive_point() {
        report.push(Condition::RReflexive, vec![x]);
    }
    if let Some((x, y, z)) = r.first_transitivity_violation() {
        report.push(Condition::RTransitive, vec![x, y, z]);
    }
    if partial {
        if let Some((x, y)) = r.first_antisymmetry_violation() {
            report.push(Condition::RAntisymmetric, vec![x, y]);
        }
    }
}

/// Checks every condition of a finite intuitionistic monadic frame.
pub fn validate_int_frame(names: &[String], r: &Relation, q: &Relation) -> ValidationReport {
    let mut report = ValidationReport::default();
    if !check_shape(names, [r, q], &mut report) {
        return report;
    }
    check_order_conditions(r, true, &mut report);
    if let Some(x) = q.first_irreflexive_point() {
        report.push(Condition::QReflexive, vec![x]);
    }
    if let Some((x, y, z)) = q.first_transitivity_violation() {
        report.push(Condition::QTransitive, vec![x, y, z]);
    }
    if let Some((x, y)) = r.first_pair_outside(q) {
        report.push(Condition::RWithinQ, vec![x, y]);
    }
    let eq = q.intersection(&q.inverse());
    if let Some((x, y)) = q.first_pair_outside(&r.then(&eq)) {
        report.push(Condition::QFactorsThroughR, vec![x, y]);
    }
    report
}

/// Checks every condition of a finite monadic S4 frame.
pub fn validate_ms4_frame(names: &[String], r: &Relation, e: &Relation) -> ValidationReport {
    let mut report = ValidationReport::default();
    if !check_shape(names, [r, e], &mut report) {
        return report;
    }
    check_order_conditions(r, false, &mut report);
    if let Some(x) = e.first_irreflexive_point() {
        report.push(Condition::EReflexive, vec![x]);
    }
    if let Some((x, y, z)) = e.first_transitivity_violation() {
        report.push(Condition::ETransitive, vec![x, y, z]);
    }
    if let Some((x, y)) = e.first_symmetry_violation() {
        report.push(Condition::ESymmetric, vec![x, y]);
    }
    let lhs = e.then(r);
    let rhs = r.then(e);
    if let Some((x, z)) = lhs.first_pair_outside(&rhs) {
        let y = (0..r.len())
            .find(|&y| e.contains(x, y) && r.contains(y, z))
            .expect("composite pair has a midpoint");
        report.push(Condition::Commutativity, vec![x, y, z]);
    }
    report
}

/// Access shared by both frame types: `order` interprets the intuitionistic
/// implication or `box`, `quantifier` interprets `forall`.
pub trait KripkeFrame: Clone + fmt::Debug + Send + Sync {
    const KIND: FrameKind;

    fn names(&self) -> &[String];
    fn order(&self) -> &Relation;
    fn quantifier(&self) -> &Relation;

    fn len(&self) -> usize {
        self.names().len()
    }

    /// Always false for a validated frame.
    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn universe(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// Validates and builds a frame from its two relations.
    fn from_relations(names: Vec<String>, order: Relation, quantifier: Relation) -> Result<Self, FrameError>;

    /// Same relations under different names.
    fn with_names(&self, names: Vec<String>) -> Self {
        Self::from_relations(names, self.order().clone(), self.quantifier().clone())
            .expect("renaming keeps validity")
    }
}

/// A validated finite frame `(X, R, Q)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntFrame {
    names: Vec<String>,
    r: Relation,
    q: Relation,
}

impl IntFrame {
    pub fn new(names: Vec<String>, r: Relation, q: Relation) -> Result<IntFrame, FrameError> {
        let report = validate_int_frame(&names, &r, &q);
        if !report.is_valid() {
            return Err(FrameError::Invalid(report));
        }
        Ok(IntFrame { names, r, q })
    }

    pub fn with_default_names(r: Relation, q: Relation) -> Result<IntFrame, FrameError> {
        IntFrame::new(default_names(r.len()), r, q)
    }

    pub fn r(&self) -> &Relation {
        &self.r
    }

    pub fn q(&self) -> &Relation {
        &self.q
    }

    /// `E_Q`.
    pub fn eq(&self) -> Relation {
        er(&self.q).expect("Q is a quasi-order")
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl KripkeFrame for IntFrame {
    const KIND: FrameKind = FrameKind::Int;

    fn names(&self) -> &[String] {
        &self.names
    }

    fn order(&self) -> &Relation {
        &self.r
    }

    fn quantifier(&self) -> &Relation {
        &self.q
    }

    fn from_relations(names: Vec<String>, r: Relation, q: Relation) -> Result<Self, FrameError> {
        IntFrame::new(names, r, q)
    }
}

impl fmt::Debug for IntFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntFrame")
            .field("points", &self.names)
            .field("R", &self.r)
            .field("Q", &self.q)
            .finish()
    }
}

/// A validated finite frame `(Y, R, E)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Ms4Frame {
    names: Vec<String>,
    r: Relation,
    e: Relation,
}

impl Ms4Frame {
    pub fn new(names: Vec<String>, r: Relation, e: Relation) -> Result<Ms4Frame, FrameError> {
        let report = validate_ms4_frame(&names, &r, &e);
        if !report.is_valid() {
            return Err(FrameError::Invalid(report));
        }
        Ok(Ms4Frame { names, r, e })
    }

    pub fn with_default_names(r: Relation, e: Relation) -> Result<Ms4Frame, FrameError> {
        Ms4Frame::new(default_names(r.len()), r, e)
    }

    pub fn r(&self) -> &Relation {
        &self.r
    }

    pub fn e(&self) -> &Relation {
        &self.e
    }

    /// `Q_E = R ; E`.
    pub fn qe(&self) -> Relation {
        qe(&self.r, &self.e)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl KripkeFrame for Ms4Frame {
    const KIND: FrameKind = FrameKind::Ms4;

    fn names(&self) -> &[String] {
        &self.names
    }

    fn order(&self) -> &Relation {
        &self.r
    }

    fn quantifier(&self) -> &Relation {
        &self.e
    }

    fn from_relations(names: Vec<String>, r: Relation, e: Relation) -> Result<Self, FrameError> {
        Ms4Frame::new(names, r, e)
    }
}

impl fmt::Debug for Ms4Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ms4Frame")
            .field("points", &self.names)
            .field("R", &self.r)
            .field("E", &self.e)
            .finish()
    }
}

/// Either kind of frame, as read from a frame file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Frame {
    Int(IntFrame),
    Ms4(Ms4Frame),
}

impl Frame {
    pub fn kind(&self) -> FrameKind {
        match self {
            Frame::Int(_) => FrameKind::Int,
            Frame::Ms4(_) => FrameKind::Ms4,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Frame::Int(f) => f.len(),
            Frame::Ms4(f) => f.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn names(&self) -> &[String] {
        match self {
            Frame::Int(f) => f.names(),
            Frame::Ms4(f) => f.names(),
        }
    }
}

impl From<IntFrame> for Frame {
    fn from(f: IntFrame) -> Frame {
        Frame::Int(f)
    }
}

impl From<Ms4Frame> for Frame {
    fn from(f: Ms4Frame) -> Frame {
        Frame::Ms4(f)
    }
}

/// `E_S = S ∩ S⁻¹` for a quasi-order `S`.
pub fn er(s: &Relation) -> Result<Relation, FrameError> {
    if !s.is_quasi_order() {
        return Err(FrameError::NotQuasiOrder);
    }
    Ok(s.intersection(&s.inverse()))
}

/// `Q_E`: `x Q_E y` iff `x R z` and `z E y` for some `z`.
pub fn qe(r: &Relation, e: &Relation) -> Relation {
    r.then(e)
}

/// No two distinct points are both `R`-related and `E_Q`-related.
pub fn has_clean_clusters(frame: &IntFrame) -> bool {
    let eq = frame.eq();
    frame.r().pairs().all(|(x, y)| x == y || !eq.contains(x, y))
}

/// Points `x ∈ U` such that `x R y` with `y ∈ U` forces `x = y`.
pub fn max_points(r: &Relation, set: PointSet) -> PointSet {
    PointSet::from_indices(
        set.iter()
            .filter(|&x| r.successors(x).intersection(set).is_subset(PointSet::singleton(x))),
    )
}

/// Whether every subset `U` lies below its maximal points:
/// `U ⊆ R⁻¹[max U]`.
pub fn grz_max_check(r: &Relation) -> bool {
    PointSet::all_subsets(r.len())
        .into_iter()
        .all(|set| set.is_subset(r.preimage(max_points(r, set))))
}

/// A finite frame is an MGrz-frame exactly when its `R` is antisymmetric.
pub fn is_finite_mgrz(frame: &Ms4Frame) -> bool {
    frame.r().is_antisymmetric()
}

/// Small frames used throughout examples and tests.
pub mod samples {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    /// `a < b > c`, with `E_Q`-classes `{a, b}` and `{c}`. `Q₁` is the
    /// composite `R₁ ; E` for that partition, which is the only way to meet
    /// the factorization condition with these classes.
    pub fn f1() -> IntFrame {
        let r = Relation::from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (2, 1)]).unwrap();
        let q = Relation::from_pairs(
            3,
            r.pairs().chain([(1, 0), (2, 0)]),
        )
        .unwrap();
        IntFrame::new(names(&["a", "b", "c"]), r, q).unwrap()
    }

    /// `u < v` with `Q` total.
    pub fn f2() -> IntFrame {
        let r = Relation::from_pairs(2, [(0, 0), (1, 1), (0, 1)]).unwrap();
        IntFrame::new(names(&["u", "v"]), r, Relation::total(2)).unwrap()
    }

    pub fn singleton_int() -> IntFrame {
        IntFrame::new(names(&["x"]), Relation::identity(1), Relation::identity(1)).unwrap()
    }

    pub fn singleton_ms4() -> Ms4Frame {
        Ms4Frame::new(names(&["x"]), Relation::identity(1), Relation::identity(1)).unwrap()
    }

    /// Two-point `R`-cluster with discrete `E`.
    pub fn cluster_ms4() -> Ms4Frame {
        Ms4Frame::new(names(&["x", "y"]), Relation::total(2), Relation::identity(2)).unwrap()
    }
}
