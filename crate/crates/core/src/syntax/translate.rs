use super::printer::{render_with, Style};
use super::{Formula, Language, Node, SyntaxError};

fn require_intuitionistic(formula: &Formula) -> Result<(), SyntaxError> {
    if formula.language() != Language::Intuitionistic {
        return Err(SyntaxError::WrongLanguage {
            expected: Language::Intuitionistic,
            found: formula.language(),
        });
    }
    Ok(())
}

fn godel(node: &Node) -> Node {
    match node {
        Node::Letter(_) => Node::boxed(node.clone()),
        Node::Top => Node::Top,
        Node::Bottom => Node::Bottom,
        Node::And(a, b) => Node::and(godel(a), godel(b)),
        Node::Or(a, b) => Node::or(godel(a), godel(b)),
        Node::Implies(a, b) => Node::boxed(Node::implies(godel(a), godel(b))),
        Node::Not(a) => Node::boxed(Node::not(godel(a))),
        Node::Forall(a) => Node::boxed(Node::forall(godel(a))),
        // the modal language has no primitive exists; use its dual ~forall~
        Node::Exists(a) => Node::not(Node::forall(Node::not(godel(a)))),
        Node::Box(_) => unreachable!("box in an intuitionistic formula"),
    }
}

/// The Gödel translation into the modal language: letters and implications
/// are boxed, `forall` becomes `box forall`, and `exists` becomes
/// `~ forall ~`.
pub fn godel_translate(formula: &Formula) -> Result<Formula, SyntaxError> {
    require_intuitionistic(formula)?;
    Formula::modal(godel(formula.root()))
}

const FIRST_ORDER: Style = Style {
    letter: |name| format!("{name}(x)"),
    top: "T",
    bottom: "F",
    not: "~",
    forall: "forall x",
    exists: "exists x",
    boxed: "box",
    paren_gap: " ",
};

/// Renders an intuitionistic formula as a one-variable first-order formula:
/// each letter `p` becomes the monadic predicate `p(x)` and the quantifier
/// modalities bind `x`.
pub fn star_translate(formula: &Formula) -> Result<String, SyntaxError> {
    require_intuitionistic(formula)?;
    Ok(render_with(formula.root(), &FIRST_ORDER))
}
