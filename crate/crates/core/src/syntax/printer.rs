use super::{Formula, Node};

const IFF: u8 = 0;
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;
const ATOM: u8 = 5;

/// Surface notation for leaves and prefix operators. The binary connectives
/// and their precedence are shared by every style.
pub(crate) struct Style {
    pub letter: fn(&str) -> String,
    pub top: &'static str,
    pub bottom: &'static str,
    pub not: &'static str,
    pub forall: &'static str,
    pub exists: &'static str,
    pub boxed: &'static str,
    /// Separator between a prefix operator and a parenthesized operand.
    pub paren_gap: &'static str,
}

pub(crate) const ASCII: Style = Style {
    letter: |name| name.to_string(),
    top: "T",
    bottom: "F",
    not: "~",
    forall: "forall",
    exists: "exists",
    boxed: "box",
    paren_gap: "",
};

/// Recognizes the expansion of `a <-> b`.
fn as_iff(node: &Node) -> Option<(&Node, &Node)> {
    if let Node::And(l, r) = node {
        if let (Node::Implies(a, b), Node::Implies(b2, a2)) = (l.as_ref(), r.as_ref()) {
            if a == a2 && b == b2 {
                return Some((a, b));
            }
        }
    }
    None
}

fn render(node: &Node, style: &Style) -> (String, u8) {
    if let Some((a, b)) = as_iff(node) {
        return (
            format!("{} <-> {}", wrap(a, IMPLIES, style), wrap(b, IFF, style)),
            IFF,
        );
    }
    match node {
        Node::Letter(name) => ((style.letter)(name), ATOM),
        Node::Top => (style.top.to_string(), ATOM),
        Node::Bottom => (style.bottom.to_string(), ATOM),
        Node::Not(a) => (prefix(style.not, a, style), UNARY),
        Node::Forall(a) => (prefix(style.forall, a, style), UNARY),
        Node::Exists(a) => (prefix(style.exists, a, style), UNARY),
        Node::Box(a) => (prefix(style.boxed, a, style), UNARY),
        Node::And(a, b) => (
            format!("{} & {}", wrap(a, AND, style), wrap(b, UNARY, style)),
            AND,
        ),
        Node::Or(a, b) => (
            format!("{} | {}", wrap(a, OR, style), wrap(b, AND, style)),
            OR,
        ),
        Node::Implies(a, b) => (
            format!("{} -> {}", wrap(a, OR, style), wrap(b, IMPLIES, style)),
            IMPLIES,
        ),
    }
}

fn prefix(op: &str, operand: &Node, style: &Style) -> String {
    let (text, level) = render(operand, style);
    if level < UNARY {
        format!("{op}{}({text})", style.paren_gap)
    } else {
        format!("{op} {text}")
    }
}

fn wrap(node: &Node, min_level: u8, style: &Style) -> String {
    let (text, level) = render(node, style);
    if level < min_level {
        format!("({text})")
    } else {
        text
    }
}

pub(crate) fn render_with(node: &Node, style: &Style) -> String {
    render(node, style).0
}

/// Renders with the fewest parentheses the grammar allows, so that
/// `parse(&print(f), f.language())` returns `f`.
pub fn print(formula: &Formula) -> String {
    render_with(formula.root(), &ASCII)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse, Language};

    fn show(node: Node) -> String {
        render_with(&node, &ASCII)
    }

    #[test]
    fn casari_prints_as_written() {
        let text = "forall((p -> forall p) -> forall p) -> forall p";
        let f = parse(text, Language::Intuitionistic).unwrap();
        assert_eq!(print(&f), text);
    }

    #[test]
    fn minimal_parentheses() {
        let p = || Node::letter("p");
        let q = || Node::letter("q");
        let r = || Node::letter("r");
        assert_eq!(show(p()), "p");
        assert_eq!(show(Node::and(p(), Node::or(q(), r()))), "p & (q | r)");
        assert_eq!(show(Node::or(Node::and(p(), q()), r())), "p & q | r");
        assert_eq!(show(Node::and(p(), Node::and(q(), r()))), "p & (q & r)");
        assert_eq!(show(Node::and(Node::and(p(), q()), r())), "p & q & r");
        assert_eq!(
            show(Node::implies(Node::implies(p(), q()), r())),
            "(p -> q) -> r"
        );
        assert_eq!(
            show(Node::implies(p(), Node::implies(q(), r()))),
            "p -> q -> r"
        );
        assert_eq!(show(Node::not(Node::not(p()))), "~ ~ p");
        assert_eq!(show(Node::not(Node::and(p(), q()))), "~(p & q)");
        assert_eq!(show(Node::implies(p(), Node::Bottom)), "p -> F");
    }

    #[test]
    fn iff_is_recovered() {
        let f = parse("exists forall p <-> forall p", Language::Intuitionistic).unwrap();
        assert_eq!(print(&f), "exists forall p <-> forall p");
        let f = parse("(p <-> q) & r", Language::Intuitionistic).unwrap();
        assert_eq!(print(&f), "(p <-> q) & r");
        let f = parse("(p <-> q) <-> r", Language::Intuitionistic).unwrap();
        assert_eq!(print(&f), "(p <-> q) <-> r");
    }
}
