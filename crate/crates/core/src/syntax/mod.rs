//! Formulas of the intuitionistic language with `forall`/`exists` and the
//! modal language with `box`/`forall`.
//!
//! Both languages share one node type. A [`Formula`] pairs a root node with
//! a [`Language`] tag, and construction rejects nodes that are illegal for
//! the tag: `exists` only occurs in intuitionistic formulas, `box` only in
//! modal ones.

mod corpus;
mod parser;
mod printer;
mod translate;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use corpus::{corpus, CorpusName};
pub use parser::parse;
pub use printer::print;
pub use translate::{godel_translate, star_translate};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Intuitionistic,
    Modal,
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Language::Intuitionistic => write!(f, "intuitionistic"),
            Language::Modal => write!(f, "modal"),
        }
    }
}

/// A syntax tree node. `<->` has no node of its own: the parser expands
/// `a <-> b` to `(a -> b) & (b -> a)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Letter(String),
    Top,
    Bottom,
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
    Or(Box<Node>, Box<Node>),
    Implies(Box<Node>, Box<Node>),
    Forall(Box<Node>),
    Exists(Box<Node>),
    Box(Box<Node>),
}

impl Node {
    pub fn letter(name: impl Into<String>) -> Node {
        Node::Letter(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Node) -> Node {
        Node::Not(Box::new(a))
    }

    pub fn and(a: Node, b: Node) -> Node {
        Node::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Node, b: Node) -> Node {
        Node::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Node, b: Node) -> Node {
        Node::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Node, b: Node) -> Node {
        Node::and(Node::implies(a.clone(), b.clone()), Node::implies(b, a))
    }

    pub fn forall(a: Node) -> Node {
        Node::Forall(Box::new(a))
    }

    pub fn exists(a: Node) -> Node {
        Node::Exists(Box::new(a))
    }

    pub fn boxed(a: Node) -> Node {
        Node::Box(Box::new(a))
    }

    pub fn children(&self) -> Vec<&Node> {
        match self {
            Node::Letter(_) | Node::Top | Node::Bottom => vec![],
            Node::Not(a) | Node::Forall(a) | Node::Exists(a) | Node::Box(a) => vec![a],
            Node::And(a, b) | Node::Or(a, b) | Node::Implies(a, b) => vec![a, b],
        }
    }

    /// Nesting depth of `forall`, `exists` and `box`.
    pub fn modal_depth(&self) -> usize {
        let below = self
            .children()
            .into_iter()
            .map(Node::modal_depth)
            .max()
            .unwrap_or(0);
        match self {
            Node::Forall(_) | Node::Exists(_) | Node::Box(_) => below + 1,
            _ => below,
        }
    }

    /// Height of the tree; a letter or constant has depth 0.
    pub fn depth(&self) -> usize {
        self.children()
            .into_iter()
            .map(|c| c.depth() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn letters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<String>) {
        if let Node::Letter(name) = self {
            out.insert(name.clone());
        }
        for c in self.children() {
            c.collect_letters(out);
        }
    }

    /// Number of letter occurrences.
    pub fn letter_occurrences(&self) -> usize {
        match self {
            Node::Letter(_) => 1,
            _ => self.children().into_iter().map(Node::letter_occurrences).sum(),
        }
    }

    /// All subformulas in post-order, the node itself last.
    pub fn subformulas(&self) -> Vec<&Node> {
        let mut out = Vec::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas<'a>(&'a self, out: &mut Vec<&'a Node>) {
        for c in self.children() {
            c.collect_subformulas(out);
        }
        out.push(self);
    }

    fn first_illegal(&self, language: Language) -> Option<&'static str> {
        match (self, language) {
            (Node::Exists(_), Language::Modal) => return Some("exists"),
            (Node::Box(_), Language::Intuitionistic) => return Some("box"),
            _ => {}
        }
        self.children()
            .into_iter()
            .find_map(|c| c.first_illegal(language))
    }
}

/// A node tree checked against a language tag.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Formula {
    language: Language,
    root: Node,
}

impl Formula {
    pub fn new(language: Language, root: Node) -> Result<Formula, SyntaxError> {
        if let Some(connective) = root.first_illegal(language) {
            return Err(SyntaxError::LanguageMismatch {
                position: None,
                connective,
                language,
            });
        }
        Ok(Formula { language, root })
    }

    pub fn intuitionistic(root: Node) -> Result<Formula, SyntaxError> {
        Formula::new(Language::Intuitionistic, root)
    }

    pub fn modal(root: Node) -> Result<Formula, SyntaxError> {
        Formula::new(Language::Modal, root)
    }

    pub fn language(&self) -> Language {
        self.language
    }

    pub fn root(&self) -> &Node {
        &self.root
    }

    pub fn into_root(self) -> Node {
        self.root
    }

    pub fn letters(&self) -> BTreeSet<String> {
        self.root.letters()
    }

    pub fn modal_depth(&self) -> usize {
        self.root.modal_depth()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("syntax error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("`{connective}` is not a connective of the {language} language{}", .position.map(|p| format!(" (at {p})")).unwrap_or_default())]
    LanguageMismatch {
        position: Option<usize>,
        connective: &'static str,
        language: Language,
    },
    #[error("expected {expected} formula, got {found}")]
    WrongLanguage { expected: Language, found: Language },
    #[error("unknown corpus `{0}`")]
    UnknownCorpus(String),
}
