use std::fmt;
use std::str::FromStr;

use super::{godel_translate, parse, Formula, Language, SyntaxError};

/// Named built-in formula lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CorpusName {
    MipcAxioms,
    Ms4Axioms,
    Grz,
    MonadicCasari,
    CasariTranslated,
}

impl CorpusName {
    pub const ALL: [CorpusName; 5] = [
        CorpusName::MipcAxioms,
        CorpusName::Ms4Axioms,
        CorpusName::Grz,
        CorpusName::MonadicCasari,
        CorpusName::CasariTranslated,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CorpusName::MipcAxioms => "mipc_axioms",
            CorpusName::Ms4Axioms => "ms4_axioms",
            CorpusName::Grz => "grz",
            CorpusName::MonadicCasari => "monadic_casari",
            CorpusName::CasariTranslated => "casari_translated",
        }
    }

    pub fn language(self) -> Language {
        match self {
            CorpusName::MipcAxioms | CorpusName::MonadicCasari => Language::Intuitionistic,
            _ => Language::Modal,
        }
    }
}

impl fmt::Display for CorpusName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CorpusName {
    type Err = SyntaxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CorpusName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| SyntaxError::UnknownCorpus(s.to_string()))
    }
}

const MIPC_AXIOMS: &[&str] = &[
    // S4 for forall
    "forall(p & q) <-> forall p & forall q",
    "forall p -> p",
    "forall p -> forall forall p",
    // S5 for exists
    "exists(p | q) <-> exists p | exists q",
    "p -> exists p",
    "exists exists p -> exists p",
    "exists p & exists q -> exists(exists p & q)",
    // connecting
    "exists forall p <-> forall p",
    "exists p <-> forall exists p",
];

const MS4_AXIOMS: &[&str] = &[
    // S4 for box
    "box(p -> q) -> box p -> box q",
    "box p -> p",
    "box p -> box box p",
    // S5 for forall
    "forall(p -> q) -> forall p -> forall q",
    "forall p -> p",
    "forall p -> forall forall p",
    "~ forall p -> forall ~ forall p",
    // left commutativity
    "box forall p -> forall box p",
];

pub const GRZ: &str = "box(box(p -> box p) -> p) -> p";
pub const MONADIC_CASARI: &str = "forall((p -> forall p) -> forall p) -> forall p";

fn parse_all(texts: &[&str], language: Language) -> Vec<Formula> {
    texts
        .iter()
        .map(|t| parse(t, language).expect("built-in corpus formula parses"))
        .collect()
}

pub fn corpus(name: CorpusName) -> Vec<Formula> {
    match name {
        CorpusName::MipcAxioms => parse_all(MIPC_AXIOMS, Language::Intuitionistic),
        CorpusName::Ms4Axioms => parse_all(MS4_AXIOMS, Language::Modal),
        CorpusName::Grz => parse_all(&[GRZ], Language::Modal),
        CorpusName::MonadicCasari => parse_all(&[MONADIC_CASARI], Language::Intuitionistic),
        CorpusName::CasariTranslated => corpus(CorpusName::MonadicCasari)
            .iter()
            .map(|f| godel_translate(f).expect("casari is intuitionistic"))
            .collect(),
    }
}
