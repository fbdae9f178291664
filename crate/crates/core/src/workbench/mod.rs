//! File I/O, random formulas and the experiment registry behind the CLI.

mod experiments;
mod io;
mod random;

use std::path::PathBuf;

use thiserror::Error;

use crate::enumeration::EnumerationError;
use crate::frames::FrameError;
use crate::morphisms::MorphismError;
use crate::semantics::SemanticsError;
use crate::syntax::SyntaxError;

pub use experiments::{
    experiment_ids, parse_for, run_experiment, translation_formulas, Bounds, Experiment, ExperimentReport, EXPERIMENTS,
    TRANSLATION_RANDOM_FORMULAS, TRANSLATION_SEED,
};
pub use io::{load_frame, load_frame_raw, parse_frame, save_frame, saturate, write_frame_file};
pub use random::{random_formula, random_formulas, FormulaShape};

#[derive(Debug, Error)]
pub enum WorkbenchError {
    #[error("cannot read or write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed frame JSON in {path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("unknown experiment `{0}`")]
    UnknownExperiment(String),
    #[error("experiment `{id}` accepts bounds up to {max}, got {bound}")]
    BoundExceeded { id: &'static str, bound: usize, max: usize },
    #[error("experiment `{id}` needs bounds of at least 1")]
    EmptyBound { id: &'static str },
}
