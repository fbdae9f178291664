//! Finite Kripke frames for monadic intuitionistic logic and monadic S4:
//! formulas, frames, exhaustive model checking, the skeleton and sigma
//! constructions, frame morphisms, and enumeration of small frames up to
//! isomorphism.

pub mod enumeration;
pub mod frames;
pub mod functors;
pub mod morphisms;
pub mod semantics;
pub mod syntax;
pub mod workbench;
