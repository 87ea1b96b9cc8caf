//! Decide which simplicial communication complexes can generate a finite
//! language of fixed-length words, build explicit generation procedures, and
//! enumerate the minimal generating complexes.

pub mod cache;
pub mod checks;
pub mod chromatic;
pub mod complex;
pub mod decide;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod generators;
pub mod graph;
pub mod io;
pub mod lang;
pub mod procedure;

pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use graph::Graph;
pub use lang::{Alphabet, Language, Letter, Permutation, Word};
pub use procedure::{verify_generates, Procedure};
pub use decide::{decide_generates, DecideOptions, DecisionResult, Verdict};
