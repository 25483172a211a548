//! Computational core for n-triviality certificates of knots.
//!
//! Free-group words and commutators, Magnus expansions and Milnor invariants,
//! lower-central-series decompositions, n-trivializer families, the
//! numerical bounds used by certificates, Seifert-matrix invariants, and the
//! certificate verifier itself.

pub mod bounds;
pub mod certify;
pub mod lcs;
pub mod lie;
pub mod magnus;
pub mod parse;
pub mod seifert;
pub mod trivializer;
pub mod word;

pub use magnus::{expand, fox_coefficient, lcs_degree, LcsDegree, NCPolynomial};
pub use word::{EntrySequence, Letter, Word};
