//! Symbolic and finite-model toolkit for quasigroup words.
//!
//! - [`term`]: parsing trees over the six quasigroup operations.
//! - [`freegrpalg`]: the coefficient ring `ℤ⟨R, L⟩` and its triality automorphisms.
//! - [`homrep`]: homogeneous representation, word equality, argument
//!   elimination and word enumeration.
//! - [`finiteqg`]: finite quasigroups from Cayley tables.
//! - [`revaut`]: reversible automata of quasigroup type.
//! - [`linss`]: linear semisymmetrized algebras over `ℤₙᵏ`.
//! - [`numeval`]: exact evaluation in a 2×2 matrix model over `ℚ(√2, √5)`.

pub mod finiteqg;
pub mod freegrpalg;
pub mod homrep;
pub mod linss;
pub mod numeval;
pub mod par;
pub mod revaut;
pub mod s3;
pub mod term;

pub use par::Execution;
pub use s3::S3Element;
pub use term::{OpSymbol, Term};
