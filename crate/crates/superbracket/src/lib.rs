//! Exact symbolic verification of commutator/anticommutator identities
//! in associative algebras and superalgebras, of structure-constant
//! associativity conditions, of bracket-to-product reconstruction, and of
//! Poisson superbracket laws on polynomial phase spaces.
//!
//! All arithmetic is exact rational; an identity either reduces to the
//! zero element or a concrete witness is reported.

pub mod catalog;
pub mod coeff;
pub mod error;
pub mod exec;
pub mod expr;
pub mod families;
pub mod fixtures;
pub mod formal;
pub mod free;
pub mod fuzz;
pub mod parity;
pub mod poisson;
pub mod reconstruct;
pub mod report;
pub mod superpoly;
pub mod tensor;

pub use coeff::Coeff;
pub use error::Error;
pub use exec::Strategy;
pub use free::{FreeElement, GeneratorId, Word};
pub use parity::{koszul_sign, parity_assignments, Parity};
pub use report::{DerivationReport, TupleWitness, Verification};
