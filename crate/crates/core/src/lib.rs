//! Kiselman's semigroup `K_n` as a confluent string-rewriting system.
//!
//! `K_n` is the monoid generated by `a_1, …, a_n` subject to `a_i² = a_i` and
//! `a_i a_j a_i = a_j a_i a_j = a_i a_j` for `j < i`. Every element has a
//! unique shortest representative, its canonical word, reached from any word
//! by repeatedly deleting a repeated letter whose gap is entirely smaller
//! (right deletion) or entirely larger (left deletion).
//!
//! * [`words`]: words, canonicality, the mirror map, idempotent words.
//! * [`rewrite`]: one-step deletions, canonical forms, the confluence oracle.
//! * [`algebra`]: elements, multiplication, content, `τ`, `m` and `π`.
//! * [`enumerate`]: two independent enumerations of `K_n` and the parity
//!   decomposition.
//! * [`equations`]: solving `x · y = f` and the structure of `x · a₁ = f`.
//! * [`cache`]: the on-disk element cache.
//! * [`verify`]: runs every property check at a rank and reports.

pub mod algebra;
pub mod cache;
pub mod enumerate;
pub mod equations;
pub mod error;
pub mod rewrite;
pub mod verify;
pub mod words;

pub use algebra::Element;
pub use enumerate::{EnumerationResult, ParityReport};
pub use error::{Error, ErrorClass, Result};
pub use rewrite::{Reduction, ReductionKind, ReductionTrace};
pub use words::{LetterSet, Word};
