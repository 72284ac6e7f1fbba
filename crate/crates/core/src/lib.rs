//! Sidon sets and sonar sequences.
//!
//! - [`ff`]: finite fields GF(p^r), primitive elements, discrete logarithms.
//! - [`sidon`]: Bose and Ruzsa Sidon sets in cyclic groups, with verification.
//! - [`fold`]: turning a Sidon set of Z_{mb} into an `m × n` modular sonar sequence.
//! - [`classic`]: quadratic, shift, Welch and Golomb constructions.
//! - [`verify`]: the distinct-differences property, with witnesses.
//! - [`search`]: exhaustive search for maximal sequence lengths.
//! - [`harness`]: comparison tables across all constructions.

pub mod arith;
pub mod classic;
pub mod error;
pub mod ff;
pub mod fold;
pub mod harness;
pub mod search;
pub mod sequence;
pub mod sidon;
pub mod verify;

pub use error::{Error, Result};
pub use ff::{FieldCtx, FieldElem};
pub use search::{Budget, SearchMode, SearchOptions, SearchResult};
pub use sequence::{SeqProvenance, SonarSeq};
pub use sidon::{SidonReport, SidonSet};
pub use verify::{DifferenceTriangle, Mode, VerifyReport, Witness};
