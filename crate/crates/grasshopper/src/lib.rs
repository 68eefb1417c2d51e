//! Exact toolkit for the grasshopper problem with signed jumps.
//!
//! The crate has two halves. The algebraic half computes the coefficients of
//! the alternating prefix-power polynomials and the staircase constants c_k
//! exactly ([`coeffs`]), with a brute-force symbolic/evaluative ground truth
//! ([`oracle`]) and residue tooling ([`modular`]). The combinatorial half
//! decides and constructs safe jump orders: subset-lattice search and the
//! blocked extremal families for signed jumps ([`route`]), and the inductive
//! construction for distinct positive jumps ([`olympiad`]).

pub mod coeffs;
pub mod error;
pub mod instance;
pub mod modular;
pub mod olympiad;
pub mod oracle;
pub mod report;
pub mod ring;
pub mod route;

pub use error::{Error, Result};
