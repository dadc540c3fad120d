//! Exact-arithmetic toolkit for rational A-hypergeometric functions.
//!
//! The crate analyzes integer point configurations `A` (a `d × s` integer
//! matrix whose columns are distinct and whose row span contains the all-ones
//! vector). It enumerates circuits, detects Cayley structure, classifies
//! configurations for gkz-rationality, certifies that rational functions are
//! annihilated by the A-hypergeometric system, and computes toric residues and
//! resultants. No floating point is used anywhere.
//!
//! Module map:
//!
//! * [`exactalg`]: integer linear algebra, Laurent polynomials, rational
//!   functions and the expression parser.
//! * [`polytope`]: configurations, faces, spanning subsets, volume.
//! * [`circuits`]: circuits, balancedness, discriminants and series.
//! * [`cayley`]: Cayley structure detection and the classifier.
//! * [`weyl`]: toric ideals and the hypergeometric verification engine.
//! * [`residue`]: Gröbner bases, resultants and toric residues.
//! * [`catalog`]: named configurations used throughout tests and the CLI.

pub mod catalog;
pub mod cayley;
pub mod circuits;
pub mod error;
pub mod exactalg;
pub mod json;
pub mod polytope;
pub mod residue;
pub mod weyl;

pub use cayley::{classify, detect_cayley, CayleyStructure, Classification, Rule, Verdict};
pub use circuits::{enumerate_circuits, Balance, Circuit};
pub use error::{Error, Result};
pub use exactalg::{IntMatrix, LaurentPolynomial, RationalFunction};
pub use polytope::{Configuration, Face, SearchLimits};
pub use residue::{GroebnerBasis, MonomialOrder, OrderedPolynomial, ResidueProblem};
pub use weyl::{verify_hypergeometric, ToricBinomialOp, Verification};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
