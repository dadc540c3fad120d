//! Gröbner bases, Sylvester resultants and toric residues.
//!
//! * [`groebner`]: monomial orders, ordered polynomials and Buchberger's
//!   algorithm with a step budget.
//! * [`resultant`]: Sylvester matrices with symbolic or rational entries.
//! * [`toric`]: residues on dilated simplices, the toric Jacobian and the
//!   univariate trace oracle.
//! * [`witness`]: symbolic residues for two segments, by interpolation and
//!   certification.

pub mod groebner;
pub mod resultant;
pub mod toric;
pub mod witness;

pub use groebner::{buchberger, normal_form, GroebnerBasis, MonomialOrder, OrderedPolynomial, DEFAULT_STEP_BUDGET};
pub use resultant::{declared_resultant, resultant, sylvester_matrix, sylvester_resultant, symbolic_coefficients};
pub use toric::{
    homogeneous_jacobian, interior_exponents, is_interior, toric_jacobian, toric_residue, toric_residue_with,
    univariate_residue_oracle, univariate_residue_oracle_at, ResidueProblem,
};
pub use witness::{residue_witness, ResidueWitness};
