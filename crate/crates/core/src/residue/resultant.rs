//! Sylvester resultants of univariate polynomials whose coefficients are
//! themselves polynomials (symbolic) or rationals.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactalg::{determinant, LaurentPolynomial, UniPoly};

/// The Sylvester matrix of `f` and `g` given by coefficient lists, lowest
/// degree first. Row `i < deg g` holds `f` shifted by `i`; the remaining rows
/// hold the shifts of `g`.
pub fn sylvester_matrix(f: &[LaurentPolynomial], g: &[LaurentPolynomial], nvars: usize) -> Vec<Vec<LaurentPolynomial>> {
    let p = f.len() - 1;
    let q = g.len() - 1;
    let n = p + q;
    let mut rows = Vec::with_capacity(n);
    for (coeffs, shifts) in [(f, q), (g, p)] {
        for i in 0..shifts {
            let mut row = vec![LaurentPolynomial::zero(nvars); n];
            for (k, c) in coeffs.iter().enumerate() {
                row[i + k] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// The determinant of the Sylvester matrix, expanded exactly. Both declared
/// degrees (coefficient list length minus one) must be at least one.
///
/// With coefficients listed lowest degree first the value is
/// `(−1)^{deg f · deg g}` times the classical `lc(f)^{deg g} lc(g)^{deg f}
/// ∏(α − β)`; the two agree whenever one of the degrees is even.
pub fn sylvester_resultant(
    f: &[LaurentPolynomial],
    g: &[LaurentPolynomial],
    nvars: usize,
) -> Result<LaurentPolynomial> {
    if f.len() < 2 || g.len() < 2 {
        return Err(Error::InvalidInput("resultant needs declared degrees at least one".into()));
    }
    if f.iter().chain(g).any(|c| c.nvars() != nvars) {
        return Err(Error::InvalidInput("coefficient polynomials disagree on the number of variables".into()));
    }
    Ok(determinant(&sylvester_matrix(f, g, nvars), nvars))
}

/// Coefficients `x_{offset+1}, …, x_{offset+count}` as polynomials in `nvars`
/// variables.
pub fn symbolic_coefficients(offset: usize, count: usize, nvars: usize) -> Vec<LaurentPolynomial> {
    (offset..offset + count).map(|j| LaurentPolynomial::variable(nvars, j)).collect()
}

/// The resultant of two rational univariate polynomials at their actual
/// degrees.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<BigRational> {
    declared_resultant(f.coeffs(), g.coeffs())
}

/// The resultant of coefficient lists (lowest degree first) at their declared
/// degrees, so vanishing leading coefficients count as a root at infinity.
pub fn declared_resultant(f: &[BigRational], g: &[BigRational]) -> Result<BigRational> {
    let lift = |p: &[BigRational]| -> Vec<LaurentPolynomial> {
        p.iter().map(|c| LaurentPolynomial::constant(0, c.clone())).collect()
    };
    let r = sylvester_resultant(&lift(f), &lift(g), 0)?;
    Ok(r.constant_value().expect("constant determinant"))
}
