//! Toric residues on the dilated simplex `Δ = m·Δ_r`.
//!
//! The forms `f₀,…,f_r` with support in `Δ` are homogenized to `F_j` on
//! `P^r` (variables `u₀,…,u_r`, with `u₀` the homogenizing variable). For an
//! interior exponent `a` of `(r+1)·Δ` the residue of `t^a` is
//!
//! `Res(t^a) = m^{r+1} · NF(u^{a'}) / NF(J)`,
//!
//! where `a' = ((r+1)m − |a|, a) − (1,…,1)`, `J = det(∂F_j/∂u_i)`, and both
//! normal forms are multiples of the single standard monomial in the socle
//! degree `(r+1)(m−1)`. The constant `m^{r+1}` makes the toric Jacobian
//! `j(t) = det(f; t_i ∂f/∂t_i)` have residue `r!·vol(Δ) = m^r`.
//!
//! For `r = 1` an independent oracle sums `ξ^{a−1} / (f₀(ξ) f₁′(ξ))` over the
//! roots of `f₁` as a trace in the quotient ring `Q[t]/(f₁)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::catalog::dilated_simplex_points;
use crate::error::{Error, Result};
use crate::exactalg::{determinant, LaurentPolynomial, UniPoly};

use super::groebner::{buchberger, MonomialOrder, OrderedPolynomial, DEFAULT_STEP_BUDGET};

/// A numeric residue instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueProblem {
    pub r: usize,
    pub m: u32,
    /// `coeffs[j][k]` is the coefficient of the `k`-th point of `m·Δ_r` in
    /// `f_j`, points ordered as in [`dilated_simplex_points`].
    pub coeffs: Vec<Vec<BigRational>>,
    /// Affine exponent in `Z^r`.
    pub a: Vec<i64>,
}

/// Checks that `a` is an interior lattice point of `(r+1)·m·Δ_r`.
pub fn is_interior(r: usize, m: u32, a: &[i64]) -> bool {
    let total: i64 = a.iter().sum();
    a.len() == r && a.iter().all(|&x| x >= 1) && total < (r as i64 + 1) * i64::from(m)
}

/// Interior lattice points of `(r+1)·m·Δ_r`, graded and lexicographically
/// decreasing within a degree.
pub fn interior_exponents(r: usize, m: u32) -> Vec<Vec<i64>> {
    let big = u32::try_from(r + 1).expect("small dimension") * m;
    dilated_simplex_points(r, big).into_iter().filter(|a| is_interior(r, m, a)).collect()
}

impl ResidueProblem {
    pub fn new(r: usize, m: u32, coeffs: Vec<Vec<BigRational>>, a: Vec<i64>) -> Result<Self> {
        if r == 0 || m == 0 {
            return Err(Error::InvalidInput("need r ≥ 1 and m ≥ 1".into()));
        }
        let npts = dilated_simplex_points(r, m).len();
        if coeffs.len() != r + 1 || coeffs.iter().any(|c| c.len() != npts) {
            return Err(Error::InvalidInput(format!("expected {} coefficient lists of length {npts}", r + 1)));
        }
        if !is_interior(r, m, &a) {
            return Err(Error::NotInterior(a));
        }
        Ok(Self { r, m, coeffs, a })
    }

    /// The homogenized forms `F_j` in the variables `u₀,…,u_r`.
    pub fn forms(&self) -> Vec<LaurentPolynomial> {
        homogeneous_forms(self.r, self.m, &self.coeffs, 0, self.r + 1)
    }

    /// The affine forms `f_j(t)` in `t₁,…,t_r`.
    pub fn affine_forms(&self) -> Vec<LaurentPolynomial> {
        let pts = dilated_simplex_points(self.r, self.m);
        self.coeffs
            .iter()
            .map(|row| LaurentPolynomial::from_terms(self.r, pts.iter().cloned().zip(row.iter().cloned())))
            .collect()
    }

    /// The same instance with a different target exponent.
    pub fn with_exponent(&self, a: Vec<i64>) -> Result<Self> {
        Self::new(self.r, self.m, self.coeffs.clone(), a)
    }
}

/// Homogenized forms with coefficients given as polynomials in `nvars`
/// variables; `u_i` is variable `u_offset + i`.
pub fn homogeneous_forms_symbolic(
    r: usize,
    m: u32,
    coeffs: &[Vec<LaurentPolynomial>],
    u_offset: usize,
    nvars: usize,
) -> Vec<LaurentPolynomial> {
    let pts = dilated_simplex_points(r, m);
    coeffs
        .iter()
        .map(|row| {
            let mut f = LaurentPolynomial::zero(nvars);
            for (p, c) in pts.iter().zip(row) {
                let mut e = vec![0i64; nvars];
                e[u_offset] = i64::from(m) - p.iter().sum::<i64>();
                for (i, &x) in p.iter().enumerate() {
                    e[u_offset + 1 + i] = x;
                }
                f = f + c * &LaurentPolynomial::monomial(e, BigRational::one());
            }
            f
        })
        .collect()
}

fn homogeneous_forms(
    r: usize,
    m: u32,
    coeffs: &[Vec<BigRational>],
    u_offset: usize,
    nvars: usize,
) -> Vec<LaurentPolynomial> {
    let lifted: Vec<Vec<LaurentPolynomial>> =
        coeffs.iter().map(|row| row.iter().map(|c| LaurentPolynomial::constant(nvars, c.clone())).collect()).collect();
    homogeneous_forms_symbolic(r, m, &lifted, u_offset, nvars)
}

/// `J = det(∂F_j/∂u_i)` over the variables `u_vars`.
pub fn homogeneous_jacobian(forms: &[LaurentPolynomial], u_vars: &[usize]) -> LaurentPolynomial {
    let nvars = forms.first().map_or(0, LaurentPolynomial::nvars);
    let matrix: Vec<Vec<LaurentPolynomial>> =
        u_vars.iter().map(|&i| forms.iter().map(|f| f.derivative(i)).collect()).collect();
    determinant(&matrix, nvars)
}

/// The toric Jacobian `j(t)`: first row `f₀,…,f_r`, row `i` equal to
/// `t_i ∂f_j/∂t_i` over the variables `t_vars`.
pub fn toric_jacobian(forms: &[LaurentPolynomial], t_vars: &[usize]) -> LaurentPolynomial {
    let nvars = forms.first().map_or(0, LaurentPolynomial::nvars);
    let mut matrix = vec![forms.to_vec()];
    for &i in t_vars {
        let t = LaurentPolynomial::variable(nvars, i);
        matrix.push(forms.iter().map(|f| &t * &f.derivative(i)).collect());
    }
    determinant(&matrix, nvars)
}

/// Residue computation with an explicit monomial order and step budget.
pub fn toric_residue_with(prob: &ResidueProblem, order: MonomialOrder, budget: u64) -> Result<BigRational> {
    let r = prob.r;
    let m = prob.m;
    let forms = prob.forms();
    let ordered = forms.iter().map(|f| OrderedPolynomial::from_laurent(f, order)).collect::<Result<Vec<_>>>()?;
    let gb = buchberger(&ordered, order, budget)?;
    if !(0..=r).all(|i| gb.has_pure_power(i)) {
        return Err(Error::Degenerate("the forms have a common projective zero".into()));
    }
    let u_vars: Vec<usize> = (0..=r).collect();
    let j = OrderedPolynomial::from_laurent(&homogeneous_jacobian(&forms, &u_vars), order)?;
    let nf_j = gb.normal_form(&j);
    let total: i64 = prob.a.iter().sum();
    let mut exp = vec![u32::try_from((r as i64 + 1) * i64::from(m) - total - 1).expect("interior exponent")];
    exp.extend(prob.a.iter().map(|&x| u32::try_from(x - 1).expect("interior exponent")));
    let nf_a = gb.normal_form(&OrderedPolynomial::monomial(exp, BigRational::one(), order));
    if nf_j.terms().len() != 1 || nf_a.terms().len() > 1 {
        return Err(Error::Internal("socle normal forms are not single monomials".into()));
    }
    let (sj, cj) = &nf_j.terms()[0];
    let ca = match nf_a.terms().first() {
        None => return Ok(BigRational::zero()),
        Some((sa, ca)) if sa == sj => ca,
        Some(_) => return Err(Error::Internal("normal forms land on different socle monomials".into())),
    };
    let kappa = BigRational::from_integer(num_traits::pow(BigInt::from(m), r + 1));
    Ok(kappa * ca / cj)
}

/// `Res(t^a)` for the instance, using degree reverse lexicographic order.
pub fn toric_residue(prob: &ResidueProblem) -> Result<BigRational> {
    toric_residue_with(prob, MonomialOrder::GRevLex, DEFAULT_STEP_BUDGET)
}

/// The `r = 1` residue as a sum over the roots of `f_i` (`i ∈ {0, 1}`), with
/// the sign `(−1)^i`.
pub fn univariate_residue_oracle_at(f0: &UniPoly, f1: &UniPoly, a: u32, i: usize) -> Result<BigRational> {
    let (other, poles) = match i {
        0 => (f0, f1),
        1 => (f1, f0),
        _ => return Err(Error::InvalidInput("i must be 0 or 1".into())),
    };
    if a == 0 {
        return Err(Error::NotInterior(vec![0]));
    }
    if poles.degree().unwrap_or(0) == 0 {
        return Err(Error::Degenerate("no finite poles".into()));
    }
    if poles.coeff(0).is_zero() {
        return Err(Error::Degenerate("pole at the torus boundary".into()));
    }
    let inv_other = other.inverse_mod(poles).ok_or_else(|| Error::Degenerate("the polynomials share a root".into()))?;
    let inv_derivative =
        poles.derivative().inverse_mod(poles).ok_or_else(|| Error::Degenerate("repeated root".into()))?;
    let h = UniPoly::monomial(a as usize - 1, BigRational::one()).mul(&inv_other).mul(&inv_derivative).rem(poles);
    let trace = h.trace_mod(poles);
    Ok(if i == 0 { trace } else { -trace })
}

/// The `r = 1` oracle with `i = 0`.
pub fn univariate_residue_oracle(f0: &UniPoly, f1: &UniPoly, a: u32) -> Result<BigRational> {
    univariate_residue_oracle_at(f0, f1, a, 0)
}

/// Integer helper: a residue problem from integer coefficients.
pub fn integer_problem(r: usize, m: u32, coeffs: &[Vec<i64>], a: Vec<i64>) -> Result<ResidueProblem> {
    let coeffs =
        coeffs.iter().map(|row| row.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()).collect();
    ResidueProblem::new(r, m, coeffs, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{frac, rat, RationalFunction};
    use crate::residue::resultant::{declared_resultant, resultant, symbolic_coefficients};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn uni(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| rat(x)).collect())
    }

    fn random_coeffs(rng: &mut ChaCha8Rng, rows: usize, len: usize) -> Vec<Vec<i64>> {
        (0..rows).map(|_| (0..len).map(|_| rng.gen_range(-6..=6)).collect()).collect()
    }

    #[test]
    fn symbolic_quadrics_jacobian() {
        // x1..x6 coefficients, then u0, u1
        let x = symbolic_coefficients(0, 6, 8);
        let forms = homogeneous_forms_symbolic(1, 2, &[x[..3].to_vec(), x[3..].to_vec()], 6, 8);
        let j = homogeneous_jacobian(&forms, &[6, 7]);
        let expected =
            crate::exactalg::parse("2*(x1*x5 - x2*x4)*x7^2 + 4*(x1*x6 - x3*x4)*x7*x8 + 2*(x2*x6 - x3*x5)*x8^2", 8)
                .unwrap();
        assert_eq!(RationalFunction::from_polynomial(j), expected);
    }

    #[test]
    fn equal_forms_have_zero_jacobian() {
        let x = symbolic_coefficients(0, 3, 5);
        let forms = homogeneous_forms_symbolic(1, 2, &[x.clone(), x.clone()], 3, 5);
        assert!(homogeneous_jacobian(&forms, &[3, 4]).is_zero());
        let f = &x[0] + &(&x[1] * &LaurentPolynomial::variable(5, 4));
        assert!(toric_jacobian(&[f.clone(), f], &[4]).is_zero());
    }

    #[test]
    fn linear_forms_jacobian_is_determinant_times_t1t2() {
        // f_j = x_{j,0} + x_{j,1} t1 + x_{j,2} t2 with variables x1..x9, t1, t2
        let x = symbolic_coefficients(0, 9, 11);
        let pts = dilated_simplex_points(2, 1);
        let forms: Vec<LaurentPolynomial> = (0..3)
            .map(|j| {
                pts.iter().enumerate().fold(LaurentPolynomial::zero(11), |acc, (k, p)| {
                    let mut e = vec![0i64; 11];
                    e[9] = p[0];
                    e[10] = p[1];
                    acc + &x[3 * j + k] * &LaurentPolynomial::monomial(e, rat(1))
                })
            })
            .collect();
        let j = toric_jacobian(&forms, &[9, 10]);
        let cofactor: Vec<Vec<LaurentPolynomial>> =
            (0..3).map(|k| (0..3).map(|jj| x[3 * jj + k].clone()).collect()).collect();
        let det = determinant(&cofactor, 11);
        let mut e = vec![0i64; 11];
        e[9] = 1;
        e[10] = 1;
        assert_eq!(j, &det * &LaurentPolynomial::monomial(e, rat(1)));
    }

    #[test]
    fn quadrics_residue_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut checked = 0;
        while checked < 25 {
            let c = random_coeffs(&mut rng, 2, 3);
            let lift = |row: &[i64]| row.iter().map(|&x| rat(x)).collect::<Vec<_>>();
            let res = declared_resultant(&lift(&c[0]), &lift(&c[1])).unwrap();
            if res.is_zero() {
                continue;
            }
            let prob = integer_problem(1, 2, &c, vec![2]).unwrap();
            let expected = rat(c[0][0] * c[1][2] - c[0][2] * c[1][0]) / &res;
            assert_eq!(toric_residue(&prob).unwrap(), expected, "{c:?}");
            checked += 1;
        }
    }

    #[test]
    fn linear_forms_give_reciprocal_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        while checked < 10 {
            let c = random_coeffs(&mut rng, 3, 3);
            let m = crate::exactalg::IntMatrix::from_rows(&c);
            let det = m.determinant();
            if det.is_zero() {
                continue;
            }
            let prob = integer_problem(2, 1, &c, vec![1, 1]).unwrap();
            assert_eq!(toric_residue(&prob).unwrap(), BigRational::from_integer(det).recip());
            checked += 1;
        }
    }

    #[test]
    fn oracle_agrees_with_groebner_residue() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut checked = 0;
        while checked < 25 {
            let c = random_coeffs(&mut rng, 2, 3);
            let (f0, f1) = (uni(&c[0]), uni(&c[1]));
            if f1.degree() != Some(2) || f0.degree() != Some(2) || c[1][0] == 0 || c[0][0] == 0 {
                continue;
            }
            if resultant(&f0, &f1).unwrap().is_zero() || f1.gcd(&f1.derivative()).degree() != Some(0) {
                continue;
            }
            if f0.gcd(&f0.derivative()).degree() != Some(0) {
                continue;
            }
            for a in 1..=3u32 {
                let prob = integer_problem(1, 2, &c, vec![i64::from(a)]).unwrap();
                let g = toric_residue(&prob).unwrap();
                assert_eq!(univariate_residue_oracle(&f0, &f1, a).unwrap(), g);
                assert_eq!(univariate_residue_oracle_at(&f0, &f1, a, 1).unwrap(), g);
            }
            checked += 1;
        }
    }

    #[test]
    fn quadrics_instance() {
        let f0 = uni(&[1, 1, 1]);
        let f1 = uni(&[2, 1, 3]);
        let res = resultant(&f0, &f1).unwrap();
        // x1·x6 − x3·x4 at (1, 1, 1, 2, 1, 3)
        let closed = rat(1) / res;
        assert_eq!(univariate_residue_oracle(&f0, &f1, 2).unwrap(), closed);
    }

    #[test]
    fn linear_pole_is_direct_evaluation() {
        // f1 = 3t − 2, root 2/3; residue = ξ^{a−1} / (f0(ξ)·3)
        let f0 = uni(&[1, 4]);
        let f1 = uni(&[-2, 3]);
        let xi = frac(2, 3);
        let value = xi.clone() / (f0.evaluate(&xi) * rat(3));
        assert_eq!(univariate_residue_oracle(&f0, &f1, 2).unwrap(), value);
        assert!(univariate_residue_oracle(&f0, &uni(&[0, 1]), 1).is_err());
    }

    #[test]
    fn calibration_by_toric_jacobian() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for (r, m) in [(1usize, 1u32), (1, 2), (1, 3), (2, 1), (2, 2)] {
            let npts = dilated_simplex_points(r, m).len();
            let mut done = false;
            while !done {
                let c = random_coeffs(&mut rng, r + 1, npts);
                let a0 = vec![1i64; r];
                let Ok(base) = integer_problem(r, m, &c, a0) else { continue };
                if toric_residue(&base).is_err() {
                    continue;
                }
                let t_vars: Vec<usize> = (0..r).collect();
                let j = toric_jacobian(&base.affine_forms(), &t_vars);
                let mut total = BigRational::zero();
                for (e, coeff) in j.terms() {
                    assert!(is_interior(r, m, e), "j(t) has a boundary exponent {e:?}");
                    total += coeff * toric_residue(&base.with_exponent(e.clone()).unwrap()).unwrap();
                }
                assert_eq!(total, BigRational::from_integer(num_traits::pow(BigInt::from(m), r)), "r={r} m={m}");
                done = true;
            }
        }
    }

    #[test]
    fn orders_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut checked = 0;
        while checked < 10 {
            let c = random_coeffs(&mut rng, 3, 6);
            let prob = integer_problem(2, 2, &c, vec![2, 1]).unwrap();
            let Ok(x) = toric_residue(&prob) else { continue };
            let y = toric_residue_with(&prob, MonomialOrder::Lex, DEFAULT_STEP_BUDGET).unwrap();
            assert_eq!(x, y);
            checked += 1;
        }
    }

    #[test]
    fn residue_has_degree_minus_one_in_each_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let c = loop {
            let c = random_coeffs(&mut rng, 2, 3);
            if toric_residue(&integer_problem(1, 2, &c, vec![1]).unwrap()).is_ok() {
                break c;
            }
        };
        let prob = integer_problem(1, 2, &c, vec![1]).unwrap();
        let base = toric_residue(&prob).unwrap();
        let lambda = frac(5, 3);
        let mut scaled = prob.clone();
        scaled.coeffs[1] = scaled.coeffs[1].iter().map(|x| x * &lambda).collect();
        assert_eq!(toric_residue(&scaled).unwrap(), base / lambda);
    }

    #[test]
    fn degenerate_and_boundary_inputs() {
        let c = vec![vec![1, 2, 1], vec![1, 1, 0]];
        let prob = integer_problem(1, 2, &c, vec![2]).unwrap();
        assert!(matches!(toric_residue(&prob), Err(Error::Degenerate(_))));
        assert!(matches!(integer_problem(1, 2, &c, vec![4]), Err(Error::NotInterior(_))));
        assert!(matches!(integer_problem(1, 2, &c, vec![0]), Err(Error::NotInterior(_))));
        assert_eq!(interior_exponents(1, 2), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(interior_exponents(2, 1), vec![vec![1, 1]]);
    }
}
