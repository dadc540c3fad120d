//! Rational functions with a factored denominator.
//!
//! A value is `numerator / ∏ factor^exponent`. Factors are normalized (monomial
//! content moved into the numerator, leading coefficient one) and merged when
//! equal, so repeated differentiation raises exponents instead of expanding
//! products. Equality is decided by cross-multiplication.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{write_term, LaurentPolynomial};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct RationalFunction {
    numerator: LaurentPolynomial,
    factors: BTreeMap<LaurentPolynomial, u32>,
}

impl RationalFunction {
    pub fn zero(nvars: usize) -> Self {
        Self::from_polynomial(LaurentPolynomial::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_polynomial(LaurentPolynomial::one(nvars))
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::from_polynomial(LaurentPolynomial::constant(nvars, c))
    }

    pub fn variable(nvars: usize, j: usize) -> Self {
        Self::from_polynomial(LaurentPolynomial::variable(nvars, j))
    }

    pub fn from_polynomial(p: LaurentPolynomial) -> Self {
        Self { numerator: p, factors: BTreeMap::new() }
    }

    /// `numerator / ∏ factor^exponent`; fails if a factor is zero.
    pub fn new(numerator: LaurentPolynomial, factors: Vec<(LaurentPolynomial, u32)>) -> Result<Self> {
        let mut f = Self::from_polynomial(numerator);
        for (p, e) in factors {
            f.divide_by_factor(&p, e)?;
        }
        f.cancel();
        Ok(f)
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.numerator
    }

    /// Denominator factors in canonical order.
    pub fn factors(&self) -> impl Iterator<Item = (&LaurentPolynomial, u32)> {
        self.factors.iter().map(|(p, &e)| (p, e))
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.factors.is_empty()
    }

    /// The expanded denominator `∏ factor^exponent`.
    pub fn denominator(&self) -> LaurentPolynomial {
        self.factors.iter().fold(LaurentPolynomial::one(self.nvars()), |acc, (p, &e)| &acc * &p.pow(e))
    }

    fn divide_by_factor(&mut self, p: &LaurentPolynomial, e: u32) -> Result<()> {
        if p.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if e == 0 {
            return Ok(());
        }
        let (shift, lead, monic) = normalize_factor(p);
        let inv_shift: Vec<i64> = shift.iter().map(|k| -k * i64::from(e)).collect();
        let scale = num_traits::pow(lead.recip(), e as usize);
        self.numerator = self.numerator.shift(&inv_shift).scale(&scale);
        if monic.constant_value().is_none() {
            *self.factors.entry(monic).or_insert(0) += e;
        }
        Ok(())
    }

    /// Removes factors that divide the numerator exactly.
    fn cancel(&mut self) {
        if self.numerator.is_zero() {
            self.factors.clear();
            return;
        }
        let keys: Vec<LaurentPolynomial> = self.factors.keys().cloned().collect();
        for p in keys {
            let e = self.factors.get_mut(&p).expect("present");
            while *e > 0 {
                match self.numerator.div_exact(&p) {
                    Some(q) => {
                        self.numerator = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
            if *e == 0 {
                self.factors.remove(&p);
            }
        }
    }

    /// Brings both operands over the common denominator ∏ f^max(e₁,e₂).
    fn common_numerators(
        &self,
        other: &Self,
    ) -> (LaurentPolynomial, LaurentPolynomial, BTreeMap<LaurentPolynomial, u32>) {
        let mut common = self.factors.clone();
        for (p, &e) in &other.factors {
            let slot = common.entry(p.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        let lift = |f: &Self| {
            common.iter().fold(f.numerator.clone(), |acc, (p, &e)| {
                let have = f.factors.get(p).copied().unwrap_or(0);
                if e > have {
                    &acc * &p.pow(e - have)
                } else {
                    acc
                }
            })
        };
        (lift(self), lift(other), common)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut out = Self::from_polynomial(self.numerator.clone());
        out.factors = self.factors.clone();
        for (p, &e) in &other.factors {
            out.numerator = &out.numerator * &p.pow(e);
        }
        out.divide_by_factor(&other.numerator, 1)?;
        out.cancel();
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::from_polynomial(self.numerator.pow(k));
        if k > 0 {
            out.factors = self.factors.iter().map(|(p, &e)| (p.clone(), e * k)).collect();
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = self.clone();
        out.numerator = out.numerator.scale(c);
        if out.numerator.is_zero() {
            out.factors.clear();
        }
        out
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        let mut out = self.clone();
        out.numerator = out.numerator.shift(shift);
        out
    }

    /// Partial derivative with respect to `x_{j+1}`. Each denominator factor
    /// depending on `x_{j+1}` gains one in its exponent; nothing else is
    /// expanded.
    pub fn differentiate(&self, j: usize) -> Self {
        let dependent: Vec<(&LaurentPolynomial, u32)> =
            self.factors.iter().filter(|(p, _)| p.depends_on(j)).map(|(p, &e)| (p, e)).collect();
        let n = self.nvars();
        let prod_all = dependent.iter().fold(LaurentPolynomial::one(n), |acc, (p, _)| &acc * *p);
        let mut numer = &self.numerator.derivative(j) * &prod_all;
        for (k, (pk, ek)) in dependent.iter().enumerate() {
            let others = dependent
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != k)
                .fold(LaurentPolynomial::one(n), |acc, (_, (p, _))| &acc * *p);
            let coeff = BigRational::from_integer((*ek).into());
            let term = &(&self.numerator * &pk.derivative(j)) * &others;
            numer = &numer - &term.scale(&coeff);
        }
        let mut out = Self::from_polynomial(numer);
        out.factors = self.factors.iter().map(|(p, &e)| (p.clone(), if p.depends_on(j) { e + 1 } else { e })).collect();
        out.cancel();
        out
    }

    /// Applies `∂^u`, the product of `∂_j^{u_j}`.
    pub fn differentiate_multi(&self, u: &[u32]) -> Self {
        let mut f = self.clone();
        for (j, &k) in u.iter().enumerate() {
            for _ in 0..k {
                if f.is_zero() {
                    return f;
                }
                f = f.differentiate(j);
            }
        }
        f
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        let mut den = BigRational::one();
        for (p, &e) in &self.factors {
            let v = p.evaluate(point)?;
            if v.is_zero() {
                return Err(Error::DivisionByZero);
            }
            den *= num_traits::pow(v, e as usize);
        }
        Ok(self.numerator.evaluate(point)? / den)
    }

    fn from_parts(numerator: LaurentPolynomial, factors: BTreeMap<LaurentPolynomial, u32>) -> Self {
        let mut out = Self { numerator, factors };
        out.cancel();
        out
    }
}

/// Splits `p = lead · x^shift · monic` where `monic` has monomial gcd 1 and
/// lexicographic leading coefficient 1.
fn normalize_factor(p: &LaurentPolynomial) -> (Vec<i64>, BigRational, LaurentPolynomial) {
    let shift = p.min_exponents();
    let neg: Vec<i64> = shift.iter().map(|k| -k).collect();
    let stripped = p.shift(&neg);
    let lead = stripped.leading_term().expect("nonzero factor").1.clone();
    let monic = stripped.scale(&lead.recip());
    (shift, lead, monic)
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        let (a, b, _) = self.common_numerators(other);
        a == b
    }
}

impl Eq for RationalFunction {}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        let (a, b, common) = self.common_numerators(rhs);
        RationalFunction::from_parts(&a + &b, common)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        let (a, b, common) = self.common_numerators(rhs);
        RationalFunction::from_parts(&a - &b, common)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        let mut factors = self.factors.clone();
        for (p, &e) in &rhs.factors {
            *factors.entry(p.clone()).or_insert(0) += e;
        }
        RationalFunction::from_parts(&self.numerator * &rhs.numerator, factors)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero; see [`RationalFunction::checked_div`].
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { numerator: -&self.numerator, factors: self.factors.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul, Div::div);

impl From<LaurentPolynomial> for RationalFunction {
    fn from(p: LaurentPolynomial) -> Self {
        Self::from_polynomial(p)
    }
}

fn write_polynomial_group(f: &mut fmt::Formatter<'_>, p: &LaurentPolynomial) -> fmt::Result {
    if p.len() > 1 {
        write!(f, "({p})")
    } else {
        write!(f, "{p}")
    }
}

impl fmt::Display for RationalFunction {
    /// Prints in the expression grammar: `numerator/(monomial*factor^e*...)`,
    /// with negative numerator exponents moved into the denominator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        let mins = self.numerator.min_exponents();
        let monomial_den: Vec<i64> = mins.iter().map(|&k| if k < 0 { -k } else { 0 }).collect();
        let numer = self.numerator.shift(&monomial_den);
        let mut pieces = 0usize;
        if monomial_den.iter().any(|&k| k > 0) {
            pieces += monomial_den.iter().filter(|&&k| k > 0).count();
        }
        pieces += self.factors.len();
        write_polynomial_group(f, &numer)?;
        f.write_str("/")?;
        if pieces > 1 {
            f.write_str("(")?;
        }
        let mut first = true;
        if monomial_den.iter().any(|&k| k > 0) {
            write_term(f, &monomial_den, &BigRational::one())?;
            first = false;
        }
        for (p, &e) in &self.factors {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if p.len() > 1 || e > 1 {
                write!(f, "({p})")?;
            } else {
                write!(f, "{p}")?;
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if pieces > 1 {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
