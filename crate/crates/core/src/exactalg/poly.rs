//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration order is
//! lexicographic on exponents and every derived output is reproducible.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigRational>,
}

fn add_exp(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x.checked_add(*y).expect("exponent overflow")).collect()
}

fn sub_exp(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y).expect("exponent overflow")).collect()
}

impl LaurentPolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exponent: Vec<i64>, c: BigRational) -> Self {
        let nvars = exponent.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponent, c);
        }
        Self { nvars, terms }
    }

    /// The variable `x_{j+1}` (0-based index `j`).
    pub fn variable(nvars: usize, j: usize) -> Self {
        assert!(j < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[j] = 1;
        Self::monomial(e, BigRational::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i64>, BigRational)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Vec<i64>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing lexicographic order of exponents.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<i64>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[i64]) -> BigRational {
        self.terms.get(e).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The value if the polynomial is a constant (including zero).
    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().expect("one term");
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Vec<i64>, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn depends_on(&self, j: usize) -> bool {
        self.terms.keys().any(|e| e[j] != 0)
    }

    /// Componentwise minimum of the exponents (the monomial gcd).
    pub fn min_exponents(&self) -> Vec<i64> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        it.fold(first.clone(), |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn max_exponents(&self) -> Vec<i64> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return vec![0; self.nvars];
        };
        it.fold(first.clone(), |acc, e| acc.iter().zip(e).map(|(a, b)| *a.max(b)).collect())
    }

    /// Largest total degree among the terms.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (add_exp(e, shift), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to `x_{j+1}`.
    pub fn derivative(&self, j: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[j] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[j] -= 1;
            out.add_term(f, c * BigRational::from_integer(BigInt::from(e[j])));
        }
        out
    }

    /// The Euler operator `Σ w_j x_j ∂_j`, which scales `x^u` by `w·u`.
    pub fn euler(&self, w: &[BigInt]) -> Self {
        assert_eq!(w.len(), self.nvars, "weight length mismatch");
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let dot: BigInt = e.iter().zip(w).map(|(x, y)| y * BigInt::from(*x)).sum();
            out.add_term(e.clone(), c * BigRational::from_integer(dot));
        }
        out
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        assert_eq!(point.len(), self.nvars, "point dimension mismatch");
        let mut total = BigRational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k == 0 {
                    continue;
                }
                if k < 0 && x.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                let p = num_traits::pow(x.clone(), k.unsigned_abs() as usize);
                t = if k > 0 { t * p } else { t / p };
            }
            total += t;
        }
        Ok(total)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.nvars));
        }
        let (smin, smax) = (self.min_exponents(), self.max_exponents());
        let (dmin, dmax) = (d.min_exponents(), d.max_exponents());
        let qmin = sub_exp(&smin, &dmin);
        let qmax = sub_exp(&smax, &dmax);
        if qmin.iter().zip(&qmax).any(|(a, b)| a > b) {
            return None;
        }
        let (dlead_e, dlead_c) = d.leading_term().expect("nonzero divisor");
        let (dlead_e, dlead_c) = (dlead_e.clone(), dlead_c.clone());
        let mut rem = self.clone();
        let mut q = Self::zero(self.nvars);
        while let Some((e, c)) = rem.leading_term() {
            let qe = sub_exp(e, &dlead_e);
            if qe.iter().zip(&qmin).zip(&qmax).any(|((x, lo), hi)| x < lo || x > hi) {
                return None;
            }
            let qc = c / &dlead_c;
            let term = Self::monomial(qe, qc);
            rem = &rem - &(&term * d);
            q = &q + &term;
        }
        Some(q)
    }

    /// Writes `self = c · p` with `p` having coprime integer coefficients and
    /// a positive leading coefficient; returns `(c, p)`.
    pub fn primitive_part(&self) -> (BigRational, Self) {
        if self.is_zero() {
            return (BigRational::one(), self.clone());
        }
        let l = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let g = self
            .terms
            .values()
            .fold(BigInt::zero(), |acc, c| acc.gcd(&(c * BigRational::from_integer(l.clone())).to_integer()));
        let mut content = BigRational::new(g, l);
        if self.leading_term().expect("nonzero").1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    /// Replaces the variables by other polynomials (all in a common ring).
    /// Exponents must be nonnegative.
    pub fn compose(&self, images: &[LaurentPolynomial]) -> Result<Self> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, LaurentPolynomial::nvars);
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (img, &k) in images.iter().zip(e) {
                if k < 0 {
                    return Err(Error::InvalidInput("negative exponent in composition".into()));
                }
                if k > 0 {
                    t = &t * &img.pow(u32::try_from(k).expect("exponent fits in u32"));
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    fn combine(&self, other: &Self, sign: bool) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), if sign { c.clone() } else { -c.clone() });
        }
        out
    }

    fn product(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(add_exp(e1, e2), c1 * c2);
            }
        }
        out
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.combine(rhs, true)
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.combine(rhs, false)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self.product(rhs)
    }
}

impl Add for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self + &rhs
    }
}

impl Sub for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self - &rhs
    }
}

impl Mul for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
        &self * &rhs
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

/// Determinant of a square matrix of polynomials by fraction-free (Bareiss)
/// elimination. Every intermediate division is exact.
pub fn determinant(matrix: &[Vec<LaurentPolynomial>], nvars: usize) -> LaurentPolynomial {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return LaurentPolynomial::one(nvars);
    }
    let mut m = matrix.to_vec();
    let mut negate = false;
    let mut prev = LaurentPolynomial::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // prefer the sparsest available pivot
            match (k + 1..n).filter(|&i| !m[i][k].is_zero()).min_by_key(|&i| m[i][k].len()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return LaurentPolynomial::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = LaurentPolynomial::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

fn write_rational_coefficient(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &[i64], positive: bool, mut first: bool) -> Result2 {
    for (j, &k) in e.iter().enumerate() {
        if (positive && k <= 0) || (!positive && k >= 0) {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        let k = k.unsigned_abs();
        if k == 1 {
            write!(f, "x{}", j + 1)?;
        } else {
            write!(f, "x{}^{}", j + 1, k)?;
        }
    }
    Ok(first)
}

type Result2 = std::result::Result<bool, fmt::Error>;

/// Writes one term without its sign, e.g. `2*x1^2*x3` or `x2/x1`.
pub(crate) fn write_term(f: &mut fmt::Formatter<'_>, e: &[i64], c: &BigRational) -> fmt::Result {
    let abs = c.abs();
    let has_pos = e.iter().any(|&k| k > 0);
    let has_neg = e.iter().any(|&k| k < 0);
    let mut first = true;
    if !abs.is_one() || !has_pos {
        write_rational_coefficient(f, &abs)?;
        first = false;
    }
    write_monomial(f, e, true, first)?;
    if has_neg {
        let count = e.iter().filter(|&&k| k < 0).count();
        let single = count == 1;
        f.write_str("/")?;
        if !single {
            f.write_str("(")?;
        }
        write_monomial(f, e, false, true)?;
        if !single {
            f.write_str(")")?;
        }
    }
    Ok(())
}

impl fmt::Display for LaurentPolynomial {
    /// Terms in decreasing lexicographic order, in the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write_term(f, e, c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
