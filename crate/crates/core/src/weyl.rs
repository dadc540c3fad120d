//! The A-hypergeometric system and its verification engine.
//!
//! A rational function `f` is A-hypergeometric of degree `β` when the Euler
//! operators `Σ_j a_ij x_j ∂_j − β_i` and every toric operator `∂^u − ∂^v`
//! with `A·u = A·v` annihilate it. Partial derivatives commute, so a left
//! ideal generated by finitely many `∂^u − ∂^v` kills `f` as soon as each
//! generator does: `(∂^w(∂^u − ∂^v)) f = ∂^w 0 = 0`. Certification therefore
//! checks a generating set of the toric ideal, computed by saturating the
//! lattice ideal with the Gröbner engine.
//!
//! Degrees are rational vectors; exact arithmetic has no room for complex
//! `β`, and integrality is reported separately.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{factorial, integer_kernel, LaurentPolynomial, RationalFunction};
use crate::polytope::Configuration;
use crate::residue::groebner::{buchberger, MonomialOrder, OrderedPolynomial, DEFAULT_STEP_BUDGET};

/// The operator `∂^u − ∂^v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ToricBinomialOp {
    pub u: Vec<u32>,
    pub v: Vec<u32>,
}

impl ToricBinomialOp {
    /// Checks `A·u = A·v` and cancels the common part of `u` and `v`.
    pub fn new(a: &Configuration, u: Vec<u32>, v: Vec<u32>) -> Result<Self> {
        if u.len() != a.s() || v.len() != a.s() {
            return Err(Error::InvalidInput(format!("exponent vectors must have length {}", a.s())));
        }
        let diff: Vec<BigInt> = u.iter().zip(&v).map(|(&x, &y)| BigInt::from(x) - BigInt::from(y)).collect();
        if !a.matrix().mul_vec(&diff).iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("A·u ≠ A·v".into()));
        }
        Ok(Self::from_difference(&diff))
    }

    /// The reduced operator `∂^{b₊} − ∂^{b₋}` of an integer vector.
    pub fn from_difference(b: &[BigInt]) -> Self {
        let part = |x: &BigInt| x.to_u32().expect("exponent fits in 32 bits");
        let u = b.iter().map(|x| if x.is_positive() { part(x) } else { 0 }).collect();
        let v = b.iter().map(|x| if x.is_negative() { part(&-x) } else { 0 }).collect();
        Self { u, v }
    }

    pub fn difference(&self) -> Vec<BigInt> {
        self.u.iter().zip(&self.v).map(|(&x, &y)| BigInt::from(x) - BigInt::from(y)).collect()
    }

    /// Order of the operator: the larger of `|u|` and `|v|`.
    pub fn order(&self) -> u32 {
        self.u.iter().sum::<u32>().max(self.v.iter().sum())
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: &[u32]) -> fmt::Result {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(j, &x)| if x == 1 { format!("∂{}", j + 1) } else { format!("∂{}^{x}", j + 1) })
        .collect();
    if parts.is_empty() {
        f.write_str("1")
    } else {
        f.write_str(&parts.join(""))
    }
}

impl fmt::Display for ToricBinomialOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, &self.u)?;
        f.write_str(" - ")?;
        write_monomial(f, &self.v)
    }
}

/// `Σ_j a_ij x_j ∂_j`, the Euler operator of row `i` without its constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerOp {
    pub row: usize,
    pub coefficients: Vec<BigInt>,
}

pub fn euler_operators(a: &Configuration) -> Vec<EulerOp> {
    (0..a.d()).map(|i| EulerOp { row: i, coefficients: a.matrix().row(i).to_vec() }).collect()
}

pub fn apply_euler(op: &EulerOp, f: &RationalFunction) -> RationalFunction {
    let n = f.nvars();
    let mut out = RationalFunction::zero(n);
    for (j, c) in op.coefficients.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = &RationalFunction::variable(n, j) * &f.differentiate(j);
        out = &out + &term.scale(&BigRational::from_integer(c.clone()));
    }
    out
}

/// `∂^u f − ∂^v f`.
pub fn apply_toric(op: &ToricBinomialOp, f: &RationalFunction) -> RationalFunction {
    &f.differentiate_multi(&op.u) - &f.differentiate_multi(&op.v)
}

/// How to produce toric ideal generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorMethod {
    /// Saturate the lattice ideal; complete.
    Saturation { budget: u64 },
    /// Every primitive kernel vector of 1-norm at most `norm`; possibly
    /// incomplete.
    Bounded { norm: u64 },
}

impl Default for GeneratorMethod {
    fn default() -> Self {
        GeneratorMethod::Saturation { budget: DEFAULT_STEP_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricGenerators {
    pub ops: Vec<ToricBinomialOp>,
    /// False when the set is only known to lie in the ideal.
    pub complete: bool,
}

pub fn toric_ideal_generators(a: &Configuration, method: GeneratorMethod) -> Result<ToricGenerators> {
    match method {
        GeneratorMethod::Saturation { budget } => saturation(a, budget),
        GeneratorMethod::Bounded { norm } => Ok(ToricGenerators { ops: bounded(a, norm), complete: false }),
    }
}

fn binomial(u: &[u32], v: &[u32], shift: usize, nvars: usize, order: MonomialOrder) -> OrderedPolynomial {
    let lift = |e: &[u32]| {
        let mut full = vec![0u32; nvars];
        full[shift..shift + e.len()].copy_from_slice(e);
        full
    };
    OrderedPolynomial::from_terms(nvars, order, [(lift(u), BigRational::one()), (lift(v), -BigRational::one())])
}

fn saturation(a: &Configuration, budget: u64) -> Result<ToricGenerators> {
    let s = a.s();
    let nvars = s + 1;
    let order = MonomialOrder::Elimination { block: 1 };
    let mut gens: Vec<OrderedPolynomial> = integer_kernel(a.matrix())
        .iter()
        .map(|b| {
            let op = ToricBinomialOp::from_difference(b);
            binomial(&op.u, &op.v, 1, nvars, order)
        })
        .collect();
    if gens.is_empty() {
        return Ok(ToricGenerators { ops: Vec::new(), complete: true });
    }
    gens.push(binomial(&vec![1; nvars], &vec![0; nvars], 0, nvars, order));
    let gb = buchberger(&gens, order, budget)?;
    let mut ops = Vec::new();
    for g in &gb.generators {
        if g.terms().iter().any(|(e, _)| e[0] > 0) {
            continue;
        }
        let [(u, cu), (v, cv)] = g.terms() else {
            return Err(Error::Internal(format!("toric ideal element is not a binomial: {g}")));
        };
        if !cu.is_one() || *cv != -BigRational::one() {
            return Err(Error::Internal(format!("toric ideal element has unexpected coefficients: {g}")));
        }
        ops.push(ToricBinomialOp { u: u[1..].to_vec(), v: v[1..].to_vec() });
    }
    ops.sort();
    Ok(ToricGenerators { ops, complete: true })
}

fn bounded(a: &Configuration, norm: u64) -> Vec<ToricBinomialOp> {
    let s = a.s();
    let d = a.d();
    let cols: Vec<Vec<BigInt>> = (0..s).map(|j| a.column(j)).collect();
    let mut out = Vec::new();
    let mut current = vec![0i64; s];
    let mut image = vec![BigInt::zero(); d];
    enumerate_bounded(&cols, 0, norm as i64, &mut current, &mut image, &mut out);
    out.sort();
    out
}

fn enumerate_bounded(
    cols: &[Vec<BigInt>],
    j: usize,
    left: i64,
    current: &mut Vec<i64>,
    image: &mut Vec<BigInt>,
    out: &mut Vec<ToricBinomialOp>,
) {
    if j == cols.len() {
        let first = current.iter().find(|&&x| x != 0);
        if first.is_some_and(|&x| x > 0) && image.iter().all(Zero::is_zero) {
            let g = current.iter().fold(0i64, |g, &x| g.gcd(&x));
            if g == 1 {
                let b: Vec<BigInt> = current.iter().map(|&x| BigInt::from(x)).collect();
                out.push(ToricBinomialOp::from_difference(&b));
            }
        }
        return;
    }
    for x in -left..=left {
        current[j] = x;
        for (acc, c) in image.iter_mut().zip(&cols[j]) {
            *acc += c * x;
        }
        enumerate_bounded(cols, j + 1, left - x.abs(), current, image, out);
        for (acc, c) in image.iter_mut().zip(&cols[j]) {
            *acc -= c * x;
        }
    }
    current[j] = 0;
}

fn a_degree(a: &Configuration, e: &[i64]) -> Vec<BigInt> {
    let v: Vec<BigInt> = e.iter().map(|&x| BigInt::from(x)).collect();
    a.matrix().mul_vec(&v)
}

fn polynomial_degree(a: &Configuration, p: &LaurentPolynomial) -> Option<Vec<BigInt>> {
    let mut degrees = p.terms().map(|(e, _)| a_degree(a, e));
    let first = degrees.next()?;
    degrees.all(|x| x == first).then_some(first)
}

fn sample_points(n: usize) -> impl Iterator<Item = Vec<BigRational>> {
    (1i64..).map(move |k| {
        (0..n).map(|j| BigRational::new(BigInt::from(k * (j as i64 + 2) + 1), BigInt::from(j as i64 + k + 1))).collect()
    })
}

/// The degree `β` with `E_i f = β_i f` for every row, if `f` is
/// A-homogeneous.
pub fn homogeneity_degree(a: &Configuration, f: &RationalFunction) -> Option<Vec<BigRational>> {
    if f.is_zero() || f.nvars() != a.s() {
        return None;
    }
    let fast = polynomial_degree(a, f.numerator()).and_then(|mut beta| {
        for (p, e) in f.factors() {
            let dp = polynomial_degree(a, p)?;
            for (b, x) in beta.iter_mut().zip(dp) {
                *b -= x * e;
            }
        }
        Some(beta.into_iter().map(BigRational::from_integer).collect::<Vec<_>>())
    });
    if fast.is_some() {
        return fast;
    }
    let point = sample_points(a.s()).take(64).find(|p| f.evaluate(p).is_ok_and(|v| !v.is_zero()))?;
    let value = f.evaluate(&point).ok()?;
    let mut beta = Vec::with_capacity(a.d());
    for op in euler_operators(a) {
        let g = apply_euler(&op, f);
        let b = g.evaluate(&point).ok()? / &value;
        if g != f.scale(&b) {
            return None;
        }
        beta.push(b);
    }
    Some(beta)
}

/// Why a function failed certification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// `f` is not homogeneous with respect to this row of `A`.
    Euler { row: usize },
    /// This generator does not annihilate `f`.
    Toric { operator: ToricBinomialOp },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Certified,
    Refuted,
}

/// The outcome of [`verify_hypergeometric`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    #[serde(serialize_with = "crate::json::ser_optional_rationals")]
    pub beta: Option<Vec<BigRational>>,
    pub integral_beta: bool,
    /// Number of toric generators checked.
    pub generators: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Verification {
    pub fn is_certified(&self) -> bool {
        self.status == Status::Certified
    }
}

/// Certifies `f` as A-hypergeometric or returns the first failing operator.
pub fn verify_hypergeometric(a: &Configuration, f: &RationalFunction, budget: u64) -> Result<Verification> {
    if f.is_zero() {
        return Err(Error::InvalidInput("the zero function is excluded".into()));
    }
    if f.nvars() != a.s() {
        return Err(Error::InvalidInput(format!(
            "the function has {} variables but A has {} columns",
            f.nvars(),
            a.s()
        )));
    }
    let Some(beta) = homogeneity_degree(a, f) else {
        let row = euler_operators(a)
            .iter()
            .position(|op| {
                let g = apply_euler(op, f);
                let point = sample_points(a.s()).take(64).find(|p| f.evaluate(p).is_ok_and(|v| !v.is_zero()));
                match point {
                    Some(p) => match (g.evaluate(&p), f.evaluate(&p)) {
                        (Ok(x), Ok(y)) => g != f.scale(&(x / y)),
                        _ => true,
                    },
                    None => true,
                }
            })
            .unwrap_or(0);
        return Ok(Verification {
            beta: None,
            integral_beta: false,
            generators: 0,
            status: Status::Refuted,
            counterexample: Some(Counterexample::Euler { row }),
        });
    };
    let integral_beta = beta.iter().all(BigRational::is_integer);
    let gens = toric_ideal_generators(a, GeneratorMethod::Saturation { budget })?;
    let results: Vec<bool> = gens.ops.par_iter().map(|op| apply_toric(op, f).is_zero()).collect();
    let failure = results.iter().position(|ok| !ok);
    Ok(Verification {
        beta: Some(beta),
        integral_beta,
        generators: gens.ops.len(),
        status: if failure.is_some() { Status::Refuted } else { Status::Certified },
        counterexample: failure.map(|k| Counterexample::Toric { operator: gens.ops[k].clone() }),
    })
}

/// The series `Σ F(m,n) u^m v^n` attached to the octahedron with points
/// `q·e_i`, `−p·e_i`:
/// `F(m,n) = (p(m+n+k)−1)!·(q(m+n+k)−1)! / ((np)!(nq)!(mp)!(mq)!)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OctahedronSeries {
    pub p: u64,
    pub q: u64,
    pub k: u64,
}

impl OctahedronSeries {
    pub fn new(p: u64, q: u64, k: u64) -> Result<Self> {
        if p == 0 || q == 0 || k == 0 || p.gcd(&q) != 1 {
            return Err(Error::InvalidInput("need coprime positive p, q and k ≥ 1".into()));
        }
        Ok(Self { p, q, k })
    }

    pub fn coefficient(&self, m: u64, n: u64) -> BigRational {
        let (p, q, k) = (self.p, self.q, self.k);
        let num = factorial(p * (m + n + k) - 1) * factorial(q * (m + n + k) - 1);
        let den = factorial(n * p) * factorial(n * q) * factorial(m * p) * factorial(m * q);
        BigRational::new(num, den)
    }

    /// `(R(m+a, n+b), S(m+a, n+b))` from their closed product forms.
    pub fn quotients(&self, m: u64, n: u64, a: u64, b: u64) -> (BigRational, BigRational) {
        let (p, q, k) = (self.p, self.q, self.k);
        let mu = m + n;
        let c = a + b;
        let rising = |base: u64, len: u64| (0..len).fold(BigInt::one(), |acc, j| acc * (base + j));
        let top = rising(p * (mu + c + k), p) * rising(q * (mu + c + k), q);
        let bottom = |x: u64| rising(p * x + 1, p) * rising(q * x + 1, q);
        (BigRational::new(top.clone(), bottom(m + a)), BigRational::new(top, bottom(n + b)))
    }
}

pub fn octahedron_coefficient(p: u64, q: u64, k: u64, m: u64, n: u64) -> Result<BigRational> {
    Ok(OctahedronSeries::new(p, q, k)?.coefficient(m, n))
}

pub fn octahedron_quotients(
    p: u64,
    q: u64,
    k: u64,
    m: u64,
    n: u64,
    a: u64,
    b: u64,
) -> Result<(BigRational, BigRational)> {
    Ok(OctahedronSeries::new(p, q, k)?.quotients(m, n, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::exactalg::{parse, rat};
    use proptest::prelude::*;

    const BUDGET: u64 = DEFAULT_STEP_BUDGET;

    fn ops(a: &Configuration) -> Vec<ToricBinomialOp> {
        toric_ideal_generators(a, GeneratorMethod::default()).unwrap().ops
    }

    fn twisted_cubic() -> Configuration {
        Configuration::from_rows(&[vec![1, 1, 1, 1], vec![0, 1, 2, 3]]).unwrap()
    }

    #[test]
    fn square_generator() {
        let g = ops(&catalog::gauss_square());
        assert_eq!(g, vec![ToricBinomialOp { u: vec![1, 1, 0, 0], v: vec![0, 0, 1, 1] }]);
        assert_eq!(g[0].to_string(), "∂1∂2 - ∂3∂4");
    }

    #[test]
    fn circuit_has_one_generator() {
        let a = crate::circuits::circuit_configuration(&[2, -3, 1, 1, -1]).unwrap();
        let g = ops(&a);
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].order(), 4);
    }

    #[test]
    fn twisted_cubic_has_three_quadrics() {
        let a = twisted_cubic();
        let sat = ops(&a);
        assert_eq!(sat.len(), 3);
        assert!(sat.iter().all(|op| op.order() == 2));
        let bounded = toric_ideal_generators(&a, GeneratorMethod::Bounded { norm: 4 }).unwrap();
        assert!(!bounded.complete);
        let mut sat_sorted: Vec<Vec<BigInt>> = sat.iter().map(ToricBinomialOp::difference).collect();
        let mut bnd_sorted: Vec<Vec<BigInt>> = bounded.ops.iter().map(ToricBinomialOp::difference).collect();
        for v in sat_sorted.iter_mut().chain(bnd_sorted.iter_mut()) {
            if v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
        }
        sat_sorted.sort();
        bnd_sorted.sort();
        assert_eq!(sat_sorted, bnd_sorted);
    }

    #[test]
    fn bounded_binomials_lie_in_the_saturated_ideal() {
        for a in [catalog::scroll(), catalog::wedge(1, 2), catalog::six_points(1, 1), twisted_cubic()] {
            let sat = ops(&a);
            let order = MonomialOrder::GRevLex;
            let polys: Vec<OrderedPolynomial> = sat.iter().map(|op| binomial(&op.u, &op.v, 0, a.s(), order)).collect();
            let gb = buchberger(&polys, order, BUDGET).unwrap();
            for op in toric_ideal_generators(&a, GeneratorMethod::Bounded { norm: 6 }).unwrap().ops {
                assert!(gb.normal_form(&binomial(&op.u, &op.v, 0, a.s(), order)).is_zero(), "{op}");
            }
            for op in &sat {
                let lhs = a.matrix().mul_vec(&op.u.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
                let rhs = a.matrix().mul_vec(&op.v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn operator_application() {
        let f = parse("1/(x1*x2 - x3*x4)", 4).unwrap();
        let op = ToricBinomialOp { u: vec![1, 1, 0, 0], v: vec![0, 0, 1, 1] };
        assert!(apply_toric(&op, &f).is_zero());
        let c = RationalFunction::constant(4, rat(5));
        assert!(apply_toric(&op, &c).is_zero());
        let g = parse("1/(x2^2 - 4*x1*x3)", 3).unwrap();
        let op = ToricBinomialOp { u: vec![1, 0, 1], v: vec![0, 2, 0] };
        assert!(!apply_toric(&op, &g).is_zero());
    }

    #[test]
    fn degrees() {
        let square = catalog::gauss_square();
        let f = parse("1/(x1*x2 - x3*x4)", 4).unwrap();
        assert_eq!(homogeneity_degree(&square, &f), Some(vec![rat(-1), rat(-1), rat(-1)]));
        let mono = parse("x1^2*x3/x4^3", 4).unwrap();
        assert_eq!(homogeneity_degree(&square, &mono), Some(vec![rat(3), rat(-3), rat(1)]));
        let scroll = catalog::scroll();
        let r = "x1^2*x6^2 - x1*x2*x6*x5 - 2*x1*x3*x4*x6 + x1*x3*x5^2 + x2^2*x4*x6 - x2*x3*x4*x5 + x3^2*x4^2";
        let g = parse(&format!("(x1*x6 - x3*x4)/({r})"), 6).unwrap();
        assert_eq!(homogeneity_degree(&scroll, &g), Some(vec![rat(-1), rat(-1), rat(-2)]));
        let bad = parse("1/(x1 + x2)", 4).unwrap();
        assert_eq!(homogeneity_degree(&square, &bad), None);
    }

    #[test]
    fn certificates() {
        let square = catalog::gauss_square();
        let f = parse("1/(x1*x2 - x3*x4)", 4).unwrap();
        let v = verify_hypergeometric(&square, &f, BUDGET).unwrap();
        assert!(v.is_certified());
        assert_eq!(v.beta, Some(vec![rat(-1), rat(-1), rat(-1)]));
        assert_eq!(v.generators, 1);

        let scroll = catalog::scroll();
        let r = "x1^2*x6^2 - x1*x2*x6*x5 - 2*x1*x3*x4*x6 + x1*x3*x5^2 + x2^2*x4*x6 - x2*x3*x4*x5 + x3^2*x4^2";
        let inv = parse(&format!("1/({r})"), 6).unwrap();
        let v = verify_hypergeometric(&scroll, &inv, BUDGET).unwrap();
        assert_eq!(v.status, Status::Refuted);
        assert!(matches!(v.counterexample, Some(Counterexample::Toric { .. })));
        let good = parse(&format!("(x1*x6 - x3*x4)/({r})"), 6).unwrap();
        assert!(verify_hypergeometric(&scroll, &good, BUDGET).unwrap().is_certified());

        let seg = catalog::cayley_segments();
        let h = parse("x4*(-x1^4*x4^2 - 6*x1^2*x2^2*x3*x4 + 3*x2^4*x3^2)/(x2^2*(x2^2*x3 + x1^2*x4)^3)", 4).unwrap();
        let v = verify_hypergeometric(&seg, &h, BUDGET).unwrap();
        assert!(v.is_certified());
        assert_eq!(v.beta.as_ref().unwrap()[1], rat(0));
    }

    #[test]
    fn derivatives_stay_hypergeometric() {
        let seg = catalog::cayley_segments();
        let h = parse("x4*(-x1^4*x4^2 - 6*x1^2*x2^2*x3*x4 + 3*x2^4*x3^2)/(x2^2*(x2^2*x3 + x1^2*x4)^3)", 4).unwrap();
        let square = catalog::gauss_square();
        let f = parse("1/(x1*x2 - x3*x4)", 4).unwrap();
        for (a, g) in [(&seg, &h), (&square, &f)] {
            let beta = verify_hypergeometric(a, g, BUDGET).unwrap().beta.unwrap();
            for j in 0..4 {
                let dg = g.differentiate(j);
                let v = verify_hypergeometric(a, &dg, BUDGET).unwrap();
                assert!(v.is_certified());
                let expected: Vec<BigRational> =
                    beta.iter().zip(a.column(j)).map(|(b, x)| b - BigRational::from_integer(x)).collect();
                assert_eq!(v.beta.unwrap(), expected);
            }
        }
    }

    #[test]
    fn unbalanced_inverse_discriminant_is_refuted() {
        let line = Configuration::from_rows(&[vec![1, 1, 1], vec![0, 1, 2]]).unwrap();
        let f = parse("1/(x2^2 - 4*x1*x3)", 3).unwrap();
        let v = verify_hypergeometric(&line, &f, BUDGET).unwrap();
        assert_eq!(v.status, Status::Refuted);
    }

    #[test]
    fn non_homogeneous_function_reports_euler_row() {
        let square = catalog::gauss_square();
        let f = parse("1/(x1 + x3)", 4).unwrap();
        let v = verify_hypergeometric(&square, &f, BUDGET).unwrap();
        assert_eq!(v.counterexample, Some(Counterexample::Euler { row: 2 }));
    }

    #[test]
    fn octahedron_values() {
        let s = OctahedronSeries::new(2, 3, 2).unwrap();
        assert_eq!(s.coefficient(0, 0), BigRational::from_integer(factorial(3) * factorial(5)));
        for (p, q, k) in [(1, 1, 1), (1, 2, 1), (2, 3, 2)] {
            let s = OctahedronSeries::new(p, q, k).unwrap();
            for m in 0..=10 {
                for n in 0..=10 {
                    let f = s.coefficient(m, n);
                    let (r, t) = s.quotients(m, n, 0, 0);
                    assert_eq!(s.coefficient(m + 1, n) / &f, r);
                    assert_eq!(s.coefficient(m, n + 1) / &f, t);
                    assert_eq!(f, s.coefficient(n, m));
                }
            }
            let (r, t) = s.quotients(2, 1, 3, 4);
            assert_eq!(r, s.quotients(5, 5, 0, 0).0);
            assert_eq!(t, s.quotients(5, 5, 0, 0).1);
        }
        assert!(OctahedronSeries::new(2, 4, 1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn application_is_linear(a in -3i64..=3, b in -3i64..=3, c in 1i64..=3) {
            let f = parse(&format!("{a}/(x1*x2 - x3*x4) + x1^{c}"), 4).unwrap();
            let g = parse(&format!("x3/(x1 + {b}*x2)"), 4).unwrap();
            let op = ToricBinomialOp { u: vec![1, 1, 0, 0], v: vec![0, 0, 1, 1] };
            prop_assert_eq!(apply_toric(&op, &(&f + &g)), &apply_toric(&op, &f) + &apply_toric(&op, &g));
        }
    }
}
