//! Circuits of a configuration and their arithmetic: balancedness,
//! discriminants, the geometric series of `1/D` and canonical series
//! coefficients.
//!
//! Enumeration walks independent column sets in increasing index order while
//! keeping an incremental rational echelon form, so each circuit `Z` is found
//! exactly once, from `Z \ {max Z}`.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::matrix::rational::primitive_integer;
use crate::exactalg::{factorial, LaurentPolynomial};
use crate::polytope::{Configuration, SearchLimits};

/// A minimal dependence `b = b₊ − b₋` among the columns.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Circuit {
    /// Sorted column indices where `b` is nonzero.
    pub support: Vec<usize>,
    /// The full-length primitive vector (first nonzero entry positive).
    #[serde(serialize_with = "crate::json::ser_bigints")]
    pub b: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ser_bigint")]
    pub rho: BigInt,
}

impl Circuit {
    /// Normalizes an integer dependence: primitive, first nonzero entry positive.
    pub fn from_vector(b: Vec<BigInt>) -> Result<Self> {
        let g = b.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if g.is_zero() {
            return Err(Error::InvalidInput("zero vector is not a circuit".into()));
        }
        let first_negative = b.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative);
        let g = if first_negative { -g } else { g };
        let b: Vec<BigInt> = b.into_iter().map(|x| x / &g).collect();
        let support = (0..b.len()).filter(|&j| !b[j].is_zero()).collect();
        let rho = b.iter().filter(|x| x.is_positive()).sum();
        Ok(Self { support, b, rho })
    }

    pub fn from_i64(b: &[i64]) -> Result<Self> {
        Self::from_vector(b.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn b_plus(&self) -> Vec<BigInt> {
        self.b.iter().map(|x| if x.is_positive() { x.clone() } else { BigInt::zero() }).collect()
    }

    pub fn b_minus(&self) -> Vec<BigInt> {
        self.b.iter().map(|x| if x.is_negative() { -x } else { BigInt::zero() }).collect()
    }

    fn exps(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).expect("circuit entry fits in 64 bits")).collect()
    }
}

/// Outcome of the balancedness test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Balance {
    /// Pairs `(i, j)` with `b_i > 0` and `b_j = −b_i`.
    Balanced { pairing: Vec<(usize, usize)> },
    /// The first positive value without a matching negative partner, or the
    /// first unmatched negated negative value.
    Unbalanced {
        #[serde(serialize_with = "crate::json::ser_bigint")]
        unmatched: BigInt,
    },
}

impl Balance {
    pub fn is_balanced(&self) -> bool {
        matches!(self, Balance::Balanced { .. })
    }
}

pub fn is_balanced(c: &Circuit) -> Balance {
    let mut negatives: Vec<(BigInt, usize)> =
        c.b.iter().enumerate().filter(|(_, x)| x.is_negative()).map(|(j, x)| (-x, j)).collect();
    let mut pairing = Vec::new();
    for (i, x) in c.b.iter().enumerate().filter(|(_, x)| x.is_positive()) {
        match negatives.iter().position(|(v, _)| v == x) {
            Some(k) => pairing.push((i, negatives.remove(k).1)),
            None => return Balance::Unbalanced { unmatched: x.clone() },
        }
    }
    match negatives.first() {
        Some((v, _)) => Balance::Unbalanced { unmatched: v.clone() },
        None => Balance::Balanced { pairing },
    }
}

/// A circuit configuration is gkz-rational exactly when it is balanced.
pub fn circuit_gkz_rational(c: &Circuit) -> bool {
    is_balanced(c).is_balanced()
}

struct Echelon {
    /// (pivot column, reduced vector, combination of chosen columns)
    rows: Vec<(usize, Vec<BigRational>, Vec<BigRational>)>,
}

impl Echelon {
    /// Reduces `v`; returns the remainder and the combination (over the
    /// `k` chosen columns) that was subtracted.
    fn reduce(&self, v: &[BigRational], k: usize) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut rem = v.to_vec();
        let mut coeffs = vec![BigRational::zero(); k];
        for (p, row, comb) in &self.rows {
            if rem[*p].is_zero() {
                continue;
            }
            let f = &rem[*p] / &row[*p];
            for (x, y) in rem.iter_mut().zip(row) {
                *x -= &f * y;
            }
            for (c, y) in coeffs.iter_mut().zip(comb) {
                *c += &f * y;
            }
        }
        (rem, coeffs)
    }
}

/// Calls `f` on every circuit, stopping early if `f` breaks. Returns
/// `Ok(true)` when the walk finished, `Ok(false)` when `f` stopped it, and an
/// error when more than `limits.max_subsets` independent sets were visited.
pub fn visit_circuits(
    a: &Configuration,
    limits: SearchLimits,
    mut f: impl FnMut(Circuit) -> ControlFlow<()>,
) -> Result<bool> {
    let s = a.s();
    let cols: Vec<Vec<BigRational>> =
        (0..s).map(|j| a.column(j).into_iter().map(BigRational::from_integer).collect()).collect();
    let mut nodes = 0u64;
    let mut chosen = Vec::new();
    let mut ech = Echelon { rows: Vec::new() };
    let flow = walk(&cols, a.d(), &mut chosen, &mut ech, 0, &mut nodes, limits.max_subsets, &mut f)?;
    Ok(flow.is_continue())
}

#[allow(clippy::too_many_arguments)]
fn walk(
    cols: &[Vec<BigRational>],
    d: usize,
    chosen: &mut Vec<usize>,
    ech: &mut Echelon,
    start: usize,
    nodes: &mut u64,
    budget: u64,
    f: &mut impl FnMut(Circuit) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::SearchSpaceExceeded { limit: budget });
    }
    let s = cols.len();
    let k = chosen.len();
    for j in start..s {
        let (rem, coeffs) = ech.reduce(&cols[j], k);
        if rem.iter().all(Zero::is_zero) {
            // a_j = Σ coeffs_i a_{chosen_i}; a circuit when every coefficient is nonzero
            if k > 0 && coeffs.iter().all(|c| !c.is_zero()) {
                let mut v = vec![BigRational::zero(); s];
                for (i, c) in chosen.iter().zip(&coeffs) {
                    v[*i] = c.clone();
                }
                v[j] = -BigRational::one();
                let circuit = Circuit::from_vector(primitive_integer(&v))?;
                if f(circuit).is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
        } else if k < d {
            let pivot = rem.iter().position(|x| !x.is_zero()).expect("nonzero remainder");
            let mut comb: Vec<BigRational> = coeffs.into_iter().map(|c| -c).collect();
            comb.push(BigRational::one());
            for row in &mut ech.rows {
                row.2.push(BigRational::zero());
            }
            ech.rows.push((pivot, rem, comb));
            chosen.push(j);
            let flow = walk(cols, d, chosen, ech, j + 1, nodes, budget, f);
            chosen.pop();
            ech.rows.pop();
            for row in &mut ech.rows {
                row.2.pop();
            }
            if flow?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// All circuits, sorted by support.
pub fn enumerate_circuits(a: &Configuration, limits: SearchLimits) -> Result<Vec<Circuit>> {
    let mut out = Vec::new();
    visit_circuits(a, limits, |c| {
        out.push(c);
        ControlFlow::Continue(())
    })?;
    out.sort();
    Ok(out)
}

/// The circuit discriminant `D = x^{b₋} − λ·x^{b₊}` in raw and
/// integer-cleared form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitDiscriminant {
    pub lambda: BigRational,
    pub raw: LaurentPolynomial,
    /// `q·x^{b₋} − p·x^{b₊}` where `λ = p/q`: coprime integer coefficients.
    pub cleared: LaurentPolynomial,
}

fn power_product(values: &[BigInt]) -> BigInt {
    values
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| num_traits::pow(v.clone(), usize::try_from(v).expect("small exponent")))
        .product()
}

/// `λ = (−1)^ρ ∏(−b_j)^{−b_j} / ∏ b_i^{b_i}`.
pub fn circuit_lambda(c: &Circuit) -> BigRational {
    let num = power_product(&c.b_minus());
    let den = power_product(&c.b_plus());
    let sign = if c.rho.is_odd() { -BigInt::one() } else { BigInt::one() };
    BigRational::new(sign * num, den)
}

pub fn circuit_discriminant(c: &Circuit) -> CircuitDiscriminant {
    let lambda = circuit_lambda(c);
    let minus = Circuit::exps(&c.b_minus());
    let plus = Circuit::exps(&c.b_plus());
    let raw = &LaurentPolynomial::monomial(minus.clone(), BigRational::one())
        - &LaurentPolynomial::monomial(plus.clone(), lambda.clone());
    let cleared = &LaurentPolynomial::monomial(minus, BigRational::from_integer(lambda.denom().clone()))
        - &LaurentPolynomial::monomial(plus, BigRational::from_integer(lambda.numer().clone()));
    CircuitDiscriminant { lambda, raw, cleared }
}

/// `Σ_{n=0}^{N} (−1)^{ρn} x^{n·b₊ − (n+1)·b₋}`, the expansion of `1/D` for a
/// balanced circuit.
pub fn balanced_series(c: &Circuit, order: u32) -> Result<LaurentPolynomial> {
    if !circuit_gkz_rational(c) {
        return Err(Error::Unbalanced);
    }
    let plus = Circuit::exps(&c.b_plus());
    let minus = Circuit::exps(&c.b_minus());
    let odd = c.rho.is_odd();
    let terms = (0..=i64::from(order)).map(|n| {
        let e: Vec<i64> = plus.iter().zip(&minus).map(|(p, m)| n * p - (n + 1) * m).collect();
        let sign = if odd && n % 2 == 1 { -1 } else { 1 };
        (e, BigRational::from_integer(BigInt::from(sign)))
    });
    Ok(LaurentPolynomial::from_terms(c.b.len(), terms))
}

/// Whether `∏_{b_i>0}∏_{j=1}^{b_i}(n·b_i + j) = ∏_{b_i<0}∏_{j=1}^{−b_i}(n·(−b_i) + j)`.
pub fn product_identity(c: &Circuit, n: u64) -> bool {
    let side = |v: &[BigInt]| -> BigInt {
        v.iter()
            .filter(|x| !x.is_zero())
            .map(|x| {
                let k = u64::try_from(x).expect("small entry");
                (1..=k).map(|j| x * n + j).product::<BigInt>()
            })
            .product()
    };
    side(&c.b_plus()) == side(&c.b_minus())
}

/// Coefficient of `x^{c + n·b}` in the canonical series:
/// `(−1)^{ρn} ∏_{b_j<0}(−c_j − n·b_j − 1)! / ∏_{b_j>0}(c_j + n·b_j)!`.
pub fn canonical_coefficient(circuit: &Circuit, offset: &[i64], n: u64) -> Result<BigRational> {
    if offset.len() != circuit.b.len() {
        return Err(Error::InvalidInput("offset length differs from circuit length".into()));
    }
    let nn = BigInt::from(n);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (j, (b, &c)) in circuit.b.iter().zip(offset).enumerate() {
        if b.is_zero() {
            continue;
        }
        let arg = if b.is_negative() { -BigInt::from(c) - &nn * b - 1 } else { BigInt::from(c) + &nn * b };
        if arg.is_negative() {
            return Err(Error::NegativeFactorial { column: j, n, value: arg.to_string() });
        }
        let f = factorial(u64::try_from(&arg).map_err(|_| Error::InvalidInput("factorial argument too large".into()))?);
        if b.is_negative() {
            num *= f;
        } else {
            den *= f;
        }
    }
    if circuit.rho.is_odd() && n % 2 == 1 {
        num = -num;
    }
    Ok(BigRational::new(num, den))
}

/// Zeros and poles of `μ(z) = γ(z+1)/γ(z)` for the canonical coefficient
/// `γ`, summed per class of `z₀ + Z` (classes keyed by the fractional part).
pub fn ratio_divisor_by_class(circuit: &Circuit, offset: &[i64]) -> BTreeMap<BigRational, i64> {
    let mut out: BTreeMap<BigRational, i64> = BTreeMap::new();
    let mut bump = |z: BigRational, k: i64| {
        let class = &z - z.floor();
        *out.entry(class).or_insert(0) += k;
    };
    for (b, &c) in circuit.b.iter().zip(offset) {
        let c = BigInt::from(c);
        if b.is_negative() {
            let beta = -b;
            let count = u64::try_from(&beta).expect("small entry");
            for k in 0..count {
                bump(BigRational::new(&c - k, beta.clone()), 1);
            }
        } else if b.is_positive() {
            let count = u64::try_from(b).expect("small entry");
            for k in 1..=count {
                bump(BigRational::new(-(&c + k), b.clone()), -1);
            }
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// The identity "orders of μ summed over each class `z₀ + Z` vanish".
pub fn ord_sum_identity_holds(circuit: &Circuit, offset: &[i64]) -> bool {
    ratio_divisor_by_class(circuit, offset).is_empty()
}

/// The standard offset `c` with `c_j = 0` where `b_j > 0` and `c_j = −1`
/// where `b_j < 0`.
pub fn standard_offset(circuit: &Circuit) -> Vec<i64> {
    circuit.b.iter().map(|x| if x.is_negative() { -1 } else { 0 }).collect()
}

/// A configuration whose integer kernel is spanned by `b`.
pub fn circuit_configuration(b: &[i64]) -> Result<Configuration> {
    let row = crate::exactalg::IntMatrix::from_rows(&[b.to_vec()]);
    let basis = crate::exactalg::integer_kernel(&row);
    let m = crate::exactalg::IntMatrix::from_bigint_rows(basis, b.len())?;
    Configuration::new(m)
}
