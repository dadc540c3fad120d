//! Buchberger's algorithm over the rationals.
//!
//! Polynomials keep their terms sorted by a runtime monomial order, largest
//! first. Every reduction step (one cancellation of a term) is charged to a
//! step budget so that runaway computations stop with an error.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::LaurentPolynomial;

/// Default budget of reduction steps.
pub const DEFAULT_STEP_BUDGET: u64 = 1_000_000;

/// A monomial order on exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    GRevLex,
    /// The first `block` variables are compared first (by degree reverse
    /// lexicographic order), then the rest; eliminates the first block.
    Elimination {
        block: usize,
    },
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| u64::from(x)).sum();
    let db: u64 = b.iter().map(|&x| u64::from(x)).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn compare(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrLex => {
                let da: u64 = a.iter().map(|&x| u64::from(x)).sum();
                let db: u64 = b.iter().map(|&x| u64::from(x)).sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            MonomialOrder::GRevLex => grevlex(a, b),
            MonomialOrder::Elimination { block } => {
                let k = block.min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }
}

/// A polynomial with nonnegative exponents whose terms are sorted by a
/// monomial order, leading term first.
#[derive(Clone, PartialEq, Eq)]
pub struct OrderedPolynomial {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Vec<u32>, BigRational)>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

fn quotient(b: &[u32], a: &[u32]) -> Vec<u32> {
    b.iter().zip(a).map(|(y, x)| y - x).collect()
}

impl OrderedPolynomial {
    pub fn zero(nvars: usize, order: MonomialOrder) -> Self {
        Self { nvars, order, terms: Vec::new() }
    }

    pub fn from_terms(
        nvars: usize,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>,
    ) -> Self {
        let mut collected: Vec<(Vec<u32>, BigRational)> = Vec::new();
        let mut raw: Vec<(Vec<u32>, BigRational)> = terms.into_iter().collect();
        for (e, _) in &raw {
            assert_eq!(e.len(), nvars, "exponent length must equal the number of variables");
        }
        raw.sort_by(|x, y| order.compare(&y.0, &x.0));
        for (e, c) in raw {
            match collected.last_mut() {
                Some((last, acc)) if *last == e => *acc += c,
                _ => collected.push((e, c)),
            }
        }
        collected.retain(|(_, c)| !c.is_zero());
        Self { nvars, order, terms: collected }
    }

    pub fn monomial(exponent: Vec<u32>, c: BigRational, order: MonomialOrder) -> Self {
        let n = exponent.len();
        Self::from_terms(n, order, [(exponent, c)])
    }

    /// Converts a Laurent polynomial with nonnegative exponents.
    pub fn from_laurent(p: &LaurentPolynomial, order: MonomialOrder) -> Result<Self> {
        let mut terms = Vec::with_capacity(p.len());
        for (e, c) in p.terms() {
            let e = e
                .iter()
                .map(|&x| u32::try_from(x).map_err(|_| Error::InvalidInput("negative exponent".into())))
                .collect::<Result<Vec<u32>>>()?;
            terms.push((e, c.clone()));
        }
        Ok(Self::from_terms(p.nvars(), order, terms))
    }

    pub fn to_laurent(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| (e.iter().map(|&x| i64::from(x)).collect(), c.clone())),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// The same polynomial sorted by another order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Self::from_terms(self.nvars, order, self.terms.iter().cloned())
    }

    pub fn terms(&self) -> &[(Vec<u32>, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_monomial(&self) -> Option<&[u32]> {
        self.terms.first().map(|(e, _)| e.as_slice())
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => {
                let inv = lc.recip();
                Self { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * &inv)).collect(), ..self.clone() }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.iter().map(|(e, _)| e.iter().map(|&x| u64::from(x)).sum::<u64>());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    /// `self − c·x^shift·g`.
    fn sub_scaled(&self, c: &BigRational, shift: &[u32], g: &Self) -> Self {
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut left = self.terms.iter().peekable();
        let mut right = g
            .terms
            .iter()
            .map(|(e, x)| (e.iter().zip(shift).map(|(a, b)| a + b).collect::<Vec<u32>>(), -(x * c)))
            .peekable();
        loop {
            let step = match (left.peek(), right.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(l), Some(r)) => order.compare(&l.0, &r.0),
            };
            match step {
                Ordering::Greater => out.push(left.next().expect("peeked").clone()),
                Ordering::Less => out.push(right.next().expect("peeked")),
                Ordering::Equal => {
                    let (e, a) = left.next().expect("peeked");
                    let (_, b) = right.next().expect("peeked");
                    let sum = a + b;
                    if !sum.is_zero() {
                        out.push((e.clone(), sum));
                    }
                }
            }
        }
        Self { nvars: self.nvars, order, terms: out }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let terms = self.terms.iter().flat_map(|(e, c)| {
            other.terms.iter().map(move |(f, d)| (e.iter().zip(f).map(|(x, y)| x + y).collect(), c * d))
        });
        Self::from_terms(self.nvars, self.order, terms.collect::<Vec<_>>())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.sub_scaled(&-BigRational::one(), &vec![0; self.nvars], other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.sub_scaled(&BigRational::one(), &vec![0; self.nvars], other)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.order);
        }
        Self { terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(), ..self.clone() }
    }
}

impl fmt::Display for OrderedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let negative = *c < BigRational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(j, &x)| if x == 1 { format!("u{j}") } else { format!("u{j}^{x}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OrderedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A reduced Gröbner basis: monic generators sorted by leading monomial,
/// largest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub generators: Vec<OrderedPolynomial>,
    pub order: MonomialOrder,
}

struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    fn charge(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::BudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

fn reduce(p: &OrderedPolynomial, basis: &[OrderedPolynomial], budget: &mut Budget) -> Result<OrderedPolynomial> {
    let mut f = p.clone();
    let mut rest = Vec::new();
    while let Some((lm, lc)) = f.terms.first().cloned() {
        let divisor = basis.iter().find(|g| g.leading_monomial().is_some_and(|m| divides(m, &lm)));
        match divisor {
            Some(g) => {
                budget.charge()?;
                let c = &lc / g.leading_coefficient().expect("nonzero generator");
                let shift = quotient(&lm, g.leading_monomial().expect("nonzero generator"));
                f = f.sub_scaled(&c, &shift, g);
            }
            None => {
                rest.push(f.terms.remove(0));
            }
        }
    }
    Ok(OrderedPolynomial { nvars: p.nvars, order: p.order, terms: rest })
}

fn s_polynomial(f: &OrderedPolynomial, g: &OrderedPolynomial) -> OrderedPolynomial {
    let (fm, gm) = (f.leading_monomial().expect("nonzero"), g.leading_monomial().expect("nonzero"));
    let l = lcm(fm, gm);
    let cf = f.leading_coefficient().expect("nonzero").recip();
    let cg = g.leading_coefficient().expect("nonzero").recip();
    let scaled = OrderedPolynomial::zero(f.nvars, f.order).sub_scaled(&-cf, &quotient(&l, fm), f);
    scaled.sub_scaled(&cg, &quotient(&l, gm), g)
}

/// Computes the reduced Gröbner basis of the ideal generated by `polys`.
pub fn buchberger(polys: &[OrderedPolynomial], order: MonomialOrder, budget: u64) -> Result<GroebnerBasis> {
    let mut budget = Budget { limit: budget, used: 0 };
    let mut basis: Vec<OrderedPolynomial> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    for p in polys {
        let p = p.with_order(order);
        let r = reduce(&p, &basis, &mut budget)?;
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.monic());
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&x, &y| {
                let lx = pair_lcm(&basis, pairs[x]);
                let ly = pair_lcm(&basis, pairs[y]);
                order.compare(&lx, &ly).then_with(|| pairs[x].cmp(&pairs[y]))
            })
            .expect("nonempty");
        let (i, j) = pairs.swap_remove(best);
        done.insert((i, j));
        let (fi, fj) = (&basis[i], &basis[j]);
        let (mi, mj) = (fi.leading_monomial().expect("nonzero"), fj.leading_monomial().expect("nonzero"));
        if mi.iter().zip(mj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let l = lcm(mi, mj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].leading_monomial().expect("nonzero"), &l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        budget.charge()?;
        let s = s_polynomial(fi, fj);
        let r = reduce(&s, &basis, &mut budget)?;
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.monic());
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    interreduce(basis, order, &mut budget)
}

fn pair_lcm(basis: &[OrderedPolynomial], (i, j): (usize, usize)) -> Vec<u32> {
    lcm(basis[i].leading_monomial().expect("nonzero"), basis[j].leading_monomial().expect("nonzero"))
}

fn interreduce(basis: Vec<OrderedPolynomial>, order: MonomialOrder, budget: &mut Budget) -> Result<GroebnerBasis> {
    let mut minimal: Vec<OrderedPolynomial> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let m = g.leading_monomial().expect("nonzero");
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let hm = h.leading_monomial().expect("nonzero");
            l != k && divides(hm, m) && (hm != m || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<OrderedPolynomial> =
            minimal.iter().enumerate().filter(|&(l, _)| l != k).map(|(_, g)| g.clone()).collect();
        reduced.push(reduce(&minimal[k], &others, budget)?.monic());
    }
    reduced
        .sort_by(|x, y| order.compare(y.leading_monomial().expect("nonzero"), x.leading_monomial().expect("nonzero")));
    Ok(GroebnerBasis { generators: reduced, order })
}

impl GroebnerBasis {
    /// The unique remainder of `p` modulo the basis.
    pub fn normal_form(&self, p: &OrderedPolynomial) -> OrderedPolynomial {
        let mut unlimited = Budget { limit: u64::MAX, used: 0 };
        reduce(&p.with_order(self.order), &self.generators, &mut unlimited).expect("unbounded reduction")
    }

    pub fn contains_one(&self) -> bool {
        self.generators.iter().any(|g| g.leading_monomial().is_some_and(|m| m.iter().all(|&x| x == 0)))
    }

    /// True when some leading monomial is a pure power of variable `j`.
    pub fn has_pure_power(&self, j: usize) -> bool {
        self.generators.iter().any(|g| {
            g.leading_monomial().is_some_and(|m| m[j] > 0 && m.iter().enumerate().all(|(k, &x)| k == j || x == 0))
        })
    }

    /// Monomials of the given total degree not divisible by any leading
    /// monomial.
    pub fn standard_monomials_of_degree(&self, nvars: usize, degree: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut current = vec![0u32; nvars];
        fill_degree(nvars, 0, degree, &mut current, &mut out);
        out.retain(|e| !self.generators.iter().any(|g| g.leading_monomial().is_some_and(|m| divides(m, e))));
        out.sort_by(|x, y| self.order.compare(y, x));
        out
    }
}

fn fill_degree(nvars: usize, k: usize, left: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if k + 1 == nvars {
        current[k] = left;
        out.push(current.clone());
        current[k] = 0;
        return;
    }
    if nvars == 0 {
        return;
    }
    for x in 0..=left {
        current[k] = x;
        fill_degree(nvars, k + 1, left - x, current, out);
    }
    current[k] = 0;
}

/// Convenience: `NF(p)` against a basis.
pub fn normal_form(p: &OrderedPolynomial, basis: &GroebnerBasis) -> OrderedPolynomial {
    basis.normal_form(p)
}

/// An integer-coefficient polynomial from `(exponent, coefficient)` pairs.
pub fn polynomial(order: MonomialOrder, terms: &[(&[u32], i64)]) -> OrderedPolynomial {
    let n = terms.first().map_or(0, |(e, _)| e.len());
    OrderedPolynomial::from_terms(
        n,
        order,
        terms.iter().map(|(e, c)| (e.to_vec(), BigRational::from_integer(BigInt::from(*c)))),
    )
}
