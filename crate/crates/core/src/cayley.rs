//! Cayley structure and the classifier.
//!
//! A configuration is a Cayley configuration when its columns split into
//! groups `G₀,…,G_r` whose indicator vectors lie in the rational row span.
//! After a unimodular change of coordinates it then reads
//! `{e₀}×A₀ ∪ … ∪ {e_r}×A_r` with factors `A_i ⊂ Z^n`. Detection enumerates
//! the qualifying subsets, searches partitions into them, and rebuilds the
//! factors from lattice coordinates on the difference space. A candidate is
//! kept only when the rebuilt matrix has the same integer kernel as `A`, which
//! is the sense of "isomorphic" used throughout the crate.
//!
//! [`classify`] runs the decision cascade: pyramid, essential Cayley, defective
//! Cayley, unbalanced spanning circuit, low dimension, and finally the
//! conjectural verdict.

use std::fmt;
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::circuits::{is_balanced, visit_circuits, Circuit};
use crate::error::{Error, Result};
use crate::exactalg::matrix::rational::{rref, to_rational};
use crate::exactalg::{hermite_normal_form, integer_kernel, lattice_coordinates, rank, IntMatrix};
use crate::polytope::{interior_points, is_pyramid, is_spanning, vertices, Configuration, SearchLimits};

/// A partition of the columns exhibiting `A` as a Cayley configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CayleyStructure {
    /// Number of groups minus one.
    pub r: usize,
    /// Dimension `n` of the common lattice the factors live in.
    pub dim: usize,
    /// Sorted column indices of each group, groups ordered by first element.
    pub groups: Vec<Vec<usize>>,
    /// First column of each group; it sits at the origin of its factor.
    pub base_points: Vec<usize>,
    /// The factor `A_i` as points of `Z^n`, in the column order of its group.
    #[serde(serialize_with = "crate::json::ser_point_sets")]
    pub factors: Vec<Vec<Vec<BigInt>>>,
    /// Lattice coordinates (`n × s`) of `a_j − a_base`, Hermite-reduced.
    #[serde(skip)]
    pub coordinates: IntMatrix,
}

impl CayleyStructure {
    /// The assembled matrix `{e_i} × A_i` in the original column order.
    pub fn assembled(&self) -> IntMatrix {
        let s = self.coordinates.cols();
        let mut rows = vec![vec![BigInt::zero(); s]; self.r + 1];
        for (i, g) in self.groups.iter().enumerate() {
            for &j in g {
                rows[i][j] = BigInt::one();
            }
        }
        rows.extend(self.coordinates.to_rows());
        IntMatrix::from_bigint_rows(rows, s).expect("consistent widths")
    }

    /// Builds the structure of an explicitly stacked Cayley configuration
    /// (columns grouped factor by factor, as in [`crate::catalog::cayley_of`]).
    pub fn from_factors(factors: &[Vec<Vec<i64>>]) -> Result<Self> {
        let a = crate::catalog::cayley_of(factors)?;
        let mut groups = Vec::new();
        let mut next = 0;
        for f in factors {
            if f.is_empty() {
                return Err(Error::InvalidInput("empty Cayley factor".into()));
            }
            groups.push((next..next + f.len()).collect());
            next += f.len();
        }
        build_structure(&a, groups).ok_or_else(|| Error::Internal("stacked factors failed the kernel test".into()))
    }
}

/// Column subsets whose indicator vector lies in the rational row span of
/// `A`, as bit masks, excluding the empty and the full set. The indicator is
/// determined by its values on a column basis, so the `2^d` 0/1 patterns on
/// that basis are tried.
pub fn qualifying_subsets(a: &Configuration, limits: SearchLimits) -> Result<Vec<u128>> {
    let d = a.d();
    let s = a.s();
    if d >= 64 || (1u64 << d) > limits.max_subsets {
        return Err(Error::SearchSpaceExceeded { limit: limits.max_subsets });
    }
    let mut m: Vec<Vec<BigRational>> = a.matrix().to_rows().iter().map(|r| to_rational(r)).collect();
    // a_j = Σ_k m[k][j]·a_{p_k} over the pivot columns p_k
    rref(&mut m);
    let coords: Vec<Vec<BigRational>> = (0..s).map(|j| (0..d).map(|k| m[k][j].clone()).collect()).collect();
    let full: u128 = if s == 128 { u128::MAX } else { (1u128 << s) - 1 };
    let mut out = Vec::new();
    for pattern in 1u64..(1u64 << d) {
        let mut mask = 0u128;
        let ok = coords.iter().enumerate().all(|(j, c)| {
            let v: BigRational = (0..d).filter(|&k| pattern >> k & 1 == 1).map(|k| &c[k]).sum();
            if v.is_one() {
                mask |= 1u128 << j;
                true
            } else {
                v.is_zero()
            }
        });
        if ok && mask != full && mask != 0 {
            out.push(mask);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn partitions(qualifying: &[u128], s: usize, limits: SearchLimits) -> Result<Vec<Vec<u128>>> {
    let full: u128 = if s == 128 { u128::MAX } else { (1u128 << s) - 1 };
    let mut out = Vec::new();
    let mut nodes = 0u64;
    let mut current = Vec::new();
    partition_walk(qualifying, full, 0, &mut current, &mut out, &mut nodes, limits.max_subsets)?;
    Ok(out)
}

fn partition_walk(
    qualifying: &[u128],
    full: u128,
    covered: u128,
    current: &mut Vec<u128>,
    out: &mut Vec<Vec<u128>>,
    nodes: &mut u64,
    budget: u64,
) -> Result<()> {
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::SearchSpaceExceeded { limit: budget });
    }
    if covered == full {
        out.push(current.clone());
        return Ok(());
    }
    let first = (!covered & full).trailing_zeros();
    for &q in qualifying {
        if q >> first & 1 == 1 && q & covered == 0 {
            current.push(q);
            partition_walk(qualifying, full, covered | q, current, out, nodes, budget)?;
            current.pop();
        }
    }
    Ok(())
}

fn build_structure(a: &Configuration, mut groups: Vec<Vec<usize>>) -> Option<CayleyStructure> {
    for g in &mut groups {
        g.sort_unstable();
    }
    groups.sort();
    let s = a.s();
    let d = a.d();
    let base_points: Vec<usize> = groups.iter().map(|g| g[0]).collect();
    let mut base_of = vec![0; s];
    for g in &groups {
        for &j in g {
            base_of[j] = g[0];
        }
    }
    let m = a.matrix();
    let mut diff = IntMatrix::zeros(d, s);
    for j in 0..s {
        for i in 0..d {
            diff[(i, j)] = &m[(i, j)] - &m[(i, base_of[j])];
        }
    }
    let raw = lattice_coordinates(&diff);
    let (h, _) = hermite_normal_form(&raw);
    let kept: Vec<Vec<BigInt>> = h.to_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    let dim = kept.len();
    let coordinates = IntMatrix::from_bigint_rows(kept, s).expect("consistent widths");
    let factors = groups.iter().map(|g| g.iter().map(|&j| coordinates.column(j)).collect()).collect();
    let cs = CayleyStructure { r: groups.len() - 1, dim, groups, base_points, factors, coordinates };
    (integer_kernel(&cs.assembled()) == integer_kernel(m)).then_some(cs)
}

/// All Cayley structures of `A` with at least two groups, largest `r` first
/// and then by partition.
pub fn detect_cayley(a: &Configuration, limits: SearchLimits) -> Result<Vec<CayleyStructure>> {
    let qualifying = qualifying_subsets(a, limits)?;
    let parts = partitions(&qualifying, a.s(), limits)?;
    let mut found: Vec<CayleyStructure> = parts
        .par_iter()
        .filter_map(|p| {
            let groups = p.iter().map(|&mask| (0..a.s()).filter(|&j| mask >> j & 1 == 1).collect()).collect();
            build_structure(a, groups)
        })
        .collect();
    found.sort_by(|x, y| y.r.cmp(&x.r).then_with(|| x.groups.cmp(&y.groups)));
    Ok(found)
}

/// The first nonempty proper index set `I ⊂ {0..r}` (by size, then
/// lexicographically) whose Minkowski sum `Σ_{i∈I} A_i` has dimension below
/// `|I|`, or `None` when the structure is essential.
pub fn essential_violation(cs: &CayleyStructure) -> Option<Vec<usize>> {
    let k = cs.r + 1;
    let mut sets: Vec<Vec<usize>> =
        (1u64..(1u64 << k) - 1).map(|mask| (0..k).filter(|&i| mask >> i & 1 == 1).collect()).collect();
    sets.sort_by(|x: &Vec<usize>, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    sets.into_iter().find(|set| {
        let mut rows = Vec::new();
        for &i in set {
            let f = &cs.factors[i];
            for p in &f[1..] {
                rows.push(p.iter().zip(&f[0]).map(|(x, y)| x - y).collect::<Vec<BigInt>>());
            }
        }
        let dim = if rows.is_empty() {
            0
        } else {
            rank(&IntMatrix::from_bigint_rows(rows, cs.dim).expect("consistent widths"))
        };
        dim < set.len()
    })
}

pub fn is_essential(cs: &CayleyStructure) -> bool {
    essential_violation(cs).is_none()
}

/// `Some((r, q))` when `A` is the full set of lattice points of `r·Δ_q`
/// (measured in the lattice spanned by the differences of columns).
pub fn detect_simplex_multiple(a: &Configuration) -> Option<(u32, usize)> {
    let d = a.d();
    let verts = vertices(a);
    if d < 2 || verts.len() != d {
        return None;
    }
    let q = d - 1;
    let s = a.s();
    let m = a.matrix();
    let v0 = verts[0];
    let mut diff = IntMatrix::zeros(d, s);
    for j in 0..s {
        for i in 0..d {
            diff[(i, j)] = &m[(i, j)] - &m[(i, v0)];
        }
    }
    let coords = lattice_coordinates(&diff);
    let edges = coords.select_columns(&verts[1..]);
    let lengths: Vec<BigInt> = (0..q).map(|k| edges.column(k).iter().fold(BigInt::zero(), |g, x| g.gcd(x))).collect();
    let r = lengths[0].clone();
    if lengths.iter().any(|l| *l != r) || edges.determinant().abs() != num_traits::pow(r.clone(), q) {
        return None;
    }
    let r = r.to_u32()?;
    // number of lattice points of r·Δ_q is C(q + r, q)
    let count = (1..=q as u64).fold(BigInt::one(), |acc, k| acc * (u64::from(r) + k) / k);
    (count == BigInt::from(s)).then_some((r, q))
}

/// The verdict on gkz-rationality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Rational,
    NotRational,
    ConjecturallyNotRational,
    Degenerate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Verdict::Rational => "Rational",
            Verdict::NotRational => "NotRational",
            Verdict::ConjecturallyNotRational => "ConjecturallyNotRational",
            Verdict::Degenerate => "Degenerate",
        };
        f.write_str(text)
    }
}

/// The step of the cascade that decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Rule {
    Pyramid,
    EssentialCayley,
    DefectiveCayley,
    UnbalancedSpanningCircuit,
    LowDimension,
    Conjectural,
}

impl Rule {
    pub fn description(self) -> &'static str {
        match self {
            Rule::Pyramid => "pyramid: the discriminant is 1",
            Rule::EssentialCayley => "essential Cayley configurations are gkz-rational",
            Rule::DefectiveCayley => "Cayley configuration with more factors than dimensions: the discriminant is 1",
            Rule::UnbalancedSpanningCircuit => "an unbalanced spanning circuit rules out gkz-rationality",
            Rule::LowDimension => "d ≤ 4: only essential Cayley configurations are gkz-rational",
            Rule::Conjectural => "not an essential Cayley configuration: conjecturally not gkz-rational",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.description())
    }
}

/// The evidence attached to a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Apex { column: usize },
    Cayley(CayleyStructure),
    Circuit(Circuit),
    Dimension { d: usize },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub rule: Rule,
    pub witness: Witness,
    pub notes: Vec<String>,
}

impl Classification {
    fn new(verdict: Verdict, rule: Rule, witness: Witness) -> Self {
        Self { verdict, rule, witness, notes: Vec::new() }
    }
}

/// Searches for an unbalanced circuit whose support lies in no proper face.
/// `Ok(None)` means the search was exhaustive; a budget overrun is an error.
pub fn unbalanced_spanning_circuit(a: &Configuration, limits: SearchLimits) -> Result<Option<Circuit>> {
    let mut found = None;
    let mut failure = None;
    visit_circuits(a, limits, |c| {
        if is_balanced(&c).is_balanced() {
            return ControlFlow::Continue(());
        }
        match is_spanning(a, &c.support) {
            Ok(true) => {
                found = Some(c);
                ControlFlow::Break(())
            }
            Ok(false) => ControlFlow::Continue(()),
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

/// Runs the classification cascade.
pub fn classify(a: &Configuration, limits: SearchLimits) -> Result<Classification> {
    if let Some(column) = is_pyramid(a) {
        return Ok(Classification::new(Verdict::Degenerate, Rule::Pyramid, Witness::Apex { column }));
    }

    let structures = detect_cayley(a, limits)?;
    if let Some(cs) = structures.iter().find(|cs| cs.dim == cs.r && is_essential(cs)) {
        return Ok(Classification::new(Verdict::Rational, Rule::EssentialCayley, Witness::Cayley(cs.clone())));
    }
    if let Some(cs) = structures.iter().find(|cs| cs.dim < cs.r) {
        return Ok(Classification::new(Verdict::Degenerate, Rule::DefectiveCayley, Witness::Cayley(cs.clone())));
    }

    let mut notes = Vec::new();
    match unbalanced_spanning_circuit(a, limits) {
        Ok(Some(c)) => {
            return Ok(Classification::new(Verdict::NotRational, Rule::UnbalancedSpanningCircuit, Witness::Circuit(c)));
        }
        Ok(None) => {}
        Err(Error::SearchSpaceExceeded { limit }) => {
            notes.push(format!("circuit search stopped after {limit} nodes without an unbalanced spanning circuit"));
        }
        Err(e) => return Err(e),
    }

    if a.d() <= 4 {
        let mut c = Classification::new(Verdict::NotRational, Rule::LowDimension, Witness::Dimension { d: a.d() });
        c.notes = notes;
        return Ok(c);
    }

    let kernel = integer_kernel(a.matrix());
    if kernel.len() == 1 && kernel[0].iter().all(|x| !x.is_zero()) {
        return Err(Error::Internal("a circuit configuration reached the conjectural step".into()));
    }

    if let Some((r, q)) = detect_simplex_multiple(a) {
        if r >= 2 {
            notes.push(format!("A is {r}·Δ_{q}; multiples of simplices are never gkz-rational"));
        }
    }
    if !interior_points(a).is_empty() {
        notes.push("A has interior points, which gkz-rational configurations never have".into());
    }
    let mut c = Classification::new(Verdict::ConjecturallyNotRational, Rule::Conjectural, Witness::None);
    c.notes = notes;
    Ok(c)
}
