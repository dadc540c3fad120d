//! Symbolic residues for the Cayley configuration of two copies of a segment
//! `[0, m]`: the functions `x ↦ Res(t^a)` are recovered by interpolation and
//! then certified as A-hypergeometric.
//!
//! The denominator is known in advance (the Sylvester resultant `R` of the two
//! forms), and the numerator `N_a = R·Res(t^a)` is a polynomial of degree
//! `m − 1` in each group of coefficients whose torus weight `Σ k·u_k` equals
//! `m² − a`. Solving for the coefficients of `N_a` over those monomials from
//! exact sample values is plain linear algebra.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::CayleyStructure;
use crate::error::{Error, Result};
use crate::exactalg::matrix::rational::rref;
use crate::exactalg::{LaurentPolynomial, RationalFunction};
use crate::polytope::Configuration;
use crate::weyl::verify_hypergeometric;

use super::groebner::DEFAULT_STEP_BUDGET;
use super::resultant::sylvester_resultant;
use super::toric::{toric_residue, ResidueProblem};

/// Largest segment length handled.
pub const MAX_SEGMENT: u32 = 3;

/// Extra samples used to confirm an interpolated numerator.
const CHECK_SAMPLES: usize = 4;

/// One symbolic residue with its certified degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidueWitness {
    pub exponent: i64,
    #[serde(serialize_with = "crate::json::ser_display")]
    pub function: RationalFunction,
    #[serde(serialize_with = "crate::json::ser_rationals")]
    pub beta: Vec<BigRational>,
}

/// Column index of the point `k` of each factor.
fn segment_columns(cs: &CayleyStructure) -> Result<(u32, [Vec<usize>; 2])> {
    let shape = || Error::InvalidInput("residue witnesses need two copies of a full segment [0, m]".into());
    if cs.r != 1 || cs.dim != 1 {
        return Err(shape());
    }
    let mut out: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    let mut length = None;
    // orient the line so that the first column of the first group is k = 0
    let first: Vec<&BigInt> = cs.factors[0].iter().map(|p| &p[0]).collect();
    let flip = first.iter().all(|c| *c <= first[0]) && first.iter().any(|c| *c < first[0]);
    for (i, group) in cs.groups.iter().enumerate() {
        let coords: Vec<BigInt> =
            cs.factors[i].iter().map(|p| if flip { -p[0].clone() } else { p[0].clone() }).collect();
        let lo = coords.iter().min().expect("nonempty factor").clone();
        let m = group.len() - 1;
        let mut slots = vec![None; m + 1];
        for (&col, c) in group.iter().zip(&coords) {
            let k: usize = usize::try_from(c - &lo).map_err(|_| shape())?;
            if k > m || slots[k].is_some() {
                return Err(shape());
            }
            slots[k] = Some(col);
        }
        out[i] = slots.into_iter().map(|s| s.ok_or_else(shape)).collect::<Result<Vec<_>>>()?;
        match length {
            None => length = Some(m),
            Some(l) if l == m => {}
            Some(_) => return Err(shape()),
        }
    }
    let m = u32::try_from(length.expect("two groups")).map_err(|_| shape())?;
    if m == 0 || m > MAX_SEGMENT {
        return Err(Error::InvalidInput(format!("segment length must be between 1 and {MAX_SEGMENT}")));
    }
    Ok((m, out))
}

/// Monomials in the `s` column variables with degree `m − 1` in each group
/// and torus weight `weight`.
fn numerator_monomials(columns: &[Vec<usize>; 2], s: usize, m: u32, weight: i64) -> Vec<Vec<i64>> {
    let per_group: Vec<Vec<Vec<i64>>> = columns
        .iter()
        .map(|cols| {
            let mut acc = Vec::new();
            let mut cur = vec![0i64; cols.len()];
            fill(&mut cur, 0, i64::from(m) - 1, &mut acc);
            acc
        })
        .collect();
    let mut out = Vec::new();
    for e0 in &per_group[0] {
        for e1 in &per_group[1] {
            let w: i64 = e0.iter().enumerate().map(|(k, x)| k as i64 * x).sum::<i64>()
                + e1.iter().enumerate().map(|(k, x)| k as i64 * x).sum::<i64>();
            if w != weight {
                continue;
            }
            let mut e = vec![0i64; s];
            for (k, &x) in e0.iter().enumerate() {
                e[columns[0][k]] = x;
            }
            for (k, &x) in e1.iter().enumerate() {
                e[columns[1][k]] = x;
            }
            out.push(e);
        }
    }
    out.sort();
    out
}

fn fill(cur: &mut Vec<i64>, k: usize, left: i64, out: &mut Vec<Vec<i64>>) {
    if k + 1 == cur.len() {
        cur[k] = left;
        out.push(cur.clone());
        return;
    }
    for x in 0..=left {
        cur[k] = x;
        fill(cur, k + 1, left - x, out);
    }
    cur[k] = 0;
}

fn monomial_value(e: &[i64], x: &[BigRational]) -> BigRational {
    e.iter()
        .zip(x)
        .filter(|(&k, _)| k != 0)
        .fold(BigRational::one(), |acc, (&k, v)| acc * num_traits::pow(v.clone(), k as usize))
}

struct Sample {
    point: Vec<BigRational>,
    /// `R(x)·Res(t^a)(x)` for each interior `a`.
    values: Vec<BigRational>,
}

/// Computes and certifies `Res(t^a)` for every interior `a ∈ {1, …, 2m−1}`.
/// The sampling stream is seeded by `seed`, so the output is reproducible.
pub fn residue_witness(a: &Configuration, cs: &CayleyStructure, seed: u64) -> Result<Vec<ResidueWitness>> {
    let (m, columns) = segment_columns(cs)?;
    let s = a.s();
    let coeff_vars = |i: usize| -> Vec<LaurentPolynomial> {
        columns[i].iter().map(|&j| LaurentPolynomial::variable(s, j)).collect()
    };
    let resultant = sylvester_resultant(&coeff_vars(0), &coeff_vars(1), s)?;
    let exponents: Vec<i64> = (1..2 * i64::from(m)).collect();
    let bases: Vec<Vec<Vec<i64>>> =
        exponents.iter().map(|&e| numerator_monomials(&columns, s, m, i64::from(m * m) - e)).collect();
    let needed = bases.iter().map(Vec::len).max().unwrap_or(0) + CHECK_SAMPLES;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates = Vec::new();
    while candidates.len() < 4 * needed + 16 {
        let point: Vec<BigRational> =
            (0..s).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-9i64..=9)))).collect();
        candidates.push(point);
    }
    let evaluated: Vec<Option<Sample>> = candidates
        .par_iter()
        .map(|point| {
            let r = resultant.evaluate(point).ok()?;
            if r.is_zero() {
                return None;
            }
            let coeffs: Vec<Vec<BigRational>> =
                columns.iter().map(|cols| cols.iter().map(|&j| point[j].clone()).collect()).collect();
            let values = exponents
                .iter()
                .map(|&e| {
                    let prob = ResidueProblem::new(1, m, coeffs.clone(), vec![e]).ok()?;
                    toric_residue(&prob).ok().map(|v| v * &r)
                })
                .collect::<Option<Vec<_>>>()?;
            Some(Sample { point: point.clone(), values })
        })
        .collect();
    let samples: Vec<Sample> = evaluated.into_iter().flatten().take(needed).collect();
    if samples.len() < needed {
        return Err(Error::Interpolation("too few nondegenerate sample points".into()));
    }

    let mut out = Vec::new();
    for (idx, &e) in exponents.iter().enumerate() {
        let basis = &bases[idx];
        let numerator = interpolate(basis, &samples, idx, s)?;
        let f = RationalFunction::new(numerator, vec![(resultant.clone(), 1)])?;
        if f.is_zero() {
            continue;
        }
        let v = verify_hypergeometric(a, &f, DEFAULT_STEP_BUDGET)?;
        if !v.is_certified() {
            return Err(Error::CertificationFailed(format!("Res(t^{e}) = {f} failed: {:?}", v.counterexample)));
        }
        out.push(ResidueWitness { exponent: e, function: f, beta: v.beta.expect("certified functions have a degree") });
    }
    if out.is_empty() {
        return Err(Error::Interpolation("every residue vanished".into()));
    }
    Ok(out)
}

fn interpolate(basis: &[Vec<i64>], samples: &[Sample], idx: usize, s: usize) -> Result<LaurentPolynomial> {
    let n = basis.len();
    if n == 0 {
        let all_zero = samples.iter().all(|smp| smp.values[idx].is_zero());
        return if all_zero {
            Ok(LaurentPolynomial::zero(s))
        } else {
            Err(Error::Interpolation("no monomials of the required degree".into()))
        };
    }
    let fit = &samples[..samples.len() - CHECK_SAMPLES];
    let mut rows: Vec<Vec<BigRational>> = fit
        .iter()
        .map(|smp| {
            let mut row: Vec<BigRational> = basis.iter().map(|e| monomial_value(e, &smp.point)).collect();
            row.push(smp.values[idx].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&n) {
        return Err(Error::Interpolation("sample values are inconsistent with the degree bound".into()));
    }
    if pivots.len() < n {
        return Err(Error::Interpolation("samples do not determine the numerator".into()));
    }
    let coeffs: Vec<BigRational> = (0..n).map(|k| rows[k][n].clone()).collect();
    let numerator = LaurentPolynomial::from_terms(s, basis.iter().cloned().zip(coeffs));
    for smp in &samples[samples.len() - CHECK_SAMPLES..] {
        if numerator.evaluate(&smp.point)? != smp.values[idx] {
            return Err(Error::Interpolation("interpolated numerator fails a check sample".into()));
        }
    }
    Ok(numerator)
}
