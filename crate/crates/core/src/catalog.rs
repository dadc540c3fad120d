//! Named configurations: the classical examples and parametric families.
//!
//! Column orders are fixed here and used consistently by tests, fixtures and
//! the CLI.

use crate::error::Result;
use crate::polytope::Configuration;

fn build(rows: &[Vec<i64>]) -> Configuration {
    Configuration::from_rows(rows).expect("catalog configuration is valid")
}

/// The unit square `{0,1}²` in the column order whose kernel is `(1,1,−1,−1)`.
pub fn gauss_square() -> Configuration {
    build(&[vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![0, 1, 1, 0]])
}

/// The rational normal scroll: Cayley of two copies of `{0,1,2}`.
pub fn scroll() -> Configuration {
    build(&[vec![1, 1, 1, 0, 0, 0], vec![0, 0, 0, 1, 1, 1], vec![0, 1, 2, 0, 1, 2]])
}

/// All lattice points of `2·Δ₂` (the Veronese surface).
pub fn veronese() -> Configuration {
    build(&[vec![2, 1, 0, 1, 0, 0], vec![0, 1, 2, 0, 1, 0], vec![0, 0, 0, 1, 1, 2]])
}

/// The planar wedge with points `0, p·e₁, q·e₁, p·e₂, q·e₂`.
pub fn wedge(p: i64, q: i64) -> Configuration {
    build(&wedge_rows(p, q))
}

fn wedge_rows(p: i64, q: i64) -> Vec<Vec<i64>> {
    vec![vec![1, 1, 1, 1, 1], vec![0, p, q, 0, 0], vec![0, 0, 0, p, q]]
}

/// The origin together with `q·e_i` and `−p·e_i` on the three axes.
pub fn seven_points(p: i64, q: i64) -> Configuration {
    build(&seven_rows(p, q))
}

fn seven_rows(p: i64, q: i64) -> Vec<Vec<i64>> {
    vec![vec![1, 1, 1, 1, 1, 1, 1], vec![0, q, -p, 0, 0, 0, 0], vec![0, 0, 0, q, -p, 0, 0], vec![0, 0, 0, 0, 0, q, -p]]
}

/// `q·e_i` and `−p·e_i` on the three axes: an octahedron for `p > 0`, a
/// triangular prism shape for `p < 0`.
pub fn six_points(p: i64, q: i64) -> Configuration {
    build(&six_rows(p, q))
}

fn six_rows(p: i64, q: i64) -> Vec<Vec<i64>> {
    vec![vec![1, 1, 1, 1, 1, 1], vec![q, -p, 0, 0, 0, 0], vec![0, 0, q, -p, 0, 0], vec![0, 0, 0, 0, q, -p]]
}

/// The standard simplex `Δ_q` (identity matrix of size `q + 1`).
pub fn unimodular_simplex(q: usize) -> Configuration {
    let n = q + 1;
    build(&(0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect::<Vec<_>>())
}

/// Points of `m·Δ_r` as exponent vectors `(k₁,…,k_r)` with `Σk ≤ m`, graded by
/// degree and lexicographically decreasing within a degree (so for `r = 1`
/// the order is `0, 1, …, m`).
pub fn dilated_simplex_points(r: usize, m: u32) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for deg in 0..=i64::from(m) {
        let mut level = Vec::new();
        compositions(r, deg, &mut vec![], &mut level);
        level.sort_by(|a, b| b.cmp(a));
        out.extend(level);
    }
    out
}

fn compositions(parts: usize, total: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if parts == 0 {
        if total == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    for k in 0..=total {
        prefix.push(k);
        compositions(parts - 1, total - k, prefix, out);
        prefix.pop();
    }
}

/// All lattice points of `r·Δ_q` in dilation coordinates (`q + 1` nonnegative
/// entries summing to `r`), lexicographically decreasing.
pub fn simplex_multiple(r: u32, q: usize) -> Configuration {
    let mut pts = Vec::new();
    compositions(q + 1, i64::from(r), &mut vec![], &mut pts);
    pts.sort_by(|a, b| b.cmp(a));
    build(&(0..=q).map(|i| pts.iter().map(|p| p[i]).collect()).collect::<Vec<_>>())
}

/// The Cayley configuration of factors given as point lists in `Z^n`: one
/// indicator row per factor followed by the `n` coordinate rows, columns
/// grouped by factor.
pub fn cayley_of(factors: &[Vec<Vec<i64>>]) -> Result<Configuration> {
    let n = factors.iter().flatten().map(Vec::len).next().unwrap_or(0);
    let mut rows: Vec<Vec<i64>> = vec![Vec::new(); factors.len() + n];
    for (i, pts) in factors.iter().enumerate() {
        for p in pts {
            for (k, row) in rows.iter_mut().enumerate().take(factors.len()) {
                row.push(i64::from(k == i));
            }
            for (c, &x) in p.iter().enumerate() {
                rows[factors.len() + c].push(x);
            }
        }
    }
    Configuration::from_rows(&rows)
}

/// `Δ_p × Δ_q`, built as the Cayley configuration of `p + 1` copies of `Δ_q`;
/// column `(i, j)` sits at index `i·(q+1) + j`.
pub fn product_of_simplices(p: usize, q: usize) -> Configuration {
    let simplex: Vec<Vec<i64>> = (0..=q).map(|j| (1..=q).map(|k| i64::from(k == j)).collect()).collect();
    cayley_of(&vec![simplex; p + 1]).expect("product of simplices is valid")
}

/// Cayley configuration of `r + 1` copies of `m·Δ_r`, the configuration
/// carrying the toric residues of dense forms of degree `m`.
pub fn residue_cayley(r: usize, m: u32) -> Configuration {
    cayley_of(&vec![dilated_simplex_points(r, m); r + 1]).expect("dilated simplices give a valid Cayley configuration")
}

/// Cayley configuration of the segments `{0,1}` and `{0,2}`.
pub fn cayley_segments() -> Configuration {
    cayley_of(&[vec![vec![0], vec![1]], vec![vec![0], vec![2]]]).expect("valid")
}

/// A configuration by name, e.g. `square`, `scroll`, `wedge:1:2`,
/// `product:2:2`, `multiple:2:3`.
pub fn by_name(name: &str) -> Option<Configuration> {
    let parts: Vec<&str> = name.split(':').collect();
    let int = |k: usize| parts.get(k).and_then(|x| x.parse::<i64>().ok());
    let nat = |k: usize| parts.get(k).and_then(|x| x.parse::<usize>().ok());
    match parts[0] {
        "square" => Some(gauss_square()),
        "scroll" => Some(scroll()),
        "veronese" => Some(veronese()),
        "cayley-segments" => Some(cayley_segments()),
        "wedge" => Configuration::from_rows(&wedge_rows(int(1)?, int(2)?)).ok(),
        "seven" => Configuration::from_rows(&seven_rows(int(1)?, int(2)?)).ok(),
        "six" => Configuration::from_rows(&six_rows(int(1)?, int(2)?)).ok(),
        "simplex" => Some(unimodular_simplex(nat(1)?)),
        "product" => Some(product_of_simplices(nat(1)?, nat(2)?)),
        "multiple" => Some(simplex_multiple(u32::try_from(nat(1)?).ok()?, nat(2)?)),
        _ => None,
    }
}
