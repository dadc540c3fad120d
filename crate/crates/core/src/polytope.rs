//! Point configurations and the convex geometry of their hulls.
//!
//! A [`Configuration`] is read in homogenized form: because the all-ones
//! vector lies in the row span, every column sits on a common affine
//! hyperplane and faces of `conv(A)` correspond to faces of the cone over the
//! columns. Faces are found by brute force over hyperplanes spanned by `d − 1`
//! columns and then closed under intersection.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{rank, row_span_contains, smith_normal_form, IntMatrix};

/// Maximum number of columns (faces are stored as 128-bit masks).
pub const MAX_COLUMNS: usize = 128;

/// Limits on the exponential searches (circuits, Cayley partitions).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Upper bound on subsets or search-tree nodes examined by any one search.
    pub max_subsets: u64,
}

impl Default for SearchLimits {
    fn default() -> Self {
        Self { max_subsets: 1 << 20 }
    }
}

/// A validated `d × s` integer configuration.
#[derive(Clone)]
pub struct Configuration {
    matrix: IntMatrix,
    lattice: OnceLock<Lattice>,
}

#[derive(Clone, Debug)]
struct Lattice {
    facets: Vec<Face>,
    faces: Vec<Face>,
}

impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for Configuration {}

impl std::fmt::Debug for Configuration {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Configuration").field("matrix", &self.matrix).finish()
    }
}

impl Configuration {
    /// Validates rank, distinct columns and the all-ones row-span condition.
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        let (d, s) = (matrix.rows(), matrix.cols());
        if d == 0 || s == 0 {
            return Err(Error::InvalidConfiguration("matrix must be nonempty".into()));
        }
        if s > MAX_COLUMNS {
            return Err(Error::InvalidConfiguration(format!("at most {MAX_COLUMNS} columns are supported")));
        }
        let r = rank(&matrix);
        if r != d {
            return Err(Error::InvalidConfiguration(format!("rank {r} differs from row count {d}")));
        }
        let mut seen = BTreeMap::new();
        for j in 0..s {
            if let Some(i) = seen.insert(matrix.column(j), j) {
                return Err(Error::InvalidConfiguration(format!("columns {} and {} coincide", i + 1, j + 1)));
            }
        }
        if !row_span_contains(&matrix, &vec![BigRational::one(); s]) {
            return Err(Error::InvalidConfiguration("(1,...,1) is not in the row span".into()));
        }
        Ok(Self { matrix, lattice: OnceLock::new() })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(Error::InvalidConfiguration("rows must be nonempty and of equal length".into()));
        }
        Self::new(IntMatrix::from_rows(rows))
    }

    pub fn d(&self) -> usize {
        self.matrix.rows()
    }

    pub fn s(&self) -> usize {
        self.matrix.cols()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.matrix.column(j)
    }

    /// The subconfiguration on the given columns (in the given order), with
    /// rows reduced to a lattice basis of its row space so it is valid again.
    pub fn restrict(&self, cols: &[usize]) -> Result<Configuration> {
        let sub = self.matrix.select_columns(cols);
        Configuration::new(reduce_rows(&sub))
    }

    /// Columns permuted: column `k` of the result is column `perm[k]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<Configuration> {
        Configuration::new(self.matrix.select_columns(perm))
    }

    /// `U · A` for a unimodular `U`.
    pub fn transform(&self, u: &IntMatrix) -> Result<Configuration> {
        Configuration::new(u.mul(&self.matrix))
    }

    fn lattice(&self) -> &Lattice {
        self.lattice.get_or_init(|| compute_lattice(self))
    }
}

/// A basis of the integer row space of `m` (the same integer kernel, full rank).
pub fn reduce_rows(m: &IntMatrix) -> IntMatrix {
    let (h, _) = crate::exactalg::hermite_normal_form(m);
    let rows: Vec<Vec<BigInt>> = h.to_rows().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    IntMatrix::from_bigint_rows(rows, m.cols()).expect("consistent widths")
}

/// A face of `conv(A)` with an exact witness: `⟨w, a_j⟩ = c` on the face and
/// `< c` off it. The improper face has `w = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub indices: Vec<usize>,
    #[serde(serialize_with = "crate::json::ser_bigints")]
    pub normal: Vec<BigInt>,
    #[serde(serialize_with = "crate::json::ser_bigint")]
    pub value: BigInt,
}

impl Face {
    pub fn contains(&self, j: usize) -> bool {
        self.indices.binary_search(&j).is_ok()
    }

    pub fn is_improper(&self, a: &Configuration) -> bool {
        self.indices.len() == a.s()
    }

    /// Checks the witness equalities and strict inequalities exactly.
    pub fn witness_holds(&self, a: &Configuration) -> bool {
        (0..a.s()).all(|j| {
            let v: BigInt = a.column(j).iter().zip(&self.normal).map(|(x, y)| x * y).sum();
            if self.contains(j) {
                v == self.value
            } else {
                v < self.value
            }
        })
    }

    fn mask(&self) -> u128 {
        self.indices.iter().fold(0u128, |m, &j| m | (1u128 << j))
    }
}

fn mask_indices(mask: u128) -> Vec<usize> {
    (0..128).filter(|&j| mask >> j & 1 == 1).collect()
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Generalized cross product: the vector orthogonal to `d − 1` vectors in Z^d.
fn normal_vector(vectors: &[Vec<BigInt>], d: usize) -> Vec<BigInt> {
    (0..d)
        .map(|k| {
            let rows: Vec<Vec<BigInt>> =
                vectors.iter().map(|v| (0..d).filter(|&j| j != k).map(|j| v[j].clone()).collect()).collect();
            let minor = IntMatrix::from_bigint_rows(rows, d - 1).expect("square minor").determinant();
            if k % 2 == 0 {
                minor
            } else {
                -minor
            }
        })
        .collect()
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        v
    } else {
        v.into_iter().map(|x| x / &g).collect()
    }
}

/// Columns that lie strictly between two other columns cannot be vertices.
fn vertex_candidates(a: &Configuration) -> Vec<usize> {
    let s = a.s();
    let cols: Vec<Vec<BigInt>> = (0..s).map(|j| a.column(j)).collect();
    (0..s)
        .filter(|&k| {
            !(0..s).any(|i| {
                i != k
                    && (i + 1..s).any(|j| {
                        if j == k {
                            return false;
                        }
                        // k = i + t (j - i) with 0 < t < 1
                        let dir: Vec<BigInt> = cols[j].iter().zip(&cols[i]).map(|(x, y)| x - y).collect();
                        let off: Vec<BigInt> = cols[k].iter().zip(&cols[i]).map(|(x, y)| x - y).collect();
                        let dd = dot(&dir, &dir);
                        let od = dot(&off, &dir);
                        if od <= BigInt::zero() || od >= dd {
                            return false;
                        }
                        // parallel check: off * dd == dir * od
                        off.iter().zip(&dir).all(|(o, di)| o * &dd == di * &od)
                    })
            })
        })
        .collect()
}

pub(crate) fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn compute_lattice(a: &Configuration) -> Lattice {
    let (d, s) = (a.d(), a.s());
    let cols: Vec<Vec<BigInt>> = (0..s).map(|j| a.column(j)).collect();
    let mut facets: BTreeMap<u128, Vec<BigInt>> = BTreeMap::new();
    if d >= 2 {
        let cand = vertex_candidates(a);
        for_each_combination(cand.len(), d - 1, |sub| {
            let mask_sub = sub.iter().fold(0u128, |m, &i| m | 1u128 << cand[i]);
            if facets.keys().any(|&f| f & mask_sub == mask_sub) {
                return;
            }
            let vecs: Vec<Vec<BigInt>> = sub.iter().map(|&i| cols[cand[i]].clone()).collect();
            let mut w = primitive(normal_vector(&vecs, d));
            if w.iter().all(Zero::is_zero) {
                return;
            }
            let vals: Vec<BigInt> = cols.iter().map(|c| dot(c, &w)).collect();
            let pos = vals.iter().any(Signed::is_positive);
            let neg = vals.iter().any(Signed::is_negative);
            if pos && neg {
                return;
            }
            if pos {
                w = w.into_iter().map(|x| -x).collect();
            }
            let mask = vals.iter().enumerate().filter(|(_, v)| v.is_zero()).fold(0u128, |m, (j, _)| m | 1u128 << j);
            facets.entry(mask).or_insert(w);
        });
    }
    let full: u128 = if s == 128 { u128::MAX } else { (1u128 << s) - 1 };
    let facet_list: Vec<(u128, Vec<BigInt>)> = facets.into_iter().collect();

    // closure under intersection
    let mut masks: BTreeSet<u128> = facet_list.iter().map(|(m, _)| *m).collect();
    let mut frontier: Vec<u128> = masks.iter().copied().collect();
    while let Some(m) = frontier.pop() {
        for (f, _) in &facet_list {
            let x = m & f;
            if x != 0 && masks.insert(x) {
                frontier.push(x);
            }
        }
    }
    masks.insert(full);

    let make_face = |mask: u128| -> Face {
        let mut normal = vec![BigInt::zero(); d];
        if mask != full {
            for (f, w) in &facet_list {
                if f & mask == mask {
                    for (n, x) in normal.iter_mut().zip(w) {
                        *n += x;
                    }
                }
            }
        }
        Face { indices: mask_indices(mask), normal, value: BigInt::zero() }
    };
    let mut faces: Vec<Face> = masks.iter().map(|&m| make_face(m)).collect();
    faces.sort_by(|x, y| x.indices.cmp(&y.indices));
    let facets = facet_list
        .iter()
        .map(|(m, w)| Face { indices: mask_indices(*m), normal: w.clone(), value: BigInt::zero() })
        .collect();
    Lattice { facets, faces }
}

/// All nonempty faces of `conv(A)`, including the improper face, in
/// lexicographic order of their index lists.
pub fn facial_subsets(a: &Configuration) -> Vec<Face> {
    a.lattice().faces.clone()
}

/// The facets (maximal proper faces).
pub fn facets(a: &Configuration) -> Vec<Face> {
    a.lattice().facets.clone()
}

/// The intersection of all faces containing the given columns.
pub fn smallest_face_containing(a: &Configuration, subset: &[usize]) -> Result<Face> {
    if subset.is_empty() {
        return Err(Error::InvalidInput("subset must be nonempty".into()));
    }
    if let Some(&j) = subset.iter().find(|&&j| j >= a.s()) {
        return Err(Error::InvalidInput(format!("column index {} out of range", j + 1)));
    }
    let mask = subset.iter().fold(0u128, |m, &j| m | 1u128 << j);
    let best = a
        .lattice()
        .faces
        .iter()
        .filter(|f| f.mask() & mask == mask)
        .min_by_key(|f| f.indices.len())
        .expect("the improper face contains everything");
    Ok(best.clone())
}

/// True when the columns lie in no proper face.
pub fn is_spanning(a: &Configuration, subset: &[usize]) -> Result<bool> {
    Ok(smallest_face_containing(a, subset)?.is_improper(a))
}

/// Columns lying on no proper face.
pub fn interior_points(a: &Configuration) -> Vec<usize> {
    let on_boundary = a.lattice().facets.iter().fold(0u128, |m, f| m | f.mask());
    (0..a.s()).filter(|&j| on_boundary >> j & 1 == 0).collect()
}

/// Vertices of `conv(A)`.
pub fn vertices(a: &Configuration) -> Vec<usize> {
    a.lattice().faces.iter().filter(|f| f.indices.len() == 1).map(|f| f.indices[0]).collect()
}

/// The smallest index `j` such that the other columns span a hyperplane not
/// containing `a_j`.
pub fn is_pyramid(a: &Configuration) -> Option<usize> {
    (0..a.s()).find(|&j| {
        let rest: Vec<usize> = (0..a.s()).filter(|&k| k != j).collect();
        let r = if rest.is_empty() { 0 } else { rank(&a.matrix().select_columns(&rest)) };
        r + 1 == a.d()
    })
}

/// Index of the lattice generated by the columns inside `Z^d`.
pub fn lattice_index(a: &Configuration) -> BigInt {
    smith_normal_form(a.matrix()).invariant_factors().iter().product()
}

/// Normalized volume of `conv(A)` with respect to the lattice generated by
/// the columns, so a unimodular simplex has volume one.
pub fn normalized_volume(a: &Configuration) -> BigInt {
    let lat = a.lattice();
    let d = a.d();
    let faces: Vec<u128> = lat.faces.iter().map(Face::mask).collect();
    let vertex_mask = lat.faces.iter().filter(|f| f.indices.len() == 1).fold(0u128, |m, f| m | f.mask());
    let full = faces.iter().copied().max_by_key(|m| m.count_ones()).expect("improper face");
    let mut simplices = Vec::new();
    let mut memo = BTreeMap::new();
    triangulate(a, full, &faces, vertex_mask, &mut memo, &mut simplices);
    let total: BigInt = simplices
        .iter()
        .map(|simplex: &Vec<usize>| {
            debug_assert_eq!(simplex.len(), d);
            a.matrix().select_columns(simplex).determinant().abs()
        })
        .sum();
    total / lattice_index(a)
}

fn face_rank(a: &Configuration, mask: u128) -> usize {
    rank(&a.matrix().select_columns(&mask_indices(mask)))
}

/// Pulling triangulation: cone from the smallest vertex over the facets of the
/// face that miss it.
fn triangulate(
    a: &Configuration,
    face: u128,
    faces: &[u128],
    vertex_mask: u128,
    memo: &mut BTreeMap<u128, Vec<Vec<usize>>>,
    out: &mut Vec<Vec<usize>>,
) {
    if let Some(cached) = memo.get(&face) {
        out.extend(cached.iter().cloned());
        return;
    }
    let verts = mask_indices(face & vertex_mask);
    let r = face_rank(a, face);
    let mut result = Vec::new();
    if verts.len() == r {
        result.push(verts);
    } else {
        let apex = verts[0];
        let subfaces: Vec<u128> = faces
            .iter()
            .copied()
            .filter(|&g| g != face && g & face == g && g >> apex & 1 == 0 && face_rank(a, g) + 1 == r)
            .collect();
        for g in subfaces {
            let mut sub = Vec::new();
            triangulate(a, g, faces, vertex_mask, memo, &mut sub);
            for mut simplex in sub {
                simplex.push(apex);
                simplex.sort_unstable();
                result.push(simplex);
            }
        }
    }
    memo.insert(face, result.clone());
    out.extend(result);
}
