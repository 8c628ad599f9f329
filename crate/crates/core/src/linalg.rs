//! Exact linear algebra over the rationals: row reduction, rank, kernels and
//! span comparisons. Vectors are rows of equal width.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::kernel::Rational;

/// Reduced row echelon form of a set of rows.
#[derive(Debug, Clone)]
pub struct Echelon {
    width: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(rows: &[Vec<Rational>], width: usize) -> Self {
        let mut m: Vec<Vec<Rational>> = rows.to_vec();
        debug_assert!(m.iter().all(|r| r.len() == width));
        let mut pivots = Vec::new();
        let mut top = 0;
        for col in 0..width {
            let Some(p) = (top..m.len()).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(top, p);
            let inv = m[top][col].recip();
            for x in m[top].iter_mut() {
                *x *= &inv;
            }
            for r in 0..m.len() {
                if r != top && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..width {
                        let delta = &f * &m[top][c];
                        m[r][c] -= delta;
                    }
                }
            }
            pivots.push(col);
            top += 1;
            if top == m.len() {
                break;
            }
        }
        m.truncate(top);
        Echelon {
            width,
            rows: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Basis rows in reduced form, one per pivot.
    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after elimination against the basis; zero iff `v` is
    /// in the span.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Kernel of the matrix whose rows were reduced: all `x` with `row . x = 0`.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let pivot_set: BTreeSet<usize> = self.pivots.iter().copied().collect();
        (0..self.width)
            .filter(|c| !pivot_set.contains(c))
            .map(|free| {
                let mut x = vec![Rational::zero(); self.width];
                x[free] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    x[p] = -row[free].clone();
                }
                x
            })
            .collect()
    }
}

pub fn rank(rows: &[Vec<Rational>], width: usize) -> usize {
    Echelon::new(rows, width).rank()
}

/// All `x` with `row . x = 0` for every row.
pub fn nullspace(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    Echelon::new(rows, width).kernel()
}

pub fn transpose(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    (0..width)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect()
}

/// Coefficients `c` with `sum_i c_i rows[i] = v`, if any.
pub fn solve(rows: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let width = v.len();
    let r = rows.len();
    // augmented system: columns are the given rows, last column is v
    let mut aug: Vec<Vec<Rational>> = (0..width)
        .map(|c| {
            let mut line: Vec<Rational> = rows.iter().map(|row| row[c].clone()).collect();
            line.push(v[c].clone());
            line
        })
        .collect();
    if aug.is_empty() {
        aug.push(vec![Rational::zero(); r + 1]);
    }
    let ech = Echelon::new(&aug, r + 1);
    if ech.pivots().contains(&r) {
        return None;
    }
    let mut x = vec![Rational::zero(); r];
    for (row, &p) in ech.rows().iter().zip(ech.pivots()) {
        x[p] = row[r].clone();
    }
    Some(x)
}

/// `span(big) ⊇ span(small)`.
pub fn span_contains(big: &[Vec<Rational>], small: &[Vec<Rational>], width: usize) -> bool {
    let e = Echelon::new(big, width);
    small.iter().all(|v| e.contains(v))
}

pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>], width: usize) -> bool {
    let ea = Echelon::new(a, width);
    let eb = Echelon::new(b, width);
    ea.rank() == eb.rank() && b.iter().all(|v| ea.contains(v))
}

/// Extends independent rows to a basis of the whole space with unit vectors.
pub fn complete_basis(rows: &[Vec<Rational>], width: usize) -> Vec<Vec<Rational>> {
    let mut out = rows.to_vec();
    for i in 0..width {
        let mut u = vec![Rational::zero(); width];
        u[i] = Rational::one();
        if !Echelon::new(&out, width).contains(&u) {
            out.push(u);
        }
    }
    out
}

pub fn inverse(square: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = square.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let aug: Vec<Vec<Rational>> = square
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut line = row.clone();
            line.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            line
        })
        .collect();
    let e = Echelon::new(&aug, 2 * n);
    if e.rank() < n || e.pivots()[n - 1] >= n {
        return None;
    }
    Some(e.rows().iter().map(|r| r[n..].to_vec()).collect())
}

/// Densifies keyed sparse vectors over the union of their keys, in key order.
pub fn densify<K: Ord + Clone>(vectors: &[&BTreeMap<K, Rational>]) -> (Vec<Vec<Rational>>, usize) {
    let keys: BTreeSet<K> = vectors.iter().flat_map(|v| v.keys().cloned()).collect();
    let index: BTreeMap<K, usize> = keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
    let width = index.len();
    let rows = vectors
        .iter()
        .map(|v| {
            let mut row = vec![Rational::zero(); width];
            for (k, c) in v.iter() {
                row[index[k]] = c.clone();
            }
            row
        })
        .collect();
    (rows, width)
}

/// `span(big) ⊇ span(small)` for keyed sparse vectors.
pub fn sparse_span_contains<K: Ord + Clone>(
    big: &[BTreeMap<K, Rational>],
    small: &[BTreeMap<K, Rational>],
) -> bool {
    let all: Vec<&BTreeMap<K, Rational>> = big.iter().chain(small).collect();
    let (rows, width) = densify(&all);
    span_contains(&rows[..big.len()], &rows[big.len()..], width)
}

pub fn sparse_same_span<K: Ord + Clone>(
    a: &[BTreeMap<K, Rational>],
    b: &[BTreeMap<K, Rational>],
) -> bool {
    let all: Vec<&BTreeMap<K, Rational>> = a.iter().chain(b).collect();
    let (rows, width) = densify(&all);
    same_span(&rows[..a.len()], &rows[a.len()..], width)
}
