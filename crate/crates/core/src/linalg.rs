//! Exact linear algebra over the rationals, plus a float singular-value
//! estimate.
//!
//! Vectors are plain `Vec<Rational>`; matrices are lists of rows.

use num_traits::{Signed, Zero};

use crate::scalar::Rational;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rational>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::from_integer(1.into()) / &rows[r][c];
        for v in rows[r][c..].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut rows = vectors.to_vec();
    rref(&mut rows, first.len()).len()
}

/// A basis (in reduced echelon form) of the span of `vectors`.
pub fn span_basis(vectors: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let mut rows = vectors.to_vec();
    rref(&mut rows, dim);
    rows
}

/// Basis of `{v : A v = 0}` for the matrix with the given rows.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::from_integer(1.into());
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Exact subspace equality of two spans in a `dim`-dimensional space.
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>], dim: usize) -> bool {
    let ra = span_basis(a, dim);
    let rb = span_basis(b, dim);
    // reduced echelon bases are unique
    ra == rb
}

pub fn in_span(vectors: &[Vec<Rational>], v: &[Rational], dim: usize) -> bool {
    let mut all = vectors.to_vec();
    all.push(v.to_vec());
    span_basis(vectors, dim).len() == span_basis(&all, dim).len()
}

/// Basis of `span(a) ∩ span(b)`.
pub fn intersection(a: &[Vec<Rational>], b: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let a = span_basis(a, dim);
    let b = span_basis(b, dim);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // solve Σ α_i a_i − Σ β_j b_j = 0; columns are the basis vectors
    let ncols = a.len() + b.len();
    let rows: Vec<Vec<Rational>> = (0..dim)
        .map(|k| {
            a.iter()
                .map(|v| v[k].clone())
                .chain(b.iter().map(|v| -v[k].clone()))
                .collect()
        })
        .collect();
    let coeffs = nullspace(&rows, ncols);
    let vectors: Vec<Vec<Rational>> = coeffs
        .iter()
        .map(|alpha| {
            let mut v = vec![Rational::zero(); dim];
            for (coef, basis) in alpha.iter().zip(&a) {
                if coef.is_zero() {
                    continue;
                }
                for (vk, bk) in v.iter_mut().zip(basis) {
                    *vk += coef * bk;
                }
            }
            v
        })
        .collect();
    span_basis(&vectors, dim)
}

/// Exact positive-semidefiniteness test for a symmetric rational matrix,
/// by symmetric elimination.
pub fn is_positive_semidefinite(matrix: &[Vec<Rational>]) -> bool {
    let n = matrix.len();
    let mut a = matrix.to_vec();
    for k in 0..n {
        let pivot = a[k][k].clone();
        if pivot.is_negative() {
            return false;
        }
        if pivot.is_zero() {
            // a zero diagonal entry forces a zero row
            if a[k][k + 1..].iter().any(|v| !v.is_zero()) {
                return false;
            }
            continue;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            for j in k..n {
                let delta = &factor * &a[k][j];
                a[i][j] -= delta;
            }
        }
    }
    true
}

pub fn max_abs(values: &[Rational]) -> Rational {
    values
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Largest singular value of a dense matrix by power iteration on `AᵀA`.
pub fn largest_singular_value(a: &[Vec<f64>]) -> f64 {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return 0.0;
    }
    let frob: f64 = a.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
    if frob == 0.0 {
        return 0.0;
    }
    // start from a vector with no special structure
    let mut v: Vec<f64> = (0..cols).map(|j| 1.0 + 0.1 * (j as f64 + 1.0).sqrt()).collect();
    normalize(&mut v);
    let mut sigma = 0.0;
    for _ in 0..10_000 {
        let av: Vec<f64> = a
            .iter()
            .map(|row| row.iter().zip(&v).map(|(x, y)| x * y).sum())
            .collect();
        let mut atav = vec![0.0; cols];
        for (row, s) in a.iter().zip(&av) {
            for (t, x) in atav.iter_mut().zip(row) {
                *t += x * s;
            }
        }
        let norm = atav.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            // v landed in the kernel; the spectrum is below any restart value
            return av.iter().map(|x| x * x).sum::<f64>().sqrt();
        }
        let next = norm.sqrt();
        for (vi, t) in v.iter_mut().zip(&atav) {
            *vi = t / norm;
        }
        if (next - sigma).abs() <= 1e-15 * frob {
            sigma = next;
            break;
        }
        sigma = next;
    }
    sigma
}

fn normalize(v: &mut [f64]) {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        for x in v {
            *x /= n;
        }
    }
}
