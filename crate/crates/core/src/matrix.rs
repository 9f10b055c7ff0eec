//! Small dense integer matrices as `Vec<Vec<i64>>`, row-major.

use crate::{Error, Result};

pub type Matrix = Vec<Vec<i64>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![0; cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn is_square(m: &Matrix) -> bool {
    let n = m.len();
    m.iter().all(|row| row.len() == n)
}

pub fn transpose(m: &Matrix) -> Matrix {
    if m.is_empty() {
        return Vec::new();
    }
    let rows = m.len();
    let cols = m[0].len();
    let mut t = zeros(cols, rows);
    for i in 0..rows {
        for j in 0..cols {
            t[j][i] = m[i][j];
        }
    }
    t
}

/// Column `k` as a vector of length `rows`.
pub fn col(m: &Matrix, k: usize) -> Vec<i64> {
    m.iter().map(|row| row[k]).collect()
}

/// The submatrix keeping all rows and only the listed columns, in order.
pub fn take_cols(m: &Matrix, cols: &[usize]) -> Matrix {
    m.iter()
        .map(|row| cols.iter().map(|&c| row[c]).collect())
        .collect()
}

pub fn mat_vec(m: &Matrix, v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(a, b)| (*a as i128) * (*b as i128))
                .sum::<i128>() as i64
        })
        .collect()
}

pub fn is_skew_symmetric(m: &Matrix) -> bool {
    if !is_square(m) {
        return false;
    }
    let n = m.len();
    (0..n).all(|i| (0..n).all(|j| m[i][j] == -m[j][i]))
}

/// Checks `b[i][j] * d[j] == -b[j][i] * d[i]` for all pairs, naming the first
/// offending pair on failure.
pub fn check_skew_symmetrizable(b: &Matrix, d: &[i64]) -> Result<()> {
    if !is_square(b) || b.len() != d.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{:?} against {} symmetrizer entries",
            b.len(),
            b.first().map(|r| r.len()),
            d.len()
        )));
    }
    let n = b.len();
    for i in 0..n {
        for j in i..n {
            if (b[i][j] as i128) * (d[j] as i128) != -(b[j][i] as i128) * (d[i] as i128) {
                return Err(Error::NotSkewSymmetrizable { i, j });
            }
        }
    }
    Ok(())
}
