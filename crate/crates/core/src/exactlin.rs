//! Exact linear algebra over Q and Z: elimination, kernels, interpolation.
//!
//! Everything here is dense and small; clarity over asymptotics.

use crate::matrix::Matrix;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn br_int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn rows_to_rational(m: &Matrix) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|row| row.iter().map(|&x| br_int(x)).collect())
        .collect()
}

/// In-place reduced row echelon form. Returns the pivot columns in order.
pub fn rref(a: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..cols {
                    let t = &a[r][j] * &f;
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut a = rows_to_rational(m);
    rref(&mut a).len()
}

/// Determinant of a square integer matrix, by rational elimination.
pub fn det_int(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(c, p);
            det = -det;
        }
        det *= &a[c][c];
        let inv = a[c][c].clone();
        for r in c + 1..n {
            if !a[r][c].is_zero() {
                let f = &a[r][c] / &inv;
                for j in c..n {
                    let t = &a[c][j] * &f;
                    a[r][j] -= t;
                }
            }
        }
    }
    det.to_integer()
}

/// One rational solution of `A x = b` (free variables set to zero), or `None`
/// if the system is inconsistent.
pub fn solve_rational(a: &[Vec<BigRational>], b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // Inconsistent when a pivot lands in the rhs column.
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols].clone();
    }
    Some(x)
}

/// A basis of the rational null space of `A` (rows over Q).
pub fn nullspace_rational(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<BigRational>> = a.to_vec();
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = -m[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solves `B x = d` for a full-column-rank integer matrix `B`, reusing one
/// elimination across many right-hand sides.
pub struct ColumnSolver {
    n: usize,
    r: usize,
    /// Transform with `R * B = E`, `E` the reduced echelon form of `B`.
    rmat: Vec<Vec<BigRational>>,
}

impl ColumnSolver {
    pub fn new(b: &Matrix) -> Result<Self> {
        let n = b.len();
        let r = if n == 0 { 0 } else { b[0].len() };
        // Augment [B | I] and reduce; pivots must cover all r columns of B.
        let mut aug: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = b[i].iter().map(|&x| br_int(x)).collect();
                for j in 0..n {
                    row.push(if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    });
                }
                row
            })
            .collect();
        let pivots = rref(&mut aug);
        let b_pivots: Vec<usize> = pivots.iter().copied().filter(|&c| c < r).collect();
        if b_pivots.len() < r {
            return Err(Error::RankDeficient);
        }
        let rmat = aug.into_iter().map(|row| row[r..].to_vec()).collect();
        Ok(ColumnSolver { n, r, rmat })
    }

    /// The unique rational solution, or `None` if `d` is outside the column span.
    pub fn solve_rational(&self, d: &[i64]) -> Option<Vec<BigRational>> {
        assert_eq!(d.len(), self.n, "right-hand side length");
        let mut y = vec![BigRational::zero(); self.n];
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = BigRational::zero();
            for (j, &dj) in d.iter().enumerate() {
                if dj != 0 {
                    acc += &self.rmat[i][j] * br_int(dj);
                }
            }
            *yi = acc;
        }
        if y[self.r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        y.truncate(self.r);
        Some(y)
    }

    /// The unique solution when it exists and is integral.
    pub fn solve_integer(&self, d: &[i64]) -> Option<Vec<i64>> {
        let y = self.solve_rational(d)?;
        let mut out = Vec::with_capacity(y.len());
        for x in y {
            if !x.is_integer() {
                return None;
            }
            out.push(i64::try_from(x.to_integer()).ok()?);
        }
        Some(out)
    }

    /// The unique solution when it exists, is integral, and is componentwise
    /// nonnegative.
    pub fn solve_integer_nonneg(&self, d: &[i64]) -> Option<Vec<i64>> {
        self.solve_integer(d).filter(|x| x.iter().all(|&v| v >= 0))
    }
}

/// Unimodular column reduction of an integer matrix given by columns.
///
/// `cols[j] = A * transform[j]` throughout; after reduction the first `fixed`
/// columns are the nonzero staircase columns and the rest are zero.
pub struct ColumnReduction {
    pub cols: Vec<Vec<BigInt>>,
    pub transform: Vec<Vec<BigInt>>,
    pub fixed: usize,
}

pub fn column_reduce(acols_in: Vec<Vec<BigInt>>) -> ColumnReduction {
    let n = acols_in.len();
    let m = if n == 0 { 0 } else { acols_in[0].len() };
    let mut acols = acols_in;
    let mut vcols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut fixed = 0;
    for row in 0..m {
        loop {
            let active: Vec<usize> = (fixed..n).filter(|&j| !acols[j][row].is_zero()).collect();
            if active.is_empty() {
                break;
            }
            if active.len() == 1 {
                let j = active[0];
                acols.swap(fixed, j);
                vcols.swap(fixed, j);
                fixed += 1;
                break;
            }
            let &jmin = active.iter().min_by_key(|&&j| acols[j][row].abs()).unwrap();
            for &j in &active {
                if j == jmin {
                    continue;
                }
                let q = &acols[j][row] / &acols[jmin][row];
                if !q.is_zero() {
                    for i in 0..m {
                        let t = &acols[jmin][i] * &q;
                        acols[j][i] -= t;
                    }
                    for i in 0..n {
                        let t = &vcols[jmin][i] * &q;
                        vcols[j][i] -= t;
                    }
                }
            }
        }
    }
    ColumnReduction {
        cols: acols,
        transform: vcols,
        fixed,
    }
}

/// A basis of the saturated integer kernel lattice `{x in Z^n : A x = 0}`,
/// via unimodular column reduction.
pub fn kernel_lattice(a: &Matrix) -> Vec<Vec<BigInt>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let acols: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..m).map(|i| BigInt::from(a[i][j])).collect())
        .collect();
    let red = column_reduce(acols);
    let mut v = red.transform;
    v.split_off(red.fixed)
}

/// Coordinates of `target` in the given lattice basis (columns), requiring an
/// exact integral solution.
pub fn solve_in_lattice(basis: &[Vec<BigInt>], target: &[BigInt]) -> Option<Vec<BigInt>> {
    if basis.is_empty() {
        return if target.iter().all(|x| x.is_zero()) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let m = basis[0].len();
    let rows: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            basis
                .iter()
                .map(|col| BigRational::from_integer(col[i].clone()))
                .collect()
        })
        .collect();
    let rhs: Vec<BigRational> = target
        .iter()
        .map(|x| BigRational::from_integer(x.clone()))
        .collect();
    let sol = solve_rational(&rows, &rhs)?;
    let mut out = Vec::with_capacity(sol.len());
    for x in sol {
        if !x.is_integer() {
            return None;
        }
        out.push(x.to_integer());
    }
    Some(out)
}

/// The unique polynomial of degree < nodes.len() through the given points,
/// returned as monomial coefficients (constant first); `None` if any
/// coefficient is non-integral.
pub fn lagrange_integer_fit(nodes: &[(i64, BigInt)]) -> Option<Vec<BigInt>> {
    let k = nodes.len();
    if k == 0 {
        return Some(Vec::new());
    }
    let rows: Vec<Vec<BigRational>> = nodes
        .iter()
        .map(|(x, _)| {
            let mut pow = BigRational::one();
            let xr = br_int(*x);
            (0..k)
                .map(|_| {
                    let cur = pow.clone();
                    pow *= &xr;
                    cur
                })
                .collect()
        })
        .collect();
    let rhs: Vec<BigRational> = nodes
        .iter()
        .map(|(_, y)| BigRational::from_integer(y.clone()))
        .collect();
    let sol = solve_rational(&rows, &rhs)?;
    let mut out = Vec::with_capacity(k);
    for c in sol {
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    Some(out)
}
