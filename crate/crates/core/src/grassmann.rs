//! Quiver Grassmannians over prime fields.
//!
//! Subrepresentations of a fixed dimension vector are counted by exhaustive
//! enumeration of row-reduced subspaces at every vertex, and Euler
//! characteristics are recovered from those counts: the count is a polynomial
//! in the field size at desk scale, so fitting it at enough rank-faithful
//! primes and evaluating at 1 gives the characteristic exactly.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactlin;
use crate::matrix::Matrix;
use crate::quiver::QuiverRep;
use crate::{Error, Result};

/// Default ceiling on the number of subspace tuples a single count may visit.
pub const DEFAULT_ENUM_BUDGET: u128 = 10_000_000;

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Gaussian binomial: the number of k-dimensional subspaces of F_p^d.
fn subspace_total(d: usize, k: usize, p: u64) -> BigInt {
    if k > d {
        return BigInt::zero();
    }
    let q = BigInt::from(p);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= q.pow((d - i) as u32) - BigInt::one();
        den *= q.pow((i + 1) as u32) - BigInt::one();
    }
    num / den
}

/// A subspace in reduced row-echelon form; pivot coefficients are 1.
struct Subspace {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    fn contains(&self, v: &[u64], p: u64) -> bool {
        let mut w = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let f = w[c];
            if f != 0 {
                for (j, e) in self.rows[i].iter().enumerate() {
                    w[j] = (w[j] + (p - f) * e) % p;
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

fn enumerate_subspaces(d: usize, k: usize, p: u64) -> Vec<Subspace> {
    if k == 0 {
        return vec![Subspace {
            rows: Vec::new(),
            pivots: Vec::new(),
        }];
    }
    if k > d {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| {
                let pv = pivots.clone();
                ((pivots[i] + 1)..d)
                    .filter(move |j| !pv.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        let mut vals = vec![0u64; free.len()];
        loop {
            let mut rows = vec![vec![0u64; d]; k];
            for (i, &c) in pivots.iter().enumerate() {
                rows[i][c] = 1;
            }
            for (t, &(i, j)) in free.iter().enumerate() {
                rows[i][j] = vals[t];
            }
            out.push(Subspace {
                rows,
                pivots: pivots.clone(),
            });
            let mut t = 0;
            while t < vals.len() {
                vals[t] += 1;
                if vals[t] < p {
                    break;
                }
                vals[t] = 0;
                t += 1;
            }
            if t == vals.len() {
                break;
            }
        }
        // Next pivot combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pivots[i] < d - k + i {
                pivots[i] += 1;
                for t in (i + 1)..k {
                    pivots[t] = pivots[t - 1] + 1;
                }
                break;
            }
        }
    }
}

fn reduce_entry(x: i64, p: u64) -> u64 {
    let m = p as i64;
    (((x % m) + m) % m) as u64
}

fn validate_dim_vector(rep: &QuiverRep, n: &[usize]) -> Result<()> {
    if n.len() != rep.dims().len() {
        return Err(Error::DimensionMismatch(format!(
            "dimension vector has length {} but the quiver has {} vertices",
            n.len(),
            rep.dims().len()
        )));
    }
    for (v, (&nv, &dv)) in n.iter().zip(rep.dims()).enumerate() {
        if nv > dv {
            return Err(Error::DimensionMismatch(format!(
                "requested dimension {nv} exceeds the fiber dimension {dv} at vertex {v}"
            )));
        }
    }
    Ok(())
}

/// Number of subrepresentations of `rep mod p` with dimension vector `n`,
/// counted by brute force within the default enumeration budget.
pub fn submodule_count(rep: &QuiverRep, n: &[usize], p: u64) -> Result<BigInt> {
    submodule_count_with_budget(rep, n, p, DEFAULT_ENUM_BUDGET)
}

pub fn submodule_count_with_budget(
    rep: &QuiverRep,
    n: &[usize],
    p: u64,
    budget: u128,
) -> Result<BigInt> {
    if !is_prime(p) {
        return Err(Error::Schema(format!("field size {p} is not prime")));
    }
    validate_dim_vector(rep, n)?;
    let mut total = BigInt::one();
    for (v, &nv) in n.iter().enumerate() {
        total *= subspace_total(rep.dims()[v], nv, p);
    }
    if total > BigInt::from(budget) {
        return Err(Error::EnumerationBudget {
            needed: total.to_u128().unwrap_or(u128::MAX),
            budget,
        });
    }

    let nv = rep.dims().len();
    let lists: Vec<Vec<Subspace>> = (0..nv)
        .map(|v| enumerate_subspaces(rep.dims()[v], n[v], p))
        .collect();
    if lists.iter().any(|l| l.is_empty()) {
        return Ok(BigInt::zero());
    }
    let maps_p: Vec<Vec<Vec<u64>>> = rep
        .maps()
        .iter()
        .map(|m| {
            m.iter()
                .map(|row| row.iter().map(|&x| reduce_entry(x, p)).collect())
                .collect()
        })
        .collect();
    // Images of every source-subspace basis under every arrow, precomputed.
    let arrows = rep.quiver().arrows();
    let images: Vec<Vec<Vec<Vec<u64>>>> = arrows
        .iter()
        .enumerate()
        .map(|(a, &(u, w))| {
            lists[u]
                .iter()
                .map(|sub| {
                    sub.rows
                        .iter()
                        .map(|r| {
                            (0..rep.dims()[w])
                                .map(|i| {
                                    let mut acc = 0u64;
                                    for (c, &x) in r.iter().enumerate() {
                                        acc = (acc + maps_p[a][i][c] * x) % p;
                                    }
                                    acc
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let mut idx = vec![0usize; nv];
    let mut count = BigInt::zero();
    loop {
        let closed = arrows.iter().enumerate().all(|(a, &(_, w))| {
            images[a][idx[arrows[a].0]]
                .iter()
                .all(|img| lists[w][idx[w]].contains(img, p))
        });
        if closed {
            count += 1;
        }
        let mut t = 0;
        while t < nv {
            idx[t] += 1;
            if idx[t] < lists[t].len() {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
        if t == nv {
            break;
        }
    }
    Ok(count)
}

fn rank_mod_p(m: &Matrix, p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .map(|row| row.iter().map(|&x| reduce_entry(x, p)).collect())
        .collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let inv = |x: u64| -> u64 {
        // Fermat inverse; p is prime and x is nonzero.
        let mut base = x % p;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, pivot);
        let f = inv(a[rank][c]);
        for j in 0..cols {
            a[rank][j] = a[rank][j] * f % p;
        }
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for j in 0..cols {
                    a[r][j] = (a[r][j] + (p - f) * a[rank][j]) % p;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// The first `count` primes at which every arrow matrix keeps its rational
/// rank after reduction.
#[cfg(test)]
fn rank_faithful_primes(rep: &QuiverRep, count: usize) -> Vec<u64> {
    let ranks: Vec<usize> = rep.maps().iter().map(exactlin::rank).collect();
    let mut out = Vec::with_capacity(count);
    let mut p = 2u64;
    while out.len() < count {
        if is_prime(p)
            && rep
                .maps()
                .iter()
                .zip(&ranks)
                .all(|(m, &r)| rank_mod_p(m, p) == r)
        {
            out.push(p);
        }
        p += 1;
    }
    out
}

/// The smallest rank-faithful prime strictly above `after`.
fn next_rank_faithful_prime(rep: &QuiverRep, ranks: &[usize], after: u64) -> u64 {
    let mut p = after + 1;
    loop {
        if is_prime(p)
            && rep
                .maps()
                .iter()
                .zip(ranks)
                .all(|(m, &r)| rank_mod_p(m, p) == r)
        {
            return p;
        }
        p += 1;
    }
}

/// Euler characteristic of the Grassmannian of `n`-dimensional
/// subrepresentations: the counting polynomial is fitted from point counts
/// over `D+1` rank-faithful primes (`D` bounds its degree by the ambient
/// product of ordinary Grassmannians) and evaluated at 1.
pub fn euler_char(rep: &QuiverRep, n: &[usize]) -> Result<BigInt> {
    euler_char_with_budget(rep, n, DEFAULT_ENUM_BUDGET)
}

/// How many windows of primes are tried before giving up on a fit.
const MAX_PRIME_WINDOW_SLIDES: usize = 8;

pub fn euler_char_with_budget(rep: &QuiverRep, n: &[usize], budget: u128) -> Result<BigInt> {
    validate_dim_vector(rep, n)?;
    let degree_bound: usize = n
        .iter()
        .zip(rep.dims())
        .map(|(&nv, &dv)| nv * (dv - nv))
        .sum();
    let window = degree_bound + 1;
    let ranks: Vec<usize> = rep.maps().iter().map(exactlin::rank).collect();
    // Counts are cached per prime; each fit uses a window of consecutive
    // rank-faithful primes plus one holdout prime that must agree with the
    // fitted polynomial, so an accidental fit through bad primes is rejected
    // and the window slides past them.
    let mut nodes: Vec<(i64, BigInt)> = Vec::new();
    let mut last_prime = 1u64;
    for slide in 0..=MAX_PRIME_WINDOW_SLIDES {
        while nodes.len() < slide + window + 1 {
            let p = next_rank_faithful_prime(rep, &ranks, last_prime);
            last_prime = p;
            match submodule_count_with_budget(rep, n, p, budget) {
                Ok(c) => nodes.push((p as i64, c)),
                // The first window must fit in the budget; a later window
                // failing to fit just means the fit cannot be validated.
                Err(e) if slide == 0 => return Err(e),
                Err(_) => return Err(Error::InterpolationInconsistent),
            }
        }
        let Some(coeffs) = exactlin::lagrange_integer_fit(&nodes[slide..slide + window]) else {
            continue;
        };
        let (hp, hc) = &nodes[slide + window];
        let mut val = BigInt::zero();
        for c in coeffs.iter().rev() {
            val = val * *hp + c;
        }
        if val == *hc {
            return Ok(coeffs.into_iter().sum());
        }
    }
    Err(Error::InterpolationInconsistent)
}

/// All Euler characteristics of `rep` indexed by dimension vector, with the
/// zero values dropped: the F-polynomial data of the character map.
pub fn f_polynomial_with_budget(
    rep: &QuiverRep,
    budget: u128,
) -> Result<BTreeMap<Vec<usize>, BigInt>> {
    let dims = rep.dims().to_vec();
    let mut out = BTreeMap::new();
    let mut n = vec![0usize; dims.len()];
    loop {
        let chi = euler_char_with_budget(rep, &n, budget)?;
        if !chi.is_zero() {
            out.insert(n.clone(), chi);
        }
        let mut t = 0;
        while t < n.len() {
            n[t] += 1;
            if n[t] <= dims[t] {
                break;
            }
            n[t] = 0;
            t += 1;
        }
        if t == n.len() {
            break;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{injective_rep, Quiver, QuiverRep};

    fn kronecker_op() -> Quiver {
        Quiver::new(vec!["1".into(), "2".into()], vec![(0, 1), (0, 1)]).unwrap()
    }

    fn v_loop(lambda: i64) -> QuiverRep {
        QuiverRep::new(
            kronecker_op(),
            vec![1, 1],
            vec![vec![vec![1]], vec![vec![lambda]]],
        )
        .unwrap()
    }

    #[test]
    fn subspace_enumeration_matches_the_gaussian_count() {
        for (d, k, p) in [(2, 1, 3), (3, 1, 2), (3, 2, 2), (4, 2, 3), (3, 0, 5)] {
            let subs = enumerate_subspaces(d, k, p);
            assert_eq!(BigInt::from(subs.len()), subspace_total(d, k, p));
        }
        assert_eq!(subspace_total(2, 1, 3), BigInt::from(4));
        assert_eq!(subspace_total(4, 2, 3), BigInt::from(130));
    }

    #[test]
    fn loop_module_counts() {
        let v = v_loop(3);
        for p in [2, 3] {
            assert_eq!(submodule_count(&v, &[0, 1], p).unwrap(), BigInt::from(1));
            assert_eq!(submodule_count(&v, &[0, 0], p).unwrap(), BigInt::from(1));
            assert_eq!(submodule_count(&v, &[1, 1], p).unwrap(), BigInt::from(1));
            assert_eq!(submodule_count(&v, &[1, 0], p).unwrap(), BigInt::from(0));
        }
    }

    #[test]
    fn eigenline_count_for_a_split_pair() {
        let sum = v_loop(1).direct_sum(&v_loop(2)).unwrap();
        for p in [3, 5] {
            assert_eq!(submodule_count(&sum, &[1, 1], p).unwrap(), BigInt::from(2));
        }
    }

    #[test]
    fn trivial_dimension_vectors_count_one() {
        let v = v_loop(1).direct_sum(&v_loop(2)).unwrap();
        for p in [3, 5, 7] {
            assert_eq!(submodule_count(&v, &[0, 0], p).unwrap(), BigInt::from(1));
            let dims: Vec<usize> = v.dims().to_vec();
            assert_eq!(submodule_count(&v, &dims, p).unwrap(), BigInt::from(1));
        }
    }

    #[test]
    fn euler_characteristics_of_loop_modules() {
        let v = v_loop(3);
        assert_eq!(euler_char(&v, &[1, 1]).unwrap(), BigInt::from(1));
        assert_eq!(euler_char(&v, &[1, 0]).unwrap(), BigInt::from(0));
        assert_eq!(euler_char(&v, &[0, 1]).unwrap(), BigInt::from(1));
        let sum = v_loop(1).direct_sum(&v_loop(2)).unwrap();
        assert_eq!(euler_char(&sum, &[1, 1]).unwrap(), BigInt::from(2));
    }

    #[test]
    fn injective_f_polynomial_data() {
        let i2 = injective_rep(&kronecker_op(), 1).unwrap();
        let f = f_polynomial_with_budget(&i2, DEFAULT_ENUM_BUDGET).unwrap();
        let expected: Vec<(Vec<usize>, i64)> = vec![
            (vec![0, 0], 1),
            (vec![0, 1], 1),
            (vec![1, 1], 2),
            (vec![2, 1], 1),
        ];
        let got: Vec<(Vec<usize>, i64)> = f
            .into_iter()
            .map(|(n, c)| (n, i64::try_from(c).unwrap()))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn bad_primes_are_skipped_not_fitted() {
        // Entries divisible by 2 force the rank-faithful primes past 2.
        let sum = v_loop(1).direct_sum(&v_loop(2)).unwrap();
        let primes = rank_faithful_primes(&sum, 3);
        assert_eq!(primes, vec![3, 5, 7]);
    }

    #[test]
    fn budget_and_validation_errors() {
        let v = v_loop(1).direct_sum(&v_loop(2)).unwrap();
        let err = submodule_count_with_budget(&v, &[1, 1], 5, 3).unwrap_err();
        assert!(matches!(err, Error::EnumerationBudget { .. }));
        assert!(matches!(
            submodule_count(&v, &[3, 1], 5),
            Err(Error::DimensionMismatch(_))
        ));
        assert!(matches!(
            submodule_count(&v, &[1, 1], 6),
            Err(Error::Schema(_))
        ));
    }
}
