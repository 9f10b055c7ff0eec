//! Seeds: an exchange matrix with attached cluster variables, matrix and seed
//! mutation, compatible skew forms, and triangulated-surface input.

use crate::exactlin::{self, ColumnSolver};
use crate::frame::{exp_sub, exp_unit, Exponent, Frame};
use crate::matrix::{self, Matrix};
use crate::scalar::ScalarPoly;
use crate::torus::{DivisionSide, TorusElement};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::sync::Arc;

fn pos_part(x: i64) -> i64 {
    x.max(0)
}

/// Matrix mutation in direction `k`: negate row and column `k`, and add the
/// positive-part correction everywhere else.
pub fn mutate_b(b: &Matrix, k: usize) -> Matrix {
    let n = b.len();
    assert!(k < n, "mutation index in range");
    let mut out = matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + b[i][k] * pos_part(b[k][j]) + pos_part(-b[i][k]) * b[k][j]
            };
        }
    }
    out
}

fn pairing_with(lambda: Option<&Matrix>, m1: &[i64], m2: &[i64]) -> i64 {
    let Some(l) = lambda else {
        return 0;
    };
    let mut acc: i128 = 0;
    for (i, &a) in m1.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in m2.iter().enumerate() {
            if b != 0 {
                acc += a as i128 * l[i][j] as i128 * b as i128;
            }
        }
    }
    i64::try_from(acc).expect("pairing fits in i64")
}

/// Checks `lambda(f_i, col_k b) = -delta_k [i = k]` for every unfrozen `k`,
/// with each `delta_k` strictly positive. Returns the `delta` vector in
/// unfrozen order.
pub fn check_compatibility(lambda: &Matrix, b: &Matrix, unfrozen: &[usize]) -> Result<Vec<i64>> {
    let n = b.len();
    if !matrix::is_square(lambda) || lambda.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "skew form is {}x? but the exchange matrix is {n}x{n}",
            lambda.len()
        )));
    }
    if !matrix::is_skew_symmetric(lambda) {
        return Err(Error::Schema(
            "the form matrix must be skew-symmetric".into(),
        ));
    }
    let mut delta = Vec::with_capacity(unfrozen.len());
    for &k in unfrozen {
        for i in 0..n {
            let mut got: i128 = 0;
            for j in 0..n {
                got += lambda[i][j] as i128 * b[j][k] as i128;
            }
            let got = i64::try_from(got).expect("pairing fits in i64");
            if i == k {
                if got >= 0 {
                    return Err(Error::Incompatible {
                        i,
                        k,
                        got,
                        expected: "a strictly negative value".into(),
                    });
                }
                delta.push(-got);
            } else if got != 0 {
                return Err(Error::Incompatible {
                    i,
                    k,
                    got,
                    expected: "0".into(),
                });
            }
        }
    }
    Ok(delta)
}

/// Searches for a skew-symmetric integer form compatible with `b` (full
/// column rank on the unfrozen columns). Returns the form together with its
/// `delta` vector, both normalized so the entries have gcd 1 and chosen
/// deterministically (smallest delta, then smallest form, in lexicographic
/// order over the search box).
pub fn find_compatible_lambda(b: &Matrix, unfrozen: &[usize]) -> Result<(Matrix, Vec<i64>)> {
    let n = b.len();
    let r = unfrozen.len();
    if r == 0 {
        return Ok((matrix::zeros(n, n), Vec::new()));
    }
    let btilde = matrix::take_cols(b, unfrozen);
    ColumnSolver::new(&btilde)?;

    // Unknowns: the strictly-upper entries of the form, then one delta per
    // unfrozen index. Constraints: sum_j lambda_ij b_jk + [i = k] delta_k = 0.
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let nvars = pairs.len() + r;
    let mut rows: Matrix = Vec::with_capacity(n * r);
    for (kp, &k) in unfrozen.iter().enumerate() {
        for i in 0..n {
            let mut row = vec![0i64; nvars];
            for (p, &(a, c)) in pairs.iter().enumerate() {
                if a == i {
                    row[p] += b[c][k];
                }
                if c == i {
                    row[p] -= b[a][k];
                }
            }
            if i == k {
                row[pairs.len() + kp] = 1;
            }
            rows.push(row);
        }
    }
    let kernel = exactlin::kernel_lattice(&rows);
    if kernel.is_empty() {
        return Err(Error::NoCompatibleLambda(0));
    }

    // Reduce the delta-projections of the kernel to a lattice basis, tracking
    // which kernel combination produces each basis vector, then search small
    // combinations for a strictly positive delta.
    let proj: Vec<Vec<BigInt>> = kernel.iter().map(|v| v[pairs.len()..].to_vec()).collect();
    let red = exactlin::column_reduce(proj);
    let mut lifted: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..red.fixed {
        let mut full = vec![BigInt::zero(); nvars];
        for (t, c) in red.transform[j].iter().enumerate() {
            if !c.is_zero() {
                for (fi, kv) in full.iter_mut().zip(kernel[t].iter()) {
                    *fi += kv * c;
                }
            }
        }
        lifted.push(full);
    }
    if lifted.is_empty() {
        return Err(Error::NoCompatibleLambda(0));
    }

    let s = lifted.len();
    let mut best: Option<(Vec<i64>, Vec<i64>)> = None;
    let mut searched_to = 0i64;
    for &cmax in &[1i64, 2, 4, 8] {
        searched_to = cmax;
        let mut counter = vec![-cmax; s];
        'combos: loop {
            if counter.iter().any(|&c| c != 0) {
                let mut combo = vec![BigInt::zero(); nvars];
                for (t, &c) in counter.iter().enumerate() {
                    if c != 0 {
                        let cb = BigInt::from(c);
                        for (ci, lv) in combo.iter_mut().zip(lifted[t].iter()) {
                            *ci += lv * &cb;
                        }
                    }
                }
                if combo[pairs.len()..].iter().all(|d| d.is_positive()) {
                    let mut g = BigInt::zero();
                    for x in &combo {
                        g = g.gcd(x);
                    }
                    let entries: Vec<i64> = combo
                        .iter()
                        .map(|x| i64::try_from(x / &g).expect("form entry fits in i64"))
                        .collect();
                    let delta = entries[pairs.len()..].to_vec();
                    let lam = entries[..pairs.len()].to_vec();
                    let cand = (delta, lam);
                    if best.as_ref().map_or(true, |b| cand < *b) {
                        best = Some(cand);
                    }
                }
            }
            for t in (0..s).rev() {
                if counter[t] < cmax {
                    counter[t] += 1;
                    continue 'combos;
                }
                counter[t] = -cmax;
            }
            break;
        }
        if best.is_some() {
            break;
        }
    }
    let Some((delta, lam)) = best else {
        return Err(Error::NoCompatibleLambda(
            u32::try_from(searched_to).unwrap_or(0),
        ));
    };
    let mut lambda = matrix::zeros(n, n);
    for (p, &(a, c)) in pairs.iter().enumerate() {
        lambda[a][c] = lam[p];
        lambda[c][a] = -lam[p];
    }
    let verified = check_compatibility(&lambda, b, unfrozen)?;
    if verified != delta {
        return Err(Error::Internal(
            "form search produced a mismatched delta".into(),
        ));
    }
    Ok((lambda, delta))
}

/// A seed: the current exchange matrix plus one torus element per vertex, all
/// expressed in the coordinates of the anchoring initial cluster.
///
/// Seeds compare equal when frame, exchange matrices, variables, and local
/// form agree; the mutation history is bookkeeping and is ignored.
#[derive(Debug, Clone)]
pub struct Seed {
    frame: Arc<Frame>,
    b_init: Matrix,
    b_full: Matrix,
    vars: Vec<TorusElement>,
    degs: Vec<Exponent>,
    lambda_local: Option<Matrix>,
    history: Vec<usize>,
}

impl PartialEq for Seed {
    fn eq(&self, other: &Self) -> bool {
        self.frame == other.frame
            && self.b_init == other.b_init
            && self.b_full == other.b_full
            && self.vars == other.vars
            && self.lambda_local == other.lambda_local
    }
}
impl Eq for Seed {}

impl Seed {
    /// The initial seed on `b`: variables are the torus generators. When the
    /// frame carries a form it must be compatible with `b`.
    pub fn new(frame: Arc<Frame>, b: Matrix) -> Result<Self> {
        let n = frame.n();
        if !matrix::is_square(&b) || b.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "exchange matrix is {}x? but the frame has {n} vertices",
                b.len()
            )));
        }
        matrix::check_skew_symmetrizable(&b, frame.d())?;
        ColumnSolver::new(&matrix::take_cols(&b, frame.unfrozen()))?;
        if let Some(l) = frame.lambda() {
            check_compatibility(l, &b, frame.unfrozen())?;
        }
        let vars = (0..n)
            .map(|i| TorusElement::generator(frame.clone(), i))
            .collect();
        let degs = (0..n).map(|i| exp_unit(n, i)).collect();
        let lambda_local = frame.lambda().cloned();
        Ok(Seed {
            frame,
            b_init: b.clone(),
            b_full: b,
            vars,
            degs,
            lambda_local,
            history: Vec::new(),
        })
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }
    pub fn n(&self) -> usize {
        self.frame.n()
    }
    pub fn b_full(&self) -> &Matrix {
        &self.b_full
    }
    pub fn b_init(&self) -> &Matrix {
        &self.b_init
    }
    pub fn btilde(&self) -> Matrix {
        matrix::take_cols(&self.b_full, self.frame.unfrozen())
    }
    pub fn vars(&self) -> &[TorusElement] {
        &self.vars
    }
    pub fn var(&self, i: usize) -> &TorusElement {
        &self.vars[i]
    }
    pub fn deg(&self, i: usize) -> &Exponent {
        &self.degs[i]
    }
    pub fn degs(&self) -> &[Exponent] {
        &self.degs
    }
    pub fn lambda_local(&self) -> Option<&Matrix> {
        self.lambda_local.as_ref()
    }
    pub fn history(&self) -> &[usize] {
        &self.history
    }

    /// Skew pairing of exponents in this seed's own cluster coordinates.
    pub fn local_pairing(&self, m1: &[i64], m2: &[i64]) -> i64 {
        pairing_with(self.lambda_local.as_ref(), m1, m2)
    }

    /// Verifies the local form against the current exchange matrix.
    pub fn check_compatibility(&self) -> Result<Vec<i64>> {
        let Some(l) = self.lambda_local.as_ref() else {
            return Err(Error::LambdaMissing);
        };
        check_compatibility(l, &self.b_full, self.frame.unfrozen())
    }

    /// The ordered product of this seed's variables with nonnegative
    /// exponents `m`, normalized so the coefficient at its top degree is 1.
    pub fn cluster_monomial(&self, m: &[i64]) -> Result<TorusElement> {
        let n = self.frame.n();
        if m.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "monomial exponent has length {} but the seed has {n} vertices",
                m.len()
            )));
        }
        if m.iter().any(|&x| x < 0) {
            return Err(Error::Schema(
                "cluster monomial exponents must be nonnegative".into(),
            ));
        }
        let mut acc = TorusElement::one(self.frame.clone());
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                acc = acc.twisted_mul(&self.vars[i])?;
            }
        }
        let mut deg = vec![0i64; n];
        for (i, &e) in m.iter().enumerate() {
            if e != 0 {
                for t in 0..n {
                    deg[t] += e * self.degs[i][t];
                }
            }
        }
        acc.pointed_normalize(&deg)
    }

    /// Mutation at an unfrozen vertex: replaces the variable by the exchange
    /// quotient, mutates the matrix, and pulls the local form forward.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let n = self.frame.n();
        if k >= n {
            return Err(Error::VertexOutOfRange(format!("vertex index {k}")));
        }
        if !self.frame.is_unfrozen(k) {
            return Err(Error::FrozenVertex(self.frame.vertices()[k].clone()));
        }
        let mut m1 = vec![0i64; n];
        let mut m2 = vec![0i64; n];
        for j in 0..n {
            m1[j] = pos_part(-self.b_full[j][k]);
            m2[j] = pos_part(self.b_full[j][k]);
        }
        let big1 = self.cluster_monomial(&m1)?;
        let big2 = self.cluster_monomial(&m2)?;
        let fk = exp_unit(n, k);
        let a1 = self.local_pairing(&exp_sub(&m1, &fk), &fk);
        let a2 = self.local_pairing(&exp_sub(&m2, &fk), &fk);
        let exchange = big1
            .scalar_mul(&ScalarPoly::v_power(a1))
            .add(&big2.scalar_mul(&ScalarPoly::v_power(a2)))?;
        let new_var = exchange.exact_divide(&self.vars[k], DivisionSide::Right)?;

        // Degree of the new variable: the dominance-larger of the two
        // candidate degrees, measured against the anchoring matrix.
        let deg_of = |mm: &[i64]| -> Exponent {
            let mut d = vec![0i64; n];
            for (i, &e) in mm.iter().enumerate() {
                if e != 0 {
                    for t in 0..n {
                        d[t] += e * self.degs[i][t];
                    }
                }
            }
            for t in 0..n {
                d[t] -= self.degs[k][t];
            }
            d
        };
        let d1 = deg_of(&m1);
        let d2 = deg_of(&m2);
        let solver = ColumnSolver::new(&matrix::take_cols(&self.b_init, self.frame.unfrozen()))?;
        let new_deg = if solver.solve_integer_nonneg(&exp_sub(&d2, &d1)).is_some() {
            d1
        } else if solver.solve_integer_nonneg(&exp_sub(&d1, &d2)).is_some() {
            d2
        } else {
            return Err(Error::Internal(
                "mutation degree candidates are dominance-incomparable".into(),
            ));
        };
        if !new_var.coeff(&new_deg).is_one() {
            return Err(Error::Internal(format!(
                "mutated variable is not normalized at its degree {new_deg:?}"
            )));
        }

        let mut vars = self.vars.clone();
        vars[k] = new_var;
        let mut degs = self.degs.clone();
        degs[k] = new_deg;
        let lambda_local = if self.frame.is_quantum() {
            let mut l = matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    l[i][j] = self.frame.pairing(&degs[i], &degs[j]);
                }
            }
            Some(l)
        } else {
            None
        };
        let mut history = self.history.clone();
        history.push(k);
        Ok(Seed {
            frame: self.frame.clone(),
            b_init: self.b_init.clone(),
            b_full: mutate_b(&self.b_full, k),
            vars,
            degs,
            lambda_local,
            history,
        })
    }

    /// Applies a sequence of mutations left to right.
    pub fn mutate_seq(&self, seq: &[usize]) -> Result<Seed> {
        let mut s = self.clone();
        for &k in seq {
            s = s.mutate(k)?;
        }
        Ok(s)
    }

    /// A fresh initial seed whose cluster is this seed's cluster: same
    /// exchange matrix, same local form, variables reset to generators.
    pub fn re_anchored(&self) -> Result<Seed> {
        let frame = Arc::new(self.frame.with_lambda(self.lambda_local.clone())?);
        Seed::new(frame, self.b_full.clone())
    }
}

/// A triangulated surface given combinatorially: arcs (some frozen, e.g.
/// boundary segments) and triangles listed with vertices in clockwise order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub arcs: Vec<String>,
    pub frozen_arcs: Vec<String>,
    pub triangles: Vec<[String; 3]>,
}

impl Triangulation {
    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for a in &self.arcs {
            if !seen.insert(a.as_str()) {
                return Err(Error::Schema(format!("duplicate arc id {a:?}")));
            }
        }
        for f in &self.frozen_arcs {
            if !seen.contains(f.as_str()) {
                return Err(Error::Schema(format!("frozen arc {f:?} is not an arc")));
            }
        }
        for t in &self.triangles {
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(Error::Schema(format!(
                    "triangle {t:?} repeats an arc (self-folded triangles are not supported)"
                )));
            }
            for a in t {
                if !seen.contains(a.as_str()) {
                    return Err(Error::Schema(format!("triangle uses unknown arc {a:?}")));
                }
            }
        }
        Ok(())
    }
}

/// The signed adjacency matrix of a triangulation, rows and columns in arc
/// order: each triangle contributes +1 at (i, j) when arc j follows arc i in
/// its clockwise reading, and -1 at (j, i).
pub fn triangulation_to_b(t: &Triangulation) -> Result<(Matrix, Vec<usize>)> {
    t.validate()?;
    let n = t.arcs.len();
    let index: std::collections::BTreeMap<&str, usize> = t
        .arcs
        .iter()
        .enumerate()
        .map(|(i, a)| (a.as_str(), i))
        .collect();
    let mut b = matrix::zeros(n, n);
    for tri in &t.triangles {
        for s in 0..3 {
            let i = index[tri[s].as_str()];
            let j = index[tri[(s + 1) % 3].as_str()];
            b[i][j] += 1;
            b[j][i] -= 1;
        }
    }
    let frozen: Vec<usize> = t
        .arcs
        .iter()
        .enumerate()
        .filter(|(_, a)| t.frozen_arcs.contains(a))
        .map(|(i, _)| i)
        .collect();
    Ok((b, frozen))
}

/// Builds the classical initial seed of a triangulation: vertices are the
/// arcs, boundary arcs frozen, all multipliers 1.
pub fn seed_from_triangulation(t: &Triangulation) -> Result<Seed> {
    let (b, frozen) = triangulation_to_b(t)?;
    let n = t.arcs.len();
    let unfrozen: Vec<usize> = (0..n).filter(|i| !frozen.contains(i)).collect();
    let frame = Frame::new(t.arcs.clone(), unfrozen, vec![1; n], None)?;
    Seed::new(Arc::new(frame), b)
}
