//! Pointedness: y-monomials, degree/F-polynomial extraction, the dominance
//! order, and piecewise-linear transport of degrees along mutations.

use crate::exactlin::ColumnSolver;
use crate::frame::Exponent;
use crate::matrix::Matrix;
use crate::scalar::ScalarPoly;
use crate::seed::{mutate_b, Seed};
use crate::torus::TorusElement;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// The y-monomial of `s` at an unfrozen vertex `k`: exponent is column `k`
/// of the current exchange matrix, in the seed's own cluster coordinates.
pub fn y_variable(s: &Seed, k: usize) -> Result<TorusElement> {
    let n = s.n();
    if k >= n {
        return Err(Error::VertexOutOfRange(format!("vertex index {k}")));
    }
    if !s.frame().is_unfrozen(k) {
        return Err(Error::FrozenVertex(s.frame().vertices()[k].clone()));
    }
    let exp: Exponent = (0..n).map(|j| s.b_full()[j][k]).collect();
    Ok(TorusElement::monomial(s.frame().clone(), exp))
}

/// A pointed element split into its top degree and F-coefficients: the input
/// is `X^g * sum_n c_n Y^n` with `n` running over nonnegative unfrozen
/// exponent vectors and `c_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedDecomposition {
    pub g: Exponent,
    pub f_poly: BTreeMap<Vec<i64>, ScalarPoly>,
}

impl PointedDecomposition {
    /// Rebuilds the torus element this decomposition came from, term by term.
    pub fn reassemble(&self, s: &Seed) -> TorusElement {
        let n = s.n();
        let unfrozen = s.frame().unfrozen();
        let terms = self.f_poly.iter().map(|(nv, c)| {
            let mut m = self.g.clone();
            for (pos, &k) in unfrozen.iter().enumerate() {
                if nv[pos] != 0 {
                    for i in 0..n {
                        m[i] += s.b_full()[i][k] * nv[pos];
                    }
                }
            }
            (m, c.clone())
        });
        TorusElement::from_terms(s.frame().clone(), terms)
    }
}

impl fmt::Display for PointedDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gs: Vec<String> = self.g.iter().map(|x| x.to_string()).collect();
        write!(f, "g=[{}]; F = ", gs.join(","))?;
        let mut first = true;
        for (nv, c) in &self.f_poly {
            let body = if nv.iter().all(|&x| x == 0) {
                c.to_string()
            } else {
                let ns: Vec<String> = nv.iter().map(|x| x.to_string()).collect();
                let ymon = format!("Y[{}]", ns.join(","));
                if c.is_one() {
                    ymon
                } else if c.is_constant() || c.as_single_term().is_some() {
                    format!("{c}*{ymon}")
                } else {
                    format!("({c})*{ymon}")
                }
            };
            if first {
                write!(f, "{body}")?;
                first = false;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// Finds the unique support exponent `g` of `z` with every other exponent of
/// the form `g + Btilde n`, `n >= 0`, and coefficient exactly 1 at `g`.
pub fn extract_pointed(z: &TorusElement, s: &Seed) -> Result<PointedDecomposition> {
    if z.frame() != s.frame() {
        return Err(Error::FrameMismatch);
    }
    if z.is_zero() {
        return Err(Error::NotPointed(
            "the zero element has no top degree".into(),
        ));
    }
    let solver = ColumnSolver::new(&s.btilde())?;
    let support: Vec<&Exponent> = z.support().collect();
    let mut found: Option<(Exponent, BTreeMap<Vec<i64>, ScalarPoly>)> = None;
    'cand: for g in &support {
        let mut f_poly = BTreeMap::new();
        for m in &support {
            let diff: Vec<i64> = m.iter().zip(g.iter()).map(|(a, b)| a - b).collect();
            let Some(nv) = solver.solve_integer_nonneg(&diff) else {
                continue 'cand;
            };
            f_poly.insert(nv, z.coeff(m));
        }
        if found.is_some() {
            return Err(Error::Internal(
                "two distinct degrees dominate the whole support".into(),
            ));
        }
        found = Some(((*g).clone(), f_poly));
    }
    let Some((g, f_poly)) = found else {
        return Err(Error::NotPointed(
            "no support exponent dominates the whole support".into(),
        ));
    };
    let lead = z.coeff(&g);
    if !lead.is_one() {
        return Err(Error::NotUnitLeading(lead.to_string(), "1".into()));
    }
    Ok(PointedDecomposition { g, f_poly })
}

/// True when `g1 = g2 + Btilde n` for some nonzero `n >= 0` over the
/// unfrozen indices of `s`.
pub fn dominance_less(g1: &[i64], g2: &[i64], s: &Seed) -> bool {
    let diff: Vec<i64> = g1.iter().zip(g2.iter()).map(|(a, b)| a - b).collect();
    let Ok(solver) = ColumnSolver::new(&s.btilde()) else {
        return false;
    };
    match solver.solve_integer_nonneg(&diff) {
        Some(nv) => nv.iter().any(|&x| x != 0),
        None => false,
    }
}

/// The piecewise-linear degree transformation attached to mutation at `k`.
pub fn tropical_transform(g: &[i64], k: usize, b_full: &Matrix) -> Exponent {
    let n = b_full.len();
    assert!(k < n, "vertex index in range");
    assert_eq!(g.len(), n, "degree length matches the matrix");
    let gk = g[k];
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        if i == k {
            out.push(-gk);
        } else {
            let c = if gk >= 0 {
                b_full[i][k].max(0)
            } else {
                (-b_full[i][k]).max(0)
            };
            out.push(g[i] + c * gk);
        }
    }
    out
}

/// A degree vector remembered together with the mutation path from the
/// anchoring seed it was measured at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalPoint {
    pub anchor: Vec<usize>,
    pub g: Exponent,
}

/// Transports `p` along `sequence`, reading each step's exchange matrix off
/// the path starting from `anchor_seed` (the seed at `p.anchor`).
pub fn transport(
    p: &TropicalPoint,
    sequence: &[usize],
    anchor_seed: &Seed,
) -> Result<TropicalPoint> {
    let n = anchor_seed.n();
    let mut b = anchor_seed.b_full().clone();
    let mut g = p.g.clone();
    if g.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "degree has length {} but the seed has {n} vertices",
            g.len()
        )));
    }
    for &k in sequence {
        if k >= n {
            return Err(Error::VertexOutOfRange(format!("vertex index {k}")));
        }
        if !anchor_seed.frame().is_unfrozen(k) {
            return Err(Error::FrozenVertex(
                anchor_seed.frame().vertices()[k].clone(),
            ));
        }
        g = tropical_transform(&g, k, &b);
        b = mutate_b(&b, k);
    }
    let mut anchor = p.anchor.clone();
    anchor.extend_from_slice(sequence);
    Ok(TropicalPoint { anchor, g })
}

/// Transport without the bookkeeping: starts at `s` with degree `g`.
pub fn transport_degree(g: &[i64], sequence: &[usize], s: &Seed) -> Result<Exponent> {
    let p = TropicalPoint {
        anchor: s.history().to_vec(),
        g: g.to_vec(),
    };
    Ok(transport(&p, sequence, s)?.g)
}
