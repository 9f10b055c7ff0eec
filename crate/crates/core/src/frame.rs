//! The ambient lattice of a computation: vertex set, frozen/unfrozen split,
//! symmetrizers, and the optional skew form that makes the torus quantum.

use crate::matrix::{self, Matrix};
use crate::{Error, Result};
use std::collections::BTreeSet;

/// A Laurent exponent vector, one entry per frame vertex.
pub type Exponent = Vec<i64>;

pub fn exp_add(a: &[i64], b: &[i64]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn exp_sub(a: &[i64], b: &[i64]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn exp_neg(a: &[i64]) -> Exponent {
    a.iter().map(|x| -x).collect()
}

/// The standard basis vector `f_i` in an `n`-dimensional lattice.
pub fn exp_unit(n: usize, i: usize) -> Exponent {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Shared, immutable description of the torus a `TorusElement` lives in.
///
/// Two frames are interchangeable exactly when they compare equal; elements
/// of distinct frames never mix. `lambda == None` is the classical
/// (commutative) frame.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    vertices: Vec<String>,
    unfrozen: Vec<usize>,
    d: Vec<i64>,
    lambda: Option<Matrix>,
}

impl Frame {
    pub fn new(
        vertices: Vec<String>,
        unfrozen: Vec<usize>,
        d: Vec<i64>,
        lambda: Option<Matrix>,
    ) -> Result<Frame> {
        let n = vertices.len();
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::Schema(format!("duplicate vertex id {v:?}")));
            }
        }
        if d.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} symmetrizer entries for {} vertices",
                d.len(),
                n
            )));
        }
        if let Some(bad) = d.iter().find(|x| **x <= 0) {
            return Err(Error::Schema(format!(
                "symmetrizer entries must be positive, found {bad}"
            )));
        }
        let mut uf = unfrozen;
        uf.sort_unstable();
        uf.dedup();
        if uf.iter().any(|&i| i >= n) {
            return Err(Error::Schema("unfrozen index out of range".into()));
        }
        if let Some(l) = &lambda {
            if l.len() != n || !matrix::is_square(l) {
                return Err(Error::DimensionMismatch(format!(
                    "skew form must be {n}x{n}"
                )));
            }
            if !matrix::is_skew_symmetric(l) {
                return Err(Error::Schema("skew form is not skew-symmetric".into()));
            }
        }
        Ok(Frame {
            vertices,
            unfrozen: uf,
            d,
            lambda,
        })
    }

    /// Number of vertices (the lattice rank).
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn unfrozen(&self) -> &[usize] {
        &self.unfrozen
    }

    pub fn is_unfrozen(&self, i: usize) -> bool {
        self.unfrozen.binary_search(&i).is_ok()
    }

    pub fn frozen(&self) -> Vec<usize> {
        (0..self.n()).filter(|i| !self.is_unfrozen(*i)).collect()
    }

    pub fn d(&self) -> &[i64] {
        &self.d
    }

    pub fn lambda(&self) -> Option<&Matrix> {
        self.lambda.as_ref()
    }

    pub fn is_quantum(&self) -> bool {
        self.lambda.is_some()
    }

    /// The skew pairing `m^T Lambda m'`; zero in the classical frame.
    pub fn pairing(&self, m: &[i64], m2: &[i64]) -> i64 {
        match &self.lambda {
            None => 0,
            Some(l) => {
                let mut acc: i128 = 0;
                for (i, mi) in m.iter().enumerate() {
                    if *mi == 0 {
                        continue;
                    }
                    for (j, mj) in m2.iter().enumerate() {
                        acc += (*mi as i128) * (l[i][j] as i128) * (*mj as i128);
                    }
                }
                i64::try_from(acc).expect("skew pairing overflow")
            }
        }
    }

    /// The same frame with the skew form removed.
    pub fn classical(&self) -> Frame {
        Frame {
            vertices: self.vertices.clone(),
            unfrozen: self.unfrozen.clone(),
            d: self.d.clone(),
            lambda: None,
        }
    }

    /// The same frame with a replacement skew form.
    pub fn with_lambda(&self, lambda: Option<Matrix>) -> Result<Frame> {
        Frame::new(
            self.vertices.clone(),
            self.unfrozen.clone(),
            self.d.clone(),
            lambda,
        )
    }
}
