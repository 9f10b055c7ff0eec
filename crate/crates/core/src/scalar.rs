//! Coefficients of the quantum torus: integer Laurent polynomials in `v`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// An element of `Z[v, v^-1]`, stored sparsely as v-exponent -> coefficient.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ScalarPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl ScalarPoly {
    pub fn zero() -> Self {
        ScalarPoly::default()
    }

    pub fn one() -> Self {
        ScalarPoly::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_bigint(BigInt::from(c))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        ScalarPoly { terms }
    }

    /// `v^a`.
    pub fn v_power(a: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(a, BigInt::one());
        ScalarPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).map(|c| c.is_one()).unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let acc = out.terms.entry(*e).or_insert_with(BigInt::zero);
            *acc += c;
            if acc.is_zero() {
                out.terms.remove(e);
            }
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ScalarPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ScalarPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1 + e2;
                let acc = out.terms.entry(e).or_insert_with(BigInt::zero);
                *acc += c1 * c2;
                if acc.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        out
    }

    /// Multiplication by `v^a`.
    pub fn shifted(&self, a: i64) -> Self {
        ScalarPoly {
            terms: self.terms.iter().map(|(e, c)| (e + a, c.clone())).collect(),
        }
    }

    /// The bar involution on coefficients: `v -> v^-1`.
    pub fn bar(&self) -> Self {
        ScalarPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn is_bar_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|(e, c)| self.terms.get(&-e) == Some(c))
    }

    /// Specialization `v = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// True when the polynomial is a plain integer (no v-dependence).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == 0)
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// When the polynomial is a single term `c * v^a`, returns `(a, c)`.
    pub fn as_single_term(&self) -> Option<(i64, BigInt)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((*e, c.clone()))
        } else {
            None
        }
    }

    /// When the polynomial is exactly `v^a` (unit coefficient), returns `a`.
    pub fn as_unit_v_power(&self) -> Option<i64> {
        match self.as_single_term() {
            Some((e, c)) if c.is_one() => Some(e),
            _ => None,
        }
    }

    /// Lies in `v^-1 Z[v^-1]`: all exponents strictly negative.
    pub fn in_strictly_negative_part(&self) -> bool {
        self.terms.keys().all(|e| *e < 0)
    }
}

impl fmt::Display for ScalarPoly {
    /// Canonical rendering: terms in ascending v-exponent, `+`-joined with the
    /// sign carried by the coefficient, e.g. `v^-1+v`, `-1+v^2`, `2`, `-3v^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let unit = abs.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{}", abs)?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{}v", abs)?,
                (_, true) => write!(f, "v^{}", e)?,
                (_, false) => write!(f, "{}v^{}", abs, e)?,
            }
        }
        Ok(())
    }
}
