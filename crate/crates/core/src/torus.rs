//! Elements of the ambient (quantum) torus: Laurent polynomials in the
//! initial cluster variables with `Z[v, v^-1]` coefficients.

use crate::frame::{exp_add, exp_sub, exp_unit, Exponent, Frame};
use crate::scalar::ScalarPoly;
use crate::{Error, Result};
use num_traits::{One, Signed};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Which side the quotient sits on in an exact division.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisionSide {
    /// `divisor * q = numerator`
    Left,
    /// `q * divisor = numerator`
    Right,
}

/// A finite sum `sum_m c_m(v) X^m`. Exponents are indexed by the frame's
/// vertices; the map never stores zero coefficients.
///
/// The `BTreeMap` key order is lexicographic on exponent vectors, which is
/// also the term order used by exact division and rendering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusElement {
    frame: Arc<Frame>,
    terms: BTreeMap<Exponent, ScalarPoly>,
}

impl TorusElement {
    pub fn zero(frame: Arc<Frame>) -> Self {
        TorusElement {
            frame,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(frame: Arc<Frame>) -> Self {
        let n = frame.n();
        Self::monomial(frame, vec![0; n])
    }

    /// `X^m` with coefficient 1.
    pub fn monomial(frame: Arc<Frame>, m: Exponent) -> Self {
        Self::with_scalar(frame, m, ScalarPoly::one())
    }

    /// `c(v) * X^m`.
    pub fn with_scalar(frame: Arc<Frame>, m: Exponent, c: ScalarPoly) -> Self {
        assert_eq!(m.len(), frame.n(), "exponent length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TorusElement { frame, terms }
    }

    /// The initial cluster variable `X_i`.
    pub fn generator(frame: Arc<Frame>, i: usize) -> Self {
        let n = frame.n();
        Self::monomial(frame, exp_unit(n, i))
    }

    pub fn from_terms<I>(frame: Arc<Frame>, it: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, ScalarPoly)>,
    {
        let mut out = Self::zero(frame);
        for (m, c) in it {
            out.add_term(&m, &c);
        }
        out
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &ScalarPoly)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &[i64]) -> ScalarPoly {
        self.terms.get(m).cloned().unwrap_or_else(ScalarPoly::zero)
    }

    /// Largest exponent in the lexicographic term order.
    pub fn lex_leading(&self) -> Option<(&Exponent, &ScalarPoly)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: &[i64], c: &ScalarPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(acc) => {
                let sum = acc.add(c);
                if sum.is_zero() {
                    self.terms.remove(m);
                } else {
                    *acc = sum;
                }
            }
            None => {
                self.terms.insert(m.to_vec(), c.clone());
            }
        }
    }

    fn check_frame(&self, other: &Self) -> Result<()> {
        if self.frame == other.frame {
            Ok(())
        } else {
            Err(Error::FrameMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_frame(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TorusElement {
            frame: self.frame.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    /// Multiplication by a central scalar `c(v)`.
    pub fn scalar_mul(&self, c: &ScalarPoly) -> Self {
        let mut out = Self::zero(self.frame.clone());
        for (m, cm) in &self.terms {
            out.add_term(m, &cm.mul(c));
        }
        out
    }

    /// The twisted product: `X^m * X^m' = v^{L(m, m')} X^{m + m'}` extended
    /// bilinearly. In a classical frame the pairing is zero and this is the
    /// ordinary Laurent product.
    pub fn twisted_mul(&self, other: &Self) -> Result<Self> {
        self.check_frame(other)?;
        let mut out = Self::zero(self.frame.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let twist = self.frame.pairing(m1, m2);
                let c = c1.mul(c2).shifted(twist);
                out.add_term(&exp_add(m1, m2), &c);
            }
        }
        Ok(out)
    }

    /// Convenience power with nonnegative exponent.
    pub fn pow(&self, k: usize) -> Result<Self> {
        let mut acc = Self::one(self.frame.clone());
        for _ in 0..k {
            acc = acc.twisted_mul(self)?;
        }
        Ok(acc)
    }

    /// The bar involution: `v^a X^m -> v^-a X^m`. It is an anti-automorphism
    /// of the twisted product and the identity on classical elements.
    pub fn bar(&self) -> Self {
        TorusElement {
            frame: self.frame.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.bar()))
                .collect(),
        }
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.terms.values().all(|c| c.is_bar_symmetric())
    }

    /// Scales the element by `v^-a` so that the coefficient at `leading`
    /// becomes exactly 1. The coefficient there must be a single `+v^a` term.
    pub fn pointed_normalize(&self, leading: &[i64]) -> Result<Self> {
        let c = self
            .terms
            .get(leading)
            .ok_or_else(|| Error::LeadingAbsent(format!("{leading:?}")))?;
        match c.as_single_term() {
            Some((a, unit)) if unit.is_one() => Ok(self.scalar_mul(&ScalarPoly::v_power(-a))),
            _ => Err(Error::NotUnitLeading(format!("{leading:?}"), c.to_string())),
        }
    }

    /// Exact division in the twisted torus: finds `q` with `q * divisor`
    /// (right) or `divisor * q` (left) equal to `self`. The divisor's lex
    /// leading coefficient must be a unit `+-v^a`; a nonzero remainder is an
    /// error.
    ///
    /// Termination: exponents of any exact quotient lie in the box
    /// `[min(num) - min(div), max(num) - max(div)]` componentwise (Newton
    /// polytopes add under multiplication over a domain), remainder support
    /// stays inside a fixed finite set, and the remainder's lex leading term
    /// strictly decreases each step.
    pub fn exact_divide(&self, divisor: &Self, side: DivisionSide) -> Result<Self> {
        self.check_frame(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.frame.clone()));
        }
        let (m_d, c_d) = divisor.lex_leading().unwrap();
        let m_d = m_d.clone();
        let (a_d, sign_unit) = match c_d.as_single_term() {
            Some((a, c)) if c.abs().is_one() => (a, c.is_one()),
            _ => return Err(Error::NonInvertibleLeading(c_d.to_string())),
        };

        let n = self.frame.n();
        let bounds = |e: &TorusElement| -> (Vec<i64>, Vec<i64>) {
            let mut lo = vec![i64::MAX; n];
            let mut hi = vec![i64::MIN; n];
            for m in e.terms.keys() {
                for i in 0..n {
                    lo[i] = lo[i].min(m[i]);
                    hi[i] = hi[i].max(m[i]);
                }
            }
            (lo, hi)
        };
        let (nlo, nhi) = bounds(self);
        let (dlo, dhi) = bounds(divisor);
        let qlo: Vec<i64> = nlo.iter().zip(&dlo).map(|(a, b)| a - b).collect();
        let qhi: Vec<i64> = nhi.iter().zip(&dhi).map(|(a, b)| a - b).collect();
        if qlo.iter().zip(&qhi).any(|(l, h)| l > h) {
            return Err(Error::DivisionRemainder);
        }

        let mut rem = self.clone();
        let mut q = Self::zero(self.frame.clone());
        while let Some((m_r, c_r)) = rem.lex_leading() {
            let m_q = exp_sub(m_r, &m_d);
            if m_q
                .iter()
                .zip(qlo.iter().zip(&qhi))
                .any(|(x, (l, h))| x < l || x > h)
            {
                return Err(Error::DivisionRemainder);
            }
            let twist = match side {
                DivisionSide::Right => self.frame.pairing(&m_q, &m_d),
                DivisionSide::Left => self.frame.pairing(&m_d, &m_q),
            };
            let mut c_q = c_r.shifted(-a_d - twist);
            if !sign_unit {
                c_q = c_q.neg();
            }
            let q_term = Self::with_scalar(self.frame.clone(), m_q, c_q);
            let prod = match side {
                DivisionSide::Right => q_term.twisted_mul(divisor)?,
                DivisionSide::Left => divisor.twisted_mul(&q_term)?,
            };
            rem = rem.sub(&prod)?;
            q = q.add(&q_term)?;
        }
        Ok(q)
    }

    /// Specialization `v = 1` into the commutative twin frame.
    pub fn specialize_classical(&self) -> Self {
        let frame = Arc::new(self.frame.classical());
        let mut out = Self::zero(frame);
        for (m, c) in &self.terms {
            out.add_term(m, &ScalarPoly::from_bigint(c.eval_at_one()));
        }
        out
    }

    /// Moves the element verbatim into another frame with identical vertex
    /// data (used to attach or drop a skew form when the coefficients are
    /// v-free or the caller knows the move is legitimate).
    pub fn reframed(&self, frame: Arc<Frame>) -> Result<Self> {
        if frame.n() != self.frame.n() {
            return Err(Error::FrameMismatch);
        }
        Ok(TorusElement {
            frame,
            terms: self.terms.clone(),
        })
    }
}

impl fmt::Display for TorusElement {
    /// Canonical rendering: terms in descending lexicographic exponent order,
    /// e.g. `(v^-1+v)*X[1,0,-2] + X[0,0,0]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let (neg, body) = render_term(m, c);
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

fn render_term(m: &[i64], c: &ScalarPoly) -> (bool, String) {
    let xs: Vec<String> = m.iter().map(|x| x.to_string()).collect();
    let x = format!("X[{}]", xs.join(","));
    match c.as_single_term() {
        Some((_, unit)) => {
            let neg = unit.is_negative();
            let abs = if neg { c.neg() } else { c.clone() };
            if abs.is_one() {
                (neg, x)
            } else {
                (neg, format!("{abs}*{x}"))
            }
        }
        None => (false, format!("({c})*{x}")),
    }
}
