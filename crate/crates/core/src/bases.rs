//! Chebyshev polynomials, the annulus loop/bangle/bracelet/band elements,
//! distinguished functions built from a reachability witness, expansion over
//! them to finite order, and the triangularity verifier.

use crate::explore::InjectiveWitness;
use crate::frame::Exponent;
use crate::scalar::ScalarPoly;
use crate::seed::Seed;
use crate::torus::TorusElement;
use crate::tropical::{self, PointedDecomposition};
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebyshevKind {
    First,
    Second,
}

/// A univariate integer polynomial, coefficients stored from the constant
/// term up.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly(Vec<i64>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }
    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }
    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![0i64; n];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0);
        }
        UniPoly::new(out)
    }
    pub fn mul(&self, other: &Self) -> Self {
        if self.0.is_empty() || other.0.is_empty() {
            return UniPoly(Vec::new());
        }
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
    /// Evaluates the polynomial at a torus element, using its twisted powers.
    pub fn eval_torus(&self, z: &TorusElement) -> Result<TorusElement> {
        let mut acc = TorusElement::zero(z.frame().clone());
        for (j, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let term = z.pow(j)?.scalar_mul(&ScalarPoly::from_int(c));
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mag = c.abs();
            let body = match (j, mag) {
                (0, m) => m.to_string(),
                (1, 1) => "z".to_string(),
                (1, m) => format!("{m}z"),
                (_, 1) => format!("z^{j}"),
                (_, m) => format!("{m}z^{j}"),
            };
            if first {
                if c < 0 {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        Ok(())
    }
}

/// The k-th Chebyshev polynomial of the requested kind, normalized so both
/// kinds satisfy p_{k+1} = z p_k - p_{k-1}.
pub fn chebyshev(kind: ChebyshevKind, k: i64) -> Result<UniPoly> {
    if k < 0 {
        return Err(Error::Schema("chebyshev index must be nonnegative".into()));
    }
    let mut prev = UniPoly::new(match kind {
        ChebyshevKind::First => vec![2],
        ChebyshevKind::Second => vec![1],
    });
    if k == 0 {
        return Ok(prev);
    }
    let mut cur = UniPoly::new(vec![0, 1]);
    for _ in 1..k {
        let z = UniPoly::new(vec![0, 1]);
        let next = z.mul(&cur).add(&prev.mul(&UniPoly::new(vec![-1])));
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

fn require_kronecker_shape(s: &Seed) -> Result<()> {
    let want = vec![vec![0, -2], vec![2, 0]];
    if s.n() != 2 || s.frame().unfrozen() != [0, 1] || s.b_full() != &want {
        return Err(Error::WrongSeedShape(
            "expected the rank-2 seed with exchange matrix [[0,-2],[2,0]] and no frozen vertices"
                .into(),
        ));
    }
    Ok(())
}

/// The loop element of the annulus core: support (1,-1), (-1,-1), (-1,1),
/// all coefficients 1. Bar-invariant in the quantum case.
pub fn loop_element(s: &Seed) -> Result<TorusElement> {
    require_kronecker_shape(s)?;
    let one = ScalarPoly::one;
    Ok(TorusElement::from_terms(
        s.frame().clone(),
        vec![
            (vec![1, -1], one()),
            (vec![-1, -1], one()),
            (vec![-1, 1], one()),
        ],
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnnulusKind {
    Bangle,
    Bracelet,
    Band,
}

/// The k-th bangle ([L]^k), bracelet (T_k([L])), or band (U_k([L])) element.
pub fn annulus_element(kind: AnnulusKind, k: i64, s: &Seed) -> Result<TorusElement> {
    if k < 1 {
        return Err(Error::Schema(
            "annulus element index must be at least 1".into(),
        ));
    }
    let l = loop_element(s)?;
    match kind {
        AnnulusKind::Bangle => l.pow(k as usize),
        AnnulusKind::Bracelet => chebyshev(ChebyshevKind::First, k)?.eval_torus(&l),
        AnnulusKind::Band => chebyshev(ChebyshevKind::Second, k)?.eval_torus(&l),
    }
}

/// Distinguished functions over a seed: products of cluster monomials from
/// the seed with injective variables read off the reachability witness.
pub struct DistinguishedContext {
    anchor: Seed,
    /// Per unfrozen position: the witness variable of that vertex, pointed
    /// with principal degree -f_k, and its full degree.
    injectives: Vec<(TorusElement, Exponent)>,
}

impl DistinguishedContext {
    /// Re-anchors `s` and walks the witness sequence; inputs to the other
    /// methods are read in the seed's own cluster coordinates.
    pub fn new(s: &Seed, witness: &InjectiveWitness) -> Result<Self> {
        let anchor = s.re_anchored()?;
        let t1 = anchor.mutate_seq(&witness.sequence)?;
        let unfrozen = anchor.frame().unfrozen().to_vec();
        let mut injectives = Vec::with_capacity(unfrozen.len());
        for (kpos, &k) in unfrozen.iter().enumerate() {
            let Some(&i) = witness.sigma.get(&k) else {
                return Err(Error::Schema(format!(
                    "witness permutation is missing unfrozen vertex {k}"
                )));
            };
            let deg = t1.deg(i).clone();
            for (jpos, &j) in unfrozen.iter().enumerate() {
                let want = if jpos == kpos { -1 } else { 0 };
                if deg[j] != want {
                    return Err(Error::Schema(format!(
                        "witness variable for vertex {k} has principal degree {:?}, not the negated unit",
                        unfrozen.iter().map(|&u| deg[u]).collect::<Vec<_>>()
                    )));
                }
            }
            injectives.push((t1.var(i).clone(), deg));
        }
        Ok(DistinguishedContext { anchor, injectives })
    }

    pub fn anchor(&self) -> &Seed {
        &self.anchor
    }

    /// The distinguished function pointed at `g`: the product of the cluster
    /// monomial on the positive principal part and the ordered injective
    /// product on the negative part, adjusted by a frozen monomial to land
    /// exactly at `g`.
    pub fn function(&self, g: &[i64]) -> Result<TorusElement> {
        let n = self.anchor.n();
        if g.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "degree has length {} but the seed has {n} vertices",
                g.len()
            )));
        }
        let unfrozen = self.anchor.frame().unfrozen().to_vec();
        let mut mpos = vec![0i64; n];
        for &k in &unfrozen {
            mpos[k] = g[k].max(0);
        }
        let mut prod = self.anchor.cluster_monomial(&mpos)?;
        let mut deg: Exponent = mpos.clone();
        for (kpos, &k) in unfrozen.iter().enumerate() {
            let reps = (-g[k]).max(0);
            for _ in 0..reps {
                let (inj, inj_deg) = &self.injectives[kpos];
                prod = prod.twisted_mul(inj)?;
                for t in 0..n {
                    deg[t] += inj_deg[t];
                }
            }
        }
        // Frozen-only correction to reach g exactly.
        let shift: Exponent = (0..n).map(|t| g[t] - deg[t]).collect();
        if unfrozen.iter().any(|&k| shift[k] != 0) {
            return Err(Error::Internal(
                "distinguished degree correction is not frozen-supported".into(),
            ));
        }
        let adjusted =
            TorusElement::monomial(self.anchor.frame().clone(), shift).twisted_mul(&prod)?;
        adjusted.pointed_normalize(g)
    }

    /// Greedy expansion of a pointed element over distinguished functions,
    /// to order `trunc` in the dominance offset.
    pub fn expand(&self, z: &TorusElement, trunc: usize) -> Result<DistinguishedExpansion> {
        let decomp = tropical::extract_pointed(z, &self.anchor)?;
        let base_g = decomp.g.clone();
        let solver = crate::exactlin::ColumnSolver::new(&self.anchor.btilde())?;
        let mut remainder = z.clone();
        let mut terms: BTreeMap<Exponent, ScalarPoly> = BTreeMap::new();
        loop {
            // Pick the support degree with the smallest dominance offset.
            let mut pick: Option<(u64, Vec<i64>, Exponent)> = None;
            for m in remainder.support() {
                let diff: Vec<i64> = m.iter().zip(base_g.iter()).map(|(a, b)| a - b).collect();
                let Some(nv) = solver.solve_integer_nonneg(&diff) else {
                    return Err(Error::NotPointed(format!(
                        "remainder support {m:?} left the dominance cone of {base_g:?}"
                    )));
                };
                let order: u64 = nv.iter().map(|&x| x as u64).sum();
                if order as usize > trunc {
                    continue;
                }
                let key = (order, nv, m.clone());
                if pick.as_ref().map_or(true, |p| key < *p) {
                    pick = Some(key);
                }
            }
            let Some((_, _, gprime)) = pick else {
                break;
            };
            let c = remainder.coeff(&gprime);
            let func = self.function(&gprime)?;
            remainder = remainder.sub(&func.scalar_mul(&c))?;
            terms.insert(gprime, c);
        }
        Ok(DistinguishedExpansion {
            base_g,
            terms,
            truncation: trunc,
            remainder,
        })
    }
}

pub fn distinguished_function(
    s: &Seed,
    witness: &InjectiveWitness,
    g: &[i64],
) -> Result<TorusElement> {
    DistinguishedContext::new(s, witness)?.function(g)
}

pub fn expand_in_distinguished(
    z: &TorusElement,
    s: &Seed,
    witness: &InjectiveWitness,
    trunc: usize,
) -> Result<DistinguishedExpansion> {
    DistinguishedContext::new(s, witness)?.expand(z, trunc)
}

/// A finite-order expansion over distinguished functions; support beyond the
/// truncation window stays in `remainder`.
#[derive(Debug, Clone)]
pub struct DistinguishedExpansion {
    pub base_g: Exponent,
    pub terms: BTreeMap<Exponent, ScalarPoly>,
    pub truncation: usize,
    pub remainder: TorusElement,
}

impl DistinguishedExpansion {
    pub fn is_exact(&self) -> bool {
        self.remainder.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    Inconclusive(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
    pub fn failed(&self) -> bool {
        matches!(self, Verdict::Fail(_))
    }
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail(_) => "fail",
            Verdict::Inconclusive(_) => "inconclusive",
        }
    }
    pub fn reason(&self) -> Option<&str> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(r) | Verdict::Inconclusive(r) => Some(r),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MemberReport {
    /// Degree of the member when extraction succeeds.
    pub degree: Option<Exponent>,
    pub pointed: Verdict,
    pub bar_invariant: Verdict,
    pub multiplication: Verdict,
}

#[derive(Debug, Clone)]
pub struct TriangularReport {
    pub members: Vec<MemberReport>,
    pub truncation: usize,
}

impl TriangularReport {
    pub fn all_pass(&self) -> bool {
        self.members
            .iter()
            .all(|m| m.pointed.passed() && m.bar_invariant.passed() && m.multiplication.passed())
    }
    pub fn any_fail(&self) -> bool {
        self.members
            .iter()
            .any(|m| m.pointed.failed() || m.bar_invariant.failed() || m.multiplication.failed())
    }
}

/// Checks a candidate family against the triangularity conditions: each
/// member pointed with unit coefficient, bar-invariant, and multiplication by
/// every initial variable expands over the family with top coefficient 1 and
/// the rest in v^{-1} Z[v^{-1}], to the requested order.
pub fn verify_triangular(
    family: &[TorusElement],
    s: &Seed,
    witness: &InjectiveWitness,
    trunc: usize,
) -> Result<TriangularReport> {
    let ctx = DistinguishedContext::new(s, witness)?;
    let anchor = ctx.anchor();
    let n = anchor.n();
    let solver = crate::exactlin::ColumnSolver::new(&anchor.btilde())?;

    // Index members by degree; a duplicate degree makes expansion ambiguous.
    let mut decomps: Vec<Option<PointedDecomposition>> = Vec::with_capacity(family.len());
    let mut by_degree: BTreeMap<Exponent, usize> = BTreeMap::new();
    for (idx, z) in family.iter().enumerate() {
        match tropical::extract_pointed(z, anchor) {
            Ok(d) => {
                if let Some(prev) = by_degree.insert(d.g.clone(), idx) {
                    return Err(Error::DuplicateDegree(format!(
                        "members {prev} and {idx} are both pointed at {:?}",
                        d.g
                    )));
                }
                decomps.push(Some(d));
            }
            Err(_) => decomps.push(None),
        }
    }

    let mut members = Vec::with_capacity(family.len());
    for (idx, z) in family.iter().enumerate() {
        let (degree, pointed) = match &decomps[idx] {
            Some(d) => (Some(d.g.clone()), Verdict::Pass),
            None => (
                None,
                Verdict::Fail("not pointed with unit leading coefficient".into()),
            ),
        };
        let bar_invariant = if z.is_bar_invariant() {
            Verdict::Pass
        } else {
            Verdict::Fail("not fixed by the bar involution".into())
        };
        let multiplication = match &degree {
            None => Verdict::Inconclusive("pointedness failed".into()),
            Some(g) => verify_products(z, g, family, &by_degree, anchor, &solver, trunc, n),
        };
        members.push(MemberReport {
            degree,
            pointed,
            bar_invariant,
            multiplication,
        });
    }
    Ok(TriangularReport {
        members,
        truncation: trunc,
    })
}

#[allow(clippy::too_many_arguments)]
fn verify_products(
    z: &TorusElement,
    g: &Exponent,
    family: &[TorusElement],
    by_degree: &BTreeMap<Exponent, usize>,
    anchor: &Seed,
    solver: &crate::exactlin::ColumnSolver,
    trunc: usize,
    n: usize,
) -> Verdict {
    for i in 0..n {
        let xi = TorusElement::generator(anchor.frame().clone(), i);
        let prod = match xi.twisted_mul(z) {
            Ok(p) => p,
            Err(e) => return Verdict::Fail(format!("product with X_{i} failed: {e}")),
        };
        let mut target = g.clone();
        target[i] += 1;
        let mut rem = match prod.pointed_normalize(&target) {
            Ok(p) => p,
            Err(_) => {
                return Verdict::Fail(format!(
                    "product with X_{i} has no unit coefficient at the expected degree"
                ))
            }
        };
        // Greedy expansion over the family by degree matching.
        let mut top = true;
        loop {
            let mut pick: Option<(u64, Vec<i64>, Exponent)> = None;
            for m in rem.support() {
                let diff: Vec<i64> = m.iter().zip(target.iter()).map(|(a, b)| a - b).collect();
                let Some(nv) = solver.solve_integer_nonneg(&diff) else {
                    return Verdict::Fail(format!(
                        "product with X_{i} leaves support outside the dominance cone"
                    ));
                };
                let order: u64 = nv.iter().map(|&x| x as u64).sum();
                if order as usize > trunc {
                    continue;
                }
                let key = (order, nv, m.clone());
                if pick.as_ref().map_or(true, |p| key < *p) {
                    pick = Some(key);
                }
            }
            let Some((_, _, gp)) = pick else {
                break;
            };
            let c = rem.coeff(&gp);
            if top {
                if !c.is_one() {
                    return Verdict::Fail(format!(
                        "product with X_{i}: top coefficient at {gp:?} is {c}, not 1"
                    ));
                }
                top = false;
            } else if !c.in_strictly_negative_part() {
                return Verdict::Fail(format!(
                    "product with X_{i}: coefficient {c} at {gp:?} is not in v^-1 Z[v^-1]"
                ));
            }
            let Some(&idx) = by_degree.get(&gp) else {
                return Verdict::Inconclusive(format!(
                    "product with X_{i} needs a family member pointed at {gp:?}"
                ));
            };
            rem = match rem.sub(&family[idx].scalar_mul(&c)) {
                Ok(r) => r,
                Err(e) => return Verdict::Fail(format!("expansion arithmetic failed: {e}")),
            };
        }
    }
    Verdict::Pass
}
