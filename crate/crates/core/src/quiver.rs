//! Acyclic quivers and their integer-matrix representations.
//!
//! Injective modules are realized on path spaces: the k-th injective has the
//! paths `j -> k` as its basis over vertex `j`, and an arrow acts by stripping
//! itself off the front of a path. Socles, minimal injective copresentations,
//! and integer bases of Hom spaces between sums of injectives are all computed
//! by exact linear algebra, so downstream consumers (the character map) never
//! leave `Z`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactlin::{self, br_int};
use crate::matrix::{self, Matrix};
use crate::seed::Seed;
use crate::{Error, Result};

/// Finite quiver with named vertices; arrows are stored as index pairs and
/// their order is meaningful (representations list one matrix per arrow).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// Validates names, arrow endpoints, and acyclicity.
    pub fn new(vertices: Vec<String>, arrows: Vec<(usize, usize)>) -> Result<Quiver> {
        let n = vertices.len();
        for i in 0..n {
            for j in (i + 1)..n {
                if vertices[i] == vertices[j] {
                    return Err(Error::Schema(format!(
                        "duplicate quiver vertex {:?}",
                        vertices[i]
                    )));
                }
            }
        }
        for &(u, w) in &arrows {
            if u >= n || w >= n {
                return Err(Error::Schema(format!(
                    "arrow ({u}, {w}) references a vertex out of range (quiver has {n})"
                )));
            }
        }
        let q = Quiver { vertices, arrows };
        if q.has_cycle() {
            return Err(Error::NonAcyclicQuiver);
        }
        Ok(q)
    }

    fn has_cycle(&self) -> bool {
        // Kahn's algorithm: a cycle is exactly a nonempty leftover.
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for &(_, w) in &self.arrows {
            indeg[w] += 1;
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &(u, w) in &self.arrows {
                if u == v {
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        queue.push(w);
                    }
                }
            }
        }
        seen < n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self.arrows.iter().map(|&(u, w)| (w, u)).collect(),
        }
    }

    /// True when `other` is this quiver with every arrow reversed.
    pub fn is_opposite(&self, other: &Quiver) -> bool {
        self.same_shape(&other.opposite())
    }

    /// Equality up to reordering of the arrow list.
    pub fn same_shape(&self, other: &Quiver) -> bool {
        if self.vertices != other.vertices {
            return false;
        }
        let mut a = self.arrows.clone();
        let mut b = other.arrows.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    fn arrows_out(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&a| self.arrows[a].0 == v)
            .collect()
    }
}

/// The quiver on the unfrozen vertices of `s`: a positive exchange entry
/// `b[i][j]` contributes that many arrows `i -> j`.
pub fn principal_quiver(s: &Seed) -> Quiver {
    let uf = s.frame().unfrozen();
    let names: Vec<String> = uf
        .iter()
        .map(|&i| s.frame().vertices()[i].clone())
        .collect();
    let b = s.b_full();
    let mut arrows = Vec::new();
    for (pi, &i) in uf.iter().enumerate() {
        for (pj, &j) in uf.iter().enumerate() {
            let e = b[i][j];
            for _ in 0..e.max(0) {
                arrows.push((pi, pj));
            }
        }
    }
    Quiver {
        vertices: names,
        arrows,
    }
}

/// Representation of an acyclic quiver by integer matrices: `maps[a]` sends
/// the fiber over the source of arrow `a` to the fiber over its target, so it
/// has `dims[target]` rows and `dims[source]` columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverRep {
    quiver: Quiver,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl QuiverRep {
    pub fn new(quiver: Quiver, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<QuiverRep> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} dimensions given for {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices given for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (a, &(u, w)) in quiver.arrows().iter().enumerate() {
            let m = &maps[a];
            if m.len() != dims[w] || m.iter().any(|row| row.len() != dims[u]) {
                return Err(Error::DimensionMismatch(format!(
                    "matrix for arrow {a} must be {}x{}",
                    dims[w], dims[u]
                )));
            }
        }
        Ok(QuiverRep { quiver, dims, maps })
    }

    pub fn zero(quiver: Quiver) -> QuiverRep {
        let n = quiver.vertex_count();
        let maps = vec![Vec::new(); quiver.arrows().len()];
        QuiverRep {
            quiver,
            dims: vec![0; n],
            maps,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Block-diagonal sum; both summands must live on the same quiver.
    pub fn direct_sum(&self, other: &QuiverRep) -> Result<QuiverRep> {
        if !self.quiver.same_shape(&other.quiver) || self.quiver.arrows() != other.quiver.arrows() {
            return Err(Error::DimensionMismatch(
                "direct sum requires identical quivers".into(),
            ));
        }
        let dims: Vec<usize> = (0..self.dims.len())
            .map(|v| self.dims[v] + other.dims[v])
            .collect();
        let mut maps = Vec::with_capacity(self.maps.len());
        for (a, &(u, w)) in self.quiver.arrows().iter().enumerate() {
            let mut m = matrix::zeros(dims[w], dims[u]);
            for r in 0..self.dims[w] {
                for c in 0..self.dims[u] {
                    m[r][c] = self.maps[a][r][c];
                }
            }
            for r in 0..other.dims[w] {
                for c in 0..other.dims[u] {
                    m[self.dims[w] + r][self.dims[u] + c] = other.maps[a][r][c];
                }
            }
            maps.push(m);
        }
        QuiverRep::new(self.quiver.clone(), dims, maps)
    }

    /// Dimension of the largest semisimple subrepresentation at each vertex:
    /// the joint kernel of the outgoing arrow maps.
    pub fn socle_dims(&self) -> Vec<usize> {
        (0..self.dims.len())
            .map(|v| {
                let mut stacked: Matrix = Vec::new();
                for a in self.quiver.arrows_out(v) {
                    stacked.extend(self.maps[a].iter().cloned());
                }
                if stacked.is_empty() {
                    self.dims[v]
                } else {
                    self.dims[v] - exactlin::rank(&stacked)
                }
            })
            .collect()
    }
}

/// All directed paths `j -> k`, for every start `j`, as arrow-index sequences
/// in traversal order (the empty path appears at `j = k`). Deterministic:
/// arrows are explored in index order.
fn paths_to(q: &Quiver, k: usize) -> Vec<Vec<Vec<usize>>> {
    let n = q.vertex_count();
    let mut out = vec![Vec::new(); n];
    for j in 0..n {
        let mut stack = vec![(j, Vec::new())];
        while let Some((v, path)) = stack.pop() {
            if v == k {
                out[j].push(path.clone());
            }
            // Reverse order keeps the pop order aligned with arrow indices.
            for a in q.arrows_out(v).into_iter().rev() {
                let mut next = path.clone();
                next.push(a);
                stack.push((q.arrows()[a].1, next));
            }
        }
    }
    out
}

/// The k-th indecomposable injective: paths into `k` with arrows acting by
/// left cancellation (`a` sends a path starting with `a` to its tail).
pub fn injective_rep(q: &Quiver, k: usize) -> Result<QuiverRep> {
    if k >= q.vertex_count() {
        return Err(Error::VertexOutOfRange(format!(
            "injective index {k} for a quiver on {} vertices",
            q.vertex_count()
        )));
    }
    let paths = paths_to(q, k);
    let dims: Vec<usize> = paths.iter().map(|p| p.len()).collect();
    let mut maps = Vec::with_capacity(q.arrows().len());
    for (a, &(u, w)) in q.arrows().iter().enumerate() {
        let mut m = matrix::zeros(dims[w], dims[u]);
        for (c, p) in paths[u].iter().enumerate() {
            if p.first() == Some(&a) {
                let tail = &p[1..];
                let r = paths[w]
                    .iter()
                    .position(|t| t.as_slice() == tail)
                    .expect("tail of a path into k is a path into k");
                m[r][c] = 1;
            }
        }
        maps.push(m);
    }
    QuiverRep::new(q.clone(), dims, maps)
}

/// `I^mult = sum_k I_k^{mult[k]}`, blocks ordered by vertex then copy.
pub fn injective_sum(q: &Quiver, mult: &[usize]) -> Result<QuiverRep> {
    if mult.len() != q.vertex_count() {
        return Err(Error::DimensionMismatch(format!(
            "{} multiplicities for {} vertices",
            mult.len(),
            q.vertex_count()
        )));
    }
    let mut acc = QuiverRep::zero(q.clone());
    for (k, &m) in mult.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let ik = injective_rep(q, k)?;
        for _ in 0..m {
            acc = acc.direct_sum(&ik)?;
        }
    }
    Ok(acc)
}

fn rat_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    exactlin::rref(&mut a).len()
}

/// Inverse of a square rational matrix via Gauss-Jordan on `[m | I]`.
fn rat_inverse(m: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row = m[i].clone();
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
    let pivots = exactlin::rref(&mut aug);
    if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Product of the arrow matrices along `path` as a map fiber(j) -> fiber(k).
fn path_matrix(rep: &QuiverRep, j: usize, path: &[usize]) -> Vec<Vec<BigInt>> {
    let mut cur: Vec<Vec<BigInt>> = (0..rep.dims[j])
        .map(|r| {
            (0..rep.dims[j])
                .map(|c| {
                    if r == c {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut at = j;
    for &a in path {
        let (u, w) = rep.quiver.arrows()[a];
        debug_assert_eq!(u, at);
        let step = &rep.maps[a];
        let mut next = vec![vec![BigInt::zero(); rep.dims[j]]; rep.dims[w]];
        for (r, step_row) in step.iter().enumerate() {
            for c in 0..rep.dims[j] {
                let mut acc = BigInt::zero();
                for (s, coeff) in step_row.iter().enumerate() {
                    if *coeff != 0 {
                        acc += BigInt::from(*coeff) * &cur[s][c];
                    }
                }
                next[r][c] = acc;
            }
        }
        cur = next;
        at = w;
    }
    cur
}

/// Multiplicity vectors `(m, m')` of a minimal injective copresentation
/// `0 -> V -> I^m -> I^m'`, computed over the rationals: `m` is the socle of
/// `V`, the embedding pairs path actions against functionals dual to the
/// socle, and `m'` is the socle of the cokernel.
pub fn copresentation(rep: &QuiverRep) -> Result<(Vec<usize>, Vec<usize>)> {
    let q = &rep.quiver;
    let n = q.vertex_count();
    let m = rep.socle_dims();

    // Functionals on each fiber whose restrictions form a dual basis of the
    // socle there: the first rows of the inverse of [socle basis | complement].
    let mut functionals: Vec<Vec<Vec<BigRational>>> = vec![Vec::new(); n];
    for k in 0..n {
        if m[k] == 0 {
            continue;
        }
        let d = rep.dims[k];
        let mut stacked: Matrix = Vec::new();
        for a in q.arrows_out(k) {
            stacked.extend(rep.maps[a].iter().cloned());
        }
        let soc: Vec<Vec<BigRational>> = if stacked.is_empty() {
            (0..d)
                .map(|i| (0..d).map(|j| br_int((i == j) as i64)).collect())
                .collect()
        } else {
            exactlin::nullspace_rational(&exactlin::rows_to_rational(&stacked))
        };
        if soc.len() != m[k] {
            return Err(Error::Internal("socle dimension disagreement".into()));
        }
        // Complete the socle basis to a basis of the fiber with unit vectors.
        let mut cols: Vec<Vec<BigRational>> = soc.clone();
        let mut probe: Vec<Vec<BigRational>> = cols.clone();
        for t in 0..d {
            let unit: Vec<BigRational> = (0..d).map(|j| br_int((j == t) as i64)).collect();
            let mut trial = probe.clone();
            trial.push(unit.clone());
            if rat_rank(&trial) > rat_rank(&probe) {
                cols.push(unit.clone());
                probe.push(unit);
            }
            if cols.len() == d {
                break;
            }
        }
        let mat: Vec<Vec<BigRational>> = (0..d)
            .map(|r| (0..d).map(|c| cols[c][r].clone()).collect())
            .collect();
        let inv = rat_inverse(&mat)
            .ok_or_else(|| Error::Internal("socle completion is singular".into()))?;
        functionals[k] = inv.into_iter().take(m[k]).collect();
    }

    // The embedding into I^m, one block row per (target k, copy, path j->k).
    let envelope = injective_sum(q, &m)?;
    let mut phi: Vec<Vec<Vec<BigRational>>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for k in 0..n {
            if m[k] == 0 {
                continue;
            }
            let paths = paths_to(q, k);
            for copy in 0..m[k] {
                let xi = &functionals[k][copy];
                for p in &paths[j] {
                    let action = path_matrix(rep, j, p);
                    let row: Vec<BigRational> = (0..rep.dims[j])
                        .map(|c| {
                            let mut acc = BigRational::zero();
                            for (s, f) in xi.iter().enumerate() {
                                if !f.is_zero() {
                                    acc += f * BigRational::from_integer(action[s][c].clone());
                                }
                            }
                            acc
                        })
                        .collect();
                    rows.push(row);
                }
            }
        }
        if rows.len() != envelope.dims[j] {
            return Err(Error::Internal("envelope layout disagreement".into()));
        }
        if rat_rank(&rows) != rep.dims[j] {
            return Err(Error::Internal(
                "socle-dual embedding failed to be injective".into(),
            ));
        }
        phi.push(rows);
    }

    // Cokernel fibers: coordinates not hit by the image, with the projection
    // realized by inverting [image columns | complementary units].
    let mut coker_dims = vec![0usize; n];
    let mut projections: Vec<Vec<Vec<BigRational>>> = vec![Vec::new(); n];
    let mut complements: Vec<Vec<usize>> = vec![Vec::new(); n];
    for j in 0..n {
        let dd = envelope.dims[j];
        let d = rep.dims[j];
        coker_dims[j] = dd - d;
        if dd == 0 {
            continue;
        }
        // phi rows are indexed by the envelope basis; transpose to columns.
        let mut image_cols: Vec<Vec<BigRational>> = (0..d)
            .map(|c| (0..dd).map(|r| phi[j][r][c].clone()).collect())
            .collect();
        let mut probe = image_cols.clone();
        let mut compl = Vec::new();
        for t in 0..dd {
            if image_cols.len() == dd {
                break;
            }
            let unit: Vec<BigRational> = (0..dd).map(|r| br_int((r == t) as i64)).collect();
            let mut trial = probe.clone();
            trial.push(unit.clone());
            if rat_rank(&trial) > rat_rank(&probe) {
                image_cols.push(unit.clone());
                probe.push(unit);
                compl.push(t);
            }
        }
        let mat: Vec<Vec<BigRational>> = (0..dd)
            .map(|r| (0..dd).map(|c| image_cols[c][r].clone()).collect())
            .collect();
        let inv =
            rat_inverse(&mat).ok_or_else(|| Error::Internal("cokernel basis singular".into()))?;
        projections[j] = inv.into_iter().skip(d).collect();
        complements[j] = compl;
    }

    // Induced arrow maps on the cokernel, then its socle multiplicities.
    let mut coker_maps: Vec<Vec<Vec<BigRational>>> = Vec::with_capacity(q.arrows().len());
    for (a, &(u, w)) in q.arrows().iter().enumerate() {
        let mut mrows = vec![vec![BigRational::zero(); coker_dims[u]]; coker_dims[w]];
        for (c, &t) in complements[u].iter().enumerate() {
            // Image of the representative unit vector e_t under the arrow.
            let z: Vec<BigRational> = (0..envelope.dims[w])
                .map(|r| br_int(envelope.maps[a][r][t]))
                .collect();
            for r in 0..coker_dims[w] {
                let mut acc = BigRational::zero();
                for (s, zv) in z.iter().enumerate() {
                    if !zv.is_zero() {
                        acc += &projections[w][r][s] * zv;
                    }
                }
                mrows[r][c] = acc;
            }
        }
        coker_maps.push(mrows);
    }
    let mut mprime = vec![0usize; n];
    for k in 0..n {
        let mut stacked: Vec<Vec<BigRational>> = Vec::new();
        for a in q.arrows_out(k) {
            stacked.extend(coker_maps[a].iter().cloned());
        }
        mprime[k] = if stacked.is_empty() {
            coker_dims[k]
        } else {
            coker_dims[k] - rat_rank(&stacked)
        };
    }
    Ok((m, mprime))
}

/// `m' - m` from the minimal injective copresentation, one entry per quiver
/// vertex.
pub fn injective_g_vector(rep: &QuiverRep) -> Result<Vec<i64>> {
    let (m, mprime) = copresentation(rep)?;
    Ok((0..m.len())
        .map(|k| mprime[k] as i64 - m[k] as i64)
        .collect())
}

/// Integer basis of the morphism space between two sums of injectives,
/// delivered together with the end representations.
pub struct HomBasis {
    pub dom: QuiverRep,
    pub cod: QuiverRep,
    pub basis: Vec<Vec<Matrix>>,
}

impl HomBasis {
    /// One per-vertex matrix tuple from integer coefficients.
    pub fn combine(&self, coeffs: &[i64]) -> Result<Vec<Matrix>> {
        if coeffs.len() != self.basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a Hom space of rank {}",
                coeffs.len(),
                self.basis.len()
            )));
        }
        let n = self.dom.quiver().vertex_count();
        let mut out: Vec<Matrix> = (0..n)
            .map(|v| matrix::zeros(self.cod.dims()[v], self.dom.dims()[v]))
            .collect();
        for (c, elem) in coeffs.iter().zip(&self.basis) {
            if *c == 0 {
                continue;
            }
            for (v, mat) in elem.iter().enumerate() {
                for (r, row) in mat.iter().enumerate() {
                    for (s, e) in row.iter().enumerate() {
                        out[v][r][s] += c * e;
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Basis of `Hom(I^dom_mult, I^cod_mult)` by solving the commuting-square
/// constraints over the integers.
pub fn injective_hom_basis(q: &Quiver, dom_mult: &[usize], cod_mult: &[usize]) -> Result<HomBasis> {
    let dom = injective_sum(q, dom_mult)?;
    let cod = injective_sum(q, cod_mult)?;
    let n = q.vertex_count();
    let mut offsets = vec![0usize; n + 1];
    for v in 0..n {
        offsets[v + 1] = offsets[v] + cod.dims()[v] * dom.dims()[v];
    }
    let unknowns = offsets[n];
    if unknowns == 0 {
        return Ok(HomBasis {
            dom,
            cod,
            basis: Vec::new(),
        });
    }
    let idx = |v: usize, r: usize, s: usize| offsets[v] + r * dom.dims()[v] + s;
    let mut rows: Matrix = Vec::new();
    for (a, &(u, w)) in q.arrows().iter().enumerate() {
        // f_w . X_a = X'_a . f_u, one equation per (row of cod at w, col of dom at u).
        for r in 0..cod.dims()[w] {
            for c in 0..dom.dims()[u] {
                let mut eq = vec![0i64; unknowns];
                for s in 0..dom.dims()[w] {
                    eq[idx(w, r, s)] += dom.maps()[a][s][c];
                }
                for s in 0..cod.dims()[u] {
                    eq[idx(u, s, c)] -= cod.maps()[a][r][s];
                }
                rows.push(eq);
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![0; unknowns]);
    }
    let lattice = exactlin::kernel_lattice(&rows);
    let mut basis = Vec::with_capacity(lattice.len());
    for vecb in lattice {
        let mut mats: Vec<Matrix> = Vec::with_capacity(n);
        for v in 0..n {
            let mut m = matrix::zeros(cod.dims()[v], dom.dims()[v]);
            for r in 0..cod.dims()[v] {
                for s in 0..dom.dims()[v] {
                    m[r][s] = vecb[idx(v, r, s)]
                        .to_i64()
                        .ok_or_else(|| Error::Internal("hom basis entry overflow".into()))?;
                }
            }
            mats.push(m);
        }
        basis.push(mats);
    }
    Ok(HomBasis { dom, cod, basis })
}

fn bigint_matvec(m: &Matrix, v: &[BigInt]) -> Vec<BigInt> {
    m.iter()
        .map(|row| {
            let mut acc = BigInt::zero();
            for (c, e) in row.iter().enumerate() {
                if *e != 0 {
                    acc += BigInt::from(*e) * &v[c];
                }
            }
            acc
        })
        .collect()
}

/// Kernel of a per-vertex morphism out of `dom`, as a representation on
/// saturated integer bases of the fiberwise kernels.
pub fn kernel_rep(dom: &QuiverRep, f: &[Matrix]) -> Result<QuiverRep> {
    let q = dom.quiver();
    let n = q.vertex_count();
    if f.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} morphism blocks for {} vertices",
            f.len(),
            n
        )));
    }
    let mut bases: Vec<Vec<Vec<BigInt>>> = Vec::with_capacity(n);
    for v in 0..n {
        let cols = dom.dims()[v];
        let mut mat = f[v].clone();
        if mat.iter().any(|row| row.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "morphism block at vertex {v} has the wrong width"
            )));
        }
        if mat.is_empty() {
            mat.push(vec![0; cols]);
        }
        bases.push(exactlin::kernel_lattice(&mat));
    }
    let dims: Vec<usize> = bases.iter().map(|b| b.len()).collect();
    let mut maps = Vec::with_capacity(q.arrows().len());
    for (a, &(u, w)) in q.arrows().iter().enumerate() {
        let mut m = matrix::zeros(dims[w], dims[u]);
        for (c, kv) in bases[u].iter().enumerate() {
            let image = bigint_matvec(&dom.maps()[a], kv);
            let coords = exactlin::solve_in_lattice(&bases[w], &image)
                .ok_or_else(|| Error::Internal("arrow image escapes the kernel lattice".into()))?;
            for (r, x) in coords.iter().enumerate() {
                m[r][c] = x
                    .to_i64()
                    .ok_or_else(|| Error::Internal("kernel map entry overflow".into()))?;
            }
        }
        maps.push(m);
    }
    QuiverRep::new(q.clone(), dims, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::Frame;
    use std::sync::Arc;

    fn kronecker_op() -> Quiver {
        // Two arrows 1 -> 2; this is the opposite of the principal quiver of
        // the Kronecker seed below.
        Quiver::new(vec!["1".into(), "2".into()], vec![(0, 1), (0, 1)]).unwrap()
    }

    fn kronecker_seed() -> Seed {
        let frame = Arc::new(
            Frame::new(vec!["1".into(), "2".into()], vec![0, 1], vec![1, 1], None).unwrap(),
        );
        Seed::new(frame, vec![vec![0, -2], vec![2, 0]]).unwrap()
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
    fn cycles_are_rejected() {
        let err = Quiver::new(vec!["1".into(), "2".into()], vec![(0, 1), (1, 0)]).unwrap_err();
        assert_eq!(err, Error::NonAcyclicQuiver);
        let err = Quiver::new(vec!["1".into()], vec![(0, 0)]).unwrap_err();
        assert_eq!(err, Error::NonAcyclicQuiver);
        assert!(Quiver::new(vec!["1".into(), "1".into()], vec![]).is_err());
    }

    #[test]
    fn principal_quiver_of_the_kronecker_seed() {
        let s = kronecker_seed();
        let q = principal_quiver(&s);
        assert_eq!(q.arrows(), &[(1, 0), (1, 0)]);
        assert!(q.is_opposite(&kronecker_op()));
        assert!(!q.is_opposite(&q));
    }

    #[test]
    fn injectives_on_path_spaces() {
        let q = kronecker_op();
        let i1 = injective_rep(&q, 0).unwrap();
        assert_eq!(i1.dims(), &[1, 0]);
        let i2 = injective_rep(&q, 1).unwrap();
        assert_eq!(i2.dims(), &[2, 1]);
        assert_eq!(i2.maps()[0], vec![vec![1, 0]]);
        assert_eq!(i2.maps()[1], vec![vec![0, 1]]);
        assert_eq!(i2.socle_dims(), vec![0, 1]);

        let sum = injective_sum(&q, &[1, 2]).unwrap();
        assert_eq!(sum.dims(), &[5, 2]);
        assert_eq!(sum.socle_dims(), vec![1, 2]);
    }

    #[test]
    fn g_vectors_from_copresentations() {
        let q = kronecker_op();
        assert_eq!(
            injective_g_vector(&QuiverRep::zero(q.clone())).unwrap(),
            vec![0, 0]
        );
        assert_eq!(
            injective_g_vector(&injective_rep(&q, 0).unwrap()).unwrap(),
            vec![-1, 0]
        );
        assert_eq!(
            injective_g_vector(&injective_rep(&q, 1).unwrap()).unwrap(),
            vec![0, -1]
        );
        assert_eq!(injective_g_vector(&v_loop(3)).unwrap(), vec![1, -1]);
        // The simple at the sink resolves as 0 -> S_2 -> I_2 -> I_1^2.
        let s2 = QuiverRep::new(kronecker_op(), vec![0, 1], vec![vec![vec![]], vec![vec![]]]);
        let s2 = s2.unwrap();
        assert_eq!(injective_g_vector(&s2).unwrap(), vec![2, -1]);
    }

    #[test]
    fn g_vector_on_a_three_vertex_path() {
        // 1 -> 2 -> 3; the simple at the middle vertex has 0 -> S2 -> I2 -> I1.
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![(0, 1), (1, 2)],
        )
        .unwrap();
        let s2 = QuiverRep::new(q, vec![0, 1, 0], vec![vec![vec![]], vec![]]).unwrap();
        assert_eq!(injective_g_vector(&s2).unwrap(), vec![1, -1, 0]);
    }

    #[test]
    fn hom_spaces_between_injectives() {
        let q = kronecker_op();
        let down = injective_hom_basis(&q, &[0, 1], &[1, 0]).unwrap();
        assert_eq!(down.basis.len(), 2);
        let up = injective_hom_basis(&q, &[1, 0], &[0, 1]).unwrap();
        assert_eq!(up.basis.len(), 0);
        let mixed = injective_hom_basis(&q, &[0, 3], &[3, 0]).unwrap();
        assert_eq!(mixed.basis.len(), 18);
        let endo = injective_hom_basis(&q, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(endo.basis.len(), 1);
    }

    #[test]
    fn kernels_of_injective_morphisms() {
        let q = kronecker_op();
        let hom = injective_hom_basis(&q, &[0, 1], &[1, 0]).unwrap();
        // Project I_2 onto I_1 along the first path coordinate.
        let f = hom.combine(&[1, 0]).unwrap();
        let ker = kernel_rep(&hom.dom, &f).unwrap();
        assert_eq!(ker.dims(), &[1, 1]);
        let ga = ker.maps()[0][0][0];
        let gb = ker.maps()[1][0][0];
        assert!((ga == 0) != (gb == 0));
        assert_eq!(injective_g_vector(&ker).unwrap(), vec![1, -1]);

        // The zero morphism keeps everything.
        let zero = hom.combine(&[0, 0]).unwrap();
        let kz = kernel_rep(&hom.dom, &zero).unwrap();
        assert_eq!(kz.dims(), hom.dom.dims());
    }

    #[test]
    fn direct_sums_and_validation() {
        let v = v_loop(1);
        let w = v_loop(2);
        let sum = v.direct_sum(&w).unwrap();
        assert_eq!(sum.dims(), &[2, 2]);
        assert_eq!(sum.maps()[1], vec![vec![1, 0], vec![0, 2]]);

        let bad = QuiverRep::new(
            kronecker_op(),
            vec![1, 1],
            vec![vec![vec![1, 1]], vec![vec![1]]],
        );
        assert!(matches!(bad, Err(Error::DimensionMismatch(_))));
    }
}
