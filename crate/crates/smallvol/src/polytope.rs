//! Lattice polytopes: hull membership, facets, triangulations, and exact
//! lattice-point enumeration.
//!
//! A `LatticePolytope` stores the inclusion-minimal vertex set in sorted
//! order, so structural equality is exactly equality of point sets. All
//! predicates are exact; the only geometry primitive is rational linear
//! programming.

use crate::arith::{self, div_floor, narrow};
use crate::lp;
use crate::matrix::{left_kernel, IntegerMatrix};
use crate::transform::{affine_lattice_normalize, AffineNormalization, UnimodularMap};
use crate::{Error, Result};
use itertools::Itertools;

pub type LatticePoint = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<LatticePoint>,
}

impl LatticePolytope {
    /// Builds the polytope spanned by `points`, reducing to the vertex set.
    pub fn new(dim: usize, points: Vec<LatticePoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.len() });
            }
        }
        let mut uniq = points;
        uniq.sort();
        uniq.dedup();
        // p is a vertex iff it is not in the hull of the remaining points
        let mut vertices = Vec::with_capacity(uniq.len());
        for (i, p) in uniq.iter().enumerate() {
            let others: Vec<LatticePoint> = uniq
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| q.clone())
                .collect();
            if others.is_empty() || !lp::in_hull(&others, p, 1)? {
                vertices.push(p.clone());
            }
        }
        Ok(LatticePolytope { dim, vertices })
    }

    pub fn from_slices(dim: usize, points: &[&[i64]]) -> Result<Self> {
        Self::new(dim, points.iter().map(|p| p.to_vec()).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Rows `(v_i, 1)`, the standard height-one lift.
    pub fn lifted_vertex_matrix(&self) -> Result<IntegerMatrix> {
        let rows: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|v| {
                let mut r = v.clone();
                r.push(1);
                r
            })
            .collect();
        IntegerMatrix::from_rows(&rows)
    }

    pub fn affine_rank(&self) -> Result<usize> {
        if self.vertices.len() == 1 {
            return Ok(0);
        }
        let diffs: Vec<Vec<i64>> = self.vertices[1..]
            .iter()
            .map(|v| {
                v.iter()
                    .zip(&self.vertices[0])
                    .map(|(a, b)| arith::sub(*a, *b))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<_>>()?;
        IntegerMatrix::from_rows(&diffs)?.rank()
    }

    pub fn is_full_dimensional(&self) -> Result<bool> {
        Ok(self.affine_rank()? == self.dim)
    }

    pub fn is_simplex(&self) -> Result<bool> {
        Ok(self.vertices.len() == self.affine_rank()? + 1)
    }

    pub fn translate(&self, w: &[i64]) -> Result<Self> {
        if w.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: w.len() });
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| {
                v.iter()
                    .zip(w)
                    .map(|(a, b)| arith::add(*a, *b))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.dim, vertices)
    }

    /// Image under a unimodular affine map; an exact congruence of `Z^d`.
    pub fn apply(&self, f: &UnimodularMap) -> Result<Self> {
        if f.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: f.dim() });
        }
        let vertices = self
            .vertices
            .iter()
            .map(|v| f.apply_point(v))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.dim, vertices)
    }

    /// Full-dimensional copy in the coordinates of its own affine lattice,
    /// with the witness bijection.
    pub fn normalized(&self) -> Result<(LatticePolytope, AffineNormalization)> {
        let (proj, w) = affine_lattice_normalize(&self.vertices)?;
        let q = LatticePolytope::new(w.rank(), proj)?;
        Ok((q, w))
    }

    pub fn bounding_box(&self) -> (Vec<i64>, Vec<i64>) {
        let mut lo = self.vertices[0].clone();
        let mut hi = self.vertices[0].clone();
        for v in &self.vertices[1..] {
            for j in 0..self.dim {
                lo[j] = lo[j].min(v[j]);
                hi[j] = hi[j].max(v[j]);
            }
        }
        (lo, hi)
    }

    /// Exact membership `x ∈ P` by rational feasibility.
    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        self.contains_dilate(x, 1)
    }

    /// Exact membership `x ∈ n·P`.
    pub fn contains_dilate(&self, x: &[i64], n: i64) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        lp::in_hull(&self.vertices, x, n)
    }

    /// Exact relative-interior membership `x ∈ relint(n·P)`.
    pub fn contains_relint_dilate(&self, x: &[i64], n: i64) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        lp::in_hull_relint(&self.vertices, x, n)
    }

    /// Facet inequalities `a·x <= b` with primitive integer normals.
    /// Requires a full-dimensional polytope.
    pub fn facets(&self) -> Result<Vec<Facet>> {
        let d = self.dim;
        if self.affine_rank()? != d {
            return Err(Error::NotFullDimensional { dim: d, rank: self.affine_rank()? });
        }
        if d == 0 {
            return Ok(Vec::new());
        }
        if d == 1 {
            let (lo, hi) = self.bounding_box();
            return Ok(vec![
                Facet { normal: vec![1], rhs: hi[0] },
                Facet { normal: vec![-1], rhs: -lo[0] },
            ]);
        }
        let mut out: Vec<Facet> = Vec::new();
        for subset in (0..self.vertices.len()).combinations(d) {
            let s0 = &self.vertices[subset[0]];
            let diffs: Vec<Vec<i64>> = subset[1..]
                .iter()
                .map(|&i| {
                    self.vertices[i]
                        .iter()
                        .zip(s0)
                        .map(|(a, b)| arith::sub(*a, *b))
                        .collect::<Result<Vec<i64>>>()
                })
                .collect::<Result<_>>()?;
            let e = IntegerMatrix::from_rows(&diffs)?;
            let kernel = left_kernel(&e.transpose())?;
            if kernel.nrows() != 1 {
                continue; // subset does not span a hyperplane
            }
            let g = kernel.row(0).to_vec();
            let b = dot(&g, s0)?;
            let mut below = false;
            let mut above = false;
            for v in &self.vertices {
                match dot(&g, v)?.cmp(&b) {
                    std::cmp::Ordering::Less => below = true,
                    std::cmp::Ordering::Greater => above = true,
                    std::cmp::Ordering::Equal => {}
                }
            }
            let f = if below && !above {
                Facet { normal: g, rhs: b }
            } else if above && !below {
                Facet { normal: g.iter().map(|&x| -x).collect(), rhs: -b }
            } else {
                continue; // supporting hyperplane of nothing: interior subset
            };
            if !out.contains(&f) {
                out.push(f);
            }
        }
        out.sort();
        Ok(out)
    }

    /// A triangulation of a full-dimensional polytope into lattice simplices
    /// on the vertex set: cones over a recursive facet triangulation from the
    /// lex-first vertex. Cells are sorted index lists.
    pub fn triangulate(&self) -> Result<Vec<Vec<usize>>> {
        let rank = self.affine_rank()?;
        if rank != self.dim {
            return Err(Error::NotFullDimensional { dim: self.dim, rank });
        }
        triangulate_impl(self.dim, &self.vertices)
    }

    /// Normalized volume (dim! times the Euclidean volume) of the polytope
    /// inside its own affine lattice, by triangulation determinant sums.
    pub fn normalized_volume(&self) -> Result<i64> {
        let (q, _) = self.normalized()?;
        if q.dim == 0 {
            return Ok(1);
        }
        let cells = q.triangulate()?;
        let mut total: i64 = 0;
        for cell in cells {
            total = arith::add(total, cell_volume(&q.vertices, &cell)?)?;
        }
        Ok(total)
    }

    /// Splits a full-dimensional polytope with exactly `d+2` vertices along
    /// its unique affine circuit. When one side of the circuit has exactly
    /// two elements the result is a pair of simplices glued along
    /// `common_face`; otherwise all cells of the smaller side are returned.
    pub fn radon_triangulate(&self) -> Result<RadonSplit> {
        let d = self.dim;
        if self.affine_rank()? != d {
            return Err(Error::NotFullDimensional { dim: d, rank: self.affine_rank()? });
        }
        let n = self.vertices.len();
        if n != d + 2 {
            return Err(Error::BadInput(format!(
                "radon split needs exactly d+2 vertices, got {n} in dimension {d}"
            )));
        }
        let lifted = self.lifted_vertex_matrix()?;
        let kernel = left_kernel(&lifted)?;
        debug_assert_eq!(kernel.nrows(), 1);
        let mut alpha = kernel.row(0).to_vec();
        if let Some(first) = alpha.iter().find(|&&a| a != 0) {
            if *first < 0 {
                for a in alpha.iter_mut() {
                    *a = -*a;
                }
            }
        }
        let plus: Vec<usize> = (0..n).filter(|&i| alpha[i] > 0).collect();
        let minus: Vec<usize> = (0..n).filter(|&i| alpha[i] < 0).collect();
        debug_assert!(plus.len() >= 2 && minus.len() >= 2, "vertex minimality");
        let side = if plus.len() == 2 {
            &plus
        } else if minus.len() == 2 {
            &minus
        } else if plus.len() <= minus.len() {
            &plus
        } else {
            &minus
        };
        let cells: Vec<Vec<usize>> = side
            .iter()
            .map(|&omit| (0..n).filter(|&i| i != omit).collect())
            .collect();
        let common_face = (side.len() == 2).then(|| {
            (0..n).filter(|i| !side.contains(i)).collect::<Vec<usize>>()
        });
        Ok(RadonSplit { dependence: alpha, cells, common_face })
    }

    /// Sub-polytope spanned by the given vertex indices.
    pub fn subpolytope(&self, indices: &[usize]) -> Result<LatticePolytope> {
        let pts = indices.iter().map(|&i| self.vertices[i].clone()).collect();
        LatticePolytope::new(self.dim, pts)
    }

    /// All lattice points of `n·P`, in ambient coordinates.
    pub fn lattice_points_in_dilate(&self, n: i64) -> Result<Vec<LatticePoint>> {
        if self.is_full_dimensional()? {
            return enumerate_points(self.dim, &self.vertices, n, false);
        }
        let (q, w) = self.normalized()?;
        let pts = enumerate_points(q.dim, &q.vertices, n, false)?;
        // lift back: y in n·Q corresponds to base*n + y·back, so scale the
        // witness base by the dilation factor
        pts.iter()
            .map(|y| {
                let mut x = if w.rank() == 0 {
                    vec![0; self.dim]
                } else {
                    w.back().apply_row(y)?
                };
                for (xi, b) in x.iter_mut().zip(w.base()) {
                    *xi = arith::add(*xi, arith::mul(*b, n)?)?;
                }
                Ok(x)
            })
            .collect()
    }

    /// `|n·P ∩ Z^d|`, exact.
    pub fn count_lattice_points(&self, n: i64) -> Result<i64> {
        if self.is_full_dimensional()? {
            return count_points(self.dim, &self.vertices, n, false);
        }
        let (q, _) = self.normalized()?;
        count_points(q.dim, &q.vertices, n, false)
    }

    /// `|relint(n·P) ∩ Z^d|`, exact.
    pub fn count_interior_points(&self, n: i64) -> Result<i64> {
        if self.is_full_dimensional()? {
            return count_points(self.dim, &self.vertices, n, true);
        }
        let (q, _) = self.normalized()?;
        count_points(q.dim, &q.vertices, n, true)
    }

    /// Trusted but slow oracle: sweep the bounding box of `n·P` and test each
    /// cell with the membership LP. Use only on small instances.
    pub fn count_lattice_points_sweep(&self, n: i64) -> Result<i64> {
        self.sweep(n, false)
    }

    /// Interior companion of the sweep oracle.
    pub fn count_interior_points_sweep(&self, n: i64) -> Result<i64> {
        self.sweep(n, true)
    }

    fn sweep(&self, n: i64, strict: bool) -> Result<i64> {
        if self.dim == 0 {
            return Ok(if strict && n == 0 { 0 } else { 1 });
        }
        let (lo, hi) = self.bounding_box();
        let lo: Vec<i64> = lo.iter().map(|&a| arith::mul(a, n)).collect::<Result<_>>()?;
        let hi: Vec<i64> = hi.iter().map(|&a| arith::mul(a, n)).collect::<Result<_>>()?;
        let mut x = lo.clone();
        let mut count = 0i64;
        'outer: loop {
            let inside = if strict {
                lp::in_hull_relint(&self.vertices, &x, n)?
            } else {
                lp::in_hull(&self.vertices, &x, n)?
            };
            if inside {
                count += 1;
            }
            for j in 0..self.dim {
                if x[j] < hi[j] {
                    x[j] += 1;
                    continue 'outer;
                }
                x[j] = lo[j];
            }
            break;
        }
        Ok(count)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub rhs: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadonSplit {
    /// Primitive affine dependence among the lifted vertices, first nonzero
    /// entry positive.
    pub dependence: Vec<i64>,
    pub cells: Vec<Vec<usize>>,
    pub common_face: Option<Vec<usize>>,
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> Result<i64> {
    debug_assert_eq!(a.len(), b.len());
    let mut acc: i128 = 0;
    for (x, y) in a.iter().zip(b) {
        acc = acc
            .checked_add(*x as i128 * *y as i128)
            .ok_or(Error::Overflow("dot"))?;
    }
    narrow(acc)
}

fn cell_volume(vertices: &[LatticePoint], cell: &[usize]) -> Result<i64> {
    let v0 = &vertices[cell[0]];
    let rows: Vec<Vec<i64>> = cell[1..]
        .iter()
        .map(|&i| {
            vertices[i]
                .iter()
                .zip(v0)
                .map(|(a, b)| arith::sub(*a, *b))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    Ok(IntegerMatrix::from_rows(&rows)?.det()?.abs())
}

fn triangulate_impl(dim: usize, vertices: &[LatticePoint]) -> Result<Vec<Vec<usize>>> {
    let n = vertices.len();
    if n == dim + 1 {
        return Ok(vec![(0..n).collect()]);
    }
    let p = LatticePolytope { dim, vertices: vertices.to_vec() };
    let apex = 0usize;
    let mut cells = Vec::new();
    for f in p.facets()? {
        if dot(&f.normal, &vertices[apex])? == f.rhs {
            continue; // apex lies on this facet; cone over it is flat
        }
        let fidx: Vec<usize> = (0..n)
            .filter(|&i| dot(&f.normal, &vertices[i]).map(|v| v == f.rhs).unwrap_or(false))
            .collect();
        let fverts: Vec<LatticePoint> = fidx.iter().map(|&i| vertices[i].clone()).collect();
        let (proj, _) = affine_lattice_normalize(&fverts)?;
        for sub in triangulate_impl(dim - 1, &proj)? {
            let mut cell: Vec<usize> = sub.iter().map(|&i| fidx[i]).collect();
            cell.push(apex);
            cell.sort_unstable();
            cells.push(cell);
        }
    }
    cells.sort();
    Ok(cells)
}

/// Exact lattice-point enumeration over the facet system of a
/// full-dimensional polytope.
///
/// Interior levels use interval-relaxed bounds (a superset of the true
/// shadow), the innermost level resolves every inequality exactly, so the
/// result is exact while only fibers—not box cells—are visited. Two
/// refinements keep the relaxation tight in higher dimensions: suffix
/// minima are taken over the vertices (the true minimum of a linear
/// functional on the polytope) rather than the bounding box, and
/// coordinates are processed in decreasing order of facet impact so that
/// the binding inequalities activate near the root of the recursion.
struct Enumerator {
    dim: usize,
    normals: Vec<Vec<i64>>,
    rhs: Vec<i64>,          // already dilated (and tightened when strict)
    box_lo: Vec<i64>,
    box_hi: Vec<i64>,
    suffix_min: Vec<Vec<i64>>, // per facet: min of Σ_{i>=j} a_i x_i over n·P
    perm: Vec<usize>,       // recursion level -> original coordinate
}

impl Enumerator {
    fn build(dim: usize, vertices: &[LatticePoint], n: i64, strict: bool) -> Result<Self> {
        let p = LatticePolytope { dim, vertices: vertices.to_vec() };
        let facets = p.facets()?;
        let (lo, hi) = p.bounding_box();

        // coordinates with large coefficients over wide ranges go first
        let mut perm: Vec<usize> = (0..dim).collect();
        let score = |j: usize| -> i128 {
            let amax = facets.iter().map(|f| f.normal[j].abs()).max().unwrap_or(0);
            let width = hi[j] - lo[j];
            amax as i128 * (width as i128 + 1)
        };
        perm.sort_by_key(|&j| (std::cmp::Reverse(score(j)), j));

        let box_lo: Vec<i64> =
            perm.iter().map(|&j| arith::mul(lo[j], n)).collect::<Result<_>>()?;
        let box_hi: Vec<i64> =
            perm.iter().map(|&j| arith::mul(hi[j], n)).collect::<Result<_>>()?;
        let mut normals = Vec::with_capacity(facets.len());
        let mut rhs = Vec::with_capacity(facets.len());
        for f in &facets {
            let mut b = arith::mul(f.rhs, n)?;
            if strict {
                b = arith::sub(b, 1)?;
            }
            normals.push(perm.iter().map(|&j| f.normal[j]).collect::<Vec<i64>>());
            rhs.push(b);
        }
        let mut suffix_min = Vec::with_capacity(normals.len());
        for a in &normals {
            // s[j] = min over n·P of Σ_{pos >= j} a_pos x_pos; a linear
            // functional attains its minimum at a vertex
            let mut s = vec![0i64; dim + 1];
            for j in (0..dim).rev() {
                let mut best: Option<i64> = None;
                for v in &p.vertices {
                    let mut acc: i128 = 0;
                    for pos in j..dim {
                        acc += a[pos] as i128 * v[perm[pos]] as i128;
                    }
                    let val = narrow(acc)?;
                    best = Some(match best {
                        None => val,
                        Some(b) => b.min(val),
                    });
                }
                s[j] = arith::mul(best.unwrap_or(0), n)?;
            }
            suffix_min.push(s);
        }
        Ok(Enumerator { dim, normals, rhs, box_lo, box_hi, suffix_min, perm })
    }

    /// Bounds for coordinate `level` given the partial facet sums.
    fn bounds(&self, level: usize, partial: &[i64]) -> Result<Option<(i64, i64)>> {
        let mut lo = self.box_lo[level];
        let mut hi = self.box_hi[level];
        let last = level + 1 == self.dim;
        for (f, a) in self.normals.iter().enumerate() {
            let coef = a[level];
            if coef == 0 {
                if last && partial[f] > self.rhs[f] {
                    return Ok(None);
                }
                continue;
            }
            let slack = arith::sub(
                arith::sub(self.rhs[f], partial[f])?,
                self.suffix_min[f][level + 1],
            )?;
            if coef > 0 {
                hi = hi.min(div_floor(slack, coef));
            } else {
                // coef < 0: need x >= slack/coef, i.e. x >= ceil(slack/coef)
                let neg = slack.checked_neg().ok_or(Error::Overflow("bounds"))?;
                lo = lo.max(-div_floor(neg, coef));
            }
            if lo > hi {
                return Ok(None);
            }
        }
        Ok(Some((lo, hi)))
    }

    fn run(&self, mut visit: impl FnMut(&[i64], i64, i64)) -> Result<()> {
        if self.dim == 0 {
            return Ok(());
        }
        let mut partial = vec![0i64; self.normals.len()];
        let mut x = vec![0i64; self.dim];
        self.dfs(0, &mut partial, &mut x, &mut visit)
    }

    fn dfs(
        &self,
        level: usize,
        partial: &mut Vec<i64>,
        x: &mut Vec<i64>,
        visit: &mut impl FnMut(&[i64], i64, i64),
    ) -> Result<()> {
        let Some((lo, hi)) = self.bounds(level, partial)? else {
            return Ok(());
        };
        if level + 1 == self.dim {
            if lo <= hi {
                visit(&x[..level], lo, hi);
            }
            return Ok(());
        }
        for t in lo..=hi {
            x[level] = t;
            for (f, a) in self.normals.iter().enumerate() {
                if a[level] != 0 {
                    partial[f] = arith::add(partial[f], arith::mul(a[level], t)?)?;
                }
            }
            self.dfs(level + 1, partial, x, visit)?;
            for (f, a) in self.normals.iter().enumerate() {
                if a[level] != 0 {
                    partial[f] -= a[level] * t; // reverse of a checked add
                }
            }
        }
        Ok(())
    }
}

fn count_points(dim: usize, vertices: &[LatticePoint], n: i64, strict: bool) -> Result<i64> {
    if n < 0 {
        return Err(Error::BadInput("negative dilation".into()));
    }
    // 0·P = {0}: closed count 1, relint count 0 by convention
    if n == 0 {
        return Ok(if strict { 0 } else { 1 });
    }
    if dim == 0 {
        return Ok(1);
    }
    let en = Enumerator::build(dim, vertices, n, strict)?;
    let mut count: i64 = 0;
    let mut overflow = false;
    en.run(|_, lo, hi| {
        match count.checked_add(hi - lo + 1) {
            Some(c) => count = c,
            None => overflow = true,
        }
    })?;
    if overflow {
        return Err(Error::Overflow("point count"));
    }
    Ok(count)
}

fn enumerate_points(
    dim: usize,
    vertices: &[LatticePoint],
    n: i64,
    strict: bool,
) -> Result<Vec<LatticePoint>> {
    if n < 0 {
        return Err(Error::BadInput("negative dilation".into()));
    }
    if n == 0 {
        return Ok(if strict { vec![] } else { vec![vec![0; dim]] });
    }
    if dim == 0 {
        return Ok(vec![Vec::new()]);
    }
    let en = Enumerator::build(dim, vertices, n, strict)?;
    let mut out = Vec::new();
    en.run(|prefix, lo, hi| {
        for t in lo..=hi {
            // recursion levels are a permutation of the coordinates; map back
            let mut p = vec![0i64; dim];
            for (pos, &v) in prefix.iter().chain(std::iter::once(&t)).enumerate() {
                p[en.perm[pos]] = v;
            }
            out.push(p);
        }
    })?;
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::random_unimodular_map;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly(dim: usize, pts: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_slices(dim, pts).unwrap()
    }

    fn unit_square() -> LatticePolytope {
        poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
    }

    #[test]
    fn vertex_reduction() {
        // center and edge midpoint of a doubled square are not vertices
        let p = poly(
            2,
            &[&[0, 0], &[2, 0], &[0, 2], &[2, 2], &[1, 1], &[1, 0], &[0, 0]],
        );
        assert_eq!(
            p.vertices(),
            &[vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]]
        );
    }

    #[test]
    fn membership() {
        let p = unit_square();
        assert!(p.contains(&[0, 0]).unwrap());
        assert!(p.contains(&[1, 1]).unwrap());
        assert!(!p.contains(&[2, 1]).unwrap());
        assert!(p.contains_dilate(&[2, 1], 2).unwrap());
        assert!(p.contains_relint_dilate(&[1, 1], 2).unwrap());
        assert!(!p.contains_relint_dilate(&[0, 1], 2).unwrap());
    }

    #[test]
    fn facets_of_square() {
        let f = unit_square().facets().unwrap();
        assert_eq!(f.len(), 4);
        assert!(f.contains(&Facet { normal: vec![1, 0], rhs: 1 }));
        assert!(f.contains(&Facet { normal: vec![-1, 0], rhs: 0 }));
        assert!(f.contains(&Facet { normal: vec![0, 1], rhs: 1 }));
        assert!(f.contains(&Facet { normal: vec![0, -1], rhs: 0 }));
    }

    #[test]
    fn facets_of_skew_triangle() {
        let p = poly(2, &[&[0, 0], &[1, 0], &[2, 3]]);
        let f = p.facets().unwrap();
        assert_eq!(f.len(), 3);
        for facet in &f {
            let g = facet.normal.iter().fold(0, |acc, &x| arith::gcd(acc, x));
            assert_eq!(g, 1, "facet normals must be primitive");
            // every vertex satisfies, at least two vertices tight... exactly 2 for a triangle
            let tight = p
                .vertices()
                .iter()
                .filter(|v| dot(&facet.normal, v).unwrap() == facet.rhs)
                .count();
            assert_eq!(tight, 2);
            assert!(p
                .vertices()
                .iter()
                .all(|v| dot(&facet.normal, v).unwrap() <= facet.rhs));
        }
    }

    #[test]
    fn triangulation_and_volume() {
        assert_eq!(unit_square().normalized_volume().unwrap(), 2);
        let cells = unit_square().triangulate().unwrap();
        assert_eq!(cells.len(), 2);
        // segment, intrinsic volume
        assert_eq!(poly(2, &[&[0, 0], &[0, 2]]).normalized_volume().unwrap(), 2);
        // single point
        assert_eq!(poly(2, &[&[3, 4]]).normalized_volume().unwrap(), 1);
        // simplex determinant
        assert_eq!(
            poly(2, &[&[0, 0], &[1, 0], &[0, 2]]).normalized_volume().unwrap(),
            2
        );
        // 3-cube: 3! = 6
        let cube = poly(
            3,
            &[
                &[0, 0, 0],
                &[1, 0, 0],
                &[0, 1, 0],
                &[0, 0, 1],
                &[1, 1, 0],
                &[1, 0, 1],
                &[0, 1, 1],
                &[1, 1, 1],
            ],
        );
        assert_eq!(cube.normalized_volume().unwrap(), 6);
    }

    #[test]
    fn counting_known_values() {
        let sq = unit_square();
        assert_eq!(sq.count_lattice_points(1).unwrap(), 4);
        assert_eq!(sq.count_lattice_points(2).unwrap(), 9);
        assert_eq!(sq.count_interior_points(1).unwrap(), 0);
        assert_eq!(sq.count_interior_points(2).unwrap(), 1);
        // interior point (1,1) of a volume-3 triangle
        let t = poly(2, &[&[0, 0], &[1, 0], &[2, 3]]);
        assert_eq!(t.count_interior_points(1).unwrap(), 1);
        assert_eq!(
            t.lattice_points_in_dilate(1).unwrap(),
            vec![vec![0, 0], vec![1, 0], vec![1, 1], vec![2, 3]]
        );
    }

    #[test]
    fn counting_matches_sweep() {
        let cases = vec![
            poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]),
            poly(2, &[&[0, 0], &[1, 0], &[2, 3]]),
            poly(2, &[&[-1, -1], &[2, 0], &[0, 2]]),
            poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]),
            poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, -1]]),
            poly(2, &[&[0, 0], &[0, 2]]),      // lower-dimensional
            poly(3, &[&[1, 1, 1]]),            // point
        ];
        for p in &cases {
            for n in 0..=4 {
                assert_eq!(
                    p.count_lattice_points(n).unwrap(),
                    p.count_lattice_points_sweep(n).unwrap(),
                    "count mismatch at n={n} for {:?}",
                    p.vertices()
                );
                assert_eq!(
                    p.count_interior_points(n).unwrap(),
                    p.count_interior_points_sweep(n).unwrap(),
                    "interior mismatch at n={n} for {:?}",
                    p.vertices()
                );
            }
        }
    }

    #[test]
    fn counting_lower_dimensional_lifts_back() {
        // diagonal segment: lattice points of 3·P in ambient coordinates
        let p = poly(2, &[&[0, 0], &[1, 1]]);
        let pts = p.lattice_points_in_dilate(3).unwrap();
        assert_eq!(pts, vec![vec![0, 0], vec![1, 1], vec![2, 2], vec![3, 3]]);
    }

    #[test]
    fn count_invariant_under_unimodular_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let p = poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        for _ in 0..10 {
            let f = random_unimodular_map(3, &mut rng);
            let q = p.apply(&f).unwrap();
            for n in 1..=3 {
                assert_eq!(
                    p.count_lattice_points(n).unwrap(),
                    q.count_lattice_points(n).unwrap()
                );
            }
            assert_eq!(p.normalized_volume().unwrap(), q.normalized_volume().unwrap());
        }
    }

    #[test]
    fn radon_square() {
        let split = unit_square().radon_triangulate().unwrap();
        assert_eq!(split.cells.len(), 2);
        let common = split.common_face.clone().unwrap();
        assert_eq!(common.len(), 2);
        // cells share the common face and cover all vertices
        for c in &split.cells {
            assert_eq!(c.len(), 3);
            assert!(common.iter().all(|i| c.contains(i)));
        }
        // dependence: v0 - v1 - v2 + v3 = 0 for lex-sorted square vertices
        assert_eq!(split.dependence, vec![1, -1, -1, 1]);
    }

    #[test]
    fn radon_preconditions() {
        let simplex = poly(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        assert!(simplex.radon_triangulate().is_err());
        let seg = poly(2, &[&[0, 0], &[0, 2]]);
        assert!(seg.radon_triangulate().is_err());
    }

    #[test]
    fn empty_input_rejected() {
        assert_eq!(
            LatticePolytope::new(2, vec![]).unwrap_err(),
            Error::EmptyVertexSet
        );
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(LatticePolytope::new(2, vec![vec![0, 0, 0]]).is_err());
    }
}
