//! The finite abelian group attached to a full-dimensional lattice simplex.
//!
//! For a d-simplex Δ with vertices `v_0, ..., v_d`, the group is
//!
//! ```text
//! Λ_Δ = { λ ∈ (Q/Z)^{d+1} : Σ λ_i (v_i, 1) ∈ Z^{d+1} }
//! ```
//!
//! Its order is the normalized volume, the i-th δ-coefficient counts the
//! elements of height i (sum of the residues in `[0,1)`), a coordinate
//! that vanishes on the whole group marks a pyramid apex, and two
//! simplices are unimodularly equivalent exactly when their groups agree
//! up to a permutation of coordinates. The last fact turns equivalence of
//! simplices into a finite canonical-form computation, and a matching of
//! coordinates back into an explicit unimodular map.

use crate::arith::{self, gcd};
use crate::ehrhart::DeltaVector;
use crate::matrix::{smith_normal_form, solve_right_integer, IntegerMatrix};
use crate::polytope::LatticePolytope;
use crate::transform::UnimodularMap;
use crate::{Error, Result};

/// A finite subgroup of `(Q/Z)^cols` whose elements all share one
/// denominator. Residues are stored as numerators in `[0, den)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaGroup {
    cols: usize,
    den: i64,
    elements: Vec<Vec<i64>>, // sorted, identity included
}

impl LambdaGroup {
    /// Wraps a raw element list: reduces the common denominator, sorts,
    /// and checks that every element has an integer height.
    pub fn new(cols: usize, den: i64, elements: Vec<Vec<i64>>) -> Result<Self> {
        if den < 1 {
            return Err(Error::BadGroupParams(format!("denominator {den} < 1")));
        }
        let mut elements = elements;
        for el in &elements {
            if el.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: el.len() });
            }
            if el.iter().any(|&x| x < 0 || x >= den) {
                return Err(Error::BadGroupParams(format!(
                    "residue outside [0, {den}): {el:?}"
                )));
            }
            let s: i64 = el.iter().sum();
            if s % den != 0 {
                return Err(Error::BadGroupParams(format!(
                    "element {el:?}/{den} has non-integer height"
                )));
            }
        }
        // reduce to the group exponent
        let mut g = den;
        for el in &elements {
            for &x in el {
                g = gcd(g, x);
            }
        }
        if g > 1 {
            for el in elements.iter_mut() {
                for x in el.iter_mut() {
                    *x /= g;
                }
            }
        }
        let den = den / g;
        elements.sort();
        elements.dedup();
        if elements.first().map(|e| e.iter().any(|&x| x != 0)) != Some(false) {
            return Err(Error::BadGroupParams("identity element missing".into()));
        }
        Ok(LambdaGroup { cols, den, elements })
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Dimension of a simplex realizing this group: one less than the
    /// number of coordinates.
    pub fn dim(&self) -> usize {
        self.cols - 1
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Vec<i64>] {
        &self.elements
    }

    pub fn height_of(&self, idx: usize) -> i64 {
        let s: i64 = self.elements[idx].iter().sum();
        s / self.den
    }

    pub fn element_order(&self, idx: usize) -> i64 {
        let mut g = self.den;
        for &x in &self.elements[idx] {
            g = gcd(g, x);
        }
        self.den / g
    }

    /// δ-vector: `δ_i` counts elements of height `i`.
    pub fn delta_vector(&self) -> Result<DeltaVector> {
        let mut coeffs = vec![0i64; self.cols];
        for i in 0..self.elements.len() {
            let h = self.height_of(i) as usize;
            coeffs[h] = arith::add(coeffs[h], 1)?;
        }
        DeltaVector::new(coeffs)
    }

    /// Coordinates on which every element vanishes. A realizing simplex is
    /// a pyramid with apex at each such vertex.
    pub fn zero_columns(&self) -> Vec<usize> {
        (0..self.cols)
            .filter(|&j| self.elements.iter().all(|el| el[j] == 0))
            .collect()
    }

    /// Canonical representative of the element×coordinate residue matrix
    /// under coordinate permutation, plus the permutation that realizes it
    /// (canonical position -> original coordinate).
    ///
    /// Rows are grouped by the permutation-invariant key (height, element
    /// order, residue multiset); all orderings within tied groups are
    /// tried and for each one the columns are sorted lexicographically.
    /// The least matrix over all branches is canonical, so two groups are
    /// coordinate-permutations of each other iff their forms are equal.
    pub fn canonical_form(&self) -> Result<(Vec<Vec<i64>>, Vec<usize>)> {
        let n = self.elements.len();
        let mut keys: Vec<(i64, i64, Vec<i64>)> = Vec::with_capacity(n);
        for i in 0..n {
            let mut residues = self.elements[i].clone();
            residues.sort_unstable();
            keys.push((self.height_of(i), self.element_order(i), residues));
        }
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        // tie classes of row indices with identical keys
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &i in &idx {
            match classes.last_mut() {
                Some(c) if keys[c[0]] == keys[i] => c.push(i),
                _ => classes.push(vec![i]),
            }
        }
        let mut branches: u64 = 1;
        for c in &classes {
            let f = (1..=c.len() as u64).product::<u64>();
            branches = branches.saturating_mul(f);
            if branches > 100_000 {
                return Err(Error::BadInput(
                    "group is too symmetric for canonical form search".into(),
                ));
            }
        }
        let mut best: Option<(Vec<Vec<i64>>, Vec<usize>)> = None;
        let mut class_perms: Vec<Vec<Vec<usize>>> = Vec::new();
        for c in &classes {
            class_perms.push(permutations_of(c));
        }
        let mut choice = vec![0usize; classes.len()];
        loop {
            let mut row_order = Vec::with_capacity(n);
            for (ci, perms) in class_perms.iter().enumerate() {
                row_order.extend_from_slice(&perms[choice[ci]]);
            }
            // columns as vectors under this row order, tagged with origin
            let mut cols: Vec<(Vec<i64>, usize)> = (0..self.cols)
                .map(|j| {
                    (
                        row_order.iter().map(|&r| self.elements[r][j]).collect(),
                        j,
                    )
                })
                .collect();
            cols.sort();
            let matrix: Vec<Vec<i64>> = (0..n)
                .map(|r| cols.iter().map(|(v, _)| v[r]).collect())
                .collect();
            let perm: Vec<usize> = cols.iter().map(|&(_, j)| j).collect();
            if best.as_ref().is_none_or(|(m, _)| matrix < *m) {
                best = Some((matrix, perm));
            }
            // odometer over branch choices
            let mut k = 0;
            loop {
                if k == classes.len() {
                    let (m, p) = best.unwrap();
                    return Ok((m, p));
                }
                choice[k] += 1;
                if choice[k] < class_perms[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }
}

fn permutations_of(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let rest: Vec<usize> = items
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &y)| y)
            .collect();
        for mut p in permutations_of(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Computes `Λ_Δ` for a full-dimensional lattice simplex via the Smith
/// normal form of the lifted vertex matrix.
pub fn lambda_of_simplex(p: &LatticePolytope) -> Result<LambdaGroup> {
    let d = p.dim();
    if p.affine_rank()? != d {
        return Err(Error::NotFullDimensional { dim: d, rank: p.affine_rank()? });
    }
    if p.n_vertices() != d + 1 {
        return Err(Error::NotASimplex { vertices: p.n_vertices(), dim: d });
    }
    let m = p.lifted_vertex_matrix()?;
    let snf = smith_normal_form(&m)?;
    let divisors = snf.divisors();
    let k = divisors.len();
    debug_assert_eq!(k, d + 1);
    if divisors.iter().any(|&x| x == 0) {
        return Err(Error::SingularMatrix);
    }
    let mut vol: i64 = 1;
    for &x in &divisors {
        vol = arith::mul(vol, x)?;
    }
    let exponent = divisors[k - 1];
    let uinv = solve_right_integer(&snf.left, &IntegerMatrix::identity(k))?
        .ok_or(Error::SingularMatrix)?;
    // λ = μ · U^{-1} with μ_i ranging over (1/d_i)Z / Z
    let mut elements = Vec::with_capacity(vol as usize);
    let mut r = vec![0i64; k];
    'outer: loop {
        let mut num = vec![0i64; k];
        for i in 0..k {
            if r[i] == 0 {
                continue;
            }
            let scale = arith::mul(r[i], exponent / divisors[i])?;
            for (j, n) in num.iter_mut().enumerate() {
                *n = arith::add(*n, arith::mul(scale, uinv.get(i, j))?)?;
            }
        }
        for n in num.iter_mut() {
            *n = n.rem_euclid(exponent);
        }
        elements.push(num);
        for i in 0..k {
            r[i] += 1;
            if r[i] < divisors[i] {
                continue 'outer;
            }
            r[i] = 0;
        }
        break;
    }
    let group = LambdaGroup::new(k, exponent, elements)?;
    if group.order() as i64 != vol {
        return Err(Error::InconsistentCounts(format!(
            "group order {} != simplex volume {vol}",
            group.order()
        )));
    }
    Ok(group)
}

/// The order-2 group generated by `(1/2, ..., 1/2)` on `cols` coordinates;
/// `cols` must be even for integer height.
pub fn build_order2(cols: usize) -> Result<LambdaGroup> {
    if cols == 0 || cols % 2 != 0 {
        return Err(Error::BadGroupParams(format!(
            "order-2 all-halves group needs an even number of coordinates, got {cols}"
        )));
    }
    let id = vec![0i64; cols];
    let g = vec![1i64; cols];
    LambdaGroup::new(cols, 2, vec![id, g])
}

/// The order-3 group generated by `a` residues `1/3` followed by `b`
/// residues `2/3`. Integer heights force `a + 2b ≡ 0 (mod 3)`.
pub fn build_order3(a: usize, b: usize) -> Result<LambdaGroup> {
    let cols = a + b;
    if cols == 0 {
        return Err(Error::BadGroupParams("empty order-3 group".into()));
    }
    if (a + 2 * b) % 3 != 0 {
        return Err(Error::BadGroupParams(format!(
            "order-3 pattern ({a}, {b}) has non-integer height"
        )));
    }
    let mut g1 = vec![1i64; a];
    g1.extend(std::iter::repeat(2).take(b));
    let g2: Vec<i64> = g1.iter().map(|&x| (2 * x) % 3).collect();
    LambdaGroup::new(cols, 3, vec![vec![0; cols], g1, g2])
}

/// The cyclic order-4 group generated by `a` residues `1/4`, then `b`
/// residues `1/2`, then `c` residues `3/4`. Integer heights force
/// `a + 2b + 3c ≡ 0 (mod 4)`, and `a + c >= 1` keeps the order at 4.
pub fn build_cyclic4(a: usize, b: usize, c: usize) -> Result<LambdaGroup> {
    let cols = a + b + c;
    if a + c == 0 {
        return Err(Error::BadGroupParams(format!(
            "cyclic-4 pattern ({a}, {b}, {c}) generates a group of order <= 2"
        )));
    }
    if (a + 2 * b + 3 * c) % 4 != 0 {
        return Err(Error::BadGroupParams(format!(
            "cyclic-4 pattern ({a}, {b}, {c}) has non-integer height"
        )));
    }
    let mut g = vec![1i64; a];
    g.extend(std::iter::repeat(2).take(b));
    g.extend(std::iter::repeat(3).take(c));
    let mut elements = vec![vec![0; cols]];
    for k in 1..4 {
        elements.push(g.iter().map(|&x| (k * x) % 4).collect());
    }
    LambdaGroup::new(cols, 4, elements)
}

/// The Klein four-group with generators `g1` (residue `1/2` on the first
/// `a + b` coordinates) and `g2` (residue `1/2` on the last `b + c`).
/// Integer heights force `a + b` and `b + c` even; `a + c >= 1` keeps the
/// generators distinct.
pub fn build_klein4(a: usize, b: usize, c: usize) -> Result<LambdaGroup> {
    let cols = a + b + c;
    if (a + b) % 2 != 0 || (b + c) % 2 != 0 {
        return Err(Error::BadGroupParams(format!(
            "klein-4 pattern ({a}, {b}, {c}) has non-integer height"
        )));
    }
    if a + b == 0 || b + c == 0 || a + c == 0 {
        return Err(Error::BadGroupParams(format!(
            "klein-4 pattern ({a}, {b}, {c}) degenerates to order <= 2"
        )));
    }
    let g1: Vec<i64> = (0..cols).map(|j| if j < a + b { 1 } else { 0 }).collect();
    let g2: Vec<i64> = (0..cols).map(|j| if j >= a { 1 } else { 0 }).collect();
    let g3: Vec<i64> = g1.iter().zip(&g2).map(|(x, y)| (x + y) % 2).collect();
    LambdaGroup::new(cols, 2, vec![vec![0; cols], g1, g2, g3])
}

/// Decides unimodular equivalence of two full-dimensional simplices by
/// comparing canonical group forms; on success returns a map sending the
/// first onto the second.
pub fn simplex_equivalent(
    p: &LatticePolytope,
    q: &LatticePolytope,
) -> Result<Option<UnimodularMap>> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), got: q.dim() });
    }
    let gp = lambda_of_simplex(p)?;
    let gq = lambda_of_simplex(q)?;
    if gp.order() != gq.order() || gp.den() != gq.den() {
        return Ok(None);
    }
    let (fp, perm_p) = gp.canonical_form()?;
    let (fq, perm_q) = gq.canonical_form()?;
    if fp != fq {
        return Ok(None);
    }
    // canonical position k matches vertex perm_p[k] of p with perm_q[k] of q
    let d = p.dim();
    let ap: Vec<Vec<i64>> = perm_p
        .iter()
        .map(|&i| {
            let mut r = p.vertices()[i].clone();
            r.push(1);
            r
        })
        .collect();
    let bq: Vec<Vec<i64>> = perm_q
        .iter()
        .map(|&i| {
            let mut r = q.vertices()[i].clone();
            r.push(1);
            r
        })
        .collect();
    let a = IntegerMatrix::from_rows(&ap)?;
    let b = IntegerMatrix::from_rows(&bq)?;
    let x = solve_right_integer(&a, &b)?.ok_or_else(|| {
        Error::InconsistentCounts(
            "matching group forms but no integral vertex map".into(),
        )
    })?;
    let mut u = IntegerMatrix::zero(d, d);
    for i in 0..d {
        debug_assert_eq!(x.get(i, d), 0);
        for j in 0..d {
            u.set(i, j, x.get(i, j));
        }
    }
    debug_assert_eq!(x.get(d, d), 1);
    let w: Vec<i64> = (0..d).map(|j| x.get(d, j)).collect();
    Ok(Some(UnimodularMap::new(u, w)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::delta_of_polytope;
    use crate::transform::random_unimodular_map;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly(dim: usize, pts: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_slices(dim, pts).unwrap()
    }

    #[test]
    fn group_of_volume_two_simplex() {
        let p = poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]);
        let g = lambda_of_simplex(&p).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.den(), 2);
        assert_eq!(g.delta_vector().unwrap().coeffs(), &[1, 0, 1, 0]);
        assert!(g.zero_columns().is_empty());
    }

    #[test]
    fn group_of_unimodular_simplex_is_trivial() {
        let p = poly(2, &[&[0, 0], &[1, 0], &[0, 1]]);
        let g = lambda_of_simplex(&p).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.delta_vector().unwrap().coeffs(), &[1, 0, 0]);
        // every column is zero: a unimodular simplex is a pyramid over a point
        assert_eq!(g.zero_columns(), vec![0, 1, 2]);
    }

    #[test]
    fn group_delta_matches_ehrhart_delta() {
        let cases = vec![
            poly(2, &[&[0, 0], &[1, 0], &[2, 3]]),
            poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]),
            poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 3]]),
            poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 4]]),
            poly(4, &[
                &[0, 0, 0, 0],
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[0, 0, 1, 0],
                &[1, 1, 1, 3],
            ]),
        ];
        for p in cases {
            let from_group = lambda_of_simplex(&p).unwrap().delta_vector().unwrap();
            let from_counts = delta_of_polytope(&p).unwrap();
            assert_eq!(from_group, from_counts, "for {:?}", p.vertices());
        }
    }

    #[test]
    fn pyramid_detection_via_zero_column() {
        // pyramid over the volume-2 triangle conv(0, e1, e1+2e2); that base
        // is itself a pyramid (apex 0 over the segment x = 1), so two
        // coordinates vanish: sorted vertices (0,0,0) and (0,0,1)
        let p = poly(3, &[&[0, 0, 0], &[1, 0, 0], &[1, 2, 0], &[0, 0, 1]]);
        let g = lambda_of_simplex(&p).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.zero_columns(), vec![0, 1]);
        // a simplex with interior lattice points is not a pyramid at all
        let q = poly(2, &[&[0, 0], &[1, 0], &[2, 3]]);
        let h = lambda_of_simplex(&q).unwrap();
        assert!(h.zero_columns().is_empty());
    }

    #[test]
    fn family_builders_known_heights() {
        let g = build_order3(3, 0).unwrap();
        let mut h: Vec<i64> = (1..g.order()).map(|i| g.height_of(i)).collect();
        h.sort_unstable();
        assert_eq!(h, vec![1, 2]);
        assert_eq!(g.delta_vector().unwrap().coeffs(), &[1, 1, 1]);

        let g = build_order3(1, 1).unwrap();
        let mut h: Vec<i64> = (1..g.order()).map(|i| g.height_of(i)).collect();
        h.sort_unstable();
        assert_eq!(h, vec![1, 1]);

        let g = build_cyclic4(2, 0, 2).unwrap();
        let mut h: Vec<i64> = (1..g.order()).map(|i| g.height_of(i)).collect();
        h.sort_unstable();
        assert_eq!(h, vec![2, 2, 2]);
        assert_eq!(g.delta_vector().unwrap().coeffs(), &[1, 0, 3, 0]);

        let g = build_cyclic4(3, 1, 1).unwrap();
        let mut h: Vec<i64> = (1..g.order()).map(|i| g.height_of(i)).collect();
        h.sort_unstable();
        assert_eq!(h, vec![2, 2, 3]);

        let g = build_klein4(2, 2, 2).unwrap();
        let mut h: Vec<i64> = (1..g.order()).map(|i| g.height_of(i)).collect();
        h.sort_unstable();
        assert_eq!(h, vec![2, 2, 2]);
        assert_eq!(g.delta_vector().unwrap().coeffs(), &[1, 0, 3, 0, 0, 0]);

        let g = build_order2(4).unwrap();
        assert_eq!(g.delta_vector().unwrap().coeffs(), &[1, 0, 1, 0]);
    }

    #[test]
    fn family_builders_reject_bad_parameters() {
        assert!(build_order3(1, 0).is_err()); // height 1/3
        assert!(build_cyclic4(1, 1, 1).is_err()); // height 6/4
        assert!(build_cyclic4(0, 2, 0).is_err()); // order 2, not 4
        assert!(build_klein4(1, 1, 0).is_err()); // odd block sum
        assert!(build_klein4(0, 2, 0).is_err()); // generators coincide
        assert!(build_order2(3).is_err()); // odd coordinate count
    }

    #[test]
    fn generator_choice_does_not_change_the_group() {
        // (1/3,1/3,1/3) and (2/3,2/3,2/3) generate the same subgroup
        let a = build_order3(3, 0).unwrap();
        let b = build_order3(0, 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.canonical_form().unwrap().0, b.canonical_form().unwrap().0);
    }

    #[test]
    fn canonical_form_distinguishes_group_structure() {
        // same coordinate count and order, different structure
        let cyc = build_cyclic4(2, 0, 2).unwrap();
        let kle = build_klein4(2, 0, 2).unwrap();
        assert_ne!(cyc.canonical_form().unwrap().0, kle.canonical_form().unwrap().0);
    }

    #[test]
    fn canonical_form_is_permutation_invariant() {
        let p = poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 4]]);
        let g = lambda_of_simplex(&p).unwrap();
        let base = g.canonical_form().unwrap().0;
        // permuted coordinates: relabel the simplex vertices
        let q = poly(3, &[&[1, 1, 4], &[0, 1, 0], &[1, 0, 0], &[0, 0, 0]]);
        let h = lambda_of_simplex(&q).unwrap();
        assert_eq!(base, h.canonical_form().unwrap().0);
    }

    #[test]
    fn simplex_equivalence_finds_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cases = vec![
            poly(2, &[&[0, 0], &[1, 0], &[2, 3]]),
            poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 4]]),
            poly(4, &[
                &[0, 0, 0, 0],
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[0, 0, 1, 0],
                &[1, 1, 1, 3],
            ]),
        ];
        for p in cases {
            let f = random_unimodular_map(p.dim(), &mut rng);
            let q = p.apply(&f).unwrap();
            let w = simplex_equivalent(&p, &q).unwrap().expect("must be equivalent");
            assert_eq!(p.apply(&w).unwrap(), q);
        }
    }

    #[test]
    fn simplex_equivalence_rejects_different_groups() {
        // volume 4 with cyclic vs Klein structure
        let cyc = poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 4]]);
        let g = lambda_of_simplex(&cyc).unwrap();
        assert_eq!(g.order(), 4);
        // conv(0, e1, e1+2e2, e1+e2+2e3)? build a Klein-type volume-4 simplex:
        // heights differ, so groups must differ
        let other = poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 3]]);
        assert!(simplex_equivalent(&cyc, &other).unwrap().is_none());
    }

    #[test]
    fn non_simplex_rejected() {
        let sq = poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert!(matches!(
            lambda_of_simplex(&sq),
            Err(Error::NotASimplex { .. })
        ));
        let flat = poly(2, &[&[0, 0], &[2, 0]]);
        assert!(matches!(
            lambda_of_simplex(&flat),
            Err(Error::NotFullDimensional { .. })
        ));
    }
}
