//! Unimodular affine maps and normalization of affine lattice data.
//!
//! A map sends a row vector `x` to `x * M + w` with `M` unimodular. These are
//! exactly the symmetries of the lattice `Z^d`, so every invariant in this
//! crate must be constant along their orbits.

use crate::matrix::{hermite_normal_form, smith_normal_form, solve_right_integer, IntegerMatrix};
use crate::{arith, Error, Result};
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodularMap {
    matrix: IntegerMatrix,
    translation: Vec<i64>,
}

impl UnimodularMap {
    pub fn new(matrix: IntegerMatrix, translation: Vec<i64>) -> Result<Self> {
        let d = matrix.nrows();
        if matrix.ncols() != d {
            return Err(Error::BadInput("map matrix must be square".into()));
        }
        if translation.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: translation.len() });
        }
        let det = matrix.det()?;
        if det.abs() != 1 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(UnimodularMap { matrix, translation })
    }

    pub fn identity(d: usize) -> Self {
        UnimodularMap { matrix: IntegerMatrix::identity(d), translation: vec![0; d] }
    }

    pub fn translation_only(w: Vec<i64>) -> Self {
        UnimodularMap { matrix: IntegerMatrix::identity(w.len()), translation: w }
    }

    pub fn matrix(&self) -> &IntegerMatrix {
        &self.matrix
    }

    pub fn translation(&self) -> &[i64] {
        &self.translation
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `x * M + w`.
    pub fn apply_point(&self, x: &[i64]) -> Result<Vec<i64>> {
        let mut y = self.matrix.apply_row(x)?;
        for (yi, wi) in y.iter_mut().zip(&self.translation) {
            *yi = arith::add(*yi, *wi)?;
        }
        Ok(y)
    }

    /// The map `x ↦ then(self(x))`.
    pub fn compose(&self, then: &UnimodularMap) -> Result<UnimodularMap> {
        if self.dim() != then.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: then.dim() });
        }
        let matrix = self.matrix.mul(&then.matrix)?;
        let mut translation = then.matrix.apply_row(&self.translation)?;
        for (t, w) in translation.iter_mut().zip(&then.translation) {
            *t = arith::add(*t, *w)?;
        }
        // composition of unimodular maps stays unimodular; skip revalidation
        Ok(UnimodularMap { matrix, translation })
    }

    pub fn inverse(&self) -> Result<UnimodularMap> {
        let inv = solve_right_integer(&self.matrix, &IntegerMatrix::identity(self.dim()))?
            .expect("unimodular matrix has an integer inverse");
        let mut w = inv.apply_row(&self.translation)?;
        for t in w.iter_mut() {
            *t = -*t;
        }
        Ok(UnimodularMap { matrix: inv, translation: w })
    }
}

/// Seeded random unimodular map: a product of coordinate swaps, sign flips
/// and unit shears, plus a small translation. Entry growth is kept modest so
/// downstream arithmetic stays far from overflow.
pub fn random_unimodular_map<R: Rng>(d: usize, rng: &mut R) -> UnimodularMap {
    let mut m = IntegerMatrix::identity(d);
    if d > 1 {
        let steps = 2 * d + 4;
        for _ in 0..steps {
            let i = rng.gen_range(0..d);
            let mut j = rng.gen_range(0..d - 1);
            if j >= i {
                j += 1;
            }
            match rng.gen_range(0..4u8) {
                0 => {
                    // swap coordinates i and j
                    for r in 0..d {
                        let (a, b) = (m.get(r, i), m.get(r, j));
                        m.set(r, i, b);
                        m.set(r, j, a);
                    }
                }
                1 => {
                    for r in 0..d {
                        m.set(r, i, -m.get(r, i));
                    }
                }
                _ => {
                    // shear: col_i += s * col_j
                    let s: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
                    for r in 0..d {
                        let v = m.get(r, i) + s * m.get(r, j);
                        m.set(r, i, v);
                    }
                }
            }
        }
    } else if d == 1 && rng.gen_bool(0.5) {
        m.set(0, 0, -1);
    }
    let translation = (0..d).map(|_| rng.gen_range(-2..=2)).collect();
    UnimodularMap { matrix: m, translation }
}

/// Change of coordinates that exhibits the affine lattice spanned by a point
/// set: `project` carries `aff(points) ∩ Z^d` bijectively onto `Z^rank`, and
/// `lift` is its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineNormalization {
    base: Vec<i64>,
    forward: IntegerMatrix, // d x d unimodular
    back: IntegerMatrix,    // rank x d, rows = basis of the saturated direction lattice
    rank: usize,
}

impl AffineNormalization {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn base(&self) -> &[i64] {
        &self.base
    }

    pub fn forward(&self) -> &IntegerMatrix {
        &self.forward
    }

    pub fn back(&self) -> &IntegerMatrix {
        &self.back
    }

    /// Coordinates of a lattice point of the affine hull.
    pub fn project(&self, x: &[i64]) -> Result<Vec<i64>> {
        let mut diff = Vec::with_capacity(x.len());
        for (a, b) in x.iter().zip(&self.base) {
            diff.push(arith::sub(*a, *b)?);
        }
        let z = self.forward.apply_row(&diff)?;
        if z[self.rank..].iter().any(|&c| c != 0) {
            return Err(Error::BadInput(
                "point does not lie on the affine hull lattice".into(),
            ));
        }
        Ok(z[..self.rank].to_vec())
    }

    /// Inverse of `project`.
    pub fn lift(&self, y: &[i64]) -> Result<Vec<i64>> {
        if y.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, got: y.len() });
        }
        let mut x = self.back.apply_row(y)?;
        for (xi, b) in x.iter_mut().zip(&self.base) {
            *xi = arith::add(*xi, *b)?;
        }
        Ok(x)
    }
}

/// Normalizes a point set to full dimension: returns the projected points and
/// the witness bijection. Full-dimensional input gets the identity witness.
///
/// The direction lattice is saturated: projection uses the full lattice
/// `Z^d ∩ aff(points)`, not just the sublattice spanned by vertex
/// differences, so lattice point counts are preserved exactly.
pub fn affine_lattice_normalize(
    points: &[Vec<i64>],
) -> Result<(Vec<Vec<i64>>, AffineNormalization)> {
    if points.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    let d = points[0].len();
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::BadInput("points of mixed dimension".into()));
    }
    let base = points[0].clone();
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(&base)
                .map(|(a, b)| arith::sub(*a, *b))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;

    let rank = if diffs.is_empty() {
        0
    } else {
        IntegerMatrix::from_rows(&diffs)?.rank()?
    };

    if rank == d {
        let id = AffineNormalization {
            base: vec![0; d],
            forward: IntegerMatrix::identity(d),
            back: IntegerMatrix::identity(d),
            rank: d,
        };
        return Ok((points.to_vec(), id));
    }

    // HNF basis of the difference lattice, then SNF saturation: with
    // H = U·D·V, the first `rank` rows of V are a Z-basis of the saturated
    // lattice Q-span(H) ∩ Z^d, and V^{-1} reads off coordinates.
    let (normalization, projected);
    if rank == 0 {
        normalization = AffineNormalization {
            base,
            forward: IntegerMatrix::identity(d),
            back: IntegerMatrix::zero(0, d),
            rank: 0,
        };
        projected = points.iter().map(|_| Vec::new()).collect();
    } else {
        let (h, _) = hermite_normal_form(&IntegerMatrix::from_rows(&diffs)?)?;
        let basis: Vec<Vec<i64>> = (0..rank).map(|i| h.row(i).to_vec()).collect();
        let snf = smith_normal_form(&IntegerMatrix::from_rows(&basis)?)?;
        let v = snf.right;
        let forward = solve_right_integer(&v, &IntegerMatrix::identity(d))?
            .expect("unimodular matrix has an integer inverse");
        let back_rows: Vec<Vec<i64>> = (0..rank).map(|i| v.row(i).to_vec()).collect();
        let back = IntegerMatrix::from_rows(&back_rows)?;
        normalization = AffineNormalization { base, forward, back, rank };
        projected = points
            .iter()
            .map(|p| normalization.project(p))
            .collect::<Result<Vec<_>>>()?;
    }
    Ok((projected, normalization))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn apply_and_inverse_round_trip() {
        let m = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let f = UnimodularMap::new(m, vec![3, -1]).unwrap();
        let x = vec![2, 5];
        let y = f.apply_point(&x).unwrap();
        assert_eq!(y, vec![8, 1]); // (2,5)·swap = (5,2), +(3,-1)
        assert_eq!(f.inverse().unwrap().apply_point(&y).unwrap(), x);
    }

    #[test]
    fn non_unimodular_rejected() {
        let m = IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(
            UnimodularMap::new(m, vec![0, 0]).unwrap_err(),
            Error::NotUnimodular(2)
        );
    }

    #[test]
    fn compose_order() {
        let shear =
            UnimodularMap::new(IntegerMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap(), vec![0, 0])
                .unwrap();
        let shift = UnimodularMap::translation_only(vec![1, 0]);
        let f = shift.compose(&shear).unwrap(); // first shift, then shear
        let y = f.apply_point(&[0, 0]).unwrap();
        assert_eq!(y, shear.apply_point(&shift.apply_point(&[0, 0]).unwrap()).unwrap());
        assert_eq!(y, vec![1, 1]);
    }

    #[test]
    fn random_maps_are_unimodular_and_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let maps: Vec<UnimodularMap> = (0..50).map(|_| random_unimodular_map(4, &mut rng)).collect();
        for f in &maps {
            assert_eq!(f.matrix().det().unwrap().abs(), 1);
        }
        let mut rng2 = ChaCha8Rng::seed_from_u64(7);
        let again: Vec<UnimodularMap> = (0..50).map(|_| random_unimodular_map(4, &mut rng2)).collect();
        assert_eq!(maps, again);
    }

    #[test]
    fn normalize_full_dimensional_is_identity() {
        let pts = vec![vec![0, 0], vec![1, 0], vec![0, 1]];
        let (proj, w) = affine_lattice_normalize(&pts).unwrap();
        assert_eq!(proj, pts);
        assert_eq!(w.rank(), 2);
        assert_eq!(w.forward(), &IntegerMatrix::identity(2));
        assert_eq!(w.base(), &[0, 0]);
    }

    #[test]
    fn normalize_segment() {
        // conv((0,0),(0,2)) in dim 2 -> conv(0, 2) in dim 1
        let pts = vec![vec![0, 0], vec![0, 2]];
        let (proj, w) = affine_lattice_normalize(&pts).unwrap();
        assert_eq!(proj, vec![vec![0], vec![2]]);
        assert_eq!(w.rank(), 1);
        // round trip through the witness
        for (p, q) in pts.iter().zip(&proj) {
            assert_eq!(&w.project(p).unwrap(), q);
            assert_eq!(&w.lift(q).unwrap(), p);
        }
        // the midpoint lattice point also round-trips
        assert_eq!(w.project(&[0, 1]).unwrap(), vec![1]);
        assert_eq!(w.lift(&[1]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn normalize_saturates() {
        // differences span 2·Z ⊂ Z inside the x-axis; the affine lattice is
        // still all of Z, so (4,0) must project to 4, not 2
        let pts = vec![vec![0, 0], vec![4, 0]];
        let (proj, w) = affine_lattice_normalize(&pts).unwrap();
        assert_eq!(proj, vec![vec![0], vec![4]]);
        assert_eq!(w.project(&[1, 0]).unwrap(), vec![1]);
    }

    #[test]
    fn normalize_skew_plane() {
        // plane x+y+z = 3 in Z^3: lattice points biject with Z^2
        let pts = vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 3]];
        let (proj, w) = affine_lattice_normalize(&pts).unwrap();
        assert_eq!(w.rank(), 2);
        for (p, q) in pts.iter().zip(&proj) {
            assert_eq!(&w.lift(q).unwrap(), p);
        }
        // an interior lattice point of the hull stays on the lattice
        assert_eq!(w.lift(&w.project(&[1, 1, 1]).unwrap()).unwrap(), vec![1, 1, 1]);
        // off-hull point is rejected
        assert!(w.project(&[0, 0, 0]).is_err());
    }

    #[test]
    fn normalize_point() {
        let pts = vec![vec![5, 7]];
        let (proj, w) = affine_lattice_normalize(&pts).unwrap();
        assert_eq!(proj, vec![Vec::<i64>::new()]);
        assert_eq!(w.rank(), 0);
        assert_eq!(w.lift(&[]).unwrap(), vec![5, 7]);
    }
}
