//! Integer matrices with exact Hermite and Smith normal forms.
//!
//! Conventions used throughout the crate:
//! * matrices are row-major; points are row vectors and maps act by `v * U`;
//! * `hermite_normal_form` is row-style: `H = U * A` with positive pivots and
//!   the entries above each pivot reduced into `[0, pivot)`;
//! * `smith_normal_form` returns `A = U * D * V` with a divisibility chain on
//!   the diagonal of `D`.

use crate::arith::{div_floor, narrow, Rat};
use crate::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    a: Vec<i64>,
}

impl IntegerMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::BadInput(format!(
                "matrix data length {} does not match {}x{}",
                data.len(),
                rows,
                cols
            )));
        }
        Ok(IntegerMatrix { rows, cols, a: data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, a: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::BadInput("matrix with no rows".into()));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::BadInput("ragged matrix rows".into()));
        }
        let mut a = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            a.extend_from_slice(r);
        }
        Ok(IntegerMatrix { rows: rows.len(), cols, a })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.a[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, got: o.rows });
        }
        let mut out = Self::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc: i128 = 0;
                for k in 0..self.cols {
                    acc = acc
                        .checked_add(self.get(i, k) as i128 * o.get(k, j) as i128)
                        .ok_or(Error::Overflow("matrix mul"))?;
                }
                out.set(i, j, narrow(acc)?);
            }
        }
        Ok(out)
    }

    /// Row vector times matrix, the crate-wide action `v * A`.
    pub fn apply_row(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, got: v.len() });
        }
        let mut out = vec![0i64; self.cols];
        for (j, slot) in out.iter_mut().enumerate() {
            let mut acc: i128 = 0;
            for (k, &vk) in v.iter().enumerate() {
                acc = acc
                    .checked_add(vk as i128 * self.get(k, j) as i128)
                    .ok_or(Error::Overflow("apply_row"))?;
            }
            *slot = narrow(acc)?;
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination in `i128`.
    pub fn det(&self) -> Result<i64> {
        if self.rows != self.cols {
            return Err(Error::BadInput("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut m: Vec<i128> = self.a.iter().map(|&x| x as i128).collect();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[idx(k, k)] == 0 {
                let swap = (k + 1..n).find(|&i| m[idx(i, k)] != 0);
                match swap {
                    None => return Ok(0),
                    Some(i) => {
                        for j in 0..n {
                            m.swap(idx(k, j), idx(i, j));
                        }
                        sign = -sign;
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t1 = m[idx(i, j)]
                        .checked_mul(m[idx(k, k)])
                        .ok_or(Error::Overflow("det"))?;
                    let t2 = m[idx(i, k)]
                        .checked_mul(m[idx(k, j)])
                        .ok_or(Error::Overflow("det"))?;
                    let num = t1.checked_sub(t2).ok_or(Error::Overflow("det"))?;
                    debug_assert_eq!(num % prev, 0);
                    m[idx(i, j)] = num / prev;
                }
                m[idx(i, k)] = 0;
            }
            prev = m[idx(k, k)];
        }
        narrow(sign * m[idx(n - 1, n - 1)])
    }

    pub fn is_unimodular(&self) -> Result<bool> {
        if self.rows != self.cols {
            return Ok(false);
        }
        Ok(self.det()?.abs() == 1)
    }

    pub fn rank(&self) -> Result<usize> {
        let (h, _) = hermite_normal_form(self)?;
        Ok((0..h.rows).filter(|&i| h.row(i).iter().any(|&x| x != 0)).count())
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

// in-place checked row operations shared by the normal-form routines

fn row_swap(m: &mut IntegerMatrix, i: usize, j: usize) {
    for c in 0..m.ncols() {
        let (a, b) = (m.get(i, c), m.get(j, c));
        m.set(i, c, b);
        m.set(j, c, a);
    }
}

fn row_negate(m: &mut IntegerMatrix, i: usize) {
    for c in 0..m.ncols() {
        m.set(i, c, -m.get(i, c));
    }
}

/// row_i -= q * row_j
fn row_sub(m: &mut IntegerMatrix, i: usize, j: usize, q: i64) -> Result<()> {
    for c in 0..m.ncols() {
        let v = m.get(i, c) as i128 - q as i128 * m.get(j, c) as i128;
        m.set(i, c, narrow(v)?);
    }
    Ok(())
}

fn col_swap(m: &mut IntegerMatrix, i: usize, j: usize) {
    for r in 0..m.nrows() {
        let (a, b) = (m.get(r, i), m.get(r, j));
        m.set(r, i, b);
        m.set(r, j, a);
    }
}

fn col_negate(m: &mut IntegerMatrix, i: usize) {
    for r in 0..m.nrows() {
        m.set(r, i, -m.get(r, i));
    }
}

/// col_i -= q * col_j
fn col_sub(m: &mut IntegerMatrix, i: usize, j: usize, q: i64) -> Result<()> {
    for r in 0..m.nrows() {
        let v = m.get(r, i) as i128 - q as i128 * m.get(r, j) as i128;
        m.set(r, i, narrow(v)?);
    }
    Ok(())
}

/// Row-style Hermite normal form.
///
/// Returns `(H, U)` with `H = U * A` and `U` unimodular. Pivots are positive,
/// entries above each pivot lie in `[0, pivot)`, and zero rows sink to the
/// bottom. The output is the unique HNF of the row lattice of `A`.
pub fn hermite_normal_form(a: &IntegerMatrix) -> Result<(IntegerMatrix, IntegerMatrix)> {
    let mut h = a.clone();
    let mut u = IntegerMatrix::identity(a.nrows());
    let m = a.nrows();
    let n = a.ncols();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        // euclidean passes until at most one nonzero entry remains in rows r..
        loop {
            let mut best: Option<usize> = None;
            for i in r..m {
                if h.get(i, c) != 0
                    && best.is_none_or(|b| h.get(i, c).abs() < h.get(b, c).abs())
                {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            if b != r {
                row_swap(&mut h, r, b);
                row_swap(&mut u, r, b);
            }
            let mut again = false;
            for i in r + 1..m {
                if h.get(i, c) != 0 {
                    let q = div_floor(h.get(i, c), h.get(r, c));
                    row_sub(&mut h, i, r, q)?;
                    row_sub(&mut u, i, r, q)?;
                    again = again || h.get(i, c) != 0;
                }
            }
            if !again {
                break;
            }
        }
        if h.get(r, c) == 0 {
            continue;
        }
        if h.get(r, c) < 0 {
            row_negate(&mut h, r);
            row_negate(&mut u, r);
        }
        for i in 0..r {
            let q = div_floor(h.get(i, c), h.get(r, c));
            if q != 0 {
                row_sub(&mut h, i, r, q)?;
                row_sub(&mut u, i, r, q)?;
            }
        }
        r += 1;
    }
    Ok((h, u))
}

/// Smith normal form `A = U * D * V`.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub left: IntegerMatrix,
    pub diag: IntegerMatrix,
    pub right: IntegerMatrix,
}

impl SmithDecomposition {
    /// The nonzero diagonal entries, in chain order.
    pub fn divisors(&self) -> Vec<i64> {
        let k = self.diag.nrows().min(self.diag.ncols());
        (0..k).map(|i| self.diag.get(i, i)).filter(|&d| d != 0).collect()
    }
}

/// Computes `A = U * D * V` with `U`, `V` unimodular and `D` diagonal whose
/// nonzero entries satisfy `d_1 | d_2 | ... | d_r` with all `d_i > 0`.
pub fn smith_normal_form(a: &IntegerMatrix) -> Result<SmithDecomposition> {
    let mut d = a.clone();
    let m = a.nrows();
    let n = a.ncols();
    // invariant: a = left * d * right after every elementary step
    let mut left = IntegerMatrix::identity(m);
    let mut right = IntegerMatrix::identity(n);

    // row op E on d is compensated by left <- left * E^{-1} (column ops on left);
    // col op F on d is compensated by right <- F^{-1} * right (row ops on right)
    let mut t = 0;
    while t < m.min(n) {
        'place: loop {
            // minimal nonzero entry of the trailing submatrix to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if d.get(i, j) != 0
                        && best.is_none_or(|(bi, bj)| d.get(i, j).abs() < d.get(bi, bj).abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break 'place };
            if bi != t {
                row_swap(&mut d, t, bi);
                col_swap(&mut left, t, bi);
            }
            if bj != t {
                col_swap(&mut d, t, bj);
                row_swap(&mut right, t, bj);
            }
            // clear the rest of column t
            for i in t + 1..m {
                if d.get(i, t) != 0 {
                    let q = div_floor(d.get(i, t), d.get(t, t));
                    row_sub(&mut d, i, t, q)?;
                    col_sub(&mut left, t, i, -q)?;
                    if d.get(i, t) != 0 {
                        continue 'place;
                    }
                }
            }
            // clear the rest of row t
            for j in t + 1..n {
                if d.get(t, j) != 0 {
                    let q = div_floor(d.get(t, j), d.get(t, t));
                    col_sub(&mut d, j, t, q)?;
                    row_sub(&mut right, t, j, -q)?;
                    if d.get(t, j) != 0 {
                        continue 'place;
                    }
                }
            }
            // enforce divisibility of the trailing block by the pivot
            let p = d.get(t, t);
            for i in t + 1..m {
                for j in t + 1..n {
                    if d.get(i, j) % p != 0 {
                        // fold row i into row t and restart this pivot
                        row_sub(&mut d, t, i, -1)?;
                        col_sub(&mut left, i, t, 1)?;
                        continue 'place;
                    }
                }
            }
            break 'place;
        }
        if d.get(t, t) == 0 {
            break;
        }
        if d.get(t, t) < 0 {
            row_negate(&mut d, t);
            col_negate(&mut left, t);
        }
        t += 1;
    }
    Ok(SmithDecomposition { left, diag: d, right })
}

/// Basis for the left kernel `{ x : x * A = 0 }`, as matrix rows.
/// The rows form a basis of the full (saturated) kernel lattice.
pub fn left_kernel(a: &IntegerMatrix) -> Result<IntegerMatrix> {
    let (h, u) = hermite_normal_form(a)?;
    let zero_rows: Vec<Vec<i64>> = (0..h.nrows())
        .filter(|&i| h.row(i).iter().all(|&x| x == 0))
        .map(|i| u.row(i).to_vec())
        .collect();
    if zero_rows.is_empty() {
        return Ok(IntegerMatrix::zero(0, a.nrows()));
    }
    IntegerMatrix::from_rows(&zero_rows)
}

/// Solves `S * X = B` exactly over the rationals for square nonsingular `S`.
/// Returns `Ok(None)` when the solution exists but is not integral.
pub fn solve_right_integer(s: &IntegerMatrix, b: &IntegerMatrix) -> Result<Option<IntegerMatrix>> {
    let n = s.nrows();
    if s.ncols() != n {
        return Err(Error::BadInput("solve needs a square left-hand side".into()));
    }
    if b.nrows() != n {
        return Err(Error::DimensionMismatch { expected: n, got: b.nrows() });
    }
    let cols = b.ncols();
    // rational gauss-jordan on [S | B]
    let mut w: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            s.row(i)
                .iter()
                .chain(b.row(i).iter())
                .map(|&x| Rat::int(x))
                .collect()
        })
        .collect();
    for p in 0..n {
        let piv = (p..n).find(|&i| !w[i][p].is_zero()).ok_or(Error::SingularMatrix)?;
        w.swap(p, piv);
        let inv = Rat::ONE.div(w[p][p])?;
        for j in p..n + cols {
            w[p][j] = w[p][j].mul(inv)?;
        }
        for i in 0..n {
            if i != p && !w[i][p].is_zero() {
                let f = w[i][p];
                for j in p..n + cols {
                    w[i][j] = w[i][j].sub(f.mul(w[p][j])?)?;
                }
            }
        }
    }
    let mut out = IntegerMatrix::zero(n, cols);
    for i in 0..n {
        for j in 0..cols {
            let v = w[i][n + j];
            if !v.is_integer() {
                return Ok(None);
            }
            out.set(i, j, v.num());
        }
    }
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntegerMatrix {
        IntegerMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn assert_hnf_shape(h: &IntegerMatrix) {
        // positive pivots, entries above each pivot in [0, pivot), staircase shape
        let mut last_col: Option<usize> = None;
        for i in 0..h.nrows() {
            let lead = (0..h.ncols()).find(|&j| h.get(i, j) != 0);
            match lead {
                None => {
                    for i2 in i..h.nrows() {
                        assert!(h.row(i2).iter().all(|&x| x == 0), "zero rows must be last");
                    }
                    break;
                }
                Some(c) => {
                    assert!(last_col.is_none_or(|lc| lc < c), "pivot columns must increase");
                    assert!(h.get(i, c) > 0, "pivot must be positive");
                    for i2 in 0..i {
                        let v = h.get(i2, c);
                        assert!(0 <= v && v < h.get(i, c), "entry above pivot not reduced");
                    }
                    last_col = Some(c);
                }
            }
        }
    }

    #[test]
    fn hnf_known_case() {
        let a = mat(&[&[1, 1, 2], &[1, 0, 0], &[0, 1, 0]]);
        let (h, u) = hermite_normal_form(&a).unwrap();
        assert_eq!(h, mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]));
        assert_eq!(u.mul(&a).unwrap(), h);
        assert!(u.is_unimodular().unwrap());
    }

    #[test]
    fn hnf_random_shape_and_transform() {
        // deterministic pseudo-random small matrices
        let mut seed = 12345u64;
        let mut next = move || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) as i64 % 7) - 3
        };
        for _ in 0..200 {
            let rows = 1 + (next().unsigned_abs() as usize % 4);
            let cols = 1 + (next().unsigned_abs() as usize % 4);
            let data: Vec<i64> = (0..rows * cols).map(|_| next()).collect();
            let a = IntegerMatrix::new(rows, cols, data).unwrap();
            let (h, u) = hermite_normal_form(&a).unwrap();
            assert_eq!(u.mul(&a).unwrap(), h);
            assert!(u.is_unimodular().unwrap());
            assert_hnf_shape(&h);
        }
    }

    #[test]
    fn hnf_is_canonical_under_row_scramble() {
        let a = mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let scrambles: Vec<IntegerMatrix> = vec![
            mat(&[&[0, 1, 0], &[1, 0, 0], &[3, -2, 1]]),
            mat(&[&[1, 0, 0], &[5, 1, 0], &[0, 7, -1]]),
        ];
        let (h0, _) = hermite_normal_form(&a).unwrap();
        for s in &scrambles {
            assert!(s.is_unimodular().unwrap());
            let (h, _) = hermite_normal_form(&s.mul(&a).unwrap()).unwrap();
            assert_eq!(h, h0, "HNF must depend only on the row lattice");
        }
    }

    #[test]
    fn det_cases() {
        assert_eq!(mat(&[&[2, 0], &[0, 3]]).det().unwrap(), 6);
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).det().unwrap(), -1);
        assert_eq!(mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).det().unwrap(), 0);
        assert_eq!(
            mat(&[&[3, -1, 2], &[0, 2, 1], &[1, 1, 1]]).det().unwrap(),
            3 * (2 - 1) - (-1) * (0 - 1) + 2 * (0 - 2)
        );
        assert_eq!(IntegerMatrix::identity(7).det().unwrap(), 1);
    }

    #[test]
    fn snf_known_cases() {
        let a = mat(&[&[2, 0], &[0, 3]]);
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.divisors(), vec![1, 6]);
        assert_eq!(s.left.mul(&s.diag).unwrap().mul(&s.right).unwrap(), a);
        assert!(s.left.is_unimodular().unwrap());
        assert!(s.right.is_unimodular().unwrap());

        // lifted simplex rows (v_i, 1) for conv(0, e1, e2, e1+e2+2e3)
        let a = mat(&[&[0, 0, 0, 1], &[1, 0, 0, 1], &[0, 1, 0, 1], &[1, 1, 2, 1]]);
        let s = smith_normal_form(&a).unwrap();
        assert_eq!(s.divisors(), vec![1, 1, 1, 2]);
    }

    #[test]
    fn snf_divisibility_chain() {
        let cases = vec![
            mat(&[&[4, 6], &[6, 4]]),
            mat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]),
            mat(&[&[1, 2], &[3, 4], &[5, 6]]),
            mat(&[&[0, 0], &[0, 0]]),
            mat(&[&[6, 0, 0], &[0, 10, 0], &[0, 0, 15]]),
        ];
        for a in cases {
            let s = smith_normal_form(&a).unwrap();
            assert_eq!(s.left.mul(&s.diag).unwrap().mul(&s.right).unwrap(), a);
            assert!(s.left.is_unimodular().unwrap());
            assert!(s.right.is_unimodular().unwrap());
            let divs = s.divisors();
            for w in divs.windows(2) {
                assert!(w[1] % w[0] == 0, "chain {divs:?} broken");
            }
            assert!(divs.iter().all(|&d| d > 0));
            // off-diagonal must vanish
            for i in 0..s.diag.nrows() {
                for j in 0..s.diag.ncols() {
                    if i != j {
                        assert_eq!(s.diag.get(i, j), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_of_dependent_rows() {
        // row3 = row1 + row2
        let a = mat(&[&[1, 0, 2], &[0, 1, 1], &[1, 1, 3]]);
        let k = left_kernel(&a).unwrap();
        assert_eq!(k.nrows(), 1);
        let prod = k.mul(&a).unwrap();
        assert!(prod.row(0).iter().all(|&x| x == 0));
        let g = k.row(0).iter().fold(0, |acc, &x| crate::arith::gcd(acc, x));
        assert_eq!(g, 1, "kernel basis row must be primitive");
    }

    #[test]
    fn kernel_full_rank_is_empty() {
        let a = mat(&[&[1, 0], &[0, 1]]);
        assert_eq!(left_kernel(&a).unwrap().nrows(), 0);
    }

    #[test]
    fn solve_integer_and_rational() {
        let s = mat(&[&[1, 1], &[0, 2]]);
        let b = mat(&[&[3, 1], &[4, 2]]);
        let x = solve_right_integer(&s, &b).unwrap().unwrap();
        assert_eq!(s.mul(&x).unwrap(), b);
        // rational-only solution
        let b2 = mat(&[&[1, 0], &[1, 0]]);
        assert!(solve_right_integer(&s, &b2).unwrap().is_none());
        // singular lhs
        let sing = mat(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_right_integer(&sing, &b), Err(Error::SingularMatrix));
    }

    #[test]
    fn rank_cases() {
        assert_eq!(mat(&[&[1, 2, 3], &[2, 4, 6]]).rank().unwrap(), 1);
        assert_eq!(mat(&[&[1, 0], &[0, 1], &[1, 1]]).rank().unwrap(), 2);
        assert_eq!(IntegerMatrix::zero(3, 3).rank().unwrap(), 0);
    }

    #[test]
    fn apply_row_convention() {
        // v * A with A acting on row vectors
        let a = mat(&[&[0, 1], &[1, 0]]);
        assert_eq!(a.apply_row(&[2, 5]).unwrap(), vec![5, 2]);
    }
}
