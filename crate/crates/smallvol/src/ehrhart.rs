//! δ-vectors: the numerator coefficients of the Ehrhart series.
//!
//! For a lattice polytope `P` of intrinsic dimension `d` the series
//! `(1-t)^{d+1} (1 + Σ_{n>=1} |nP ∩ Z^d| t^n)` is a polynomial
//! `δ_0 + δ_1 t + ... + δ_d t^d` with nonnegative integer coefficients.
//! This module extracts δ from point counts, evaluates point counts back
//! from δ (both for the closed polytope and, via reciprocity, for its
//! relative interior), and evaluates the classical linear constraints on
//! δ-vectors.

use crate::arith::{self, binomial};
use crate::polytope::LatticePolytope;
use crate::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DeltaVector {
    coeffs: Vec<i64>,
}

impl DeltaVector {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::BadInput("empty delta vector".into()));
        }
        Ok(DeltaVector { coeffs })
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Intrinsic dimension `d`; the vector has `d + 1` entries.
    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Largest `i` with `δ_i != 0`.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|&c| c != 0)
            .unwrap_or(0)
    }

    /// Normalized volume `Σ δ_i`.
    pub fn volume(&self) -> Result<i64> {
        let mut s = 0i64;
        for &c in &self.coeffs {
            s = arith::add(s, c)?;
        }
        Ok(s)
    }

    /// `|nP ∩ Z^d| = Σ_i δ_i C(n + d - i, d)` for `n >= 0`.
    pub fn ehrhart_value(&self, n: i64) -> Result<i64> {
        if n < 0 {
            return Err(Error::BadInput("negative dilation".into()));
        }
        let d = self.dim() as i64;
        let mut total = 0i64;
        for (i, &c) in self.coeffs.iter().enumerate() {
            let i = i as i64;
            if n + d - i < d {
                continue; // binomial vanishes
            }
            total = arith::add(total, arith::mul(c, binomial(n + d - i, d)?)?)?;
        }
        Ok(total)
    }

    /// `|relint(nP) ∩ Z^d| = Σ_i δ_i C(n + i - 1, d)` for `n >= 1`
    /// (Ehrhart reciprocity).
    pub fn interior_value(&self, n: i64) -> Result<i64> {
        if n < 1 {
            return Err(Error::BadInput("interior evaluation needs n >= 1".into()));
        }
        let d = self.dim() as i64;
        let mut total = 0i64;
        for (i, &c) in self.coeffs.iter().enumerate() {
            let i = i as i64;
            if n + i - 1 < d {
                continue;
            }
            total = arith::add(total, arith::mul(c, binomial(n + i - 1, d)?)?)?;
        }
        Ok(total)
    }

    /// The inequalities `δ_0 + ... + δ_i <= δ_s + δ_{s-1} + ... + δ_{s-i}`
    /// for `0 <= i <= floor(s/2)`, where `s` is the degree. These hold for
    /// every lattice polytope.
    pub fn stanley_inequalities(&self) -> bool {
        let s = self.degree();
        for i in 0..=(s / 2) {
            let head: i64 = self.coeffs[..=i].iter().sum();
            let tail: i64 = self.coeffs[s - i..=s].iter().sum();
            if head > tail {
                return false;
            }
        }
        true
    }

    /// The inequalities `δ_{d-1} + ... + δ_{d-i} <= δ_2 + ... + δ_{i+1}`
    /// for `1 <= i <= floor((d-1)/2)`. These hold whenever `δ_d != 0`
    /// (polytopes with an interior lattice point); the function simply
    /// evaluates them.
    pub fn hibi_inequalities(&self) -> bool {
        let d = self.dim();
        if d < 3 {
            return true;
        }
        for i in 1..=((d - 1) / 2) {
            let upper: i64 = self.coeffs[d - i..=d - 1].iter().sum();
            let lower: i64 = self.coeffs[2..=i + 1].iter().sum();
            if upper > lower {
                return false;
            }
        }
        true
    }

    /// Pads with trailing zeros to `len` entries. Fails if a nonzero
    /// coefficient would have to be dropped.
    /// The generating polynomial as text, e.g. `1+t+2t^3`.
    pub fn polynomial(&self) -> String {
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    pub fn padded(&self, len: usize) -> Result<Vec<i64>> {
        if len < self.coeffs.len() && self.coeffs[len..].iter().any(|&c| c != 0) {
            return Err(Error::BadInput(format!(
                "cannot truncate delta vector {self} to {len} entries"
            )));
        }
        let mut out = self.coeffs.clone();
        out.resize(len, 0);
        Ok(out)
    }

    /// Componentwise `self <= other` after padding to the longer length.
    /// This is the monotonicity relation satisfied by a subpolytope's
    /// δ-vector inside its ambient polytope's.
    pub fn dominated_by(&self, other: &DeltaVector) -> Result<bool> {
        let len = self.coeffs.len().max(other.coeffs.len());
        let a = self.padded(len)?;
        let b = other.padded(len)?;
        Ok(a.iter().zip(&b).all(|(x, y)| x <= y))
    }

    /// Human-readable violations of the constraints every δ-vector of a
    /// lattice polytope satisfies, given independently computed counts.
    pub fn basic_violations(
        &self,
        points_at_one: i64,
        interior_at_one: i64,
        volume: i64,
    ) -> Result<Vec<String>> {
        let d = self.dim();
        let c = &self.coeffs;
        let mut bad = Vec::new();
        if c[0] != 1 {
            bad.push(format!("δ_0 = {} but must be 1", c[0]));
        }
        if let Some((i, v)) = c.iter().enumerate().find(|&(_, &v)| v < 0) {
            bad.push(format!("δ_{i} = {v} is negative"));
        }
        if d >= 1 {
            let expect = arith::sub(points_at_one, d as i64 + 1)?;
            if c[1] != expect {
                bad.push(format!(
                    "δ_1 = {} but |P∩Z^d| - (d+1) = {expect}",
                    c[1]
                ));
            }
            if c[d] != interior_at_one {
                bad.push(format!(
                    "δ_d = {} but interior count is {interior_at_one}",
                    c[d]
                ));
            }
            if c[1] < c[d] {
                bad.push(format!("δ_1 = {} < δ_d = {}", c[1], c[d]));
            }
            // with an interior point, every middle coefficient dominates δ_1
            if c[d] != 0 {
                for i in 1..d {
                    if c[i] < c[1] {
                        bad.push(format!(
                            "δ_d != 0 yet δ_{i} = {} < δ_1 = {}",
                            c[i], c[1]
                        ));
                    }
                }
            }
        }
        if self.volume()? != volume {
            bad.push(format!(
                "Σδ = {} but normalized volume is {volume}",
                self.volume()?
            ));
        }
        if !self.stanley_inequalities() {
            bad.push("partial-sum (degree) inequalities fail".into());
        }
        Ok(bad)
    }
}

impl fmt::Display for DeltaVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Recovers δ from the counts `L(1), ..., L(d)` via
/// `δ_j = Σ_{m=0}^{j} (-1)^m C(d+1, m) L(j-m)` with `L(0) = 1`.
pub fn delta_from_counts(dim: usize, counts: &[i64]) -> Result<DeltaVector> {
    if counts.len() != dim {
        return Err(Error::InconsistentCounts(format!(
            "need {dim} dilate counts, got {}",
            counts.len()
        )));
    }
    let l = |k: usize| -> i64 {
        if k == 0 {
            1
        } else {
            counts[k - 1]
        }
    };
    let d = dim as i64;
    let mut coeffs = Vec::with_capacity(dim + 1);
    for j in 0..=dim {
        let mut v = 0i64;
        for m in 0..=j {
            let term = arith::mul(binomial(d + 1, m as i64)?, l(j - m))?;
            v = if m % 2 == 0 {
                arith::add(v, term)?
            } else {
                arith::sub(v, term)?
            };
        }
        coeffs.push(v);
    }
    DeltaVector::new(coeffs)
}

/// The δ-vector of a lattice polytope, computed intrinsically (the
/// polytope is first mapped onto its own affine lattice, so lower
/// dimensional inputs get their honest lower-dimensional δ).
pub fn delta_of_polytope(p: &LatticePolytope) -> Result<DeltaVector> {
    let (q, _) = p.normalized()?;
    let d = q.dim();
    let counts: Vec<i64> = (1..=d as i64)
        .map(|n| q.count_lattice_points(n))
        .collect::<Result<_>>()?;
    delta_from_counts(d, &counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::LatticePolytope;

    fn dv(c: &[i64]) -> DeltaVector {
        DeltaVector::new(c.to_vec()).unwrap()
    }

    fn poly(dim: usize, pts: &[&[i64]]) -> LatticePolytope {
        LatticePolytope::from_slices(dim, pts).unwrap()
    }

    #[test]
    fn evaluation_known_values() {
        // (1, 1, 0): L(3) = C(5,2) + C(4,2) = 16
        assert_eq!(dv(&[1, 1, 0]).ehrhart_value(3).unwrap(), 16);
        // (1, 2, 1): L(1) = 3 + 2 = 5
        assert_eq!(dv(&[1, 2, 1]).ehrhart_value(1).unwrap(), 5);
        // n = 0 always gives 1
        assert_eq!(dv(&[1, 7, 3, 2]).ehrhart_value(0).unwrap(), 1);
    }

    #[test]
    fn extraction_round_trip() {
        for delta in [
            dv(&[1]),
            dv(&[1, 3]),
            dv(&[1, 1, 1]),
            dv(&[1, 2, 1, 0]),
            dv(&[1, 4, 1, 0]),
            dv(&[1, 0, 2, 0, 1]),
        ] {
            let d = delta.dim();
            let counts: Vec<i64> = (1..=d as i64)
                .map(|n| delta.ehrhart_value(n).unwrap())
                .collect();
            assert_eq!(delta_from_counts(d, &counts).unwrap(), delta);
        }
    }

    #[test]
    fn delta_of_known_polytopes() {
        // unit square: volume 2, no interior point at n=1
        let sq = poly(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(delta_of_polytope(&sq).unwrap(), dv(&[1, 1, 0]));
        // skew triangle: volume 3 with one interior point
        let t = poly(2, &[&[0, 0], &[1, 0], &[2, 3]]);
        assert_eq!(delta_of_polytope(&t).unwrap(), dv(&[1, 1, 1]));
        // unit cube
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
        assert_eq!(delta_of_polytope(&cube).unwrap(), dv(&[1, 4, 1, 0]));
        // standard simplex in any dimension: δ = (1, 0, ..., 0)
        let s = poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(delta_of_polytope(&s).unwrap(), dv(&[1, 0, 0, 0]));
        // lower-dimensional input gets its intrinsic delta
        let seg = poly(3, &[&[0, 0, 0], &[2, 2, 0]]);
        assert_eq!(delta_of_polytope(&seg).unwrap(), dv(&[1, 1]));
    }

    #[test]
    fn reciprocity_matches_direct_interior_counts() {
        let cases = vec![
            poly(2, &[&[0, 0], &[1, 0], &[2, 3]]),
            poly(2, &[&[0, 0], &[2, 0], &[0, 2]]),
            poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 2]]),
            poly(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]),
        ];
        for p in cases {
            let delta = delta_of_polytope(&p).unwrap();
            for n in 1..=4 {
                assert_eq!(
                    delta.interior_value(n).unwrap(),
                    p.count_interior_points(n).unwrap(),
                    "reciprocity at n={n} for {:?}",
                    p.vertices()
                );
                assert_eq!(
                    delta.ehrhart_value(n).unwrap(),
                    p.count_lattice_points(n).unwrap(),
                    "count at n={n} for {:?}",
                    p.vertices()
                );
            }
        }
    }

    #[test]
    fn degree_volume_display() {
        let d = dv(&[1, 0, 2, 0]);
        assert_eq!(d.degree(), 2);
        assert_eq!(d.volume().unwrap(), 3);
        assert_eq!(d.dim(), 3);
        assert_eq!(d.to_string(), "(1, 0, 2, 0)");
    }

    #[test]
    fn stanley_known_cases() {
        assert!(dv(&[1, 0, 1, 0]).stanley_inequalities());
        assert!(!dv(&[1, 1, 0, 0, 1]).stanley_inequalities());
        assert!(dv(&[1, 1, 1]).stanley_inequalities());
        assert!(dv(&[1]).stanley_inequalities());
    }

    #[test]
    fn hibi_known_cases() {
        assert!(!dv(&[1, 0, 0, 0, 1, 0]).hibi_inequalities());
        assert!(dv(&[1, 1, 1, 1, 1, 1]).hibi_inequalities());
        assert!(dv(&[1, 1]).hibi_inequalities());
    }

    #[test]
    fn padding_and_domination() {
        let small = dv(&[1, 0, 0]);
        let big = dv(&[1, 3, 0]);
        assert!(small.dominated_by(&big).unwrap());
        assert!(!big.dominated_by(&small).unwrap());
        assert_eq!(small.padded(5).unwrap(), vec![1, 0, 0, 0, 0]);
        assert!(big.padded(1).is_err());
        assert_eq!(big.padded(2).unwrap(), vec![1, 3]);
    }

    #[test]
    fn violations_catch_bad_vectors() {
        let good = dv(&[1, 1, 1]);
        assert!(good.basic_violations(4, 1, 3).unwrap().is_empty());
        let bad = dv(&[1, 0, 1]);
        // δ_1 < δ_d
        assert!(!bad.basic_violations(3, 1, 2).unwrap().is_empty());
        let wrong_sum = dv(&[1, 1, 1]);
        assert!(!wrong_sum.basic_violations(4, 1, 7).unwrap().is_empty());
    }
}
