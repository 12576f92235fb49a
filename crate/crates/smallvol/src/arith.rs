//! Checked integer helpers and exact rationals.
//!
//! All coordinate data in this crate fits comfortably in `i64`; products and
//! dot products are taken in `i128` and checked on the way back down. Any
//! overflow surfaces as [`Error::Overflow`] instead of wrapping.

use crate::{Error, Result};
use std::cmp::Ordering;
use std::fmt;

pub fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow("add"))
}

pub fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow("sub"))
}

pub fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("mul"))
}

pub fn narrow(a: i128) -> Result<i64> {
    i64::try_from(a).map_err(|_| Error::Overflow("narrow"))
}

/// gcd(0, 0) = 0; result is always >= 0.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

pub fn lcm(a: i64, b: i64) -> Result<i64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    mul(a / gcd(a, b), b).map(i64::abs)
}

/// Extended gcd: returns (g, x, y) with x*a + y*b = g and g = gcd(a, b) >= 0.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            return (-a, -1, 0);
        }
        return (a, 1, 0);
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    // a = (a div b)*b + (a mod b) with euclidean division
    let q = (a - a.rem_euclid(b)) / b;
    (g, y, x - q * y)
}

/// Floor division, defined for negative numerators as well.
pub fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// Exact binomial coefficient C(n, k) for n >= 0; 0 when k < 0 or k > n.
pub fn binomial(n: i64, k: i64) -> Result<i64> {
    if k < 0 || k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as i128)
            .ok_or(Error::Overflow("binomial"))?;
        acc /= (i + 1) as i128; // exact: i+1 consecutive integers contain each divisor
    }
    narrow(acc)
}

/// Exact rational in lowest terms with a positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rat {
    num: i64,
    den: i64,
}

impl Rat {
    pub const ZERO: Rat = Rat { num: 0, den: 1 };
    pub const ONE: Rat = Rat { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Rat> {
        if den == 0 {
            return Err(Error::BadInput("rational with zero denominator".into()));
        }
        Self::reduce(num as i128, den as i128)
    }

    pub fn int(n: i64) -> Rat {
        Rat { num: n, den: 1 }
    }

    fn reduce(num: i128, den: i128) -> Result<Rat> {
        debug_assert!(den != 0);
        let sign = if den < 0 { -1 } else { 1 };
        let (mut n, mut d) = (num.unsigned_abs(), den.unsigned_abs());
        let mut a = n;
        let mut b = d;
        while b != 0 {
            (a, b) = (b, a % b);
        }
        if a != 0 {
            n /= a;
            d /= a;
        }
        let num = i64::try_from(num.signum() * sign * n as i128)
            .map_err(|_| Error::Overflow("rational"))?;
        let den = i64::try_from(d).map_err(|_| Error::Overflow("rational"))?;
        Ok(Rat { num, den })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn signum(&self) -> i64 {
        self.num.signum()
    }

    pub fn neg(self) -> Rat {
        Rat { num: -self.num, den: self.den }
    }

    pub fn abs(self) -> Rat {
        Rat { num: self.num.abs(), den: self.den }
    }

    pub fn add(self, o: Rat) -> Result<Rat> {
        Self::reduce(
            self.num as i128 * o.den as i128 + o.num as i128 * self.den as i128,
            self.den as i128 * o.den as i128,
        )
    }

    pub fn sub(self, o: Rat) -> Result<Rat> {
        self.add(o.neg())
    }

    pub fn mul(self, o: Rat) -> Result<Rat> {
        Self::reduce(
            self.num as i128 * o.num as i128,
            self.den as i128 * o.den as i128,
        )
    }

    pub fn div(self, o: Rat) -> Result<Rat> {
        if o.num == 0 {
            return Err(Error::BadInput("division by zero rational".into()));
        }
        Self::reduce(
            self.num as i128 * o.den as i128,
            self.den as i128 * o.num as i128,
        )
    }

    pub fn floor(self) -> i64 {
        div_floor(self.num, self.den)
    }

    pub fn ceil(self) -> i64 {
        -div_floor(-self.num, self.den)
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        // cross-multiply in i128; denominators are positive
        let lhs = self.num as i128 * other.den as i128;
        let rhs = other.num as i128 * self.den as i128;
        lhs.cmp(&rhs)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_basics() {
        assert_eq!(gcd(0, 0), 0);
        assert_eq!(gcd(-4, 6), 2);
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(gcd(0, -5), 5);
    }

    #[test]
    fn ext_gcd_bezout() {
        for a in -20..20i64 {
            for b in -20..20i64 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(g, gcd(a, b));
                assert_eq!(x * a + y * b, g, "bezout failed for ({a}, {b})");
            }
        }
    }

    #[test]
    fn div_floor_matches_euclid() {
        for a in -30..30i64 {
            for b in [-7i64, -2, -1, 1, 2, 7] {
                let q = div_floor(a, b);
                let r = a - q * b;
                // remainder has the sign of the divisor and |r| < |b|
                assert!(r == 0 || r.signum() == b.signum());
                assert!(r.abs() < b.abs());
                assert_eq!(q, (a as f64 / b as f64).floor() as i64);
            }
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2).unwrap(), 10);
        assert_eq!(binomial(10, 0).unwrap(), 1);
        assert_eq!(binomial(10, 10).unwrap(), 1);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(5, -1).unwrap(), 0);
        assert_eq!(binomial(52, 26).unwrap(), 495918532948104);
    }

    #[test]
    fn binomial_pascal() {
        for n in 1..40i64 {
            for k in 0..=n {
                let lhs = binomial(n, k).unwrap();
                let rhs = binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn rat_reduction_and_ops() {
        let a = Rat::new(2, 4).unwrap();
        assert_eq!((a.num(), a.den()), (1, 2));
        let b = Rat::new(-3, -6).unwrap();
        assert_eq!(b, a);
        let c = Rat::new(1, -2).unwrap();
        assert_eq!((c.num(), c.den()), (-1, 2));
        assert_eq!(a.add(c).unwrap(), Rat::ZERO);
        assert_eq!(a.mul(Rat::int(4)).unwrap(), Rat::int(2));
        assert_eq!(Rat::int(7).div(Rat::int(-2)).unwrap(), Rat::new(-7, 2).unwrap());
        assert!(Rat::new(1, 3).unwrap() < Rat::new(1, 2).unwrap());
        assert!(Rat::new(-1, 3).unwrap() > Rat::new(-1, 2).unwrap());
    }

    #[test]
    fn rat_floor_ceil() {
        let x = Rat::new(-7, 2).unwrap();
        assert_eq!(x.floor(), -4);
        assert_eq!(x.ceil(), -3);
        let y = Rat::new(7, 2).unwrap();
        assert_eq!(y.floor(), 3);
        assert_eq!(y.ceil(), 4);
        assert_eq!(Rat::int(5).floor(), 5);
        assert_eq!(Rat::int(5).ceil(), 5);
    }

    #[test]
    fn overflow_is_reported() {
        assert!(mul(i64::MAX, 2).is_err());
        assert!(add(i64::MAX, 1).is_err());
        let big = Rat::int(i64::MAX);
        assert!(big.mul(big).is_err());
    }
}
