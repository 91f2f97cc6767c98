//! Exact rational locations with checked 64-bit storage.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A rational number kept in lowest terms with a positive denominator.
///
/// Zero is always stored as `0/1`. Arithmetic is carried out in 128-bit
/// intermediates and fails with [`Error::LocationOverflow`] when the reduced
/// result does not fit back into 64 bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalLoc {
    num: i64,
    den: i64,
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl RationalLoc {
    pub const ZERO: RationalLoc = RationalLoc { num: 0, den: 1 };
    pub const ONE: RationalLoc = RationalLoc { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Self::from_i128(num as i128, den as i128, "new")
    }

    pub fn integer(n: i64) -> Self {
        RationalLoc { num: n, den: 1 }
    }

    fn from_i128(num: i128, den: i128, op: &'static str) -> Result<Self> {
        debug_assert!(den != 0);
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        if num == 0 {
            return Ok(Self::ZERO);
        }
        let g = gcd(num.unsigned_abs(), den as u128) as i128;
        let (num, den) = (num / g, den / g);
        // i64::MIN is excluded so that negation is always representable.
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(num), Ok(den)) if num != i64::MIN => Ok(RationalLoc { num, den }),
            _ => Err(Error::LocationOverflow(op)),
        }
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let g = gcd(self.den as u128, other.den as u128) as i128;
        let lhs_scale = other.den as i128 / g;
        let rhs_scale = self.den as i128 / g;
        let den = (self.den as i128)
            .checked_mul(lhs_scale)
            .ok_or(Error::LocationOverflow("add"))?;
        let num = (self.num as i128)
            .checked_mul(lhs_scale)
            .zip((other.num as i128).checked_mul(rhs_scale))
            .and_then(|(a, b)| a.checked_add(b))
            .ok_or(Error::LocationOverflow("add"))?;
        Self::from_i128(num, den, "add")
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let num = (self.num as i128) * (other.num as i128);
        let den = (self.den as i128) * (other.den as i128);
        Self::from_i128(num, den, "mul")
    }

    /// Divide by a positive integer.
    pub fn checked_div_int(&self, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroDenominator);
        }
        Self::from_i128(self.num as i128, (self.den as i128) * (d as i128), "div")
    }

    pub fn neg(&self) -> Self {
        RationalLoc {
            num: -self.num,
            den: self.den,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for RationalLoc {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = (self.num as i128) * (other.den as i128);
        let rhs = (other.num as i128) * (self.den as i128);
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for RationalLoc {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RationalLoc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl std::str::FromStr for RationalLoc {
    type Err = String;

    /// Accepts `n` or `n/d`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: i64 = n.parse().map_err(|e| format!("bad numerator {n:?}: {e}"))?;
        let d: i64 = d
            .parse()
            .map_err(|e| format!("bad denominator {d:?}: {e}"))?;
        RationalLoc::new(n, d).map_err(|e| e.to_string())
    }
}
