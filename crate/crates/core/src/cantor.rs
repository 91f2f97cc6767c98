//! Truncated Cantor sets, the uniform measures on them, the Cantor function
//! and the two characteristic products of the Cantor measure.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::measure::{self, DiscreteMeasure};
use crate::rational::RationalLoc;

/// Deepest truncation with exact 64-bit locations and at most 2^20 atoms.
pub const MAX_EXACT_DEPTH: u32 = 20;

/// Deepest digit scan done with exact integer arithmetic; 3^40 < 2^64.
const MAX_INTEGER_SCAN_DEPTH: u32 = 40;

/// A point `Σ t_k 3^{-k}` of a truncated Cantor set, `t_k ∈ {0, 2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryPoint {
    digits: Vec<u8>,
}

impl TernaryPoint {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if let Some(&d) = digits.iter().find(|&&d| d != 0 && d != 2) {
            return Err(Error::BadDigit(d));
        }
        if digits.len() > MAX_EXACT_DEPTH as usize {
            return Err(Error::DepthOutOfRange {
                depth: digits.len() as u32,
                min: 0,
                max: MAX_EXACT_DEPTH,
            });
        }
        Ok(TernaryPoint { digits })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn value(&self) -> RationalLoc {
        let mut num: i64 = 0;
        for &d in &self.digits {
            num = num * 3 + d as i64;
        }
        RationalLoc::new(num, 3i64.pow(self.digits.len() as u32)).expect("3^n fits for n <= 20")
    }
}

fn check_depth(n: u32, min: u32) -> Result<()> {
    if n < min || n > MAX_EXACT_DEPTH {
        return Err(Error::DepthOutOfRange {
            depth: n,
            min,
            max: MAX_EXACT_DEPTH,
        });
    }
    Ok(())
}

/// All `2^n` points of `K_n` in ascending order.
pub fn kn_points(n: u32) -> Result<Vec<RationalLoc>> {
    check_depth(n, 1)?;
    // Reading the bits of i as digits {0,2}, most significant first, keeps
    // the enumeration in ascending order.
    let points = (0u64..1 << n)
        .map(|i| {
            let digits = (0..n)
                .rev()
                .map(|b| if (i >> b) & 1 == 1 { 2 } else { 0 })
                .collect();
            TernaryPoint { digits }.value()
        })
        .collect();
    Ok(points)
}

/// Uniform probability measure on `K_n`, built as the convolution of
/// `½(δ_0 + δ_{2/3^k})` for `k = 1..=n`.
pub fn mu_n(n: u32) -> Result<DiscreteMeasure> {
    check_depth(n, 0)?;
    measure::shifted_coin_sum_measure(&cantor_offsets(n))
}

/// The pairs `(0, 2/3^k)`, `k = 1..=n`.
pub fn cantor_offsets(n: u32) -> Vec<(RationalLoc, RationalLoc)> {
    (1..=n)
        .map(|k| {
            let step = RationalLoc::new(2, 3i64.pow(k)).expect("3^k fits");
            (RationalLoc::ZERO, step)
        })
        .collect()
}

/// Emits the Cantor function value for ternary digits given most
/// significant first.
fn cantor_from_digits(digits: impl Iterator<Item = u8>) -> f64 {
    let mut value = 0.0;
    let mut bit = 0.5;
    for d in digits {
        match d {
            0 => {}
            2 => value += bit,
            _ => return value + bit,
        }
        bit *= 0.5;
    }
    value
}

/// Ternary digits of `floor(num * 3^depth / den)`, most significant first.
fn scan_integer(num: u128, den: u128, depth: u32) -> f64 {
    let scaled = num * 3u128.pow(depth) / den;
    let mut digits = vec![0u8; depth as usize];
    let mut rest = scaled;
    for slot in digits.iter_mut().rev() {
        *slot = (rest % 3) as u8;
        rest /= 3;
    }
    cantor_from_digits(digits.into_iter())
}

fn scan_float(x: f64, depth: u32) -> f64 {
    let mut frac = x;
    cantor_from_digits((0..depth).map(|_| {
        frac *= 3.0;
        let d = frac.floor().min(2.0);
        frac -= d;
        d as u8
    }))
}

/// Cantor function at `x ∈ [0, 1]` from the first `depth` ternary digits;
/// within `2^-depth` of the exact value.
///
/// A float is a dyadic rational, so for `depth <= 40` its digits are
/// extracted exactly in 128-bit integers; deeper scans peel digits in
/// floating point.
pub fn cantor_cdf(x: f64, depth: u32) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::OutOfDomain(x));
    }
    if depth == 0 {
        return Err(Error::DepthOutOfRange {
            depth,
            min: 1,
            max: u32::MAX,
        });
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    if depth > MAX_INTEGER_SCAN_DEPTH {
        return Ok(scan_float(x, depth));
    }
    // x = mantissa * 2^-shift with mantissa < 2^53.
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i32;
    let (mantissa, exp) = if raw_exp == 0 {
        (bits & ((1 << 52) - 1), -1074)
    } else {
        ((bits & ((1 << 52) - 1)) | (1 << 52), raw_exp - 1075)
    };
    let shift = (-exp) as u32;
    if shift >= 120 {
        // mantissa * 3^40 < 2^117, so every digit is 0.
        return Ok(0.0);
    }
    Ok(scan_integer(mantissa as u128, 1u128 << shift, depth))
}

/// Cantor function at an exact rational point of `[0, 1]`.
pub fn cantor_cdf_rational(x: RationalLoc, depth: u32) -> Result<f64> {
    if x < RationalLoc::ZERO || x > RationalLoc::ONE {
        return Err(Error::OutOfDomain(x.to_f64()));
    }
    if depth == 0 || depth > MAX_INTEGER_SCAN_DEPTH {
        return Err(Error::DepthOutOfRange {
            depth,
            min: 1,
            max: MAX_INTEGER_SCAN_DEPTH,
        });
    }
    if x == RationalLoc::ONE {
        return Ok(1.0);
    }
    Ok(scan_integer(
        x.numerator() as u128,
        x.denominator() as u128,
        depth,
    ))
}

/// `Π_{k=1}^n ½(1 + e^{2ix/3^k})`, the characteristic function of `μ_n`.
pub fn cantor_char_complex(x: f64, n: u32) -> Complex64 {
    (1..=n)
        .map(|k| {
            let theta = 2.0 * x / 3f64.powi(k as i32);
            (Complex64::new(1.0, 0.0) + Complex64::cis(theta)) * 0.5
        })
        .product()
}

/// `Π_{k=1}^n cos(2x/3^k)`, the characteristic function of the Cantor
/// measure moved to `[-1, 1]`.
pub fn cantor_cos_product(x: f64, n: u32) -> f64 {
    (1..=n)
        .map(|k| (2.0 * x / 3f64.powi(k as i32)).cos())
        .product()
}

/// Deviation from the finite-depth identity
/// `Π ½(1 + e^{4ix/3^k}) · e^{-ix(1 - 3^{-n})} = Π cos(2x/3^k)`,
/// which follows from `½(1 + e^{iθ}) = e^{iθ/2} cos(θ/2)`.
pub fn affine_phase_identity(x: f64, n: u32) -> f64 {
    let phase = x * (1.0 - 3f64.powi(-(n as i32)));
    let lhs = cantor_char_complex(2.0 * x, n) * Complex64::cis(-phase);
    (lhs - Complex64::new(cantor_cos_product(x, n), 0.0)).norm()
}
