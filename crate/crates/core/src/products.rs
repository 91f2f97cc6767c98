//! `sin x / x` and its factorizations into products of cosine sums.
//!
//! For a base `p ≥ 2` the identity `sinc(x) = Π_{k≥1} F_p(x / p^k)` holds with
//!
//! * even `p`: `F = (1/p) Σ_{m odd, m<p} 2 cos(m y)`,
//! * odd `p`:  `F = (1/p) (1 + Σ_{m even, 0<m<p} 2 cos(m y))`.
//!
//! Each factor is the characteristic function of `p` equally weighted point
//! masses at `(2l + 1 - p)/p^k`, `l = 0..p`, so the spectrum of a depth-`n`
//! partial product is a uniform grid of `p^n` atoms on `(-1, 1)`.

use crate::error::{Error, Result};
use crate::measure::{self, DiscreteMeasure, DEFAULT_ATOM_CAP};
use crate::rational::RationalLoc;

/// Below this magnitude `sinc` uses its Taylor expansion.
const SINC_TAYLOR_THRESHOLD: f64 = 1e-4;

/// A base `p` and depth `n` naming the partial product `Π_{k=1}^n F_p(x/p^k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductSpec {
    base: u32,
    depth: u32,
}

impl ProductSpec {
    pub fn new(base: u32, depth: u32) -> Result<Self> {
        if base < 2 {
            return Err(Error::BadBase(base));
        }
        Ok(ProductSpec { base, depth })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// `p^n`, or `None` if it does not fit in 128 bits.
    pub fn atom_count(&self) -> Option<u128> {
        (self.base as u128).checked_pow(self.depth)
    }
}

pub fn sinc(x: f64) -> f64 {
    if x.abs() < SINC_TAYLOR_THRESHOLD {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// The `k`-th factor of the base-`p` product, evaluated at `x`.
pub fn basep_factor(p: u32, k: u32, x: f64) -> Result<f64> {
    if p < 2 {
        return Err(Error::BadBase(p));
    }
    let y = x / (p as f64).powi(k as i32);
    let first = if p.is_multiple_of(2) { 1 } else { 2 };
    let mut sum = if p.is_multiple_of(2) { 0.0 } else { 1.0 };
    for m in (first..p).step_by(2) {
        sum += 2.0 * (m as f64 * y).cos();
    }
    Ok(sum / p as f64)
}

pub fn basep_partial(spec: ProductSpec, x: f64) -> f64 {
    (1..=spec.depth)
        .map(|k| basep_factor(spec.base, k, x).expect("ProductSpec base is valid"))
        .product()
}

/// `2^n sin(x/2^n) Π_{k=1}^n cos(x/2^k) - sin x`, which vanishes identically.
pub fn telescoping_check(n: u32, x: f64) -> f64 {
    let scale = 2f64.powi(n as i32);
    let product: f64 = (1..=n).map(|k| (x / 2f64.powi(k as i32)).cos()).product();
    scale * (x / scale).sin() * product - x.sin()
}

/// Spectrum of the partial product: the convolution of the per-level
/// uniform measures on `(2l + 1 - p)/p^k`.
pub fn basep_spectrum(spec: ProductSpec) -> Result<DiscreteMeasure> {
    basep_spectrum_with_cap(spec, DEFAULT_ATOM_CAP)
}

pub fn basep_spectrum_with_cap(spec: ProductSpec, cap: usize) -> Result<DiscreteMeasure> {
    let requested = spec.atom_count().unwrap_or(u128::MAX);
    if requested > cap as u128 {
        return Err(Error::AtomCapExceeded { requested, cap });
    }
    let p = spec.base as i64;
    let mut acc = measure::dirac(RationalLoc::ZERO);
    let mut scale: i64 = 1;
    for _ in 0..spec.depth {
        scale = scale
            .checked_mul(p)
            .ok_or(Error::LocationOverflow("spectrum"))?;
        let locs = (0..p)
            .map(|l| RationalLoc::new(2 * l + 1 - p, scale))
            .collect::<Result<Vec<_>>>()?;
        acc = measure::convolve_with_cap(&acc, &measure::uniform(&locs), cap)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct VietaPartial {
    /// `terms[k-1] = a_k / 2` where `a_1 = √2`, `a_{k+1} = √(2 + a_k)`.
    pub terms: Vec<f64>,
    /// Running product of all terms; tends to `2/π`.
    pub product: f64,
}

impl VietaPartial {
    pub fn running_products(&self) -> Vec<f64> {
        self.terms
            .iter()
            .scan(1.0, |acc, t| {
                *acc *= t;
                Some(*acc)
            })
            .collect()
    }
}

/// The first `n` nested-radical factors of `2/π`.
pub fn vieta_partial(n: usize) -> VietaPartial {
    let mut terms = Vec::with_capacity(n);
    let mut radical = 2f64.sqrt();
    for k in 0..n {
        if k > 0 {
            radical = (2.0 + radical).sqrt();
        }
        terms.push(radical / 2.0);
    }
    let product = terms.iter().product();
    VietaPartial { terms, product }
}

/// The first base-`p` factor alone. As `p` grows it becomes a midpoint
/// Riemann sum of `½∫_{-1}^{1} cos(ωx) dω` and so tends to `sinc(x)`.
pub fn riemann_factor(p: u32, x: f64) -> Result<f64> {
    basep_factor(p, 1, x)
}
