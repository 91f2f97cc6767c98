//! Density of the random harmonic series by Fourier inversion.
//!
//! The characteristic function of `Σ ±1/k` is `Π cos(x/k)`, and being even
//! it inverts to the density
//!
//! ```text
//! φ(ω) = (1/π) ∫_0^∞ cos(ωx) Π_{k≥1} cos(x/k) dx
//! ```
//!
//! which is evaluated here with a truncated product, a finite cutoff and a
//! compensated midpoint rule.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::format::fixed;

/// Relative slack allowed when checking that a range holds a whole number of
/// steps.
const STEP_TOLERANCE: f64 = 1e-9;

/// Reference density values `(ω, φ(ω))`, six decimals, for the cutoff 15,
/// step 0.02 and 1000 factors.
pub const REFERENCE_PHI: [(f64, f64); 21] = [
    (0.0, 0.249995),
    (0.1, 0.249991),
    (0.2, 0.249972),
    (0.4, 0.249809),
    (0.6, 0.249092),
    (0.8, 0.246819),
    (1.0, 0.241289),
    (1.2, 0.230494),
    (1.4, 0.212941),
    (1.6, 0.188425),
    (1.8, 0.158271),
    (2.0, 0.125000),
    (2.2, 0.091729),
    (2.4, 0.061576),
    (2.6, 0.030596),
    (2.8, 0.019506),
    (3.0, 0.008711),
    (3.2, 0.003181),
    (3.4, 0.000908),
    (3.6, 0.000192),
    (3.8, 0.000028),
];

/// Reference rows further than this from the recomputed value are flagged.
pub const REFERENCE_FLAG_THRESHOLD: f64 = 5e-5;

pub fn reference_omegas() -> Vec<f64> {
    REFERENCE_PHI.iter().map(|&(w, _)| w).collect()
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation += (self.sum - t) + v;
        } else {
            self.compensation += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

fn whole_steps(a: f64, b: f64, dx: f64) -> Result<usize> {
    if !(dx > 0.0) || !dx.is_finite() {
        return Err(Error::BadStep(format!(
            "dx must be positive and finite, got {dx}"
        )));
    }
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::BadStep(format!("need a < b, got [{a}, {b}]")));
    }
    let ratio = (b - a) / dx;
    let steps = ratio.round();
    if steps < 1.0 || (ratio - steps).abs() > STEP_TOLERANCE * steps.max(1.0) {
        return Err(Error::BadStep(format!(
            "[{a}, {b}] is not a whole number of steps of {dx} ({ratio})"
        )));
    }
    Ok(steps as usize)
}

/// `dx · Σ_{j<M} f(a + (j + ½) dx)` with `M = (b - a)/dx`, summed in
/// increasing `j`.
pub fn midpoint_integrate(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, dx: f64) -> Result<f64> {
    let steps = whole_steps(a, b, dx)?;
    let mut acc = CompensatedSum::default();
    for j in 0..steps {
        acc.add(f(a + (j as f64 + 0.5) * dx));
    }
    Ok(dx * acc.value())
}

/// `Π_{k=1}^{n} cos(x/k)` in increasing `k`.
pub fn harmonic_char(x: f64, n: usize) -> f64 {
    let mut p = 1.0;
    for k in 1..=n {
        p *= (x / k as f64).cos();
        if p == 0.0 {
            break;
        }
    }
    p
}

/// Cutoff, step and product truncation for the inversion integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    upper: f64,
    dx: f64,
    truncation: usize,
}

impl QuadratureConfig {
    pub fn new(upper: f64, dx: f64, truncation: usize) -> Result<Self> {
        if !(upper > 0.0) {
            return Err(Error::BadStep(format!(
                "upper must be positive, got {upper}"
            )));
        }
        whole_steps(0.0, upper, dx)?;
        if truncation == 0 {
            return Err(Error::BadStep("truncation must be at least 1".into()));
        }
        Ok(QuadratureConfig {
            upper,
            dx,
            truncation,
        })
    }

    /// Cutoff 15, step 0.02, 1000 factors: the settings behind
    /// [`REFERENCE_PHI`].
    pub fn reference() -> Self {
        QuadratureConfig {
            upper: 15.0,
            dx: 0.02,
            truncation: 1000,
        }
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn with_upper(self, upper: f64) -> Result<Self> {
        Self::new(upper, self.dx, self.truncation)
    }

    pub fn with_dx(self, dx: f64) -> Result<Self> {
        Self::new(self.upper, dx, self.truncation)
    }

    pub fn with_truncation(self, truncation: usize) -> Result<Self> {
        Self::new(self.upper, self.dx, truncation)
    }

    fn integrate(&self, kernel: impl Fn(f64) -> f64) -> Result<f64> {
        let n = self.truncation;
        midpoint_integrate(
            |x| kernel(x) * harmonic_char(x, n),
            0.0,
            self.upper,
            self.dx,
        )
    }
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self::reference()
    }
}

/// Density of the random harmonic series at `omega`.
pub fn phi(omega: f64, cfg: &QuadratureConfig) -> Result<f64> {
    Ok(cfg.integrate(|x| (omega * x).cos())? / PI)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiRow {
    pub omega: f64,
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PhiTable {
    pub rows: Vec<PhiRow>,
}

impl PhiTable {
    /// `omega,phi` with one and six decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("omega,phi\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{}", fixed(r.omega, 1), fixed(r.phi, 6));
        }
        out
    }

    /// Compares rows against [`REFERENCE_PHI`] where the omegas coincide.
    pub fn compare_with_reference(&self) -> Vec<ReferenceComparison> {
        self.rows
            .iter()
            .filter_map(|row| {
                REFERENCE_PHI
                    .iter()
                    .find(|(w, _)| (w - row.omega).abs() < 1e-9)
                    .map(|&(_, reference)| {
                        let abs_diff = (row.phi - reference).abs();
                        ReferenceComparison {
                            omega: row.omega,
                            computed: row.phi,
                            reference,
                            abs_diff,
                            flagged: abs_diff > REFERENCE_FLAG_THRESHOLD,
                        }
                    })
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceComparison {
    pub omega: f64,
    pub computed: f64,
    pub reference: f64,
    pub abs_diff: f64,
    pub flagged: bool,
}

pub fn phi_table(omegas: &[f64], cfg: &QuadratureConfig) -> Result<PhiTable> {
    if let Some(w) = omegas.windows(2).find(|w| !(w[0] < w[1])) {
        return Err(Error::BadConfig(format!(
            "omegas must be strictly increasing ({} then {})",
            w[0], w[1]
        )));
    }
    let rows = omegas
        .iter()
        .map(|&omega| {
            Ok(PhiRow {
                omega,
                phi: phi(omega, cfg)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiTable { rows })
}

/// The truncated integrals `∫ Π cos(x/k) dx` and `∫ cos(2x) Π cos(x/k) dx`
/// over `[0, upper]`, next to their conjectured values `π/4` and `π/8`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjectureReport {
    pub i0: f64,
    pub i2: f64,
}

impl ConjectureReport {
    pub const I0_TARGET: f64 = PI / 4.0;
    pub const I2_TARGET: f64 = PI / 8.0;

    /// `(name, value, target)`.
    pub fn rows(&self) -> [(&'static str, f64, f64); 2] {
        [
            ("integral_prod_cos", self.i0, Self::I0_TARGET),
            ("integral_cos2x_prod_cos", self.i2, Self::I2_TARGET),
        ]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,value,target,abs_diff\n");
        for (name, value, target) in self.rows() {
            let _ = writeln!(
                out,
                "{name},{},{},{}",
                fixed(value, 12),
                fixed(target, 12),
                fixed((value - target).abs(), 12)
            );
        }
        out
    }
}

pub fn conjecture_integrals(cfg: &QuadratureConfig) -> Result<ConjectureReport> {
    Ok(ConjectureReport {
        i0: cfg.integrate(|_| 1.0)?,
        i2: cfg.integrate(|x| (2.0 * x).cos())?,
    })
}
