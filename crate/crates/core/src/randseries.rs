//! Random-sign series `Σ t_k c_k` with independent fair signs `t_k = ±1`.
//!
//! Exact partial-sum distributions come from [`crate::measure`]; large sums
//! are sampled by Monte Carlo.
//!
//! # Sampling stream
//!
//! Trial `i` (0-based) draws from its own `ChaCha8Rng` seeded with
//! `SeedableRng::seed_from_u64(seed ^ i)`. Signs come from consecutive
//! `next_u64` words, least significant bit first: term `k` (0-based) uses bit
//! `k % 64` of word `k / 64`, a set bit meaning `+c_k`. The sum is
//! accumulated in term order. Because every trial owns its stream, the
//! samples do not depend on how trials are scheduled.

use std::fmt::Write as _;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::format::sig17;
use crate::measure::{self, DiscreteMeasure, DEFAULT_ATOM_CAP};
use crate::rational::RationalLoc;

/// Longest harmonic or explicit series with an exact partial-sum measure.
pub const MAX_EXACT_TERMS: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub enum SeriesKind {
    /// `c_k = scale / base^k`.
    Geometric {
        base: u32,
        scale: RationalLoc,
    },
    /// `c_k = 2 / 3^k`.
    Cantor,
    /// `c_k = 1 / k`.
    Harmonic,
    Explicit(Vec<RationalLoc>),
}

/// The first `len` coefficients of a positive sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSeries {
    kind: SeriesKind,
    len: usize,
}

impl CoeffSeries {
    pub fn geometric(base: u32, scale: RationalLoc, len: usize) -> Result<Self> {
        if base < 2 {
            return Err(Error::BadBase(base));
        }
        if scale <= RationalLoc::ZERO {
            return Err(Error::BadSeries(format!("scale {scale} is not positive")));
        }
        Ok(CoeffSeries {
            kind: SeriesKind::Geometric { base, scale },
            len,
        })
    }

    pub fn cantor(len: usize) -> Self {
        CoeffSeries {
            kind: SeriesKind::Cantor,
            len,
        }
    }

    pub fn harmonic(len: usize) -> Self {
        CoeffSeries {
            kind: SeriesKind::Harmonic,
            len,
        }
    }

    pub fn explicit(coeffs: Vec<RationalLoc>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| **c <= RationalLoc::ZERO) {
            return Err(Error::BadSeries(format!("coefficient {c} is not positive")));
        }
        Ok(CoeffSeries {
            len: coeffs.len(),
            kind: SeriesKind::Explicit(coeffs),
        })
    }

    pub fn kind(&self) -> &SeriesKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Same sequence, first `len` terms. Explicit lists cannot be extended.
    pub fn with_len(&self, len: usize) -> Result<Self> {
        if let SeriesKind::Explicit(list) = &self.kind {
            if len > list.len() {
                return Err(Error::BadSeries(format!(
                    "explicit series has {} terms, {len} requested",
                    list.len()
                )));
            }
            return CoeffSeries::explicit(list[..len].to_vec());
        }
        Ok(CoeffSeries {
            kind: self.kind.clone(),
            len,
        })
    }

    /// Exact coefficient `c_k`, `k` counted from 1.
    pub fn coefficient(&self, k: usize) -> Result<RationalLoc> {
        assert!(k >= 1, "coefficients are indexed from 1");
        let power = |base: i64| -> Result<i64> {
            u32::try_from(k)
                .ok()
                .and_then(|k| base.checked_pow(k))
                .ok_or(Error::LocationOverflow("coefficient"))
        };
        match &self.kind {
            SeriesKind::Geometric { base, scale } => scale.checked_div_int(power(*base as i64)?),
            SeriesKind::Cantor => RationalLoc::new(2, power(3)?),
            SeriesKind::Harmonic => RationalLoc::new(1, k as i64),
            SeriesKind::Explicit(list) => Ok(list[k - 1]),
        }
    }

    /// Floating-point `c_k`; defined for every `k` of non-explicit kinds.
    pub fn coefficient_f64(&self, k: usize) -> f64 {
        match &self.kind {
            SeriesKind::Geometric { base, scale } => scale.to_f64() / (*base as f64).powi(k as i32),
            SeriesKind::Cantor => 2.0 / 3f64.powi(k as i32),
            SeriesKind::Harmonic => 1.0 / k as f64,
            SeriesKind::Explicit(list) => list[k - 1].to_f64(),
        }
    }

    pub fn exact_coefficients(&self) -> Result<Vec<RationalLoc>> {
        let guarded = matches!(self.kind, SeriesKind::Harmonic | SeriesKind::Explicit(_));
        if guarded && self.len > MAX_EXACT_TERMS {
            return Err(Error::LocationOverflow(
                "series longer than exact-term limit",
            ));
        }
        (1..=self.len).map(|k| self.coefficient(k)).collect()
    }
}

/// Exact distribution of `s_n = Σ_{k≤n} t_k c_k`.
pub fn partial_sum_measure(series: &CoeffSeries) -> Result<DiscreteMeasure> {
    partial_sum_measure_with_cap(series, DEFAULT_ATOM_CAP)
}

pub fn partial_sum_measure_with_cap(series: &CoeffSeries, cap: usize) -> Result<DiscreteMeasure> {
    let requested = if series.len >= 128 {
        u128::MAX
    } else {
        1u128 << series.len
    };
    if requested > cap as u128 {
        return Err(Error::AtomCapExceeded { requested, cap });
    }
    measure::coin_sum_measure_with_cap(&series.exact_coefficients()?, cap)
}

/// `Σ_{k≤n} c_k²`: the variance of `s_n`.
pub fn variance_of(series: &CoeffSeries) -> f64 {
    (1..=series.len)
        .map(|k| {
            let c = series.coefficient_f64(k);
            c * c
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimConfig {
    trials: usize,
    terms: usize,
    seed: u64,
}

impl SimConfig {
    pub fn new(trials: usize, terms: usize, seed: u64) -> Result<Self> {
        if trials == 0 || terms == 0 {
            return Err(Error::BadConfig(format!(
                "trials and terms must be positive (trials={trials}, terms={terms})"
            )));
        }
        Ok(SimConfig {
            trials,
            terms,
            seed,
        })
    }

    pub fn trials(&self) -> usize {
        self.trials
    }

    pub fn terms(&self) -> usize {
        self.terms
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Draws `cfg.trials()` sums of the first `cfg.terms()` terms of `series`.
///
/// `series.len()` is ignored in favour of `cfg.terms()`; an explicit series
/// must have at least that many coefficients.
pub fn simulate(series: &CoeffSeries, cfg: &SimConfig) -> Result<Vec<f64>> {
    let coeffs: Vec<f64> = {
        let series = series.with_len(cfg.terms)?;
        (1..=cfg.terms).map(|k| series.coefficient_f64(k)).collect()
    };
    let samples = (0..cfg.trials)
        .map(|trial| sample_one(&coeffs, cfg.seed ^ trial as u64))
        .collect();
    Ok(samples)
}

fn sample_one(coeffs: &[f64], stream_seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed);
    let mut sum = 0.0;
    for chunk in coeffs.chunks(64) {
        let word = rng.next_u64();
        for (bit, c) in chunk.iter().enumerate() {
            if (word >> bit) & 1 == 1 {
                sum += c;
            } else {
                sum -= c;
            }
        }
    }
    sum
}

/// One real per line, 17 significant digits.
pub fn samples_to_csv(samples: &[f64]) -> String {
    let mut out = String::with_capacity(samples.len() * 22);
    for s in samples {
        let _ = writeln!(out, "{}", sig17(*s));
    }
    out
}

/// Equal-width bins on `[lo, hi)` with out-of-range tallies.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub underflow: u64,
    pub overflow: u64,
}

impl Histogram {
    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.underflow + self.overflow
    }

    pub fn bin_width(&self, i: usize) -> f64 {
        self.edges[i + 1] - self.edges[i]
    }

    /// `bin_left,bin_right,count` rows; edges with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_left,bin_right,count\n");
        for (i, c) in self.counts.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{}",
                sig17(self.edges[i]),
                sig17(self.edges[i + 1]),
                c
            );
        }
        out
    }
}

/// Bins samples; values below `lo` are underflow, values at or above `hi`
/// (and NaN) are overflow.
pub fn histogram(samples: &[f64], bins: usize, lo: f64, hi: f64) -> Result<Histogram> {
    if bins == 0 || !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::BadRange { bins, lo, hi });
    }
    let width = (hi - lo) / bins as f64;
    let mut edges: Vec<f64> = (0..bins).map(|i| lo + i as f64 * width).collect();
    edges.push(hi);
    let mut h = Histogram {
        edges,
        counts: vec![0; bins],
        underflow: 0,
        overflow: 0,
    };
    for &s in samples {
        if s < lo {
            h.underflow += 1;
        } else if s >= hi || s.is_nan() {
            h.overflow += 1;
        } else {
            let mut i = (((s - lo) / width) as usize).min(bins - 1);
            // Rounding can put a sample one bin off its edges.
            if s < h.edges[i] {
                i -= 1;
            } else if s >= h.edges[i + 1] {
                i += 1;
            }
            h.counts[i] += 1;
        }
    }
    Ok(h)
}
