//! Brute-force oracles shared by the integration tests.
//!
//! These enumerate every outcome with `num_rational` arithmetic, so they do
//! not share any code path with the convolution-based constructions.

#![allow(dead_code)]

use std::collections::BTreeMap;

use cosprod::{DiscreteMeasure, RationalLoc};
use num_rational::Ratio;

pub type Exact = Ratio<i128>;

pub fn exact(loc: RationalLoc) -> Exact {
    Ratio::new(loc.numerator() as i128, loc.denominator() as i128)
}

pub fn r(n: i64, d: i64) -> RationalLoc {
    RationalLoc::new(n, d).unwrap()
}

/// Outcome counts of `Σ_k choose(k)` over all `2^n` binary choices, where
/// choice `k` picks `pairs[k].0` on a 0 bit and `pairs[k].1` on a 1 bit.
pub fn enumerate_pairs(pairs: &[(Exact, Exact)]) -> BTreeMap<Exact, u64> {
    let n = pairs.len();
    let mut counts = BTreeMap::new();
    for outcome in 0u64..(1 << n) {
        let mut sum = Exact::from_integer(0);
        for (k, (lo, hi)) in pairs.iter().enumerate() {
            sum += if (outcome >> k) & 1 == 1 { *hi } else { *lo };
        }
        *counts.entry(sum).or_insert(0) += 1;
    }
    counts
}

pub fn enumerate_signs(steps: &[RationalLoc]) -> BTreeMap<Exact, u64> {
    let pairs: Vec<_> = steps.iter().map(|s| (-exact(*s), exact(*s))).collect();
    enumerate_pairs(&pairs)
}

/// Exact atom-by-atom equality between a measure and an enumeration of
/// `2^n` equally likely outcomes.
pub fn matches_enumeration(m: &DiscreteMeasure, counts: &BTreeMap<Exact, u64>, n: usize) -> bool {
    if m.len() != counts.len() {
        return false;
    }
    let outcomes = (1u64 << n) as f64;
    m.atoms().iter().zip(counts).all(|(atom, (loc, count))| {
        exact(atom.location) == *loc && atom.weight == *count as f64 / outcomes
    })
}

/// Deterministic uniform draws on `[lo, hi)` for test grids.
pub fn uniform_points(seed: u64, count: usize, lo: f64, hi: f64) -> Vec<f64> {
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
            lo + (hi - lo) * u
        })
        .collect()
}
