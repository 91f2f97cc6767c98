mod common;

use common::{enumerate_signs, matches_enumeration, r, uniform_points};
use cosprod::measure;
use cosprod::randseries::{self, CoeffSeries, SimConfig};
use cosprod::RationalLoc;

fn kinds(n: usize) -> Vec<CoeffSeries> {
    vec![
        CoeffSeries::harmonic(n),
        CoeffSeries::cantor(n),
        CoeffSeries::geometric(2, RationalLoc::ONE, n).unwrap(),
        CoeffSeries::geometric(5, r(3, 2), n).unwrap(),
        CoeffSeries::explicit((1..=n as i64).map(|k| r(k, k + 2)).collect()).unwrap(),
    ]
}

#[test]
fn moments_match_variance_of() {
    for n in 1..=16 {
        for s in kinds(n) {
            let m = randseries::partial_sum_measure(&s).unwrap();
            let mo = measure::moments(&m).unwrap();
            assert_eq!(mo.mean, 0.0, "{s:?}");
            assert!(
                (mo.variance - randseries::variance_of(&s)).abs() < 1e-12,
                "{s:?}"
            );
        }
    }
}

#[test]
fn char_fn_duality_every_kind() {
    for s in kinds(10) {
        let m = randseries::partial_sum_measure(&s).unwrap();
        for x in uniform_points(17, 20, -40.0, 40.0) {
            let direct: f64 = (1..=s.len())
                .map(|k| (s.coefficient_f64(k) * x).cos())
                .product();
            let z = measure::char_fn_eval(&m, x);
            assert!((z.re - direct).abs() < 1e-10);
            assert!(z.im.abs() < 1e-10);
        }
    }
}

#[test]
fn partial_sums_match_enumeration() {
    for n in 1..=12 {
        for s in kinds(n) {
            let m = randseries::partial_sum_measure(&s).unwrap();
            let coeffs = s.exact_coefficients().unwrap();
            assert!(
                matches_enumeration(&m, &enumerate_signs(&coeffs), n),
                "{s:?}"
            );
        }
    }
}

#[test]
fn halving_series_is_uniform_on_unit_interval() {
    for n in [3usize, 8, 14] {
        let s = CoeffSeries::geometric(2, RationalLoc::ONE, n).unwrap();
        let m = randseries::partial_sum_measure(&s).unwrap();
        for j in -20..=20 {
            let x = r(j, 20);
            let cdf = measure::cdf_eval(&m, x).unwrap();
            let uniform = (x.to_f64() + 1.0) / 2.0;
            assert!(
                (cdf - uniform).abs() <= 2f64.powi(-(n as i32)),
                "n={n} x={x}"
            );
        }
    }
}

#[test]
fn simulation_matches_exact_cdf() {
    let exact = randseries::partial_sum_measure(&CoeffSeries::harmonic(10)).unwrap();
    let cfg = SimConfig::new(100_000, 10, 2024).unwrap();
    let mut samples = randseries::simulate(&CoeffSeries::harmonic(10), &cfg).unwrap();
    samples.sort_by(f64::total_cmp);
    for j in -10..=10 {
        let x = r(3 * j, 10);
        let empirical = samples.partition_point(|&s| s <= x.to_f64()) as f64 / samples.len() as f64;
        let cdf = measure::cdf_eval(&exact, x).unwrap();
        assert!(
            (empirical - cdf).abs() < 0.01,
            "x={x}: {empirical} vs {cdf}"
        );
    }
}

#[test]
fn histogram_conserves_samples() {
    let cfg = SimConfig::new(3000, 25, 5).unwrap();
    let samples = randseries::simulate(&CoeffSeries::harmonic(25), &cfg).unwrap();
    for (bins, lo, hi) in [(1, -1.0, 1.0), (17, -2.0, 3.0), (80, -4.0, 4.0)] {
        let h = randseries::histogram(&samples, bins, lo, hi).unwrap();
        assert_eq!(h.total(), samples.len() as u64);
        assert_eq!(h.edges.len(), bins + 1);
    }
}

#[test]
fn signs_follow_documented_bit_order() {
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    let seed = 99u64;
    let cfg = SimConfig::new(3, 70, seed).unwrap();
    let samples = randseries::simulate(&CoeffSeries::harmonic(70), &cfg).unwrap();
    for (trial, &sample) in samples.iter().enumerate() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ trial as u64);
        let words = [rng.next_u64(), rng.next_u64()];
        let mut sum = 0.0;
        for k in 0..70 {
            let c = 1.0 / (k + 1) as f64;
            if (words[k / 64] >> (k % 64)) & 1 == 1 {
                sum += c;
            } else {
                sum -= c;
            }
        }
        assert_eq!(sample, sum);
    }
}
