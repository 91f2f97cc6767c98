use cosprod::measure;
use cosprod::products::{self, ProductSpec};
use std::f64::consts::FRAC_PI_2;

fn grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

#[test]
fn spectrum_duality_on_grid() {
    for p in 2..=7u32 {
        for n in 0..=6u32 {
            let spec = ProductSpec::new(p, n).unwrap();
            let m = products::basep_spectrum(spec).unwrap();
            assert_eq!(m.len() as u128, spec.atom_count().unwrap());
            for x in grid(-20.0, 20.0, 100) {
                let z = measure::char_fn_eval(&m, x);
                let direct = products::basep_partial(spec, x);
                assert!((z.re - direct).abs() < 1e-10, "p={p} n={n} x={x}");
                assert!(z.im.abs() < 1e-12, "p={p} n={n} x={x}");
            }
        }
    }
}

#[test]
fn telescoping_bound() {
    for n in 0..=30 {
        for x in grid(-100.0, 100.0, 201) {
            assert!(
                products::telescoping_check(n, x).abs() < 1e-9,
                "n={n} x={x}"
            );
        }
    }
}

#[test]
fn vieta_equals_halving_product() {
    for n in 1..=40 {
        let v = products::vieta_partial(n);
        let spec = ProductSpec::new(2, n as u32).unwrap();
        let cosines = products::basep_partial(spec, FRAC_PI_2);
        assert!((v.product - cosines).abs() < 1e-13, "n={n}");
    }
}

#[test]
fn error_shrinks_by_p_squared_per_level() {
    for p in 2..=7u32 {
        for &x in &[0.5, 1.0, 2.0, 5.0] {
            let err = |n| {
                let spec = ProductSpec::new(p, n).unwrap();
                (products::basep_partial(spec, x) - products::sinc(x)).abs()
            };
            // 1/sinc(y) - 1 has positive Taylor coefficients only for |y| < π,
            // so the contraction starts once x/p^n drops below π.
            for n in (0..10).filter(|&n| x / (p as f64).powi(n as i32) < std::f64::consts::PI) {
                let bound = err(n) / (p * p) as f64 + 1e-12;
                assert!(err(n + 1) <= bound, "p={p} x={x} n={n}");
            }
        }
    }
}

#[test]
fn factors_are_one_at_origin() {
    for p in 2..=40 {
        for k in 1..=4 {
            assert_eq!(products::basep_factor(p, k, 0.0).unwrap(), 1.0);
        }
    }
}

#[test]
fn spectrum_spacing() {
    for (p, n) in [(2u32, 5u32), (3, 4), (6, 3), (7, 2)] {
        let spec = ProductSpec::new(p, n).unwrap();
        let m = products::basep_spectrum(spec).unwrap();
        let count = spec.atom_count().unwrap() as i64;
        for (i, atom) in m.atoms().iter().enumerate() {
            let expected = cosprod::RationalLoc::new(2 * i as i64 + 1 - count, count).unwrap();
            assert_eq!(atom.location, expected);
            assert!((atom.weight * count as f64 - 1.0).abs() < 1e-14);
        }
    }
}
