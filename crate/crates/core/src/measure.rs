//! Finite discrete measures: weighted point masses at exact rational
//! locations, with convolution, characteristic functions and moments.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::format::sig17;
use crate::rational::RationalLoc;

/// Default upper bound on the number of atoms a convolution may produce
/// before merging.
pub const DEFAULT_ATOM_CAP: usize = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub location: RationalLoc,
    pub weight: f64,
}

/// Point masses sorted by strictly increasing location.
///
/// Atoms with equal locations are always merged (exact rational equality,
/// weights summed), so the atom list is a canonical form and two measures
/// compare equal iff they have identical atoms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DiscreteMeasure {
    atoms: Vec<Atom>,
}

impl DiscreteMeasure {
    /// Builds a measure from arbitrary atoms, sorting and merging them.
    ///
    /// Panics if a weight is negative or NaN.
    pub fn from_atoms(atoms: impl IntoIterator<Item = Atom>) -> Self {
        let mut atoms: Vec<Atom> = atoms.into_iter().collect();
        for a in &atoms {
            assert!(
                a.weight >= 0.0,
                "atom weight must be nonnegative, got {}",
                a.weight
            );
        }
        atoms.sort_by_key(|a| a.location);
        let mut merged: Vec<Atom> = Vec::with_capacity(atoms.len());
        for atom in atoms {
            match merged.last_mut() {
                Some(last) if last.location == atom.location => last.weight += atom.weight,
                _ => merged.push(atom),
            }
        }
        DiscreteMeasure { atoms: merged }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn locations(&self) -> impl Iterator<Item = RationalLoc> + '_ {
        self.atoms.iter().map(|a| a.location)
    }

    pub fn total_mass(&self) -> f64 {
        self.atoms.iter().map(|a| a.weight).sum()
    }

    /// Writes the measure as CSV: `numerator,denominator,weight`, weights
    /// with 17 significant digits, rows in location order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("numerator,denominator,weight\n");
        for a in &self.atoms {
            let _ = writeln!(
                out,
                "{},{},{}",
                a.location.numerator(),
                a.location.denominator(),
                sig17(a.weight)
            );
        }
        out
    }
}

pub fn dirac(loc: RationalLoc) -> DiscreteMeasure {
    DiscreteMeasure {
        atoms: vec![Atom {
            location: loc,
            weight: 1.0,
        }],
    }
}

/// Uniform measure `(1/m) Σ δ_{loc}` over the given locations.
pub fn uniform(locs: &[RationalLoc]) -> DiscreteMeasure {
    let w = 1.0 / locs.len() as f64;
    DiscreteMeasure::from_atoms(locs.iter().map(|&location| Atom {
        location,
        weight: w,
    }))
}

pub fn convolve(a: &DiscreteMeasure, b: &DiscreteMeasure) -> Result<DiscreteMeasure> {
    convolve_with_cap(a, b, DEFAULT_ATOM_CAP)
}

/// Convolution of two measures: atoms at every pairwise location sum, with
/// multiplied weights, merged on exact equality.
pub fn convolve_with_cap(
    a: &DiscreteMeasure,
    b: &DiscreteMeasure,
    cap: usize,
) -> Result<DiscreteMeasure> {
    let requested = a.len() as u128 * b.len() as u128;
    if requested > cap as u128 {
        return Err(Error::AtomCapExceeded { requested, cap });
    }
    let mut atoms = Vec::with_capacity(requested as usize);
    for x in &a.atoms {
        for y in &b.atoms {
            atoms.push(Atom {
                location: x.location.checked_add(&y.location)?,
                weight: x.weight * y.weight,
            });
        }
    }
    Ok(DiscreteMeasure::from_atoms(atoms))
}

fn check_factor_count(n: usize, cap: usize) -> Result<()> {
    let requested = if n >= 128 { u128::MAX } else { 1u128 << n };
    if requested > cap as u128 {
        return Err(Error::AtomCapExceeded { requested, cap });
    }
    Ok(())
}

/// Convolution product of `½(δ_{first} + δ_{second})` over all pairs.
pub fn shifted_coin_sum_measure(offsets: &[(RationalLoc, RationalLoc)]) -> Result<DiscreteMeasure> {
    shifted_coin_sum_measure_with_cap(offsets, DEFAULT_ATOM_CAP)
}

pub fn shifted_coin_sum_measure_with_cap(
    offsets: &[(RationalLoc, RationalLoc)],
    cap: usize,
) -> Result<DiscreteMeasure> {
    check_factor_count(offsets.len(), cap)?;
    let mut acc = dirac(RationalLoc::ZERO);
    for &(lo, hi) in offsets {
        let coin = DiscreteMeasure::from_atoms([
            Atom {
                location: lo,
                weight: 0.5,
            },
            Atom {
                location: hi,
                weight: 0.5,
            },
        ]);
        acc = convolve_with_cap(&acc, &coin, cap)?;
    }
    Ok(acc)
}

/// Distribution of `Σ ±steps[k]` with independent fair signs.
pub fn coin_sum_measure(steps: &[RationalLoc]) -> Result<DiscreteMeasure> {
    coin_sum_measure_with_cap(steps, DEFAULT_ATOM_CAP)
}

pub fn coin_sum_measure_with_cap(steps: &[RationalLoc], cap: usize) -> Result<DiscreteMeasure> {
    let pairs: Vec<_> = steps.iter().map(|s| (s.neg(), *s)).collect();
    shifted_coin_sum_measure_with_cap(&pairs, cap)
}

/// `Σ_j w_j exp(i x loc_j)`.
pub fn char_fn_eval(m: &DiscreteMeasure, x: f64) -> Complex64 {
    m.atoms
        .iter()
        .map(|a| {
            let (s, c) = (x * a.location.to_f64()).sin_cos();
            Complex64::new(a.weight * c, a.weight * s)
        })
        .sum()
}

/// Total weight at locations `<= x`.
pub fn cdf_eval(m: &DiscreteMeasure, x: RationalLoc) -> Result<f64> {
    if !(m.total_mass() > 0.0) {
        return Err(Error::EmptyMeasure);
    }
    let end = m.atoms.partition_point(|a| a.location <= x);
    Ok(m.atoms[..end].iter().map(|a| a.weight).sum())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
}

/// Weighted mean and variance, normalized by total mass.
///
/// The first moment is accumulated by pairing atoms from both ends of the
/// sorted list, so a measure symmetric about zero has a mean of exactly 0.
pub fn moments(m: &DiscreteMeasure) -> Result<Moments> {
    let mass = m.total_mass();
    if !(mass > 0.0) {
        return Err(Error::EmptyMeasure);
    }
    let atoms = &m.atoms;
    let n = atoms.len();
    let term = |a: &Atom| a.weight * a.location.to_f64();
    let mut first = 0.0;
    for i in 0..n / 2 {
        first += term(&atoms[i]) + term(&atoms[n - 1 - i]);
    }
    if n % 2 == 1 {
        first += term(&atoms[n / 2]);
    }
    let mean = first / mass;
    let second: f64 = atoms
        .iter()
        .map(|a| {
            let d = a.location.to_f64() - mean;
            a.weight * d * d
        })
        .sum();
    Ok(Moments {
        mean,
        variance: second / mass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> RationalLoc {
        RationalLoc::new(n, d).unwrap()
    }

    fn atom(n: i64, d: i64, weight: f64) -> Atom {
        Atom {
            location: r(n, d),
            weight,
        }
    }

    #[test]
    fn dirac_is_single_unit_atom() {
        assert_eq!(dirac(RationalLoc::ZERO).atoms(), &[atom(0, 1, 1.0)]);
        assert_eq!(dirac(r(1, 2)).atoms(), &[atom(1, 2, 1.0)]);
    }

    #[test]
    fn diracs_add_locations() {
        let m = convolve(&dirac(r(1, 2)), &dirac(r(1, 4))).unwrap();
        assert_eq!(m.atoms(), &[atom(3, 4, 1.0)]);
    }

    #[test]
    fn dirac_zero_is_identity() {
        let m = DiscreteMeasure::from_atoms([atom(-1, 3, 0.25), atom(5, 7, 0.75)]);
        let zero = dirac(RationalLoc::ZERO);
        assert_eq!(convolve(&zero, &m).unwrap(), m);
        assert_eq!(convolve(&m, &zero).unwrap(), m);
    }

    #[test]
    fn three_halving_coins_give_uniform_eighths() {
        let m = coin_sum_measure(&[r(1, 2), r(1, 4), r(1, 8)]).unwrap();
        let expected: Vec<_> = [-7, -5, -3, -1, 1, 3, 5, 7]
            .iter()
            .map(|&k| atom(k, 8, 0.125))
            .collect();
        assert_eq!(m.atoms(), expected.as_slice());
    }

    #[test]
    fn two_coins() {
        let m = coin_sum_measure(&[r(1, 2), r(1, 4)]).unwrap();
        let expected: Vec<_> = [-3, -1, 1, 3].iter().map(|&k| atom(k, 4, 0.25)).collect();
        assert_eq!(m.atoms(), expected.as_slice());
    }

    #[test]
    fn shifted_coins() {
        let m = shifted_coin_sum_measure(&[(RationalLoc::ZERO, r(2, 3))]).unwrap();
        assert_eq!(m.atoms(), &[atom(0, 1, 0.5), atom(2, 3, 0.5)]);

        let m =
            shifted_coin_sum_measure(&[(RationalLoc::ZERO, r(2, 3)), (RationalLoc::ZERO, r(2, 9))])
                .unwrap();
        assert_eq!(
            m.atoms(),
            &[
                atom(0, 1, 0.25),
                atom(2, 9, 0.25),
                atom(2, 3, 0.25),
                atom(8, 9, 0.25)
            ]
        );

        let steps = [r(1, 3), r(1, 5)];
        let symmetric: Vec<_> = steps.iter().map(|s| (s.neg(), *s)).collect();
        assert_eq!(
            shifted_coin_sum_measure(&symmetric).unwrap(),
            coin_sum_measure(&steps).unwrap()
        );
    }

    #[test]
    fn coincident_sums_merge() {
        // ±1 ± 1 puts half the mass at 0.
        let m = coin_sum_measure(&[RationalLoc::ONE, RationalLoc::ONE]).unwrap();
        assert_eq!(
            m.atoms(),
            &[atom(-2, 1, 0.25), atom(0, 1, 0.5), atom(2, 1, 0.25)]
        );
    }

    #[test]
    fn cap_is_enforced() {
        let m = coin_sum_measure(&[r(1, 2); 3]).unwrap();
        assert!(matches!(
            convolve_with_cap(&m, &m, 15),
            Err(Error::AtomCapExceeded {
                requested: 16,
                cap: 15
            })
        ));
        assert!(matches!(
            coin_sum_measure_with_cap(&[r(1, 2); 5], 16),
            Err(Error::AtomCapExceeded { requested: 32, .. })
        ));
        assert!(coin_sum_measure_with_cap(&[r(1, 2); 4], 16).is_ok());
    }

    #[test]
    fn location_overflow_propagates() {
        let big = dirac(r(i64::MAX - 1, 1));
        assert_eq!(
            convolve(&big, &dirac(r(5, 1))),
            Err(Error::LocationOverflow("add"))
        );
    }

    #[test]
    fn char_fn_of_symmetric_pair_is_cosine() {
        let m = coin_sum_measure(&[RationalLoc::ONE]).unwrap();
        for &x in &[0.0, 0.3, 1.0, -2.5, 17.0] {
            let z = char_fn_eval(&m, x);
            assert!((z.re - f64::cos(x)).abs() < 1e-15);
            assert!(z.im.abs() < 1e-15);
        }
    }

    #[test]
    fn char_fn_at_zero_is_mass() {
        let m = coin_sum_measure(&[r(1, 3), r(2, 7), r(1, 11)]).unwrap();
        let z = char_fn_eval(&m, 0.0);
        assert_eq!(z, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn char_fn_matches_cosine_product() {
        let m = coin_sum_measure(&[r(1, 2), r(1, 4), r(1, 8)]).unwrap();
        let z = char_fn_eval(&m, 2.0);
        let direct = f64::cos(1.0) * f64::cos(0.5) * f64::cos(0.25);
        assert!((z.re - direct).abs() < 1e-15);
        assert!((z.re - 0.459_419_399_332_560_6).abs() < 1e-15);
    }

    #[test]
    fn cdf_and_moments() {
        let m = coin_sum_measure(&[r(1, 2), r(1, 4), r(1, 8)]).unwrap();
        assert_eq!(cdf_eval(&m, RationalLoc::ZERO).unwrap(), 0.5);
        assert_eq!(cdf_eval(&m, r(7, 8)).unwrap(), m.total_mass());
        assert_eq!(cdf_eval(&m, r(-1, 1)).unwrap(), 0.0);

        let mo = moments(&coin_sum_measure(&[r(1, 2), r(1, 4)]).unwrap()).unwrap();
        assert_eq!(mo.mean, 0.0);
        assert!((mo.variance - 0.3125).abs() < 1e-15);

        assert_eq!(
            moments(&DiscreteMeasure::default()),
            Err(Error::EmptyMeasure)
        );
        assert_eq!(
            cdf_eval(&DiscreteMeasure::default(), RationalLoc::ZERO),
            Err(Error::EmptyMeasure)
        );
    }

    #[test]
    fn csv_dump() {
        let m = coin_sum_measure(&[r(1, 2)]).unwrap();
        assert_eq!(
            m.to_csv(),
            "numerator,denominator,weight\n-1,2,0.50000000000000000\n1,2,0.50000000000000000\n"
        );
    }
}
