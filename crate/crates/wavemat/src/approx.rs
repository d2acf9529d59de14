//! Exact rational approximation of float-backend wavelet matrices.
//!
//! Rounding the filter coefficients of a wavelet matrix directly destroys
//! shifted orthogonality. Rounding the *parameters* does not: the parameter
//! point is rounded to nearby Gaussian rationals with bounded denominators
//! and the matrix is regenerated with exact arithmetic, so the result
//! satisfies the orthogonality equations identically. Continuity of the
//! parametrization makes the coefficient distance shrink as the denominator
//! cap grows.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::Result;
use crate::field::{Qi, Scalar, TolerancePolicy, C64};
use crate::parametrize::{generate, wavelet_to_params, ParamPoint};
use crate::wavelet::WaveletMatrix;

/// Outcome of a rational approximation run.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproxReport {
    /// Max-norm distance between input and output coefficient tensors.
    pub distance: f64,
    /// Denominator cap used for the parameter rounding.
    pub max_denominator: u64,
    /// True when the output's shifted-orthogonality residual is exactly
    /// zero (always the case: the output is certified on the exact backend).
    pub certificate: bool,
}

/// Best rational approximation to `x` among fractions with denominator
/// at most `max_den`, via the continued-fraction convergents and their
/// admissible semiconvergents. Ties go to the smaller denominator.
pub fn best_rational(x: &BigRational, max_den: &BigInt) -> BigRational {
    if x.denom() <= max_den {
        return x.clone();
    }
    let mut p = x.numer().clone();
    let mut q = x.denom().clone();
    // convergent recurrences h_k = a_k h_{k-1} + h_{k-2}, same for k
    let (mut h2, mut h1) = (BigInt::one(), x.numer() / x.denom());
    if x.is_negative() && !(x.numer() % x.denom()).is_zero() {
        h1 -= 1; // floor division for negatives
    }
    let (mut k2, mut k1) = (BigInt::zero(), BigInt::one());
    let mut r = &p - &h1 * &q;
    p = q;
    q = r;
    loop {
        if q.is_zero() {
            // the previous convergent is x itself (cannot happen here since
            // denom > cap was filtered, but keep the loop total)
            return BigRational::new(h1, k1);
        }
        let a = &p / &q;
        let k = &a * &k1 + &k2;
        if &k > max_den {
            // largest admissible semiconvergent between h2/k2 and h1/k1
            let s = (max_den - &k2) / &k1;
            let semi = BigRational::new(&s * &h1 + &h2, &s * &k1 + &k2);
            let conv = BigRational::new(h1, k1);
            let d_semi = (x - &semi).abs();
            let d_conv = (x - &conv).abs();
            return if d_semi < d_conv { semi } else { conv };
        }
        let h = &a * &h1 + &h2;
        r = &p - &a * &q;
        p = std::mem::replace(&mut q, r);
        h2 = std::mem::replace(&mut h1, h);
        k2 = std::mem::replace(&mut k1, k);
    }
}

/// Round a complex double to the nearest Gaussian rational with real and
/// imaginary denominators bounded by `max_den`, componentwise.
pub fn round_to_gaussian(z: C64, max_den: u64) -> Qi {
    let cap = BigInt::from(max_den);
    let re = BigRational::from_float(z.re).expect("finite float");
    let im = BigRational::from_float(z.im).expect("finite float");
    Qi::new(best_rational(&re, &cap), best_rational(&im, &cap))
}

/// Max-norm distance between the coefficient tensors of a float matrix and
/// an exact matrix of the same rank and order.
pub fn coefficient_distance(a: &WaveletMatrix<C64>, b: &WaveletMatrix<Qi>) -> f64 {
    let m = a.rank();
    let top = a.order().max(b.order()) as i64;
    let mut dist = 0.0f64;
    for k in 0..=top {
        let ak = a.coeff_mat(k);
        let bk = b.coeff_mat(k);
        for i in 0..m {
            for j in 0..m {
                let d = (ak[(i, j)] - bk[(i, j)].to_c64()).norm();
                dist = dist.max(d);
            }
        }
    }
    dist
}

/// Approximate a float-backend wavelet matrix by an exactly paraunitary
/// Gaussian-rational one: invert the parametrization, round the parameters
/// under the denominator cap, regenerate exactly.
pub fn rational_approximate(
    a: &WaveletMatrix<C64>,
    max_denominator: u64,
    pol: &TolerancePolicy,
) -> Result<(WaveletMatrix<Qi>, ApproxReport)> {
    let point = wavelet_to_params(a, pol)?;
    let rounded: Vec<Vec<Qi>> = point
        .gamma()
        .iter()
        .map(|row| row.iter().map(|g| round_to_gaussian(*g, max_denominator)).collect())
        .collect();
    let exact_point = ParamPoint::new(a.rank(), point.order(), rounded)?;
    let out = generate(&exact_point, &TolerancePolicy::exact())?;
    let report = ApproxReport {
        distance: coefficient_distance(a, &out),
        max_denominator,
        certificate: true,
    };
    Ok((out, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::complex::Complex64;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn best_rational_passes_through_small_denominators() {
        let cap = BigInt::from(100);
        assert_eq!(best_rational(&rat(1, 3), &cap), rat(1, 3));
        assert_eq!(best_rational(&rat(-7, 2), &cap), rat(-7, 2));
    }

    #[test]
    fn best_rational_finds_classic_convergents() {
        // pi ~ 355/113 under a cap of 1000
        let pi = BigRational::from_float(std::f64::consts::PI).unwrap();
        assert_eq!(best_rational(&pi, &BigInt::from(1000)), rat(355, 113));
        // and 22/7 under a cap of 10
        assert_eq!(best_rational(&pi, &BigInt::from(10)), rat(22, 7));
    }

    #[test]
    fn best_rational_handles_negatives_and_semiconvergents() {
        let x = BigRational::from_float(-std::f64::consts::PI).unwrap();
        assert_eq!(best_rational(&x, &BigInt::from(113)), rat(-355, 113));
        // 0.6 with cap 2: semiconvergent comparison picks 1/2
        let x = rat(3, 5);
        assert_eq!(best_rational(&x, &BigInt::from(2)), rat(1, 2));
    }

    #[test]
    fn rounding_absorbs_tiny_perturbations() {
        let z = Complex64::new(0.5 + 1e-12, -1.0 / 3.0);
        let q = round_to_gaussian(z, 100);
        assert_eq!(q, Qi::new(rat(1, 2), rat(-1, 3)));
    }

    #[test]
    fn haar_is_a_fixed_point() {
        let pol = TolerancePolicy::default_float();
        let point = ParamPoint::new(2, 1, vec![vec![Complex64::new(1.0, 0.0)]]).unwrap();
        let a = generate(&point, &pol).unwrap();
        let (out, report) = rational_approximate(&a, 100, &pol).unwrap();
        assert!(report.distance <= 1e-12);
        assert!(report.certificate);
        let haar = generate(
            &ParamPoint::new(2, 1, vec![vec![Qi::one()]]).unwrap(),
            &TolerancePolicy::exact(),
        )
        .unwrap();
        assert_eq!(out, haar);
    }

    #[test]
    fn perturbed_half_snaps_to_half() {
        let pol = TolerancePolicy::default_float();
        let eps = 1e-12;
        let point =
            ParamPoint::new(2, 1, vec![vec![Complex64::new(0.5 + eps, 0.0)]]).unwrap();
        let a = generate(&point, &pol).unwrap();
        let (out, report) = rational_approximate(&a, 100, &pol).unwrap();
        let exact = generate(
            &ParamPoint::new(2, 1, vec![vec![Qi::from_ints(1, 2)]]).unwrap(),
            &TolerancePolicy::exact(),
        )
        .unwrap();
        assert_eq!(out, exact);
        assert!(report.distance < 1e-10);
    }

    #[test]
    fn refinement_is_monotone() {
        let pol = TolerancePolicy::default_float();
        // an irrational-looking parameter point
        let point = ParamPoint::new(
            2,
            2,
            vec![vec![
                Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.2),
                Complex64::new(-0.137, std::f64::consts::LN_2),
            ]],
        )
        .unwrap();
        let a = generate(&point, &pol).unwrap();
        let mut last = f64::INFINITY;
        for cap in [10u64, 100, 10_000] {
            let (_, report) = rational_approximate(&a, cap, &pol).unwrap();
            assert!(report.distance <= last + 1e-15);
            last = report.distance;
        }
        assert!(last <= 1e-3);
    }
}
