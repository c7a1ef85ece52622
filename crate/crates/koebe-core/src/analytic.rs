//! Closed-form analytic building blocks: the generalized Koebe function
//! `k_a`, its logarithmic limit `k_0`, the lens map `l_R`, derivatives of
//! `k_a` through third order, and the coefficient recurrence for `k_a'`.
//!
//! All powers are principal: `(1+z)/(1-z)` maps the disk onto the right
//! half-plane, so `w^a = exp(a Log w)` is single-valued and `k_a(0) = 0`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numkit::series::{binpow, Coeff, Series};

/// `k_a(z) = ((1+z)/(1-z))^a - 1) / (2a)`, with `k_0(z) = ½ Log((1+z)/(1-z))`,
/// and its first three derivatives:
///
/// * order 1: `k_a'   = (1+z)^{a-1} / (1-z)^{a+1}`
/// * order 2: `k_a''  = 2(a+z) (1+z)^{a-2} / (1-z)^{a+2}`
/// * order 3: `k_a''' = 2(3z² + 6az + 2a² + 1) (1+z)^{a-3} / (1-z)^{a+3}`
///
/// Each is evaluated as `w^a` times a rational factor, one principal power
/// per call. The derivative formulas are continuous in `a`, so only order 0
/// needs the logarithmic branch at `a = 0`.
pub fn koebe_generalized(a: f64, z: Complex64, order: u8) -> Result<Complex64> {
    assert!(a.is_finite(), "parameter a must be finite");
    assert!(order <= 3, "derivative order must be 0..=3");
    check_disk(z)?;
    let w = (1.0 + z) / (1.0 - z);
    let one_minus_z2 = 1.0 - z * z;
    Ok(match order {
        0 => {
            if a == 0.0 {
                0.5 * w.ln()
            } else {
                (w.powf(a) - 1.0) / (2.0 * a)
            }
        }
        1 => w.powf(a) / one_minus_z2,
        2 => 2.0 * (z + a) * w.powf(a) / (one_minus_z2 * one_minus_z2),
        _ => {
            let poly = 3.0 * z * z + 6.0 * a * z + (2.0 * a * a + 1.0);
            2.0 * poly * w.powf(a) / (one_minus_z2 * one_minus_z2 * one_minus_z2)
        }
    })
}

/// Lens map `l_R(z) = (w^R - 1)/(w^R + 1)` with `w = (1+z)/(1-z)`;
/// maps the disk onto a lens-shaped subdomain of the disk (`l_1 = id`,
/// `l_0 ≡ 0`), so `|l_R(z)| < 1`.
pub fn lens_map(big_r: f64, z: Complex64) -> Result<Complex64> {
    assert!((0.0..=1.0).contains(&big_r), "lens exponent must lie in [0, 1]");
    check_disk(z)?;
    let wr = ((1.0 + z) / (1.0 - z)).powf(big_r);
    Ok((wr - 1.0) / (wr + 1.0))
}

/// Coefficients of `k_a'` to order `n` via the ODE `(1-z²) u' = 2(z+a) u`:
/// `c_{n+1} = 2a c_n/(n+1) + c_{n-1}`, `c_0 = 1`.
///
/// Equals the Cauchy product of `(1+z)^{a-1}` and `(1-z)^{-(a+1)}` binomial
/// series coefficient-by-coefficient (exactly so in rational arithmetic).
pub fn ka_prime_series<T: Coeff>(a: T, n: usize) -> Result<Series<T>> {
    let two_a = a.clone() + a;
    let mut c = Vec::with_capacity(n + 1);
    c.push(T::one());
    for k in 0..n {
        let prev = if k == 0 { T::zero() } else { c[k - 1].clone() };
        let next = two_a.clone() * c[k].clone() / T::from_usize(k + 1) + prev;
        c.push(next);
    }
    Series::new(c)
}

/// Binomial-product construction of the `k_a'` coefficients, used as the
/// independent oracle for [`ka_prime_series`].
pub fn ka_prime_series_binomial<T: Coeff>(a: T, n: usize) -> Result<Series<T>> {
    let plus = binpow(T::one(), a.clone() - T::one(), n)?;
    let minus = binpow(-T::one(), -(a + T::one()), n)?;
    plus.mul(&minus, n)
}

pub(crate) fn check_disk(z: Complex64) -> Result<()> {
    if z.norm_sqr() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain { z })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn koebe_at_half_is_two() {
        let v = koebe_generalized(2.0, c(0.5, 0.0), 0).unwrap();
        assert_abs_diff_eq!(v.re, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn logarithmic_limit_at_half() {
        let v = koebe_generalized(0.0, c(0.5, 0.0), 0).unwrap();
        assert_abs_diff_eq!(v.re, 0.5 * 3.0f64.ln(), epsilon = 1e-15);
    }

    #[test]
    fn witness_value_is_minus_third() {
        // z₁ with (1+z₁)/(1-z₁) = e^{iπ/3}, i.e. z₁ = i tan(π/6).
        let z1 = c(0.0, (std::f64::consts::PI / 6.0).tan());
        let v = koebe_generalized(3.0, z1, 0).unwrap();
        assert_abs_diff_eq!(v.re, -1.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn domain_error_outside_disk() {
        assert!(matches!(
            koebe_generalized(2.0, c(1.0, 0.5), 0),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn lens_endpoints() {
        let z = c(0.3, -0.4);
        assert_abs_diff_eq!((lens_map(1.0, z).unwrap() - z).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(lens_map(0.0, z).unwrap().norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn lens_half_at_half() {
        let v = lens_map(0.5, c(0.5, 0.0)).unwrap();
        let s3 = 3.0f64.sqrt();
        assert_abs_diff_eq!(v.re, (s3 - 1.0) / (s3 + 1.0), epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn ka_prime_series_known_rows() {
        assert_eq!(ka_prime_series(2.0, 3).unwrap().coeffs(), &[1.0, 4.0, 9.0, 16.0]);
        assert_eq!(ka_prime_series(0.0, 3).unwrap().coeffs(), &[1.0, 0.0, 1.0, 0.0]);
        assert_eq!(ka_prime_series(1.0, 3).unwrap().coeffs(), &[1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn recurrence_equals_binomial_product_exactly() {
        for (num, den) in [(2, 1), (0, 1), (1, 2), (-3, 2), (7, 5), (-2, 1)] {
            let a = q(num, den);
            let rec = ka_prime_series(a.clone(), 12).unwrap();
            let via = ka_prime_series_binomial(a, 12).unwrap();
            assert_eq!(rec, via);
        }
    }

    proptest! {
        // Derivative orders 1..3 match central differences of the order below.
        #[test]
        fn derivative_tower_consistency(
            a in -2.5f64..2.5,
            re in -0.55f64..0.55,
            im in -0.55f64..0.55,
        ) {
            let z = c(re, im);
            prop_assume!(z.norm() < 0.78);
            let h = 1e-5;
            for order in 1u8..=3 {
                let lo = koebe_generalized(a, z - h, order - 1).unwrap();
                let hi = koebe_generalized(a, z + h, order - 1).unwrap();
                let numeric = (hi - lo) / (2.0 * h);
                let exact = koebe_generalized(a, z, order).unwrap();
                let scale = 1.0 + exact.norm();
                prop_assert!((numeric - exact).norm() / scale < 1e-4);
            }
        }

        // Real coefficients: k_a is real on the real axis and conjugation-symmetric.
        #[test]
        fn conjugation_symmetry(a in -2.5f64..2.5, re in -0.9f64..0.9, im in -0.6f64..0.6) {
            let x = c(re, 0.0);
            prop_assert!(koebe_generalized(a, x, 0).unwrap().im.abs() < 1e-12);
            let z = c(re * 0.7, im);
            prop_assume!(z.norm() < 0.9);
            let direct = koebe_generalized(a, z.conj(), 0).unwrap();
            let mirrored = koebe_generalized(a, z, 0).unwrap().conj();
            prop_assert!((direct - mirrored).norm() < 1e-12 * (1.0 + mirrored.norm()));
        }

        // |l_R| < 1 on the disk.
        #[test]
        fn lens_stays_in_disk(r_exp in 0.0f64..1.0, re in -0.95f64..0.95, im in -0.95f64..0.95) {
            let z = c(re, im);
            prop_assume!(z.norm() < 0.97);
            prop_assert!(lens_map(r_exp, z).unwrap().norm() < 1.0);
        }
    }
}
