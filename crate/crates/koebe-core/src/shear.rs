//! Shear construction of the harmonic family `f_{a,λ} = h + conj(g)` from
//! the system `h - g = k_a`, `g'/h' = λz`, plus the harmonic Koebe map, the
//! explicit `a = 2` family member, Jacobian/dilatation, and a generic shear
//! hook for arbitrary convex-in-direction pre-shears and dilatations.

use std::cell::Cell;

use num_complex::Complex64;

use crate::analytic::{check_disk, ka_prime_series, koebe_generalized};
use crate::error::{Error, Result};
use crate::numkit::quad::{segment_integral_pair, QuadSpec};
use crate::numkit::series::{Coeff, Series};

/// Family parameters: exponent `a`, dilatation slope `λ ∈ [0, 1)`, and the
/// quadrature budget used by evaluation.
///
/// All real `a` are accepted; univalence (which requires `-2 ≤ a ≤ 2`) is a
/// separate verdict, not a constructor constraint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Params {
    pub a: f64,
    pub lambda: f64,
    pub quad: QuadSpec,
}

impl Params {
    pub fn new(a: f64, lambda: f64) -> Self {
        assert!(a.is_finite(), "parameter a must be finite");
        assert!(
            (0.0..1.0).contains(&lambda),
            "lambda must lie in [0, 1); the harmonic-Koebe limit is reached only as a formal coefficient limit"
        );
        Self { a, lambda, quad: QuadSpec::default() }
    }

    pub fn with_quad(mut self, quad: QuadSpec) -> Self {
        self.quad = quad;
        self
    }
}

/// Point value of a harmonic map: `f = h + conj(g)` with an error estimate.
///
/// `flagged` marks results whose quadrature budget ran out; `err` is still a
/// best-effort bound in that case.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicValue {
    pub h: Complex64,
    pub g: Complex64,
    pub f: Complex64,
    pub err: f64,
    pub flagged: bool,
}

impl HarmonicValue {
    pub fn exact(h: Complex64, g: Complex64) -> Self {
        Self { h, g, f: h + g.conj(), err: 0.0, flagged: false }
    }
}

/// Taylor data of a family member: `h = Σ a_n z^n`, `g = Σ b_n z^n` with
/// `a_0 = b_0 = b_1 = 0`, `a_1 = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorPair<T: Coeff> {
    pub a_coeffs: Series<T>,
    pub b_coeffs: Series<T>,
}

/// `(h'(z), g'(z))` in closed form: `h' = k_a'/(1 - λz)`, `g' = λ z h'`.
pub fn shear_derivatives(p: &Params, z: Complex64) -> Result<(Complex64, Complex64)> {
    check_disk(z)?;
    let kp = koebe_generalized(p.a, z, 1)?;
    let hp = kp / (1.0 - p.lambda * z);
    let gp = p.lambda * z * hp;
    Ok((hp, gp))
}

/// Evaluates `f_{a,λ}` by adaptive quadrature of `(h', g')` along the radial
/// segment `[0, z]`; `h` and `g` share one subdivision.
pub fn eval_f(p: &Params, z: Complex64) -> Result<HarmonicValue> {
    check_disk(z)?;
    let lambda = p.lambda;
    let a = p.a;
    let r = segment_integral_pair(
        |xi| {
            let kp = koebe_generalized(a, xi, 1).expect("segment stays inside the disk");
            let hp = kp / (1.0 - lambda * xi);
            (hp, lambda * xi * hp)
        },
        z,
        &p.quad,
    );
    let (h, g) = r.value;
    Ok(HarmonicValue { h, g, f: h + g.conj(), err: r.err, flagged: r.exhausted })
}

/// Taylor coefficients of `h` and `g` to order `n` from the recurrences
///
/// * `d_k = c_k + λ d_{k-1}` (coefficients of `h' = k_a'/(1-λz)`),
/// * `a_k = d_{k-1}/k`,
/// * `(k+1) b_{k+1} = λ k a_k`, `b_1 = 0`.
///
/// `λ = 1` is accepted here as the formal harmonic-Koebe coefficient limit
/// even though `Params` excludes it.
pub fn hg_series<T: Coeff>(a: T, lambda: T, n: usize) -> Result<TaylorPair<T>> {
    assert!(n >= 1, "need at least order 1 for the normalization a_1 = 1");
    let c = ka_prime_series(a, n.saturating_sub(1))?;
    let mut d = Vec::with_capacity(n);
    d.push(T::one());
    for k in 1..n {
        d.push(c.coeff(k) + lambda.clone() * d[k - 1].clone());
    }
    let mut a_coeffs = vec![T::zero(); n + 1];
    for k in 1..=n {
        a_coeffs[k] = d[k - 1].clone() / T::from_usize(k);
    }
    let mut b_coeffs = vec![T::zero(); n + 1];
    for k in 1..n {
        b_coeffs[k + 1] = lambda.clone() * T::from_usize(k) * a_coeffs[k].clone()
            / T::from_usize(k + 1);
    }
    Ok(TaylorPair {
        a_coeffs: Series::new(a_coeffs)?,
        b_coeffs: Series::new(b_coeffs)?,
    })
}

/// The harmonic Koebe map `K = H + conj(G)` from its rational closed forms
/// `H = (z - z²/2 + z³/6)/(1-z)³`, `G = (z²/2 + z³/6)/(1-z)³`.
pub fn harmonic_koebe_eval(z: Complex64) -> Result<HarmonicValue> {
    check_disk(z)?;
    let den = (1.0 - z).powu(3);
    let h = (z - z * z / 2.0 + z * z * z / 6.0) / den;
    let g = (z * z / 2.0 + z * z * z / 6.0) / den;
    Ok(HarmonicValue::exact(h, g))
}

/// The explicit harmonic quasiconformal Koebe function (the `a = 2` member):
///
/// `h_λ = [(λ-1)(1-3λ+2λz)z/(1-z)² + λ(λ+1) Log((1-z)/(1-λz))]/(λ-1)³`
/// `g_λ = λ[(1-λ)(1+λ-2z)z/(1-z)² + (λ+1) Log((1-z)/(1-λz))]/(λ-1)³`
///
/// The logarithm is principal; `(1-z)/(1-λz)` never meets the cut because
/// both factors lie in the right half-plane.
pub fn f_lambda_explicit(lambda: f64, z: Complex64) -> Result<HarmonicValue> {
    assert!((0.0..1.0).contains(&lambda), "lambda must lie in [0, 1)");
    check_disk(z)?;
    let den3 = (lambda - 1.0).powi(3);
    let zs = z / ((1.0 - z) * (1.0 - z));
    let lg = ((1.0 - z) / (1.0 - lambda * z)).ln();
    let h = ((lambda - 1.0) * (1.0 - 3.0 * lambda + 2.0 * lambda * z) * zs
        + lambda * (lambda + 1.0) * lg)
        / den3;
    let g = lambda
        * ((1.0 - lambda) * (1.0 + lambda - 2.0 * z) * zs + (lambda + 1.0) * lg)
        / den3;
    Ok(HarmonicValue::exact(h, g))
}

/// Jacobian `J_f = |h'|² - |g'|² = (1 - λ²|z|²)|h'|²`; positive on the disk
/// for `λ < 1` (Lewy sense-preservation).
pub fn jacobian(p: &Params, z: Complex64) -> Result<f64> {
    let (hp, gp) = shear_derivatives(p, z)?;
    Ok(hp.norm_sqr() - gp.norm_sqr())
}

/// Generic shear: solves `h - ν g = φ`, `g' = ω h'` by quadrature along
/// `[0, z]`, i.e. `h' = φ'/(1 - ν ω)`, `g' = ω h'`.
///
/// Fails with `DilatationOutOfRange` if `|ω| ≥ 1` is met on the segment.
pub fn general_shear(
    phi_prime: &dyn Fn(Complex64) -> Complex64,
    omega: &dyn Fn(Complex64) -> Complex64,
    nu: Complex64,
    z: Complex64,
    quad: &QuadSpec,
) -> Result<HarmonicValue> {
    assert!((nu.norm() - 1.0).abs() < 1e-9, "shear direction ν must be unimodular");
    check_disk(z)?;
    let violation: Cell<Option<(Complex64, f64)>> = Cell::new(None);
    let r = segment_integral_pair(
        |xi| {
            let w = omega(xi);
            let m = w.norm();
            if m >= 1.0 {
                if violation.get().is_none() {
                    violation.set(Some((xi, m)));
                }
                return (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            }
            let hp = phi_prime(xi) / (1.0 - nu * w);
            (hp, w * hp)
        },
        z,
        quad,
    );
    if let Some((xi, modulus)) = violation.get() {
        return Err(Error::DilatationOutOfRange { z: xi, modulus });
    }
    let (h, g) = r.value;
    Ok(HarmonicValue { h, g, f: h + g.conj(), err: r.err, flagged: r.exhausted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkit::series::to_f64;
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
    fn derivatives_at_known_points() {
        let p = Params::new(2.0, 0.0);
        let (hp, gp) = shear_derivatives(&p, c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(hp.re, 12.0, epsilon = 1e-12);
        assert_abs_diff_eq!(gp.norm(), 0.0, epsilon = 1e-15);

        let p = Params::new(2.0, 0.5);
        let (hp, gp) = shear_derivatives(&p, c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(hp.re, 16.0, epsilon = 1e-12);
        assert_abs_diff_eq!(gp.re, 4.0, epsilon = 1e-12);

        let (hp0, gp0) = shear_derivatives(&Params::new(-1.3, 0.77), c(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!((hp0 - 1.0).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(gp0.norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn eval_reduces_to_koebe_at_lambda_zero() {
        let p = Params::new(2.0, 0.0);
        let v = eval_f(&p, c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(v.f.re, 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(v.g.norm(), 0.0, epsilon = 1e-12);

        let p0 = Params::new(0.0, 0.0);
        let v0 = eval_f(&p0, c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(v0.f.re, 0.5 * 3.0f64.ln(), epsilon = 1e-10);
    }

    #[test]
    fn eval_matches_explicit_member() {
        let p = Params::new(2.0, 0.5);
        let z = c(0.3, 0.0);
        let v = eval_f(&p, z).unwrap();
        let e = f_lambda_explicit(0.5, z).unwrap();
        assert!((v.h - e.h).norm() < 1e-9);
        assert!((v.g - e.g).norm() < 1e-9);
    }

    #[test]
    fn hg_series_hand_values() {
        let t = hg_series(q(2, 1), q(1, 2), 4).unwrap();
        assert_eq!(t.a_coeffs.coeff(2), q(9, 4));
        assert_eq!(t.a_coeffs.coeff(3), q(15, 4));
        assert_eq!(t.a_coeffs.coeff(4), q(173, 32));
        assert_eq!(t.b_coeffs.coeff(1), q(0, 1));
        assert_eq!(t.b_coeffs.coeff(2), q(1, 4));
        assert_eq!(t.b_coeffs.coeff(3), q(3, 4));
    }

    #[test]
    fn hg_series_koebe_row_and_harmonic_limit() {
        let t = hg_series(q(2, 1), q(0, 1), 6).unwrap();
        for k in 1..=6 {
            assert_eq!(t.a_coeffs.coeff(k), q(k as i64, 1));
            assert_eq!(t.b_coeffs.coeff(k), q(0, 1));
        }
        let t = hg_series(q(2, 1), q(1, 1), 6).unwrap();
        for n in 1..=6i64 {
            assert_eq!(t.a_coeffs.coeff(n as usize), q((n + 1) * (2 * n + 1), 6));
            assert_eq!(t.b_coeffs.coeff(n as usize), q((n - 1) * (2 * n - 1), 6));
        }
    }

    #[test]
    fn harmonic_koebe_known_values() {
        let v = harmonic_koebe_eval(c(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.f.norm(), 0.0, epsilon = 1e-15);
        let v = harmonic_koebe_eval(c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(v.h.re, 19.0 / 6.0, epsilon = 1e-13);
    }

    #[test]
    fn harmonic_koebe_taylor_by_series_division() {
        // H = (z - z²/2 + z³/6)/(1-z)³ expanded by synthetic division matches
        // the λ → 1 coefficient limit (n+1)(2n+1)/6.
        let num = Series::new(vec![q(0, 1), q(1, 1), q(-1, 2), q(1, 6)]).unwrap();
        let den = Series::new(vec![q(1, 1), q(-3, 1), q(3, 1), q(-1, 1)]).unwrap();
        let h = num.div(&den, 6).unwrap();
        assert_eq!(h.coeff(1), q(1, 1));
        assert_eq!(h.coeff(2), q(5, 2));
        assert_eq!(h.coeff(3), q(14, 3));
        let limit = hg_series(q(2, 1), q(1, 1), 6).unwrap();
        assert_eq!(h, limit.a_coeffs.truncated(6).unwrap());
    }

    #[test]
    fn f_lambda_explicit_normalization_and_koebe_limit() {
        let v = f_lambda_explicit(0.5, c(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.f.norm(), 0.0, epsilon = 1e-15);
        let z = c(0.37, -0.21);
        let v = f_lambda_explicit(0.0, z).unwrap();
        let k = z / ((1.0 - z) * (1.0 - z));
        assert!((v.h - k).norm() < 1e-14);
        assert_abs_diff_eq!(v.g.norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn jacobian_known_values() {
        assert_abs_diff_eq!(
            jacobian(&Params::new(-0.7, 0.6), c(0.0, 0.0)).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            jacobian(&Params::new(2.0, 0.0), c(0.5, 0.0)).unwrap(),
            144.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            jacobian(&Params::new(2.0, 0.5), c(0.5, 0.0)).unwrap(),
            240.0,
            epsilon = 1e-10
        );
    }

    #[test]
    fn general_shear_specializes_to_eval_f() {
        let p = Params::new(1.3, 0.4);
        let z = c(0.45, 0.3);
        let direct = eval_f(&p, z).unwrap();
        let a = p.a;
        let lam = p.lambda;
        let phi = move |xi: Complex64| koebe_generalized(a, xi, 1).unwrap();
        let om = move |xi: Complex64| lam * xi;
        let sheared = general_shear(&phi, &om, c(1.0, 0.0), z, &p.quad).unwrap();
        assert!((direct.h - sheared.h).norm() < 1e-12);
        assert!((direct.g - sheared.g).norm() < 1e-12);
    }

    #[test]
    fn general_shear_reaches_harmonic_koebe() {
        // φ' = k', ω = id, ν = 1 is the harmonic Koebe shear system.
        let phi = |xi: Complex64| (1.0 + xi) / (1.0 - xi).powu(3);
        let om = |xi: Complex64| xi;
        let z = c(0.5, 0.0);
        let sheared = general_shear(&phi, &om, c(1.0, 0.0), z, &QuadSpec::default()).unwrap();
        let exact = harmonic_koebe_eval(z).unwrap();
        assert!((sheared.h - exact.h).norm() < 1e-9);
        assert!((sheared.g - exact.g).norm() < 1e-9);
    }

    #[test]
    fn general_shear_rejects_unimodular_dilatation_violation() {
        let phi = |_: Complex64| c(1.0, 0.0);
        let om = |_: Complex64| c(1.5, 0.0);
        let err = general_shear(&phi, &om, c(1.0, 0.0), c(0.5, 0.0), &QuadSpec::default());
        assert!(matches!(err, Err(Error::DilatationOutOfRange { .. })));
    }

    #[test]
    fn lens_dilatation_at_origin_is_trivial() {
        let phi = |xi: Complex64| (1.0 - xi * xi).inv();
        let om = |xi: Complex64| crate::analytic::lens_map(0.5, xi).unwrap();
        let v = general_shear(&phi, &om, c(1.0, 0.0), c(1e-12, 0.0), &QuadSpec::default()).unwrap();
        assert!(v.f.norm() < 1e-10);
    }

    proptest! {
        // System identities: g' = λ z h' exactly; h - g - k_a small vs quad error.
        #[test]
        fn shear_system_identities(
            a in -2.2f64..2.2,
            lam in 0.0f64..0.92,
            re in -0.65f64..0.65,
            im in -0.65f64..0.65,
        ) {
            let z = c(re, im);
            prop_assume!(z.norm() <= 0.9);
            let p = Params::new(a, lam);
            let (hp, gp) = shear_derivatives(&p, z).unwrap();
            prop_assert!((gp - lam * z * hp).norm() == 0.0);
            let kp = koebe_generalized(a, z, 1).unwrap();
            prop_assert!((hp - gp - kp).norm() < 1e-12 * (1.0 + kp.norm()));

            let v = eval_f(&p, z).unwrap();
            let k = koebe_generalized(a, z, 0).unwrap();
            prop_assert!((v.h - v.g - k).norm() <= 10.0 * v.err.max(1e-13));
        }

        // Jacobian positivity and the two Jacobian expressions agree.
        #[test]
        fn jacobian_positive_and_consistent(
            a in -2.2f64..2.2,
            lam in 0.0f64..0.92,
            re in -0.65f64..0.65,
            im in -0.65f64..0.65,
        ) {
            let z = c(re, im);
            prop_assume!(z.norm() <= 0.9);
            let p = Params::new(a, lam);
            let j = jacobian(&p, z).unwrap();
            prop_assert!(j > 0.0);
            let (hp, _) = shear_derivatives(&p, z).unwrap();
            let alt = (1.0 - lam * lam * z.norm_sqr()) * hp.norm_sqr();
            prop_assert!((j - alt).abs() <= 1e-12 * alt.max(1.0));
        }

        // Coefficient recurrence identity (k+1) b_{k+1} = λ k a_k, exact rationals.
        #[test]
        fn dilatation_coefficient_identity(an in -8i64..=8, ad in 1i64..=4, ln in 0i64..=4) {
            let a = q(an, ad);
            let lam = q(ln, 4);
            let t = hg_series(a, lam.clone(), 10).unwrap();
            for k in 1..10usize {
                let lhs = q(k as i64 + 1, 1) * t.b_coeffs.coeff(k + 1);
                let rhs = lam.clone() * q(k as i64, 1) * t.a_coeffs.coeff(k);
                prop_assert_eq!(lhs, rhs);
            }
        }

        // Rational-mode coefficients are genuinely real numbers (trivially, by
        // type) — the float path must agree with them.
        #[test]
        fn float_and_rational_series_agree(an in -8i64..=8, ln in 0i64..=3) {
            let t_q = hg_series(q(an, 4), q(ln, 4), 16).unwrap();
            let t_f = hg_series(an as f64 / 4.0, ln as f64 / 4.0, 16).unwrap();
            let aq = to_f64(&t_q.a_coeffs);
            for k in 0..=16 {
                prop_assert!((aq.coeff(k) - t_f.a_coeffs.coeff(k)).abs()
                    <= 1e-9 * (1.0 + aq.coeff(k).abs()));
            }
        }

        // Radial-segment evaluation agrees with a two-leg polyline path.
        #[test]
        fn path_independence(a in -2.0f64..2.0, lam in 0.0f64..0.9, re in -0.5f64..0.5, im in -0.5f64..0.5) {
            let z = c(re, im);
            prop_assume!(z.norm() > 0.05 && z.norm() < 0.7);
            let p = Params::new(a, lam);
            let direct = eval_f(&p, z).unwrap();
            let hp = move |xi: Complex64| {
                let kp = koebe_generalized(a, xi, 1).unwrap();
                kp / (1.0 - lam * xi)
            };
            let leg1 = crate::numkit::quad::chord_integral(hp, c(0.0, 0.0), c(re, 0.0), &p.quad);
            let leg2 = crate::numkit::quad::chord_integral(hp, c(re, 0.0), z, &p.quad);
            let h2 = leg1.value + leg2.value;
            prop_assert!((direct.h - h2).norm() <= 10.0 * (direct.err + leg1.err + leg2.err).max(1e-12));
        }
    }
}
