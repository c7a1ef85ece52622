//! Growth, derivative, and area sandwiches for `f_{a,λ}`.
//!
//! The three exponent regimes `a ≥ 1`, `-1 < a < 1`, `a ≤ -1` carry
//! different closed-form envelopes for `|h'|` on `|ξ| = ρ`:
//!
//! * `a ≥ 1`:    `(1-ρ)^{a-1}/((1+λρ)(1+ρ)^{a+1}) ≤ |h'| ≤ (1+ρ)^{a-1}/((1-λρ)(1-ρ)^{a+1})`
//! * `|a| < 1`:  `1/((1+λρ)(1+ρ)²) ≤ |h'| ≤ 1/((1-λρ)(1-ρ)²)`
//! * `a ≤ -1`:   `(1+ρ)^{a-1}/((1+λρ)(1-ρ)^{a+1}) ≤ |h'| ≤ (1-ρ)^{a-1}/((1-λρ)(1+ρ)^{a+1})`
//!
//! The growth bounds integrate `(1 ∓ λρ)` times these envelopes over `[0, r]`
//! and the area bounds integrate `2π(ρ - λ²ρ³)` times their squares; at
//! `a = ±1` adjacent regimes coincide.

use crate::analytic::koebe_generalized;
use crate::numkit::quad::{polar_area_integral, real_integral, QuadResult};
use crate::shear::{hg_series, Params};

/// Exponent regime of Theorems on growth/area; picked by `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `a ≥ 1`
    Upper,
    /// `-1 < a < 1`
    Middle,
    /// `a ≤ -1`
    Lower,
}

impl Regime {
    pub fn of(a: f64) -> Self {
        if a >= 1.0 {
            Regime::Upper
        } else if a > -1.0 {
            Regime::Middle
        } else {
            Regime::Lower
        }
    }
}

/// A two-sided bound with per-side error estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsInterval {
    pub lo: f64,
    pub hi: f64,
    pub lo_err: f64,
    pub hi_err: f64,
    pub regime: Regime,
}

/// `(lo, hi)` envelope of `|h'|` on `|ξ| = ρ` in the given regime.
fn envelope_in_regime(a: f64, lam: f64, rho: f64, regime: Regime) -> (f64, f64) {
    let (p, m) = (1.0 + rho, 1.0 - rho);
    match regime {
        Regime::Upper => (
            m.powf(a - 1.0) / ((1.0 + lam * rho) * p.powf(a + 1.0)),
            p.powf(a - 1.0) / ((1.0 - lam * rho) * m.powf(a + 1.0)),
        ),
        Regime::Middle => (
            1.0 / ((1.0 + lam * rho) * p * p),
            1.0 / ((1.0 - lam * rho) * m * m),
        ),
        Regime::Lower => (
            p.powf(a - 1.0) / ((1.0 + lam * rho) * m.powf(a + 1.0)),
            m.powf(a - 1.0) / ((1.0 - lam * rho) * p.powf(a + 1.0)),
        ),
    }
}

/// Closed-form envelope for `|h'|` on `|ξ| = r` (no quadrature involved).
pub fn derivative_envelope(p: &Params, r: f64) -> BoundsInterval {
    assert!(r > 0.0 && r < 1.0, "radius must lie in (0, 1)");
    let regime = Regime::of(p.a);
    let (lo, hi) = envelope_in_regime(p.a, p.lambda, r, regime);
    BoundsInterval { lo, hi, lo_err: 0.0, hi_err: 0.0, regime }
}

/// Two-sided growth bound for `|f|` on `|z| = r`: adaptive quadrature of
/// `(1 - λρ)·env_lo` and `(1 + λρ)·env_hi` over `[0, r]`.
pub fn growth_bounds(p: &Params, r: f64) -> BoundsInterval {
    assert!(r > 0.0 && r < 1.0, "radius must lie in (0, 1)");
    let regime = Regime::of(p.a);
    let (a, lam) = (p.a, p.lambda);
    let lo = real_integral(
        |rho| (1.0 - lam * rho) * envelope_in_regime(a, lam, rho, regime).0,
        0.0,
        r,
        &p.quad,
    );
    let hi = real_integral(
        |rho| (1.0 + lam * rho) * envelope_in_regime(a, lam, rho, regime).1,
        0.0,
        r,
        &p.quad,
    );
    BoundsInterval { lo: lo.value, hi: hi.value, lo_err: lo.err, hi_err: hi.err, regime }
}

/// Two-sided bound for the area of `f(|z| < r)`: adaptive quadrature of
/// `2π(ρ - λ²ρ³)` times the squared envelopes over `[0, r]`.
pub fn area_bounds(p: &Params, r: f64) -> BoundsInterval {
    assert!(r > 0.0 && r < 1.0, "radius must lie in (0, 1)");
    let regime = Regime::of(p.a);
    let (a, lam) = (p.a, p.lambda);
    let weight = move |rho: f64| rho - lam * lam * rho.powi(3);
    let lo = real_integral(
        |rho| {
            let e = envelope_in_regime(a, lam, rho, regime).0;
            weight(rho) * e * e
        },
        0.0,
        r,
        &p.quad,
    );
    let hi = real_integral(
        |rho| {
            let e = envelope_in_regime(a, lam, rho, regime).1;
            weight(rho) * e * e
        },
        0.0,
        r,
        &p.quad,
    );
    let tau = 2.0 * std::f64::consts::PI;
    BoundsInterval {
        lo: tau * lo.value,
        hi: tau * hi.value,
        lo_err: tau * lo.err,
        hi_err: tau * hi.err,
        regime,
    }
}

/// The actual image area `∬_{|ξ|<r} (1 - λ²|ξ|²)|h'(ξ)|² dA` by polar
/// quadrature (the Jacobian of `f = h + conj(g)` with `g' = λξh'`).
pub fn area_empirical(p: &Params, r: f64) -> QuadResult<f64> {
    assert!(r > 0.0 && r < 1.0, "radius must lie in (0, 1)");
    let (a, lam) = (p.a, p.lambda);
    polar_area_integral(
        move |xi| {
            let kp = koebe_generalized(a, xi, 1).expect("integration stays inside the disk");
            let hp = kp / (1.0 - lam * xi);
            (1.0 - lam * lam * xi.norm_sqr()) * hp.norm_sqr()
        },
        r,
        &p.quad,
    )
}

/// Series (Parseval) area `π Σ_{n≥1} n(|aₙ|² - |bₙ|²) r^{2n}` from the
/// coefficient recurrence — an independent oracle for [`area_empirical`].
pub fn area_series(p: &Params, r: f64, n_terms: usize) -> f64 {
    let t = hg_series(p.a, p.lambda, n_terms).expect("order below the series cap");
    let r2 = r * r;
    let mut pow = 1.0;
    let mut sum = 0.0;
    for n in 1..=n_terms {
        pow *= r2;
        let an = t.a_coeffs.coeff(n);
        let bn = t.b_coeffs.coeff(n);
        sum += n as f64 * (an * an - bn * bn) * pow;
    }
    std::f64::consts::PI * sum
}
