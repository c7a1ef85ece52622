//! Gauss hypergeometric pieces of the closed-form expressions for `h` and
//! `g`, and their assembly.  This is the third, independent evaluation path
//! (next to the series recurrence and the contour quadrature).
//!
//! Only the parameter/argument patterns that actually occur are supported:
//!
//! * `E(x) = ₂F₁(1, -a; 1-a; x) = -a Σ_{n≥0} xⁿ/(n-a)` at `x = (λ+1)/(λ-1)`
//!   and `x = -(z-1)(λ+1)/((z+1)(λ-1))`, both of which lie in the closed
//!   left half-plane — the Pfaff transformation maps them into the unit
//!   disk, so the direct-series/Pfaff pair covers every reachable argument;
//! * general `₂F₁(α, β; γ; x)` with `|x| < 1` for the two `(1-z)/2`-argument
//!   factors.

use num_complex::Complex64;

use crate::analytic::check_disk;
use crate::error::{Error, Result};
use crate::shear::{HarmonicValue, Params};

/// Hard iteration cap; hit only for arguments the dispatcher should have
/// rejected, so running into it reports `NonConvergence`.
const MAX_TERMS: usize = 200_000;

/// The tail is certified once this many consecutive terms fall below
/// `tol · |partial sum|` (alternating/complex terms make single-term
/// stopping unsafe).
const CONSECUTIVE_SMALL: usize = 20;

/// Term tolerance used by the closed-form assembly.
const ASSEMBLY_TOL: f64 = 1e-13;

/// A general hypergeometric evaluation request `₂F₁(a, b; c; x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypTerm {
    pub a_param: Complex64,
    pub b_param: Complex64,
    pub c_param: Complex64,
    pub x: Complex64,
}

impl HypTerm {
    pub fn real(a: f64, b: f64, c: f64, x: Complex64) -> Self {
        Self {
            a_param: Complex64::new(a, 0.0),
            b_param: Complex64::new(b, 0.0),
            c_param: Complex64::new(c, 0.0),
            x,
        }
    }
}

/// A hypergeometric value with its certified tail bound and a slow-argument
/// flag (`|x| > 0.95`, where the direct series needs thousands of terms).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypValue {
    pub value: Complex64,
    pub tail: f64,
    pub slow: bool,
}

fn is_nonpositive_integer(c: Complex64) -> bool {
    c.im.abs() < 1e-12 && c.re < 0.5 && (c.re - c.re.round()).abs() < 1e-12
}

/// Sums `Σ t_n` given `t_0` and the ratio map `n ↦ t_{n+1}/t_n`, stopping
/// once [`CONSECUTIVE_SMALL`] consecutive terms are below `tol` relative to
/// the partial sum.  Returns the sum and a geometric tail estimate.
fn sum_series(
    t0: Complex64,
    ratio: impl Fn(usize) -> Complex64,
    q: f64,
    tol: f64,
    x_for_error: Complex64,
) -> Result<(Complex64, f64)> {
    let mut term = t0;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut small_run = 0usize;
    let mut recent_max = 0.0f64;
    for n in 0..MAX_TERMS {
        sum += term;
        let t = term.norm();
        recent_max = recent_max.max(t);
        if n > 0 && t <= tol * sum.norm().max(f64::MIN_POSITIVE) {
            small_run += 1;
            if small_run >= CONSECUTIVE_SMALL {
                let tail = if q < 1.0 { recent_max * q / (1.0 - q) } else { recent_max };
                return Ok((sum, tail));
            }
        } else {
            small_run = 0;
            recent_max = t;
        }
        term *= ratio(n);
    }
    Err(Error::NonConvergence { x: x_for_error })
}

/// Direct series `E(x) = -a Σ xⁿ/(n-a)`; converges for `|x| < 1`.
///
/// Public so the acceptance checks can pit it against [`hyp_e_pfaff`] on the
/// annulus where both apply.
pub fn hyp_e_direct(a: f64, x: Complex64, tol: f64) -> Result<(Complex64, f64)> {
    // t_{n+1}/t_n = x (n-a)/(n+1-a).
    let t0 = Complex64::new(-a / (0.0 - a), 0.0);
    sum_series(t0, |n| x * (n as f64 - a) / (n as f64 + 1.0 - a), x.norm(), tol, x)
}

/// Pfaff transformation `E(x) = (1-x)⁻¹ ₂F₁(1, 1; 1-a; x/(x-1))`; converges
/// for `|x/(x-1)| < 1`, i.e. `Re x < 1/2`.
pub fn hyp_e_pfaff(a: f64, x: Complex64, tol: f64) -> Result<(Complex64, f64)> {
    let y = x / (x - 1.0);
    // ₂F₁(1, 1; 1-a; y): t_{n+1}/t_n = (n+1) y/(n+1-a).
    let t0 = Complex64::new(1.0, 0.0);
    let (s, tail) = sum_series(
        t0,
        |n| y * (n as f64 + 1.0) / (n as f64 + 1.0 - a),
        y.norm(),
        tol,
        x,
    )?;
    let scale = (1.0 - x).norm().recip();
    Ok((s / (1.0 - x), tail * scale))
}

/// `₂F₁(1, -a; 1-a; x)`, dispatching between the direct series (`|x| ≤ 0.8`)
/// and the Pfaff transformation (`|x/(x-1)| ≤ 0.995`).
///
/// The Pfaff argument satisfies `|x/(x-1)| < 1` exactly when `Re x < 1/2`,
/// so the two regions jointly cover the left half-plane; only arguments
/// crowding the line `Re x = 1/2` are refused.
///
/// Returns the value with a tail bound.  Fails for nonnegative integer `a`
/// (the term `n = a` divides by zero) and for arguments outside both
/// convergence regions.
pub fn hyp_e(a: f64, x: Complex64) -> Result<(Complex64, f64)> {
    if a >= 0.0 && a.fract() == 0.0 {
        return Err(Error::DegenerateParameters { a });
    }
    if x.norm() <= 0.8 {
        return hyp_e_direct(a, x, ASSEMBLY_TOL);
    }
    if (x - 1.0).norm() > 0.0 && (x / (x - 1.0)).norm() <= 0.995 {
        return hyp_e_pfaff(a, x, ASSEMBLY_TOL);
    }
    Err(Error::NonConvergence { x })
}

/// General Gauss series `₂F₁(a, b; c; x)` for `|x| < 1`.
pub fn hyp_general(term: &HypTerm, tol: f64) -> Result<HypValue> {
    if is_nonpositive_integer(term.c_param) {
        return Err(Error::DegenerateParameters { a: term.c_param.re });
    }
    let x = term.x;
    if x.norm() >= 1.0 {
        return Err(Error::NonConvergence { x });
    }
    let (a, b, c) = (term.a_param, term.b_param, term.c_param);
    let (value, tail) = sum_series(
        Complex64::new(1.0, 0.0),
        |n| {
            let nf = n as f64;
            (a + nf) * (b + nf) * x / ((c + nf) * (nf + 1.0))
        },
        x.norm(),
        tol,
        x,
    )?;
    Ok(HypValue { value, tail, slow: x.norm() > 0.95 })
}

/// Evaluates `f_{a,λ}` through the closed forms for `h` and `g` built from
/// `ψ(a, λ, z)` and `ϖ(a, λ, z)`:
///
/// * `E(x) = ₂F₁(1, -a; 1-a; x)`, `X₀ = (λ+1)/(λ-1)`,
///   `X = -(z-1)(λ+1)/((z+1)(λ-1))`;
/// * `ψ = (1-z)^{-a} {4(a-1)λ(z+1)^a E(X)`
///   `+ 2^a(λ-1)[a(z-1) ₂F₁(1-a,1-a;2-a;(1-z)/2) - 2(a-1) ₂F₁(-a,-a;1-a;(1-z)/2)]}`;
/// * `h = -(-2λE(X₀)+λ-1)/(2a(λ²-1)) - ψ/(4(a-1)a(λ-1)(λ+1))`;
/// * `ϖ = λ{2E(X₀) - ((1+z)/(1-z))^a [2E(X)+λ-1] + λ-1}`, `g = ϖ/(2a(λ²-1))`.
///
/// All powers are principal; every base lies in the right half-plane for
/// `z` in the disk.  Nonnegative integer `a` (which covers the vanishing
/// prefactors `a = 0, 1`) is refused — callers fall back to quadrature.
pub fn closed_form_hg(p: &Params, z: Complex64) -> Result<HarmonicValue> {
    check_disk(z)?;
    let a = p.a;
    let lam = p.lambda;
    if a >= 0.0 && a.fract() == 0.0 {
        return Err(Error::DegenerateParameters { a });
    }

    let x0 = Complex64::new((lam + 1.0) / (lam - 1.0), 0.0);
    let xz = -(z - 1.0) * (lam + 1.0) / ((z + 1.0) * (lam - 1.0));
    let (e0, e0_tail) = hyp_e(a, x0)?;
    let (ez, ez_tail) = hyp_e(a, xz)?;
    let half_arg = (1.0 - z) / 2.0;
    let f1 = hyp_general(&HypTerm::real(1.0 - a, 1.0 - a, 2.0 - a, half_arg), ASSEMBLY_TOL)?;
    let f2 = hyp_general(&HypTerm::real(-a, -a, 1.0 - a, half_arg), ASSEMBLY_TOL)?;

    let pow_m = (1.0 - z).powf(-a);
    let pow_p = (z + 1.0).powf(a);
    let two_a = 2.0f64.powf(a);
    let c_ez = 4.0 * (a - 1.0) * lam * pow_p;
    let c_f1 = two_a * (lam - 1.0) * a * (z - 1.0);
    let c_f2 = -two_a * (lam - 1.0) * 2.0 * (a - 1.0);
    let psi = pow_m * (c_ez * ez + c_f1 * f1.value + c_f2 * f2.value);

    let d_g = 2.0 * a * (lam * lam - 1.0);
    let d_psi = 4.0 * (a - 1.0) * a * (lam - 1.0) * (lam + 1.0);
    let h = -(-2.0 * lam * e0 + lam - 1.0) / d_g - psi / d_psi;

    let w_pow = ((1.0 + z) / (1.0 - z)).powf(a);
    let varpi = lam * (2.0 * e0 - w_pow * (2.0 * ez + lam - 1.0) + (lam - 1.0));
    let g = varpi / d_g;

    let pm = pow_m.norm() / d_psi.abs();
    let err_h = (2.0 * lam / d_g).abs() * e0_tail
        + pm * (c_ez.norm() * ez_tail + c_f1.norm() * f1.tail + c_f2.abs() * f2.tail);
    let err_g = (lam / d_g).abs() * (2.0 * e0_tail + w_pow.norm() * 2.0 * ez_tail);
    Ok(HarmonicValue {
        h,
        g,
        f: h + g.conj(),
        err: err_h + err_g,
        flagged: f1.slow || f2.slow,
    })
}
