//! Harmonic pre-Schwarzian and Schwarzian derivatives of `f_{a,λ}` — closed
//! forms, the generic Hernández–Martín assembly from jets, and sup-norm
//! estimation against the proved bounds.
//!
//! With dilatation `ω = λz` the closed forms are
//!
//! `P_f = 2(z+a)/(1-z²) + λ/(1-λz) - λ²z̄/(1-λ²|z|²)`
//!
//! `S_f = 2(1-a²)/(1-z²)² + λ²/(2(1-λz)²) - 2λ(z+a)/((1-z²)(1-λz))`
//! `      + λ²z̄[-3λz² + 2(1-aλ)z + 2a + λ]/((1-λ²|z|²)(1-z²)(1-λz))`
//! `      - (3/2)λ⁴z̄²/(1-λ²|z|²)²`
//!
//! and the norm bounds are `‖P_f‖ ≤ 2(1+|a|) + 2λ² + λ` and
//! `‖S_f‖ ≤ λ⁴ + 2λ³(|a|+1) + λ²(4|a|+13/2) + 2λ(|a|+2) + 2|1-a²|`.

use num_complex::Complex64;

use crate::analytic::{check_disk, koebe_generalized};
use crate::error::{Error, Result};
use crate::numkit::sup::weighted_sup;
use crate::shear::Params;

/// Which operator a norm report concerns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorKind {
    PreSchwarzian,
    Schwarzian,
}

/// Result of a sup-norm search: a certified lower bound for the true norm
/// (grid + refinement never overshoots a continuous function's sup), the
/// point attaining it, and the proved upper bound for comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormReport {
    pub kind: OperatorKind,
    pub estimate: f64,
    pub argmax: Complex64,
    pub paper_bound: f64,
    pub r_max: f64,
}

/// Analytic/anti-analytic jet of a harmonic map at a point: `h'`, `h''`,
/// `h'''` and the dilatation `ω`, `ω'`, `ω''`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub hp: Complex64,
    pub hpp: Complex64,
    pub hppp: Complex64,
    pub w: Complex64,
    pub wp: Complex64,
    pub wpp: Complex64,
}

/// Jets of `f_{a,λ}` from the closed forms
/// `h' = k_a'/(1-λz)`, `h''/h' = 2(z+a)/(1-z²) + λ/(1-λz)`,
/// `h''' = [k_a'''(1-λz)² + 2λ(k_a''(1-λz) + λk_a')]/(1-λz)³`, `ω = λz`.
pub fn shear_jets(p: &Params, z: Complex64) -> Result<Jet> {
    check_disk(z)?;
    let kp = koebe_generalized(p.a, z, 1)?;
    let kpp = koebe_generalized(p.a, z, 2)?;
    let kppp = koebe_generalized(p.a, z, 3)?;
    let lam = p.lambda;
    let den = 1.0 - lam * z;
    let hp = kp / den;
    let hpp = hp * (2.0 * (z + p.a) / (1.0 - z * z) + lam / den);
    let hppp = (kppp * den * den + 2.0 * lam * (kpp * den + lam * kp)) / (den * den * den);
    Ok(Jet {
        hp,
        hpp,
        hppp,
        w: lam * z,
        wp: Complex64::new(lam, 0.0),
        wpp: Complex64::new(0.0, 0.0),
    })
}

/// Closed-form harmonic pre-Schwarzian of `f_{a,λ}`.
pub fn pre_schwarzian_closed(p: &Params, z: Complex64) -> Result<Complex64> {
    check_disk(z)?;
    let lam = p.lambda;
    let analytic = 2.0 * (z + p.a) / (1.0 - z * z) + lam / (1.0 - lam * z);
    let anti = lam * lam * z.conj() / (1.0 - lam * lam * z.norm_sqr());
    Ok(analytic - anti)
}

/// Closed-form harmonic Schwarzian of `f_{a,λ}` (the five-term expression).
pub fn schwarzian_closed(p: &Params, z: Complex64) -> Result<Complex64> {
    check_disk(z)?;
    let a = p.a;
    let lam = p.lambda;
    let zb = z.conj();
    let one_z2 = 1.0 - z * z;
    let one_lz = 1.0 - lam * z;
    let one_m = 1.0 - lam * lam * z.norm_sqr();
    let t1 = 2.0 * (1.0 - a * a) / (one_z2 * one_z2);
    let t2 = lam * lam / (2.0 * one_lz * one_lz);
    let t3 = -2.0 * lam * (z + a) / (one_z2 * one_lz);
    let poly = -3.0 * lam * z * z + 2.0 * (1.0 - a * lam) * z + 2.0 * a + lam;
    let t4 = lam * lam * zb * poly / (one_m * one_z2 * one_lz);
    let t5 = -1.5 * lam.powi(4) * zb * zb / (one_m * one_m);
    Ok(t1 + t2 + t3 + t4 + t5)
}

/// Generic Hernández–Martín operators from a jet:
///
/// `P = h''/h' - ω'ω̄/(1-|ω|²)`
/// `S = h'''/h' - (3/2)(h''/h')² + ω̄/(1-|ω|²)(h''/h'·ω' - ω'') - (3/2)(ω'ω̄/(1-|ω|²))²`
pub fn generic_operators(
    hp: Complex64,
    hpp: Complex64,
    hppp: Complex64,
    w: Complex64,
    wp: Complex64,
    wpp: Complex64,
) -> Result<(Complex64, Complex64)> {
    if hp.norm() == 0.0 || w.norm() >= 1.0 {
        return Err(Error::DegenerateJet);
    }
    let q = hpp / hp;
    let d = 1.0 - w.norm_sqr();
    let wc = w.conj();
    let corr = wp * wc / d;
    let p_op = q - corr;
    let s_op = hppp / hp - 1.5 * q * q + wc / d * (q * wp - wpp) - 1.5 * corr * corr;
    Ok((p_op, s_op))
}

/// The Schwarzian assembled directly from `k_a`-derivative ratios:
///
/// `S = k'''/k' + 2λk''/((1-λz)k') + 2λ²/(1-λz)² - (3/2)(k''/k' + λ/(1-λz))²`
/// `    + λ²z̄/(1-λ²|z|²)·(k''/k' + λ/(1-λz)) - (3/2)(λ²z̄/(1-λ²|z|²))²`
///
/// A third route to the same value, used to cross-check the other two.
pub fn schwarzian_assembled(p: &Params, z: Complex64) -> Result<Complex64> {
    check_disk(z)?;
    let kp = koebe_generalized(p.a, z, 1)?;
    let kpp = koebe_generalized(p.a, z, 2)?;
    let kppp = koebe_generalized(p.a, z, 3)?;
    let lam = p.lambda;
    let den = 1.0 - lam * z;
    let q = kpp / kp + lam / den;
    let b = lam * lam * z.conj() / (1.0 - lam * lam * z.norm_sqr());
    Ok(kppp / kp + 2.0 * lam * kpp / (den * kp) + 2.0 * lam * lam / (den * den)
        - 1.5 * q * q
        + b * q
        - 1.5 * b * b)
}

/// The proved norm bound for the requested operator.
pub fn norm_bound(kind: OperatorKind, p: &Params) -> f64 {
    let aa = p.a.abs();
    let lam = p.lambda;
    match kind {
        OperatorKind::PreSchwarzian => 2.0 * (1.0 + aa) + 2.0 * lam * lam + lam,
        OperatorKind::Schwarzian => {
            lam.powi(4)
                + 2.0 * lam.powi(3) * (aa + 1.0)
                + lam * lam * (4.0 * aa + 6.5)
                + 2.0 * lam * (aa + 2.0)
                + 2.0 * (1.0 - p.a * p.a).abs()
        }
    }
}

/// Estimates `‖P_f‖` or `‖S_f‖` by weighted sup search over `|z| ≤ r_max`
/// (weight `(1-|z|²)` or `(1-|z|²)²`) and pairs it with the proved bound.
pub fn norm_estimate(kind: OperatorKind, p: &Params, r_max: f64) -> NormReport {
    assert!((0.0..1.0).contains(&r_max) && r_max > 0.0, "r_max must lie in (0, 1)");
    let pw = match kind {
        OperatorKind::PreSchwarzian => 1,
        OperatorKind::Schwarzian => 2,
    };
    let params = *p;
    let sup = match kind {
        OperatorKind::PreSchwarzian => weighted_sup(
            move |z| pre_schwarzian_closed(&params, z).expect("search stays inside the disk"),
            pw,
            r_max,
        ),
        OperatorKind::Schwarzian => weighted_sup(
            move |z| schwarzian_closed(&params, z).expect("search stays inside the disk"),
            pw,
            r_max,
        ),
    };
    NormReport {
        kind,
        estimate: sup.sup,
        argmax: sup.argmax,
        paper_bound: norm_bound(kind, p),
        r_max,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn pre_schwarzian_reference_values() {
        for &(a, lam) in &[(2.0, 0.5), (-1.3, 0.2), (0.0, 0.9)] {
            let p = Params::new(a, lam);
            let v = pre_schwarzian_closed(&p, c(0.0, 0.0)).unwrap();
            assert_abs_diff_eq!(v.re, 2.0 * a + lam, epsilon = 1e-14);
            assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
        }
        let v = pre_schwarzian_closed(&Params::new(0.0, 0.0), c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 4.0 / 3.0, epsilon = 1e-14);
        // 2(1/2+2)/(3/4) + (1/2)/(3/4) - (1/4)(1/2)/(1 - 1/16)
        //   = 20/3 + 2/3 - 2/15 = 36/5.
        let v = pre_schwarzian_closed(&Params::new(2.0, 0.5), c(0.5, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, 36.0 / 5.0, epsilon = 1e-13);
    }

    #[test]
    fn schwarzian_reference_values() {
        for &(a, lam) in &[(2.0, 0.5), (-1.5, 0.75), (0.5, 0.0)] {
            let p = Params::new(a, lam);
            let v = schwarzian_closed(&p, c(0.0, 0.0)).unwrap();
            assert_abs_diff_eq!(
                v.re,
                2.0 * (1.0 - a * a) + lam * lam / 2.0 - 2.0 * a * lam,
                epsilon = 1e-13
            );
        }
        let v = schwarzian_closed(&Params::new(2.0, 0.0), c(0.0, 0.0)).unwrap();
        assert_abs_diff_eq!(v.re, -6.0, epsilon = 1e-15);
        // k_1 is a Möbius map: S vanishes identically at λ = 0.
        let p = Params::new(1.0, 0.0);
        for &z in &[c(0.3, 0.4), c(-0.7, 0.1), c(0.0, -0.9)] {
            assert!(schwarzian_closed(&p, z).unwrap().norm() < 1e-13);
        }
    }

    #[test]
    fn closed_forms_match_generic_assembly() {
        let pts = [
            c(0.3, 0.2),
            c(-0.5, 0.4),
            c(0.1, -0.7),
            c(-0.6, -0.3),
            c(0.75, 0.0),
            c(0.0, 0.8),
        ];
        for &(a, lam) in &[(2.0, 0.5), (-2.0, 0.9), (0.5, 0.25), (-0.5, 0.0), (1.0, 0.7)] {
            let p = Params::new(a, lam);
            for &z in &pts {
                let jet = shear_jets(&p, z).unwrap();
                let (gp, gs) =
                    generic_operators(jet.hp, jet.hpp, jet.hppp, jet.w, jet.wp, jet.wpp).unwrap();
                let cp = pre_schwarzian_closed(&p, z).unwrap();
                let cs = schwarzian_closed(&p, z).unwrap();
                let asm = schwarzian_assembled(&p, z).unwrap();
                assert!((gp - cp).norm() < 1e-10 * (1.0 + cp.norm()), "P a={a} λ={lam} z={z}");
                assert!((gs - cs).norm() < 1e-9 * (1.0 + cs.norm()), "S a={a} λ={lam} z={z}");
                assert!((asm - cs).norm() < 1e-9 * (1.0 + cs.norm()), "asm a={a} λ={lam} z={z}");
            }
        }
    }

    #[test]
    fn generic_reduces_to_classical_for_analytic_maps() {
        // w ≡ 0: P = h''/h', S = h'''/h' - (3/2)(h''/h')².
        let (hp, hpp, hppp) = (c(2.0, 1.0), c(-0.5, 0.3), c(0.1, -0.2));
        let zero = c(0.0, 0.0);
        let (p_op, s_op) = generic_operators(hp, hpp, hppp, zero, zero, zero).unwrap();
        let q = hpp / hp;
        assert!((p_op - q).norm() < 1e-15);
        assert!((s_op - (hppp / hp - 1.5 * q * q)).norm() < 1e-15);
    }

    #[test]
    fn generic_rejects_degenerate_jets() {
        let zero = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        assert!(matches!(
            generic_operators(zero, one, one, zero, zero, zero),
            Err(Error::DegenerateJet)
        ));
        assert!(matches!(
            generic_operators(one, one, one, c(1.0, 0.0), zero, zero),
            Err(Error::DegenerateJet)
        ));
    }

    #[test]
    fn harmonic_koebe_jet_gives_real_schwarzian_on_real_axis() {
        // H' = (1+ξ)/(1-ξ)⁴ and its derivatives; the dilatation is ω = z.
        let z = c(0.3, 0.0);
        let hp = (1.0 + z) / (1.0 - z).powu(4);
        let hpp = (5.0 + 3.0 * z) / (1.0 - z).powu(5);
        let hppp = (28.0 + 12.0 * z) / (1.0 - z).powu(6);
        let (p_op, s_op) =
            generic_operators(hp, hpp, hppp, z, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!(p_op.norm().is_finite() && s_op.norm().is_finite());
        assert_abs_diff_eq!(s_op.im, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p_op.im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn norm_bound_reference_values() {
        assert_abs_diff_eq!(
            norm_bound(OperatorKind::PreSchwarzian, &Params::new(2.0, 0.0)),
            6.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            norm_bound(OperatorKind::PreSchwarzian, &Params::new(0.0, 0.0)),
            2.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            norm_bound(OperatorKind::Schwarzian, &Params::new(2.0, 0.0)),
            6.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            norm_bound(OperatorKind::Schwarzian, &Params::new(1.0, 0.0)),
            0.0,
            epsilon = 1e-15
        );
        // λ = 1 would give P-bound 2(1+|a|) + 3 and S-bound the full quintic;
        // spot-check the polynomial at λ = 1/2, a = 1: 1/16 + 1/2 + 21/8 + 3 + 0.
        assert_abs_diff_eq!(
            norm_bound(OperatorKind::Schwarzian, &Params::new(1.0, 0.5)),
            1.0 / 16.0 + 0.5 + 21.0 / 8.0 + 3.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn norm_estimates_at_known_suprema() {
        let r_max = 1.0 - 1e-4;
        let rep = norm_estimate(OperatorKind::PreSchwarzian, &Params::new(2.0, 0.0), r_max);
        assert_abs_diff_eq!(rep.estimate, 2.0 * (r_max + 2.0), epsilon = 1e-6);
        assert!(rep.estimate <= rep.paper_bound + 1e-9);

        let rep = norm_estimate(OperatorKind::Schwarzian, &Params::new(2.0, 0.0), r_max);
        assert_abs_diff_eq!(rep.estimate, 6.0, epsilon = 1e-6);
        assert!(rep.estimate <= rep.paper_bound + 1e-9);

        let rep = norm_estimate(OperatorKind::Schwarzian, &Params::new(1.0, 0.0), r_max);
        assert!(rep.estimate.abs() < 1e-10);

        let rep = norm_estimate(OperatorKind::PreSchwarzian, &Params::new(0.0, 0.0), r_max);
        assert_abs_diff_eq!(rep.estimate, 2.0 * r_max, epsilon = 1e-6);
    }

    #[test]
    fn estimates_stay_under_proved_bounds_on_grid() {
        let r_max = 0.999;
        for &a in &[-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0] {
            for &lam in &[0.0, 0.3, 0.6, 0.9] {
                let p = Params::new(a, lam);
                for kind in [OperatorKind::PreSchwarzian, OperatorKind::Schwarzian] {
                    let rep = norm_estimate(kind, &p, r_max);
                    assert!(
                        rep.estimate <= rep.paper_bound + 1e-9,
                        "{kind:?} a={a} λ={lam}: {} > {}",
                        rep.estimate,
                        rep.paper_bound
                    );
                    // The sup dominates the weighted value at the origin.
                    let at0 = match kind {
                        OperatorKind::PreSchwarzian => (2.0 * a + lam).abs(),
                        OperatorKind::Schwarzian => {
                            (2.0 * (1.0 - a * a) + lam * lam / 2.0 - 2.0 * a * lam).abs()
                        }
                    };
                    assert!(rep.estimate >= at0 - 1e-9);
                }
            }
        }
    }

    proptest! {
        // Conjugation symmetry: real parameters force P(z̄) = conj P(z) and
        // S(z̄) = conj S(z).
        #[test]
        fn conjugation_symmetry(
            a in -2.5f64..2.5,
            lam in 0.0f64..0.95,
            re in -0.8f64..0.8,
            im in -0.8f64..0.8,
        ) {
            let z = c(re, im);
            prop_assume!(z.norm() < 0.93);
            let p = Params::new(a, lam);
            let pv = pre_schwarzian_closed(&p, z).unwrap();
            let pc = pre_schwarzian_closed(&p, z.conj()).unwrap();
            prop_assert!((pc - pv.conj()).norm() < 1e-12 * (1.0 + pv.norm()));
            let sv = schwarzian_closed(&p, z).unwrap();
            let sc = schwarzian_closed(&p, z.conj()).unwrap();
            prop_assert!((sc - sv.conj()).norm() < 1e-12 * (1.0 + sv.norm()));
        }

        // λ = 0 sends the anti-analytic corrections to zero: the operators
        // coincide with the classical analytic P and S of k_a.
        #[test]
        fn lambda_zero_is_classical(
            a in -2.5f64..2.5,
            re in -0.8f64..0.8,
            im in -0.8f64..0.8,
        ) {
            let z = c(re, im);
            prop_assume!(z.norm() < 0.93);
            let p = Params::new(a, 0.0);
            let kp = koebe_generalized(a, z, 1).unwrap();
            let kpp = koebe_generalized(a, z, 2).unwrap();
            let kppp = koebe_generalized(a, z, 3).unwrap();
            let q = kpp / kp;
            let pv = pre_schwarzian_closed(&p, z).unwrap();
            prop_assert!((pv - q).norm() < 1e-10 * (1.0 + q.norm()));
            let sv = schwarzian_closed(&p, z).unwrap();
            let s_classical = kppp / kp - 1.5 * q * q;
            prop_assert!((sv - s_classical).norm() < 1e-9 * (1.0 + s_classical.norm()));
        }
    }
}
