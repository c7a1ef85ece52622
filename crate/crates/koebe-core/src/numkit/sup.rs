//! Weighted sup-norm search over disks:
//! `sup_{|z| ≤ r_max} |F(z)| (1 - |z|²)^p`.
//!
//! Coarse polar grid followed by local refinement around the best cells.
//! The search never overshoots the true supremum of a continuous function
//! (every reported value is attained at the reported argmax), so results are
//! certified lower bounds.

use num_complex::Complex64;

/// Radial × angular resolution of the coarse pass.
const GRID_RADIAL: usize = 256;
const GRID_ANGULAR: usize = 512;
/// Local refinement: rounds × candidates × (side × side) subgrid.
const REFINE_ROUNDS: usize = 6;
const REFINE_CANDIDATES: usize = 8;
const REFINE_SIDE: usize = 9;
/// Neighborhood shrink factor per refinement round.
const REFINE_SHRINK: f64 = 0.35;

/// Result of a weighted sup search; `sup` is attained at `argmax`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupResult {
    pub sup: f64,
    pub argmax: Complex64,
}

#[derive(Debug, Clone, Copy)]
struct Candidate {
    value: f64,
    r: f64,
    theta: f64,
}

/// Estimates `sup |F(z)| (1-|z|²)^p` over `|z| ≤ r_max` with `p ∈ {1, 2}`.
///
/// NaN/∞ samples are skipped rather than propagated, so a pole grazing the
/// search region degrades coverage instead of poisoning the result.
pub fn weighted_sup(f: impl Fn(Complex64) -> Complex64, p: u8, r_max: f64) -> SupResult {
    assert!(p == 1 || p == 2, "weight power must be 1 or 2");
    assert!(r_max > 0.0 && r_max < 1.0, "r_max must lie in (0, 1)");

    let weighted = |z: Complex64| -> f64 {
        let w = 1.0 - z.norm_sqr();
        let v = f(z).norm() * if p == 1 { w } else { w * w };
        if v.is_finite() {
            v
        } else {
            f64::NEG_INFINITY
        }
    };

    // Coarse pass over the full grid, including r = 0, r = r_max, and θ = 0.
    let mut best: Vec<Candidate> = Vec::with_capacity(REFINE_CANDIDATES + 1);
    let consider = |value: f64, r: f64, theta: f64, best: &mut Vec<Candidate>| {
        if best.len() < REFINE_CANDIDATES {
            best.push(Candidate { value, r, theta });
            best.sort_by(|a, b| b.value.total_cmp(&a.value));
        } else if value > best.last().expect("candidate list nonempty").value {
            *best.last_mut().expect("candidate list nonempty") = Candidate { value, r, theta };
            best.sort_by(|a, b| b.value.total_cmp(&a.value));
        }
    };

    let origin = weighted(Complex64::new(0.0, 0.0));
    consider(origin, 0.0, 0.0, &mut best);
    let dr = r_max / (GRID_RADIAL - 1) as f64;
    let dtheta = 2.0 * std::f64::consts::PI / GRID_ANGULAR as f64;
    for i in 1..GRID_RADIAL {
        let r = if i == GRID_RADIAL - 1 { r_max } else { dr * i as f64 };
        for j in 0..GRID_ANGULAR {
            let theta = dtheta * j as f64;
            let v = weighted(Complex64::from_polar(r, theta));
            consider(v, r, theta, &mut best);
        }
    }

    // Local refinement: each candidate walks to the best point of a shrinking
    // polar box around itself; the global best across all rounds wins.
    let mut hr = dr;
    let mut ht = dtheta;
    for _ in 0..REFINE_ROUNDS {
        for cand in best.iter_mut() {
            let mut local = *cand;
            for ii in 0..REFINE_SIDE {
                let r = (cand.r + hr * (2.0 * ii as f64 / (REFINE_SIDE - 1) as f64 - 1.0))
                    .clamp(0.0, r_max);
                for jj in 0..REFINE_SIDE {
                    let theta =
                        cand.theta + ht * (2.0 * jj as f64 / (REFINE_SIDE - 1) as f64 - 1.0);
                    let v = weighted(Complex64::from_polar(r, theta));
                    if v > local.value {
                        local = Candidate { value: v, r, theta };
                    }
                }
            }
            *cand = local;
        }
        hr *= REFINE_SHRINK;
        ht *= REFINE_SHRINK;
    }

    let winner = best
        .iter()
        .max_by(|a, b| a.value.total_cmp(&b.value))
        .expect("candidate list nonempty");
    SupResult {
        sup: winner.value,
        argmax: Complex64::from_polar(winner.r, winner.theta),
    }
}
