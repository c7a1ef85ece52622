//! Numerical laboratory for the generalized harmonic quasiconformal Koebe
//! family `f_{a,λ} = h + conj(g)` on the unit disk, defined by the shear
//! system `h - g = k_a`, `g' = λz·h'` against the generalized Koebe map
//! `k_a(z) = ((1+z)ᵃ/(1-z)ᵃ - 1)/(2a)`.
//!
//! The family is constructed along three independent routes — coefficient
//! recurrences ([`shear::hg_series`]), adaptive contour quadrature
//! ([`shear::eval_f`]), and hypergeometric closed forms
//! ([`hyp2f1::closed_form_hg`]) — which cross-validate each other, and the
//! library carries the machinery to check its governing facts numerically:
//! pre-Schwarzian/Schwarzian formulas and norm bounds ([`differential`]),
//! sharp coefficient identities ([`coeffs`]), growth/derivative/area
//! sandwiches ([`bounds`]), and the univalence threshold `|a| ≤ 2` with its
//! explicit collision witness ([`univalence`]).

pub mod analytic;
pub mod bounds;
pub mod coeffs;
pub mod differential;
pub mod error;
pub mod hyp2f1;
pub mod numkit;
pub mod shear;
pub mod univalence;

pub use error::{Error, Result};
pub use shear::{HarmonicValue, Params, TaylorPair};
