//! Numeric substrate: truncated series algebra, adaptive quadrature, and
//! weighted sup-norm search on the unit disk.

pub mod quad;
pub mod series;
pub mod sup;

pub use quad::{
    chord_integral, chord_integral_pair, polar_area_integral, real_integral, segment_integral,
    segment_integral_pair, QuadResult, QuadSpec,
};
pub use series::{binpow, rational_to_f64, to_f64, Coeff, Series, MAX_ORDER};
pub use sup::{weighted_sup, SupResult};
