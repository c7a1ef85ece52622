//! Support library for the `koebe` binary: flag-value parsing, deterministic
//! SVG rendering of disk images, and the verification-suite runner.

pub mod cplx;
pub mod render;
pub mod verify;
