use num_complex::Complex64;
use thiserror::Error;

/// Errors surfaced by the evaluation and search routines.
///
/// Quadrature exhaustion is deliberately *not* an error: adaptive routines
/// report their best estimate together with an error bound and a flag, so a
/// hard budget never destroys partial results.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Evaluation requested outside the open unit disk.
    #[error("point {z} lies outside the open unit disk")]
    Domain { z: Complex64 },

    /// Series division by a series with zero constant term.
    #[error("series division requires a nonzero constant term")]
    DivisionByZeroConstantTerm,

    /// Requested truncation order exceeds the configured cap.
    #[error("truncation order {n} exceeds the cap {max}")]
    OrderOverflow { n: usize, max: usize },

    /// Hypergeometric parameters degenerate (a nonnegative integer makes the
    /// lower parameter 1-a a nonpositive integer or a prefactor vanish).
    #[error("degenerate hypergeometric parameters at a = {a}")]
    DegenerateParameters { a: f64 },

    /// No convergent evaluation strategy for the hypergeometric argument.
    #[error("no convergent series/transformation for argument {x}")]
    NonConvergence { x: Complex64 },

    /// A prescribed dilatation left the unit disk on the integration path.
    #[error("dilatation modulus {modulus} >= 1 at {z}")]
    DilatationOutOfRange { z: Complex64, modulus: f64 },

    /// Jet handed to the harmonic operators is unusable (h' = 0 or |w| >= 1).
    #[error("degenerate jet: h' = 0 or dilatation outside the unit disk")]
    DegenerateJet,

    /// Adjacent samples of an image curve are too far apart relative to the
    /// curve diameter for self-intersection tests to be meaningful.
    #[error("curve resolution insufficient: max spacing {spacing:.3e} vs diameter {diameter:.3e}")]
    ResolutionInsufficient { spacing: f64, diameter: f64 },

    /// Closed curve with zero vertical extent cannot be swept by levels.
    #[error("degenerate curve: zero vertical extent")]
    DegenerateCurve,
}

pub type Result<T> = std::result::Result<T, Error>;
