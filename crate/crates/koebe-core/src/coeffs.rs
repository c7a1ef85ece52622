//! Closed-form initial Taylor coefficients of `f_{a,λ}` with their sharp
//! moduli bounds:
//!
//! `a₂ = a + λ/2`, `a₃ = (λ² + 2aλ + 2a² + 1)/3`,
//! `a₄ = a³/3 + 2a/3 + λ(λ² + 2aλ + 2a² + 1)/4`,
//! `b₂ = λ/2`, `b₃ = λ²/3 + 2aλ/3`, `b₄ = λ(λ² + 2aλ + 2a² + 1)/4`,
//!
//! bounded by the same expressions with `a` replaced by `|a|`.  The shear
//! system leaves its fingerprints as exact identities: `a₂ - b₂ = a`,
//! `a₃ - b₃ = (2a² + 1)/3`, `a₄ - b₄ = a³/3 + 2a/3` (the `k_a`
//! coefficients) and `2b₂ = λ`, `3b₃ = 2λa₂`, `4b₄ = 3λa₃` (the
//! dilatation recurrence).
//!
//! Works generically over `f64` and exact rationals; `λ = 1` is accepted
//! as the formal harmonic-Koebe limit.

use num_traits::Signed;

use crate::numkit::series::Coeff;

/// The six leading coefficients and their moduli bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffTable<T> {
    pub a2: T,
    pub a3: T,
    pub a4: T,
    pub b2: T,
    pub b3: T,
    pub b4: T,
    pub bounds: CoeffBounds<T>,
}

/// Moduli bounds of the six coefficients (the `|a|`-substituted closed
/// forms); attained with equality when `a ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffBounds<T> {
    pub a2: T,
    pub a3: T,
    pub a4: T,
    pub b2: T,
    pub b3: T,
    pub b4: T,
}

fn table_entries<T: Coeff>(a: T, lambda: T) -> (T, T, T, T, T, T) {
    let one = T::one;
    let two = || one() + one();
    let three = || two() + one();
    let four = || two() + two();
    let q = lambda.clone() * lambda.clone()
        + two() * a.clone() * lambda.clone()
        + two() * a.clone() * a.clone()
        + one();
    let a2 = a.clone() + lambda.clone() / two();
    let a3 = q.clone() / three();
    let a4 = a.clone() * a.clone() * a.clone() / three()
        + two() * a.clone() / three()
        + lambda.clone() * q.clone() / four();
    let b2 = lambda.clone() / two();
    let b3 = lambda.clone() * lambda.clone() / three() + two() * a * lambda.clone() / three();
    let b4 = lambda * q / four();
    (a2, a3, a4, b2, b3, b4)
}

/// Closed-form coefficients and bounds; exact for exact input types.
pub fn coeff_closed_forms<T: Coeff + Signed + PartialOrd>(a: T, lambda: T) -> CoeffTable<T> {
    assert!(
        lambda >= T::zero() && lambda <= T::one(),
        "lambda must lie in [0, 1] (1 = formal harmonic-Koebe limit)"
    );
    let (a2, a3, a4, b2, b3, b4) = table_entries(a.clone(), lambda.clone());
    let (c2, c3, c4, d2, d3, d4) = table_entries(a.abs(), lambda);
    CoeffTable {
        a2,
        a3,
        a4,
        b2,
        b3,
        b4,
        bounds: CoeffBounds { a2: c2, a3: c3, a4: c4, b2: d2, b3: d3, b4: d4 },
    }
}
