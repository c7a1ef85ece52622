//! Truncated power-series algebra over an abstract coefficient field.
//!
//! The same code path serves floating (`f64`, `Complex64`) and exact-rational
//! (`BigRational`) coefficients; the coefficient type *is* the series mode.

use std::ops::{Div, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Hard cap on truncation orders; guards against runaway allocations.
pub const MAX_ORDER: usize = 16_384;

/// Coefficient field for truncated series arithmetic.
///
/// `from_usize` injects index factors (differentiation, antiderivatives,
/// binomial recurrences) into the field exactly.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
    fn from_usize(n: usize) -> Self;
}

impl Coeff for f64 {
    fn from_usize(n: usize) -> Self {
        n as f64
    }
}

impl Coeff for Complex64 {
    fn from_usize(n: usize) -> Self {
        Complex64::new(n as f64, 0.0)
    }
}

impl Coeff for BigRational {
    fn from_usize(n: usize) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Truncated power series `Σ_{k=0}^{N} coeffs[k] z^k`.
///
/// Invariant: `coeffs.len() == order() + 1`; rational coefficients stay
/// reduced because `BigRational` arithmetic normalizes on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<T: Coeff> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Series<T> {
    /// Builds a series from raw coefficients (constant term first).
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::OrderOverflow { n: 0, max: MAX_ORDER });
        }
        check_order(coeffs.len() - 1)?;
        Ok(Self { coeffs })
    }

    /// The zero series truncated at order `n`.
    pub fn zero(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(Self { coeffs: vec![T::zero(); n + 1] })
    }

    /// Truncation order `N` (highest retained power).
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `z^k`; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Re-truncates to order `n`, padding with zeros if `n > order()`.
    pub fn truncated(&self, n: usize) -> Result<Self> {
        check_order(n)?;
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n + 1, T::zero());
        Ok(Self { coeffs })
    }

    /// Cauchy product truncated at order `n`.
    pub fn mul(&self, rhs: &Self, n: usize) -> Result<Self> {
        check_order(n)?;
        let mut out = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Quotient `self / rhs` truncated at order `n` (synthetic division).
    pub fn div(&self, rhs: &Self, n: usize) -> Result<Self> {
        check_order(n)?;
        let b0 = rhs.coeff(0);
        if b0.is_zero() {
            return Err(Error::DivisionByZeroConstantTerm);
        }
        let mut q = vec![T::zero(); n + 1];
        for k in 0..=n {
            let mut acc = self.coeff(k);
            for j in 1..=k {
                acc = acc - rhs.coeff(j) * q[k - j].clone();
            }
            q[k] = acc / b0.clone();
        }
        Ok(Self { coeffs: q })
    }

    /// Termwise derivative, truncated at `order() - 1` (order 0 stays 0).
    pub fn diff(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self { coeffs: vec![T::zero()] };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * T::from_usize(k))
            .collect();
        Self { coeffs }
    }

    /// Antiderivative with constant term fixed to zero, order grows by one.
    pub fn integ(&self) -> Result<Self> {
        check_order(self.order() + 1)?;
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / T::from_usize(k + 1));
        }
        Ok(Self { coeffs })
    }

    /// Horner evaluation of the truncated polynomial at `z`.
    pub fn eval(&self, z: T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }
}

/// Coefficients of `(1 + c z)^alpha` to order `n`:
/// `coeff_k = binomial(alpha, k) c^k`, built by the falling-factorial
/// recurrence `coeff_{k} = coeff_{k-1} * (alpha - (k-1)) / k * c`.
pub fn binpow<T: Coeff>(c: T, alpha: T, n: usize) -> Result<Series<T>> {
    check_order(n)?;
    let mut coeffs = Vec::with_capacity(n + 1);
    coeffs.push(T::one());
    for k in 1..=n {
        let prev = coeffs[k - 1].clone();
        let factor = (alpha.clone() - T::from_usize(k - 1)) / T::from_usize(k);
        coeffs.push(prev * factor * c.clone());
    }
    Ok(Series { coeffs })
}

/// Maps a rational series into floating coefficients.
pub fn to_f64(s: &Series<BigRational>) -> Series<f64> {
    Series {
        coeffs: s.coeffs.iter().map(rational_to_f64).collect(),
    }
}

/// Rounds a reduced fraction to the nearest `f64`.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

fn check_order(n: usize) -> Result<()> {
    if n > MAX_ORDER {
        Err(Error::OrderOverflow { n, max: MAX_ORDER })
    } else {
        Ok(())
    }
}
