//! Exact Laurent polynomials and rational functions over Q in the fixed variables q, t, s, u, σ1..σ4.

mod cyclo;
mod monomial;
mod parse;
mod poly;
mod scalar;

pub use cyclo::cyclotomic;
pub use monomial::{sigma, Monomial, VarSet, MAX_SIGMA, NVARS, Q, S, T, U};
pub use poly::{poly_gcd, rat, MultiPoly, Rat};
pub use scalar::{binomial, Scalar};

/// Exact division of Laurent polynomials.
pub fn exact_divide(a: &MultiPoly, b: &MultiPoly) -> crate::Result<MultiPoly> {
    a.exact_divide(b)
}

pub fn q() -> Scalar {
    Scalar::var(Q)
}

pub fn t() -> Scalar {
    Scalar::var(T)
}
