//! Linear algebra over truncated power series F_p[[x]]/x^m: Hermite and Smith forms,
//! nilpotent type, kernel form and straightening of nilpotent matrices.

mod classify;
mod matrix;
mod normal;
mod series;

pub use classify::{
    classify, classify_polynomial, det_order, special_fiber_type, Classification, MAX_WORKING_PRECISION,
};
pub use matrix::TSMatrix;
pub use normal::{hermite_form, kernel_form, nilpotent_type, smith_form, HermiteForm, KernelForm, SmithForm};
pub use series::{check_prime, Fp, Order, TSeries, PRIMES};

#[cfg(test)]
mod tests;
