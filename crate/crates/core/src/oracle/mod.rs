//! Exhaustive finite-field counts used as independent checks of the symbolic side.

mod counts;
mod fp;
mod hall;
mod p1;

pub use counts::{
    centralizer_order, flag_count_bruteforce, grassmannian_count, nilpotent_mass_series, MAX_ENUMERATION,
};
pub use fp::{FpMatrix, MAX_POINTS};
pub use hall::{hall_product_bruteforce, HallVector, I_map};
pub use p1::{hall_littlewood_at, p1_parabolic_omega, p1_two_point_Cmu, p1_two_point_kernel};

#[cfg(test)]
mod tests;
