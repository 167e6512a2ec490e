//! Symmetric functions in one or several alphabets, plethysm, pairings and plethystic exp/log.

mod alphabet;
mod multi;
mod series;
mod sym;
mod tables;

pub use alphabet::{plethysm, plethysm1, AlphabetExpr};
pub use multi::MultiSym;
pub use series::{cauchy_kernel, cauchy_kernel_pexp, MultiSymSeries};
pub use sym::{hall_pair, qt_pair, SymFunc};
pub use tables::{tables, Basis, DegreeTables, DEGREE_CAP};
