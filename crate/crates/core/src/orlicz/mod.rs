//! Orlicz and Orlicz–Sobolev numerics on piecewise-linear grid functions.

mod csv_io;
mod grid;
mod inequalities;
mod norms;

pub use csv_io::{read_csv, write_csv};
pub use grid::GridFunction;
pub use inequalities::{
    check_inequalities, CheckOutcome, Inequality, InequalityOptions, InequalityReport, SkippedCheck,
};
pub use norms::{coercivity_ratio, dual_modular, dual_norm, luxemburg_norm, modular, norm_bundle, NormBundle};
