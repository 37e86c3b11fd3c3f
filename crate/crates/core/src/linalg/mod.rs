//! Exact integer and rational linear algebra.

mod lp;
mod matrix;
mod snf;
mod unimodular;

pub use lp::{
    fourier_motzkin_feasible, nonnegative_solution, strict_lp_feasible, StrictInequalitySystem,
    StrictOutcome,
};
pub use matrix::ExactMatrix;
pub use snf::{integer_kernel, lattice_contains, same_lattice, smith_normal_form, Smith};
pub use unimodular::find_unimodular_map;
