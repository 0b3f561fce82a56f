pub mod calculus;
pub mod cli;
pub mod derivation;
pub mod error;
pub mod expr;
pub mod integration;
pub mod poisson;
pub mod rational_rho;
mod render;
pub mod report;
pub mod sample;
pub mod rewrite;
pub mod scalar;
pub mod smash;
pub mod suq2;
pub mod vfields;
pub mod verify;
pub mod wpatch;
pub mod zalgebra;

pub use error::{Error, Result};
pub use scalar::{qint, qint_bar, Scalar};
pub use zalgebra::{FuncElement, FuncMonomial};
