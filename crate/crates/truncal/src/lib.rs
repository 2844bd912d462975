//! Exact grid-based Hahn series and transseries.
//!
//! - [`exponents`]: ordered monomial groups and grids.
//! - [`hahn`]: finite and lazy grid series over ℚ.
//! - [`operators`]: derivations, supported operators, Neumann inverses and `y = a∂y + f`.
//! - [`texp`]: the log-exp transseries tower, with exp, log, integration and shifts.
//! - [`closure`]: truncation, differential, exp and Liouville closure of generator sets.
//! - [`cli`]: the expression language behind the `truncal` binary.
//!
//! Every infinite object is compared and printed at an explicit cutoff monomial.

pub mod error;
pub mod exponents;
pub mod hahn;
pub mod rational;
pub mod operators;
pub mod texp;
pub mod closure;
pub mod cli;
