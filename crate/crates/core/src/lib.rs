//! Exact sojourn-time statistics of the Hadamard quantum walk on the
//! integer line.
//!
//! All arithmetic happens in the quadratic field Q[sqrt(2)] with
//! arbitrary-precision rational components, so every test and every
//! verification check in this crate compares values exactly; there are no
//! tolerances. The same quantities are produced by three independent routes
//! and cross-checked coefficient for coefficient:
//!
//! 1. operator-valued path counting over (time, position, sojourn count)
//!    — [`walk`];
//! 2. a first-return convolution recursion for bridge paths and a matrix
//!    fixed-point identity — [`theorems`];
//! 3. formal expansion of closed-form bivariate generating functions —
//!    [`theorems`] on top of [`series`].
//!
//! Sojourn-time distributions for the free walk and the bridge walk live in
//! [`measures`], next to their classical baselines (the discrete arc-sine
//! law and the equidistribution theorem). The `hadamard-sojourn` binary
//! exposes all of it on the command line; see [`cli`].

pub mod cli;
pub mod emit;
mod error;
pub mod golden;
pub mod mat2;
pub mod measures;
pub mod qr2;
pub mod report;
pub mod series;
pub mod theorems;
pub mod verify;
pub mod walk;

pub use error::Error;
pub use mat2::{coin_split, pqrs_compose, pqrs_decompose, Mat2, PqrsCoeffs};
pub use qr2::{ComplexQr2, Qr2};
pub use series::BiSeries;
pub use walk::{QubitState, SojournTable};

pub type Result<T> = std::result::Result<T, Error>;
