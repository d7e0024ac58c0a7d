//! Polarization cumulants, the geometric Binder cumulant and related
//! diagnostics for one-dimensional tight-binding chains.
//!
//! The pipeline is model -> spectrum -> Slater state -> characteristic
//! sequence `Z_q` -> finite-difference cumulants -> `U4`. The Bloch route in
//! [`bargmann`] produces the same `Z_q` from a band without diagonalizing.

pub mod bargmann;
pub mod diagnostics;
pub mod error;
pub mod genfun;
pub mod lattice;
pub mod linalg;
pub mod number_theory;
pub mod scan;
pub mod slater;

pub use error::{Error, Result};
