//! Exact computations around the cyclic code `C = {(f_a(1), f_a(π), ...,
//! f_a(π^{p^m-2}))}` defined by linearized polynomials
//! `f_a(x) = Σ_{j<k} a_j x^{p^{jd}}` over `GF(p^m)`, and around the
//! linearized Wenger graphs whose spectra are governed by the same null
//! spaces.
//!
//! Every closed form here is paired with an independent way of computing the
//! same quantity: brute-force enumeration, Möbius inversion over the
//! subspace lattice, or a dense numerical eigensolver.

pub mod code;
mod decimal;
pub mod error;
pub mod field;
pub mod lattice;
pub mod linalg;
pub mod linearized;
pub mod parallel;
pub mod params;
pub mod qbinom;
pub mod wenger;

pub use error::{Error, Result};
pub use field::{Fe, FieldContext, DEFAULT_FIELD_CAP};
pub use params::FieldParams;

/// Default cap on enumerated items for brute-force and counting methods.
pub const DEFAULT_BUDGET: u64 = 1 << 26;
