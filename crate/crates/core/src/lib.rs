//! Complex Chebyshev polynomials on parametrized compact sets.
//!
//! The central piece is a generalized Remez exchange for complex best
//! approximation over a real linear space ([`remez`]). Around it sit the
//! boundary curves ([`geometry`]), symmetry-reduced monomial bases
//! ([`basis`]), Widom factors ([`chebyshev`]), Faber polynomials
//! ([`faber`]) and a polynomial root finder ([`zeros`]), all running in
//! configurable extended precision ([`mpnum`]).

pub mod basis;
pub mod chebyshev;
mod error;
pub mod faber;
pub mod geometry;
pub mod mpnum;
pub mod remez;
pub mod zeros;

pub use error::{Error, Result};
pub use mpnum::{Complex, Context, Real};
