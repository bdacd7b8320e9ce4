//! Whittaker M function, its derivatives with respect to κ and μ, and the
//! logarithmic integrals, incomplete gamma derivatives and integral Whittaker
//! functions that come with them.
//!
//! Most quantities are available by more than one independent route (power
//! series, closed form, quadrature) so that each can check the others; see
//! [`verify`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod ctrl;
mod dd;
pub mod deriv;
pub mod error;
pub mod grid;
pub mod hypergeom;
pub mod incgamma;
pub mod intwhit;
pub mod kernels;
pub mod logint;
pub mod quad;
pub mod tables;
pub mod verify;
pub mod whittaker;

pub use ctrl::{set_default_max_terms, Closed, EvalResult, KernelValue, SeriesCtrl};
pub use error::{Error, Result};
