//! Scalar special functions consumed by every higher module.

mod bessel;
mod dawson;
mod expint;
mod gamma;
mod laguerre;
mod pochhammer;

pub use bessel::{bessel_i, bessel_j, bessel_k, dbessel_i_dnu, dbessel_i_dnu_hyper};
pub(crate) use bessel::{bessel_i_raw, bessel_j_raw, dbessel_i_dnu_any};
pub use dawson::dawson;
pub use expint::{expint_ei, shi, shi_chi};
pub(crate) use gamma::is_nonpositive_integer;
pub use gamma::{beta, digamma, gamma, harmonic, lngamma, rgamma, LnGamma, EULER_GAMMA};
pub use laguerre::laguerre;
pub use pochhammer::{binomial, factorial, pochhammer};
