//! Resolvents and spectral projections of non-selfadjoint quadratic
//! differential operators: classification, reduction to a normal form on a
//! weighted Bargmann space, exact projection norms, growth rates and
//! energy-shell resolvent sweeps.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod matcore;
pub mod multiindex;
pub mod normalform;
pub mod optimize;
pub mod poly;
pub mod quadrature;
pub mod resolvent;
pub mod spectral;
pub mod symplectic;
#[cfg(test)]
mod testutil;
pub mod weights;

pub use error::{Error, Result};
pub use matcore::{CMatrix, Tolerance};
