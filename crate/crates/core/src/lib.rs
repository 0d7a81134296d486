//! Stieltjes constants through summations over repeated-parameter
//! generalized hypergeometric functions, with the special-function layer
//! they need and independent oracles to check every identity.

pub mod accel;
pub mod cli;
pub mod error;
pub mod hypergeom;
pub mod logpoly;
pub mod oracle;
pub mod real;
pub mod result;
pub mod stieltjes;
pub mod trigintegrals;
pub mod zeta;

pub use error::{Error, Result};
pub use real::{Precision, Real};
pub use result::{Method, SeriesResult};
