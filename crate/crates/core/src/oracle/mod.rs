//! Independent reference computations: quadrature, the defining limit of
//! the Stieltjes constants, P₁ integrals and the Laplace-regularised
//! logarithmic integrals.

pub mod appendix;
pub mod limit;
pub mod p1;
pub mod quadrature;

pub use appendix::{appendix_closed_form, appendix_verify, AppendixReport, TrigKind};
pub use limit::stieltjes_limit;
pub use p1::P1Evaluator;
pub use quadrature::{integrate, QuadratureProblem, Upper};
