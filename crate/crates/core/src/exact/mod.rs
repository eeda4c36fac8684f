//! Exact arithmetic layer: rationals, Laurent polynomials in `y = q^x`,
//! polynomials in `eta = 1 - q^x`, determinants and terminating q-series.

pub mod det;
pub mod eta;
pub mod laurent;
pub mod qseries;
pub mod scalar;

pub use det::det_laurent;
pub use eta::{from_eta, to_eta, EtaPoly};
pub use laurent::LaurentPoly;
pub use qseries::{phi_terminating, qpoch};
pub use scalar::Scalar;
