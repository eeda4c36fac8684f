//! Exact construction and verification of multi-indexed little q-Jacobi and
//! little q-Laguerre polynomials obtained from Casoratian Darboux transformations.
//!
//! Functions of the lattice coordinate `x` are Laurent polynomials in `y = q^x`
//! with rational coefficients, so every identity is checked with zero tolerance.

pub mod base;
pub mod darboux;
pub mod error;
pub mod exact;
pub mod params;
pub mod roots;
pub mod verifier;
pub mod virtual_states;

pub use darboux::IndexSet;
pub use error::{Error, Result};
pub use exact::{EtaPoly, LaurentPoly, Scalar};
pub use params::{Construction, Family, Params};
