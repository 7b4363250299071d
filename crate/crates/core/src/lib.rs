pub mod error;
pub mod chain_calculus;
pub mod curves;
pub mod exact;
pub mod family_limits;
pub mod linear_series;
pub mod moduli_classes;
pub mod verify;

pub use error::{Error, Result};
pub use exact::{BigQ, DensePoly, Ring, Scalar, TruncSeries};
