//! Exact computations with stable 3-forms in dimensions 6 and 7, the
//! composition algebras behind them, vector cross products, and
//! invariant-frame models of G₂-structures.

pub mod bridge;
pub mod cli;
pub mod compalg;
pub mod error;
pub mod exteralg;
pub mod framecalc;
pub mod linalg;
pub mod random;
pub mod report;
pub mod scalar;
pub mod stable6;
pub mod stable7;
pub mod vcp;

pub use error::{Error, Result};
pub use scalar::Scalar;
