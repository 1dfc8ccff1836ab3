//! Trisection numbers over Q and real quadratic fields: exact arithmetic, height-ball
//! counting, decision procedures with certificates, and degree computations for
//! half-angle cosines.

pub mod algdeg;
pub mod arith;
pub mod ball;
pub mod cli;
pub mod coprime;
pub mod error;
pub mod nsect;
pub mod ntheory;
pub mod numeric;
pub mod poly;
pub mod suite;
pub mod trisect;

pub use error::{Error, Result};
