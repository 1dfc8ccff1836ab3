//! Integer and rational polynomials, resultants, and the cyclotomic family.

mod cyclotomic;
mod int;
mod rat;
mod resultant;
mod roots;

pub use cyclotomic::{chebyshev_like, cos_minimal_poly, cyclotomic};
pub use int::IntPoly;
pub use rat::RatPoly;
pub use resultant::{bareiss_det, resultant, resultant_minpoly, sylvester, ExactRing};
pub use roots::{eisenstein_check, rational_roots};
