//! Decimal ball arithmetic, complex balls and polynomial root finding.

mod complex;
mod real;
mod roots;

pub use complex::Complex;
pub use real::{pow10, Real};
pub use roots::{aberth, refine_real_root, ApproxRoot};
