//! Cluster algebras: seeds of exact rational functions, mutation, Laurent
//! certificates, the congruence filter and surface exchange matrices.

mod mpoly;
mod ratfn;
mod seed;
mod surface;

pub use mpoly::MPoly;
pub use ratfn::{congruent_zero, laurent_add, render_laurent, Laurent, RatFn};
pub use seed::{congruence_level_p, exchange_polynomial, ExchangeMatrix, Seed};
pub use surface::SurfaceSpec;
