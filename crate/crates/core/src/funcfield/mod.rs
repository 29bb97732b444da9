//! Finite fields F_q and their extensions, the polynomial ring A = F_q[T]
//! and the rational function field k = F_q(T).

mod apoly;
pub(crate) mod fp;
mod ratfunc;
mod tower;
mod upoly;

pub use apoly::APoly;
pub use ratfunc::RatFunc;
pub use tower::{FFElement, FieldTower, DEFAULT_FIELD_BOUND};
pub use upoly::{roots_in_extension, RootSearch, UPoly};
