pub mod cluster;
pub mod codec;
pub mod drinfeld;
pub mod error;
pub mod funcfield;
pub mod functor;
pub mod intpoly;
pub mod lattice;
pub mod nctorus;
pub mod numeric;
pub mod ore;
pub mod parse;
pub mod text;

pub use error::{Error, Result};
