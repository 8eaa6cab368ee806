//! Gcd-graphs over finite commutative rings.

pub mod arith;
pub mod cyclotomic;
pub mod dsl;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod ramanujan;
pub mod ring;
pub mod spectrum;
pub mod symmetric;

pub use error::{Error, Result};
