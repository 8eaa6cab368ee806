//! Finite commutative rings: tower presentations, tabulated arithmetic,
//! ideals, quotients and local structure.

mod descriptor;
mod finite;
mod ideal;
pub mod irreducible;
mod local;
mod quotient;
mod tower;

pub use descriptor::{Element, RingDescriptor, TowerDisplay, DEFAULT_MAX_CARD};
pub use finite::{ElemId, FiniteRing, QuotientInvariants, TABLE_LIMIT};
pub use ideal::Ideal;
pub use local::{format_bits, F2Reduction, LocalFactor};
pub use quotient::QuotientRing;
pub use tower::{BaseKind, Extension, TowerDescriptor, IMPLICIT_GENERATOR};
