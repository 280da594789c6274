//! Trace codes of algebraic-geometric codes over F_{q^m}: construction,
//! exact F_q-dimensions, and verification of the dimension formula
//! `m·(deg G − deg[G/q]) + δ` together with its supporting identities.

pub mod bombieri;
pub mod code;
pub mod curve;
pub mod divisor;
pub mod error;
pub mod ff;
pub mod linalg;
pub mod poly;
pub mod rrspace;
pub mod sweep;
pub mod theorem;

pub use error::{Error, Result};
pub use ff::{build_tower, Fe, FieldTower};
