//! Exact computational Lie theory at desk scale: root systems, Weyl groups,
//! character tables, Lusztig family combinatorics and a finite model group,
//! organised around the verification pipeline exposed by the `e7check` CLI.
//!
//! Everything is integer or cyclotomic arithmetic; no floating point.

pub mod chartab;
pub mod error;
pub mod linalg;
pub mod lusztig;
pub mod nilmodel;
pub mod par;
pub mod pipeline;
pub mod poly;
pub mod rootdata;
pub mod weyl;

pub use error::{Error, Result};
