//! Ramification invariants of Artin-Schreier-Witt characters over F_p(x)((t)).

pub mod base;
pub mod conductors;
pub mod corpus;
pub mod dilatation;
pub mod error;
pub mod expr;

pub use error::{Error, Result};
pub mod local;
pub mod snc;
pub mod suites;
pub mod witt;
