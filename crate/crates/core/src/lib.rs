//! Persistent homology of finite p-groups.
//!
//! A group is filtered by one of five normal series; the homology of the
//! resulting chain of quotients, with the induced maps, forms a persistence
//! module whose rank matrix and bar code are group invariants.

pub mod catalog;
pub mod coclass;
pub mod config;
pub mod error;
pub mod group;
pub mod homology;
pub mod linalg;
pub mod persistence;
pub mod selftest;

pub use config::Budget;
pub use error::{Error, Result};
