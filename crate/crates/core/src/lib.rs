//! Disjoint skew weighing matrices and the association schemes built from them.

pub mod cli;
pub mod construct;
pub mod error;
pub mod matcore;
pub mod scheme;
pub mod search;
pub mod spectra;
pub mod verify;

pub use error::{Error, Result};
