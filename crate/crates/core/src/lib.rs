//! Exact verification, classification and normalization of polynomial and
//! rational holomorphic maps between real hyperquadrics.

pub mod autnorm;
pub mod error;
pub mod exactalg;
pub mod gallery;
pub mod lemmas;
pub mod qmap;
pub mod quadric;

pub use error::{Error, Result};
