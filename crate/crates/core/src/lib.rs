//! The generalised voter model on weighted directed graphs.

pub mod convergence;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod io;
pub mod maximize;
pub mod model;
pub mod state;

pub use error::{Error, Result};
