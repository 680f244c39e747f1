//! Non-backtracking walks on regular multigraphs, the polynomials that count
//! them, and the spectral measures they control.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]
extern crate alloc;

pub mod chebyshev;
pub mod dense;
pub mod error;
pub mod graphs;
pub mod multigraph;
pub mod nbmatrix;
pub mod random_models;
pub mod spectra;

pub use error::{Error, Result};
pub use multigraph::{closed_walk_counts, walk_census, MultiGraph, WalkCensus};
