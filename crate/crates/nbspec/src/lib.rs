//! File formats, experiment manifests and the experiment harness on top of
//! `nbspec-core`.

pub mod error;
pub mod experiments;
pub mod formats;
pub mod graph_io;
pub mod manifest;
pub mod output;
pub mod schedule;

pub use error::{Error, Result};
