//! File formats, experiment presets and the `stoc` command-line front end
//! for the `stoc-core` library.

pub mod cli;
pub mod error;
pub mod formats;
pub mod presets;
pub mod report;

pub use error::{LabError, Result};
