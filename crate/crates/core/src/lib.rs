//! Distance-spectral irregularity of connected graphs.

pub mod bounds;
pub mod cli;
pub mod enumerate;
pub mod families;
pub mod graph;
pub mod json;
pub mod spectral;
pub mod verify;
