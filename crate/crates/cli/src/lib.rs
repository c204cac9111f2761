//! Command-line front end for the equivariant minimal-hypersurface
//! laboratory: orchestrates experiments, serializes reports, and emits
//! plot-ready CSV/JSON files.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod config;
pub mod csvio;
pub mod reports;
pub mod rng;
