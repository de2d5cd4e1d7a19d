//! Command line and HTTP front ends for `pezzo-core`.

pub mod api;
pub mod service;
