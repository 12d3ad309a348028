//! Library behind the `sgcensus` binary: argument handling, rendering,
//! the census cache, ratio diagnostics and the verification suite.

pub mod app;
pub mod cache;
pub mod golden;
pub mod ratios;
pub mod render;
pub mod verify;
