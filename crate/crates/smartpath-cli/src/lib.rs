//! Scene files, artifact writers and the convergence table behind the
//! `smartpath` command.

pub mod artifacts;
pub mod rates;
pub mod scene;
