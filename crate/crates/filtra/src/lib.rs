//! Command-line front end for `filtra-core`: JSON interchange, text tables and
//! the `filtra` verbs.

mod cli;
pub mod json;
pub mod render;

pub use cli::run;
