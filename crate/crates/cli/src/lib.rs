//! File formats, space recipes, reports and the command-line driver for
//! [`rips_kunneth_core`].
//!
//! The binary is a thin wrapper around [`cli::execute`]; everything it does
//! can also be driven in-process through [`cli::run`].

pub mod cli;
pub mod formats;
pub mod recipe;
pub mod report;

pub use cli::{execute, run, CliError, Outcome};
pub use recipe::SpaceRecipe;
