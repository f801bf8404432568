pub mod algebra;
pub mod attr;
pub mod constructions;
pub mod dot;
pub mod error;
pub mod graph;
pub mod hex;
pub mod io;
pub mod rewriting;
pub mod run;
pub mod search;

pub use error::{Error, Result};
