//! Text formats, DOT export and the command-line driver for
//! `orthodual-core`.

pub mod dot;
pub mod format;
pub mod run;
