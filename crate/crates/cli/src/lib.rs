//! File formats, the verification harness and statistical suites behind
//! the `decmatch` command-line tool.

pub mod harness;
pub mod io;
pub mod suites;
