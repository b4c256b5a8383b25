//! Library side of the `camina` command-line tool.

pub mod report;
