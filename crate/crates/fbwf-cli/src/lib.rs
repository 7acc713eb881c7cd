//! Serialization surface of the `fbwf` command-line tool.

pub mod document;
