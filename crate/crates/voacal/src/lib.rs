//! Text formats, JSON reports and the suite runner behind the `voacal` binary.

pub mod report;
pub mod suite;
pub mod text;
