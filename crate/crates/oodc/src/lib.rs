//! MJ compiler core: parse, type-check, desugar, emit and interpret.

pub mod classmodel;
pub mod diag;
pub mod frontend;
pub mod span;
