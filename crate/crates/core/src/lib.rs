#![no_std]

extern crate alloc;

pub mod coordchange;
pub mod error;
pub mod formal;
pub mod functors;
pub mod heisenberg;
pub mod scalars;
pub mod voa;
