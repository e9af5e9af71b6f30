//! Exact algebra for infinite cyclic covers.

pub mod class_numbers;
pub mod covers;
pub mod error;
pub mod factor;
pub mod laurent_modules;
pub mod matrix;
pub mod normal_forms;
pub mod periodicity;
pub mod rings;

pub use error::{Error, Result};
