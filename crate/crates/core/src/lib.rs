//! Exact umbral calculus: Sheffer sequences, Stirling numbers associated
//! with polynomial sequences, and their Eulerian numbers.
//!
//! All arithmetic is over arbitrary-precision rationals. There is no floating
//! point anywhere in the crate.

#![allow(clippy::needless_range_loop)]

pub mod associated;
pub mod error;
pub mod eulerian;
pub mod exec;
pub mod families;
pub mod kernel;
pub mod numbers;
pub mod report;
pub mod series;
pub mod umbral;

pub use error::{Error, Result};
pub use kernel::{Polynomial, Rational, Triangle};
pub use series::{Fps, PolySeries};
