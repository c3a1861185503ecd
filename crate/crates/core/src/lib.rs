//! Best-arm identification in linked bandits.
//!
//! A play selects an ordered subsequence of arms; arms are pulled in order
//! until the first reward of 1, and only that prefix is observed. This crate
//! provides the censored environment ([`env`]), sampling procedures built on
//! the suffix-sampling subroutine ([`strategies`]), closed-form play
//! complexity evaluators ([`complexity`]) and a Monte Carlo experiment
//! harness ([`harness`]).
//!
//! Arm indices are zero-based throughout the library. The CLI, CSV output
//! and means files use one-based arm numbers.

pub mod complexity;
pub mod env;
mod error;
pub mod harness;
pub mod strategies;

pub use error::{Error, Result};
