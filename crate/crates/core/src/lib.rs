//! Exact polynomial bound certification by Bernstein enclosure, with the
//! coefficient-functional bounds built on it.

pub mod bernstein;
pub mod cli;
pub mod binomial;
pub mod error;
pub mod expected;
pub mod hankel;
pub mod maminda;
pub mod parallel;
pub mod poly;
pub mod rational;
pub mod reproduce;
pub mod ring;
pub mod schwarz;
pub mod series;
pub mod tables;

pub use error::{Error, Result};
pub use poly::{MultiPoly, PolyRing};
pub use rational::{GaussianRational, Rational};
