//! Hankel determinants of starlike functions with a quadratic subordinant.

pub mod coeffs;
pub mod disk_max;
pub mod objectives;
pub mod q00;
pub mod report;
pub mod theorems;
