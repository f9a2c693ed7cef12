//! Bernstein-basis range enclosure on boxes, subdivision, and replayable
//! upper-bound certificates.

pub mod certify;
pub mod region;
pub mod tensor;

pub use certify::{
    certify_upper_bound, certify_with_degrees, replay, replay_with, Certificate, Node, Policy,
    Rejection, SplitRule, SubProof, SubProofRegistry, Verdict, Witness,
};
pub use region::{Interval, Region};
pub use tensor::{enclosure_bounds, subdivide, subdivide_at, to_bernstein, to_bernstein_with, BernsteinTensor};
