//! greedylab: numerical experiments with the thresholding greedy algorithm in
//! sequence spaces — m-term approximation errors, distances to signed
//! indicator lines, closed forms for lp indicators, and certified lower
//! bounds for greedy-basis constants.

pub mod closedform;
pub mod constants;
pub mod error;
pub mod functionals;
pub mod greedy;
pub mod space;

pub use error::{Error, Result};
pub use space::{CoeffVector, SignedSet, SpaceSpec, DEFAULT_TOL};
