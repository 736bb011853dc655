//! Exact analysis of the continuous functions
//!
//! ```text
//! f(x) = delta_{a_1 1} + sum_{k>=2} delta_{a_k k} prod_{j<k} g_{a_j j}
//! ```
//!
//! where `a_1 a_2 ...` are the digits of `x` in a Q*3 representation (a
//! ternary-like expansion whose k-th digit is weighted by column `k` of a
//! positive stochastic matrix) and the image-side weights come from a
//! sequence `eps_k` in `[0, 1]`:
//! `g_{0k} = g_{2k} = (1 + eps_k) / 3`, `g_{1k} = (1 - 2 eps_k) / 3`.
//!
//! Depending on `eps` the function is strictly increasing (`eps < 1/2`),
//! a Cantor-type singular staircase (`eps = 1/2`) or nowhere monotone
//! (`eps > 1/2`). Everything here is computed with exact rationals over
//! eventually periodic digit sequences; only [`FunctionSpec::eval_approx`]
//! and the box-counting estimate use floating point.
//!
//! Modules:
//! - [`repsys`]: matrix columns, digit extraction, cylinder geometry.
//! - [`gfun`]: evaluation, increments and cylinder ranges of `f`.
//! - [`classify`]: regimes, plateaus and derivative probes.
//! - [`levelset`]: branch-and-bound enumeration of `f^{-1}(y0)`.
//! - [`fractal`]: affine self-similarity of the graph, box counting.

pub mod classify;
pub mod digits;
pub mod error;
pub mod fractal;
pub mod gfun;
pub mod levelset;
pub mod rational;
pub mod repsys;
pub mod schedule;
mod series;

pub use classify::{
    classify_regime, derivative_ratios, plateau_cylinders, plateau_measure, subcylinder_signs,
    CantorCarrier, Regime, RegimeTag, Sign,
};
pub use digits::{DigitSeq, DigitWord};
pub use error::{Error, Result};
pub use fractal::{
    box_dimension, graph_sample, graph_sample_approx, ifs_maps, self_affine_residual, AffineMap2D,
    BoxDimension, GraphSample,
};
pub use gfun::{Cylinder, CylinderRange, Endpoint, EpsilonSchedule, FunctionSpec, GColumn};
pub use levelset::{
    invert_monotone, preimage_regions, root_count_lower_bound, SolutionRegion, Witness,
};
pub use rational::{int, parse_rational, ratio, Rational};
pub use repsys::{beta_of, ColumnSchedule, Encoding, MatrixColumn};
pub use schedule::Schedule;
