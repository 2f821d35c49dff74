//! Moments of class group L-functions through Eisenstein series at Heegner
//! points.

pub mod average;
pub mod fit;
pub mod identities;
pub mod integral;
pub mod regularized;
pub mod scan;

pub use average::{
    heegner_average, kernel_diagonal, kernel_slope, AverageIntegrand, KernelProfile,
};
pub use identities::{moment_identity, theorem_a, twisted, MomentReport, TwistedReport};
pub use integral::{regularized_integral, IntegralKind, IntegralReport};
pub use regularized::{b_func, b_two, c_func, r_func, r_on_line, BContext, CContext};
