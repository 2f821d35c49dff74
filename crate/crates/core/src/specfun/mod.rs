//! Special functions on complex arguments, all in binary64.

pub mod bessel;
pub mod gamma;
pub mod incgamma;
pub mod modular;
pub mod zeta;

pub use bessel::bessel_k;
pub use gamma::{digamma, gamma, gamma_ratio, ln_gamma};
pub use incgamma::incomplete_gamma_upper;
pub use modular::{modular_values, ModularValues};
pub use zeta::{
    dirichlet_l, hurwitz_zeta, kronecker_constant, xi, xi_logderiv, zeta, zeta_bundle,
    zeta_with_derivative, ZetaBundle,
};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Accuracy knobs shared by the series and quadrature kernels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionConfig {
    pub target_abs_tol: f64,
    /// Drop series terms once their exponential factor falls below this
    /// fraction of the running maximum.
    pub series_cutoff: f64,
    pub euler_maclaurin_terms: usize,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            target_abs_tol: 1e-12,
            series_cutoff: 1e-18,
            euler_maclaurin_terms: 10,
        }
    }
}
