//! Round-trip determinants, frequency integration and truncation control.

pub mod logdet;
pub mod matsubara;
pub mod parallel;
pub mod quadrature;
pub mod truncation;

pub use logdet::{
    logdet_i_minus, logdet_identity_minus, logdet_identity_plus, RoundTripBlock, SpectralParameter,
};
pub use matsubara::{matsubara_sum, MatsubaraSpec, KAPPA_MIN};
pub use parallel::{par_map, try_par_map, with_threads};
pub use quadrature::{
    gauss_legendre, integrate_fixed, integrate_interval, integrate_semi_infinite, integrate_zero_t,
    GaussLegendreRule, QuadratureSpec, Transform,
};
pub use truncation::{aitken, converge_truncation, OrderStep, TruncationSpec};
