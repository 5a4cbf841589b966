//! Interval evaluation of zeta, L-functions and the sieve-weighted series.

pub mod complex;
pub mod gauss;
pub mod mellin;
pub mod series;
pub mod zeta;
pub mod zeros;

pub use complex::ComplexInterval;
pub use zeta::{hurwitz_zeta, l_eval, zeta, EvalParams};
pub use series::{
    f_eval, fg_coefficient_identity, g_eval, mollified_sum, truncated_s_of_x, CoefficientReport, GForm,
};
pub use mellin::{mellin_identity_check, MellinParams, MellinReport};
pub use zeros::{count_zeros, isolate_zero, refine_zero};
