mod bernstein;
mod bilinear;
mod boundary;
mod commutator;
mod equivalence;
mod hessian;
mod localization;
mod picard;
mod regularity;
mod solver;

pub use bernstein::check_bernstein_multipliers;
pub use bilinear::{bilinear_ratios, check_bilinear};
pub use boundary::{check_boundary, TraceSample, PROBE_RADII};
pub use commutator::{check_commutator, commutator_blocks};
pub use equivalence::{check_norm_equivalence, norm_ratios, EDGE_ORDERS, GATED_ORDERS};
pub use hessian::check_second_derivative;
pub use localization::{
    check_localization, localization_range, localization_sample, subordination_constant, LocalizationSample,
};
pub use picard::check_picard_epsilon;
pub use regularity::{check_max_regularity, exponential_trapezoid, time_grid};
pub use solver::check_solver;
