//! Truncated Laurent series in the completions of F_{q^m}(θ) and the
//! evaluation of Carlitz polylogarithms, exp and log.

mod coeffs;
mod cpl;
mod laurent;
mod loglie;
mod vadic;

pub use cpl::{cpl_deform_at_theta, cpl_inf, guard_digits, li_series, log_last_coord_formula, verify_relation};
pub use laurent::{embed, embed_parts, valuation_of, Completion, Laurent, EXACT};
pub use loglie::{apply_differential, embed_point, exp_lie, log_at, log_point, LieVector, MAX_TERMS};
pub use vadic::{
    admissible_multipliers, cpl_v, cpl_v_with, is_admissible, place_completion, MULTIPLIER_SEARCH_LIMIT,
};

/// Default number of digits.
pub const DEFAULT_PRECISION: i64 = 128;
