//! Global comparison thresholds.
//!
//! Every predicate in the crate compares against one of these constants, so
//! two predicates never disagree because they used different slack.

/// Absolute separation below which two points are not distinct (scene units).
pub const DISTINCT: f64 = 1e-9;

/// Relative tolerance for comparing lengths.
pub const LEN: f64 = 1e-9;

/// Absolute tolerance for sphere membership (scene units).
pub const ON_SPHERE: f64 = 1e-9;

/// Relative tolerance for the touching criteria, scaled by the larger radius.
pub const TOUCH: f64 = 1e-9;

/// Bound on the normalized rejection `|g - (g.n)n| / max(|g|, 1)`.
pub const PARALLEL: f64 = 1e-9;

/// Largest admissible gap between the two analytic intersection solutions of
/// a touching pair.
pub const UNIQUE_GAP: f64 = 1e-6;

/// Minimum clearance between non-adjacent propagated samples, as a fraction
/// of the local input sample spacing.
pub const CLEARANCE_FLOOR: f64 = 0.25;

/// `|a - b| <= LEN * max(|a|, |b|)`.
pub fn lengths_match(a: f64, b: f64) -> bool {
    (a - b).abs() <= LEN * a.abs().max(b.abs())
}
