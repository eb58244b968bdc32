//! Numerical policy in one place.
//!
//! Exact (rational) arithmetic ignores every tolerance below; the float path
//! needs each of them, and each default targets desk-scale problems
//! (dimension and degree up to a few tens).

/// Kernel pivot threshold, relative to the Frobenius norm of the input.
///
/// Double precision leaves ~15 digits; 1e-10 keeps ~5 digits of headroom over
/// accumulated rounding in the row reduction.
pub const DEFAULT_KERNEL_TOL: f64 = 1e-10;

/// Dependence threshold for the power-vector rank test, applied to
/// norm-scaled vectors. Unscaled powers of matrices with norm > 1 grow
/// geometrically and would drown the test.
pub const DEFAULT_RANK_TOL: f64 = 1e-9;

/// Euclidean-remainder truncation threshold, relative to the input
/// coefficient norms. The remainder sequence amplifies rounding; 1e-8
/// separates structural zeros from noise at desk scale.
pub const DEFAULT_TRUNC_TOL: f64 = 1e-8;

/// Root clustering tolerance. Near an exceptional point roots approach each
/// other like the square root of the parameter distance, so merging must not
/// be too eager.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;

/// Relative annihilation threshold for the trial-pattern oracle.
pub const DEFAULT_ORACLE_TOL: f64 = 1e-6;

/// Size bound for the characteristic-polynomial oracle; exact minor expansion
/// is exponential in the dimension.
pub const DEFAULT_ORACLE_DIM_BOUND: usize = 8;

/// Iteration cap for simultaneous root finding.
pub const DEFAULT_MAX_ROOT_ITERS: usize = 500;

/// A verdict of "diagonalizable" with a discriminant magnitude below this
/// (times the coefficient scale) gets the "near-exceptional" condition flag.
pub const NEAR_EXCEPTIONAL_DISC_TOL: f64 = 1e-12;

/// A sweep grid node whose discriminant magnitude is below this (times the
/// grid scale) is reported as an exceptional point without bisection.
pub const NODE_HIT_DISC_TOL: f64 = 1e-13;

/// Residuals within this factor of the rank threshold (either side) mark a
/// verdict as borderline.
pub const BORDERLINE_RESIDUAL_FACTOR: f64 = 10.0;

/// Tolerances threaded through diagnosis, root finding and sweeping.
#[derive(Debug, Clone)]
pub struct ToleranceConfig {
    /// Kernel pivot threshold, relative to the Frobenius norm.
    pub kernel_tol: f64,
    /// Power-dependence threshold on norm-scaled vectors.
    pub rank_tol: f64,
    /// Euclidean-remainder truncation threshold.
    pub trunc_tol: f64,
    /// Root clustering tolerance.
    pub cluster_tol: f64,
    /// Relative annihilation threshold for the oracle's pattern trials.
    pub oracle_tol: f64,
    /// Dimension bound for the characteristic-polynomial oracle.
    pub oracle_dim_bound: usize,
    /// Iteration cap for simultaneous root finding.
    pub max_root_iters: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            kernel_tol: DEFAULT_KERNEL_TOL,
            rank_tol: DEFAULT_RANK_TOL,
            trunc_tol: DEFAULT_TRUNC_TOL,
            cluster_tol: DEFAULT_CLUSTER_TOL,
            oracle_tol: DEFAULT_ORACLE_TOL,
            oracle_dim_bound: DEFAULT_ORACLE_DIM_BOUND,
            max_root_iters: DEFAULT_MAX_ROOT_ITERS,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::assertions_on_constants)]
    fn tolerance_ordering() {
        // The rank test is stricter than remainder truncation, which is
        // stricter than root clustering.
        assert!(DEFAULT_KERNEL_TOL < DEFAULT_RANK_TOL);
        assert!(DEFAULT_RANK_TOL < DEFAULT_TRUNC_TOL);
        assert!(DEFAULT_TRUNC_TOL < DEFAULT_CLUSTER_TOL);
        assert!(NODE_HIT_DISC_TOL < NEAR_EXCEPTIONAL_DISC_TOL);
    }
}
