//! Finite-window acceptance constants.
//!
//! The asymptotic statements only constrain limits; checking them at finite
//! `X` needs explicit windows and slack. All of those live here and are
//! echoed into the metadata of every CLI table that uses them.

use crate::arith::Rational;

/// First `X` included in ratio statistics.
pub const DEFAULT_BURN_IN: u64 = 64;

/// Slack around the `[1/3, 1]` band for `X·π_f(X)/2^(X+1)`, as `num/den`.
pub const RATIO_BAND_SLACK: (i64, i64) = (1, 50);

/// Allowed `|X·π_g(X)/2^(X+1) - 1|`.
pub const PNT_BASELINE_TOL: (i64, i64) = (1, 50);

/// First `X` of the Merten window.
pub const MERTEN_MIN_X: u64 = 16;

/// Additive `O(1)` allowance in the Merten sandwich.
pub const MERTEN_SLACK: i64 = 2;

/// Window for `even_bound·(X/2)/4^(X/2)` over even `X ≥ DEFAULT_BURN_IN`.
pub const DELTA_WINDOW: ((i64, i64), (i64, i64)) = ((3, 10), (3, 2));

/// Allowed deviation of `log2(c_n)/n` from 1 for `200 ≤ n ≤ 400`.
pub const COEFF_GROWTH_TOL: f64 = 0.05;

/// Witness thresholds for the non-converging ratio `F_{n+1}(f)/F_n(f)`.
pub const F_RATIO_HIGH: f64 = 2.2;
pub const F_RATIO_LOW: f64 = 1.0;

/// Product formula vs partial series at interior points.
pub const INTERIOR_AGREEMENT: f64 = 1e-6;
pub const DEEP_INTERIOR_AGREEMENT: f64 = 1e-9;

/// Gap separating clusters in the oscillation report.
pub const CLUSTER_GAP: f64 = 0.005;

pub fn rational((n, d): (i64, i64)) -> Rational {
    Rational::new(n.into(), d.into())
}
