//! Closed-form lower-bound sequences and the quadratics they solve.
//!
//! Each bound is the smaller root of `x^2 - s x + p = 0`:
//!
//! | field        | `s`           | `p`      |
//! |--------------|---------------|----------|
//! | `tau_n`      | `n + 2 gamma` | `2 gamma`|
//! | `sigma_tree` | `n + eta`     | `eta`    |
//! | `tau_tree`   | `n + 2 eta`   | `2 eta`  |
//!
//! with `gamma = 1` (odd `n`) or `2` (even `n`) and `eta = n - 2`. The
//! smaller root is evaluated as `2p / (s + sqrt(s^2 - 4p))`, which avoids
//! the cancellation in `(s - sqrt(s^2 - 4p)) / 2` at large `n`.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error("bounds are defined for n >= 3, got {0}")]
    OrderTooSmall(usize),
    #[error("trend report needs n_max >= 6, got {0}")]
    RangeTooShort(usize),
    #[error("stable and direct evaluations of {field} disagree at n = {n}: {stable} vs {direct}")]
    Inconsistent { n: usize, field: &'static str, stable: f64, direct: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundValues {
    pub n: usize,
    pub gamma: u32,
    pub eta: usize,
    /// Minimum of `tau` over connected non-transmission-regular graphs.
    pub tau_n: f64,
    /// Minimum of `sigma` over trees.
    pub sigma_tree: f64,
    /// Minimum of `tau` over trees.
    pub tau_tree: f64,
}

/// Smaller root of `x^2 - s x + p`, rationalized.
fn small_root(s: f64, p: f64) -> f64 {
    2.0 * p / (s + (s * s - 4.0 * p).sqrt())
}

pub fn gamma(n: usize) -> u32 {
    if n % 2 == 1 {
        1
    } else {
        2
    }
}

/// The bound expressions exactly as they are usually written, without
/// rationalizing. Used only as a consistency check.
pub fn direct_forms(n: usize) -> (f64, f64, f64) {
    let nf = n as f64;
    let tau_n = if n % 2 == 1 {
        (nf + 2.0 - (nf * nf + 4.0 * nf - 4.0).sqrt()) / 2.0
    } else {
        (nf + 4.0 - (nf * nf + 8.0 * nf).sqrt()) / 2.0
    };
    let sigma_tree = (2.0 * nf - 2.0 - (4.0 * nf * nf - 12.0 * nf + 12.0).sqrt()) / 2.0;
    let tau_tree = (3.0 * nf - 4.0 - (9.0 * nf * nf - 32.0 * nf + 32.0).sqrt()) / 2.0;
    (tau_n, sigma_tree, tau_tree)
}

pub fn bound_values(n: usize) -> Result<BoundValues, BoundsError> {
    if n < 3 {
        return Err(BoundsError::OrderTooSmall(n));
    }
    let g = gamma(n);
    let eta = n - 2;
    let (nf, gf, ef) = (n as f64, g as f64, eta as f64);
    let b = BoundValues {
        n,
        gamma: g,
        eta,
        tau_n: small_root(nf + 2.0 * gf, 2.0 * gf),
        sigma_tree: small_root(nf + ef, ef),
        tau_tree: small_root(nf + 2.0 * ef, 2.0 * ef),
    };

    // The direct forms lose about log10(n) digits to cancellation, so the
    // agreement threshold scales with the size of the quadratic's coefficients.
    let (tau_n, sigma_tree, tau_tree) = direct_forms(n);
    let checks = [
        ("tau_n", b.tau_n, tau_n, nf + 2.0 * gf),
        ("sigma_tree", b.sigma_tree, sigma_tree, nf + ef),
        ("tau_tree", b.tau_tree, tau_tree, nf + 2.0 * ef),
    ];
    for (field, stable, direct, scale) in checks {
        if (stable - direct).abs() > 1e-12 * scale {
            return Err(BoundsError::Inconsistent { n, field, stable, direct });
        }
    }
    Ok(b)
}

/// Residuals of the three defining quadratics, in field order.
pub fn residuals(b: &BoundValues) -> [f64; 3] {
    let (nf, gf, ef) = (b.n as f64, b.gamma as f64, b.eta as f64);
    let q = |x: f64, s: f64, p: f64| x * x - s * x + p;
    [
        q(b.tau_n, nf + 2.0 * gf, 2.0 * gf),
        q(b.sigma_tree, nf + ef, ef),
        q(b.tau_tree, nf + 2.0 * ef, 2.0 * ef),
    ]
}

/// Monotonicity of the bound sequences over `3..=n_max`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendReport {
    pub n_max: usize,
    /// `tau_n` strictly decreasing along odd `n`.
    pub tau_odd_decreasing: bool,
    /// `tau_n` strictly decreasing along even `n`.
    pub tau_even_decreasing: bool,
    /// Whether the interleaved sequence is monotone; it is not.
    pub tau_interleaved_decreasing: bool,
    pub sigma_tree_increasing: bool,
    pub tau_tree_increasing: bool,
    /// `tau_n < 1` and `sigma_tree < 1` everywhere in range.
    pub all_below_one: bool,
    pub last: BoundValues,
}

pub fn sequence_trends(n_max: usize) -> Result<TrendReport, BoundsError> {
    if n_max < 6 {
        return Err(BoundsError::RangeTooShort(n_max));
    }
    let values = (3..=n_max).map(bound_values).collect::<Result<Vec<_>, _>>()?;
    let strictly = |xs: &[f64], dec: bool| xs.windows(2).all(|w| if dec { w[1] < w[0] } else { w[1] > w[0] });
    let tau_parity = |parity: usize| -> Vec<f64> {
        values.iter().filter(|b| b.n % 2 == parity).map(|b| b.tau_n).collect()
    };
    let tau_all: Vec<f64> = values.iter().map(|b| b.tau_n).collect();
    let sigma_tree: Vec<f64> = values.iter().map(|b| b.sigma_tree).collect();
    let tau_tree: Vec<f64> = values.iter().map(|b| b.tau_tree).collect();
    Ok(TrendReport {
        n_max,
        tau_odd_decreasing: strictly(&tau_parity(1), true),
        tau_even_decreasing: strictly(&tau_parity(0), true),
        tau_interleaved_decreasing: strictly(&tau_all, true),
        sigma_tree_increasing: strictly(&sigma_tree, false),
        tau_tree_increasing: strictly(&tau_tree, false),
        all_below_one: values.iter().all(|b| b.tau_n < 1.0 && b.sigma_tree < 1.0),
        last: *values.last().expect("range is nonempty"),
    })
}
