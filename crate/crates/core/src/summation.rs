//! Floating-point summation harnesses used only as cross-checks of the
//! exact Abel limit.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::seq::QPSeq;

/// Outcome of [`holder_limit_numeric`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HolderEstimate {
    /// Number of arithmetic-mean passes that were needed (0 = the terms
    /// themselves converge).
    pub order: usize,
    pub value: f64,
}

/// Number of checkpoints spread over the last quarter of the horizon.
const CHECKPOINTS: usize = 9;

/// Hölder summation of a finite run of terms.
///
/// `H^0` is the sequence itself and `H^k` the running arithmetic means of
/// `H^{k-1}`. Order 0 is accepted when the terms vary by at most `tol` over
/// the last quarter. For `k >= 1`, `(n+1) H^k_n` is the partial-sum
/// sequence of `H^{k-1}`; its least-squares slope over the trailing half
/// window `[n/2, n]` estimates `lim H^k` with the `c/(n+1)` transient
/// removed. Order `k` is accepted when those estimates, taken at
/// checkpoints across the last quarter, agree within `tol`.
pub fn holder_limit_numeric(terms: &[f64], max_order: usize, tol: f64) -> Result<HolderEstimate> {
    let n = terms.len();
    if n < 8 {
        return Err(Error::PrecondViolation("need at least 8 terms".into()));
    }
    let quarter = n - n / 4;
    let tail = &terms[quarter..];
    let (lo, hi) = tail
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(*v), hi.max(*v))
        });
    if hi - lo <= tol {
        return Ok(HolderEstimate {
            order: 0,
            value: terms[n - 1],
        });
    }
    let mut current = terms.to_vec();
    for order in 1..=max_order {
        let partial = prefix_sums(&current);
        let checkpoints: Vec<usize> = (0..CHECKPOINTS)
            .map(|i| quarter + i * (n - 1 - quarter) / (CHECKPOINTS - 1))
            .collect();
        let estimates: Vec<f64> = checkpoints
            .iter()
            .map(|&end| trailing_slope(&partial, end))
            .collect();
        let (lo, hi) = estimates
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
                (lo.min(*v), hi.max(*v))
            });
        if hi - lo <= tol {
            return Ok(HolderEstimate {
                order,
                value: *estimates.last().unwrap(),
            });
        }
        current = partial
            .iter()
            .enumerate()
            .map(|(i, s)| s / (i + 1) as f64)
            .collect();
    }
    Err(Error::NoConvergence)
}

/// Hölder cross-check for a [`QPSeq`], materializing `horizon` terms.
pub fn holder_limit_qp(
    s: &QPSeq,
    max_order: usize,
    tol: f64,
    horizon: usize,
) -> Result<HolderEstimate> {
    let need = 10 * s.period().max(s.prefix().len());
    if horizon < need {
        return Err(Error::PrecondViolation(format!(
            "horizon {horizon} is below 10 * max(period, prefix length) = {need}"
        )));
    }
    holder_limit_numeric(&s.terms_f64(horizon), max_order, tol)
}

fn prefix_sums(v: &[f64]) -> Vec<f64> {
    // Neumaier summation keeps long runs of O(1) terms accurate.
    let mut out = Vec::with_capacity(v.len());
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &x in v {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
        out.push(sum + comp);
    }
    out
}

/// Least-squares slope of `partial[j]` against `j` for `j` in `[end/2, end]`.
fn trailing_slope(partial: &[f64], end: usize) -> f64 {
    let start = end / 2;
    let m = (end - start + 1) as f64;
    let mid = (start + end) as f64 / 2.0;
    let mean_y = partial[start..=end].iter().sum::<f64>() / m;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (j, y) in partial[start..=end].iter().enumerate() {
        let dx = (start + j) as f64 - mid;
        sxy += dx * (y - mean_y);
        sxx += dx * dx;
    }
    sxy / sxx
}

/// Truncated Abel means `(1 - x) sum_{k < len} a_k x^k` on `grid`, with a
/// straight-line extrapolation in `1 - x` to `x = 1`.
///
/// Grid points where the truncation is visible (`x^len > 1e-2`) are
/// dropped, keeping at least the two least affected points.
pub fn abel_limit_numeric(terms: &[f64], grid: &[f64]) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::PrecondViolation("empty grid".into()));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) || grid.iter().any(|x| !(*x > 0.0 && *x < 1.0)) {
        return Err(Error::PrecondViolation(
            "grid must be strictly increasing inside (0, 1)".into(),
        ));
    }
    if terms.is_empty() {
        return Ok(0.0);
    }
    let len = terms.len() as f64;
    let mut points: Vec<(f64, f64, f64)> = grid
        .iter()
        .map(|&x| {
            let series = terms.iter().rev().fold(0.0, |acc, a| acc * x + a);
            (x.powf(len), 1.0 - x, (1.0 - x) * series)
        })
        .collect();
    let usable = points.iter().filter(|p| p.0 <= 1e-2).count();
    if usable >= 2 {
        points.retain(|p| p.0 <= 1e-2);
    } else {
        points.truncate(2);
    }
    if points.len() == 1 {
        return Ok(points[0].2);
    }
    let m = points.len() as f64;
    let mu = points.iter().map(|p| p.1).sum::<f64>() / m;
    let mv = points.iter().map(|p| p.2).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.1 - mu) * (p.2 - mv)).sum();
    let sxx: f64 = points.iter().map(|p| (p.1 - mu).powi(2)).sum();
    Ok(mv - (sxy / sxx) * mu)
}

/// The grid `1 - 2^-j` for `j` in `lo..=hi`.
pub fn dyadic_grid(lo: i32, hi: i32) -> Vec<f64> {
    (lo..=hi).map(|j| 1.0 - 2f64.powi(-j)).collect()
}
