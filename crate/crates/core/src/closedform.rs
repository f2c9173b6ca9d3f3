//! Explicit formulas for the distance functionals of canonical lp indicator
//! vectors, together with a brute-force minimizer used as their oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::functionals::minimize_1d;

/// Parameters of one lp indicator evaluation: `x = 1_B` with `|B| = N` in
/// `l^p`, distance to signed/unsigned indicator lines of size `m`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LpIndicatorCase {
    pub p: f64,
    pub n: u32,
    pub m: u32,
}

impl LpIndicatorCase {
    pub fn new(p: f64, n: u32, m: u32) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(Error::DomainError(format!("requires 1 < p < inf, got {p}")));
        }
        if n == 0 || m == 0 {
            return Err(Error::DomainError("N and m must be positive".into()));
        }
        Ok(LpIndicatorCase { p, n, m })
    }
}

fn check_lemma_domain(p: f64, m: u32, n: u32) -> Result<()> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::DomainError(format!("requires 1 < p < inf, got {p}")));
    }
    if n == 0 || m < n {
        return Err(Error::DomainError(format!("requires m >= N >= 1, got m={m}, N={n}")));
    }
    Ok(())
}

/// Minimum of `H(alpha, k) = |1-alpha|^p k + |alpha|^p (m-k) + (N-k)`:
/// `N (1 + ((m-N)/N)^{-1/(p-1)})^{-(p-1)}`, with the `m = N` boundary equal
/// to 0 by continuity (`H(1, N) = 0`).
pub fn lemma_min(p: f64, m: u32, n: u32) -> Result<f64> {
    check_lemma_domain(p, m, n)?;
    if m == n {
        return Ok(0.0);
    }
    let ratio = f64::from(m - n) / f64::from(n);
    Ok(f64::from(n) * (1.0 + ratio.powf(-1.0 / (p - 1.0))).powf(-(p - 1.0)))
}

fn h(p: f64, m: u32, n: u32, alpha: f64, k: u32) -> f64 {
    (1.0 - alpha).abs().powf(p) * f64::from(k)
        + alpha.abs().powf(p) * f64::from(m - k)
        + f64::from(n - k)
}

fn l(p: f64, m: u32, n: u32, alpha: f64, k1: u32, k2: u32) -> f64 {
    (1.0 - alpha).abs().powf(p) * f64::from(k1)
        + (1.0 + alpha).abs().powf(p) * f64::from(k2)
        + alpha.abs().powf(p) * f64::from(m - k1 - k2)
        + f64::from(n - k1 - k2)
}

/// Brute-force minima of both functions of the minimization lemma. Each `k`
/// (or `(k1, k2)` split) is scanned on a coarse alpha grid of `grid` points
/// and refined by ternary search; `h_min` and `l_min` coincide analytically.
#[derive(Clone, Copy, Debug)]
pub struct LemmaBruteforce {
    pub h_min: f64,
    pub l_min: f64,
}

impl LemmaBruteforce {
    pub fn min(&self) -> f64 {
        self.h_min.min(self.l_min)
    }
}

pub fn lemma_min_bruteforce_parts(p: f64, m: u32, n: u32, grid: u32) -> Result<LemmaBruteforce> {
    check_lemma_domain(p, m, n)?;
    let grid = grid.max(2);
    let refine = |f: &dyn Fn(f64) -> f64| -> Result<f64> {
        // grid scan over [-2, 2] to bracket, then ternary
        let mut best = (f(-2.0), -2.0);
        for i in 0..=grid {
            let a = -2.0 + 4.0 * f64::from(i) / f64::from(grid);
            let v = f(a);
            if v < best.0 {
                best = (v, a);
            }
        }
        let step = 4.0 / f64::from(grid);
        let (_, value) = minimize_1d(f, best.1 - step, best.1 + step)?;
        Ok(value.min(best.0))
    };
    let mut h_min = f64::INFINITY;
    for k in 0..=n {
        h_min = h_min.min(refine(&|a| h(p, m, n, a, k))?);
    }
    let mut l_min = f64::INFINITY;
    for k1 in 0..=n {
        for k2 in 0..=(n - k1) {
            if k1 + k2 == 0 {
                continue;
            }
            l_min = l_min.min(refine(&|a| l(p, m, n, a, k1, k2))?);
        }
    }
    Ok(LemmaBruteforce { h_min, l_min })
}

/// Smaller of the brute-force `H` and `L` minima; the oracle for [`lemma_min`].
pub fn lemma_min_bruteforce(p: f64, m: u32, n: u32, grid: u32) -> Result<f64> {
    Ok(lemma_min_bruteforce_parts(p, m, n, grid)?.min())
}

/// `D_m(1_B) = D*_m(1_B)` in `l^p`: `(N-m)^{1/p}` for `m <= N`, and
/// `N^{1/p} (1 + (m/N - 1)^{-1/(p-1)})^{-1/p'}` for `m >= N`, consistent at
/// the boundary where both branches give 0.
pub fn lp_indicator_d(case: &LpIndicatorCase) -> Result<f64> {
    let LpIndicatorCase { p, n, m } = *case;
    if !(p > 1.0) || !p.is_finite() {
        return Err(Error::DomainError(format!("requires 1 < p < inf, got {p}")));
    }
    if m <= n {
        return Ok(f64::from(n - m).powf(1.0 / p));
    }
    // N^{1/p} (...)^{-1/p'} is the p-th root of the lemma minimum
    Ok(lemma_min(p, m, n)?.powf(1.0 / p))
}

/// The l^1 piecewise values of `D_m(1_B)`.
pub fn l1_indicator_d(n: u32, m: u32) -> f64 {
    if m <= n {
        f64::from(n - m)
    } else if m <= 2 * n {
        f64::from(m - n)
    } else {
        f64::from(n)
    }
}
