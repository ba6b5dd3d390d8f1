//! Lower estimates for multiplier norms, sampled sup norms on the right
//! half-plane, and the empirical α-Carleson ratio of `|φ′|² dμ_{α−2} dt`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::space::SpaceHandle;
use crate::dirichlet::DirichletPolynomial;
use crate::error::{Error, Result};
use crate::plancherel::time_average;
use crate::weights::{HalfLineMeasure, WeightSequence};

pub const MAX_POWER_ITERATIONS: usize = 200_000;
const POWER_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiplierEstimate {
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// `‖P_N M_φ P_N‖` in `H_w`, by power iteration on `M̃*M̃` where
/// `M̃_{k,n} = φ_{k/n} (w_k / w_n)^(1/2)` for `n0 ≤ n, k ≤ N`.
///
/// A compression of `M_φ`, so a lower bound for its norm. When the iteration
/// cap is hit the best iterate comes back with `converged = false`.
pub fn multiplier_norm_estimate(
    phi: &DirichletPolynomial,
    space: &SpaceHandle,
    trunc: u64,
) -> Result<MultiplierEstimate> {
    let n0 = space.n0();
    if trunc < n0 {
        return Err(Error::domain(format!("truncation {trunc} below n0 = {n0}")));
    }
    if let Some(m) = phi.max_index() {
        if trunc < m {
            return Err(Error::domain(format!("truncation {trunc} below the largest index {m} of φ")));
        }
    }
    if trunc > crate::dirichlet::DEFAULT_INDEX_CAP {
        return Err(Error::IndexOverflow { index: trunc, cap: crate::dirichlet::DEFAULT_INDEX_CAP });
    }
    if phi.is_empty() {
        return Ok(MultiplierEstimate { value: 0.0, iterations: 0, converged: true });
    }
    let size = (trunc - n0 + 1) as usize;
    let sqrt_w: Vec<f64> = (n0..=trunc).map(|n| space.weight(n).map(f64::sqrt)).collect::<Result<_>>()?;

    // Sparse entries (k, n, value); columns n, rows k = d·n.
    let mut entries: Vec<(usize, usize, Complex64)> = Vec::new();
    for (d, a) in phi.terms() {
        for n in n0..=trunc / d {
            let k = d * n;
            let (ki, ni) = ((k - n0) as usize, (n - n0) as usize);
            entries.push((ki, ni, a * (sqrt_w[ki] / sqrt_w[ni])));
        }
    }

    let apply = |x: &[Complex64], y: &mut [Complex64]| {
        y.iter_mut().for_each(|v| *v = Complex64::default());
        for &(k, n, m) in &entries {
            y[k] += m * x[n];
        }
    };
    let apply_adjoint = |y: &[Complex64], x: &mut [Complex64]| {
        x.iter_mut().for_each(|v| *v = Complex64::default());
        for &(k, n, m) in &entries {
            x[n] += m.conj() * y[k];
        }
    };
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();

    let mut x = vec![Complex64::new(1.0 / (size as f64).sqrt(), 0.0); size];
    let mut y = vec![Complex64::default(); size];
    let mut best = 0.0f64;
    let mut previous = 0.0f64;
    for iteration in 1..=MAX_POWER_ITERATIONS {
        apply(&x, &mut y);
        let value = norm(&y);
        best = best.max(value);
        if value == 0.0 {
            return Ok(MultiplierEstimate { value: 0.0, iterations: iteration, converged: true });
        }
        if iteration > 1 && (value - previous).abs() <= POWER_TOL * value {
            return Ok(MultiplierEstimate { value: best, iterations: iteration, converged: true });
        }
        previous = value;
        apply_adjoint(&y, &mut x);
        let scale = norm(&x);
        x.iter_mut().for_each(|z| *z /= scale);
    }
    Ok(MultiplierEstimate { value: best, iterations: MAX_POWER_ITERATIONS, converged: false })
}

/// Sampling pattern for [`sup_norm_estimate`]: every abscissa in `sigmas`
/// against `t_points` equispaced ordinates in `[−t_max, t_max]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupGrid {
    pub sigmas: Vec<f64>,
    pub t_max: f64,
    pub t_points: usize,
}

impl Default for SupGrid {
    fn default() -> Self {
        SupGrid { sigmas: vec![1e-3, 1e-2, 1e-1, 1.0], t_max: 100.0, t_points: 4096 }
    }
}

impl SupGrid {
    pub fn ordinates(&self) -> Vec<f64> {
        match self.t_points {
            0 => Vec::new(),
            1 => vec![0.0],
            m => (0..m).map(|i| -self.t_max + 2.0 * self.t_max * i as f64 / (m - 1) as f64).collect(),
        }
    }
}

/// `max |φ|` over the grid; a lower bound for the sup over `Re s > 0`.
pub fn sup_norm_estimate(phi: &DirichletPolynomial, grid: &SupGrid) -> Result<f64> {
    if grid.sigmas.is_empty() || grid.t_points == 0 {
        return Err(Error::domain("empty sampling grid"));
    }
    if grid.sigmas.iter().any(|s| !(*s > 0.0) || !s.is_finite()) || !(grid.t_max >= 0.0) || !grid.t_max.is_finite() {
        return Err(Error::domain("grid needs finite σ > 0 and t_max ≥ 0"));
    }
    let ts = grid.ordinates();
    let mut best = 0.0f64;
    for &sigma in &grid.sigmas {
        for &t in &ts {
            best = best.max(phi.evaluate(Complex64::new(sigma, t)).norm());
        }
    }
    Ok(best)
}

/// `max_f (1/2T) ∫_{−T}^{T} ∫ |φ′ f|² dμ_{α−2}(σ) dt / ‖f‖²_{H_α}` over the
/// test functions, with `‖f‖²_{H_α} = Σ |a_n|² (log n)^α`.
pub fn carleson_ratio(
    phi: &DirichletPolynomial,
    alpha: f64,
    tests: &[DirichletPolynomial],
    t_horizon: f64,
) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::domain(format!("α = {alpha} outside (0, 2)")));
    }
    if tests.is_empty() {
        return Err(Error::domain("no test functions"));
    }
    let measure = HalfLineMeasure::mu_alpha(alpha - 2.0)?;
    let h_alpha = SpaceHandle::new(WeightSequence::log_power(alpha));
    let dphi = phi.differentiate();
    let mut best = 0.0f64;
    for f in tests {
        if f.min_index().is_some_and(|n| n < 2) {
            return Err(Error::domain("test functions must have indices ≥ 2"));
        }
        let norm_sq = h_alpha.norm(f)?.powi(2);
        if norm_sq == 0.0 {
            return Err(Error::domain("zero test function"));
        }
        let g = dphi.multiply(f)?;
        if g.is_empty() {
            continue;
        }
        best = best.max(time_average(&g, &measure, t_horizon, 0.0)? / norm_sq);
    }
    Ok(best)
}
