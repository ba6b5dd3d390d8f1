//! Time-average mean squares `(1/2T) ∫_{−T}^{T} ∫ |f(σ + c + it)|² dμ(σ) dt`
//! and their convergence to `Σ |a_n|² w_n`.
//!
//! The `t`-integral is done exactly: the cross term of indices `m ≠ n`
//! averages to `sin(T log(m/n)) / (T log(m/n))`. The `σ`-integral reduces to
//! the measure's Laplace transform `W(m, n, c) = (mn)^(−c) ∫ (mn)^(−σ) dμ`.
//! A Romberg-corrected trapezoid rule in `t` is kept as an independent check.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dirichlet::DirichletPolynomial;
use crate::error::{Error, Result};
use crate::sum::kahan;
use crate::weights::{moment_weight, HalfLineMeasure};
use num_complex::Complex64;

/// `(1/2T) ∫_{−T}^{T} n^(−it) m^(it) dt`.
pub fn orthogonality_kernel(m: u64, n: u64, t_horizon: f64) -> f64 {
    if m == n {
        return 1.0;
    }
    let x = t_horizon * (m as f64 / n as f64).ln();
    x.sin() / x
}

/// `∫ (mn)^(−σ−c) dμ(σ)`.
pub fn cross_moment(measure: &HalfLineMeasure, m: u64, n: u64, c: f64) -> Result<f64> {
    let log_mn = (m as f64).ln() + (n as f64).ln();
    Ok((-c * log_mn).exp() * measure.laplace(log_mn)?)
}

fn check_args(t_horizon: f64, c: f64) -> Result<()> {
    if !(t_horizon > 0.0) || !t_horizon.is_finite() {
        return Err(Error::domain(format!("horizon T = {t_horizon} must be positive")));
    }
    if !(c >= 0.0) || !c.is_finite() {
        return Err(Error::domain(format!("shift c = {c} must be ≥ 0")));
    }
    Ok(())
}

type MomentMatrix = (Vec<(u64, Complex64)>, Vec<f64>);

fn moment_matrix(f: &DirichletPolynomial, measure: &HalfLineMeasure, c: f64) -> Result<MomentMatrix> {
    let terms: Vec<(u64, Complex64)> = f.terms().collect();
    let k = terms.len();
    let mut w = vec![0.0; k * k];
    for i in 0..k {
        for j in i..k {
            let v = cross_moment(measure, terms[i].0, terms[j].0, c)?;
            w[i * k + j] = v;
            w[j * k + i] = v;
        }
    }
    Ok((terms, w))
}

/// The time average via the exact sinc reduction in `t`.
pub fn time_average(f: &DirichletPolynomial, measure: &HalfLineMeasure, t_horizon: f64, c: f64) -> Result<f64> {
    check_args(t_horizon, c)?;
    let (terms, w) = moment_matrix(f, measure, c)?;
    let k = terms.len();
    let mut parts = Vec::with_capacity(k * k);
    for i in 0..k {
        let (m, a) = terms[i];
        parts.push(a.norm_sqr() * w[i * k + i]);
        for j in i + 1..k {
            let (n, b) = terms[j];
            let cross = a * b.conj() * w[i * k + j] * orthogonality_kernel(m, n, t_horizon);
            parts.push(2.0 * cross.re);
        }
    }
    Ok(kahan(parts).max(0.0))
}

/// The same average with the `t`-integral done by the trapezoid rule at step
/// `≤ t_step`, refined once by Richardson extrapolation (step halved).
pub fn time_average_trapezoid(
    f: &DirichletPolynomial,
    measure: &HalfLineMeasure,
    t_horizon: f64,
    c: f64,
    t_step: f64,
) -> Result<f64> {
    check_args(t_horizon, c)?;
    if !(t_step > 0.0) {
        return Err(Error::domain("t_step must be positive"));
    }
    let (terms, w) = moment_matrix(f, measure, c)?;
    let k = terms.len();
    let logs: Vec<f64> = terms.iter().map(|(n, _)| (*n as f64).ln()).collect();
    let integrand = |t: f64| -> f64 {
        let b: Vec<Complex64> =
            terms.iter().zip(&logs).map(|((_, a), l)| a * Complex64::new(0.0, -t * l).exp()).collect();
        let mut acc = 0.0;
        for i in 0..k {
            let mut row = Complex64::default();
            for j in 0..k {
                row += b[j].conj() * w[i * k + j];
            }
            acc += (b[i] * row).re;
        }
        acc
    };
    let intervals = (2.0 * t_horizon / t_step).ceil().max(1.0) as usize;
    let h = 2.0 * t_horizon / intervals as f64;
    let coarse: Vec<f64> = (0..=intervals).map(|i| integrand(-t_horizon + i as f64 * h)).collect();
    let midpoints: Vec<f64> = (0..intervals).map(|i| integrand(-t_horizon + (i as f64 + 0.5) * h)).collect();
    let ends = 0.5 * (coarse[0] + coarse[intervals]);
    let interior = kahan(coarse[1..intervals].iter().copied());
    let trap_h = h * (ends + interior);
    let trap_half = 0.5 * trap_h + 0.5 * h * kahan(midpoints);
    let romberg = (4.0 * trap_half - trap_h) / 3.0;
    Ok(romberg / (2.0 * t_horizon))
}

/// Horizons, shifts and quadrature choice for [`verify_plancherel`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageSchedule {
    t_ladder: Vec<f64>,
    c_ladder: Vec<f64>,
    pub t_step: f64,
    pub use_closed_form: bool,
}

impl Default for AverageSchedule {
    fn default() -> Self {
        AverageSchedule {
            t_ladder: vec![1e2, 1e3, 1e4],
            c_ladder: vec![1e-1, 1e-2, 1e-3],
            t_step: 1e-2,
            use_closed_form: true,
        }
    }
}

impl AverageSchedule {
    /// `t_ladder` must be positive and increasing; the shifts are stored in
    /// decreasing order and must be distinct and nonnegative.
    pub fn new(t_ladder: Vec<f64>, mut c_ladder: Vec<f64>, t_step: f64, use_closed_form: bool) -> Result<Self> {
        if t_ladder.is_empty() || c_ladder.is_empty() {
            return Err(Error::domain("schedule ladders must be nonempty"));
        }
        if t_ladder.iter().any(|&t| !(t > 0.0) || !t.is_finite()) || t_ladder.windows(2).any(|p| p[0] >= p[1]) {
            return Err(Error::domain("T ladder must be positive and strictly increasing"));
        }
        if c_ladder.iter().any(|&c| !(c >= 0.0) || !c.is_finite()) {
            return Err(Error::domain("c ladder must be nonnegative"));
        }
        c_ladder.sort_by(|a, b| b.total_cmp(a));
        if c_ladder.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::domain("c ladder has repeated values"));
        }
        if !(t_step > 0.0) {
            return Err(Error::domain("t_step must be positive"));
        }
        Ok(AverageSchedule { t_ladder, c_ladder, t_step, use_closed_form })
    }

    pub fn t_ladder(&self) -> &[f64] {
        &self.t_ladder
    }

    pub fn c_ladder(&self) -> &[f64] {
        &self.c_ladder
    }

    /// A point mass at 0 needs the outer limit `c → 0⁺`; `c = 0` is only
    /// admissible when `μ({0}) = 0`.
    pub fn validate_for(&self, measure: &HalfLineMeasure) -> Result<()> {
        if measure.has_point_mass() && self.c_ladder.contains(&0.0) {
            return Err(Error::domain("c = 0 is not admissible for a measure with a point mass at 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlancherelRow {
    #[serde(rename = "T")]
    pub t_horizon: f64,
    pub c: f64,
    pub value: f64,
    pub target: f64,
    pub abs_error: f64,
    /// Distance to the `T → ∞` limit `Σ |a_n|² W(n, n, c)` at this `c`.
    pub inner_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColumnTrend {
    pub c: f64,
    /// `inner_error` is nonincreasing along the `T` ladder.
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlancherelReport {
    pub target: f64,
    pub rows: Vec<PlancherelRow>,
    pub columns: Vec<ColumnTrend>,
    /// Linear extrapolation to `c = 0` through the two smallest positive
    /// shifts at the largest horizon.
    pub extrapolated: Option<f64>,
    pub trend_ok: bool,
}

impl PlancherelReport {
    /// The row at the largest horizon and the smallest admitted shift.
    pub fn final_row(&self) -> Option<&PlancherelRow> {
        let t_max = self.rows.iter().map(|r| r.t_horizon).fold(f64::NEG_INFINITY, f64::max);
        self.rows.iter().filter(|r| r.t_horizon == t_max).min_by(|a, b| a.c.total_cmp(&b.c))
    }
}

/// Tabulates `|time_average − Σ |a_n|² w_n|` over the schedule. For measures
/// without a point mass at 0 a `c = 0` column is appended.
pub fn verify_plancherel(
    f: &DirichletPolynomial,
    measure: &HalfLineMeasure,
    schedule: &AverageSchedule,
) -> Result<PlancherelReport> {
    schedule.validate_for(measure)?;
    let target =
        kahan(f.terms().map(|(n, a)| Ok(a.norm_sqr() * moment_weight(measure, n)?)).collect::<Result<Vec<f64>>>()?);
    let mut cs = schedule.c_ladder.clone();
    if !measure.has_point_mass() && !cs.contains(&0.0) {
        cs.push(0.0);
    }
    let inner_limits: Vec<f64> = cs
        .iter()
        .map(|&c| {
            let parts = f
                .terms()
                .map(|(n, a)| Ok(a.norm_sqr() * cross_moment(measure, n, n, c)?))
                .collect::<Result<Vec<f64>>>()?;
            Ok(kahan(parts))
        })
        .collect::<Result<_>>()?;

    let cells: Vec<(usize, f64)> =
        cs.iter().enumerate().flat_map(|(ci, _)| schedule.t_ladder.iter().map(move |&t| (ci, t))).collect();
    let rows: Vec<PlancherelRow> = cells
        .par_iter()
        .map(|&(ci, t)| {
            let c = cs[ci];
            let value = if schedule.use_closed_form {
                time_average(f, measure, t, c)?
            } else {
                time_average_trapezoid(f, measure, t, c, schedule.t_step)?
            };
            Ok(PlancherelRow {
                t_horizon: t,
                c,
                value,
                target,
                abs_error: (value - target).abs(),
                inner_error: (value - inner_limits[ci]).abs(),
            })
        })
        .collect::<Result<_>>()?;

    let per_c = schedule.t_ladder.len();
    let columns: Vec<ColumnTrend> = cs
        .iter()
        .enumerate()
        .map(|(ci, &c)| {
            let col = &rows[ci * per_c..(ci + 1) * per_c];
            ColumnTrend { c, monotone: col.windows(2).all(|p| p[1].inner_error <= p[0].inner_error) }
        })
        .collect();
    let trend_ok = columns.iter().all(|c| c.monotone);

    let mut positive: Vec<f64> = cs.iter().copied().filter(|&c| c > 0.0).collect();
    positive.sort_by(|a, b| a.total_cmp(b));
    let t_max = *schedule.t_ladder.last().expect("nonempty ladder");
    let extrapolated = if positive.len() >= 2 {
        let value_at = |c: f64| rows.iter().find(|r| r.c == c && r.t_horizon == t_max).map(|r| r.value);
        let (c1, c2) = (positive[0], positive[1]);
        match (value_at(c1), value_at(c2)) {
            (Some(v1), Some(v2)) => Some(v1 - c1 * (v2 - v1) / (c2 - c1)),
            _ => None,
        }
    } else {
        None
    };
    Ok(PlancherelReport { target, rows, columns, extrapolated, trend_ok })
}
