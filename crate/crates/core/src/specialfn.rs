//! Riemann zeta on the open right half-plane, the real Gamma function, and
//! the abscissa `ρ` of the Pick-weight space (the root of `ζ(2ρ) = 2`).

use std::f64::consts::{LN_2, PI};
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Radius of the disk around `s = 1` on which `zeta` refuses to evaluate.
pub const POLE_EXCLUSION: f64 = 1e-6;

/// A point `s = σ + it` of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !sigma.is_finite() || !t.is_finite() {
            return Err(Error::domain(format!("non-finite point {sigma} + {t}i")));
        }
        Ok(ComplexPoint { sigma, t })
    }

    pub fn real(sigma: f64) -> Self {
        ComplexPoint { sigma, t: 0.0 }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }

    pub fn conj(self) -> Self {
        ComplexPoint { sigma: self.sigma, t: -self.t }
    }
}

impl From<ComplexPoint> for Complex64 {
    fn from(p: ComplexPoint) -> Self {
        p.to_complex()
    }
}

impl From<Complex64> for ComplexPoint {
    fn from(z: Complex64) -> Self {
        ComplexPoint { sigma: z.re, t: z.im }
    }
}

/// The open half-plane `Ω_ρ = {σ > ρ}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfPlane {
    pub rho: f64,
}

impl HalfPlane {
    pub fn contains(&self, s: ComplexPoint) -> bool {
        s.sigma > self.rho
    }
}

/// `ζ(s)` for `σ > 0`, `|s − 1| ≥ 10⁻⁶`.
pub fn zeta(s: ComplexPoint) -> Result<Complex64> {
    zeta_complex(s.to_complex())
}

pub fn zeta_complex(s: Complex64) -> Result<Complex64> {
    check_zeta_domain(s)?;
    // 1 − 2^(1−s) vanishes on σ = 1 at t = 2πk/log 2; both η and the factor
    // vanish there, so switch paths before the quotient loses accuracy.
    let factor = Complex64::new(1.0, 0.0) - (Complex64::new(LN_2, 0.0) * (1.0 - s)).exp();
    if factor.norm() < 0.1 {
        return zeta_euler_maclaurin(s);
    }
    Ok(eta_borwein(s) / factor)
}

fn check_zeta_domain(s: Complex64) -> Result<()> {
    if !s.re.is_finite() || !s.im.is_finite() {
        return Err(Error::domain("zeta: non-finite argument"));
    }
    if s.re <= 0.0 {
        return Err(Error::domain(format!("zeta: σ = {} ≤ 0", s.re)));
    }
    if (s - 1.0).norm() < POLE_EXCLUSION {
        return Err(Error::domain("zeta: argument inside the pole-exclusion disk"));
    }
    Ok(())
}

/// Dirichlet eta `η(s) = Σ (−1)^(k) (k+1)^(−s)` with Borwein's Chebyshev
/// acceleration. The term count grows with `|t|` so the `e^(π|t|)` factor
/// of the error bound stays below `10⁻¹⁴`.
fn eta_borwein(s: Complex64) -> Complex64 {
    let t = s.im.abs();
    let rate = (3.0 + 8f64.sqrt()).ln();
    let n = 24 + ((PI * t + 2.0 * (2.0 + t).ln() + 32.0) / rate).ceil() as usize;

    // term_i = n (n+i−1)! 4^i / ((n−i)! (2i)!), kept in log space.
    let nf = n as f64;
    let mut log_terms = Vec::with_capacity(n + 1);
    let mut log_term = nf.ln() - nf.ln(); // i = 0: n·(n−1)!/n! = 1
    log_terms.push(log_term);
    for i in 1..=n {
        let fi = i as f64;
        log_term += ((nf + fi - 1.0) * (nf - fi + 1.0) * 4.0 / ((2.0 * fi) * (2.0 * fi - 1.0))).ln();
        log_terms.push(log_term);
    }
    let max = log_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let scaled: Vec<f64> = log_terms.iter().map(|l| (l - max).exp()).collect();

    // e_k = (d_n − d_k)/d_n as a suffix sum over i > k.
    let d_n: f64 = scaled.iter().sum();
    let mut suffix = vec![0.0; n + 1];
    for k in (0..n).rev() {
        suffix[k] = suffix[k + 1] + scaled[k + 1];
    }

    let mut acc = Complex64::new(0.0, 0.0);
    for k in (0..n).rev() {
        let e_k = suffix[k] / d_n;
        let term = (-s * ((k + 1) as f64).ln()).exp() * e_k;
        if k % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// `ζ(s)` from the partial sum `Σ_{n<N} n^(−s)` plus the Euler–Maclaurin
/// tail. Independent of the eta path; valid on the same domain.
pub fn zeta_euler_maclaurin(s: Complex64) -> Result<Complex64> {
    check_zeta_domain(s)?;
    let big_n = 40 + s.norm().ceil() as u64;
    let nf = big_n as f64;
    let ln_n = nf.ln();

    let mut acc = Complex64::new(0.0, 0.0);
    for n in (1..big_n).rev() {
        acc += (-s * (n as f64).ln()).exp();
    }
    let n_pow = (-s * ln_n).exp();
    acc += n_pow * nf / (s - 1.0);
    acc += n_pow * 0.5;

    // s(s+1)…(s+2k−2) N^(−s−2k+1) B_2k/(2k)!
    let mut poch = s;
    let mut power = n_pow / nf;
    let mut factorial = 2.0;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = k + 1;
        acc += poch * power * (b / factorial);
        let two_k = 2.0 * k as f64;
        poch *= (s + two_k - 1.0) * (s + two_k);
        power /= nf * nf;
        factorial *= (two_k + 1.0) * (two_k + 2.0);
    }
    Ok(acc)
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(x: f64) -> f64 {
    LANCZOS[1..].iter().enumerate().fold(LANCZOS[0], |a, (i, c)| a + c / (x + (i + 1) as f64))
}

/// `Γ(x)` for real `x > 0` (Lanczos, g = 7).
pub fn gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("gamma: x = {x} is not positive")));
    }
    if x < 0.5 {
        return Ok(gamma_real(x + 1.0)? / x);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * lanczos_sum(z))
}

/// `log Γ(x)` for real `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!("ln_gamma: x = {x} is not positive")));
    }
    if x < 0.5 {
        return Ok(ln_gamma(x + 1.0)? - x.ln());
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}

const RHO_BRACKET: (f64, f64) = (1.6, 2.0);
const RHO_MAX_ITER: usize = 200;

/// Real `ζ(x)` for `x > 1`.
pub fn zeta_real(x: f64) -> Result<f64> {
    Ok(zeta_complex(Complex64::new(x, 0.0))?.re)
}

/// The unique `ρ > 1/2` with `ζ(2ρ) = 2`, found by bisection of
/// `x ↦ ζ(x) − 2` on `[1.6, 2]` down to width `tol/100`.
pub fn solve_rho(tol: f64) -> Result<f64> {
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(Error::domain(format!("solve_rho: tol = {tol} outside (0, 1e-6]")));
    }
    let (mut lo, mut hi) = RHO_BRACKET;
    let width = tol * 1e-2;
    for _ in 0..RHO_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= width || mid <= lo || mid >= hi {
            break;
        }
        if zeta_real(mid)? > 2.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    if (zeta_real(x)? - 2.0).abs() > tol {
        return Err(Error::Convergence { what: "solve_rho", iterations: RHO_MAX_ITER });
    }
    Ok(0.5 * x)
}

/// `ρ ≈ 0.8643`, computed once at `tol = 10⁻¹³`.
pub fn rho() -> f64 {
    static RHO: OnceLock<f64> = OnceLock::new();
    *RHO.get_or_init(|| solve_rho(1e-13).expect("bisection on a monotone bracket"))
}
