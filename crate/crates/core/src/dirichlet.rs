//! Dirichlet polynomials: arithmetic, evaluation, calculus, abscissa
//! estimation, translation-number search and smooth-number projections.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sum::{kahan_complex, ComplexKahanSum};

/// Largest index a Dirichlet convolution may produce unless the caller
/// raises the cap.
pub const DEFAULT_INDEX_CAP: u64 = 1_000_000;

/// A finite Dirichlet series `Σ_{n ≥ n0} a_n n^(−s)`.
///
/// Coefficients are stored sparsely and exact zeros are dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletPolynomial {
    n0: u64,
    coeffs: BTreeMap<u64, Complex64>,
}

impl DirichletPolynomial {
    pub fn new<I>(n0: u64, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Complex64)>,
    {
        if n0 == 0 {
            return Err(Error::domain("start index n0 must be at least 1"));
        }
        let mut coeffs = BTreeMap::new();
        for (n, a) in terms {
            if n < n0 {
                return Err(Error::domain(format!("index {n} below start index {n0}")));
            }
            if !a.re.is_finite() || !a.im.is_finite() {
                return Err(Error::domain(format!("non-finite coefficient at index {n}")));
            }
            *coeffs.entry(n).or_insert(Complex64::new(0.0, 0.0)) += a;
        }
        coeffs.retain(|_, a| *a != Complex64::new(0.0, 0.0));
        Ok(DirichletPolynomial { n0, coeffs })
    }

    /// Builds a polynomial whose start index is its smallest index (1 when
    /// empty).
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Complex64)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let n0 = terms.iter().map(|&(n, _)| n).min().unwrap_or(1);
        Self::new(n0, terms)
    }

    /// Real coefficients, convenient for tests and examples.
    pub fn from_real<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, f64)>,
    {
        Self::from_terms(terms.into_iter().map(|(n, a)| (n, Complex64::new(a, 0.0))))
    }

    pub fn zero(n0: u64) -> Self {
        DirichletPolynomial { n0: n0.max(1), coeffs: BTreeMap::new() }
    }

    pub fn n0(&self) -> u64 {
        self.n0
    }

    pub fn coeff(&self, n: u64) -> Complex64 {
        self.coeffs.get(&n).copied().unwrap_or_default()
    }

    /// Nonzero terms in ascending index order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&n, &a)| (n, a))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_index(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_index(&self) -> Option<u64> {
        self.coeffs.keys().next().copied()
    }

    /// `Σ a_n n^(−s)`, summed in ascending `n` with compensation.
    pub fn evaluate(&self, s: Complex64) -> Complex64 {
        kahan_complex(self.terms().map(|(n, a)| a * (-s * (n as f64).ln()).exp()))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.n0, self.terms().map(|(n, a)| (n, a * c))).expect("scaling keeps indices")
    }

    /// Dirichlet convolution with [`DEFAULT_INDEX_CAP`].
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.multiply_capped(other, DEFAULT_INDEX_CAP)
    }

    /// `c_k = Σ_{mn = k} a_m b_n`. Fails instead of truncating when a product
    /// index exceeds `cap`.
    pub fn multiply_capped(&self, other: &Self, cap: u64) -> Result<Self> {
        let mut out: BTreeMap<u64, ComplexKahanSum> = BTreeMap::new();
        for (m, a) in self.terms() {
            for (n, b) in other.terms() {
                let k = m
                    .checked_mul(n)
                    .filter(|&k| k <= cap)
                    .ok_or(Error::IndexOverflow { index: m.saturating_mul(n), cap })?;
                out.entry(k).or_default().add(a * b);
            }
        }
        Self::new(self.n0 * other.n0, out.into_iter().map(|(k, acc)| (k, acc.value())))
    }

    /// Termwise derivative `a_n ↦ −a_n log n`; the index-1 term vanishes.
    pub fn differentiate(&self) -> Self {
        let terms = self.terms().map(|(n, a)| (n, -a * (n as f64).ln()));
        Self::new(self.n0, terms).expect("derivative keeps indices")
    }

    /// The primitive `a_n ↦ −a_n / log n`, the exact inverse of
    /// [`differentiate`](Self::differentiate) on series without a constant term.
    pub fn antiderivative(&self) -> Result<Self> {
        if self.coeff(1) != Complex64::new(0.0, 0.0) {
            return Err(Error::domain("antiderivative needs a vanishing index-1 coefficient"));
        }
        let terms = self.terms().map(|(n, a)| (n, -a / (n as f64).ln()));
        Self::new(self.n0, terms)
    }

    /// Keeps the terms whose index has all its prime factors among the first
    /// `num_primes` primes (index 1 always survives).
    pub fn project_smooth(&self, num_primes: usize) -> Self {
        let primes = first_primes(num_primes);
        let terms = self.terms().filter(|&(n, _)| is_smooth(n, &primes));
        Self::new(self.n0, terms).expect("projection keeps indices")
    }
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if primes.iter().take_while(|&&p| p * p <= candidate).all(|&p| !candidate.is_multiple_of(p)) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

fn is_smooth(mut n: u64, primes: &[u64]) -> bool {
    for &p in primes {
        while n.is_multiple_of(p) {
            n /= p;
        }
    }
    n == 1
}

/// `∏_{j ≤ N} (1 − p_j^(−σ))^(−1)`, the bound on `|Q_N f(s)|` for
/// coefficients of modulus at most one.
pub fn euler_product_bound(num_primes: usize, sigma: f64) -> f64 {
    first_primes(num_primes).iter().map(|&p| 1.0 / (1.0 - (p as f64).powf(-sigma))).product()
}

/// Coefficient generators for abscissa estimation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum CoefficientFamily {
    /// `a_n = 1`, the series of `ζ(s)`.
    Zeta,
    /// `a_n = n^(−1/2−ε)`, the series of `ζ(s + 1/2 + ε)`.
    ShiftedZeta { eps: f64 },
    /// A finite table; the series is entire.
    Table(DirichletPolynomial),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRule {
    pub family: CoefficientFamily,
    pub horizon: u64,
}

impl CoefficientRule {
    pub fn coefficient(&self, n: u64) -> Complex64 {
        match &self.family {
            CoefficientFamily::Zeta => Complex64::new(1.0, 0.0),
            CoefficientFamily::ShiftedZeta { eps } => Complex64::new((n as f64).powf(-0.5 - eps), 0.0),
            CoefficientFamily::Table(p) => p.coeff(n),
        }
    }
}

/// An abscissa estimate; entire series report `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Abscissa {
    NegInfinity,
    Finite(f64),
}

impl Abscissa {
    pub fn value(self) -> f64 {
        match self {
            Abscissa::NegInfinity => f64::NEG_INFINITY,
            Abscissa::Finite(x) => x,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbscissaReport {
    pub sigma_c: Abscissa,
    pub sigma_a: Abscissa,
    /// Abscissa of boundedness, equal to that of uniform convergence.
    pub sigma_b: Abscissa,
    pub horizon: u64,
    /// Disagreement between the three-point extrapolated exponent and the
    /// plain least-squares slope of the partial sums, maximised over the
    /// three estimates.
    pub residual: f64,
}

/// Number of ordinates used for the uniform-convergence sup.
const UNIFORM_T_SAMPLES: usize = 256;
const UNIFORM_T_MAX: f64 = 1000.0;

/// Estimates `σ_c`, `σ_a` and `σ_b = σ_u` from partial sums up to the
/// horizon `N` on the dyadic ladder `N/4, N/2, N`.
///
/// For increments `D_k = S(2^k M) − S(2^(k−1) M)` of partial sums that behave
/// like `A·N^β + C`, the exponent `β = log₂(D₂/D₁)` is exact; it gives the
/// abscissa whether the series diverges (`β > 0`) or converges with a tail of
/// order `N^β`.
pub fn estimate_abscissae(rule: &CoefficientRule) -> Result<AbscissaReport> {
    if let CoefficientFamily::Table(_) = rule.family {
        return Ok(AbscissaReport {
            sigma_c: Abscissa::NegInfinity,
            sigma_a: Abscissa::NegInfinity,
            sigma_b: Abscissa::NegInfinity,
            horizon: rule.horizon,
            residual: 0.0,
        });
    }
    if rule.horizon < 1000 {
        return Err(Error::domain(format!("abscissa horizon {} < 1000", rule.horizon)));
    }
    let big_n = rule.horizon;
    let m = big_n / 4;
    let ladder = [m, 2 * m, 4 * m];

    let coeffs: Vec<Complex64> = (1..=big_n).map(|n| rule.coefficient(n)).collect();
    let partial = |upto: u64, f: &dyn Fn(Complex64) -> Complex64| -> Complex64 {
        kahan_complex(coeffs[..upto as usize].iter().map(|&a| f(a)))
    };

    let abs_sums: Vec<f64> = ladder.iter().map(|&n| partial(n, &|a| Complex64::new(a.norm(), 0.0)).re).collect();
    let plain_sums: Vec<Complex64> = ladder.iter().map(|&n| partial(n, &|a| a)).collect();

    let (sigma_a, res_a) = exponent_from_sums(abs_sums[1] - abs_sums[0], abs_sums[2] - abs_sums[1], &ladder, &abs_sums);
    let (sigma_c, res_c) = exponent_from_sums(
        (plain_sums[1] - plain_sums[0]).norm(),
        (plain_sums[2] - plain_sums[1]).norm(),
        &ladder,
        &plain_sums.iter().map(|z| z.norm()).collect::<Vec<_>>(),
    );

    // Uniform tail: sup over ordinates of dyadic block sums.
    let block_sup = |lo: u64, hi: u64| -> f64 {
        (0..UNIFORM_T_SAMPLES)
            .map(|k| {
                let t = UNIFORM_T_MAX * k as f64 / (UNIFORM_T_SAMPLES - 1) as f64;
                kahan_complex(
                    (lo + 1..=hi).map(|n| coeffs[n as usize - 1] * Complex64::new(0.0, -t * (n as f64).ln()).exp()),
                )
                .norm()
            })
            .fold(0.0, f64::max)
    };
    let b1 = block_sup(m, 2 * m);
    let b2 = block_sup(2 * m, 4 * m);
    let sigma_u = if b1 > 0.0 && b2 > 0.0 { (b2 / b1).log2() } else { f64::NEG_INFINITY };

    // σ_c ≤ σ_u = σ_b ≤ σ_a
    let sigma_c = sigma_c.min(sigma_a);
    let sigma_b = sigma_u.clamp(sigma_c, sigma_a);

    Ok(AbscissaReport {
        sigma_c: Abscissa::Finite(sigma_c),
        sigma_a: Abscissa::Finite(sigma_a),
        sigma_b: Abscissa::Finite(sigma_b),
        horizon: big_n,
        residual: res_a.max(res_c),
    })
}

fn exponent_from_sums(d1: f64, d2: f64, ladder: &[u64; 3], sums: &[f64]) -> (f64, f64) {
    if d1 <= 0.0 || d2 <= 0.0 {
        return (f64::NEG_INFINITY, 0.0);
    }
    let beta = (d2 / d1).log2();
    // Least-squares slope of log S against log N, meaningful when S grows.
    let xs: Vec<f64> = ladder.iter().map(|&n| (n as f64).ln()).collect();
    let ys: Vec<f64> = sums.iter().map(|&s| s.abs().max(f64::MIN_POSITIVE).ln()).collect();
    let xm = xs.iter().sum::<f64>() / 3.0;
    let ym = ys.iter().sum::<f64>() / 3.0;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xm) * (y - ym)).sum();
    let den: f64 = xs.iter().map(|x| (x - xm) * (x - xm)).sum();
    let slope = num / den;
    let residual = if beta > 0.0 { (slope - beta).abs() } else { 0.0 };
    (beta, residual)
}

/// Number of ordinates on which translation discrepancies are sampled.
pub const TRANSLATION_T_SAMPLES: usize = 2048;
pub const TRANSLATION_T_RANGE: f64 = 100.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslationReport {
    /// Grid points `τ` that are `eps`-translation numbers on the sample set.
    pub taus: Vec<f64>,
    /// Smallest sampled sup-discrepancy among nonzero grid points.
    pub min_discrepancy: f64,
}

/// Scans `τ` over `window` with spacing `step`, keeping those with
/// `sup |f(s + iτ) − f(s)| ≤ eps`, the sup taken over
/// `σ ∈ {σ₀, σ₀+1, σ₀+10}` and a fixed ordinate grid on `[−100, 100]`.
pub fn translation_numbers(
    f: &DirichletPolynomial,
    sigma0: f64,
    eps: f64,
    window: (f64, f64),
    step: f64,
) -> Result<TranslationReport> {
    if !(eps > 0.0) || !(step > 0.0) || !sigma0.is_finite() || !(window.1 >= window.0) {
        return Err(Error::domain("translation_numbers: need eps > 0, step > 0 and a finite window"));
    }
    let logs: Vec<f64> = f.terms().map(|(n, _)| (n as f64).ln()).collect();
    let coeffs: Vec<Complex64> = f.terms().map(|(_, a)| a).collect();

    // Sample rows a_n n^(−s); ordinates visited in a strided order so that
    // early exits see spread-out t first.
    let stride = 997;
    let mut samples: Vec<Vec<Complex64>> = Vec::with_capacity(3 * TRANSLATION_T_SAMPLES);
    for sigma in [sigma0, sigma0 + 1.0, sigma0 + 10.0] {
        for k in 0..TRANSLATION_T_SAMPLES {
            let j = (k * stride) % TRANSLATION_T_SAMPLES;
            let t = -TRANSLATION_T_RANGE + 2.0 * TRANSLATION_T_RANGE * j as f64 / (TRANSLATION_T_SAMPLES - 1) as f64;
            let s = Complex64::new(sigma, t);
            samples.push(coeffs.iter().zip(&logs).map(|(a, l)| a * (-s * l).exp()).collect());
        }
    }

    let count = ((window.1 - window.0) / step + 1e-9).floor() as u64 + 1;
    let mut taus = Vec::new();
    let mut best = f64::INFINITY;
    let mut shifts = vec![Complex64::default(); logs.len()];
    for k in 0..count {
        let tau = window.0 + k as f64 * step;
        for (u, l) in shifts.iter_mut().zip(&logs) {
            *u = Complex64::new(0.0, -tau * l).exp() - 1.0;
        }
        let threshold = eps.max(best);
        let mut sup: f64 = 0.0;
        for row in &samples {
            let d: Complex64 = row.iter().zip(&shifts).map(|(v, u)| v * u).sum();
            sup = sup.max(d.norm());
            if sup > threshold {
                break;
            }
        }
        if sup <= eps {
            taus.push(tau);
        }
        if tau != 0.0 && sup <= threshold {
            best = best.min(sup);
        }
    }
    Ok(TranslationReport { taus, min_discrepancy: best })
}

/// Exact translation numbers of a single monomial `n^(−s)`: `2πk / log n`.
pub fn monomial_period(n: u64) -> f64 {
    2.0 * PI / (n as f64).ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(terms: &[(u64, f64)]) -> DirichletPolynomial {
        DirichletPolynomial::from_real(terms.iter().copied()).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(poly(&[(1, 1.0)]).evaluate(c(3.0, -7.0)), c(1.0, 0.0));
        assert!((poly(&[(2, 1.0)]).evaluate(c(0.0, 0.0)) - 1.0).norm() < 1e-15);
        assert!((poly(&[(2, 1.0), (4, 1.0)]).evaluate(c(1.0, 0.0)) - 0.75).norm() < 1e-15);
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(poly(&[(2, 1.0)]).multiply(&poly(&[(3, 1.0)])).unwrap(), poly(&[(6, 1.0)]));
        let f = poly(&[(2, 1.5), (5, -2.0)]);
        let unit = poly(&[(1, 1.0)]);
        let prod = unit.multiply(&f).unwrap();
        assert_eq!(prod.terms().collect::<Vec<_>>(), f.terms().collect::<Vec<_>>());
        let g = poly(&[(1, 1.0), (2, 1.0)]);
        assert_eq!(g.multiply(&g).unwrap(), poly(&[(1, 1.0), (2, 2.0), (4, 1.0)]));
    }

    #[test]
    fn multiply_overflow_is_an_error() {
        let f = poly(&[(1000, 1.0)]);
        let g = poly(&[(1001, 1.0)]);
        assert!(matches!(f.multiply(&g), Err(Error::IndexOverflow { index: 1_001_000, .. })));
        assert!(f.multiply_capped(&g, 2_000_000).is_ok());
    }

    #[test]
    fn derivative_examples() {
        let d = poly(&[(7, 1.0)]).differentiate();
        assert_eq!(d.coeff(7), c(-(7f64).ln(), 0.0));
        assert!(poly(&[(1, 3.0)]).differentiate().is_empty());
    }

    #[test]
    fn antiderivative_examples() {
        let f = poly(&[(2, -(2f64).ln())]);
        assert!((f.antiderivative().unwrap().coeff(2) - 1.0).norm() < 1e-15);
        assert!(DirichletPolynomial::zero(2).antiderivative().unwrap().is_empty());
        let g = poly(&[(2, 1.0), (6, -3.0)]);
        let back = g.antiderivative().unwrap().differentiate();
        for (n, a) in g.terms() {
            assert!((back.coeff(n) - a).norm() <= 1e-15 * a.norm());
        }
        assert!(poly(&[(1, 1.0), (2, 1.0)]).antiderivative().is_err());
    }

    #[test]
    fn construction_checks() {
        assert!(DirichletPolynomial::new(0, []).is_err());
        assert!(DirichletPolynomial::new(3, [(2, c(1.0, 0.0))]).is_err());
        assert!(DirichletPolynomial::new(1, [(2, c(f64::NAN, 0.0))]).is_err());
        let p = DirichletPolynomial::new(1, [(4, c(1.0, 0.0)), (4, c(-1.0, 0.0))]).unwrap();
        assert!(p.is_empty());
    }

    #[test]
    fn smooth_projection_examples() {
        let f = DirichletPolynomial::from_real((1..=10).map(|n| (n, 1.0))).unwrap();
        // 2-smooth integers ≤ 10, enumerated by hand.
        let kept: Vec<u64> = f.project_smooth(1).terms().map(|(n, _)| n).collect();
        assert_eq!(kept, vec![1, 2, 4, 8]);
        assert_eq!(f.project_smooth(4), f);
        let six = poly(&[(6, 1.0)]);
        assert!(six.project_smooth(1).is_empty());
        assert!(!six.project_smooth(2).is_empty());
        assert_eq!(poly(&[(1, 2.0), (3, 1.0)]).project_smooth(0), poly(&[(1, 2.0)]));
    }

    #[test]
    fn primes() {
        assert_eq!(first_primes(6), vec![2, 3, 5, 7, 11, 13]);
        assert!(first_primes(0).is_empty());
    }

    #[test]
    fn abscissae_of_zeta() {
        let r = estimate_abscissae(&CoefficientRule { family: CoefficientFamily::Zeta, horizon: 100_000 }).unwrap();
        assert!((r.sigma_a.value() - 1.0).abs() < 0.05);
        assert!((r.sigma_c.value() - 1.0).abs() < 0.05);
        assert!((r.sigma_b.value() - 1.0).abs() < 0.05);
    }

    #[test]
    fn abscissae_of_shifted_zeta() {
        let rule = CoefficientRule { family: CoefficientFamily::ShiftedZeta { eps: 0.25 }, horizon: 100_000 };
        let r = estimate_abscissae(&rule).unwrap();
        // Oracle: Σ_{n≤N} n^(−3/4) grows like 4 N^(1/4); slope of the
        // increments on the ladder.
        let s = |n: u64| (1..=n).map(|k| (k as f64).powf(-0.75)).sum::<f64>();
        let (a, b, cc) = (s(25_000), s(50_000), s(100_000));
        let oracle = ((cc - b) / (b - a)).log2();
        assert!((oracle - 0.25).abs() < 0.05);
        assert!((r.sigma_a.value() - oracle).abs() < 1e-9);
        let (sc, sa, sb) = (r.sigma_c.value(), r.sigma_a.value(), r.sigma_b.value());
        assert!(sc <= sa && sa <= sc + 1.0 + r.residual);
        assert!(sc <= sb && sb <= sa);
    }

    #[test]
    fn abscissae_of_table_are_neg_infinity() {
        let rule = CoefficientRule { family: CoefficientFamily::Table(poly(&[(2, 1.0)])), horizon: 10 };
        let r = estimate_abscissae(&rule).unwrap();
        assert_eq!(r.sigma_a, Abscissa::NegInfinity);
        assert_eq!(r.sigma_c, Abscissa::NegInfinity);
        assert_eq!(r.sigma_b, Abscissa::NegInfinity);
    }

    #[test]
    fn abscissa_horizon_precondition() {
        let rule = CoefficientRule { family: CoefficientFamily::Zeta, horizon: 999 };
        assert!(estimate_abscissae(&rule).is_err());
    }

    #[test]
    fn monomial_translation_numbers() {
        let f = poly(&[(2, 1.0)]);
        let period = monomial_period(2);
        let report = translation_numbers(&f, 0.0, 1e-3, (0.0, 30.0), 1e-3).unwrap();
        assert_eq!(report.taus[0], 0.0);
        for k in 1..=3 {
            let target = k as f64 * period;
            assert!(report.taus.iter().any(|&tau| (tau - target).abs() <= 1e-3), "k = {k}");
        }
        // Nothing passes halfway between periods.
        assert!(report.taus.iter().all(|&tau| (tau - 0.5 * period).abs() > 0.1));
    }

    #[test]
    fn two_term_translation_numbers_nonempty() {
        let f = poly(&[(2, 1.0), (3, 1.0)]);
        let report = translation_numbers(&f, 0.0, 0.1, (0.0, 200.0), 1e-3).unwrap();
        assert!(report.taus.iter().any(|&tau| tau > 1.0));
        // Dense-scan oracle: both phases near 0 mod 2π at some τ ≤ 200.
        let hit = (1..2_000_000).map(|k| k as f64 * 1e-4).find(|&tau| {
            let d2 = (Complex64::new(0.0, -tau * 2f64.ln()).exp() - 1.0).norm();
            let d3 = (Complex64::new(0.0, -tau * 3f64.ln()).exp() - 1.0).norm();
            tau > 1.0 && d2 + d3 <= 0.1
        });
        assert!(hit.is_some());
        assert!(report.min_discrepancy <= 0.1);
    }

    #[test]
    fn translation_argument_checks() {
        let f = poly(&[(2, 1.0)]);
        assert!(translation_numbers(&f, 0.0, 0.0, (0.0, 1.0), 0.1).is_err());
        assert!(translation_numbers(&f, 0.0, 0.1, (0.0, 1.0), 0.0).is_err());
    }

    fn small_poly() -> impl Strategy<Value = DirichletPolynomial> {
        prop::collection::vec((1u64..40, -2.0..2.0f64, -2.0..2.0f64), 1..6)
            .prop_map(|v| DirichletPolynomial::new(1, v.into_iter().map(|(n, a, b)| (n, c(a, b)))).unwrap())
    }

    proptest! {
        #[test]
        fn evaluation_is_multiplicative(f in small_poly(), g in small_poly(), sigma in -1.0..3.0f64, t in -30.0..30.0f64) {
            let s = c(sigma, t);
            let lhs = f.multiply(&g).unwrap().evaluate(s);
            let rhs = f.evaluate(s) * g.evaluate(s);
            prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        }

        #[test]
        fn smooth_projection_is_idempotent(f in small_poly(), primes in 0usize..6) {
            let once = f.project_smooth(primes);
            prop_assert_eq!(once.project_smooth(primes), once);
        }

        #[test]
        fn euler_product_bounds_projection(
            coeffs in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 60),
            primes in 1usize..5,
            sigma in 0.5..3.0f64,
            t in -50.0..50.0f64,
        ) {
            // |a_n| ≤ 1
            let f = DirichletPolynomial::new(1, coeffs.iter().enumerate().map(|(i, &(a, b))| {
                let z = c(a, b);
                (i as u64 + 1, if z.norm() > 1.0 { z / z.norm() } else { z })
            })).unwrap();
            let value = f.project_smooth(primes).evaluate(c(sigma, t)).norm();
            prop_assert!(value <= euler_product_bound(primes, sigma) + 1e-10);
        }
    }
}
