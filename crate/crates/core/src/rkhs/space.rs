use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dirichlet::DirichletPolynomial;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::specialfn::{rho, zeta_complex, zeta_real, ComplexPoint, HalfPlane};
use crate::sum::{kahan, kahan_complex};
use crate::weights::WeightSequence;

pub const DEFAULT_KERNEL_TRUNCATION: u64 = 10_000;

/// Tail bounds above this fraction of `|k(s, u)|` raise the warning flag.
pub const TAIL_WARNING_RATIO: f64 = 1e-6;

/// The space `H_w` together with the truncation used for its kernel.
#[derive(Debug, Clone)]
pub struct SpaceHandle {
    weights: WeightSequence,
    n0: u64,
    kernel_truncation: u64,
    cache: OnceLock<Vec<f64>>,
}

/// A truncated kernel value with its tail bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelValue {
    pub truncated: Complex64,
    /// Bound on `|k(s,u) − truncated|`.
    pub tail_bound: f64,
    /// `1/(2 − ζ(s + ū))`, only for the Pick weights with `n0 = 1`.
    pub closed_form: Option<Complex64>,
    pub warning: bool,
}

impl KernelValue {
    /// The closed form when there is one, otherwise the truncated sum.
    pub fn value(&self) -> Complex64 {
        self.closed_form.unwrap_or(self.truncated)
    }
}

impl SpaceHandle {
    pub fn new(weights: WeightSequence) -> Self {
        let n0 = weights.default_n0();
        SpaceHandle { weights, n0, kernel_truncation: DEFAULT_KERNEL_TRUNCATION, cache: OnceLock::new() }
    }

    pub fn with_n0(mut self, n0: u64) -> Result<Self> {
        if n0 < self.weights.min_index() {
            return Err(Error::domain(format!("{} is undefined below n = {}", self.weights, self.weights.min_index())));
        }
        if n0 > self.kernel_truncation {
            return Err(Error::domain("n0 exceeds the kernel truncation"));
        }
        self.n0 = n0;
        self.cache = OnceLock::new();
        Ok(self)
    }

    pub fn with_kernel_truncation(mut self, n_k: u64) -> Result<Self> {
        if n_k < self.n0 || n_k < 2 {
            return Err(Error::domain(format!("kernel truncation {n_k} below n0 = {}", self.n0)));
        }
        self.kernel_truncation = n_k;
        self.cache = OnceLock::new();
        Ok(self)
    }

    pub fn weights(&self) -> &WeightSequence {
        &self.weights
    }

    pub fn n0(&self) -> u64 {
        self.n0
    }

    pub fn kernel_truncation(&self) -> u64 {
        self.kernel_truncation
    }

    fn base_and_layers(&self) -> (&WeightSequence, i32) {
        let mut w = &self.weights;
        let mut layers = 0;
        while let WeightSequence::FlatSharp(inner) = w {
            w = inner;
            layers += 1;
        }
        (w, layers)
    }

    /// `Ω_ρ` for the Pick weights, `Ω_{1/2}` otherwise.
    pub fn half_plane(&self) -> HalfPlane {
        match self.base_and_layers().0 {
            WeightSequence::PickReciprocal => HalfPlane { rho: rho() },
            _ => HalfPlane { rho: 0.5 },
        }
    }

    fn table(&self) -> &[f64] {
        self.cache.get_or_init(|| {
            self.weights.table(self.n0, self.kernel_truncation).expect("weights are defined from n0 on")
        })
    }

    /// `w_n`, from the cache when `n ≤ N_k`.
    pub fn weight(&self, n: u64) -> Result<f64> {
        if n < self.n0 {
            return Err(Error::domain(format!("index {n} below n0 = {}", self.n0)));
        }
        if n <= self.kernel_truncation {
            Ok(self.table()[(n - self.n0) as usize])
        } else {
            self.weights.weight(n)
        }
    }

    fn check_indices(&self, f: &DirichletPolynomial) -> Result<()> {
        match f.min_index() {
            Some(n) if n < self.n0 => Err(Error::domain(format!("index {n} below n0 = {}", self.n0))),
            _ => Ok(()),
        }
    }

    /// `‖f‖ = (Σ |a_n|² w_n)^(1/2)`.
    pub fn norm(&self, f: &DirichletPolynomial) -> Result<f64> {
        self.check_indices(f)?;
        let terms: Result<Vec<f64>> = f.terms().map(|(n, a)| Ok(a.norm_sqr() * self.weight(n)?)).collect();
        Ok(kahan(terms?).sqrt())
    }

    /// `⟨f, g⟩ = Σ a_n conj(b_n) w_n`.
    pub fn inner_product(&self, f: &DirichletPolynomial, g: &DirichletPolynomial) -> Result<Complex64> {
        self.check_indices(f)?;
        self.check_indices(g)?;
        let terms: Result<Vec<Complex64>> = f
            .terms()
            .filter_map(|(n, a)| {
                let b = g.coeff(n);
                (b != Complex64::default()).then_some((n, a, b))
            })
            .map(|(n, a, b)| Ok(a * b.conj() * self.weight(n)?))
            .collect();
        Ok(kahan_complex(terms?))
    }

    fn check_point(&self, s: ComplexPoint) -> Result<()> {
        let h = self.half_plane();
        if !h.contains(s) {
            return Err(Error::domain(format!("point {} + {}i outside Ω_{}", s.sigma, s.t, h.rho)));
        }
        Ok(())
    }

    /// `k(s, u) = Σ_{n0 ≤ n ≤ N_k} n^(−s−ū) / w_n` with an integral-comparison
    /// bound on the omitted tail.
    pub fn kernel(&self, s: ComplexPoint, u: ComplexPoint) -> Result<KernelValue> {
        self.check_point(s)?;
        self.check_point(u)?;
        let z = s.to_complex() + u.to_complex().conj();
        let w = self.table();
        let truncated =
            kahan_complex((self.n0..=self.kernel_truncation).zip(w).map(|(n, &wn)| (-z * (n as f64).ln()).exp() / wn));
        let tail_bound = self.tail_bound(z.re)?;
        let closed_form = match self.weights {
            WeightSequence::PickReciprocal if self.n0 == 1 => Some(1.0 / (2.0 - zeta_complex(z)?)),
            _ => None,
        };
        let magnitude = closed_form.unwrap_or(truncated).norm();
        Ok(KernelValue { truncated, tail_bound, closed_form, warning: !(tail_bound <= TAIL_WARNING_RATIO * magnitude) })
    }

    /// Bound on `Σ_{n > N_k} n^(−x) / w_n`.
    fn tail_bound(&self, x: f64) -> Result<f64> {
        let big_n = self.kernel_truncation as f64;
        let log_n = big_n.ln();
        let (base, layers) = self.base_and_layers();
        match base {
            WeightSequence::PickReciprocal => {
                // Rankin: Σ_{n>N} F(n) n^(−x) ≤ N^(y−x) / (2 − ζ(y)) for 2ρ < y < x.
                let lo = 2.0 * rho();
                if x <= lo {
                    return Ok(f64::INFINITY);
                }
                let mut best = f64::INFINITY;
                for k in 1..64 {
                    let y = lo + (x - lo) * k as f64 / 64.0;
                    best = best.min(big_n.powf(y - x) / (2.0 - zeta_real(y)?));
                }
                Ok(best * log_n.powi(-2 * layers))
            }
            _ => {
                let (k, a) = self.weights.reciprocal_log_bound().expect("non-Pick weights have a log bound");
                // (log t)^a t^(−x) must decrease on [N, ∞) and the integral converge.
                let denom = x - 1.0 - a.max(0.0) / log_n;
                if denom <= 0.0 || (a > 0.0 && log_n < a / x) {
                    return Ok(f64::INFINITY);
                }
                Ok(k * log_n.powf(a) * big_n.powf(1.0 - x) / denom)
            }
        }
    }

    /// Coefficients `n^(−ū)/w_n` of the truncated kernel function `k_u`.
    pub fn kernel_function(&self, u: ComplexPoint) -> Result<DirichletPolynomial> {
        self.check_point(u)?;
        let ubar = u.to_complex().conj();
        let w = self.table();
        DirichletPolynomial::new(
            self.n0,
            (self.n0..=self.kernel_truncation).zip(w).map(|(n, &wn)| (n, (-ubar * (n as f64).ln()).exp() / wn)),
        )
    }

    /// `[k(λ_i, λ_j)]`, using the closed form for the Pick weights and the
    /// truncated sums (a Gram matrix of truncated kernel functions) otherwise.
    pub fn kernel_matrix(&self, nodes: &[ComplexPoint]) -> Result<CMatrix> {
        for &p in nodes {
            self.check_point(p)?;
        }
        let k = nodes.len();
        if matches!(self.weights, WeightSequence::PickReciprocal) && self.n0 == 1 {
            let mut m = CMatrix::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    let z = nodes[i].to_complex() + nodes[j].to_complex().conj();
                    m[(i, j)] = 1.0 / (2.0 - zeta_complex(z)?);
                }
            }
            return Ok(m);
        }
        Ok(self.truncated_kernel_matrix(nodes))
    }

    /// `V V*` with `V_{i,n} = n^(−λ_i) / √w_n`.
    pub fn truncated_kernel_matrix(&self, nodes: &[ComplexPoint]) -> CMatrix {
        let w = self.table();
        let len = w.len();
        let v = CMatrix::from_fn(nodes.len(), len, |i, j| {
            let n = (self.n0 + j as u64) as f64;
            (-nodes[i].to_complex() * n.ln()).exp() / w[j].sqrt()
        });
        &v * v.adjoint()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::HalfLineMeasure;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn poly(terms: &[(u64, f64)]) -> DirichletPolynomial {
        DirichletPolynomial::from_real(terms.iter().copied()).unwrap()
    }

    #[test]
    fn norm_examples() {
        let h0 = SpaceHandle::new(WeightSequence::log_power(0.0));
        assert_relative_eq!(h0.norm(&poly(&[(5, 1.0)])).unwrap(), 1.0);
        let h1 = SpaceHandle::new(WeightSequence::log_power(1.0));
        assert_relative_eq!(h1.norm(&poly(&[(2, 1.0), (3, 1.0)])).unwrap(), 6f64.ln().sqrt(), max_relative = 1e-15);
        let pick = SpaceHandle::new(WeightSequence::PickReciprocal);
        assert_relative_eq!(pick.norm(&poly(&[(4, 1.0)])).unwrap(), 0.5f64.sqrt(), max_relative = 1e-15);
        assert!(h1.norm(&poly(&[(1, 1.0)])).is_err());
    }

    #[test]
    fn inner_product_examples() {
        let h = SpaceHandle::new(WeightSequence::log_power(0.5));
        let f =
            DirichletPolynomial::from_terms([(2, Complex64::new(1.0, 2.0)), (5, Complex64::new(-0.5, 0.25))]).unwrap();
        let g =
            DirichletPolynomial::from_terms([(2, Complex64::new(0.3, -1.0)), (7, Complex64::new(1.0, 0.0))]).unwrap();
        assert_eq!(h.inner_product(&poly(&[(2, 1.0)]), &poly(&[(3, 1.0)])).unwrap(), Complex64::default());
        assert_relative_eq!(h.inner_product(&f, &f).unwrap().re, h.norm(&f).unwrap().powi(2), max_relative = 1e-14);
        let fg = h.inner_product(&f, &g).unwrap();
        let gf = h.inner_product(&g, &f).unwrap();
        assert_relative_eq!(fg.re, gf.re, max_relative = 1e-15);
        assert_relative_eq!(fg.im, -gf.im, max_relative = 1e-15);
    }

    #[test]
    fn zeta_kernel() {
        let h = SpaceHandle::new(WeightSequence::log_power(0.0)).with_n0(1).unwrap();
        let k = h.kernel(ComplexPoint::real(1.0), ComplexPoint::real(1.0)).unwrap();
        let exact = PI * PI / 6.0;
        assert!((k.truncated.re - exact).abs() <= k.tail_bound);
        assert!((k.truncated.re - exact).abs() > 0.5 * k.tail_bound, "integral bound should be tight here");
    }

    #[test]
    fn kernel_is_hermitian() {
        let spaces = [
            SpaceHandle::new(WeightSequence::log_power(-1.0)),
            SpaceHandle::new(WeightSequence::moment(HalfLineMeasure::mu_alpha(-0.5).unwrap())),
            SpaceHandle::new(WeightSequence::PickReciprocal),
        ];
        let s = ComplexPoint::new(1.3, 2.0).unwrap();
        let u = ComplexPoint::new(1.1, -4.5).unwrap();
        for h in spaces {
            let a = h.kernel(s, u).unwrap().value();
            let b = h.kernel(u, s).unwrap().value();
            assert!((a - b.conj()).norm() <= 1e-12 * a.norm());
        }
    }

    #[test]
    fn pick_kernel_closed_form_within_tail() {
        let h = SpaceHandle::new(WeightSequence::PickReciprocal);
        let k = h.kernel(ComplexPoint::real(1.0), ComplexPoint::real(1.0)).unwrap();
        let closed = k.closed_form.unwrap();
        assert_relative_eq!(closed.re, 1.0 / (2.0 - PI * PI / 6.0), max_relative = 1e-12);
        assert!((closed - k.truncated).norm() <= k.tail_bound);
        assert!(k.warning);
    }

    #[test]
    fn reproducing_property() {
        let h = SpaceHandle::new(WeightSequence::moment(HalfLineMeasure::new(0.2, None).unwrap()))
            .with_kernel_truncation(500)
            .unwrap();
        let f = DirichletPolynomial::from_terms([
            (2, Complex64::new(1.0, -1.0)),
            (9, Complex64::new(0.5, 0.0)),
            (400, Complex64::new(0.0, 3.0)),
        ])
        .unwrap();
        let u = ComplexPoint::new(0.8, 3.0).unwrap();
        let ku = h.kernel_function(u).unwrap();
        let lhs = h.inner_product(&f, &ku).unwrap();
        let rhs = f.evaluate(u.to_complex());
        assert!((lhs - rhs).norm() <= 1e-13 * rhs.norm());
    }

    #[test]
    fn domain_checks() {
        let h = SpaceHandle::new(WeightSequence::log_power(0.0));
        assert!(h.kernel(ComplexPoint::real(0.5), ComplexPoint::real(1.0)).is_err());
        let p = SpaceHandle::new(WeightSequence::PickReciprocal);
        assert!(p.kernel(ComplexPoint::real(0.85), ComplexPoint::real(1.0)).is_err());
        assert!(p.kernel(ComplexPoint::real(0.87), ComplexPoint::real(1.0)).is_ok());
        assert!(SpaceHandle::new(WeightSequence::log_power(1.0)).with_n0(1).is_err());
        assert!(h.clone().with_kernel_truncation(1).is_err());
    }

    #[test]
    fn tail_bounds_cover_truncation_error() {
        let s = ComplexPoint::new(0.9, 1.0).unwrap();
        for w in [
            WeightSequence::log_power(2.0),
            WeightSequence::log_power(-1.5),
            WeightSequence::flat_sharp(WeightSequence::log_power(0.0)),
            WeightSequence::moment(HalfLineMeasure::mu_alpha(-2.5).unwrap()),
        ] {
            let coarse = SpaceHandle::new(w.clone()).with_kernel_truncation(2_000).unwrap();
            let fine = SpaceHandle::new(w.clone()).with_kernel_truncation(200_000).unwrap();
            let kc = coarse.kernel(s, s).unwrap();
            let kf = fine.kernel(s, s).unwrap();
            let missing = (kf.truncated - kc.truncated).norm();
            assert!(missing <= kc.tail_bound, "{w}: {missing} > {}", kc.tail_bound);
        }
    }
}
