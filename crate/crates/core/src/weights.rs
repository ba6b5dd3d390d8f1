//! Weight sequences `w_n`, half-line measures and their moments.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rkhs::factorizations::ordered_factorizations;
use crate::specialfn::{gamma_real, ln_gamma};

/// The density `2^(−α)/Γ(−α) σ^(−1−α) dσ` (α < 0), times `scale`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaDensity {
    pub alpha: f64,
    pub scale: f64,
}

/// A measure on `[0, ∞)`: a point mass at the origin plus an optional
/// `μ_α` density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalfLineMeasure {
    point_mass: f64,
    density: Option<AlphaDensity>,
}

impl HalfLineMeasure {
    /// Checks that 0 lies in the support and that `∫ 4^(−σ) dμ(σ)` is
    /// finite (the moment condition with `n₀ = 2`).
    pub fn new(point_mass: f64, density: Option<AlphaDensity>) -> Result<Self> {
        if !(point_mass >= 0.0) || !point_mass.is_finite() {
            return Err(Error::domain(format!("point mass {point_mass} must be finite and ≥ 0")));
        }
        if let Some(d) = density {
            if !(d.alpha < 0.0) || !d.alpha.is_finite() {
                return Err(Error::domain(format!("μ_α needs α < 0, got {}", d.alpha)));
            }
            if !(d.scale > 0.0) || !d.scale.is_finite() {
                return Err(Error::domain(format!("density scale {} must be > 0", d.scale)));
            }
        }
        if point_mass == 0.0 && density.is_none() {
            return Err(Error::domain("0 must lie in the support of the measure"));
        }
        let m = HalfLineMeasure { point_mass, density };
        let moment = m.laplace(2.0 * 2f64.ln())?;
        if !moment.is_finite() {
            return Err(Error::domain("measure fails the finite-moment condition"));
        }
        Ok(m)
    }

    /// The unit point mass `μ₀` at the origin.
    pub fn point_mass(mass: f64) -> Result<Self> {
        Self::new(mass, None)
    }

    pub fn mu_alpha(alpha: f64) -> Result<Self> {
        Self::new(0.0, Some(AlphaDensity { alpha, scale: 1.0 }))
    }

    pub fn point_mass_at_zero(&self) -> f64 {
        self.point_mass
    }

    pub fn density(&self) -> Option<AlphaDensity> {
        self.density
    }

    pub fn has_point_mass(&self) -> bool {
        self.point_mass > 0.0
    }

    /// `∫ e^(−xσ) dμ(σ)` in closed form. The density part reduces, via
    /// `u = xσ`, to `2^(−α)/Γ(−α) · Γ(−α) x^α`.
    pub fn laplace(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::domain(format!("laplace transform at x = {x} < 0")));
        }
        let mut total = self.point_mass;
        if let Some(d) = self.density {
            if x == 0.0 {
                return Err(Error::domain("μ_α has infinite total mass; index 1 is not admissible"));
            }
            let g = gamma_real(-d.alpha)?;
            total += d.scale * (2f64.powf(-d.alpha) / g) * g * x.powf(d.alpha);
        }
        Ok(total)
    }

    /// The same transform with the density integral done by 64-node
    /// generalized Gauss–Laguerre quadrature; kept as a cross-check of the
    /// closed form.
    pub fn laplace_quadrature(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::domain(format!("quadrature transform needs x > 0, got {x}")));
        }
        let mut total = self.point_mass;
        if let Some(d) = self.density {
            let (_, weights) = gauss_laguerre(64, -1.0 - d.alpha)?;
            let integral: f64 = weights.iter().sum();
            let norm = (-d.alpha * 2f64.ln() - ln_gamma(-d.alpha)?).exp();
            total += d.scale * norm * integral * x.powf(d.alpha);
        }
        Ok(total)
    }
}

/// `w_n = ∫ n^(−2σ) dμ(σ)`.
pub fn moment_weight(measure: &HalfLineMeasure, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("index 0"));
    }
    measure.laplace(2.0 * (n as f64).ln())
}

/// Nodes and weights of the `n`-point rule for `∫₀^∞ x^a e^(−x) g(x) dx`,
/// `a > −1`, by Newton iteration on Laguerre polynomials.
pub fn gauss_laguerre(n: usize, a: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    if n == 0 || !(a > -1.0) {
        return Err(Error::domain("gauss_laguerre needs n ≥ 1 and a > −1"));
    }
    let nf = n as f64;
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let log_ratio = ln_gamma(a + nf)? - ln_gamma(nf)?;
    let mut z = 0.0;
    for i in 0..n {
        z = match i {
            0 => (1.0 + a) * (3.0 + 0.92 * a) / (1.0 + 2.4 * nf + 1.8 * a),
            1 => z + (15.0 + 6.25 * a) / (1.0 + 0.9 * a + 2.5 * nf),
            _ => {
                let ai = (i - 1) as f64;
                z + ((1.0 + 2.55 * ai) / (1.9 * ai) + 1.26 * ai * a / (1.0 + 3.5 * ai)) * (z - x[i - 2])
                    / (1.0 + 0.3 * a)
            }
        };
        let mut converged = false;
        let (mut p2, mut pp) = (0.0, 0.0);
        for _ in 0..100 {
            let (mut p1, mut p2_) = (1.0, 0.0);
            for j in 1..=n {
                let jf = j as f64;
                let p3 = p2_;
                p2_ = p1;
                p1 = ((2.0 * jf - 1.0 + a - z) * p2_ - (jf - 1.0 + a) * p3) / jf;
            }
            p2 = p2_;
            pp = (nf * p1 - (nf + a) * p2) / z;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-14 * z.abs().max(1.0) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence { what: "gauss_laguerre", iterations: 100 });
        }
        x[i] = z;
        w[i] = -log_ratio.exp() / (pp * nf * p2);
    }
    Ok((x, w))
}

/// The weight families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightSequence {
    /// `w_n = (log n)^α`.
    LogPower { alpha: f64 },
    /// `w_n = ∫ n^(−2σ) dμ(σ)`.
    Moment { measure: HalfLineMeasure },
    /// `w_n = 1/F(n)`, `F` the ordered-factorization count.
    PickReciprocal,
    /// `w♭_n = (log n)² w_n` of the inner sequence.
    FlatSharp(Box<WeightSequence>),
}

impl WeightSequence {
    pub fn log_power(alpha: f64) -> Self {
        WeightSequence::LogPower { alpha }
    }

    pub fn moment(measure: HalfLineMeasure) -> Self {
        WeightSequence::Moment { measure }
    }

    pub fn flat_sharp(inner: WeightSequence) -> Self {
        WeightSequence::FlatSharp(Box::new(inner))
    }

    /// Smallest index at which `w_n` is defined and positive.
    pub fn min_index(&self) -> u64 {
        match self {
            WeightSequence::LogPower { alpha } if *alpha == 0.0 => 1,
            WeightSequence::LogPower { .. } => 2,
            WeightSequence::Moment { measure } if measure.density.is_none() => 1,
            WeightSequence::Moment { .. } => 2,
            WeightSequence::PickReciprocal => 1,
            WeightSequence::FlatSharp(_) => 2,
        }
    }

    /// Conventional start index: 1 for the Pick weights, 2 otherwise.
    pub fn default_n0(&self) -> u64 {
        match self {
            WeightSequence::PickReciprocal => 1,
            _ => 2,
        }
    }

    pub fn weight(&self, n: u64) -> Result<f64> {
        if n < self.min_index() {
            return Err(Error::domain(format!("weight {self} undefined at n = {n}")));
        }
        match self {
            WeightSequence::LogPower { alpha } => Ok((n as f64).ln().powf(*alpha)),
            WeightSequence::Moment { measure } => moment_weight(measure, n),
            WeightSequence::PickReciprocal => Ok(1.0 / ordered_factorizations(n)? as f64),
            WeightSequence::FlatSharp(inner) => {
                let l = (n as f64).ln();
                Ok(l * l * inner.weight(n)?)
            }
        }
    }

    /// `w_n` for `n` in `from..=to`.
    pub fn table(&self, from: u64, to: u64) -> Result<Vec<f64>> {
        (from..=to).map(|n| self.weight(n)).collect()
    }

    /// `(K, a)` with `1/w_n ≤ K (log n)^a` for every `n ≥ 2`; `None` for the
    /// Pick weights, whose reciprocals grow polynomially.
    pub(crate) fn reciprocal_log_bound(&self) -> Option<(f64, f64)> {
        match self {
            WeightSequence::LogPower { alpha } => Some((1.0, -alpha)),
            WeightSequence::Moment { measure } => match measure.density {
                _ if measure.point_mass > 0.0 => Some((1.0 / measure.point_mass, 0.0)),
                Some(d) => Some((1.0 / d.scale, -d.alpha)),
                None => unreachable!("measure without support at 0"),
            },
            WeightSequence::PickReciprocal => None,
            WeightSequence::FlatSharp(inner) => inner.reciprocal_log_bound().map(|(k, a)| (k, a - 2.0)),
        }
    }
}

/// The best constant `c = min_{2 ≤ n ≤ n_max} w_n n^ε` in `w_n ≥ c n^(−ε)`.
pub fn verify_slow_decay(w: &WeightSequence, eps: f64, n_max: u64) -> Result<f64> {
    match w {
        WeightSequence::LogPower { .. } | WeightSequence::Moment { .. } => {}
        _ => return Err(Error::domain(format!("slow-decay bound does not apply to {w}"))),
    }
    if !(eps > 0.0) || n_max < 2 {
        return Err(Error::domain("verify_slow_decay needs eps > 0 and n_max ≥ 2"));
    }
    let mut c = f64::INFINITY;
    for n in 2..=n_max {
        c = c.min(w.weight(n)? * (n as f64).powf(eps));
    }
    if !(c > 0.0) {
        return Err(Error::domain("slow-decay constant is not positive"));
    }
    Ok(c)
}

impl fmt::Display for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightSequence::LogPower { alpha } => write!(f, "log-power:{alpha}"),
            WeightSequence::Moment { measure } => {
                write!(f, "moment:point={}", measure.point_mass)?;
                if let Some(d) = measure.density {
                    write!(f, ",alpha={},scale={}", d.alpha, d.scale)?;
                }
                Ok(())
            }
            WeightSequence::PickReciprocal => write!(f, "pick"),
            WeightSequence::FlatSharp(inner) => write!(f, "flat-sharp({inner})"),
        }
    }
}

/// Parses `log-power:ALPHA`, `moment:point=C0,alpha=A,scale=S`, `pick` and
/// `flat-sharp(INNER)`.
impl FromStr for WeightSequence {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = |msg: &str| Error::Parse { line: 0, msg: format!("weight text `{text}`: {msg}") };
        if text == "pick" {
            return Ok(WeightSequence::PickReciprocal);
        }
        if let Some(inner) = text.strip_prefix("flat-sharp(").and_then(|r| r.strip_suffix(')')) {
            return Ok(WeightSequence::flat_sharp(inner.parse()?));
        }
        if let Some(alpha) = text.strip_prefix("log-power:") {
            let alpha: f64 = alpha.trim().parse().map_err(|_| bad("alpha is not a number"))?;
            if !alpha.is_finite() {
                return Err(bad("alpha must be finite"));
            }
            return Ok(WeightSequence::log_power(alpha));
        }
        if let Some(params) = text.strip_prefix("moment:") {
            let (mut point, mut alpha, mut scale) = (0.0, None, 1.0);
            for kv in params.split(',').filter(|s| !s.trim().is_empty()) {
                let (k, v) = kv.split_once('=').ok_or_else(|| bad("expected key=value"))?;
                let v: f64 = v.trim().parse().map_err(|_| bad("value is not a number"))?;
                match k.trim() {
                    "point" => point = v,
                    "alpha" => alpha = Some(v),
                    "scale" => scale = v,
                    other => return Err(bad(&format!("unknown key `{other}`"))),
                }
            }
            let density = alpha.map(|alpha| AlphaDensity { alpha, scale });
            return Ok(WeightSequence::moment(HalfLineMeasure::new(point, density)?));
        }
        Err(bad("unknown weight kind"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn point_mass_moments_are_one() {
        let mu0 = HalfLineMeasure::point_mass(1.0).unwrap();
        for n in [1, 2, 17, 10_000] {
            assert_eq!(moment_weight(&mu0, n).unwrap(), 1.0);
        }
    }

    #[test]
    fn mu_alpha_moment_matches_log_power() {
        let mu = HalfLineMeasure::mu_alpha(-1.0).unwrap();
        assert_relative_eq!(moment_weight(&mu, 2).unwrap(), 1.0 / 2f64.ln(), max_relative = 1e-12);
        for alpha in [-0.25, -0.5, -1.0, -1.5, -2.5] {
            let mu = HalfLineMeasure::mu_alpha(alpha).unwrap();
            for n in [2u64, 3, 10, 100, 10_000] {
                let exact = (n as f64).ln().powf(alpha);
                let closed = moment_weight(&mu, n).unwrap();
                let quad = mu.laplace_quadrature(2.0 * (n as f64).ln()).unwrap();
                assert!((closed - exact).abs() <= 1e-8 * exact);
                assert!((quad - exact).abs() <= 1e-8 * exact, "α = {alpha}, n = {n}: {quad} vs {exact}");
            }
        }
    }

    #[test]
    fn mixture_moment_is_linear() {
        let mix = HalfLineMeasure::new(0.5, Some(AlphaDensity { alpha: -1.0, scale: 0.5 })).unwrap();
        let point = 0.5 * moment_weight(&HalfLineMeasure::point_mass(1.0).unwrap(), 2).unwrap();
        let dens = 0.5 * moment_weight(&HalfLineMeasure::mu_alpha(-1.0).unwrap(), 2).unwrap();
        assert_relative_eq!(moment_weight(&mix, 2).unwrap(), point + dens, max_relative = 1e-14);
        assert_relative_eq!(moment_weight(&mix, 2).unwrap(), 0.5 + 0.5 / 2f64.ln(), max_relative = 1e-12);
    }

    #[test]
    fn density_excludes_index_one() {
        let mu = HalfLineMeasure::mu_alpha(-0.5).unwrap();
        assert!(moment_weight(&mu, 1).is_err());
    }

    #[test]
    fn measure_validation() {
        assert!(HalfLineMeasure::new(0.0, None).is_err());
        assert!(HalfLineMeasure::new(-1.0, None).is_err());
        assert!(HalfLineMeasure::mu_alpha(0.0).is_err());
        assert!(HalfLineMeasure::mu_alpha(0.5).is_err());
        assert!(HalfLineMeasure::new(0.0, Some(AlphaDensity { alpha: -1.0, scale: 0.0 })).is_err());
    }

    #[test]
    fn laguerre_weights_sum_to_gamma() {
        for a in [-0.75, -0.5, 0.0, 0.5, 1.5] {
            let (x, w) = gauss_laguerre(64, a).unwrap();
            assert!(x.windows(2).all(|p| p[0] < p[1]));
            assert_relative_eq!(w.iter().sum::<f64>(), gamma_real(a + 1.0).unwrap(), max_relative = 1e-12);
            // Exact for x² as well: Γ(a+3).
            let second: f64 = x.iter().zip(&w).map(|(x, w)| x * x * w).sum();
            assert_relative_eq!(second, gamma_real(a + 3.0).unwrap(), max_relative = 1e-10);
        }
    }

    #[test]
    fn moment_weights_decrease() {
        let measures = [
            HalfLineMeasure::mu_alpha(-0.5).unwrap(),
            HalfLineMeasure::new(0.3, Some(AlphaDensity { alpha: -2.0, scale: 2.0 })).unwrap(),
        ];
        for mu in measures {
            let w: Vec<f64> = (2..500).map(|n| moment_weight(&mu, n).unwrap()).collect();
            assert!(w.iter().all(|&x| x > 0.0));
            assert!(w.windows(2).all(|p| p[1] < p[0]));
        }
        let mu0 = HalfLineMeasure::point_mass(2.0).unwrap();
        let w: Vec<f64> = (1..50).map(|n| moment_weight(&mu0, n).unwrap()).collect();
        assert!(w.windows(2).all(|p| p[1] <= p[0]));
    }

    #[test]
    fn weight_examples() {
        assert_eq!(WeightSequence::log_power(0.0).weight(7).unwrap(), 1.0);
        assert_eq!(WeightSequence::PickReciprocal.weight(1).unwrap(), 1.0);
        assert_eq!(WeightSequence::PickReciprocal.weight(12).unwrap(), 1.0 / 8.0);
        let fs = WeightSequence::flat_sharp(WeightSequence::log_power(-1.0));
        assert_relative_eq!(fs.weight(3).unwrap(), 3f64.ln(), max_relative = 1e-15);
        assert!(fs.weight(1).is_err());
        assert!(WeightSequence::log_power(1.0).weight(1).is_err());
        assert_eq!(WeightSequence::log_power(0.0).weight(1).unwrap(), 1.0);
    }

    #[test]
    fn flat_sharp_is_exact() {
        for inner in [
            WeightSequence::log_power(0.5),
            WeightSequence::moment(HalfLineMeasure::mu_alpha(-1.5).unwrap()),
            WeightSequence::PickReciprocal,
        ] {
            let fs = WeightSequence::flat_sharp(inner.clone());
            for n in 2..300u64 {
                let l = (n as f64).ln();
                assert_eq!(fs.weight(n).unwrap(), l * l * inner.weight(n).unwrap());
            }
        }
    }

    #[test]
    fn slow_decay_constants() {
        let one = WeightSequence::log_power(0.0);
        assert!(verify_slow_decay(&one, 0.1, 10_000).unwrap() >= 1.0);

        let w = WeightSequence::log_power(-1.0);
        let c = verify_slow_decay(&w, 0.01, 100_000).unwrap();
        let oracle = (2..=100_000u64).map(|n| (n as f64).powf(0.01) / (n as f64).ln()).fold(f64::INFINITY, f64::min);
        assert_relative_eq!(c, oracle, max_relative = 1e-12);

        let m = WeightSequence::moment(HalfLineMeasure::mu_alpha(-0.5).unwrap());
        assert!(verify_slow_decay(&m, 0.05, 10_000).unwrap() > 0.0);

        assert!(verify_slow_decay(&WeightSequence::PickReciprocal, 0.1, 100).is_err());
        assert!(verify_slow_decay(&one, 0.0, 100).is_err());
    }

    #[test]
    fn weight_grammar_round_trips() {
        for s in [
            "log-power:-1.5",
            "pick",
            "flat-sharp(log-power:0)",
            "moment:point=1",
            "moment:point=0.5,alpha=-1,scale=0.5",
        ] {
            let w: WeightSequence = s.parse().unwrap();
            let again: WeightSequence = w.to_string().parse().unwrap();
            assert_eq!(w, again);
        }
        let nested: WeightSequence = "flat-sharp(flat-sharp(pick))".parse().unwrap();
        assert_eq!(nested, WeightSequence::flat_sharp(WeightSequence::flat_sharp(WeightSequence::PickReciprocal)));
        for bad in ["", "log-power:x", "moment:foo=1", "moment:point=0", "flat-sharp(pick", "gauss"] {
            assert!(bad.parse::<WeightSequence>().is_err(), "{bad}");
        }
    }
}
