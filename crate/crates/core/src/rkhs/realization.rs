//! Transfer-function realizations `φ(s) = A + B (I − E_s D)^(−1) E_s C` of
//! contractive multipliers of the Pick-weight space.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::specialfn::{rho, ComplexPoint};

pub const MAX_REALIZATION_DIM: usize = 2048;
pub const UNITARITY_TOL: f64 = 1e-12;

/// An isometric colligation `U : ℂ ⊕ L → ℂ ⊕ (ℓ² ⊗ L)` with `L = ℂ^d` and
/// `ℓ²` truncated to the coordinates `n = 2..=N_E`.
///
/// Row blocks of `U` are `[A B]` (one row) and `[C D]` (`(N_E − 1)·d` rows,
/// ordered `(n, j)` with `j` fastest); column blocks are `ℂ` and `L`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizationModel {
    truncation: usize,
    aux_dim: usize,
    u: CMatrix,
    /// `max |(U*U − I)_ij|`.
    pub unitarity_defect: f64,
}

impl RealizationModel {
    /// Wraps a given colligation after checking `U*U = I`.
    pub fn from_colligation(truncation: usize, aux_dim: usize, u: CMatrix) -> Result<Self> {
        let rows = 1 + (truncation.saturating_sub(1)) * aux_dim;
        if truncation < 2 || aux_dim < 1 || rows > MAX_REALIZATION_DIM {
            return Err(Error::domain(format!(
                "realization needs N_E ≥ 2, d ≥ 1 and (N_E−1)d + 1 ≤ {MAX_REALIZATION_DIM}"
            )));
        }
        if u.nrows() != rows || u.ncols() != 1 + aux_dim {
            return Err(Error::domain(format!("colligation must be {rows}×{}", 1 + aux_dim)));
        }
        let gram = u.adjoint() * &u;
        let defect = (&gram - CMatrix::identity(1 + aux_dim, 1 + aux_dim)).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if defect > UNITARITY_TOL {
            return Err(Error::domain(format!("colligation is not isometric (defect {defect:e})")));
        }
        Ok(RealizationModel { truncation, aux_dim, u, unitarity_defect: defect })
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn aux_dim(&self) -> usize {
        self.aux_dim
    }

    pub fn colligation(&self) -> &CMatrix {
        &self.u
    }

    pub fn a(&self) -> Complex64 {
        self.u[(0, 0)]
    }

    pub fn b(&self) -> CMatrix {
        self.u.view((0, 1), (1, self.aux_dim)).into_owned()
    }

    pub fn c(&self) -> CMatrix {
        self.u.view((1, 0), (self.u.nrows() - 1, 1)).into_owned()
    }

    pub fn d(&self) -> CMatrix {
        self.u.view((1, 1), (self.u.nrows() - 1, self.aux_dim)).into_owned()
    }

    /// `E_s X` for `X` with `(N_E − 1)·d` rows: `Σ_n n^(−s) X[(n, ·), :]`.
    fn apply_e(&self, s: Complex64, x: &CMatrix) -> CMatrix {
        let d = self.aux_dim;
        let mut out = CMatrix::zeros(d, x.ncols());
        for n in 2..=self.truncation {
            let coeff = (-s * (n as f64).ln()).exp();
            let row0 = (n - 2) * d;
            out += x.rows(row0, d) * coeff;
        }
        out
    }
}

/// Draws `U` by orthonormalizing a seeded complex Gaussian matrix (thin QR).
pub fn realization_random(seed: u64, truncation: usize, aux_dim: usize) -> Result<RealizationModel> {
    if truncation < 2 || aux_dim < 1 {
        return Err(Error::domain("realization needs N_E ≥ 2 and d ≥ 1"));
    }
    let rows = 1 + (truncation - 1) * aux_dim;
    if rows > MAX_REALIZATION_DIM {
        return Err(Error::domain(format!("dimension {rows} exceeds {MAX_REALIZATION_DIM}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gauss = || -> f64 { StandardNormal.sample(&mut rng) };
    let g = CMatrix::from_fn(rows, 1 + aux_dim, |_, _| Complex64::new(gauss(), gauss()));
    let q = g.qr().q();
    RealizationModel::from_colligation(truncation, aux_dim, q)
}

/// `φ(s)` for `σ > ρ`, where the truncated `‖E_s‖ = (Σ_{2≤n≤N_E} n^(−2σ))^(1/2)`
/// stays below `(ζ(2σ) − 1)^(1/2) < 1`.
pub fn realization_evaluate(model: &RealizationModel, s: ComplexPoint) -> Result<Complex64> {
    let rho = rho();
    if !(s.sigma > rho) {
        return Err(Error::domain(format!("realization needs σ > ρ = {rho}, got {}", s.sigma)));
    }
    let z = s.to_complex();
    let e_norm_sq: f64 = (2..=model.truncation).map(|n| (n as f64).powf(-2.0 * s.sigma)).sum();
    if e_norm_sq >= 1.0 {
        return Err(Error::domain("‖E_s‖ ≥ 1"));
    }
    let ec = model.apply_e(z, &model.c());
    let ed = model.apply_e(z, &model.d());
    let lhs = CMatrix::identity(model.aux_dim, model.aux_dim) - ed;
    let x = lhs.lu().solve(&ec).ok_or_else(|| Error::domain("I − E_s D is singular"))?;
    let bx = model.b() * x;
    Ok(model.a() + bx[(0, 0)])
}

/// The coefficients of `φ` when `D = 0`: `A` at index 1 and `(B C_n)` at
/// index `n`, where `C_n` is the `n`-th block of `C`.
pub fn feedthrough_polynomial(model: &RealizationModel) -> Vec<(u64, Complex64)> {
    let d = model.aux_dim;
    let b = model.b();
    let c = model.c();
    let mut out = vec![(1, model.a())];
    for n in 2..=model.truncation {
        let block = c.rows((n - 2) * d, d);
        let v: DVector<Complex64> = block.column(0).into_owned();
        out.push((n as u64, (&b * v)[(0, 0)]));
    }
    out
}
