//! Normalized Gram matrices of kernel functions and the greedy
//! interpolating-sequence construction.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::pick::check_distinct;
use super::space::SpaceHandle;
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, CMatrix};
use crate::specialfn::ComplexPoint;
use crate::weights::WeightSequence;

/// `G_ij = k(λ_i, λ_j) / (‖k_{λ_i}‖ ‖k_{λ_j}‖)` with its spectral bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub entries: CMatrix,
    pub nodes: Vec<ComplexPoint>,
    pub diagnostics: GramDiagnostics,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GramDiagnostics {
    pub lambda_min: f64,
    pub lambda_max: f64,
    /// Hilbert–Schmidt norm of `G − I`.
    pub hs_offdiag: f64,
}

pub fn gram_matrix(nodes: &[ComplexPoint], space: &SpaceHandle) -> Result<GramMatrix> {
    check_distinct(nodes)?;
    let k = space.kernel_matrix(nodes)?;
    let d: Vec<f64> = (0..nodes.len()).map(|i| k[(i, i)].re.sqrt()).collect();
    let mut g = CMatrix::from_fn(nodes.len(), nodes.len(), |i, j| k[(i, j)] / (d[i] * d[j]));
    for i in 0..nodes.len() {
        g[(i, i)] = Complex64::new(1.0, 0.0);
    }
    let hs_offdiag = (0..nodes.len())
        .flat_map(|i| (0..nodes.len()).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| g[(i, j)].norm_sqr())
        .sum::<f64>()
        .sqrt();
    let eig = hermitian_eigenvalues(&g)?;
    let diagnostics = GramDiagnostics {
        lambda_min: eig.first().copied().unwrap_or(1.0),
        lambda_max: eig.last().copied().unwrap_or(1.0),
        hs_offdiag,
    };
    Ok(GramMatrix { entries: g, nodes: nodes.to_vec(), diagnostics })
}

pub const MAX_SEQUENCE_LENGTH: usize = 64;
pub const MAX_TRIALS_PER_NODE: usize = 1000;

#[derive(Debug, Clone, PartialEq)]
pub struct InterpolatingSequence {
    pub nodes: Vec<ComplexPoint>,
    pub gram: GramMatrix,
    /// Candidates tried for each accepted node.
    pub trials: Vec<usize>,
}

/// Greedy construction for the Pick-weight space: node `n` is placed at
/// `(ρ + δ_n) + i t_n` with `δ_n` halved and the ordinate step doubled until
/// every entry of the new Gram row is below `2^(−n)` in modulus. The
/// off-diagonal Hilbert–Schmidt norm is then below one, so `G` is bounded
/// above and below by `1 ± HS`.
pub fn build_interpolating_sequence(space: &SpaceHandle, count: usize, seed: u64) -> Result<InterpolatingSequence> {
    if !matches!(space.weights(), WeightSequence::PickReciprocal) || space.n0() != 1 {
        return Err(Error::domain("interpolating sequences are built for the Pick weights with n0 = 1"));
    }
    if count == 0 || count > MAX_SEQUENCE_LENGTH {
        return Err(Error::domain(format!("count {count} outside 1..=64")));
    }
    let rho = space.half_plane().rho;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nodes: Vec<ComplexPoint> = Vec::with_capacity(count);
    let mut diag: Vec<f64> = Vec::with_capacity(count);
    let mut trials = Vec::with_capacity(count);

    let mut delta = 0.25;
    let mut t_prev = 0.0;
    for n in 1..=count {
        let bound = 0.5f64.powi(n as i32);
        let mut step = 1.0 + rng.random::<f64>();
        let mut accepted = None;
        for trial in 1..=MAX_TRIALS_PER_NODE {
            let sigma = rho + delta;
            if sigma <= rho {
                break;
            }
            let candidate = ComplexPoint::new(sigma, t_prev + step)?;
            let kcc = space.kernel(candidate, candidate)?.value().re;
            let mut ok = kcc.is_finite() && kcc > 0.0;
            for (node, &kii) in nodes.iter().zip(&diag) {
                if !ok {
                    break;
                }
                let kic = space.kernel(*node, candidate)?.value();
                ok = kic.norm() / (kii * kcc).sqrt() < bound;
            }
            if ok {
                accepted = Some((candidate, kcc, trial));
                break;
            }
            delta *= 0.5;
            if step < 1e6 {
                step *= 2.0;
            }
        }
        let (node, kcc, trial) = accepted
            .ok_or(Error::Convergence { what: "interpolating-sequence search", iterations: MAX_TRIALS_PER_NODE })?;
        nodes.push(node);
        diag.push(kcc);
        trials.push(trial);
        t_prev = node.t;
        delta *= 0.5;
    }
    let gram = gram_matrix(&nodes, space)?;
    Ok(InterpolatingSequence { nodes, gram, trials })
}

/// The two quantities of the interpolation conjecture, reported side by side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    /// Smallest `C` such that for every pair `i ≠ j` some multiplier of norm
    /// `≤ C` takes the values 0 at `λ_i` and 1 at `λ_j`; equals
    /// `max 1/√(1 − |G_ij|²)` by two-point Pick feasibility.
    pub separation_constant: f64,
    /// `λ_max(G)`, the best constant in the Carleson embedding condition.
    pub gram_upper_bound: f64,
}

pub fn conjecture_report(gram: &GramMatrix) -> ConjectureReport {
    let n = gram.nodes.len();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                worst = worst.max(gram.entries[(i, j)].norm());
            }
        }
    }
    let separation_constant = if worst < 1.0 { 1.0 / (1.0 - worst * worst).sqrt() } else { f64::INFINITY };
    ConjectureReport { separation_constant, gram_upper_bound: gram.diagnostics.lambda_max }
}
