//! Pick matrices `[k(λ_i, λ_j)(1 − z_i conj(z_j))]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::space::SpaceHandle;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::specialfn::ComplexPoint;

/// Interpolation nodes and target values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PickProblem {
    nodes: Vec<ComplexPoint>,
    targets: Vec<Complex64>,
}

impl PickProblem {
    /// Nodes must be distinct; membership in the half-plane is checked
    /// against the space when the matrix is built.
    pub fn new(nodes: Vec<ComplexPoint>, targets: Vec<Complex64>) -> Result<Self> {
        if nodes.len() != targets.len() {
            return Err(Error::domain(format!("{} nodes but {} targets", nodes.len(), targets.len())));
        }
        check_distinct(&nodes)?;
        Ok(PickProblem { nodes, targets })
    }

    pub fn nodes(&self) -> &[ComplexPoint] {
        &self.nodes
    }

    pub fn targets(&self) -> &[Complex64] {
        &self.targets
    }
}

pub(crate) fn check_distinct(nodes: &[ComplexPoint]) -> Result<()> {
    for (i, a) in nodes.iter().enumerate() {
        if nodes[..i].iter().any(|b| a == b) {
            return Err(Error::domain(format!("node {} + {}i repeated", a.sigma, a.t)));
        }
    }
    Ok(())
}

pub fn pick_matrix(problem: &PickProblem, space: &SpaceHandle) -> Result<CMatrix> {
    let k = space.kernel_matrix(&problem.nodes)?;
    let z = &problem.targets;
    Ok(CMatrix::from_fn(k.nrows(), k.ncols(), |i, j| k[(i, j)] * (1.0 - z[i] * z[j].conj())))
}
