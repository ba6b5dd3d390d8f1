//! `F(n)`, the number of ordered factorizations of `n` into parts `≥ 2`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specialfn::{rho, zeta_real};
use crate::sum::kahan;

pub const MAX_FACTORIZATION_INDEX: u64 = 1_000_000;

/// `F(1..=10⁶)`, filled bottom-up over the divisor lattice with
/// `F(n) = Σ_{d | n, d < n} F(d)`.
fn table() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n_max = MAX_FACTORIZATION_INDEX as usize;
        let mut f = vec![0u64; n_max + 1];
        f[1] = 1;
        for d in 1..=n_max {
            let fd = f[d];
            let mut m = 2 * d;
            while m <= n_max {
                f[m] += fd;
                m += d;
            }
        }
        f
    })
}

/// `F(n)` for `1 ≤ n ≤ 10⁶`, with `F(1) = 1`.
pub fn ordered_factorizations(n: u64) -> Result<u64> {
    if n == 0 || n > MAX_FACTORIZATION_INDEX {
        return Err(Error::domain(format!("F(n) is tabulated for 1 ≤ n ≤ 10⁶, got {n}")));
    }
    Ok(table()[n as usize])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PickIdentityReport {
    pub sigma: f64,
    pub n: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

/// Compares `Σ_{n ≤ N} F(n) n^(−σ)` with `1/(2 − ζ(σ))` on the real axis.
pub fn verify_pick_identity(sigma: f64, big_n: u64) -> Result<PickIdentityReport> {
    if !(sigma > 2.0 * rho()) {
        return Err(Error::domain(format!("identity needs σ > 2ρ, got {sigma}")));
    }
    if !(10..=MAX_FACTORIZATION_INDEX).contains(&big_n) {
        return Err(Error::domain(format!("N = {big_n} outside [10, 10⁶]")));
    }
    let f = table();
    let lhs = kahan((1..=big_n).map(|n| f[n as usize] as f64 * (n as f64).powf(-sigma)));
    let rhs = 1.0 / (2.0 - zeta_real(sigma)?);
    Ok(PickIdentityReport { sigma, n: big_n, lhs, rhs, gap: (lhs - rhs).abs() })
}
