//! Entanglement-assisted CSS codes from pairs of classical parity-check matrices.
//!
//! For `Hx`, `Hz` on `n` columns the code has `c = rank(Hx Hz^T)` ebits and
//! `k = n - rank(Hx) - rank(Hz) + c` logical qubits.

use std::fmt;

use crate::construct::{Family, ShiftPlan};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::BlockTensor;

/// Parameters `[[n, k; c]]` together with the constituent matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EAParams {
    pub n: usize,
    pub k: usize,
    pub c: usize,
    pub hx: BitMatrix,
    pub hz: BitMatrix,
    pub rank_hx: usize,
    pub rank_hz: usize,
}

impl EAParams {
    /// Computes the parameters of the EA-CSS code built on `hx` and `hz`.
    pub fn from_pair(hx: BitMatrix, hz: BitMatrix) -> Result<Self> {
        let c = ebit_count(&hx, &hz)?;
        let n = hx.cols();
        let rank_hx = hx.rank();
        let rank_hz = hz.rank();
        // n - rank(Hx) - rank(Hz) + rank(Hx Hz^T) >= 0 for any pair
        let k = n + c - rank_hx - rank_hz;
        Ok(EAParams { n, k, c, hx, hz, rank_hx, rank_hz })
    }

    /// `[[n,k;c]]_2`
    pub fn summary(&self) -> String {
        format!("[[{},{};{}]]_2", self.n, self.k, self.c)
    }
}

impl fmt::Display for EAParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary())
    }
}

/// Number of ebits: GF(2) rank of `Hx Hz^T`.
pub fn ebit_count(hx: &BitMatrix, hz: &BitMatrix) -> Result<usize> {
    Ok(hx.mul_transpose(hz)?.rank())
}

fn require_prime(plan: &ShiftPlan) -> Result<()> {
    if plan.family() != Family::Prime {
        return Err(Error::InvalidParameter(format!(
            "closed forms apply to the prime family only, plan is {}",
            plan.family()
        )));
    }
    Ok(())
}

fn check_subset(name: &str, layers: &[usize], available: usize) -> Result<()> {
    if layers.is_empty() {
        return Err(Error::InvalidParameter(format!("{name} selects no block-layers")));
    }
    let mut sorted = layers.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter(format!("{name} repeats a block-layer")));
    }
    if let Some(&bad) = sorted.last().filter(|&&l| l >= available) {
        return Err(Error::OutOfRange { what: "block-layer", index: bad, bound: available });
    }
    Ok(())
}

fn expect_eq(what: &'static str, computed: usize, expected: usize) -> Result<()> {
    if computed == expected {
        Ok(())
    } else {
        Err(Error::FormulaMismatch { what, computed, expected })
    }
}

/// Two-code family: `Hx` from block-layers `w1_layers`, `Hz` from the disjoint
/// `w2_layers`. Checks `c = 1` and `k = p^4 - 2p^2 - (p^2 - 1)(w1 + w2 - 2) + 1`.
pub fn family_one(plan: &ShiftPlan, w1_layers: &[usize], w2_layers: &[usize]) -> Result<EAParams> {
    require_prime(plan)?;
    let dims = plan.dims();
    check_subset("first selection", w1_layers, dims.block_layers())?;
    check_subset("second selection", w2_layers, dims.block_layers())?;
    if let Some(shared) = w1_layers.iter().find(|l| w2_layers.contains(l)) {
        return Err(Error::InvalidParameter(format!(
            "selections are not disjoint: both contain block-layer {shared}"
        )));
    }
    let t = BlockTensor::new(plan.clone());
    let params = EAParams::from_pair(t.unfold_block_layers(w1_layers)?, t.unfold_block_layers(w2_layers)?)?;
    let p2 = dims.p * dims.p;
    let (w1, w2) = (w1_layers.len(), w2_layers.len());
    expect_eq("ebits", params.c, 1)?;
    expect_eq("logical qubits", params.k, p2 * p2 + 1 - 2 * p2 - (p2 - 1) * (w1 + w2 - 2))?;
    Ok(params)
}

/// Single-code family: `Hx = Hz` from block-layers `w_layers`. Checks
/// `c = p^2 + (w - 1)(p^2 - 1)` and `k = (p^2 - 1)(p^2 - w + 1)`.
pub fn family_two(plan: &ShiftPlan, w_layers: &[usize]) -> Result<EAParams> {
    require_prime(plan)?;
    let dims = plan.dims();
    check_subset("selection", w_layers, dims.block_layers())?;
    let t = BlockTensor::new(plan.clone());
    let h = t.unfold_block_layers(w_layers)?;
    let params = EAParams::from_pair(h.clone(), h)?;
    let p2 = dims.p * dims.p;
    let w = w_layers.len();
    expect_eq("ebits", params.c, p2 + (w - 1) * (p2 - 1))?;
    expect_eq("logical qubits", params.k, (p2 - 1) * (p2 + 1 - w))?;
    Ok(params)
}
