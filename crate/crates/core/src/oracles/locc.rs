//! The average-under-measurement condition for `C_n`.

use num_complex::Complex64;

use super::{concurrence2, degree_cn};
use crate::circuit::run_entanglement_test;
use crate::engine::{QubitIndex, StateVector};
use crate::error::{Error, Result};

/// Slack allowed when comparing the two sides.
const SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoccRecord {
    /// `C_n` of the input, from the simulated control distribution.
    pub c_n: f64,
    /// `p_j` for measurement outcome `j ∈ {0, 1}`.
    pub probabilities: [f64; 2],
    /// `C_{n−1}` of each post-measurement state (0 when `p_j = 0`).
    pub post_degrees: [f64; 2],
    /// `Σ p_j C_{n−1}(ψ_j)`.
    pub expected_post: f64,
    /// `C_n ≤ Σ p_j C_{n−1}(ψ_j)`.
    pub holds_as_written: bool,
    /// `Σ p_j C_{n−1}(ψ_j) ≤ C_n`.
    pub holds_reversed: bool,
}

fn degree(state: &StateVector) -> Result<f64> {
    if state.num_qubits() == 2 {
        let a: [Complex64; 4] = state
            .amplitudes()
            .try_into()
            .map_err(|_| Error::BadLength(state.len()))?;
        return Ok(concurrence2(&a));
    }
    Ok(degree_cn(&run_entanglement_test(state, state, false)?.control_dist))
}

/// Measures `measured` in the computational basis and compares `C_n` of the
/// input with the probability-weighted `C_{n−1}` of what remains.
pub fn locc_monotonicity_check(a: &StateVector, measured: QubitIndex) -> Result<LoccRecord> {
    if a.num_qubits() < 3 {
        return Err(Error::invalid("the check needs at least three qubits"));
    }
    let c_n = degree_cn(&run_entanglement_test(a, a, false)?.control_dist);
    let mut probabilities = [0.0; 2];
    let mut post_degrees = [0.0; 2];
    for (j, outcome) in [false, true].into_iter().enumerate() {
        match a.collapse(measured, outcome) {
            Ok((p, rest)) => {
                probabilities[j] = p;
                post_degrees[j] = degree(&rest)?;
            }
            Err(Error::ZeroProbabilityOutcome) => {}
            Err(e) => return Err(e),
        }
    }
    let expected_post = probabilities[0] * post_degrees[0] + probabilities[1] * post_degrees[1];
    Ok(LoccRecord {
        c_n,
        probabilities,
        post_degrees,
        expected_post,
        holds_as_written: c_n <= expected_post + SLACK,
        holds_reversed: expected_post <= c_n + SLACK,
    })
}
