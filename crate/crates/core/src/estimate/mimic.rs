//! Telling an unbalanced GHZ₃ from W₃ when the plain test cannot.
//!
//! Each round measures qubit 0 of the test and copy, runs the two-qubit test
//! on what remains and draws one control outcome. A GHZ-like remainder is a
//! product state, so `|11⟩_C` never appears; a W₃ remainder is Bell-like with
//! probability 2/3.

use rand::Rng;

use super::{RngSpec, sample_one};
use crate::circuit::run_entanglement_test;
use crate::engine::{QubitIndex, StateVector};
use crate::error::{Error, Result};

/// How the copy is prepared before each round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CopyCollapse {
    /// The copy takes the same measurement outcome as the test.
    #[default]
    Identical,
    /// The copy is measured separately. Mismatched product remainders such as
    /// `|00⟩` and `|11⟩` then produce `|11⟩_C` even for a GHZ-like state.
    Independent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MimicVerdict {
    UnbalancedGhz3,
    W3Like,
}

impl MimicVerdict {
    pub fn name(self) -> &'static str {
        match self {
            MimicVerdict::UnbalancedGhz3 => "UNBALANCED_GHZ3",
            MimicVerdict::W3Like => "W3_LIKE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MimicResolution {
    pub verdict: MimicVerdict,
    pub rounds: u64,
    pub detections: u64,
    /// `detections / rounds`.
    pub detection_rate: f64,
    /// `1 − (1 − rate)^rounds`: the chance this many rounds would show at
    /// least one `|11⟩_C` at the observed rate. Zero when nothing was seen.
    pub confidence: f64,
}

/// `(P(outcome), remainder)` for both outcomes of measuring qubit 0.
fn branches(state: &StateVector) -> Result<[(f64, Option<StateVector>); 2]> {
    let mut out = [(0.0, None), (0.0, None)];
    for (j, bit) in [false, true].into_iter().enumerate() {
        match state.collapse(QubitIndex(0), bit) {
            Ok((p, rest)) => out[j] = (p, Some(rest)),
            Err(Error::ZeroProbabilityOutcome) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn draw_branch(branches: &[(f64, Option<StateVector>); 2], rng: &mut impl Rng) -> usize {
    let u: f64 = rng.random();
    if branches[1].1.is_none() || (branches[0].1.is_some() && u < branches[0].0) {
        0
    } else {
        1
    }
}

pub fn resolve_ghz3_w3_mimic(
    state: &StateVector,
    rounds: u64,
    rng: RngSpec,
    collapse: CopyCollapse,
) -> Result<MimicResolution> {
    if state.num_qubits() != 3 {
        return Err(Error::invalid("the mimic procedure takes a three-qubit state"));
    }
    if rounds == 0 {
        return Err(Error::invalid("at least one round is required"));
    }
    state.ensure_normalized()?;
    let br = branches(state)?;
    // P(|11⟩_C) for each (test branch, copy branch) combination.
    let mut p11 = [[0.0f64; 2]; 2];
    for (i, row) in p11.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            if let (Some(a), Some(b)) = (&br[i].1, &br[j].1) {
                *slot = run_entanglement_test(a, b, false)?
                    .control_dist
                    .probabilities()[0b11];
            }
        }
    }
    let mut gen = rng.rng();
    let mut detections = 0u64;
    for _ in 0..rounds {
        let i = draw_branch(&br, &mut gen);
        let j = match collapse {
            CopyCollapse::Identical => i,
            CopyCollapse::Independent => draw_branch(&br, &mut gen),
        };
        if sample_one(p11[i][j], &mut gen) {
            detections += 1;
        }
    }
    let rate = detections as f64 / rounds as f64;
    let confidence = if detections == 0 {
        0.0
    } else {
        1.0 - crate::math::powf(1.0 - rate, rounds as f64)
    };
    Ok(MimicResolution {
        verdict: if detections > 0 {
            MimicVerdict::W3Like
        } else {
            MimicVerdict::UnbalancedGhz3
        },
        rounds,
        detections,
        detection_rate: rate,
        confidence,
    })
}
