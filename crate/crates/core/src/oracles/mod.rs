//! Closed-form control distributions and derived figures, evaluated without
//! the simulator.
//!
//! Squared parentheses of amplitude expressions are read as modulus-squares,
//! so every oracle accepts complex amplitudes. Amplitude subscripts such as
//! `A_011` are read character `k` = qubit `k`, matching the outcome strings.

mod efficiency;
mod families;
mod final_state;
mod locc;
mod small;

pub use efficiency::{
    cn_bound, cn_max, expected_trials_any, expected_trials_from_cn, expected_trials_genuine, genuine_exponent,
    tomography_baseline, tomography_crossover, GenuineClass, Trials,
};
pub use families::{
    corrupted_ghz_dist, corrupted_w_dist, ghz_maximal, printed, unbalanced_ghz_amplitude_form,
    unbalanced_ghz_dist, unbalanced_w_amplitude_form, unbalanced_w_dist, unequal_ghz_dist,
    unequal_ghz_trig, unequal_w_dist, unequal_w_trig, w_maximal, ErrorFamily,
};
pub use final_state::{two_qubit_final_state, two_qubit_final_state_printed};
pub use locc::{locc_monotonicity_check, LoccRecord};
pub use small::{
    concurrence2, three_qubit_equal_distribution, three_qubit_ghz_like_distribution,
    three_qubit_w_like_distribution, two_qubit_distribution, two_qubit_equal_distribution,
};

use alloc::vec::Vec;

use crate::circuit::ControlDistribution;
use crate::math;
use crate::outcome::{Outcome, SignatureClass};

/// Totals per [`SignatureClass`], plus individual outcome probabilities
/// where a closed form exists.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticDistribution {
    n: usize,
    classes: [Option<f64>; 5],
    per_outcome: Option<Vec<f64>>,
}

fn slot(class: SignatureClass) -> usize {
    SignatureClass::ALL.iter().position(|c| *c == class).unwrap_or(0)
}

impl AnalyticDistribution {
    pub(crate) fn new(n: usize, p_zero: f64) -> Self {
        let mut classes = [None; 5];
        classes[slot(SignatureClass::AllZero)] = Some(p_zero);
        AnalyticDistribution {
            n,
            classes,
            per_outcome: None,
        }
    }

    pub(crate) fn with(mut self, class: SignatureClass, total: f64) -> Self {
        self.classes[slot(class)] = Some(total);
        self
    }

    /// Sets the per-outcome table and fills every class total from it.
    pub(crate) fn from_outcomes(n: usize, probs: Vec<f64>) -> Self {
        let mut classes = [None; 5];
        for class in SignatureClass::ALL {
            classes[slot(class)] = Some(class_sum(&probs, class));
        }
        AnalyticDistribution {
            n,
            classes,
            per_outcome: Some(probs),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p_zero(&self) -> f64 {
        self.classes[slot(SignatureClass::AllZero)].unwrap_or(0.0)
    }

    /// `None` when the closed form does not give this class.
    pub fn class(&self, class: SignatureClass) -> Option<f64> {
        self.classes[slot(class)]
    }

    pub fn per_outcome(&self) -> Option<&[f64]> {
        self.per_outcome.as_deref()
    }

    pub fn outcome(&self, outcome: Outcome) -> Option<f64> {
        self.per_outcome
            .as_ref()
            .and_then(|p| p.get(outcome.bits() as usize).copied())
    }

    /// Class totals present in this distribution.
    pub fn known_classes(&self) -> impl Iterator<Item = (SignatureClass, f64)> + '_ {
        SignatureClass::ALL
            .into_iter()
            .filter_map(|c| self.class(c).map(|v| (c, v)))
    }
}

fn class_sum(probs: &[f64], class: SignatureClass) -> f64 {
    probs
        .iter()
        .enumerate()
        .filter(|(i, _)| class.contains(i.count_ones()))
        .map(|(_, p)| p)
        .sum()
}

/// Anything that can report the total probability of a signature class.
pub trait ClassTotals {
    fn class_total(&self, class: SignatureClass) -> f64;
}

impl ClassTotals for ControlDistribution {
    fn class_total(&self, class: SignatureClass) -> f64 {
        ControlDistribution::class_total(self, class)
    }
}

impl ClassTotals for AnalyticDistribution {
    /// Missing classes count as zero.
    fn class_total(&self, class: SignatureClass) -> f64 {
        self.class(class).unwrap_or(0.0)
    }
}

/// `C_n = 2·√P(even number of ones)`.
pub fn degree_cn<T: ClassTotals + ?Sized>(dist: &T) -> f64 {
    2.0 * math::sqrt(dist.class_total(SignatureClass::EvenOnes).max(0.0))
}
