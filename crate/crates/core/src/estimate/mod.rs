//! Shot sampling from control distributions, estimators and verdicts.
//!
//! Shots are categorical draws from the exact simulated distribution; the
//! circuit is deterministic, so re-simulating per shot would add nothing.

mod mimic;

pub use mimic::{resolve_ghz3_w3_mimic, CopyCollapse, MimicResolution, MimicVerdict};

use alloc::vec;
use alloc::vec::Vec;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::circuit::ControlDistribution;
use crate::error::{Error, Result};
use crate::math;
use crate::outcome::{Outcome, SignatureClass};

/// Seed and stream of a ChaCha20 generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RngSpec {
    pub seed: u64,
    pub stream: u64,
}

impl RngSpec {
    /// Recorded alongside sampled data.
    pub const ALGORITHM: &'static str = "chacha20/rand_chacha-0.9/seed_from_u64";

    pub fn new(seed: u64, stream: u64) -> Self {
        RngSpec { seed, stream }
    }

    pub fn rng(self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Value with a one-sigma standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

impl Estimate {
    /// Whether `target` lies within `k` standard errors.
    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.value - target).abs() <= k * self.std_error
    }
}

/// Outcome histogram; index bit `i` is control `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotCounts {
    n: usize,
    counts: Vec<u64>,
    total_shots: u64,
    rng: RngSpec,
}

impl ShotCounts {
    pub fn from_counts(n: usize, counts: Vec<u64>, rng: RngSpec) -> Result<Self> {
        if n == 0 || n > 40 || counts.len() != 1usize << n {
            return Err(Error::BadLength(counts.len()));
        }
        let total_shots = counts.iter().sum();
        Ok(ShotCounts {
            n,
            counts,
            total_shots,
            rng,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total_shots(&self) -> u64 {
        self.total_shots
    }

    pub fn rng(&self) -> RngSpec {
        self.rng
    }

    pub fn count(&self, outcome: Outcome) -> u64 {
        self.counts.get(outcome.bits() as usize).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Observed outcomes with their counts, in index order.
    pub fn observed(&self) -> impl Iterator<Item = (Outcome, u64)> + '_ {
        let n = self.n;
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| **c > 0)
            .map(move |(i, &c)| (Outcome::new(i as u64, n), c))
    }

    pub fn class_count(&self, class: SignatureClass) -> u64 {
        self.counts
            .iter()
            .enumerate()
            .filter(|(i, _)| class.contains(i.count_ones()))
            .map(|(_, c)| c)
            .sum()
    }
}

fn sampler(dist: &ControlDistribution) -> Result<WeightedIndex<f64>> {
    WeightedIndex::new(dist.probabilities().iter().copied())
        .map_err(|e| Error::invalid(alloc::format!("cannot sample distribution: {e}")))
}

/// One Bernoulli draw; `p = 0` never fires.
fn sample_one(p: f64, rng: &mut impl rand::Rng) -> bool {
    p > 0.0 && rng.random::<f64>() < p
}

/// `shots` independent draws from `dist`.
pub fn sample(dist: &ControlDistribution, shots: u64, rng: RngSpec) -> Result<ShotCounts> {
    if shots == 0 {
        return Err(Error::invalid("at least one shot is required"));
    }
    let index = sampler(dist)?;
    let mut gen = rng.rng();
    let mut counts = vec![0u64; dist.probabilities().len()];
    for _ in 0..shots {
        counts[index.sample(&mut gen)] += 1;
    }
    ShotCounts::from_counts(dist.n(), counts, rng)
}

/// Fraction of shots in `class`, with binomial standard error.
pub fn estimate_signature_probability(counts: &ShotCounts, class: SignatureClass) -> Estimate {
    let shots = counts.total_shots() as f64;
    if shots == 0.0 {
        return Estimate {
            value: 0.0,
            std_error: 0.0,
        };
    }
    let p = counts.class_count(class) as f64 / shots;
    Estimate {
        value: p,
        std_error: math::sqrt(p * (1.0 - p) / shots),
    }
}

/// `2√p̂` with first-order error `σ_p/√p̂`; `0 ± 2/√shots` when nothing was seen.
pub fn estimate_cn(counts: &ShotCounts) -> Estimate {
    let p = estimate_signature_probability(counts, SignatureClass::EvenOnes);
    let shots = counts.total_shots().max(1) as f64;
    if p.value == 0.0 {
        return Estimate {
            value: 0.0,
            std_error: 2.0 / math::sqrt(shots),
        };
    }
    let root = math::sqrt(p.value);
    Estimate {
        value: 2.0 * root,
        std_error: p.std_error / root,
    }
}

/// Mean number of draws until the first even-ones signature, over
/// `repetitions` independent runs.
pub fn trials_to_first_signature(dist: &ControlDistribution, rng: RngSpec, repetitions: u64) -> Result<Estimate> {
    if repetitions == 0 {
        return Err(Error::invalid("at least one repetition is required"));
    }
    if dist.class_total(SignatureClass::EvenOnes) == 0.0 {
        return Err(Error::Undetectable);
    }
    let index = sampler(dist)?;
    let mut gen = rng.rng();
    let (mut sum, mut sum_sq) = (0.0f64, 0.0f64);
    for _ in 0..repetitions {
        let mut draws = 1u64;
        while !SignatureClass::EvenOnes.contains(index.sample(&mut gen).count_ones()) {
            draws += 1;
        }
        let d = draws as f64;
        sum += d;
        sum_sq += d * d;
    }
    let r = repetitions as f64;
    let mean = sum / r;
    let var = if repetitions > 1 {
        ((sum_sq - r * mean * mean) / (r - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(Estimate {
        value: mean,
        std_error: math::sqrt(var / r),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Detected,
    NotDetectedInBudget,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Detected => "DETECTED",
            Verdict::NotDetectedInBudget => "NOT_DETECTED_IN_BUDGET",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassHint {
    GhzLike,
    WLike,
    Indeterminate,
}

impl ClassHint {
    pub fn name(self) -> &'static str {
        match self {
            ClassHint::GhzLike => "GHZ_LIKE",
            ClassHint::WLike => "W_LIKE",
            ClassHint::Indeterminate => "INDETERMINATE",
        }
    }
}

/// Signature observations required before an all-popcount-2 record is
/// called W-like. A GHZ-like state on four qubits puts 1/7 of its signature
/// weight on `1111`, so 50 signatures without one happen with probability
/// below 5e-4.
pub const MIN_W_SIGNATURES: u64 = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementReport {
    pub verdict: Verdict,
    /// Distinct even-ones outcomes observed, in index order.
    pub signatures_seen: Vec<Outcome>,
    pub signature_shots: u64,
    pub c_n_estimate: Estimate,
    /// Set iff any odd-ones outcome was observed.
    pub unequal_copies_flag: bool,
    /// Advisory only.
    pub class_hint: ClassHint,
    pub total_shots: u64,
}

pub fn classify(counts: &ShotCounts) -> EntanglementReport {
    let signatures_seen: Vec<Outcome> = counts
        .observed()
        .filter(|(o, _)| SignatureClass::EvenOnes.contains(o.popcount()))
        .map(|(o, _)| o)
        .collect();
    let signature_shots = counts.class_count(SignatureClass::EvenOnes);
    let unequal_copies_flag = counts.class_count(SignatureClass::OddOnes) > 0;
    let class_hint = if signatures_seen.iter().any(|o| o.popcount() >= 4) {
        ClassHint::GhzLike
    } else if counts.n() >= 4 && signature_shots >= MIN_W_SIGNATURES {
        ClassHint::WLike
    } else {
        ClassHint::Indeterminate
    };
    EntanglementReport {
        verdict: if signature_shots > 0 {
            Verdict::Detected
        } else {
            Verdict::NotDetectedInBudget
        },
        signatures_seen,
        signature_shots,
        c_n_estimate: estimate_cn(counts),
        unequal_copies_flag,
        class_hint,
        total_shots: counts.total_shots(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(n: usize, p: &[f64]) -> ControlDistribution {
        ControlDistribution::from_probabilities(n, p.to_vec()).unwrap()
    }

    #[test]
    fn deterministic_sampling() {
        let d = dist(2, &[0.75, 0.0, 0.0, 0.25]);
        let a = sample(&d, 10_000, RngSpec::new(3, 0)).unwrap();
        let b = sample(&d, 10_000, RngSpec::new(3, 0)).unwrap();
        assert_eq!(a, b);
        let c = sample(&d, 10_000, RngSpec::new(3, 1)).unwrap();
        assert_ne!(a.counts(), c.counts());
        assert_eq!(a.count("01".parse().unwrap()), 0);
        let certain = sample(&dist(2, &[1.0, 0.0, 0.0, 0.0]), 500, RngSpec::default()).unwrap();
        assert_eq!(certain.counts(), &[500, 0, 0, 0]);
        assert!(sample(&d, 0, RngSpec::default()).is_err());
    }

    #[test]
    fn estimators() {
        let zero = ShotCounts::from_counts(2, vec![100, 0, 0, 0], RngSpec::default()).unwrap();
        let p = estimate_signature_probability(&zero, SignatureClass::EvenOnes);
        assert_eq!((p.value, p.std_error), (0.0, 0.0));
        let c = estimate_cn(&zero);
        assert_eq!((c.value, c.std_error), (0.0, 0.2));
        let bell = ShotCounts::from_counts(2, vec![75, 0, 0, 25], RngSpec::default()).unwrap();
        let c = estimate_cn(&bell);
        assert!((c.value - 1.0).abs() < 1e-15);
        let sp = (0.25f64 * 0.75 / 100.0).sqrt();
        assert!((c.std_error - sp / 0.5).abs() < 1e-15);
    }

    #[test]
    fn trials_edge_cases() {
        let sure = dist(2, &[0.0, 0.0, 0.0, 1.0]);
        let t = trials_to_first_signature(&sure, RngSpec::default(), 100).unwrap();
        assert_eq!((t.value, t.std_error), (1.0, 0.0));
        let none = dist(2, &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(
            trials_to_first_signature(&none, RngSpec::default(), 10).unwrap_err(),
            Error::Undetectable
        );
    }

    #[test]
    fn verdicts() {
        let zero = ShotCounts::from_counts(3, vec![10, 0, 0, 0, 0, 0, 0, 0], RngSpec::default()).unwrap();
        let r = classify(&zero);
        assert_eq!(r.verdict, Verdict::NotDetectedInBudget);
        assert_eq!(r.class_hint, ClassHint::Indeterminate);
        assert!(!r.unequal_copies_flag);

        let mut c = vec![0u64; 16];
        c[0] = 100;
        c[0b0011] = 10;
        c[0b1111] = 1;
        let r = classify(&ShotCounts::from_counts(4, c.clone(), RngSpec::default()).unwrap());
        assert_eq!(r.verdict, Verdict::Detected);
        assert_eq!(r.class_hint, ClassHint::GhzLike);
        c[0b1111] = 0;
        c[0b0011] = 49;
        let r = classify(&ShotCounts::from_counts(4, c.clone(), RngSpec::default()).unwrap());
        assert_eq!(r.class_hint, ClassHint::Indeterminate);
        c[0b0101] = 1;
        c[0b0001] = 1;
        let r = classify(&ShotCounts::from_counts(4, c, RngSpec::default()).unwrap());
        assert_eq!(r.class_hint, ClassHint::WLike);
        assert!(r.unequal_copies_flag);
        assert_eq!(r.signatures_seen.len(), 2);
    }
}
