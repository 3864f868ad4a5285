//! Dense statevector and the gate set used by the CSWAP test.
//!
//! Basis label bit `i` is qubit `i` (LSB first). Storage is one `Complex64`
//! per amplitude, 16 bytes each: a 24-qubit state takes 256 MiB plus a bitset
//! of `2^m / 8` bytes while a Hadamard layer runs.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernels;
use crate::math;
use crate::outcome::Outcome;

/// Default cap on the total qubit count of any composite state (3n at n = 8).
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Normalization tolerance for states handed to the simulator.
pub const NORM_TOLERANCE: f64 = 1e-10;

/// Labels are `u64`, and `Outcome` holds at most 64 bits.
const HARD_MAX_QUBITS: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitIndex(pub usize);

impl From<usize> for QubitIndex {
    fn from(i: usize) -> Self {
        QubitIndex(i)
    }
}

impl fmt::Display for QubitIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    Cnot,
    Toffoli,
    Fredkin,
}

impl GateKind {
    /// `(controls, targets)`.
    pub fn arity(self) -> (usize, usize) {
        match self {
            GateKind::H => (0, 1),
            GateKind::Cnot => (1, 1),
            GateKind::Toffoli => (2, 1),
            GateKind::Fredkin => (1, 2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateOp {
    kind: GateKind,
    controls: Vec<QubitIndex>,
    targets: Vec<QubitIndex>,
}

impl GateOp {
    pub fn new(kind: GateKind, controls: Vec<QubitIndex>, targets: Vec<QubitIndex>) -> Result<Self> {
        let (nc, nt) = kind.arity();
        if controls.len() != nc || targets.len() != nt {
            return Err(Error::GateArity {
                kind,
                expected_controls: nc,
                expected_targets: nt,
            });
        }
        let gate = GateOp {
            kind,
            controls,
            targets,
        };
        let qubits: Vec<usize> = gate.qubits().map(|q| q.0).collect();
        for (k, q) in qubits.iter().enumerate() {
            if qubits[..k].contains(q) {
                return Err(Error::DuplicateQubit(*q));
            }
        }
        Ok(gate)
    }

    pub fn hadamard(target: usize) -> Self {
        GateOp {
            kind: GateKind::H,
            controls: Vec::new(),
            targets: alloc::vec![QubitIndex(target)],
        }
    }

    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        GateOp::new(
            GateKind::Cnot,
            alloc::vec![QubitIndex(control)],
            alloc::vec![QubitIndex(target)],
        )
    }

    pub fn toffoli(c1: usize, c2: usize, target: usize) -> Result<Self> {
        GateOp::new(
            GateKind::Toffoli,
            alloc::vec![QubitIndex(c1), QubitIndex(c2)],
            alloc::vec![QubitIndex(target)],
        )
    }

    pub fn fredkin(control: usize, t1: usize, t2: usize) -> Result<Self> {
        GateOp::new(
            GateKind::Fredkin,
            alloc::vec![QubitIndex(control)],
            alloc::vec![QubitIndex(t1), QubitIndex(t2)],
        )
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn controls(&self) -> &[QubitIndex] {
        &self.controls
    }

    pub fn targets(&self) -> &[QubitIndex] {
        &self.targets
    }

    pub fn qubits(&self) -> impl Iterator<Item = QubitIndex> + '_ {
        self.controls.iter().chain(&self.targets).copied()
    }

    fn check_range(&self, num_qubits: usize) -> Result<()> {
        match self.qubits().find(|q| q.0 >= num_qubits) {
            Some(q) => Err(Error::QubitOutOfRange {
                index: q.0,
                num_qubits,
            }),
            None => Ok(()),
        }
    }
}

/// Probabilities of every bit pattern on a selection of qubits.
///
/// Pattern bit `r` corresponds to `qubits()[r]`; as an [`Outcome`] string the
/// first character is `qubits()[0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Marginal {
    qubits: Vec<QubitIndex>,
    probs: Vec<f64>,
}

impl Marginal {
    pub fn qubits(&self) -> &[QubitIndex] {
        &self.qubits
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn into_probabilities(self) -> Vec<f64> {
        self.probs
    }

    pub fn get(&self, outcome: Outcome) -> f64 {
        self.probs.get(outcome.bits() as usize).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Outcome, f64)> + '_ {
        let width = self.qubits.len();
        self.probs
            .iter()
            .enumerate()
            .map(move |(p, &v)| (Outcome::new(p as u64, width), v))
    }
}

/// Dense amplitude array over `num_qubits` qubits.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = f.debug_struct("StateVector");
        s.field("num_qubits", &self.num_qubits);
        if self.num_qubits <= 4 {
            s.field("amplitudes", &self.amps);
        }
        s.finish()
    }
}

impl StateVector {
    fn zeroed(num_qubits: usize) -> Self {
        StateVector {
            num_qubits,
            amps: kernels::zeroed(1usize << num_qubits),
        }
    }

    /// Computational basis state `|label⟩` on `num_qubits` qubits.
    pub fn new_basis_state(num_qubits: usize, label: u64) -> Result<Self> {
        if num_qubits == 0 || num_qubits > HARD_MAX_QUBITS {
            return Err(Error::invalid("qubit count must be between 1 and 40"));
        }
        if label >> num_qubits != 0 {
            return Err(Error::LabelOutOfRange { label, num_qubits });
        }
        let mut state = StateVector::zeroed(num_qubits);
        state.amps[label as usize] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    /// Wraps raw amplitudes. The length must be `2^m` with `m ≥ 1`;
    /// normalization is not checked (see [`StateVector::from_normalized`]).
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadLength(len));
        }
        Ok(StateVector {
            num_qubits: len.trailing_zeros() as usize,
            amps,
        })
    }

    /// Like [`StateVector::from_amplitudes`] but rejects states whose norm
    /// squared deviates from 1 by more than [`NORM_TOLERANCE`].
    pub fn from_normalized(amps: Vec<Complex64>) -> Result<Self> {
        let state = StateVector::from_amplitudes(amps)?;
        state.ensure_normalized()?;
        Ok(state)
    }

    pub fn from_real(amps: &[f64]) -> Result<Self> {
        StateVector::from_amplitudes(amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, label: usize) -> Complex64 {
        self.amps[label]
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn ensure_normalized(&self) -> Result<()> {
        let n2 = self.norm_sqr();
        if (n2 - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(n2));
        }
        Ok(())
    }

    /// Rescales to unit norm, returning the norm before rescaling.
    pub fn normalize(&mut self) -> Result<f64> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::ZeroVector);
        }
        let norm = math::sqrt(n2);
        let inv = 1.0 / norm;
        for a in &mut self.amps {
            *a *= inv;
        }
        Ok(norm)
    }

    /// Multiplies every amplitude by `factor` (e.g. a global phase).
    pub fn scale(&mut self, factor: Complex64) {
        for a in &mut self.amps {
            *a *= factor;
        }
    }

    /// `⟨self|other⟩`, conjugating `self`.
    pub fn inner_product(&self, other: &StateVector) -> Result<Complex64> {
        self.same_size(other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(Complex64::new(0.0, 0.0), |acc, (a, b)| acc + a.conj() * b))
    }

    fn same_size(&self, other: &StateVector) -> Result<()> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::SizeMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        Ok(())
    }

    /// `self ⊗ other` with `self` on the low qubits:
    /// `result[j·2^{m_self} + i] = self[i]·other[j]`.
    pub fn tensor(&self, other: &StateVector, max_qubits: usize) -> Result<StateVector> {
        let m = self.num_qubits + other.num_qubits;
        let max = max_qubits.min(HARD_MAX_QUBITS);
        if m > max {
            return Err(Error::Capacity { requested: m, max });
        }
        let mut out = StateVector::zeroed(m);
        let shift = self.num_qubits;
        for (j, b) in other.amps.iter().enumerate() {
            if b.re == 0.0 && b.im == 0.0 {
                continue;
            }
            for (i, a) in self.amps.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                out.amps[(j << shift) | i] = a * b;
            }
        }
        Ok(out)
    }

    fn check_qubit(&self, q: QubitIndex) -> Result<usize> {
        if q.0 >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                index: q.0,
                num_qubits: self.num_qubits,
            });
        }
        Ok(q.0)
    }

    fn check_distinct(&self, qubits: &[QubitIndex]) -> Result<Vec<usize>> {
        let mut seen = 0u64;
        let mut out = Vec::with_capacity(qubits.len());
        for &q in qubits {
            let q = self.check_qubit(q)?;
            if seen & (1 << q) != 0 {
                return Err(Error::DuplicateQubit(q));
            }
            seen |= 1 << q;
            out.push(q);
        }
        Ok(out)
    }

    pub fn apply_gate(&mut self, gate: &GateOp) -> Result<()> {
        gate.check_range(self.num_qubits)?;
        let t = gate.targets[0].0;
        match gate.kind {
            GateKind::H => kernels::hadamard(&mut self.amps, t),
            GateKind::Cnot | GateKind::Toffoli => {
                let mask = gate.controls.iter().fold(0usize, |m, c| m | (1 << c.0));
                kernels::controlled_flip(&mut self.amps, mask, t);
            }
            GateKind::Fredkin => {
                let c = gate.controls[0].0;
                kernels::controlled_swap(&mut self.amps, 1 << c, t, gate.targets[1].0);
            }
        }
        Ok(())
    }

    pub fn apply_gates<'a>(&mut self, gates: impl IntoIterator<Item = &'a GateOp>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.apply_gate(g))
    }

    /// Swaps qubits `t1` and `t2` on every basis state whose `control` bit is 1.
    pub fn apply_fredkin(&mut self, control: QubitIndex, t1: QubitIndex, t2: QubitIndex) -> Result<()> {
        self.apply_gate(&GateOp::fredkin(control.0, t1.0, t2.0)?)
    }

    /// Hadamard on each of `qubits`, fused into one pass.
    pub fn apply_hadamard_layer(&mut self, qubits: &[QubitIndex]) -> Result<()> {
        let qs = self.check_distinct(qubits)?;
        kernels::hadamard_layer(&mut self.amps, &qs);
        Ok(())
    }

    /// Fredkin gates `(control, t1, t2)` on pairwise disjoint qubits, fused
    /// into one pass.
    pub fn apply_fredkin_layer(&mut self, gates: &[(QubitIndex, QubitIndex, QubitIndex)]) -> Result<()> {
        let flat: Vec<QubitIndex> = gates.iter().flat_map(|&(c, a, b)| [c, a, b]).collect();
        self.check_distinct(&flat)?;
        let triples: Vec<(usize, usize, usize)> = gates.iter().map(|&(c, a, b)| (c.0, a.0, b.0)).collect();
        kernels::swap_layer(&mut self.amps, &triples);
        Ok(())
    }

    /// Probability of each bit pattern on `qubits` (non-empty, distinct).
    pub fn marginal_distribution(&self, qubits: &[QubitIndex]) -> Result<Marginal> {
        if qubits.is_empty() {
            return Err(Error::invalid("marginal over an empty qubit list"));
        }
        let qs = self.check_distinct(qubits)?;
        Ok(Marginal {
            qubits: qubits.to_vec(),
            probs: kernels::marginal(&self.amps, &qs),
        })
    }

    /// `(P(q = 0), P(q = 1))`.
    pub fn qubit_probabilities(&self, q: QubitIndex) -> Result<(f64, f64)> {
        let q = self.check_qubit(q)?;
        let bit = 1usize << q;
        let (p0, p1) = self.amps.iter().enumerate().fold((0.0, 0.0), |(p0, p1), (i, a)| {
            if i & bit == 0 {
                (p0 + a.norm_sqr(), p1)
            } else {
                (p0, p1 + a.norm_sqr())
            }
        });
        Ok((p0, p1))
    }

    /// Projects qubit `q` onto `outcome`, removes it, and renormalizes.
    ///
    /// Returns the outcome probability and the `(m − 1)`-qubit post-measurement
    /// state; qubits above `q` shift down by one.
    pub fn collapse(&self, q: QubitIndex, outcome: bool) -> Result<(f64, StateVector)> {
        let q = self.check_qubit(q)?;
        if self.num_qubits < 2 {
            return Err(Error::invalid("cannot remove the only qubit"));
        }
        let bit = 1usize << q;
        let low = bit - 1;
        let mut rest = StateVector::zeroed(self.num_qubits - 1);
        let mut p = 0.0;
        for (i, a) in self.amps.iter().enumerate() {
            if (i & bit != 0) == outcome {
                let j = ((i >> (q + 1)) << q) | (i & low);
                rest.amps[j] = *a;
                p += a.norm_sqr();
            }
        }
        if p == 0.0 {
            return Err(Error::ZeroProbabilityOutcome);
        }
        let inv = 1.0 / math::sqrt(p);
        for a in &mut rest.amps {
            *a *= inv;
        }
        Ok((p, rest))
    }
}
