//! The equivalence SWAP test and the `n`-qubit entanglement CSWAP test.
//!
//! The default packing puts the test state on qubits `[0, n)`, the copy on
//! `[n, 2n)` and the controls on `[2n, 3n)`, with `a[i]`, `b[i]`, `c[i]`
//! forming the `i`-th Fredkin triple.

use alloc::vec::Vec;

use crate::engine::{GateKind, GateOp, QubitIndex, StateVector, DEFAULT_MAX_QUBITS};
use crate::error::{Error, Result};
use crate::outcome::{Outcome, SignatureClass};

/// Probabilities below this are reported as exactly zero.
pub const CLAMP_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegisterLayout {
    n: usize,
    a: Vec<QubitIndex>,
    b: Vec<QubitIndex>,
    c: Vec<QubitIndex>,
}

impl RegisterLayout {
    pub fn packed(n: usize) -> Self {
        let range = |lo: usize| (lo..lo + n).map(QubitIndex).collect::<Vec<_>>();
        RegisterLayout {
            n,
            a: range(0),
            b: range(n),
            c: range(2 * n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total_qubits(&self) -> usize {
        3 * self.n
    }

    pub fn test_qubits(&self) -> &[QubitIndex] {
        &self.a
    }

    pub fn copy_qubits(&self) -> &[QubitIndex] {
        &self.b
    }

    pub fn control_qubits(&self) -> &[QubitIndex] {
        &self.c
    }

    /// `(c[i], a[i], b[i])` for every `i`.
    pub fn triples(&self) -> Vec<(QubitIndex, QubitIndex, QubitIndex)> {
        (0..self.n).map(|i| (self.c[i], self.a[i], self.b[i])).collect()
    }
}

/// How each controlled swap is executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FredkinForm {
    /// One native Fredkin gate per triple.
    #[default]
    Native,
    /// `CNOT(b→a) · Toffoli(c, a→b) · CNOT(b→a)`. Without the trailing CNOT
    /// the register contents differ but the control marginal does not.
    Decomposed { trailing_cnots: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CircuitOptions {
    pub fredkin: FredkinForm,
    /// Cap on `3n`.
    pub max_qubits: usize,
}

impl Default for CircuitOptions {
    fn default() -> Self {
        CircuitOptions {
            fredkin: FredkinForm::Native,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

fn check_capacity(n: usize, max_qubits: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("the test state needs at least one qubit"));
    }
    if 3 * n > max_qubits {
        return Err(Error::Capacity {
            requested: 3 * n,
            max: max_qubits,
        });
    }
    Ok(())
}

/// Gate list of the entanglement test: `H` on every control, the swaps, then
/// `H` on every control again.
pub fn build_entanglement_test(n: usize, options: &CircuitOptions) -> Result<(Vec<GateOp>, RegisterLayout)> {
    check_capacity(n, options.max_qubits)?;
    let layout = RegisterLayout::packed(n);
    let mut gates = Vec::new();
    gates.extend(layout.c.iter().map(|c| GateOp::hadamard(c.0)));
    for (c, a, b) in layout.triples() {
        match options.fredkin {
            FredkinForm::Native => gates.push(GateOp::fredkin(c.0, a.0, b.0)?),
            FredkinForm::Decomposed { trailing_cnots } => {
                gates.push(GateOp::cnot(b.0, a.0)?);
                gates.push(GateOp::toffoli(c.0, a.0, b.0)?);
                if trailing_cnots {
                    gates.push(GateOp::cnot(b.0, a.0)?);
                }
            }
        }
    }
    gates.extend(layout.c.iter().map(|c| GateOp::hadamard(c.0)));
    Ok((gates, layout))
}

/// Probability of every control-register outcome.
///
/// Index bit `i` is control `i`; as a string, character `i` is control `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlDistribution {
    n: usize,
    probs: Vec<f64>,
}

impl ControlDistribution {
    /// Clamps entries below [`CLAMP_THRESHOLD`] to zero.
    pub fn from_probabilities(n: usize, mut probs: Vec<f64>) -> Result<Self> {
        if n == 0 || n > 63 || probs.len() != 1usize << n {
            return Err(Error::BadLength(probs.len()));
        }
        for p in &mut probs {
            if *p < CLAMP_THRESHOLD {
                *p = 0.0;
            }
        }
        Ok(ControlDistribution { n, probs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn get(&self, outcome: Outcome) -> f64 {
        self.probs.get(outcome.bits() as usize).copied().unwrap_or(0.0)
    }

    pub fn p_zero(&self) -> f64 {
        self.probs[0]
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn class_total(&self, class: SignatureClass) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .filter(|(i, _)| class.contains(i.count_ones()))
            .map(|(_, p)| p)
            .sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Outcome, f64)> + '_ {
        let n = self.n;
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (Outcome::new(i as u64, n), p))
    }

    /// Outcomes with nonzero probability, in index order.
    pub fn support(&self) -> impl Iterator<Item = (Outcome, f64)> + '_ {
        self.iter().filter(|(_, p)| *p > 0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CswapTestResult {
    pub control_dist: ControlDistribution,
    pub final_state: Option<StateVector>,
}

/// The entanglement test with configurable execution.
#[derive(Debug, Clone, Copy, Default)]
pub struct CswapTest {
    pub options: CircuitOptions,
}

impl CswapTest {
    pub fn new(options: CircuitOptions) -> Self {
        CswapTest { options }
    }

    pub fn with_max_qubits(max_qubits: usize) -> Self {
        CswapTest {
            options: CircuitOptions {
                max_qubits,
                ..CircuitOptions::default()
            },
        }
    }

    pub fn initial_state(&self, a: &StateVector, b: &StateVector) -> Result<StateVector> {
        if a.num_qubits() != b.num_qubits() {
            return Err(Error::SizeMismatch {
                left: a.num_qubits(),
                right: b.num_qubits(),
            });
        }
        let n = a.num_qubits();
        check_capacity(n, self.options.max_qubits)?;
        a.ensure_normalized()?;
        b.ensure_normalized()?;
        let controls = StateVector::new_basis_state(n, 0)?;
        a.tensor(b, self.options.max_qubits)?
            .tensor(&controls, self.options.max_qubits)
    }

    pub fn run(&self, a: &StateVector, b: &StateVector, keep_final: bool) -> Result<CswapTestResult> {
        let mut state = self.initial_state(a, b)?;
        let n = a.num_qubits();
        let layout = RegisterLayout::packed(n);
        match self.options.fredkin {
            FredkinForm::Native => {
                state.apply_hadamard_layer(layout.control_qubits())?;
                state.apply_fredkin_layer(&layout.triples())?;
                state.apply_hadamard_layer(layout.control_qubits())?;
            }
            FredkinForm::Decomposed { .. } => {
                let (gates, _) = build_entanglement_test(n, &self.options)?;
                state.apply_gates(&gates)?;
            }
        }
        let probs = state
            .marginal_distribution(layout.control_qubits())?
            .into_probabilities();
        Ok(CswapTestResult {
            control_dist: ControlDistribution::from_probabilities(n, probs)?,
            final_state: keep_final.then_some(state),
        })
    }
}

/// Runs the entanglement test with the default options.
pub fn run_entanglement_test(a: &StateVector, b: &StateVector, keep_final: bool) -> Result<CswapTestResult> {
    CswapTest::default().run(a, b, keep_final)
}

/// Probability of reading the single control as `|1⟩` after
/// `H · CSWAP(ψ, φ) · H`, i.e. `(1 − |⟨ψ|φ⟩|²) / 2`.
pub fn run_equivalence_test(psi: &StateVector, phi: &StateVector) -> Result<f64> {
    if psi.num_qubits() != phi.num_qubits() {
        return Err(Error::SizeMismatch {
            left: psi.num_qubits(),
            right: phi.num_qubits(),
        });
    }
    psi.ensure_normalized()?;
    phi.ensure_normalized()?;
    let m = psi.num_qubits();
    let control = StateVector::new_basis_state(1, 0)?;
    let max = 2 * m + 1;
    if max > DEFAULT_MAX_QUBITS {
        return Err(Error::Capacity {
            requested: max,
            max: DEFAULT_MAX_QUBITS,
        });
    }
    let mut state = psi.tensor(phi, max)?.tensor(&control, max)?;
    let c = QubitIndex(2 * m);
    state.apply_gate(&GateOp::hadamard(c.0))?;
    for i in 0..m {
        state.apply_fredkin(c, QubitIndex(i), QubitIndex(m + i))?;
    }
    state.apply_gate(&GateOp::hadamard(c.0))?;
    let (_, p1) = state.qubit_probabilities(c)?;
    Ok(if p1 < CLAMP_THRESHOLD { 0.0 } else { p1 })
}

/// Fidelity `|⟨initial|final⟩|²` of the composite state across one test with
/// `b = a`.
pub fn check_nondestructive(a: &StateVector) -> Result<f64> {
    let test = CswapTest::default();
    let initial = test.initial_state(a, a)?;
    let result = test.run(a, a, true)?;
    let final_state = result.final_state.ok_or(Error::invalid("final state missing"))?;
    Ok(initial.inner_product(&final_state)?.norm_sqr())
}

/// The gate kinds used by a gate list, for reporting.
pub fn gate_counts(gates: &[GateOp]) -> [(GateKind, usize); 4] {
    let mut out = [
        (GateKind::H, 0),
        (GateKind::Cnot, 0),
        (GateKind::Toffoli, 0),
        (GateKind::Fredkin, 0),
    ];
    for g in gates {
        if let Some(slot) = out.iter_mut().find(|(k, _)| *k == g.kind()) {
            slot.1 += 1;
        }
    }
    out
}
