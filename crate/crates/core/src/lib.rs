//! Dense statevector simulation of the controlled-SWAP (CSWAP) test for
//! pure-state entanglement.
//!
//! Two copies of an `n`-qubit test state are interfered through `n`
//! controlled swaps and the control register is measured. Outcomes with a
//! nonzero even number of ones ("entanglement signatures") can only occur when
//! the test state is entangled; their total probability yields the degree of
//! entanglement `C_n = 2·√P(even)`, which reduces to the two-qubit concurrence
//! at `n = 2`.
//!
//! The crate is `no_std` (with `alloc`) and is organised as:
//!
//! - [`engine`]: the amplitude array and in-place gate kernels.
//! - [`circuit`]: the equivalence SWAP test and the entanglement CSWAP test.
//! - [`states`]: Bell, GHZ, W and their unbalanced/corrupted variants.
//! - [`oracles`]: closed-form control distributions, efficiency figures and
//!   the LOCC check, each usable as an independent check on the simulator.
//! - [`estimate`]: seeded shot sampling, estimators and verdicts.
//!
//! Conventions, fixed everywhere: basis label bit `i` is qubit `i` (LSB
//! first); kets written as strings are most-significant qubit first, so
//! `|0…01⟩` is label 1. Control-register outcome strings are the reverse:
//! character `i` is the control paired with test qubit `i`, so `"10"` means
//! control 0 fired.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod circuit;
pub mod engine;
mod error;
pub mod estimate;
mod kernels;
mod math;
pub mod oracles;
mod outcome;
pub mod states;
#[cfg(feature = "test-utils")]
pub mod testutil;

pub use circuit::{ControlDistribution, CswapTestResult, RegisterLayout};
pub use engine::{GateKind, GateOp, QubitIndex, StateVector};
pub use error::{Error, Result};
pub use outcome::{Outcome, SignatureClass};
pub use states::StateSpec;

pub use num_complex::Complex64;
