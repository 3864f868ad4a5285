//! Constructors for every test-state family.
//!
//! Ket strings in doc comments are written most-significant qubit first, so
//! `|0…01⟩` has qubit 0 set (label 1).

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_4;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::engine::StateVector;
use crate::error::{Error, Result};
use crate::math;

/// Deviation of the norm below which a general state is rescaled silently.
const SILENT_RENORMALIZE: f64 = 1e-10;
/// Deviation of the norm above which a general state is rejected.
const MAX_RENORMALIZE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellVariant {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    PsiMinus,
}

impl BellVariant {
    pub const ALL: [BellVariant; 4] = [
        BellVariant::PhiPlus,
        BellVariant::PhiMinus,
        BellVariant::PsiPlus,
        BellVariant::PsiMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BellVariant::PhiPlus => "phi+",
            BellVariant::PhiMinus => "phi-",
            BellVariant::PsiPlus => "psi+",
            BellVariant::PsiMinus => "psi-",
        }
    }
}

impl fmt::Display for BellVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BellVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BellVariant::ALL
            .into_iter()
            .find(|v| v.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::invalid(alloc::format!("unknown Bell variant {s:?}")))
    }
}

/// Declarative description of a test or copy state.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec {
    /// `|label⟩` on `n` qubits.
    ProductBasis { n: usize, label: u64 },
    Bell(BellVariant),
    /// `(|0⟩ⁿ + |1⟩ⁿ)/√2`.
    Ghz { n: usize },
    /// Uniform superposition of the `n` single-excitation states.
    W { n: usize },
    /// `sin(π/4 + δ)|0⟩ⁿ + cos(π/4 + δ)|1⟩ⁿ`.
    UnbalancedGhz { n: usize, delta: f64 },
    /// W state with the qubit-0 amplitude scaled by `cos δ` and the others
    /// raised to compensate.
    UnbalancedW { n: usize, delta: f64 },
    /// `cos φ·GHZ(n) + sin φ·|extra⟩`; the default extra state is `|0…01⟩`.
    CorruptedGhz { n: usize, phi: f64, extra: u64 },
    /// `cos φ·W(n) + sin φ·|extra⟩`; the default extra state is `|0⟩ⁿ`.
    CorruptedW { n: usize, phi: f64, extra: u64 },
    /// Arbitrary amplitudes, indexed by basis label.
    General { amplitudes: Vec<Complex64> },
}

impl StateSpec {
    pub const DEFAULT_GHZ_EXTRA: u64 = 1;
    pub const DEFAULT_W_EXTRA: u64 = 0;

    pub fn corrupted_ghz(n: usize, phi: f64) -> Self {
        StateSpec::CorruptedGhz {
            n,
            phi,
            extra: Self::DEFAULT_GHZ_EXTRA,
        }
    }

    pub fn corrupted_w(n: usize, phi: f64) -> Self {
        StateSpec::CorruptedW {
            n,
            phi,
            extra: Self::DEFAULT_W_EXTRA,
        }
    }

    /// Family identifier as used in the textual and JSON encodings.
    pub fn family(&self) -> &'static str {
        match self {
            StateSpec::ProductBasis { .. } => "product",
            StateSpec::Bell(_) => "bell",
            StateSpec::Ghz { .. } => "ghz",
            StateSpec::W { .. } => "w",
            StateSpec::UnbalancedGhz { .. } => "unbalanced_ghz",
            StateSpec::UnbalancedW { .. } => "unbalanced_w",
            StateSpec::CorruptedGhz { .. } => "corrupted_ghz",
            StateSpec::CorruptedW { .. } => "corrupted_w",
            StateSpec::General { .. } => "general",
        }
    }

    /// Qubit count, or an error for a malformed general amplitude list.
    pub fn num_qubits(&self) -> Result<usize> {
        match self {
            StateSpec::ProductBasis { n, .. }
            | StateSpec::Ghz { n }
            | StateSpec::W { n }
            | StateSpec::UnbalancedGhz { n, .. }
            | StateSpec::UnbalancedW { n, .. }
            | StateSpec::CorruptedGhz { n, .. }
            | StateSpec::CorruptedW { n, .. } => Ok(*n),
            StateSpec::Bell(_) => Ok(2),
            StateSpec::General { amplitudes } => {
                let len = amplitudes.len();
                if len < 2 || !len.is_power_of_two() {
                    return Err(Error::BadLength(len));
                }
                Ok(len.trailing_zeros() as usize)
            }
        }
    }

    pub fn build(&self) -> Result<StateVector> {
        match *self {
            StateSpec::ProductBasis { n, label } => StateVector::new_basis_state(n, label),
            StateSpec::Bell(v) => Ok(bell(v)),
            StateSpec::Ghz { n } => ghz(n),
            StateSpec::W { n } => w(n),
            StateSpec::UnbalancedGhz { n, delta } => build_unbalanced_ghz(n, delta),
            StateSpec::UnbalancedW { n, delta } => build_unbalanced_w(n, delta),
            StateSpec::CorruptedGhz { n, phi, extra } => build_corrupted(Corruptible::Ghz, n, phi, extra),
            StateSpec::CorruptedW { n, phi, extra } => build_corrupted(Corruptible::W, n, phi, extra),
            StateSpec::General { ref amplitudes } => general(amplitudes),
        }
    }
}

/// A test state and the copy fed to the second register.
#[derive(Debug, Clone, PartialEq)]
pub struct PairSpec {
    pub test: StateSpec,
    pub copy: StateSpec,
}

impl PairSpec {
    pub fn equal(spec: StateSpec) -> Self {
        PairSpec {
            copy: spec.clone(),
            test: spec,
        }
    }

    pub fn new(test: StateSpec, copy: StateSpec) -> Result<Self> {
        let (a, b) = (test.num_qubits()?, copy.num_qubits()?);
        if a != b {
            return Err(Error::SizeMismatch { left: a, right: b });
        }
        Ok(PairSpec { test, copy })
    }

    pub fn build(&self) -> Result<(StateVector, StateVector)> {
        Ok((self.test.build()?, self.copy.build()?))
    }
}

fn check_family_size(n: usize) -> Result<()> {
    if !(2..=40).contains(&n) {
        return Err(Error::invalid(alloc::format!(
            "family states need between 2 and 40 qubits, got {n}"
        )));
    }
    Ok(())
}

fn sparse(n: usize, entries: &[(usize, f64)]) -> StateVector {
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
    for &(label, x) in entries {
        amps[label] += Complex64::new(x, 0.0);
    }
    StateVector::from_amplitudes(amps).expect("power-of-two length")
}

pub fn bell(variant: BellVariant) -> StateVector {
    let h = math::FRAC_1_SQRT_2;
    let entries = match variant {
        BellVariant::PhiPlus => [(0, h), (3, h)],
        BellVariant::PhiMinus => [(0, h), (3, -h)],
        BellVariant::PsiPlus => [(1, h), (2, h)],
        BellVariant::PsiMinus => [(1, h), (2, -h)],
    };
    sparse(2, &entries)
}

pub fn ghz(n: usize) -> Result<StateVector> {
    build_unbalanced_ghz(n, 0.0)
}

pub fn w(n: usize) -> Result<StateVector> {
    check_family_size(n)?;
    let r = 1.0 / math::sqrt(n as f64);
    let entries: Vec<(usize, f64)> = (0..n).map(|q| (1 << q, r)).collect();
    Ok(sparse(n, &entries))
}

/// `(α₀, α₁) = (sin(π/4 + δ), cos(π/4 + δ))`.
pub fn unbalanced_ghz_amplitudes(delta: f64) -> (f64, f64) {
    if delta == 0.0 {
        return (math::FRAC_1_SQRT_2, math::FRAC_1_SQRT_2);
    }
    (math::sin(FRAC_PI_4 + delta), math::cos(FRAC_PI_4 + delta))
}

/// `δ = sin⁻¹√(2/3) − π/4`, where the unbalanced GHZ₃ becomes
/// `√(2/3)|000⟩ + √(1/3)|111⟩` and mimics W₃ in the plain test.
pub fn ghz3_w3_mimic_delta() -> f64 {
    math::asin(math::sqrt(2.0 / 3.0)) - FRAC_PI_4
}

pub fn build_unbalanced_ghz(n: usize, delta: f64) -> Result<StateVector> {
    check_family_size(n)?;
    let (a0, a1) = unbalanced_ghz_amplitudes(delta);
    Ok(sparse(n, &[(0, a0), ((1 << n) - 1, a1)]))
}

/// `(a₁, a₂)`: the qubit-0 amplitude and each of the other `n − 1`.
pub fn unbalanced_w_amplitudes(n: usize, delta: f64) -> (f64, f64) {
    let nf = n as f64;
    if delta == 0.0 {
        let r = 1.0 / math::sqrt(nf);
        return (r, r);
    }
    let c = math::cos(delta);
    let a1 = c / math::sqrt(nf);
    let a2 = math::sqrt((1.0 / (nf - 1.0) - c * c / (nf * (nf - 1.0))).max(0.0));
    (a1, a2)
}

pub fn build_unbalanced_w(n: usize, delta: f64) -> Result<StateVector> {
    check_family_size(n)?;
    let (a1, a2) = unbalanced_w_amplitudes(n, delta);
    let entries: Vec<(usize, f64)> = (0..n)
        .map(|q| (1 << q, if q == 0 { a1 } else { a2 }))
        .collect();
    Ok(sparse(n, &entries))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Corruptible {
    Ghz,
    W,
}

/// `cos φ·base + sin φ·|extra⟩`. The extra state must lie outside the support
/// of the base state, so the sum is normalized.
pub fn build_corrupted(family: Corruptible, n: usize, phi: f64, extra: u64) -> Result<StateVector> {
    check_family_size(n)?;
    if extra >> n != 0 {
        return Err(Error::LabelOutOfRange { label: extra, num_qubits: n });
    }
    let base = match family {
        Corruptible::Ghz => ghz(n)?,
        Corruptible::W => w(n)?,
    };
    let extra = extra as usize;
    if base.amplitude(extra) != Complex64::new(0.0, 0.0) {
        return Err(Error::invalid(alloc::format!(
            "extra basis state {extra} overlaps the base state"
        )));
    }
    if phi == 0.0 {
        return Ok(base);
    }
    let (s, c) = (math::sin(phi), math::cos(phi));
    let mut amps = base.into_amplitudes();
    for a in &mut amps {
        *a *= c;
    }
    amps[extra] = Complex64::new(s, 0.0);
    StateVector::from_amplitudes(amps)
}

fn general(amplitudes: &[Complex64]) -> Result<StateVector> {
    let mut state = StateVector::from_amplitudes(amplitudes.to_vec())?;
    let n2 = state.norm_sqr();
    if n2 == 0.0 {
        return Err(Error::ZeroVector);
    }
    let deviation = (math::sqrt(n2) - 1.0).abs();
    if deviation > MAX_RENORMALIZE {
        return Err(Error::NotNormalized(n2));
    }
    if deviation > SILENT_RENORMALIZE {
        log::warn!("general state has norm deviation {deviation:e}; renormalizing");
    }
    if deviation > 0.0 {
        state.normalize()?;
    }
    Ok(state)
}

/// Description of a spec, e.g. `ghz:3` or `unbalanced_w:4:0.3`.
impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::ProductBasis { n, label } => write!(f, "product:{n}:{label}"),
            StateSpec::Bell(v) => write!(f, "bell:{v}"),
            StateSpec::Ghz { n } => write!(f, "ghz:{n}"),
            StateSpec::W { n } => write!(f, "w:{n}"),
            StateSpec::UnbalancedGhz { n, delta } => write!(f, "unbalanced_ghz:{n}:{delta}"),
            StateSpec::UnbalancedW { n, delta } => write!(f, "unbalanced_w:{n}:{delta}"),
            StateSpec::CorruptedGhz { n, phi, extra } => write!(f, "corrupted_ghz:{n}:{phi}:{extra}"),
            StateSpec::CorruptedW { n, phi, extra } => write!(f, "corrupted_w:{n}:{phi}:{extra}"),
            StateSpec::General { amplitudes } => {
                f.write_str("general:[")?;
                for (i, a) in amplitudes.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    if a.im == 0.0 {
                        write!(f, "{}", a.re)?;
                    } else {
                        write!(f, "{}{:+}i", a.re, a.im)?;
                    }
                }
                f.write_str("]")
            }
        }
    }
}

/// Parses the compact `family:params` grammar:
///
/// ```text
/// product:N:LABEL   bell:phi+|phi-|psi+|psi-   ghz:N   w:N
/// unbalanced_ghz:N:DELTA   unbalanced_w:N:DELTA
/// corrupted_ghz:N:PHI[:EXTRA]   corrupted_w:N:PHI[:EXTRA]
/// general:[a0,a1,...]   (entries are real numbers or RE+IMi)
/// ```
impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (family, rest) = s.split_once(':').unwrap_or((s, ""));
        let family = family.to_ascii_lowercase();
        if family == "general" {
            return parse_general(rest);
        }
        let params: Vec<&str> = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split(':').map(str::trim).collect()
        };
        let want = |lo: usize, hi: usize| -> Result<()> {
            if params.len() < lo || params.len() > hi {
                return Err(Error::invalid(alloc::format!(
                    "{family} takes {lo} to {hi} parameters, got {}",
                    params.len()
                )));
            }
            Ok(())
        };
        let int = |i: usize| -> Result<u64> {
            params[i]
                .parse::<u64>()
                .map_err(|_| Error::invalid(alloc::format!("expected an integer, got {:?}", params[i])))
        };
        let real = |i: usize| -> Result<f64> {
            params[i]
                .parse::<f64>()
                .map_err(|_| Error::invalid(alloc::format!("expected a number, got {:?}", params[i])))
        };
        let spec = match family.as_str() {
            "product" => {
                want(2, 2)?;
                StateSpec::ProductBasis {
                    n: int(0)? as usize,
                    label: int(1)?,
                }
            }
            "bell" => {
                want(1, 1)?;
                StateSpec::Bell(params[0].parse()?)
            }
            "ghz" => {
                want(1, 1)?;
                StateSpec::Ghz { n: int(0)? as usize }
            }
            "w" => {
                want(1, 1)?;
                StateSpec::W { n: int(0)? as usize }
            }
            "unbalanced_ghz" => {
                want(2, 2)?;
                StateSpec::UnbalancedGhz {
                    n: int(0)? as usize,
                    delta: real(1)?,
                }
            }
            "unbalanced_w" => {
                want(2, 2)?;
                StateSpec::UnbalancedW {
                    n: int(0)? as usize,
                    delta: real(1)?,
                }
            }
            "corrupted_ghz" => {
                want(2, 3)?;
                StateSpec::CorruptedGhz {
                    n: int(0)? as usize,
                    phi: real(1)?,
                    extra: if params.len() == 3 { int(2)? } else { StateSpec::DEFAULT_GHZ_EXTRA },
                }
            }
            "corrupted_w" => {
                want(2, 3)?;
                StateSpec::CorruptedW {
                    n: int(0)? as usize,
                    phi: real(1)?,
                    extra: if params.len() == 3 { int(2)? } else { StateSpec::DEFAULT_W_EXTRA },
                }
            }
            other => return Err(Error::invalid(alloc::format!("unknown state family {other:?}"))),
        };
        Ok(spec)
    }
}

fn parse_general(rest: &str) -> Result<StateSpec> {
    let body = rest
        .trim()
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| Error::invalid("general amplitudes must be written as [a0,a1,...]"))?;
    let amplitudes = body
        .split(',')
        .map(parse_complex)
        .collect::<Result<Vec<_>>>()?;
    Ok(StateSpec::General { amplitudes })
}

/// `1`, `-0.5`, `2i`, `0.3-0.4i`, `1e-3+2e-1i`.
fn parse_complex(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::invalid(alloc::format!("cannot parse amplitude {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not the leading sign or an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.trim_start_matches('+').parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}
