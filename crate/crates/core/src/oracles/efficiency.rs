//! Expected trial counts and the tomography comparison.

use core::fmt;

use crate::error::{Error, Result};
use crate::math;

/// Expected number of trials, or `Undetectable` when no signature can occur.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Trials {
    Expected(f64),
    Undetectable,
}

impl Trials {
    pub fn value(self) -> Option<f64> {
        match self {
            Trials::Expected(v) => Some(v),
            Trials::Undetectable => None,
        }
    }
}

impl fmt::Display for Trials {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trials::Expected(v) => write!(f, "{v}"),
            Trials::Undetectable => f.write_str("undetectable"),
        }
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0 + 1e-12).contains(&p) {
        return Err(Error::invalid(alloc::format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

/// `1 / p_signature`.
pub fn expected_trials_any(p_signature: f64) -> Result<Trials> {
    check_probability(p_signature)?;
    Ok(if p_signature == 0.0 {
        Trials::Undetectable
    } else {
        Trials::Expected(1.0 / p_signature)
    })
}

/// `4 / C_n²`.
pub fn expected_trials_from_cn(cn: f64) -> Result<Trials> {
    if cn.is_nan() || cn < 0.0 {
        return Err(Error::invalid(alloc::format!("degree of entanglement {cn} is negative or NaN")));
    }
    Ok(if cn == 0.0 {
        Trials::Undetectable
    } else {
        Trials::Expected(4.0 / (cn * cn))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GenuineClass {
    GhzLike,
    WLike,
}

impl GenuineClass {
    pub fn name(self) -> &'static str {
        match self {
            GenuineClass::GhzLike => "ghz_like",
            GenuineClass::WLike => "w_like",
        }
    }
}

/// `x(n)`: `2^(n−2)` for GHZ-like, `(n−1)(n−2)/2 + 1` for W-like.
pub fn genuine_exponent(n: usize, class: GenuineClass) -> Result<u64> {
    if n < 2 {
        return Err(Error::invalid("genuine entanglement needs at least two qubits"));
    }
    let n = n as u64;
    Ok(match class {
        GenuineClass::GhzLike => 1u64
            .checked_shl((n - 2) as u32)
            .ok_or(Error::invalid("exponent overflows"))?,
        GenuineClass::WLike => (n - 1) * (n - 2) / 2 + 1,
    })
}

/// `(1 / p_signature)^x(n)`.
pub fn expected_trials_genuine(n: usize, class: GenuineClass, p_signature: f64) -> Result<Trials> {
    let x = genuine_exponent(n, class)?;
    Ok(match expected_trials_any(p_signature)? {
        Trials::Expected(e) => Trials::Expected(math::powf(e, x as f64)),
        Trials::Undetectable => Trials::Undetectable,
    })
}

/// `3ⁿ`, or `None` past `u128`.
pub fn tomography_baseline(n: u32) -> Option<u128> {
    3u128.checked_pow(n)
}

/// `C_n` at which `4/C_n² = 3ⁿ`, i.e. `√(4/3ⁿ)`.
pub fn tomography_crossover(n: u32) -> f64 {
    2.0 / math::powf(3.0, n as f64 / 2.0)
}

/// `2·√(½ − 1/2ⁿ)`, the GHZ value and the top of the tomography comparison
/// range. It is not a bound for `n ≥ 4`: since `P(0ⁿ) ≥ 2¹⁻ⁿ` the degree can
/// reach up to [`cn_bound`], and random states exceed this value.
pub fn cn_max(n: usize) -> f64 {
    2.0 * math::sqrt(0.5 - 1.0 / math::pow2i(n as u32))
}

/// `2·√(1 − 2¹⁻ⁿ)`, from `P(0ⁿ) ≥ 2¹⁻ⁿ` for identical copies.
pub fn cn_bound(n: usize) -> f64 {
    2.0 * math::sqrt(1.0 - 2.0 / math::pow2i(n as u32))
}
