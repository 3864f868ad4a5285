//! Ideal GHZ/W distributions and the six perturbed families.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use super::small::zeros;
use super::AnalyticDistribution;
use crate::error::{Error, Result};
use crate::math;
use crate::outcome::SignatureClass::{self, AllZero, EvenOnes, ExactlyOneOne, ExactlyTwoOnes, OddOnes};
use crate::states::{unbalanced_ghz_amplitudes, unbalanced_w_amplitudes, PairSpec, StateSpec};

const NORM_TOL: f64 = 1e-10;

fn inv_pow2(n: usize) -> f64 {
    1.0 / math::pow2i(n as u32)
}

/// Per-outcome tables are only materialised up to this width.
const MAX_TABLE_WIDTH: usize = 24;

pub fn ghz_maximal(n: usize) -> AnalyticDistribution {
    let each = inv_pow2(n);
    let nf = n as f64;
    let mut d = AnalyticDistribution::new(n, 0.5 + each)
        .with(EvenOnes, 0.5 - each)
        .with(OddOnes, 0.0)
        .with(ExactlyOneOne, 0.0)
        .with(ExactlyTwoOnes, nf * (nf - 1.0) / 2.0 * each);
    if n <= MAX_TABLE_WIDTH {
        let mut p = zeros(n);
        p[0] = 0.5 + each;
        for (i, v) in p.iter_mut().enumerate().skip(1) {
            if EvenOnes.contains(i.count_ones()) {
                *v = each;
            }
        }
        d.per_outcome = Some(p);
    }
    d
}

pub fn w_maximal(n: usize) -> AnalyticDistribution {
    let nf = n as f64;
    let two = 0.5 - 0.5 / nf;
    let mut d = AnalyticDistribution::new(n, 0.5 + 0.5 / nf)
        .with(ExactlyTwoOnes, two)
        .with(EvenOnes, two)
        .with(OddOnes, 0.0)
        .with(ExactlyOneOne, 0.0);
    if n <= MAX_TABLE_WIDTH {
        let mut p = zeros(n);
        p[0] = 0.5 + 0.5 / nf;
        for (i, v) in p.iter_mut().enumerate() {
            if i.count_ones() == 2 {
                *v = 1.0 / (nf * nf);
            }
        }
        d.per_outcome = Some(p);
    }
    d
}

/// Even-ones-only distribution of a copy-equal GHZ-like pair.
fn ghz_like_equal(n: usize, p_zero: f64) -> AnalyticDistribution {
    AnalyticDistribution::new(n, p_zero)
        .with(EvenOnes, 1.0 - p_zero)
        .with(OddOnes, 0.0)
}

/// Two-ones-only distribution of a copy-equal W-like pair.
fn w_like_equal(n: usize, p_zero: f64) -> AnalyticDistribution {
    AnalyticDistribution::new(n, p_zero)
        .with(ExactlyTwoOnes, 1.0 - p_zero)
        .with(EvenOnes, 1.0 - p_zero)
        .with(OddOnes, 0.0)
        .with(ExactlyOneOne, 0.0)
}

/// `sin(π/4 + δ)|0⟩ⁿ + cos(π/4 + δ)|1⟩ⁿ` for both registers, trigonometric form.
pub fn unbalanced_ghz_dist(n: usize, delta: f64) -> AnalyticDistribution {
    let (s, c) = (math::sin(delta), math::cos(delta));
    let p0 = (0.5 + inv_pow2(n)) + (2.0 - 4.0 * inv_pow2(n)) * c * c * s * s;
    ghz_like_equal(n, p0)
}

/// `α₀|0⟩ⁿ + α₁|1⟩ⁿ` for both registers.
pub fn unbalanced_ghz_amplitude_form(n: usize, alpha0: f64, alpha1: f64) -> AnalyticDistribution {
    let k = (math::pow2i(n as u32 - 1) - 1.0) / math::pow2i(n as u32 - 2);
    let even = k * alpha0 * alpha0 * alpha1 * alpha1;
    ghz_like_equal(n, 1.0 - even)
}

/// Unbalanced W for both registers, evaluated from the single-excitation
/// pair sums: `P₀ = ½ + 1/(2n) + sin⁴δ / (2n(n−1))`.
pub fn unbalanced_w_dist(n: usize, delta: f64) -> AnalyticDistribution {
    let nf = n as f64;
    let s2 = math::sin(delta) * math::sin(delta);
    w_like_equal(n, 0.5 + 0.5 / nf + s2 * s2 / (2.0 * nf * (nf - 1.0)))
}

/// `a₁` on qubit 0 and `a₂` on each other single excitation, both registers.
pub fn unbalanced_w_amplitude_form(n: usize, a1: f64, a2: f64) -> AnalyticDistribution {
    let nf = n as f64;
    let two = (nf - 1.0) * a2 * a2 * (a1 * a1 + (nf - 2.0) / 2.0 * a2 * a2);
    w_like_equal(n, 1.0 - two)
}

fn check_norm(v: &[Complex64], what: &str) -> Result<()> {
    let n2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    if (n2 - 1.0).abs() > NORM_TOL {
        return Err(Error::invalid(alloc::format!(
            "{what} amplitudes are not normalized (norm squared {n2})"
        )));
    }
    Ok(())
}

/// Test `α₀|0⟩ⁿ + α₁|1⟩ⁿ` against copy `β₀|0⟩ⁿ + β₁|1⟩ⁿ`.
pub fn unequal_ghz_dist(n: usize, alpha: [Complex64; 2], beta: [Complex64; 2]) -> Result<AnalyticDistribution> {
    check_norm(&alpha, "test")?;
    check_norm(&beta, "copy")?;
    let plus = (alpha[0] * beta[1] + alpha[1] * beta[0]).norm_sqr();
    let minus = (alpha[0] * beta[1] - alpha[1] * beta[0]).norm_sqr();
    let p0 = alpha[0].norm_sqr() * beta[0].norm_sqr() + alpha[1].norm_sqr() * beta[1].norm_sqr() + inv_pow2(n) * plus;
    Ok(AnalyticDistribution::new(n, p0)
        .with(OddOnes, 0.5 * minus)
        .with(EvenOnes, (0.5 - inv_pow2(n)) * plus))
}

/// `GHZ(n)` against the unbalanced copy at `δ`.
pub fn unequal_ghz_trig(n: usize, delta: f64) -> AnalyticDistribution {
    let s2 = math::sin(delta) * math::sin(delta);
    let base = 0.5 + inv_pow2(n);
    AnalyticDistribution::new(n, base - inv_pow2(n) * s2)
        .with(OddOnes, 0.5 * s2)
        .with(EvenOnes, (1.0 - base) * (1.0 - s2))
}

/// Single-excitation test `Σ aᵢ|…1ᵢ…⟩` against copy `Σ bⱼ|…1ⱼ…⟩`; entry `k`
/// of each slice is the amplitude with qubit `k` excited.
pub fn unequal_w_dist(a: &[Complex64], b: &[Complex64]) -> Result<AnalyticDistribution> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let n = a.len();
    if !(2..=MAX_TABLE_WIDTH).contains(&n) {
        return Err(Error::invalid("single-excitation forms need 2 to 24 qubits"));
    }
    check_norm(a, "test")?;
    check_norm(b, "copy")?;
    let mut p = zeros(n);
    let mut p0 = 0.0;
    for i in 0..n {
        p0 += a[i].norm_sqr() * b[i].norm_sqr();
        for j in 0..n {
            if j == i {
                continue;
            }
            let sym = (a[i] * b[j] + a[j] * b[i]).norm_sqr();
            let anti = (a[i] * b[j] - a[j] * b[i]).norm_sqr();
            p0 += sym / 8.0;
            p[1 << i] += anti / 4.0;
            if j > i {
                p[(1 << i) | (1 << j)] = sym / 4.0;
            }
        }
    }
    p[0] = p0;
    Ok(AnalyticDistribution::from_outcomes(n, p))
}

fn unequal_w_from_bracket(n: usize, bracket: f64) -> AnalyticDistribution {
    let nf = n as f64;
    let k = (nf - 1.0) / (4.0 * nf * nf);
    let two = 0.5 - 0.5 / nf - k * bracket;
    AnalyticDistribution::new(n, 0.5 + 0.5 / nf - k * bracket)
        .with(ExactlyOneOne, 2.0 * k * bracket)
        .with(OddOnes, 2.0 * k * bracket)
        .with(ExactlyTwoOnes, two)
        .with(EvenOnes, two)
}

/// `W(n)` against the unbalanced-W copy at `δ`, with bracket
/// `(√(1 + sin²δ/(n−1)) − cos δ)²`.
pub fn unequal_w_trig(n: usize, delta: f64) -> AnalyticDistribution {
    let (s, c) = (math::sin(delta), math::cos(delta));
    let r = math::sqrt(1.0 + s * s / (n as f64 - 1.0));
    unequal_w_from_bracket(n, (r - c) * (r - c))
}

/// `cos φ·GHZ(n) + sin φ·|0…01⟩` for both registers.
pub fn corrupted_ghz_dist(n: usize, phi: f64) -> AnalyticDistribution {
    let s2 = math::sin(phi) * math::sin(phi);
    let extra = inv_pow2(n) * s2 * (2.0 + (math::pow2i(n as u32 - 1) - 3.0) * s2);
    ghz_like_equal(n, 0.5 + inv_pow2(n) + extra)
}

/// `cos φ·W(n) + sin φ·|0⟩ⁿ` for both registers.
pub fn corrupted_w_dist(n: usize, phi: f64) -> AnalyticDistribution {
    let nf = n as f64;
    let s2 = math::sin(phi) * math::sin(phi);
    w_like_equal(n, 0.5 + 0.5 / nf + (nf - 1.0) / (2.0 * nf) * s2 * (2.0 - s2))
}

/// Expressions exactly as printed where they disagree with the circuit.
pub mod printed {
    use super::*;

    /// `P₀ = ½ + 1/(2n) − sin²δ (4(n−1) + (n−2) sin²δ) / (2n²(n−1))`.
    pub fn unbalanced_w_trig(n: usize, delta: f64) -> AnalyticDistribution {
        let nf = n as f64;
        let s2 = math::sin(delta) * math::sin(delta);
        let dev = s2 * (4.0 * (nf - 1.0) + (nf - 2.0) * s2) / (2.0 * nf * nf * (nf - 1.0));
        w_like_equal(n, 0.5 + 0.5 / nf - dev)
    }

    /// Two-ones total with coefficient `(n−1)/2` inside the bracket.
    pub fn unbalanced_w_amplitude_form(n: usize, a1: f64, a2: f64) -> AnalyticDistribution {
        let nf = n as f64;
        let two = (nf - 1.0) * a2 * a2 * (a1 * a1 + (nf - 1.0) / 2.0 * a2 * a2);
        w_like_equal(n, 1.0 - two)
    }

    /// Odd-ones total `½ − |α₀β₀ + α₁β₁|²`.
    pub fn unequal_ghz_dist(n: usize, alpha: [Complex64; 2], beta: [Complex64; 2]) -> AnalyticDistribution {
        let plus = (alpha[0] * beta[1] + alpha[1] * beta[0]).norm_sqr();
        let p0 = alpha[0].norm_sqr() * beta[0].norm_sqr() + alpha[1].norm_sqr() * beta[1].norm_sqr() + inv_pow2(n) * plus;
        AnalyticDistribution::new(n, p0)
            .with(OddOnes, 0.5 - (alpha[0] * beta[0] + alpha[1] * beta[1]).norm_sqr())
            .with(EvenOnes, (0.5 - inv_pow2(n)) * plus)
    }

    /// Bracket `cos²δ + 1 − 2 cos δ √(1 + sin²δ/(n−1))`.
    pub fn unequal_w_trig(n: usize, delta: f64) -> AnalyticDistribution {
        let (s, c) = (math::sin(delta), math::cos(delta));
        let r = math::sqrt(1.0 + s * s / (n as f64 - 1.0));
        unequal_w_from_bracket(n, c * c + 1.0 - 2.0 * c * r)
    }
}

/// The six perturbed families, each driven by one angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ErrorFamily {
    UnbalancedGhz,
    UnbalancedW,
    UnequalGhz,
    UnequalW,
    CorruptedGhz,
    CorruptedW,
}

impl ErrorFamily {
    pub const ALL: [ErrorFamily; 6] = [
        ErrorFamily::UnbalancedGhz,
        ErrorFamily::UnbalancedW,
        ErrorFamily::UnequalGhz,
        ErrorFamily::UnequalW,
        ErrorFamily::CorruptedGhz,
        ErrorFamily::CorruptedW,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ErrorFamily::UnbalancedGhz => "unbalanced_ghz",
            ErrorFamily::UnbalancedW => "unbalanced_w",
            ErrorFamily::UnequalGhz => "unequal_ghz",
            ErrorFamily::UnequalW => "unequal_w",
            ErrorFamily::CorruptedGhz => "corrupted_ghz",
            ErrorFamily::CorruptedW => "corrupted_w",
        }
    }

    /// `"delta"` or `"phi"`.
    pub fn parameter_name(self) -> &'static str {
        match self {
            ErrorFamily::CorruptedGhz | ErrorFamily::CorruptedW => "phi",
            _ => "delta",
        }
    }

    /// Default sweep range: `δ ∈ [−π/4, π/4]` reaches the product limit of
    /// the GHZ families; `φ ∈ [0, π/2]` runs from the ideal state to the
    /// extra basis state.
    pub fn default_range(self) -> (f64, f64) {
        match self {
            ErrorFamily::CorruptedGhz | ErrorFamily::CorruptedW => (0.0, FRAC_PI_2),
            _ => (-FRAC_PI_4, FRAC_PI_4),
        }
    }

    pub fn is_ghz(self) -> bool {
        matches!(
            self,
            ErrorFamily::UnbalancedGhz | ErrorFamily::UnequalGhz | ErrorFamily::CorruptedGhz
        )
    }

    /// Test and copy state at `(n, param)`.
    pub fn pair(self, n: usize, param: f64) -> PairSpec {
        match self {
            ErrorFamily::UnbalancedGhz => PairSpec::equal(StateSpec::UnbalancedGhz { n, delta: param }),
            ErrorFamily::UnbalancedW => PairSpec::equal(StateSpec::UnbalancedW { n, delta: param }),
            ErrorFamily::UnequalGhz => PairSpec {
                test: StateSpec::Ghz { n },
                copy: StateSpec::UnbalancedGhz { n, delta: param },
            },
            ErrorFamily::UnequalW => PairSpec {
                test: StateSpec::W { n },
                copy: StateSpec::UnbalancedW { n, delta: param },
            },
            ErrorFamily::CorruptedGhz => PairSpec::equal(StateSpec::corrupted_ghz(n, param)),
            ErrorFamily::CorruptedW => PairSpec::equal(StateSpec::corrupted_w(n, param)),
        }
    }

    /// Classes the trigonometric form reports, in output order.
    pub fn classes(self) -> &'static [SignatureClass] {
        match self {
            ErrorFamily::UnbalancedGhz | ErrorFamily::CorruptedGhz => &[AllZero, EvenOnes],
            ErrorFamily::UnbalancedW | ErrorFamily::CorruptedW => &[AllZero, ExactlyTwoOnes],
            ErrorFamily::UnequalGhz => &[AllZero, OddOnes, EvenOnes],
            ErrorFamily::UnequalW => &[AllZero, ExactlyOneOne, ExactlyTwoOnes],
        }
    }

    /// The trigonometric expression as printed.
    pub fn trig_form(self, n: usize, param: f64) -> AnalyticDistribution {
        match self {
            ErrorFamily::UnbalancedGhz => unbalanced_ghz_dist(n, param),
            ErrorFamily::UnbalancedW => printed::unbalanced_w_trig(n, param),
            ErrorFamily::UnequalGhz => unequal_ghz_trig(n, param),
            ErrorFamily::UnequalW => printed::unequal_w_trig(n, param),
            ErrorFamily::CorruptedGhz => corrupted_ghz_dist(n, param),
            ErrorFamily::CorruptedW => corrupted_w_dist(n, param),
        }
    }

    /// General-amplitude form evaluated at the family's amplitudes; `None`
    /// for the corrupted families, which have no such form.
    pub fn amplitude_form(self, n: usize, param: f64) -> Option<AnalyticDistribution> {
        let real = |x: f64| Complex64::new(x, 0.0);
        let h = math::FRAC_1_SQRT_2;
        match self {
            ErrorFamily::UnbalancedGhz => {
                let (a0, a1) = unbalanced_ghz_amplitudes(param);
                Some(unbalanced_ghz_amplitude_form(n, a0, a1))
            }
            ErrorFamily::UnbalancedW => {
                let (a1, a2) = unbalanced_w_amplitudes(n, param);
                Some(unbalanced_w_amplitude_form(n, a1, a2))
            }
            ErrorFamily::UnequalGhz => {
                let (b0, b1) = unbalanced_ghz_amplitudes(param);
                unequal_ghz_dist(n, [real(h), real(h)], [real(b0), real(b1)]).ok()
            }
            ErrorFamily::UnequalW => {
                let (b1, b2) = unbalanced_w_amplitudes(n, param);
                let r = 1.0 / math::sqrt(n as f64);
                let a: Vec<Complex64> = (0..n).map(|_| real(r)).collect();
                let b: Vec<Complex64> = (0..n).map(|q| real(if q == 0 { b1 } else { b2 })).collect();
                unequal_w_dist(&a, &b).ok()
            }
            ErrorFamily::CorruptedGhz | ErrorFamily::CorruptedW => None,
        }
    }

    /// Closed form that agrees with the circuit for every parameter.
    pub fn oracle(self, n: usize, param: f64) -> AnalyticDistribution {
        match self {
            ErrorFamily::UnbalancedW => unbalanced_w_dist(n, param),
            ErrorFamily::UnequalW => unequal_w_trig(n, param),
            other => other.trig_form(n, param),
        }
    }

    /// Quoted small-parameter error magnitudes: `|P(class; x) − P(class; 0)| ≈ Δ·x²`.
    pub fn quoted_leading_order(self, n: usize) -> Vec<(SignatureClass, f64)> {
        let nf = n as f64;
        let e = inv_pow2(n);
        match self {
            ErrorFamily::UnbalancedGhz => alloc::vec![(AllZero, 2.0 - 4.0 * e), (EvenOnes, 2.0 - 4.0 * e)],
            ErrorFamily::UnbalancedW => alloc::vec![(AllZero, 2.0 / (nf * nf))],
            ErrorFamily::UnequalGhz => alloc::vec![(AllZero, e), (OddOnes, 0.5), (EvenOnes, 0.5 - e)],
            ErrorFamily::UnequalW => alloc::vec![
                (AllZero, 1.0 / (4.0 * nf * nf)),
                (ExactlyTwoOnes, 1.0 / (4.0 * nf * nf)),
                (ExactlyOneOne, 1.0 / (2.0 * nf * nf)),
            ],
            ErrorFamily::CorruptedGhz => alloc::vec![(AllZero, 2.0 * e)],
            ErrorFamily::CorruptedW => alloc::vec![(AllZero, 1.0 - 1.0 / nf)],
        }
    }

    /// Quadratic coefficients of the exact forms. They match the quoted ones
    /// except for the W families, whose deviations start at fourth order.
    pub fn leading_order(self, n: usize) -> Vec<(SignatureClass, f64)> {
        match self {
            ErrorFamily::UnbalancedW | ErrorFamily::UnequalW => self
                .quoted_leading_order(n)
                .into_iter()
                .map(|(c, _)| (c, 0.0))
                .collect(),
            other => other.quoted_leading_order(n),
        }
    }
}

impl fmt::Display for ErrorFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ErrorFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace('-', "_");
        ErrorFamily::ALL
            .into_iter()
            .find(|f| f.name() == t)
            .ok_or_else(|| Error::invalid(alloc::format!("unknown error family {s:?}")))
    }
}
