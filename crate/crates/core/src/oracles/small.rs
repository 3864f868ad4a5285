//! Two- and three-qubit closed forms.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::AnalyticDistribution;

/// Label of a subscript string, character `k` = qubit `k`.
fn lab(s: &str) -> usize {
    s.bytes()
        .enumerate()
        .fold(0, |acc, (k, ch)| acc | (usize::from(ch == b'1') << k))
}

fn m2(z: Complex64) -> f64 {
    z.norm_sqr()
}

/// `2·|A₀₀A₁₁ − A₀₁A₁₀|`.
pub fn concurrence2(a: &[Complex64; 4]) -> f64 {
    2.0 * crate::math::sqrt((a[lab("00")] * a[lab("11")] - a[lab("01")] * a[lab("10")]).norm_sqr())
}

/// Control distribution for two-qubit test state `a` and copy `b`.
pub fn two_qubit_distribution(a: &[Complex64; 4], b: &[Complex64; 4]) -> AnalyticDistribution {
    let aa = |s: &str| a[lab(s)];
    let bb = |s: &str| b[lab(s)];
    let p00 = 0.25
        * (4.0
            * (m2(aa("00") * bb("00"))
                + m2(aa("01") * bb("01"))
                + m2(aa("10") * bb("10"))
                + m2(aa("11") * bb("11")))
            + 2.0 * m2(aa("00") * bb("01") + aa("01") * bb("00"))
            + 2.0 * m2(aa("00") * bb("10") + aa("10") * bb("00"))
            + 2.0 * m2(aa("01") * bb("11") + aa("11") * bb("01"))
            + 2.0 * m2(aa("10") * bb("11") + aa("11") * bb("10"))
            + m2(aa("00") * bb("11") + aa("01") * bb("10") + aa("10") * bb("01") + aa("11") * bb("00")));
    let p01 = 0.25
        * (2.0 * m2(aa("00") * bb("01") - aa("01") * bb("00"))
            + 2.0 * m2(aa("10") * bb("11") - aa("11") * bb("10"))
            + m2(aa("00") * bb("11") - aa("01") * bb("10") + aa("10") * bb("01") - aa("11") * bb("00")));
    let p10 = 0.25
        * (2.0 * m2(aa("00") * bb("10") - aa("10") * bb("00"))
            + 2.0 * m2(aa("01") * bb("11") - aa("11") * bb("01"))
            + m2(aa("00") * bb("11") + aa("01") * bb("10") - aa("10") * bb("01") - aa("11") * bb("00")));
    let p11 = 0.25 * m2(aa("00") * bb("11") - aa("01") * bb("10") - aa("10") * bb("01") + aa("11") * bb("00"));
    let mut probs = vec![0.0; 4];
    probs[lab("00")] = p00;
    probs[lab("01")] = p01;
    probs[lab("10")] = p10;
    probs[lab("11")] = p11;
    AnalyticDistribution::from_outcomes(2, probs)
}

/// Equal-copy reduction: `{1 − C₂²/4, 0, 0, C₂²/4}`.
pub fn two_qubit_equal_distribution(a: &[Complex64; 4]) -> AnalyticDistribution {
    let d = m2(a[lab("00")] * a[lab("11")] - a[lab("01")] * a[lab("10")]);
    let mut probs = vec![0.0; 4];
    probs[lab("00")] = 1.0 - d;
    probs[lab("11")] = d;
    AnalyticDistribution::from_outcomes(2, probs)
}

/// All eight outcomes for a three-qubit test state and an identical copy.
pub fn three_qubit_equal_distribution(a: &[Complex64; 8]) -> AnalyticDistribution {
    let x = |s: &str| a[lab(s)];
    let q = |s: &str| a[lab(s)].norm_sqr();
    const LABELS: [&str; 8] = ["000", "001", "010", "011", "100", "101", "110", "111"];
    let quartic: f64 = LABELS.iter().map(|s| q(s) * q(s)).sum();
    let p000 = 0.5
        * (2.0 * quartic
            + 4.0 * q("000") * (q("001") + q("010") + q("100"))
            + 4.0 * q("011") * (q("001") + q("010") + q("111"))
            + 4.0 * q("101") * (q("001") + q("100") + q("111"))
            + 4.0 * q("110") * (q("010") + q("100") + q("111"))
            + 2.0 * m2(x("000") * x("011") + x("001") * x("010"))
            + 2.0 * m2(x("000") * x("101") + x("001") * x("100"))
            + 2.0 * m2(x("000") * x("110") + x("010") * x("100"))
            + 2.0 * m2(x("001") * x("111") + x("011") * x("101"))
            + 2.0 * m2(x("010") * x("111") + x("011") * x("110"))
            + 2.0 * m2(x("100") * x("111") + x("101") * x("110"))
            + m2(x("000") * x("111") + x("001") * x("110") + x("010") * x("101") + x("011") * x("100")));
    let p011 = 0.5
        * (2.0 * m2(x("000") * x("011") - x("001") * x("010"))
            + 2.0 * m2(x("100") * x("111") - x("101") * x("110"))
            + m2(x("000") * x("111") - x("001") * x("110") - x("010") * x("101") + x("011") * x("100")));
    let p101 = 0.5
        * (2.0 * m2(x("000") * x("101") - x("001") * x("100"))
            + 2.0 * m2(x("010") * x("111") - x("011") * x("110"))
            + m2(x("000") * x("111") - x("001") * x("110") + x("010") * x("101") - x("011") * x("100")));
    let p110 = 0.5
        * (2.0 * m2(x("000") * x("110") - x("010") * x("100"))
            + 2.0 * m2(x("001") * x("111") - x("011") * x("101"))
            + m2(x("000") * x("111") + x("001") * x("110") - x("010") * x("101") - x("011") * x("100")));
    let mut probs = vec![0.0; 8];
    probs[lab("000")] = p000;
    probs[lab("011")] = p011;
    probs[lab("101")] = p101;
    probs[lab("110")] = p110;
    AnalyticDistribution::from_outcomes(3, probs)
}

/// Test `A₀₀₀|000⟩ + A₁₁₁|111⟩` against copy `B₀₀₀|000⟩ + B₁₁₁|111⟩`.
pub fn three_qubit_ghz_like_distribution(a: [Complex64; 2], b: [Complex64; 2]) -> AnalyticDistribution {
    let plus = m2(a[0] * b[1] + a[1] * b[0]) / 8.0;
    let minus = m2(a[0] * b[1] - a[1] * b[0]) / 8.0;
    let mut probs = vec![0.0; 8];
    probs[0] = m2(a[0]) * m2(b[0]) + m2(a[1]) * m2(b[1]) + plus;
    for s in ["001", "010", "100", "111"] {
        probs[lab(s)] = minus;
    }
    for s in ["011", "101", "110"] {
        probs[lab(s)] = plus;
    }
    AnalyticDistribution::from_outcomes(3, probs)
}

/// Single-excitation test and copy; entry `k` is the amplitude with qubit
/// `k` excited.
pub fn three_qubit_w_like_distribution(a: [Complex64; 3], b: [Complex64; 3]) -> AnalyticDistribution {
    // Subscript "001" excites qubit 2, "010" qubit 1, "100" qubit 0.
    let ex = |s: &str| lab(s).trailing_zeros() as usize;
    let aa = |s: &str| a[ex(s)];
    let bb = |s: &str| b[ex(s)];
    let sym = |s: &str, t: &str| m2(aa(s) * bb(t) + aa(t) * bb(s));
    let anti = |s: &str, t: &str| m2(aa(s) * bb(t) - aa(t) * bb(s));
    let mut probs = vec![0.0; 8];
    probs[lab("000")] = m2(aa("001")) * m2(bb("001"))
        + m2(aa("010")) * m2(bb("010"))
        + m2(aa("100")) * m2(bb("100"))
        + 0.25 * (sym("001", "010") + sym("001", "100") + sym("010", "100"));
    probs[lab("001")] = 0.25 * (anti("001", "010") + anti("001", "100"));
    probs[lab("010")] = 0.25 * (anti("001", "010") + anti("010", "100"));
    probs[lab("011")] = 0.25 * sym("001", "010");
    probs[lab("100")] = 0.25 * (anti("001", "100") + anti("010", "100"));
    probs[lab("101")] = 0.25 * sym("001", "100");
    probs[lab("110")] = 0.25 * sym("010", "100");
    AnalyticDistribution::from_outcomes(3, probs)
}

/// Helper shared by the n-qubit single-excitation forms: `Vec` of length `2ⁿ`.
pub(super) fn zeros(n: usize) -> Vec<f64> {
    vec![0.0; 1 << n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::outcome::SignatureClass;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn concurrence_values() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        assert!((concurrence2(&[c(h), c(0.0), c(0.0), c(h)]) - 1.0).abs() < 1e-15);
        assert_eq!(concurrence2(&[c(1.0), c(0.0), c(0.0), c(0.0)]), 0.0);
        let v = concurrence2(&[c(0.8f64.sqrt()), c(0.0), c(0.0), c(0.2f64.sqrt())]);
        assert!((v - 0.8).abs() < 1e-15);
    }

    #[test]
    fn bell_and_product_cases() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let psi = [c(0.0), c(h), c(h), c(0.0)];
        let d = two_qubit_distribution(&psi, &psi);
        assert!((d.outcome("11".parse().unwrap()).unwrap() - 0.25).abs() < 1e-15);
        assert!((d.p_zero() - 0.75).abs() < 1e-15);

        let zero = [c(1.0), c(0.0), c(0.0), c(0.0)];
        let eleven = [c(0.0), c(0.0), c(0.0), c(1.0)];
        let d = two_qubit_distribution(&zero, &eleven);
        let p = d.per_outcome().unwrap();
        for v in p {
            assert!((v - 0.25).abs() < 1e-15);
        }
        let d = two_qubit_distribution(&zero, &zero);
        assert_eq!(d.p_zero(), 1.0);
    }

    #[test]
    fn three_qubit_ideal_states() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let mut g = [c(0.0); 8];
        g[0] = c(h);
        g[7] = c(h);
        let d = three_qubit_equal_distribution(&g);
        assert!((d.p_zero() - 0.625).abs() < 1e-15);
        for s in ["011", "101", "110"] {
            assert!((d.outcome(s.parse().unwrap()).unwrap() - 0.125).abs() < 1e-15);
        }
        let r = 1.0 / 3f64.sqrt();
        let mut w = [c(0.0); 8];
        for l in [1, 2, 4] {
            w[l] = c(r);
        }
        let d = three_qubit_equal_distribution(&w);
        assert!((d.p_zero() - 2.0 / 3.0).abs() < 1e-15);
        assert!((d.class(SignatureClass::ExactlyTwoOnes).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let mut p = [c(0.0); 8];
        p[0b010] = c(1.0);
        assert!((three_qubit_equal_distribution(&p).p_zero() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn blocks_agree_with_general_form_on_equal_inputs() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let g = three_qubit_ghz_like_distribution([c(h), c(h)], [c(h), c(h)]);
        assert!((g.p_zero() - 0.625).abs() < 1e-15);
        assert_eq!(g.class(SignatureClass::OddOnes), Some(0.0));
        let r = 1.0 / 3f64.sqrt();
        let w = three_qubit_w_like_distribution([c(r); 3], [c(r); 3]);
        assert!((w.p_zero() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(w.class(SignatureClass::ExactlyOneOne), Some(0.0));
    }
}
