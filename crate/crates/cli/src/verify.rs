//! `verify`: simulator-vs-oracle batteries.

use std::f64::consts::{FRAC_PI_4, SQRT_2};
use std::io::Write;

use anyhow::{bail, Result};
use cswap_core::circuit::{check_nondestructive, run_equivalence_test, CswapTest};
use cswap_core::estimate::RngSpec;
use cswap_core::oracles::{
    degree_cn, expected_trials_any, ghz_maximal, locc_monotonicity_check, three_qubit_equal_distribution,
    two_qubit_distribution, two_qubit_equal_distribution, w_maximal, AnalyticDistribution, ErrorFamily,
};
use cswap_core::states;
use cswap_core::testutil::random_state;
use cswap_core::{Complex64, ControlDistribution, QubitIndex, SignatureClass, StateVector};
use serde::Serialize;

use crate::output::{sink, write_json};
use crate::{Format, Fredkin, Settings, VerifyArgs};

/// Parameter points of the oracle battery.
const GRID: [f64; 6] = [-0.6, -0.3, 0.0, 0.3, 0.6, FRAC_PI_4];
/// Ceiling on the fitted fourth-order coefficient of the expansion check.
const K_MAX: f64 = 1e3;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Battery {
    pub name: &'static str,
    pub cases: usize,
    pub max_discrepancy: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// A mismatch between a quoted expression and the exact result, reported
/// but not counted as a failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnownDefect {
    pub name: String,
    pub max_discrepancy: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub batteries: Vec<Battery>,
    pub known_defects: Vec<KnownDefect>,
    pub passed: bool,
}

struct Runner {
    tester: CswapTest,
    seed: u64,
    trials: usize,
    n_max: usize,
}

#[derive(Default)]
struct Acc {
    cases: usize,
    max: f64,
}

impl Acc {
    fn add(&mut self, d: f64) {
        self.cases += 1;
        // NaN must fail the battery.
        self.max = if d.is_nan() { f64::INFINITY } else { self.max.max(d) };
    }

    fn finish(self, name: &'static str, tolerance: f64) -> Battery {
        Battery {
            name,
            cases: self.cases,
            max_discrepancy: self.max,
            tolerance,
            passed: self.cases > 0 && self.max <= tolerance,
        }
    }
}

fn gap_outcomes(d: &ControlDistribution, o: &AnalyticDistribution) -> f64 {
    let table = o.per_outcome().expect("per-outcome oracle");
    d.probabilities()
        .iter()
        .zip(table)
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max)
}

fn gap_classes(d: &ControlDistribution, o: &AnalyticDistribution) -> f64 {
    o.known_classes()
        .map(|(c, v)| (d.class_total(c) - v).abs())
        .fold(0.0, f64::max)
}

fn amps4(s: &StateVector) -> [Complex64; 4] {
    s.amplitudes().try_into().expect("two-qubit state")
}

fn permute(s: &StateVector, perm: &[usize]) -> Result<StateVector> {
    let mut out = vec![Complex64::new(0.0, 0.0); s.len()];
    for (x, z) in s.amplitudes().iter().enumerate() {
        out[map_bits(x, perm)] = *z;
    }
    Ok(StateVector::from_amplitudes(out)?)
}

fn map_bits(x: usize, perm: &[usize]) -> usize {
    perm.iter()
        .enumerate()
        .fold(0, |acc, (k, &p)| acc | (((x >> k) & 1) << p))
}

/// `K₂` from `d(x) = K₂x² + K₄x⁴` through two points.
fn quadratic_coefficient(x1: f64, d1: f64, x2: f64, d2: f64) -> f64 {
    let (a, b, c, d) = (x1 * x1, x1.powi(4), x2 * x2, x2.powi(4));
    (d1 * d - d2 * b) / (a * d - b * c)
}

impl Runner {
    fn dist(&self, a: &StateVector, b: &StateVector) -> Result<ControlDistribution> {
        Ok(self.tester.run(a, b, false)?.control_dist)
    }

    fn appendix_b_equal(&self, complex: bool, stream: u64) -> Result<Acc> {
        let mut r = RngSpec::new(self.seed, stream).rng();
        let mut acc = Acc::default();
        for _ in 0..self.trials {
            let a = random_state(2, complex, &mut r);
            let d = self.dist(&a, &a)?;
            let equal = two_qubit_equal_distribution(&amps4(&a));
            let general = two_qubit_distribution(&amps4(&a), &amps4(&a));
            acc.add(gap_outcomes(&d, &equal).max(gap_outcomes(&d, &general)));
        }
        Ok(acc)
    }

    fn appendix_b_unequal(&self) -> Result<Acc> {
        let mut r = RngSpec::new(self.seed, 3).rng();
        let mut acc = Acc::default();
        for _ in 0..self.trials {
            let a = random_state(2, true, &mut r);
            let b = random_state(2, true, &mut r);
            acc.add(gap_outcomes(&self.dist(&a, &b)?, &two_qubit_distribution(&amps4(&a), &amps4(&b))));
        }
        Ok(acc)
    }

    fn appendix_c(&self) -> Result<Acc> {
        let mut r = RngSpec::new(self.seed, 4).rng();
        let mut acc = Acc::default();
        for _ in 0..self.trials {
            let a = random_state(3, true, &mut r);
            let amps: [Complex64; 8] = a.amplitudes().try_into().expect("three-qubit state");
            acc.add(gap_outcomes(&self.dist(&a, &a)?, &three_qubit_equal_distribution(&amps)));
        }
        Ok(acc)
    }

    fn permutation(&self) -> Result<Acc> {
        let m = self.n_max.min(4);
        let mut r = RngSpec::new(self.seed, 5).rng();
        let mut acc = Acc::default();
        for t in 0..self.trials {
            let a = random_state(m, true, &mut r);
            let b = random_state(m, true, &mut r);
            // Rotations and the reversal cover every position.
            let perm: Vec<usize> = if t % 2 == 0 {
                (0..m).map(|k| (k + 1 + t / 2) % m).collect()
            } else {
                (0..m).rev().collect()
            };
            let before = self.dist(&a, &b)?;
            let after = self.dist(&permute(&a, &perm)?, &permute(&b, &perm)?)?;
            let gap = (0..before.probabilities().len())
                .map(|x| (after.probabilities()[map_bits(x, &perm)] - before.probabilities()[x]).abs())
                .fold(0.0, f64::max);
            acc.add(gap);
        }
        Ok(acc)
    }

    fn global_phase(&self) -> Result<Acc> {
        let m = self.n_max.min(3);
        let mut r = RngSpec::new(self.seed, 6).rng();
        let mut acc = Acc::default();
        for t in 0..self.trials {
            let a = random_state(m, true, &mut r);
            let b = random_state(m, true, &mut r);
            let theta = 0.37 + t as f64;
            let (mut pa, mut pb) = (a.clone(), b.clone());
            pa.scale(Complex64::from_polar(1.0, theta));
            pb.scale(Complex64::from_polar(1.0, -2.0 * theta));
            let d0 = self.dist(&a, &b)?;
            let d1 = self.dist(&pa, &pb)?;
            acc.add(
                d0.probabilities()
                    .iter()
                    .zip(d1.probabilities())
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0, f64::max),
            );
        }
        Ok(acc)
    }

    fn oracle_vs_simulator(&self) -> Result<Acc> {
        let mut acc = Acc::default();
        for n in 2..=self.n_max {
            let g = states::ghz(n)?;
            acc.add(gap_outcomes(&self.dist(&g, &g)?, &ghz_maximal(n)));
            let w = states::w(n)?;
            let d = self.dist(&w, &w)?;
            acc.add(gap_classes(&d, &w_maximal(n)));
            for fam in ErrorFamily::ALL {
                for x in GRID {
                    let (a, b) = fam.pair(n, x).build()?;
                    acc.add(gap_classes(&self.dist(&a, &b)?, &fam.oracle(n, x)));
                }
            }
        }
        Ok(acc)
    }

    fn dual_form(&self) -> Acc {
        let mut acc = Acc::default();
        for fam in ErrorFamily::ALL {
            for n in 2..=self.n_max {
                for x in GRID {
                    if let Some(amp) = fam.amplitude_form(n, x) {
                        let trig = fam.oracle(n, x);
                        let gap = fam
                            .classes()
                            .iter()
                            .map(|c| (trig.class(*c).unwrap_or(0.0) - amp.class(*c).unwrap_or(0.0)).abs())
                            .fold(0.0, f64::max);
                        acc.add(gap);
                    }
                }
            }
        }
        acc
    }

    /// Fitted `K` in `|deviation| − Δx² = K x⁴` at both small parameters.
    fn expansion(&self) -> Acc {
        let mut acc = Acc::default();
        for fam in ErrorFamily::ALL {
            for n in 2..=self.n_max {
                let base = fam.oracle(n, 0.0);
                for (class, delta) in fam.leading_order(n) {
                    let b = base.class(class).unwrap_or(0.0);
                    for x in [1e-2, 1e-3] {
                        let dev = (fam.oracle(n, x).class(class).unwrap_or(0.0) - b).abs();
                        acc.add(((dev - delta * x * x) / x.powi(4)).abs());
                    }
                }
            }
        }
        acc
    }

    /// Counts violations: GHZ `C_n` increasing and `≤ √2`, W below GHZ from
    /// three qubits, GHZ expected trials non-increasing and equal to
    /// `1/(½ − 1/2ⁿ)`.
    fn ideal_ordering(&self) -> Result<Acc> {
        let mut acc = Acc::default();
        let mut prev: Option<(f64, f64)> = None;
        for n in 2..=self.n_max {
            let g = states::ghz(n)?;
            let w = states::w(n)?;
            let cg = degree_cn(&self.dist(&g, &g)?);
            let cw = degree_cn(&self.dist(&w, &w)?);
            let p = self.dist(&g, &g)?.class_total(SignatureClass::EvenOnes);
            let e = expected_trials_any(p)?.value().unwrap_or(f64::INFINITY);
            let exact = 1.0 / (0.5 - 0.5f64.powi(n as i32));
            let mut bad = 0.0;
            if cg > SQRT_2 || (n >= 3 && cw >= cg) || (e - exact).abs() > 1e-12 * exact {
                bad += 1.0;
            }
            if let Some((pc, pe)) = prev {
                if cg <= pc || e > pe {
                    bad += 1.0;
                }
            }
            prev = Some((cg, e));
            acc.add(bad);
        }
        Ok(acc)
    }

    /// Violations of a single inequality direction, plus the W₃ value.
    fn locc(&self) -> Result<(Acc, Acc)> {
        let mut r = RngSpec::new(self.seed, 7).rng();
        let mut inputs = vec![states::ghz(3)?, states::w(3)?];
        inputs.extend((0..self.trials).map(|_| random_state(3, true, &mut r)));
        let (mut written, mut reversed, mut total) = (0usize, 0usize, 0usize);
        let mut w3 = Acc::default();
        for (i, s) in inputs.iter().enumerate() {
            for q in 0..3 {
                let rec = locc_monotonicity_check(s, QubitIndex(q))?;
                total += 1;
                written += usize::from(rec.holds_as_written);
                reversed += usize::from(rec.holds_reversed);
                if i == 1 {
                    w3.add((rec.expected_post - 2.0 / 3.0).abs());
                }
            }
        }
        let dir = Acc {
            cases: total,
            max: (total - written.max(reversed)) as f64,
        };
        Ok((dir, w3))
    }

    fn circuit_identities(&self) -> Result<Acc> {
        let mut r = RngSpec::new(self.seed, 8).rng();
        let mut acc = Acc::default();
        let m = self.n_max.min(3);
        let decomposed = CswapTest::new(cswap_core::circuit::CircuitOptions {
            fredkin: cswap_core::circuit::FredkinForm::Decomposed { trailing_cnots: true },
            ..self.tester.options
        });
        for _ in 0..self.trials.div_ceil(10) {
            let mut p = random_state(1, true, &mut r);
            for _ in 1..m {
                p = p.tensor(&random_state(1, true, &mut r), 24)?;
            }
            acc.add((check_nondestructive(&p)? - 1.0).abs());
            let psi = random_state(m, true, &mut r);
            let phi = random_state(m, true, &mut r);
            let want = (1.0 - psi.inner_product(&phi)?.norm_sqr()) / 2.0;
            acc.add((run_equivalence_test(&psi, &phi)? - want).abs());
            let d0 = self.dist(&psi, &phi)?;
            let d1 = decomposed.run(&psi, &phi, false)?.control_dist;
            acc.add(
                d0.probabilities()
                    .iter()
                    .zip(d1.probabilities())
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0, f64::max),
            );
        }
        Ok(acc)
    }

    fn known_defects(&self) -> Vec<KnownDefect> {
        let mut out = Vec::new();
        for fam in ErrorFamily::ALL {
            let mut gap: f64 = 0.0;
            for n in 2..=self.n_max {
                for x in GRID {
                    let (p, o) = (fam.trig_form(n, x), fam.oracle(n, x));
                    for c in fam.classes() {
                        gap = gap.max((p.class(*c).unwrap_or(0.0) - o.class(*c).unwrap_or(0.0)).abs());
                    }
                }
            }
            if gap > 1e-12 {
                out.push(KnownDefect {
                    name: format!("printed_trig_form_{}", fam.name()),
                    max_discrepancy: gap,
                    detail: "printed trigonometric form differs from the exact distribution".into(),
                });
            }
            let mut worst: f64 = 0.0;
            for n in 2..=self.n_max {
                let base = fam.oracle(n, 0.0);
                let (x1, x2) = (1e-2, 1e-3);
                for (class, quoted) in fam.quoted_leading_order(n) {
                    let b = base.class(class).unwrap_or(0.0);
                    let d = |x: f64| fam.oracle(n, x).class(class).unwrap_or(0.0) - b;
                    let k = quadratic_coefficient(x1, d(x1), x2, d(x2)).abs();
                    worst = worst.max((k - quoted).abs() / quoted);
                }
            }
            if worst > 0.01 {
                out.push(KnownDefect {
                    name: format!("quoted_leading_order_{}", fam.name()),
                    max_discrepancy: worst,
                    detail: "relative error of the quoted quadratic coefficient".into(),
                });
            }
        }
        if self.n_max >= 8 {
            let p = ghz_maximal(8).class(SignatureClass::EvenOnes).unwrap_or(0.0);
            let e = 1.0 / p;
            if e > 2.008 {
                out.push(KnownDefect {
                    name: "ghz8_expected_trials_bound".into(),
                    max_discrepancy: e - 2.008,
                    detail: format!("E_any(GHZ8) = {e:.12} = 1/(1/2 - 1/256) exceeds the quoted 2.008"),
                });
            }
        }
        out
    }
}

pub fn run_batteries(settings: &Settings, n_max: usize, trials: usize, seed: u64) -> Result<VerifyReport> {
    if n_max < 2 {
        bail!("--n-max must be at least 2");
    }
    settings.check_capacity(n_max)?;
    if trials == 0 {
        bail!("--trials must be at least 1");
    }
    let r = Runner {
        tester: settings.tester(Fredkin::Native),
        seed,
        trials,
        n_max,
    };
    let mut batteries = vec![
        r.appendix_b_equal(false, 1)?.finish("two_qubit_equal_real", 1e-10),
        r.appendix_b_equal(true, 2)?.finish("two_qubit_equal_complex", 1e-10),
        r.appendix_b_unequal()?.finish("two_qubit_unequal_complex", 1e-10),
    ];
    if n_max >= 3 {
        batteries.push(r.appendix_c()?.finish("three_qubit_equal_complex", 1e-10));
    }
    batteries.push(r.permutation()?.finish("permutation_covariance", 1e-12));
    batteries.push(r.global_phase()?.finish("global_phase_invariance", 1e-12));
    batteries.push(r.oracle_vs_simulator()?.finish("oracle_vs_simulator", 1e-10));
    batteries.push(r.dual_form().finish("dual_form_consistency", 1e-12));
    batteries.push(r.expansion().finish("small_parameter_expansion", K_MAX));
    batteries.push(r.ideal_ordering()?.finish("ideal_state_ordering", 0.0));
    if n_max >= 3 {
        let (dir, w3) = r.locc()?;
        batteries.push(dir.finish("locc_direction_consistency", 0.0));
        batteries.push(w3.finish("locc_w3_weighted_concurrence", 1e-10));
    }
    batteries.push(r.circuit_identities()?.finish("circuit_identities", 1e-12));
    let passed = batteries.iter().all(|b| b.passed);
    Ok(VerifyReport {
        n_max,
        trials,
        seed,
        batteries,
        known_defects: r.known_defects(),
        passed,
    })
}

fn write_text(report: &VerifyReport, mut out: impl Write) -> Result<()> {
    writeln!(out, "{:<32} {:>8} {:>16} {:>10}  status", "battery", "cases", "max_discrepancy", "tolerance")?;
    for b in &report.batteries {
        writeln!(
            out,
            "{:<32} {:>8} {:>16.6e} {:>10.1e}  {}",
            b.name,
            b.cases,
            b.max_discrepancy,
            b.tolerance,
            if b.passed { "pass" } else { "FAIL" }
        )?;
    }
    if !report.known_defects.is_empty() {
        writeln!(out, "known defects in quoted expressions (not gating):")?;
        for d in &report.known_defects {
            writeln!(out, "  {:<40} {:>16.6e}  {}", d.name, d.max_discrepancy, d.detail)?;
        }
    }
    writeln!(out, "{}", if report.passed { "all batteries passed" } else { "FAILED" })?;
    out.flush()?;
    Ok(())
}

pub fn cmd_verify(settings: &Settings, args: &VerifyArgs) -> Result<bool> {
    let report = run_batteries(settings, args.n_max, args.trials, args.seed)?;
    match args.format {
        Some(Format::Json) => write_json(args.out.as_deref(), &report)?,
        _ => write_text(&report, sink(args.out.as_deref())?)?,
    }
    if !report.passed {
        for b in report.batteries.iter().filter(|b| !b.passed) {
            eprintln!(
                "battery {} failed: max discrepancy {:e} over {} cases (tolerance {:e})",
                b.name, b.max_discrepancy, b.cases, b.tolerance
            );
        }
    }
    Ok(report.passed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let s = Settings { max_qubits: 24 };
        let a = run_batteries(&s, 3, 50, 7).unwrap();
        assert!(a.passed, "{a:#?}");
        let b = run_batteries(&s, 3, 50, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.known_defects.iter().any(|d| d.name == "printed_trig_form_unbalanced_w"));
    }

    #[test]
    fn rejects_bad_arguments() {
        let s = Settings { max_qubits: 24 };
        assert!(run_batteries(&s, 1, 10, 0).is_err());
        assert!(run_batteries(&s, 9, 10, 0).is_err());
        assert!(run_batteries(&s, 3, 0, 0).is_err());
    }
}
