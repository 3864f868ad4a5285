//! `run` and `estimate`.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use cswap_core::estimate::{
    classify, estimate_cn, estimate_signature_probability, sample, RngSpec, ShotCounts,
};
use cswap_core::oracles::{
    degree_cn, expected_trials_any, expected_trials_from_cn, expected_trials_genuine, GenuineClass,
};
use cswap_core::states::PairSpec;
use cswap_core::{ControlDistribution, SignatureClass};
use serde::Serialize;

use crate::json::{trials_json, EstimateJson, ReportJson, ShotCountsJson, SpecJson};
use crate::output::{num, opt_num, write_json, Table};
use crate::{Format, RunArgs, Settings};

/// Verdict from the exact distribution. Unequal copies can show signatures
/// without entanglement, so they give no verdict.
fn exact_verdict(pair: &PairSpec, dist: &ControlDistribution) -> &'static str {
    if pair.test != pair.copy {
        "inconclusive_unequal_copies"
    } else if dist.class_total(SignatureClass::EvenOnes) > 0.0 {
        "entangled"
    } else {
        "not_entangled"
    }
}

fn simulate(settings: &Settings, args: &RunArgs) -> Result<(PairSpec, ControlDistribution)> {
    let pair = args.pair()?;
    settings.check_capacity(pair.test.num_qubits()?)?;
    let (a, b) = pair.build()?;
    let dist = settings.tester(args.fredkin).run(&a, &b, false)?.control_dist;
    Ok((pair, dist))
}

#[derive(Serialize)]
struct Genuine {
    ghz_like: Option<f64>,
    w_like: Option<f64>,
}

#[derive(Serialize)]
struct Sampled {
    counts: ShotCountsJson,
    signature_probability: EstimateJson,
    c_n: EstimateJson,
}

#[derive(Serialize)]
struct RunJson {
    test: SpecJson,
    copy: SpecJson,
    n: usize,
    distribution: BTreeMap<String, f64>,
    class_totals: BTreeMap<&'static str, f64>,
    c_n: f64,
    expected_trials_any: Option<f64>,
    expected_trials_genuine: Genuine,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    sampled: Option<Sampled>,
}

pub fn cmd_run(settings: &Settings, args: &RunArgs) -> Result<()> {
    let (pair, dist) = simulate(settings, args)?;
    let n = dist.n();
    let p_sig = dist.class_total(SignatureClass::EvenOnes);
    let c_n = degree_cn(&dist);
    let any = expected_trials_any(p_sig)?;
    // Undefined below two qubits.
    let genuine = |c| expected_trials_genuine(n, c, p_sig).ok().and_then(trials_json);
    let (g_ghz, g_w) = (genuine(GenuineClass::GhzLike), genuine(GenuineClass::WLike));
    let verdict = exact_verdict(&pair, &dist);
    let counts: Option<ShotCounts> = match args.shots {
        Some(s) if s > 0 => Some(sample(&dist, s, RngSpec::new(args.seed, 0))?),
        _ => None,
    };

    match args.format.unwrap_or(Format::Json) {
        Format::Json => {
            let sampled = counts.as_ref().map(|c| Sampled {
                counts: c.into(),
                signature_probability: estimate_signature_probability(c, SignatureClass::EvenOnes).into(),
                c_n: estimate_cn(c).into(),
            });
            let out = RunJson {
                test: (&pair.test).into(),
                copy: (&pair.copy).into(),
                n,
                distribution: dist.iter().map(|(o, p)| (o.to_string(), p)).collect(),
                class_totals: SignatureClass::ALL.iter().map(|c| (c.name(), dist.class_total(*c))).collect(),
                c_n,
                expected_trials_any: trials_json(any),
                expected_trials_genuine: Genuine {
                    ghz_like: g_ghz,
                    w_like: g_w,
                },
                verdict,
                sampled,
            };
            write_json(args.out.as_deref(), &out)
        }
        Format::Csv => {
            let mut t = Table::new(&["section", "key", "exact", "sampled_count", "sampled_estimate", "sampled_std_error"]);
            let total = counts.as_ref().map(|c| c.total_shots() as f64);
            for (o, p) in dist.iter() {
                let (k, f) = match (&counts, total) {
                    (Some(c), Some(t)) => (c.count(o).to_string(), num(c.count(o) as f64 / t)),
                    _ => (String::new(), String::new()),
                };
                t.push(vec!["outcome".into(), o.to_string(), num(p), k, f, String::new()]);
            }
            for c in SignatureClass::ALL {
                let (k, f, e) = match &counts {
                    Some(s) => {
                        let est = estimate_signature_probability(s, c);
                        (s.class_count(c).to_string(), num(est.value), num(est.std_error))
                    }
                    None => (String::new(), String::new(), String::new()),
                };
                t.push(vec!["class".into(), c.name().into(), num(dist.class_total(c)), k, f, e]);
            }
            let (f, e) = match &counts {
                Some(s) => {
                    let est = estimate_cn(s);
                    (num(est.value), num(est.std_error))
                }
                None => (String::new(), String::new()),
            };
            t.push(vec!["degree".into(), "c_n".into(), num(c_n), String::new(), f, e]);
            for (key, v) in [
                ("any", trials_json(any)),
                ("genuine_ghz_like", g_ghz),
                ("genuine_w_like", g_w),
            ] {
                t.push(vec![
                    "expected_trials".into(),
                    key.into(),
                    opt_num(v),
                    String::new(),
                    String::new(),
                    String::new(),
                ]);
            }
            t.push(vec![
                "verdict".into(),
                verdict.into(),
                String::new(),
                String::new(),
                String::new(),
                String::new(),
            ]);
            t.write(args.out.as_deref())
        }
    }
}

#[derive(Serialize)]
struct EstimateOut {
    test: SpecJson,
    copy: SpecJson,
    #[serde(flatten)]
    report: ReportJson,
    /// `4 / Ĉ²` from the estimate; `null` when no signature was seen.
    expected_trials_any_estimate: Option<f64>,
    exact_c_n: f64,
    exact_expected_trials_any: Option<f64>,
    counts: ShotCountsJson,
}

pub fn cmd_estimate(settings: &Settings, args: &RunArgs) -> Result<()> {
    let shots = args.shots.unwrap_or(10_000);
    if shots == 0 {
        bail!("estimate needs --shots of at least 1");
    }
    if args.format == Some(Format::Csv) {
        bail!("estimate writes JSON only");
    }
    let (pair, dist) = simulate(settings, args)?;
    let counts = sample(&dist, shots, RngSpec::new(args.seed, 0))?;
    let report = classify(&counts);
    let out = EstimateOut {
        test: (&pair.test).into(),
        copy: (&pair.copy).into(),
        report: (&report).into(),
        expected_trials_any_estimate: trials_json(expected_trials_from_cn(report.c_n_estimate.value)?),
        exact_c_n: degree_cn(&dist),
        exact_expected_trials_any: trials_json(expected_trials_any(dist.class_total(SignatureClass::EvenOnes))?),
        counts: (&counts).into(),
    };
    write_json(args.out.as_deref(), &out)
}
