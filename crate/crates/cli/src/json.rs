//! JSON encodings of state specs, shot counts and reports.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use cswap_core::estimate::{EntanglementReport, Estimate, RngSpec, ShotCounts};
use cswap_core::oracles::Trials;
use cswap_core::states::BellVariant;
use cswap_core::{Complex64, Outcome, StateSpec};
use serde::{Deserialize, Serialize};

/// `{"family", "n", "delta", "phi", "amplitudes"}` with only the fields the
/// family uses. `label` (product), `variant` (bell) and `extra` (corrupted)
/// carry the remaining parameters.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecJson {
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra: Option<u64>,
}

impl From<&StateSpec> for SpecJson {
    fn from(spec: &StateSpec) -> Self {
        let mut j = SpecJson {
            family: spec.family().to_string(),
            ..SpecJson::default()
        };
        match spec {
            StateSpec::ProductBasis { n, label } => {
                j.n = Some(*n);
                j.label = Some(*label);
            }
            StateSpec::Bell(v) => j.variant = Some(v.name().to_string()),
            StateSpec::Ghz { n } | StateSpec::W { n } => j.n = Some(*n),
            StateSpec::UnbalancedGhz { n, delta } | StateSpec::UnbalancedW { n, delta } => {
                j.n = Some(*n);
                j.delta = Some(*delta);
            }
            StateSpec::CorruptedGhz { n, phi, extra } | StateSpec::CorruptedW { n, phi, extra } => {
                j.n = Some(*n);
                j.phi = Some(*phi);
                j.extra = Some(*extra);
            }
            StateSpec::General { amplitudes } => {
                j.amplitudes = Some(amplitudes.iter().map(|z| [z.re, z.im]).collect());
            }
        }
        j
    }
}

impl TryFrom<SpecJson> for StateSpec {
    type Error = anyhow::Error;

    fn try_from(j: SpecJson) -> Result<Self> {
        let family = j.family.trim().to_ascii_lowercase();
        let n = || j.n.with_context(|| format!("family {family:?} needs \"n\""));
        let delta = || j.delta.with_context(|| format!("family {family:?} needs \"delta\""));
        let phi = || j.phi.with_context(|| format!("family {family:?} needs \"phi\""));
        Ok(match family.as_str() {
            "product" => StateSpec::ProductBasis {
                n: n()?,
                label: j.label.unwrap_or(0),
            },
            "bell" => {
                let v = j.variant.as_deref().unwrap_or("phi+");
                StateSpec::Bell(v.parse::<BellVariant>()?)
            }
            "ghz" => StateSpec::Ghz { n: n()? },
            "w" => StateSpec::W { n: n()? },
            "unbalanced_ghz" => StateSpec::UnbalancedGhz { n: n()?, delta: delta()? },
            "unbalanced_w" => StateSpec::UnbalancedW { n: n()?, delta: delta()? },
            "corrupted_ghz" => StateSpec::CorruptedGhz {
                n: n()?,
                phi: phi()?,
                extra: j.extra.unwrap_or(StateSpec::DEFAULT_GHZ_EXTRA),
            },
            "corrupted_w" => StateSpec::CorruptedW {
                n: n()?,
                phi: phi()?,
                extra: j.extra.unwrap_or(StateSpec::DEFAULT_W_EXTRA),
            },
            "general" => {
                let amps = j.amplitudes.context("family \"general\" needs \"amplitudes\"")?;
                let amplitudes: Vec<Complex64> = amps.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
                if let Some(n) = j.n {
                    if amplitudes.len() != 1usize.checked_shl(n as u32).unwrap_or(0) {
                        bail!("\"n\" = {n} does not match {} amplitudes", amplitudes.len());
                    }
                }
                StateSpec::General { amplitudes }
            }
            other => bail!("unknown state family {other:?}"),
        })
    }
}

pub fn read_spec_file(path: &std::path::Path) -> Result<StateSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let j: SpecJson = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    StateSpec::try_from(j)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RngJson {
    pub algorithm: String,
    pub seed: u64,
    pub stream: u64,
}

/// `{"n", "total_shots", "counts": {bitstring: count}, "rng"}`; outcomes with
/// zero counts are omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShotCountsJson {
    pub n: usize,
    pub total_shots: u64,
    pub counts: BTreeMap<String, u64>,
    pub rng: RngJson,
}

impl From<&ShotCounts> for ShotCountsJson {
    fn from(c: &ShotCounts) -> Self {
        let rng = c.rng();
        ShotCountsJson {
            n: c.n(),
            total_shots: c.total_shots(),
            counts: c.observed().map(|(o, k)| (o.to_string(), k)).collect(),
            rng: RngJson {
                algorithm: RngSpec::ALGORITHM.to_string(),
                seed: rng.seed,
                stream: rng.stream,
            },
        }
    }
}

impl TryFrom<ShotCountsJson> for ShotCounts {
    type Error = anyhow::Error;

    fn try_from(j: ShotCountsJson) -> Result<Self> {
        let mut counts = vec![0u64; 1usize.checked_shl(j.n as u32).context("n too large")?];
        for (s, k) in &j.counts {
            let o: Outcome = s.parse()?;
            if o.width() != j.n {
                bail!("outcome {s:?} has width {} but n = {}", o.width(), j.n);
            }
            counts[o.bits() as usize] += k;
        }
        let c = ShotCounts::from_counts(j.n, counts, RngSpec::new(j.rng.seed, j.rng.stream))?;
        if c.total_shots() != j.total_shots {
            bail!("counts sum to {} but total_shots = {}", c.total_shots(), j.total_shots);
        }
        Ok(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateJson {
    pub value: f64,
    pub std_error: f64,
}

impl From<Estimate> for EstimateJson {
    fn from(e: Estimate) -> Self {
        EstimateJson {
            value: e.value,
            std_error: e.std_error,
        }
    }
}

/// `null` stands for undetectable.
pub fn trials_json(t: Trials) -> Option<f64> {
    t.value()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportJson {
    pub verdict: &'static str,
    pub signatures_seen: Vec<String>,
    pub signature_shots: u64,
    pub c_n_estimate: EstimateJson,
    pub unequal_copies_flag: bool,
    pub class_hint: &'static str,
    pub total_shots: u64,
}

impl From<&EntanglementReport> for ReportJson {
    fn from(r: &EntanglementReport) -> Self {
        ReportJson {
            verdict: r.verdict.name(),
            signatures_seen: r.signatures_seen.iter().map(|o| o.to_string()).collect(),
            signature_shots: r.signature_shots,
            c_n_estimate: r.c_n_estimate.into(),
            unequal_copies_flag: r.unequal_copies_flag,
            class_hint: r.class_hint.name(),
            total_shots: r.total_shots,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trips() {
        let specs = [
            StateSpec::ProductBasis { n: 3, label: 5 },
            StateSpec::Bell(BellVariant::PsiMinus),
            StateSpec::Ghz { n: 4 },
            StateSpec::UnbalancedW { n: 3, delta: -0.25 },
            StateSpec::corrupted_ghz(3, 0.5),
            StateSpec::General {
                amplitudes: vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)],
            },
        ];
        for s in specs {
            let text = serde_json::to_string(&SpecJson::from(&s)).unwrap();
            let back: SpecJson = serde_json::from_str(&text).unwrap();
            assert_eq!(StateSpec::try_from(back).unwrap(), s, "{text}");
        }
    }

    #[test]
    fn minimal_json_fields() {
        let j: SpecJson = serde_json::from_str(r#"{"family":"ghz","n":3}"#).unwrap();
        assert_eq!(StateSpec::try_from(j).unwrap(), StateSpec::Ghz { n: 3 });
        let text = serde_json::to_string(&SpecJson::from(&StateSpec::W { n: 2 })).unwrap();
        assert_eq!(text, r#"{"family":"w","n":2}"#);
        let bad: SpecJson = serde_json::from_str(r#"{"family":"ghz"}"#).unwrap();
        assert!(StateSpec::try_from(bad).is_err());
        assert!(serde_json::from_str::<SpecJson>(r#"{"family":"ghz","n":3,"bogus":1}"#).is_err());
    }

    #[test]
    fn shot_counts_round_trip() {
        let c = ShotCounts::from_counts(2, vec![5, 0, 1, 4], RngSpec::new(9, 2)).unwrap();
        let j = ShotCountsJson::from(&c);
        assert_eq!(j.counts.get("01"), Some(&1));
        assert!(!j.counts.contains_key("10"));
        let text = serde_json::to_string(&j).unwrap();
        let back: ShotCountsJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ShotCounts::try_from(back).unwrap(), c);
    }
}
