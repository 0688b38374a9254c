//! Experiment configuration files.
//!
//! A single JSON document describes the system, the attack, the fusion
//! rule, the report paths and the run lengths. Report paths accept either
//! explicit crossover pairs or per-hop SNRs in dB (mapped through the
//! hard-decision BPSK convention `eps = Q(sqrt(2 snr))`):
//!
//! ```json
//! {
//!   "system": { "su_count": 10, "antennas_per_su": 6, "ris_elements": 9,
//!               "hop_count": 3, "sample_count": 50, "transmit_power": 0.02,
//!               "noise_variance": 1.0, "prior_h1": 0.5, "target_pf": 0.3,
//!               "seed": 7 },
//!   "attack": { "kind": "AF", "alpha": 0.4 },
//!   "rule": "optimal",
//!   "path": { "hop_snr_db": [3.0, 3.0, 3.0] },
//!   "trials": 10000,
//!   "sweep": { "axis": "snr_db", "values": [0, 2, 4, 6] }
//! }
//! ```
//!
//! `path` applies to every SU; `paths` (a list, one entry per SU) overrides
//! it for heterogeneous scenarios.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::byzantine::{AssignmentMode, AttackKind, NamedAttack};
use crate::error::{Error, Result};
use crate::fusion::FusionRule;
use crate::harness::{ExperimentSpec, Sweep, SweepAxis};
use crate::report_channel::{RelayHop, ReportPath};
use crate::sensing::{SensingMode, SystemConfig};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AttackConfig {
    pub kind: AttackKind,
    #[serde(default)]
    pub alpha: f64,
    /// Required for `RD`; implied by the kind otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p01: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p10: Option<f64>,
    #[serde(default = "default_assignment")]
    pub assignment_mode: AssignmentMode,
}

fn default_assignment() -> AssignmentMode {
    AssignmentMode::FixedFraction
}

impl AttackConfig {
    pub fn to_named(&self) -> Result<NamedAttack> {
        let implied = match self.kind {
            AttackKind::AlwaysNo => Some((1.0, 0.0)),
            AttackKind::AlwaysYes => Some((0.0, 1.0)),
            AttackKind::AlwaysFalse => Some((1.0, 1.0)),
            AttackKind::None => Some((0.0, 0.0)),
            AttackKind::Random => None,
        };
        let (p01, p10) = match implied {
            Some((d01, d10)) => (self.p01.unwrap_or(d01), self.p10.unwrap_or(d10)),
            None => (
                self.p01.ok_or_else(|| {
                    Error::Config("attack kind RD requires p01".into())
                })?,
                self.p10.ok_or_else(|| {
                    Error::Config("attack kind RD requires p10".into())
                })?,
            ),
        };
        NamedAttack::from_parts(self.kind, self.alpha, p01, p10, self.assignment_mode)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HopConfig {
    pub eps0: f64,
    pub eps1: f64,
}

/// Either explicit hops or per-hop SNRs; exactly one form.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct PathConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hops: Option<Vec<HopConfig>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hop_snr_db: Option<Vec<f64>>,
}

impl PathConfig {
    pub fn resolve(&self, hop_count: usize) -> Result<ReportPath> {
        let hops: Vec<RelayHop> = match (&self.hops, &self.hop_snr_db) {
            (Some(hops), None) => hops
                .iter()
                .map(|h| RelayHop::new(h.eps0, h.eps1))
                .collect::<Result<_>>()?,
            (None, Some(snrs)) => snrs
                .iter()
                .map(|&db| RelayHop::from_snr_db(db))
                .collect::<Result<_>>()?,
            (None, None) => {
                return Err(Error::Config(
                    "path: provide either 'hops' or 'hop_snr_db'".into(),
                ))
            }
            (Some(_), Some(_)) => {
                return Err(Error::Config(
                    "path: 'hops' and 'hop_snr_db' are mutually exclusive".into(),
                ))
            }
        };
        if hops.len() != hop_count {
            return Err(Error::Config(format!(
                "path: {} hops configured but hop_count is {hop_count}",
                hops.len()
            )));
        }
        ReportPath::new(hops)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepConfig {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub system: SystemConfig,
    pub attack: AttackConfig,
    #[serde(default = "default_rule")]
    pub rule: FusionRule,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<PathConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paths: Option<Vec<PathConfig>>,
    #[serde(default = "default_trials")]
    pub trials: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_errors: Option<u64>,
    #[serde(default = "default_max_trials")]
    pub max_trials: u64,
    #[serde(default = "default_sequence_length")]
    pub sequence_length: u64,
    #[serde(default = "default_sensing_mode")]
    pub sensing_mode: SensingMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
}

fn default_rule() -> FusionRule {
    FusionRule::Optimal
}
fn default_trials() -> u64 {
    10_000
}
fn default_max_trials() -> u64 {
    1_000_000
}
fn default_sequence_length() -> u64 {
    504
}
fn default_sensing_mode() -> SensingMode {
    SensingMode::Analytic
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Expand into a runnable spec (paths resolved per SU).
    pub fn resolve(&self) -> Result<ExperimentSpec> {
        self.system.validate()?;
        let paths: Vec<ReportPath> = match (&self.paths, &self.path) {
            (Some(list), _) => {
                if list.len() != self.system.su_count {
                    return Err(Error::Config(format!(
                        "paths: {} entries for {} SUs",
                        list.len(),
                        self.system.su_count
                    )));
                }
                list.iter()
                    .map(|p| p.resolve(self.system.hop_count))
                    .collect::<Result<_>>()?
            }
            (None, Some(shared)) => {
                let path = shared.resolve(self.system.hop_count)?;
                vec![path; self.system.su_count]
            }
            (None, None) => {
                return Err(Error::Config(
                    "config: provide 'path' (shared) or 'paths' (per SU)".into(),
                ))
            }
        };
        let spec = ExperimentSpec {
            system: self.system.clone(),
            attack: self.attack.to_named()?,
            rule: self.rule,
            paths,
            trials: self.trials,
            target_errors: self.target_errors,
            max_trials: self.max_trials.max(self.trials),
            sequence_length: self.sequence_length,
            sensing_mode: self.sensing_mode,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn sweep(&self) -> Option<Sweep> {
        self.sweep.as_ref().map(|s| Sweep {
            axis: s.axis,
            values: s.values.clone(),
        })
    }
}
