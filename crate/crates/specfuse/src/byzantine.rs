//! Byzantine data falsification: attack profiles, compromised-node
//! assignment, report flipping, and the optimal strategy selection.
//!
//! A fraction `alpha` of SUs is compromised. A compromised node flips a
//! local decision of 1 to 0 with probability `p01` and a 0 to 1 with
//! probability `p10`. From the fusion center's view every node is Byzantine
//! with probability `alpha`, so the marginal flip rates are
//! `pi01 = alpha * p01` and `pi10 = alpha * p10`.
//!
//! The optimal strategy needs no channel knowledge at all: flip everything
//! (`AF`) while `alpha <= 0.5`, and pick any profile on the blinding
//! manifold `pi01 + pi10 = 1` once `alpha > 0.5`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How compromised nodes are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssignmentMode {
    /// Uniformly random subset of exactly `round(alpha * I)` nodes
    /// (round-half-to-even).
    FixedFraction,
    /// Each node is compromised independently with probability `alpha`.
    IidBernoulli,
}

/// Flip probabilities plus the compromised fraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttackProfile {
    pub alpha: f64,
    pub p01: f64,
    pub p10: f64,
    pub assignment_mode: AssignmentMode,
}

impl AttackProfile {
    pub fn new(alpha: f64, p01: f64, p10: f64, assignment_mode: AssignmentMode) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("p01", p01), ("p10", p10)] {
            if !(v.is_finite() && (0.0..=1.0).contains(&v)) {
                return Err(Error::invalid(format!(
                    "attack profile: {name} = {v} outside [0, 1]"
                )));
            }
        }
        Ok(Self {
            alpha,
            p01,
            p10,
            assignment_mode,
        })
    }

    /// Marginal probability that a sent 1 arrives as 0, `alpha * p01`.
    pub fn pi01(&self) -> f64 {
        self.alpha * self.p01
    }

    /// Marginal probability that a sent 0 arrives as 1, `alpha * p10`.
    pub fn pi10(&self) -> f64 {
        self.alpha * self.p10
    }
}

/// The named attack modes compared throughout the analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AttackKind {
    /// Always-no: 1 is flipped to 0, 0 kept.
    #[serde(rename = "AN")]
    AlwaysNo,
    /// Always-yes: 0 is flipped to 1, 1 kept.
    #[serde(rename = "AY")]
    AlwaysYes,
    /// Always-false: both symbols deterministically flipped.
    #[serde(rename = "AF")]
    AlwaysFalse,
    /// Random flipping with free `(p01, p10)`.
    #[serde(rename = "RD")]
    Random,
    /// No attack.
    #[serde(rename = "none")]
    None,
}

impl std::fmt::Display for AttackKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            AttackKind::AlwaysNo => "AN",
            AttackKind::AlwaysYes => "AY",
            AttackKind::AlwaysFalse => "AF",
            AttackKind::Random => "RD",
            AttackKind::None => "none",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for AttackKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "AN" | "an" => Ok(AttackKind::AlwaysNo),
            "AY" | "ay" => Ok(AttackKind::AlwaysYes),
            "AF" | "af" => Ok(AttackKind::AlwaysFalse),
            "RD" | "rd" => Ok(AttackKind::Random),
            "none" => Ok(AttackKind::None),
            other => Err(Error::invalid(format!("unknown attack kind '{other}'"))),
        }
    }
}

/// A kind together with a consistent profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NamedAttack {
    pub kind: AttackKind,
    pub profile: AttackProfile,
}

impl NamedAttack {
    pub fn always_no(alpha: f64) -> Result<Self> {
        Ok(Self {
            kind: AttackKind::AlwaysNo,
            profile: AttackProfile::new(alpha, 1.0, 0.0, AssignmentMode::FixedFraction)?,
        })
    }

    pub fn always_yes(alpha: f64) -> Result<Self> {
        Ok(Self {
            kind: AttackKind::AlwaysYes,
            profile: AttackProfile::new(alpha, 0.0, 1.0, AssignmentMode::FixedFraction)?,
        })
    }

    pub fn always_false(alpha: f64) -> Result<Self> {
        Ok(Self {
            kind: AttackKind::AlwaysFalse,
            profile: AttackProfile::new(alpha, 1.0, 1.0, AssignmentMode::FixedFraction)?,
        })
    }

    pub fn random(alpha: f64, p01: f64, p10: f64) -> Result<Self> {
        Ok(Self {
            kind: AttackKind::Random,
            profile: AttackProfile::new(alpha, p01, p10, AssignmentMode::FixedFraction)?,
        })
    }

    pub fn none() -> Self {
        Self {
            kind: AttackKind::None,
            profile: AttackProfile {
                alpha: 0.0,
                p01: 0.0,
                p10: 0.0,
                assignment_mode: AssignmentMode::FixedFraction,
            },
        }
    }

    /// Build a kind with explicit parameters, checking the kind's constraints.
    pub fn from_parts(
        kind: AttackKind,
        alpha: f64,
        p01: f64,
        p10: f64,
        assignment_mode: AssignmentMode,
    ) -> Result<Self> {
        let expected = match kind {
            AttackKind::AlwaysNo => Some((1.0, 0.0)),
            AttackKind::AlwaysYes => Some((0.0, 1.0)),
            AttackKind::AlwaysFalse => Some((1.0, 1.0)),
            AttackKind::None => Some((0.0, 0.0)),
            AttackKind::Random => None,
        };
        if let Some((e01, e10)) = expected {
            if p01 != e01 || p10 != e10 {
                return Err(Error::invalid(format!(
                    "attack kind {kind} requires p01={e01}, p10={e10}, got ({p01}, {p10})"
                )));
            }
        }
        let mut profile = AttackProfile::new(alpha, p01, p10, assignment_mode)?;
        if kind == AttackKind::None {
            profile.alpha = 0.0;
        }
        Ok(Self { kind, profile })
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        let mut out = *self;
        out.profile = AttackProfile::new(
            alpha,
            self.profile.p01,
            self.profile.p10,
            self.profile.assignment_mode,
        )?;
        Ok(out)
    }
}

/// Pick the compromised node set for one trial.
pub fn assign_compromised(
    profile: &AttackProfile,
    su_count: usize,
    rng: &mut impl Rng,
) -> Vec<usize> {
    match profile.assignment_mode {
        AssignmentMode::FixedFraction => {
            let k = (profile.alpha * su_count as f64).round_ties_even() as usize;
            let k = k.min(su_count);
            let mut idx: Vec<usize> = rand::seq::index::sample(rng, su_count, k).into_vec();
            idx.sort_unstable();
            idx
        }
        AssignmentMode::IidBernoulli => (0..su_count)
            .filter(|_| rng.random::<f64>() < profile.alpha)
            .collect(),
    }
}

/// Apply the binary-channel falsification to the local decisions.
///
/// Honest nodes forward their decision unchanged. Exactly one uniform draw
/// is consumed per compromised node whether or not a flip happens, so the
/// stream stays aligned across attack modes sharing the same assignment.
pub fn apply_attack(
    x: &[bool],
    compromised: &[usize],
    profile: &AttackProfile,
    rng: &mut impl Rng,
) -> Vec<bool> {
    let mut u = x.to_vec();
    for &i in compromised {
        let draw = rng.random::<f64>();
        u[i] = if x[i] {
            !(draw < profile.p01)
        } else {
            draw < profile.p10
        };
    }
    u
}

/// The strategy that minimizes the fusion statistic's reliability for a
/// given compromised fraction: flip everything while `alpha <= 0.5`, blind
/// the fusion center with the symmetric point of `alpha (p01 + p10) = 1`
/// once `alpha > 0.5`.
pub fn optimal_attack(alpha: f64) -> Result<NamedAttack> {
    if !(alpha.is_finite() && (0.0..=1.0).contains(&alpha)) {
        return Err(Error::invalid(format!("optimal_attack: alpha {alpha} outside [0, 1]")));
    }
    if alpha <= 0.5 {
        NamedAttack::always_false(alpha)
    } else {
        let p = 1.0 / (2.0 * alpha);
        NamedAttack::random(alpha, p, p)
    }
}

/// True when the profile sits on the blinding manifold `pi01 + pi10 = 1`.
pub fn is_blinding(profile: &AttackProfile, tol: f64) -> bool {
    (profile.pi01() + profile.pi10() - 1.0).abs() <= tol
}
