//! Closed-form attack effectiveness: per-mode branch LLRs, the magnitude
//! proxies that rank the named attacks, and the crossover thresholds where
//! the ranking flips.
//!
//! For output `y = 1` the branch LLR is `ln(A/B)` with
//!
//! ```text
//! A = eps0 + K_D (1 - eps0 - eps1)
//! B = eps0 + K_F (1 - eps0 - eps1)
//! ```
//!
//! where `K` is the mode-specific post-attack probability of reporting 1
//! (`K_D` evaluated at `Pd`, `K_F` at `Pf`); for `y = 0` the same brackets
//! appear in `C = (1 - eps0) - K_D (...)` and `D` likewise. Dropping the
//! additive crossover terms makes the statistic roughly proportional to
//! `(Pd - Pf)` times a mode-dependent factor; the absolute value of that
//! factor is the ranking proxy, and the smaller the proxy, the stronger the
//! attack.

use serde::{Deserialize, Serialize};

use crate::byzantine::{AttackKind, NamedAttack};
use crate::error::{Error, Result};
use crate::fusion::{llr_branch_optimal, BranchInputs};
use crate::report_channel::{RelayHop, ReportPath};
use crate::sensing::SensorProfile;

/// Post-attack probability of reporting 1 given the pre-attack probability
/// `q`, written in each mode's published closed form.
fn mode_bracket(attack: &NamedAttack, q: f64) -> f64 {
    let a = attack.profile.alpha;
    match attack.kind {
        AttackKind::AlwaysNo => q * (1.0 - a),
        AttackKind::AlwaysYes => a + (1.0 - a) * q,
        AttackKind::AlwaysFalse => a - (2.0 * a - 1.0) * q,
        AttackKind::Random => {
            let (p01, p10) = (attack.profile.p01, attack.profile.p10);
            q + a * p10 - q * a * (p01 + p10)
        }
        AttackKind::None => q,
    }
}

/// Branch LLR for a named mode from the mode-specific closed forms.
///
/// Agrees with [`llr_branch_optimal`] fed the corresponding marginals; the
/// two routes use different algebra, which the tests exploit as a
/// cross-check.
pub fn branch_llr_named(
    attack: &NamedAttack,
    pd: f64,
    pf: f64,
    eps0: f64,
    eps1: f64,
    y: bool,
) -> Result<f64> {
    for (name, v) in [("pd", pd), ("pf", pf), ("eps0", eps0), ("eps1", eps1)] {
        if !(v.is_finite() && (0.0..=1.0).contains(&v)) {
            return Err(Error::invalid(format!(
                "branch_llr_named: {name} = {v} outside [0, 1]"
            )));
        }
    }
    let c = 1.0 - eps0 - eps1;
    let (kd, kf) = (mode_bracket(attack, pd), mode_bracket(attack, pf));
    let (num, den) = if y {
        (eps0 + kd * c, eps0 + kf * c)
    } else {
        ((1.0 - eps0) - kd * c, (1.0 - eps0) - kf * c)
    };
    if num > 0.0 && den > 0.0 {
        Ok((num / den).ln())
    } else {
        Err(Error::degenerate(format!(
            "branch_llr_named: {} mode, y={}: num={num}, den={den}",
            attack.kind, y as u8
        )))
    }
}

/// Magnitude proxies per mode; smaller predicts the stronger attack.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RankingProxies {
    /// Always-no and always-yes share `1 - alpha`.
    pub an: f64,
    pub ay: f64,
    /// Always-false: `|2 alpha - 1|`.
    pub af: f64,
    /// Random flipping: `|alpha (p01 + p10) - 1|`.
    pub rd: f64,
}

impl RankingProxies {
    pub fn for_kind(&self, kind: AttackKind) -> Option<f64> {
        match kind {
            AttackKind::AlwaysNo => Some(self.an),
            AttackKind::AlwaysYes => Some(self.ay),
            AttackKind::AlwaysFalse => Some(self.af),
            AttackKind::Random => Some(self.rd),
            AttackKind::None => None,
        }
    }
}

pub fn ranking_proxies(alpha: f64, p01: f64, p10: f64) -> Result<RankingProxies> {
    for (name, v) in [("alpha", alpha), ("p01", p01), ("p10", p10)] {
        if !(v.is_finite() && (0.0..=1.0).contains(&v)) {
            return Err(Error::invalid(format!(
                "ranking_proxies: {name} = {v} outside [0, 1]"
            )));
        }
    }
    Ok(RankingProxies {
        an: 1.0 - alpha,
        ay: 1.0 - alpha,
        af: (2.0 * alpha - 1.0).abs(),
        rd: (alpha * (p01 + p10) - 1.0).abs(),
    })
}

/// Flip-probability sums where two proxies tie, clamped to the sub-interval
/// of `[0, 2]` on which the comparison is defined (the AF comparisons only
/// make sense where an AF-strength sum is feasible, i.e. `[1, 2]`).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CrossoverThresholds {
    /// Alpha at which AF and AN/AY proxies tie: 2/3 for every alpha input.
    pub af_vs_an: f64,
    /// `p01 + p10` where RD ties AN/AY: `2/alpha - 1`, clamped to `[0, 2]`.
    pub rd_vs_an: f64,
    /// `p01 + p10` where RD ties AF: `2/alpha - 2`, clamped to `[1, 2]`.
    pub rd_vs_af: f64,
}

pub fn crossover_thresholds(alpha: f64) -> Result<CrossoverThresholds> {
    if !(alpha.is_finite() && alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::invalid(format!(
            "crossover_thresholds: alpha = {alpha} outside (0, 1]"
        )));
    }
    Ok(CrossoverThresholds {
        af_vs_an: 2.0 / 3.0,
        rd_vs_an: (2.0 / alpha - 1.0).clamp(0.0, 2.0),
        rd_vs_af: (2.0 / alpha - 2.0).clamp(1.0, 2.0),
    })
}

/// Result of the small-scale optimality grid search.
#[derive(Debug, Clone, Copy)]
pub struct OptimalityCheck {
    /// True when the magnitude minimum over the grid is attained at
    /// `p01 = p10 = 1` (ties allowed).
    pub af_is_optimal: bool,
    /// Grid point with the smallest objective (first encountered).
    pub argmin: (f64, f64),
    pub min_objective: f64,
}

/// Grid-search `(p01, p10)` for the flip probabilities that minimize the
/// mean branch-LLR magnitude under the exact rule, at a fixed small-scale
/// `alpha`. Verifies the always-false corner is the optimum.
pub fn verify_small_scale_optimality(
    pd: f64,
    pf: f64,
    eps0: f64,
    eps1: f64,
    alpha: f64,
    grid_step: f64,
) -> Result<OptimalityCheck> {
    if !(pd > 0.5 && pf < 0.5 && pd <= 1.0 && pf >= 0.0) {
        return Err(Error::invalid(
            "verify_small_scale_optimality: requires pd > 0.5 > pf",
        ));
    }
    if !(eps0 >= 0.0 && eps1 >= 0.0 && eps0 + eps1 < 1.0) {
        return Err(Error::invalid(
            "verify_small_scale_optimality: requires eps0 + eps1 < 1",
        ));
    }
    if !(0.0..=0.5).contains(&alpha) {
        return Err(Error::invalid(
            "verify_small_scale_optimality: requires alpha <= 0.5",
        ));
    }
    if !(grid_step > 0.0 && grid_step <= 1.0) {
        return Err(Error::invalid(
            "verify_small_scale_optimality: grid_step must lie in (0, 1]",
        ));
    }

    let steps = (1.0 / grid_step).round().max(1.0) as usize;
    let grid_value = |k: usize| (k as f64 * grid_step).min(1.0);

    let sensor = SensorProfile {
        lambda: 1.0,
        gamma: 0.0,
        pd,
        pf,
    };
    let path = ReportPath::new(vec![RelayHop::new(eps0, eps1)?])?;
    let objective = |p01: f64, p10: f64| -> Result<f64> {
        let b = BranchInputs::new(sensor, path.clone(), alpha * p01, alpha * p10)?;
        let up = llr_branch_optimal(true, &b)?;
        let dn = llr_branch_optimal(false, &b)?;
        Ok(0.5 * (up.abs() + dn.abs()))
    };

    let mut min_objective = f64::INFINITY;
    let mut argmin = (0.0, 0.0);
    for i in 0..=steps {
        for j in 0..=steps {
            let (p01, p10) = (grid_value(i), grid_value(j));
            let value = objective(p01, p10)?;
            if value < min_objective {
                min_objective = value;
                argmin = (p01, p10);
            }
        }
    }
    let at_corner = objective(1.0, 1.0)?;
    Ok(OptimalityCheck {
        af_is_optimal: at_corner <= min_objective + 1e-12,
        argmin,
        min_objective,
    })
}

/// One row of the analytic ranking table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AttackComparison {
    pub kind: AttackKind,
    pub proxy: f64,
    pub llr_y1: f64,
    pub llr_y0: f64,
}

/// Evaluate every named mode at a common operating point, sorted by proxy
/// ascending (predicted strongest first).
pub fn attack_comparison_table(
    alpha: f64,
    p01: f64,
    p10: f64,
    pd: f64,
    pf: f64,
    eps0: f64,
    eps1: f64,
) -> Result<Vec<AttackComparison>> {
    let proxies = ranking_proxies(alpha, p01, p10)?;
    let modes = [
        NamedAttack::always_no(alpha)?,
        NamedAttack::always_yes(alpha)?,
        NamedAttack::always_false(alpha)?,
        NamedAttack::random(alpha, p01, p10)?,
    ];
    let mut rows = Vec::with_capacity(modes.len());
    for attack in modes {
        rows.push(AttackComparison {
            kind: attack.kind,
            proxy: proxies.for_kind(attack.kind).unwrap(),
            llr_y1: branch_llr_named(&attack, pd, pf, eps0, eps1, true)?,
            llr_y0: branch_llr_named(&attack, pd, pf, eps0, eps1, false)?,
        });
    }
    rows.sort_by(|a, b| a.proxy.total_cmp(&b.proxy));
    Ok(rows)
}
