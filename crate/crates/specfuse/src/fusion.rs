//! Per-branch log-likelihood ratios and the global fusion decision.
//!
//! The fusion center receives one bit per SU after sensing, possible
//! falsification, and the relay chain. Its statistic is the sum of
//! per-branch LLR contributions,
//!
//! ```text
//! Lambda(y) = sum_i ln P(y_i | H1) / P(y_i | H0)
//! ```
//!
//! with `P(y_i | H)` marginalized over the sensing outcome, the (known)
//! attack marginals `(pi01, pi10)`, and the equivalent report channel.
//! Four variants of the per-branch term are provided:
//!
//! * `Optimal` - the full expression, no approximations;
//! * `IdealSensing` - assumes perfect local sensing (`Pd = 1`, `Pf = 0`);
//! * `HighRelaySnr` - assumes noiseless report channels;
//! * `LowRelaySnr` - first-order form for report channels close to fully
//!   noisy, driven by the chain's minimum per-hop log-reliability.
//!
//! Every variant vanishes identically on the blinding manifold
//! `pi01 + pi10 = 1`: no observation carries information and the fusion
//! center can only guess.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report_channel::ReportPath;
use crate::sensing::SensorProfile;

/// Which per-branch LLR expression the fusion center evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FusionRule {
    Optimal,
    IdealSensing,
    HighRelaySnr,
    LowRelaySnr,
}

impl std::str::FromStr for FusionRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "optimal" => Ok(FusionRule::Optimal),
            "ideal-sensing" => Ok(FusionRule::IdealSensing),
            "high-relay-snr" => Ok(FusionRule::HighRelaySnr),
            "low-relay-snr" => Ok(FusionRule::LowRelaySnr),
            other => Err(Error::invalid(format!("unknown fusion rule '{other}'"))),
        }
    }
}

impl std::fmt::Display for FusionRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FusionRule::Optimal => "optimal",
            FusionRule::IdealSensing => "ideal-sensing",
            FusionRule::HighRelaySnr => "high-relay-snr",
            FusionRule::LowRelaySnr => "low-relay-snr",
        };
        f.write_str(s)
    }
}

/// Everything the fusion center knows about one branch.
#[derive(Debug, Clone)]
pub struct BranchInputs {
    pub sensor: SensorProfile,
    pub path: ReportPath,
    /// Marginal flip rate 1 -> 0 as known to the FC.
    pub pi01: f64,
    /// Marginal flip rate 0 -> 1 as known to the FC.
    pub pi10: f64,
}

impl BranchInputs {
    pub fn new(sensor: SensorProfile, path: ReportPath, pi01: f64, pi10: f64) -> Result<Self> {
        for (name, v) in [
            ("pi01", pi01),
            ("pi10", pi10),
            ("pd", sensor.pd),
            ("pf", sensor.pf),
        ] {
            if !(v.is_finite() && (0.0..=1.0).contains(&v)) {
                return Err(Error::invalid(format!(
                    "branch inputs: {name} = {v} outside [0, 1]"
                )));
            }
        }
        Ok(Self {
            sensor,
            path,
            pi01,
            pi10,
        })
    }
}

/// Probabilities exactly 0 or 1 produce infinite LLRs on noiseless
/// channels; nudging them just inside keeps sums finite without moving any
/// decision. Applied lazily, only when a likelihood term actually vanishes.
const PROB_CLAMP: f64 = 1e-12;

fn clamp_prob(p: f64) -> f64 {
    p.clamp(PROB_CLAMP, 1.0 - PROB_CLAMP)
}

/// `P(y | P(x=1|H) = q)` for the optimal rule: marginalize the sensing
/// outcome over falsification and the equivalent report channel.
fn branch_likelihood(q: f64, pi01: f64, pi10: f64, e0: f64, e1: f64, y: bool) -> f64 {
    if y {
        q * (1.0 - pi01) * (1.0 - e1)
            + q * pi01 * e0
            + (1.0 - q) * pi10 * (1.0 - e1)
            + (1.0 - q) * (1.0 - pi10) * e0
    } else {
        q * (1.0 - pi01) * e1
            + q * pi01 * (1.0 - e0)
            + (1.0 - q) * pi10 * e1
            + (1.0 - q) * (1.0 - pi10) * (1.0 - e0)
    }
}

fn log_ratio(num: f64, den: f64, rule: FusionRule, y: bool) -> Result<f64> {
    if num > 0.0 && den > 0.0 {
        Ok((num / den).ln())
    } else {
        Err(Error::degenerate(format!(
            "{rule} rule, y={}: likelihood num={num}, den={den}",
            y as u8
        )))
    }
}

/// Exact per-branch LLR (all eight product terms).
pub fn llr_branch_optimal(y: bool, b: &BranchInputs) -> Result<f64> {
    let e = b.path.equivalent;
    let eval = |pd: f64, pf: f64| {
        (
            branch_likelihood(pd, b.pi01, b.pi10, e.eps0, e.eps1, y),
            branch_likelihood(pf, b.pi01, b.pi10, e.eps0, e.eps1, y),
        )
    };
    let (num, den) = eval(b.sensor.pd, b.sensor.pf);
    if num > 0.0 && den > 0.0 {
        return Ok((num / den).ln());
    }
    // A degenerate Pd/Pf can zero a likelihood on an otherwise fine branch.
    let (num, den) = eval(clamp_prob(b.sensor.pd), clamp_prob(b.sensor.pf));
    log::debug!(
        "optimal rule: clamped pd/pf to evaluate degenerate branch (y={})",
        y as u8
    );
    log_ratio(num, den, FusionRule::Optimal, y)
}

/// Per-branch LLR assuming ideal local sensing (`Pd = 1`, `Pf = 0`);
/// the sensor profile is ignored.
pub fn llr_branch_ideal_sensing(y: bool, b: &BranchInputs) -> Result<f64> {
    let e = b.path.equivalent;
    let c = 1.0 - e.eps0 - e.eps1;
    let (num, den) = if y {
        ((1.0 - e.eps1) - b.pi01 * c, e.eps0 + b.pi10 * c)
    } else {
        (e.eps1 + b.pi01 * c, (1.0 - e.eps0) - b.pi10 * c)
    };
    log_ratio(num, den, FusionRule::IdealSensing, y)
}

/// Per-branch LLR assuming noiseless report channels; the path is ignored.
pub fn llr_branch_high_snr(y: bool, b: &BranchInputs) -> Result<f64> {
    let eval = |pd: f64, pf: f64| {
        if y {
            (
                pd * (1.0 - b.pi01) + (1.0 - pd) * b.pi10,
                pf * (1.0 - b.pi01) + (1.0 - pf) * b.pi10,
            )
        } else {
            (
                pd * b.pi01 + (1.0 - pd) * (1.0 - b.pi10),
                pf * b.pi01 + (1.0 - pf) * (1.0 - b.pi10),
            )
        }
    };
    let (num, den) = eval(b.sensor.pd, b.sensor.pf);
    if num > 0.0 && den > 0.0 {
        return Ok((num / den).ln());
    }
    let (num, den) = eval(clamp_prob(b.sensor.pd), clamp_prob(b.sensor.pf));
    log::debug!(
        "high-relay-snr rule: clamped pd/pf to evaluate degenerate branch (y={})",
        y as u8
    );
    log_ratio(num, den, FusionRule::HighRelaySnr, y)
}

/// First-order per-branch LLR for nearly fully noisy report channels:
/// `(1 - pi01 - pi10)(Pd - Pf) min_j delta_j`, negated for `y = 0`.
///
/// Derived by linearizing the exact rule around symmetric crossovers at
/// one half; the intermediate expansion carries a residual `eps0/eps1`
/// weighting that the final linear form drops, so accuracy presumes
/// near-symmetric hops.
pub fn llr_branch_low_snr(y: bool, b: &BranchInputs) -> Result<f64> {
    if !b.path.delta_min.is_finite() {
        return Err(Error::degenerate(
            "low-relay-snr rule: min delta undefined (some hop has eps0 = 0)",
        ));
    }
    let magnitude =
        (1.0 - b.pi01 - b.pi10) * (b.sensor.pd - b.sensor.pf) * b.path.delta_min;
    Ok(if y { magnitude } else { -magnitude })
}

/// Per-branch LLR under the selected rule.
pub fn llr_branch(rule: FusionRule, y: bool, b: &BranchInputs) -> Result<f64> {
    match rule {
        FusionRule::Optimal => llr_branch_optimal(y, b),
        FusionRule::IdealSensing => llr_branch_ideal_sensing(y, b),
        FusionRule::HighRelaySnr => llr_branch_high_snr(y, b),
        FusionRule::LowRelaySnr => llr_branch_low_snr(y, b),
    }
}

/// Sum the branch LLRs (in index order) and threshold against `tau`.
///
/// `tau = ln(P(H0) / P(H1))`, zero for equal priors. A statistic within
/// `1e-12` of `tau` is an exact tie and is resolved by a fair coin; under a
/// blinding attack every branch is exactly zero, and the coin is what makes
/// the error rate settle at one half.
pub fn fuse(
    y: &[bool],
    branches: &[BranchInputs],
    rule: FusionRule,
    tau: f64,
    rng: &mut impl Rng,
) -> Result<(f64, bool)> {
    if y.len() != branches.len() {
        return Err(Error::invalid(format!(
            "fuse: {} observations vs {} branches",
            y.len(),
            branches.len()
        )));
    }
    let mut statistic = 0.0;
    for (i, (yi, b)) in y.iter().zip(branches).enumerate() {
        statistic += llr_branch(rule, *yi, b)
            .map_err(|e| Error::degenerate(format!("branch {i}: {e}")))?;
    }
    let decision = if (statistic - tau).abs() <= 1e-12 {
        rng.random::<f64>() < 0.5
    } else {
        statistic > tau
    };
    Ok((statistic, decision))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report_channel::RelayHop;
    use crate::rng::{trial_stream, StreamPurpose};
    use rand::Rng;

    fn sensor(pd: f64, pf: f64) -> SensorProfile {
        SensorProfile {
            lambda: 1.0,
            gamma: 0.0,
            pd,
            pf,
        }
    }

    fn branch(pd: f64, pf: f64, e0: f64, e1: f64, pi01: f64, pi10: f64) -> BranchInputs {
        let path = ReportPath::new(vec![RelayHop::new(e0, e1).unwrap()]).unwrap();
        BranchInputs::new(sensor(pd, pf), path, pi01, pi10).unwrap()
    }

    /// Regrouped form of the optimal rule (numerator/denominator collected
    /// around the attack marginals); independent algebraic route.
    fn llr_optimal_regrouped(y: bool, b: &BranchInputs) -> f64 {
        let e = b.path.equivalent;
        let c = 1.0 - e.eps0 - e.eps1;
        let term = |q: f64| {
            let base = if y {
                q * (1.0 - e.eps1) + (1.0 - q) * e.eps0
            } else {
                q * e.eps1 + (1.0 - q) * (1.0 - e.eps0)
            };
            let attack = (q * b.pi01 - (1.0 - q) * b.pi10) * c;
            if y {
                base - attack
            } else {
                base + attack
            }
        };
        (term(b.sensor.pd) / term(b.sensor.pf)).ln()
    }

    #[test]
    fn clean_channel_no_attack_is_classic_llr() {
        let b = branch(0.9, 0.1, 0.0, 0.0, 0.0, 0.0);
        let v = llr_branch_optimal(true, &b).unwrap();
        assert!((v - 9f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn symmetric_attack_example() {
        let b = branch(0.9, 0.1, 0.0, 0.0, 0.3, 0.3);
        let v = llr_branch_optimal(true, &b).unwrap();
        assert!((v - (0.66f64 / 0.34).ln()).abs() < 1e-12);
    }

    #[test]
    fn optimal_matches_regrouped_form() {
        let mut rng = trial_stream(41, 0, StreamPurpose::Channel);
        for _ in 0..2000 {
            let b = branch(
                rng.random::<f64>(),
                rng.random::<f64>(),
                rng.random::<f64>() * 0.49,
                rng.random::<f64>() * 0.49,
                rng.random::<f64>(),
                rng.random::<f64>(),
            );
            for y in [false, true] {
                let direct = llr_branch_optimal(y, &b).unwrap();
                let regrouped = llr_optimal_regrouped(y, &b);
                assert!(
                    (direct - regrouped).abs() < 1e-12,
                    "y={y} direct={direct} regrouped={regrouped}"
                );
            }
        }
    }

    #[test]
    fn blinding_zeroes_every_rule() {
        let mut rng = trial_stream(42, 0, StreamPurpose::Channel);
        for _ in 0..2000 {
            let pi01 = rng.random::<f64>();
            let pi10 = 1.0 - pi01;
            let b = branch(
                0.01 + rng.random::<f64>() * 0.98,
                0.01 + rng.random::<f64>() * 0.98,
                0.01 + rng.random::<f64>() * 0.48,
                0.01 + rng.random::<f64>() * 0.48,
                pi01,
                pi10,
            );
            for rule in [
                FusionRule::Optimal,
                FusionRule::IdealSensing,
                FusionRule::HighRelaySnr,
                FusionRule::LowRelaySnr,
            ] {
                for y in [false, true] {
                    let v = llr_branch(rule, y, &b).unwrap();
                    assert!(v.abs() < 1e-10, "{rule} y={y} v={v}");
                }
            }
        }
    }

    #[test]
    fn ideal_sensing_examples() {
        let b = branch(0.42, 0.17, 0.1, 0.1, 0.0, 0.0);
        let v = llr_branch_ideal_sensing(true, &b).unwrap();
        assert!((v - 9f64.ln()).abs() < 1e-12);

        let b = branch(0.42, 0.17, 0.1, 0.1, 0.25, 0.75);
        let v = llr_branch_ideal_sensing(false, &b).unwrap();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn ideal_sensing_equals_optimal_with_perfect_sensor() {
        let mut rng = trial_stream(43, 0, StreamPurpose::Channel);
        for _ in 0..1000 {
            let e0 = 0.01 + rng.random::<f64>() * 0.48;
            let e1 = 0.01 + rng.random::<f64>() * 0.48;
            let pi01 = rng.random::<f64>() * 0.9;
            let pi10 = rng.random::<f64>() * 0.9;
            let ideal = branch(0.3, 0.6, e0, e1, pi01, pi10);
            let perfect = branch(1.0, 0.0, e0, e1, pi01, pi10);
            for y in [false, true] {
                let a = llr_branch_ideal_sensing(y, &ideal).unwrap();
                let b = llr_branch_optimal(y, &perfect).unwrap();
                assert!((a - b).abs() < 1e-12, "y={y}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn high_snr_examples() {
        let b = branch(0.9, 0.1, 0.3, 0.2, 0.0, 0.0);
        let v = llr_branch_high_snr(true, &b).unwrap();
        assert!((v - 9f64.ln()).abs() < 1e-12);

        let b = branch(0.9, 0.1, 0.3, 0.2, 0.4, 0.6);
        for y in [false, true] {
            assert!(llr_branch_high_snr(y, &b).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn high_snr_equals_optimal_on_clean_channel() {
        let mut rng = trial_stream(44, 0, StreamPurpose::Channel);
        for _ in 0..1000 {
            let pd = 0.01 + rng.random::<f64>() * 0.98;
            let pf = 0.01 + rng.random::<f64>() * 0.98;
            let pi01 = rng.random::<f64>();
            let pi10 = rng.random::<f64>();
            let clean = branch(pd, pf, 0.0, 0.0, pi01, pi10);
            for y in [false, true] {
                let a = llr_branch_high_snr(y, &clean).unwrap();
                let b = llr_branch_optimal(y, &clean).unwrap();
                assert!((a - b).abs() < 1e-12, "y={y}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn low_snr_examples() {
        // Blinded: exactly zero for both outputs.
        let b = branch(0.9, 0.1, 0.49, 0.49, 0.5, 0.5);
        assert_eq!(llr_branch_low_snr(true, &b).unwrap(), 0.0);
        assert_eq!(llr_branch_low_snr(false, &b).unwrap(), 0.0);

        // Direct evaluation at a nearly fully noisy chain.
        let hops = vec![RelayHop::new(0.49, 0.49).unwrap(); 3];
        let path = ReportPath::new(hops).unwrap();
        let b = BranchInputs::new(sensor(0.9, 0.1), path, 0.0, 0.0).unwrap();
        let v = llr_branch_low_snr(true, &b).unwrap();
        let expect = 0.8 * (0.51f64 / 0.49).ln();
        assert!((v - expect).abs() < 1e-12);
        assert!((v - 0.032_004_267).abs() < 1e-8);

        // Exact sign flip between the two outputs.
        let w = llr_branch_low_snr(false, &b).unwrap();
        assert_eq!(w, -v);
    }

    #[test]
    fn low_snr_rejects_undefined_delta() {
        let b = branch(0.9, 0.1, 0.0, 0.0, 0.1, 0.1);
        match llr_branch_low_snr(true, &b) {
            Err(Error::DegenerateInput(_)) => {}
            other => panic!("expected degenerate-input, got {other:?}"),
        }
    }

    #[test]
    fn low_snr_tracks_optimal_single_hop_near_half() {
        // Small-scale attack regime on a single nearly fully noisy hop,
        // under the rule's premise of a symmetric crossover (the shared
        // min-delta cannot serve both outputs of a strongly asymmetric
        // channel). Multi-hop chains of equal noisy hops are out too: the
        // per-hop min-delta scale does not match the equivalent channel.
        let mut rng = trial_stream(45, 0, StreamPurpose::Channel);
        for _ in 0..2000 {
            let eps = 0.45 + rng.random::<f64>() * 0.0499;
            let b = branch(
                0.55 + rng.random::<f64>() * 0.44,
                0.01 + rng.random::<f64>() * 0.44,
                eps,
                eps,
                0.0,
                0.0,
            );
            let t = rng.random::<f64>() * 0.499;
            let b = BranchInputs::new(b.sensor, b.path, t, t).unwrap();
            for y in [false, true] {
                let low = llr_branch_low_snr(y, &b).unwrap();
                let opt = llr_branch_optimal(y, &b).unwrap();
                assert!(
                    (low - opt).abs() <= 0.1 * opt.abs() + 1e-6,
                    "y={y} low={low} opt={opt}"
                );
            }
        }
    }

    #[test]
    fn small_scale_symmetric_llr_is_monotone() {
        // Along pi01 = pi10 = t the y=1 branch LLR decreases and the y=0
        // branch LLR increases, for every rule.
        let mut rng = trial_stream(46, 0, StreamPurpose::Channel);
        for _ in 0..500 {
            let pd = 0.55 + rng.random::<f64>() * 0.44;
            let pf = 0.01 + rng.random::<f64>() * 0.44;
            let e0 = rng.random::<f64>() * 0.45;
            let e1 = rng.random::<f64>() * (0.9 - e0).min(0.45);
            for rule in [
                FusionRule::Optimal,
                FusionRule::IdealSensing,
                FusionRule::HighRelaySnr,
                FusionRule::LowRelaySnr,
            ] {
                let e0 = if rule == FusionRule::LowRelaySnr {
                    e0.max(0.01)
                } else {
                    e0
                };
                let mut last_up = f64::INFINITY;
                let mut last_dn = f64::NEG_INFINITY;
                for k in 0..10 {
                    let t = k as f64 * 0.05;
                    let b = branch(pd, pf, e0, e1, t, t);
                    let up = llr_branch(rule, true, &b).unwrap();
                    let dn = llr_branch(rule, false, &b).unwrap();
                    assert!(up < last_up, "{rule}: y=1 not decreasing at t={t}");
                    assert!(dn > last_dn, "{rule}: y=0 not increasing at t={t}");
                    last_up = up;
                    last_dn = dn;
                }
            }
        }
    }

    #[test]
    fn always_false_minimizes_magnitude_among_named_attacks() {
        // |LLR| under AF <= |LLR| under AN and AY at the same alpha < 0.5.
        let mut rng = trial_stream(47, 0, StreamPurpose::Channel);
        for _ in 0..10_000 {
            let pd = 0.51 + rng.random::<f64>() * 0.48;
            let pf = 0.01 + rng.random::<f64>() * 0.48;
            let e0 = rng.random::<f64>() * 0.45;
            let e1 = rng.random::<f64>() * (0.99 - e0).min(0.45);
            let alpha = rng.random::<f64>() * 0.5;
            for y in [false, true] {
                let af = llr_branch_optimal(y, &branch(pd, pf, e0, e1, alpha, alpha)).unwrap();
                let an = llr_branch_optimal(y, &branch(pd, pf, e0, e1, alpha, 0.0)).unwrap();
                let ay = llr_branch_optimal(y, &branch(pd, pf, e0, e1, 0.0, alpha)).unwrap();
                assert!(af.abs() <= an.abs() + 1e-12, "AF {af} vs AN {an}");
                assert!(af.abs() <= ay.abs() + 1e-12, "AF {af} vs AY {ay}");
            }
        }
    }

    #[test]
    fn fuse_single_branch() {
        let b = branch(0.9, 0.1, 0.0, 0.0, 0.0, 0.0);
        let mut rng = trial_stream(48, 0, StreamPurpose::TieBreak);
        let (stat, dec) = fuse(&[true], &[b], FusionRule::Optimal, 0.0, &mut rng).unwrap();
        assert!((stat - 9f64.ln()).abs() < 1e-12);
        assert!(dec);
    }

    #[test]
    fn fuse_checks_lengths() {
        let b = branch(0.9, 0.1, 0.0, 0.0, 0.0, 0.0);
        let mut rng = trial_stream(48, 1, StreamPurpose::TieBreak);
        assert!(fuse(&[true, false], &[b], FusionRule::Optimal, 0.0, &mut rng).is_err());
    }

    #[test]
    fn blinded_fusion_is_a_fair_coin() {
        let branches: Vec<BranchInputs> = (0..4)
            .map(|_| branch(0.8, 0.2, 0.1, 0.15, 0.4, 0.6))
            .collect();
        let y = vec![true, false, true, true];
        let n = 100_000u64;
        let mut ones = 0u64;
        for trial in 0..n {
            let mut rng = trial_stream(49, trial, StreamPurpose::TieBreak);
            let (stat, dec) = fuse(&y, &branches, FusionRule::Optimal, 0.0, &mut rng).unwrap();
            assert!(stat.abs() < 1e-10);
            if dec {
                ones += 1;
            }
        }
        let rate = ones as f64 / n as f64;
        let sigma = (0.25 / n as f64).sqrt();
        assert!((rate - 0.5).abs() < 3.0 * sigma, "rate {rate}");
    }

    #[test]
    fn complement_symmetry() {
        // With pd = 1 - pf, symmetric channels and symmetric attack, the
        // statistic of the complemented observation vector is the negation.
        let mut rng = trial_stream(50, 0, StreamPurpose::Channel);
        for _ in 0..200 {
            let pd = 0.5 + rng.random::<f64>() * 0.49;
            let e = rng.random::<f64>() * 0.49;
            let t = rng.random::<f64>() * 0.49;
            let branches: Vec<BranchInputs> =
                (0..5).map(|_| branch(pd, 1.0 - pd, e, e, t, t)).collect();
            let y: Vec<bool> = (0..5).map(|_| rng.random::<f64>() < 0.5).collect();
            let y_comp: Vec<bool> = y.iter().map(|b| !b).collect();
            let mut tie = trial_stream(50, 1, StreamPurpose::TieBreak);
            let (s1, _) = fuse(&y, &branches, FusionRule::Optimal, 0.0, &mut tie).unwrap();
            let (s2, _) = fuse(&y_comp, &branches, FusionRule::Optimal, 0.0, &mut tie).unwrap();
            assert!((s1 + s2).abs() < 1e-12, "s1={s1} s2={s2}");
        }
    }

    #[test]
    fn degenerate_branch_is_reported() {
        // eps0 = 0 with pi01 = 1, pi10 = 0 zeroes P(y=1 | either hypothesis).
        let b = branch(0.9, 0.1, 0.0, 0.0, 1.0, 0.0);
        match llr_branch_optimal(true, &b) {
            Err(Error::DegenerateInput(msg)) => {
                assert!(msg.contains("optimal"), "msg: {msg}");
            }
            other => panic!("expected degenerate-input, got {other:?}"),
        }
    }

    #[test]
    fn clamping_keeps_perfect_sensor_finite() {
        // pd = 1, pf = 0 on a noiseless channel would be +/- infinity raw;
        // the clamp turns it into a large finite value.
        let b = branch(1.0, 0.0, 0.0, 0.0, 0.0, 0.0);
        let v = llr_branch_optimal(true, &b).unwrap();
        assert!(v.is_finite());
        assert!(v > 20.0);
    }

    #[test]
    fn rule_strings_round_trip() {
        for rule in [
            FusionRule::Optimal,
            FusionRule::IdealSensing,
            FusionRule::HighRelaySnr,
            FusionRule::LowRelaySnr,
        ] {
            let s = rule.to_string();
            assert_eq!(s.parse::<FusionRule>().unwrap(), rule);
            let json = serde_json::to_string(&rule).unwrap();
            assert_eq!(json, format!("\"{s}\""));
        }
    }
}
