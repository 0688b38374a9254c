//! End-to-end Monte-Carlo experiments.
//!
//! One trial runs the full pipeline: draw the hypothesis, draw fresh fading
//! channels (user mobility makes every sensing interval an independent
//! realization), calibrate detectors, sense, falsify, relay, fuse. Metrics
//! (BER, mean |LLR|, mutual information between truth and decision) are
//! averaged over trials.
//!
//! Trials are embarrassingly parallel: every random quantity of trial `t`
//! comes from counter-based streams keyed on `(seed, t, purpose)`, and
//! partial results are reduced in fixed chunk order, so results are
//! bit-identical whatever the worker count.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::byzantine::{apply_attack, assign_compromised, AttackKind, NamedAttack};
use crate::error::{Error, Result};
use crate::fusion::{fuse, BranchInputs, FusionRule};
use crate::report_channel::{transmit, ReportPath};
use crate::rng::{StreamPurpose, TrialStreams};
use crate::sensing::{
    calibrate_threshold, draw_channels, local_probabilities, sense_once, SensingMode,
    SensorProfile, SystemConfig,
};

/// Fixed reduction granularity; independent of the worker count so that
/// floating-point accumulation order never changes.
const REDUCE_CHUNK: u64 = 1024;

/// Everything needed to run one experiment point.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub system: SystemConfig,
    pub attack: NamedAttack,
    pub rule: FusionRule,
    /// One report path per SU.
    pub paths: Vec<ReportPath>,
    /// Minimum number of trials.
    pub trials: u64,
    /// Keep running (up to `max_trials`) until this many decision errors
    /// have been seen.
    pub target_errors: Option<u64>,
    /// Hard ceiling on trials.
    pub max_trials: u64,
    /// Trials are scheduled in frames of this many independent hypothesis
    /// draws; stop conditions are evaluated at frame boundaries.
    pub sequence_length: u64,
    pub sensing_mode: SensingMode,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        self.system.validate()?;
        if self.paths.len() != self.system.su_count {
            return Err(Error::invalid(format!(
                "experiment: {} paths for {} SUs",
                self.paths.len(),
                self.system.su_count
            )));
        }
        if self.trials < 1 || self.sequence_length < 1 {
            return Err(Error::invalid("experiment: trials and sequence_length must be >= 1"));
        }
        if self.max_trials < self.trials {
            return Err(Error::invalid("experiment: max_trials < trials"));
        }
        Ok(())
    }

    /// Decision threshold `ln(P(H0)/P(H1))` from the configured prior.
    pub fn tau(&self) -> f64 {
        ((1.0 - self.system.prior_h1) / self.system.prior_h1).ln()
    }
}

/// Truth, decision and fused statistic of one trial.
#[derive(Debug, Clone, Copy)]
pub struct TrialOutcome {
    pub hypothesis: bool,
    pub decision: bool,
    pub statistic: f64,
}

/// The mode-independent part of a trial: hypothesis, channels, detector
/// profiles and local decisions. Shared across attack modes when comparing
/// them under common random numbers.
#[derive(Debug, Clone)]
pub struct TrialContext {
    pub hypothesis: bool,
    pub profiles: Vec<SensorProfile>,
    pub local_decisions: Vec<bool>,
}

impl TrialContext {
    pub fn draw(spec: &ExperimentSpec, trial: u64) -> Result<Self> {
        let streams = TrialStreams::new(spec.system.seed, trial);
        let hypothesis =
            streams.stream(StreamPurpose::Hypothesis).random::<f64>() < spec.system.prior_h1;

        let mut channel_rng = streams.stream(StreamPurpose::Channel);
        let realization = draw_channels(&spec.system, &mut channel_rng)?;
        let lambda = calibrate_threshold(&spec.system)?;
        let profiles: Vec<SensorProfile> = realization
            .snr
            .iter()
            .map(|&g| local_probabilities(lambda, g, &spec.system))
            .collect::<Result<_>>()?;

        let mut sensing_rng = streams.stream(StreamPurpose::Sensing);
        let local_decisions = profiles
            .iter()
            .map(|p| sense_once(p, hypothesis, spec.sensing_mode, &spec.system, &mut sensing_rng))
            .collect();

        Ok(Self {
            hypothesis,
            profiles,
            local_decisions,
        })
    }
}

/// Run the attack/report/fusion tail of a trial for one attack mode.
fn complete_trial(
    spec: &ExperimentSpec,
    attack: &NamedAttack,
    ctx: &TrialContext,
    trial: u64,
) -> Result<TrialOutcome> {
    let streams = TrialStreams::new(spec.system.seed, trial);

    let compromised = assign_compromised(
        &attack.profile,
        spec.system.su_count,
        &mut streams.stream(StreamPurpose::Assignment),
    );
    let reports = apply_attack(
        &ctx.local_decisions,
        &compromised,
        &attack.profile,
        &mut streams.stream(StreamPurpose::AttackFlips),
    );

    let mut report_rng = streams.stream(StreamPurpose::Report);
    let received: Vec<bool> = reports
        .iter()
        .zip(&spec.paths)
        .map(|(&u, path)| transmit(u, path, &mut report_rng))
        .collect();

    let branches: Vec<BranchInputs> = ctx
        .profiles
        .iter()
        .zip(&spec.paths)
        .map(|(profile, path)| {
            BranchInputs::new(
                *profile,
                path.clone(),
                attack.profile.pi01(),
                attack.profile.pi10(),
            )
        })
        .collect::<Result<_>>()?;

    let mut tie_rng = streams.stream(StreamPurpose::TieBreak);
    let (statistic, decision) = fuse(&received, &branches, spec.rule, spec.tau(), &mut tie_rng)?;
    Ok(TrialOutcome {
        hypothesis: ctx.hypothesis,
        decision,
        statistic,
    })
}

/// Run one complete trial of the configured experiment.
///
/// Deterministic in `(spec.system.seed, trial)`.
pub fn run_trial(spec: &ExperimentSpec, trial: u64) -> Result<TrialOutcome> {
    let ctx = TrialContext::draw(spec, trial)?;
    complete_trial(spec, &spec.attack, &ctx, trial)
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

/// Aggregated metrics of one experiment point.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ResultRow {
    /// Value of the sweep axis this row belongs to (0 for single runs).
    pub sweep_value: f64,
    pub ber: f64,
    pub mean_abs_llr: f64,
    pub mi_bits: f64,
    pub trials: u64,
    pub errors: u64,
    /// Counts indexed by `(hypothesis, decision)`: `[n00, n01, n10, n11]`.
    pub confusion: [u64; 4],
}

/// Plug-in mutual information (bits) of the empirical joint distribution of
/// `(hypothesis, decision)`, with `0 log 0 := 0`.
pub fn mutual_information_bits(confusion: [u64; 4]) -> f64 {
    let total: u64 = confusion.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let n = total as f64;
    let p: Vec<f64> = confusion.iter().map(|&c| c as f64 / n).collect();
    let ph = [p[0] + p[1], p[2] + p[3]];
    let pd = [p[0] + p[2], p[1] + p[3]];
    let mut mi = 0.0;
    for h in 0..2 {
        for d in 0..2 {
            let joint = p[h * 2 + d];
            if joint > 0.0 {
                mi += joint * (joint / (ph[h] * pd[d])).log2();
            }
        }
    }
    mi
}

#[derive(Default, Clone, Copy)]
struct Partial {
    trials: u64,
    errors: u64,
    confusion: [u64; 4],
    abs_llr_sum: f64,
}

impl Partial {
    fn absorb(&mut self, outcome: &TrialOutcome) {
        self.trials += 1;
        let (h, d) = (outcome.hypothesis as usize, outcome.decision as usize);
        self.confusion[h * 2 + d] += 1;
        if outcome.hypothesis != outcome.decision {
            self.errors += 1;
        }
        self.abs_llr_sum += outcome.statistic.abs();
    }

    fn merge(&mut self, other: &Partial) {
        self.trials += other.trials;
        self.errors += other.errors;
        for k in 0..4 {
            self.confusion[k] += other.confusion[k];
        }
        self.abs_llr_sum += other.abs_llr_sum;
    }
}

/// Run `[start, end)` in parallel, reducing in fixed chunk order.
fn run_range(spec: &ExperimentSpec, start: u64, end: u64) -> Result<Partial> {
    let chunk_count = (end - start).div_ceil(REDUCE_CHUNK);
    let partials: Vec<Result<Partial>> = (0..chunk_count)
        .into_par_iter()
        .map(|chunk| {
            let lo = start + chunk * REDUCE_CHUNK;
            let hi = (lo + REDUCE_CHUNK).min(end);
            let mut acc = Partial::default();
            for trial in lo..hi {
                acc.absorb(&run_trial(spec, trial)?);
            }
            Ok(acc)
        })
        .collect();
    let mut total = Partial::default();
    for partial in partials {
        total.merge(&partial?);
    }
    Ok(total)
}

/// Estimate BER, mean |LLR| and mutual information for one experiment
/// point. Runs at least `spec.trials` trials and, when `target_errors` is
/// set, keeps going frame by frame until that many errors have been seen or
/// `max_trials` is hit.
pub fn estimate_metrics(spec: &ExperimentSpec) -> Result<ResultRow> {
    spec.validate()?;
    let mut acc = Partial::default();
    let mut next = 0u64;
    loop {
        let end = (next + spec.sequence_length).min(spec.max_trials);
        acc.merge(&run_range(spec, next, end)?);
        next = end;
        let enough_trials = next >= spec.trials.min(spec.max_trials);
        let enough_errors = spec.target_errors.is_none_or(|k| acc.errors >= k);
        if (enough_trials && enough_errors) || next >= spec.max_trials {
            break;
        }
    }
    let n = acc.trials as f64;
    Ok(ResultRow {
        sweep_value: 0.0,
        ber: acc.errors as f64 / n,
        mean_abs_llr: acc.abs_llr_sum / n,
        mi_bits: mutual_information_bits(acc.confusion),
        trials: acc.trials,
        errors: acc.errors,
        confusion: acc.confusion,
    })
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

/// Axis a sweep varies; everything else is held at the base spec.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    /// Per-hop transmission SNR in dB; every hop of every path is rebuilt
    /// with the swept value through the BPSK crossover mapping.
    SnrDb,
    /// Byzantine fraction; the attack kind and flip probabilities stay.
    Alpha,
    AntennasPerSu,
    SuCount,
    RisElements,
    HopCount,
}

#[derive(Debug, Clone)]
pub struct Sweep {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

fn as_count(axis: SweepAxis, value: f64) -> Result<usize> {
    if value >= 1.0 && value.fract() == 0.0 && value <= u32::MAX as f64 {
        Ok(value as usize)
    } else {
        Err(Error::invalid(format!(
            "sweep {axis:?}: value {value} is not a positive integer"
        )))
    }
}

/// Derive the spec for one sweep value.
pub fn apply_sweep_value(base: &ExperimentSpec, axis: SweepAxis, value: f64) -> Result<ExperimentSpec> {
    let mut spec = base.clone();
    match axis {
        SweepAxis::SnrDb => {
            let path = ReportPath::uniform_from_snr_db(value, spec.system.hop_count)?;
            spec.paths = vec![path; spec.system.su_count];
        }
        SweepAxis::Alpha => {
            spec.attack = spec.attack.with_alpha(value)?;
        }
        SweepAxis::AntennasPerSu => {
            spec.system.antennas_per_su = as_count(axis, value)?;
        }
        SweepAxis::SuCount => {
            let count = as_count(axis, value)?;
            let template = spec
                .paths
                .first()
                .cloned()
                .ok_or_else(|| Error::invalid("sweep su_count: no path template"))?;
            spec.system.su_count = count;
            spec.paths = vec![template; count];
        }
        SweepAxis::RisElements => {
            spec.system.ris_elements = as_count(axis, value)?;
        }
        SweepAxis::HopCount => {
            let count = as_count(axis, value)?;
            spec.system.hop_count = count;
            for path in &mut spec.paths {
                let hop = *path
                    .hops
                    .first()
                    .ok_or_else(|| Error::invalid("sweep hop_count: empty path"))?;
                *path = ReportPath::new(vec![hop; count])?;
            }
        }
    }
    Ok(spec)
}

/// One [`ResultRow`] per sweep value, in axis order.
pub fn run_sweep(base: &ExperimentSpec, sweep: &Sweep) -> Result<Vec<ResultRow>> {
    if sweep.values.is_empty() {
        return Err(Error::invalid("sweep: no values"));
    }
    sweep
        .values
        .iter()
        .map(|&v| {
            let spec = apply_sweep_value(base, sweep.axis, v)?;
            let mut row = estimate_metrics(&spec)?;
            row.sweep_value = v;
            Ok(row)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Attack comparison under common random numbers
// ---------------------------------------------------------------------------

/// Metrics of one attack mode within a comparison.
#[derive(Debug, Clone, Serialize)]
pub struct ModeOutcome {
    pub attack: NamedAttack,
    /// Magnitude proxy (smaller predicts stronger); absent for `none`.
    pub proxy: Option<f64>,
    pub row: ResultRow,
}

/// Paired significance of one mode pair's BER gap.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PairResolution {
    pub a: AttackKind,
    pub b: AttackKind,
    /// `BER(a) - BER(b)`.
    pub ber_gap: f64,
    /// Standard error of the paired per-trial error difference.
    pub sigma: f64,
    pub z: f64,
    /// `proxy(a) - proxy(b)`, NaN when either proxy is undefined.
    pub proxy_gap: f64,
    /// Resolved at >= 2 sigma.
    pub resolved: bool,
    /// Observed gap does not contradict the proxy prediction: ties are
    /// consistent with everything, resolved gaps must point the way the
    /// proxies point.
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AttackComparisonReport {
    /// Sorted by BER descending (strongest observed attack first).
    pub modes: Vec<ModeOutcome>,
    pub pairs: Vec<PairResolution>,
    pub agrees_with_proxies: bool,
}

struct ComparePartial {
    per_mode: Vec<Partial>,
    /// Both-wrong counts for pair `(i, j)`, `i < j`, flattened.
    joint_errors: Vec<u64>,
}

impl ComparePartial {
    fn new(modes: usize) -> Self {
        Self {
            per_mode: vec![Partial::default(); modes],
            joint_errors: vec![0; modes * (modes - 1) / 2],
        }
    }

    fn merge(&mut self, other: &ComparePartial) {
        for (a, b) in self.per_mode.iter_mut().zip(&other.per_mode) {
            a.merge(b);
        }
        for (a, b) in self.joint_errors.iter_mut().zip(&other.joint_errors) {
            *a += b;
        }
    }
}

fn pair_slot(i: usize, j: usize, modes: usize) -> usize {
    // i < j; row-major upper triangle.
    i * modes - i * (i + 1) / 2 + (j - i - 1)
}

/// Run every mode over the same trials (common hypothesis, channel, sensing
/// and assignment streams; shared flip/report uniforms) and rank by BER.
///
/// Uses exactly `spec.trials` trials so the pairing is aligned.
pub fn compare_attacks(
    spec: &ExperimentSpec,
    modes: &[NamedAttack],
) -> Result<AttackComparisonReport> {
    spec.validate()?;
    if modes.len() < 2 {
        return Err(Error::invalid("compare_attacks: need at least two modes"));
    }
    let m = modes.len();
    let trials = spec.trials;

    let chunk_count = trials.div_ceil(REDUCE_CHUNK);
    let partials: Vec<Result<ComparePartial>> = (0..chunk_count)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * REDUCE_CHUNK;
            let hi = (lo + REDUCE_CHUNK).min(trials);
            let mut acc = ComparePartial::new(m);
            let mut wrong = vec![false; m];
            for trial in lo..hi {
                let ctx = TrialContext::draw(spec, trial)?;
                for (k, attack) in modes.iter().enumerate() {
                    let outcome = complete_trial(spec, attack, &ctx, trial)?;
                    acc.per_mode[k].absorb(&outcome);
                    wrong[k] = outcome.decision != outcome.hypothesis;
                }
                for i in 0..m {
                    for j in (i + 1)..m {
                        if wrong[i] && wrong[j] {
                            acc.joint_errors[pair_slot(i, j, m)] += 1;
                        }
                    }
                }
            }
            Ok(acc)
        })
        .collect();

    let mut total = ComparePartial::new(m);
    for partial in partials {
        total.merge(&partial?);
    }

    let n = trials as f64;
    let proxy_of = |attack: &NamedAttack| -> Result<Option<f64>> {
        Ok(crate::attack_analysis::ranking_proxies(
            attack.profile.alpha,
            attack.profile.p01,
            attack.profile.p10,
        )?
        .for_kind(attack.kind))
    };

    let mut outcomes = Vec::with_capacity(m);
    for (k, attack) in modes.iter().enumerate() {
        let p = &total.per_mode[k];
        outcomes.push(ModeOutcome {
            attack: *attack,
            proxy: proxy_of(attack)?,
            row: ResultRow {
                sweep_value: 0.0,
                ber: p.errors as f64 / n,
                mean_abs_llr: p.abs_llr_sum / n,
                mi_bits: mutual_information_bits(p.confusion),
                trials: p.trials,
                errors: p.errors,
                confusion: p.confusion,
            },
        });
    }

    let mut pairs = Vec::new();
    let mut agrees = true;
    for i in 0..m {
        for j in (i + 1)..m {
            let (pa, pb) = (
                total.per_mode[i].errors as f64 / n,
                total.per_mode[j].errors as f64 / n,
            );
            let pab = total.joint_errors[pair_slot(i, j, m)] as f64 / n;
            let gap = pa - pb;
            // Var of the per-trial error difference d = e_a - e_b.
            let var = (pa + pb - 2.0 * pab - gap * gap).max(0.0);
            let sigma = (var / n).sqrt();
            let z = if sigma > 0.0 { gap / sigma } else { 0.0 };
            let resolved = z.abs() >= 2.0;
            let proxy_gap = match (outcomes[i].proxy, outcomes[j].proxy) {
                (Some(a), Some(b)) => a - b,
                _ => f64::NAN,
            };
            // Smaller proxy predicts higher BER; a resolved gap is
            // consistent when it points the same way.
            let consistent = if !proxy_gap.is_finite() || proxy_gap.abs() <= 1e-12 {
                true
            } else if resolved {
                gap * proxy_gap < 0.0
            } else {
                true
            };
            agrees &= consistent;
            pairs.push(PairResolution {
                a: modes[i].kind,
                b: modes[j].kind,
                ber_gap: gap,
                sigma,
                z,
                proxy_gap,
                resolved,
                consistent,
            });
        }
    }

    outcomes.sort_by(|a, b| b.row.ber.total_cmp(&a.row.ber));
    Ok(AttackComparisonReport {
        modes: outcomes,
        pairs,
        agrees_with_proxies: agrees,
    })
}
