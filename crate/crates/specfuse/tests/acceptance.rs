//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with its runtime. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use specfuse::attack_analysis::{branch_llr_named, verify_small_scale_optimality};
use specfuse::byzantine::{optimal_attack, NamedAttack};
use specfuse::fusion::{
    llr_branch, llr_branch_optimal, BranchInputs, FusionRule,
};
use specfuse::harness::{
    compare_attacks, estimate_metrics, run_sweep, ExperimentSpec, Sweep, SweepAxis,
};
use specfuse::output::csv_string;
use specfuse::report_channel::{compose_serial, RelayHop, ReportPath};
use specfuse::rng::{trial_stream, StreamPurpose};
use specfuse::sensing::{
    local_probabilities, q_inverse, sense_once, SensingMode, SensorProfile, SystemConfig,
};

const ALL_RULES: [FusionRule; 4] = [
    FusionRule::Optimal,
    FusionRule::IdealSensing,
    FusionRule::HighRelaySnr,
    FusionRule::LowRelaySnr,
];

fn pass(label: &str, started: Instant) {
    println!("ACCEPTANCE {label}: PASS ({:.2} s)", started.elapsed().as_secs_f64());
}

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

/// Scenario shared by the Monte-Carlo criteria: weak sensing and noisy
/// relays, where decision errors are frequent enough to rank attacks.
fn mc_system(seed: u64) -> SystemConfig {
    SystemConfig {
        su_count: 8,
        antennas_per_su: 2,
        ris_elements: 4,
        hop_count: 3,
        sample_count: 50,
        transmit_power: 0.02,
        noise_variance: 1.0,
        prior_h1: 0.5,
        target_pf: 0.3,
        seed,
    }
}

fn mc_spec(seed: u64, hop_snr_db: f64, trials: u64) -> ExperimentSpec {
    let system = mc_system(seed);
    let path = ReportPath::uniform_from_snr_db(hop_snr_db, system.hop_count).unwrap();
    ExperimentSpec {
        paths: vec![path; system.su_count],
        system,
        attack: NamedAttack::none(),
        rule: FusionRule::Optimal,
        trials,
        target_errors: None,
        max_trials: 2_000_000,
        sequence_length: 504,
        sensing_mode: SensingMode::Analytic,
    }
}

/// 1. Any attack marginal with pi01 + pi10 = 1 silences every branch of
///    every fusion rule: |LLR| < 1e-10 across random valid parameters.
#[test]
fn criterion_1_blinding_exactness() {
    let t0 = Instant::now();
    let mut rng = trial_stream(1001, 0, StreamPurpose::Channel);
    for _ in 0..10_000 {
        let pd = 0.01 + rng.random::<f64>() * 0.98;
        let pf = 0.01 + rng.random::<f64>() * 0.98;
        let e0 = 0.01 + rng.random::<f64>() * 0.48;
        let e1 = 0.01 + rng.random::<f64>() * 0.48;
        let pi01 = rng.random::<f64>();
        let pi10 = 1.0 - pi01;
        let b = branch(pd, pf, e0, e1, pi01, pi10);
        for rule in ALL_RULES {
            for y in [false, true] {
                let v = llr_branch(rule, y, &b).unwrap();
                assert!(
                    v.abs() < 1e-10,
                    "{rule} y={y}: |{v}| at pd={pd} pf={pf} e=({e0},{e1}) pi=({pi01},{pi10})"
                );
            }
        }
    }
    pass("1 (blinding exactness)", t0);
}

/// 2. The large-scale optimal attack locks the BER at one half and leaves
///    (almost) no mutual information, at any relay SNR.
#[test]
fn criterion_2_blinding_ber() {
    let t0 = Instant::now();
    for (k, (alpha, snr_db)) in [(0.6, -3.0), (0.8, 3.0), (1.0, 9.0)].iter().enumerate() {
        let (alpha, snr_db) = (*alpha, *snr_db);
        let mut spec = mc_spec(2002 + k as u64, snr_db, 10_000);
        spec.attack = optimal_attack(alpha).unwrap();
        let row = estimate_metrics(&spec).unwrap();
        assert!(
            (row.ber - 0.5).abs() <= 0.02,
            "alpha={alpha}: BER {} not 0.5 +/- 0.02",
            row.ber
        );
        assert!(
            row.mi_bits < 0.01,
            "alpha={alpha}: MI {} not < 0.01 bits",
            row.mi_bits
        );
        println!("  alpha={alpha} snr={snr_db} dB: ber={:.4} mi={:.5}", row.ber, row.mi_bits);
    }
    pass("2 (blinding BER)", t0);
}

/// 3. Grid search confirms the always-false corner minimizes the branch
///    LLR magnitude for every small-scale fraction.
#[test]
fn criterion_3_af_small_scale_optimality() {
    let t0 = Instant::now();
    let mut rng = trial_stream(3003, 0, StreamPurpose::Channel);
    let alphas = [0.1, 0.3, 0.49];
    for k in 0..100 {
        let pd = 0.55 + rng.random::<f64>() * 0.44;
        let pf = 0.01 + rng.random::<f64>() * 0.44;
        let e0 = rng.random::<f64>() * 0.45;
        let e1 = rng.random::<f64>() * (0.9 - e0).min(0.449);
        let alpha = alphas[k % alphas.len()];
        let check = verify_small_scale_optimality(pd, pf, e0, e1, alpha, 0.05).unwrap();
        assert!(
            check.af_is_optimal,
            "draw {k}: argmin {:?} at pd={pd} pf={pf} e=({e0},{e1}) alpha={alpha}",
            check.argmin
        );
        assert_eq!(
            check.argmin,
            (1.0, 1.0),
            "draw {k}: interior minimum at alpha={alpha}"
        );
    }
    pass("3 (AF small-scale optimality)", t0);
}

/// 4. Along the symmetric attack line pi01 = pi10 = t, the y=1 branch LLR
///    magnitude strictly decreases on [0, 0.5) under every rule.
#[test]
fn criterion_4_symmetric_monotonicity() {
    let t0 = Instant::now();
    let mut rng = trial_stream(4004, 0, StreamPurpose::Channel);
    for _ in 0..10_000 {
        let pd = 0.55 + rng.random::<f64>() * 0.44;
        let pf = 0.01 + rng.random::<f64>() * 0.44;
        let e0 = 0.01 + rng.random::<f64>() * 0.44;
        let e1 = rng.random::<f64>() * (0.9 - e0).min(0.449);
        for rule in ALL_RULES {
            let mut last = f64::INFINITY;
            for k in 0..=10 {
                let t = k as f64 * 0.049;
                let b = branch(pd, pf, e0, e1, t, t);
                let v = llr_branch(rule, true, &b).unwrap().abs();
                assert!(
                    v < last,
                    "{rule}: |LLR| not strictly decreasing at t={t} (pd={pd} pf={pf})"
                );
                last = v;
            }
        }
    }
    pass("4 (symmetric-attack monotonicity)", t0);
}

/// Brute-force serial composition over all intermediate bit sequences.
fn enumerate_serial(hops: &[RelayHop]) -> RelayHop {
    let j = hops.len();
    let mut prob_one = [0.0f64; 2];
    for (input, slot) in prob_one.iter_mut().enumerate() {
        for mask in 0..(1u32 << (j - 1)) {
            for last in 0..2u32 {
                let mut bits = Vec::with_capacity(j + 1);
                bits.push(input as u32);
                for b in 0..(j - 1) {
                    bits.push((mask >> b) & 1);
                }
                bits.push(last);
                let mut p = 1.0;
                for (hop, w) in hops.iter().zip(bits.windows(2)) {
                    p *= match (w[0], w[1]) {
                        (0, 1) => hop.eps0,
                        (0, 0) => 1.0 - hop.eps0,
                        (1, 0) => hop.eps1,
                        _ => 1.0 - hop.eps1,
                    };
                }
                if last == 1 {
                    *slot += p;
                }
            }
        }
    }
    RelayHop {
        eps0: prob_one[0],
        eps1: 1.0 - prob_one[1],
    }
}

/// 5. The transition-matrix composition equals exhaustive path enumeration
///    to 1e-15, and the symmetric product identity holds to 1e-15.
#[test]
fn criterion_5_serial_channel_oracle() {
    let t0 = Instant::now();
    let mut rng = trial_stream(5005, 0, StreamPurpose::Channel);
    for k in 0..1000 {
        let j = 1 + (rng.random::<u64>() % 6) as usize;
        let hops: Vec<RelayHop> = (0..j)
            .map(|_| RelayHop {
                eps0: 0.001 + rng.random::<f64>() * 0.497,
                eps1: 0.001 + rng.random::<f64>() * 0.497,
            })
            .collect();
        let eq = compose_serial(&hops).unwrap();
        let oracle = enumerate_serial(&hops);
        assert!(
            (eq.eps0 - oracle.eps0).abs() < 1e-15 && (eq.eps1 - oracle.eps1).abs() < 1e-15,
            "chain {k}: composition vs enumeration ({hops:?})"
        );

        let sym: Vec<RelayHop> = hops
            .iter()
            .map(|h| RelayHop::symmetric(h.eps0).unwrap())
            .collect();
        let eq = compose_serial(&sym).unwrap();
        let prod: f64 = sym.iter().map(|h| 1.0 - 2.0 * h.eps0).product();
        assert!(
            ((1.0 - 2.0 * eq.eps0) - prod).abs() < 1e-15,
            "chain {k}: symmetric product identity"
        );
    }
    pass("5 (serial-channel oracle)", t0);
}

/// 6. Sample-level energy detection reproduces the closed-form (Pd, Pf)
///    within Monte-Carlo resolution at T in {200, 500}.
///
/// Operating points are drawn from the band where the large-T Gaussian
/// closed forms are themselves accurate to well under the binomial noise
/// floor at 1e5 trials (the detector statistic is exactly a scaled
/// chi-square; near its center or extreme tails the normal approximation
/// error would dominate the comparison).
#[test]
fn criterion_6_waveform_vs_closed_form() {
    let t0 = Instant::now();
    let trials: u64 = 100_000;
    for k in 0..20u64 {
        let t_samples = if k % 2 == 0 { 200 } else { 500 };
        let cfg = SystemConfig {
            sample_count: t_samples,
            noise_variance: 1.0,
            ..SystemConfig::default()
        };
        let mut draw = trial_stream(6006, k, StreamPurpose::Channel);
        let pf_target = 0.12 + draw.random::<f64>() * 0.07;
        let pd_target = 0.80 + draw.random::<f64>() * 0.07;
        let sqrt_t = (t_samples as f64).sqrt();
        let lambda = 1.0 + q_inverse(pf_target).unwrap() / sqrt_t;
        let gamma = lambda / (1.0 + q_inverse(pd_target).unwrap() / sqrt_t) - 1.0;
        assert!(gamma > 0.0);
        let profile = local_probabilities(lambda, gamma, &cfg).unwrap();

        let count = |occupied: bool| -> u64 {
            (0..trials)
                .into_par_iter()
                .map(|trial| {
                    let purpose = if occupied {
                        StreamPurpose::Sensing
                    } else {
                        StreamPurpose::Report
                    };
                    let mut rng = trial_stream(7000 + k, trial, purpose);
                    sense_once(&profile, occupied, SensingMode::Waveform, &cfg, &mut rng) as u64
                })
                .sum()
        };
        let pf_hat = count(false) as f64 / trials as f64;
        let pd_hat = count(true) as f64 / trials as f64;
        let sig_f = (profile.pf * (1.0 - profile.pf) / trials as f64).sqrt();
        let sig_d = (profile.pd * (1.0 - profile.pd) / trials as f64).sqrt();
        assert!(
            (pf_hat - profile.pf).abs() <= 4.0 * sig_f,
            "setting {k}: pf {pf_hat} vs {} (T={t_samples})",
            profile.pf
        );
        assert!(
            (pd_hat - profile.pd).abs() <= 4.0 * sig_d,
            "setting {k}: pd {pd_hat} vs {} (T={t_samples})",
            profile.pd
        );
    }
    pass("6 (waveform vs closed form)", t0);
}

/// 7. Monte-Carlo attack comparison reproduces the analytic ranking in all
///    eight regime panels; strict pairwise gaps resolve at >= 2 sigma under
///    common random numbers.
#[test]
fn criterion_7_ranking_reproduction() {
    let t0 = Instant::now();

    struct Panel {
        label: &'static str,
        alpha: f64,
        rd: (f64, f64),
        include_af: bool,
        /// (stronger, weaker) pairs the proxies strictly order.
        expect: &'static [(&'static str, &'static str)],
    }
    let panels = [
        Panel {
            label: "(a) a=0.4 sum=0.8",
            alpha: 0.4,
            rd: (0.4, 0.4),
            include_af: false,
            expect: &[("AN", "RD"), ("AY", "RD")],
        },
        Panel {
            label: "(b) a=0.4 sum=1.2",
            alpha: 0.4,
            rd: (0.6, 0.6),
            include_af: true,
            expect: &[("AF", "RD"), ("RD", "AN"), ("RD", "AY")],
        },
        Panel {
            label: "(c) a=0.6 sum=0.8",
            alpha: 0.6,
            rd: (0.4, 0.4),
            include_af: false,
            expect: &[("AN", "RD"), ("AY", "RD")],
        },
        Panel {
            label: "(d) a=0.55 sum=1.2",
            alpha: 0.55,
            rd: (0.6, 0.6),
            include_af: true,
            expect: &[("AF", "RD"), ("RD", "AN"), ("RD", "AY")],
        },
        Panel {
            label: "(e) a=0.6 sum=1.8",
            alpha: 0.6,
            rd: (0.9, 0.9),
            include_af: true,
            expect: &[("RD", "AF"), ("AF", "AN"), ("AF", "AY")],
        },
        Panel {
            label: "(f) a=0.8 sum=0.6",
            alpha: 0.8,
            rd: (0.3, 0.3),
            include_af: false,
            expect: &[("AN", "RD"), ("AY", "RD")],
        },
        Panel {
            label: "(g) a=0.7 sum=1.4",
            alpha: 0.7,
            rd: (0.7, 0.7),
            include_af: true,
            expect: &[("RD", "AN"), ("RD", "AY"), ("AN", "AF"), ("AY", "AF")],
        },
        Panel {
            label: "(h) a=0.7 sum=1.9",
            alpha: 0.7,
            rd: (0.95, 0.95),
            include_af: true,
            expect: &[("AN", "RD"), ("AY", "RD"), ("RD", "AF")],
        },
    ];

    for panel in &panels {
        let spec = mc_spec(7007, -3.0, 100_000);
        let mut modes = vec![
            NamedAttack::always_no(panel.alpha).unwrap(),
            NamedAttack::always_yes(panel.alpha).unwrap(),
            NamedAttack::random(panel.alpha, panel.rd.0, panel.rd.1).unwrap(),
        ];
        if panel.include_af {
            modes.push(NamedAttack::always_false(panel.alpha).unwrap());
        }
        let report = compare_attacks(&spec, &modes).unwrap();

        for (stronger, weaker) in panel.expect {
            let pair = report
                .pairs
                .iter()
                .find(|p| {
                    (p.a.to_string() == *stronger && p.b.to_string() == *weaker)
                        || (p.a.to_string() == *weaker && p.b.to_string() == *stronger)
                })
                .unwrap_or_else(|| panic!("{}: pair {stronger}/{weaker} missing", panel.label));
            // Orient the gap so positive means "stronger has higher BER".
            let z = if pair.a.to_string() == *stronger {
                pair.z
            } else {
                -pair.z
            };
            assert!(
                z >= 2.0,
                "{}: {stronger} > {weaker} unresolved or inverted (z = {z:+.2})",
                panel.label
            );
        }
        assert!(
            report.agrees_with_proxies,
            "{}: a resolved pair contradicts the proxies",
            panel.label
        );
        let order: Vec<String> = report
            .modes
            .iter()
            .map(|m| format!("{}={:.4}", m.attack.kind, m.row.ber))
            .collect();
        println!("  {}: {}", panel.label, order.join(" "));
    }
    pass("7 (ranking reproduction)", t0);
}

/// 8. The mode-specific closed forms agree with the optimal rule fed the
///    corresponding marginals, to 1e-12.
#[test]
fn criterion_8_named_mode_consistency() {
    let t0 = Instant::now();
    let mut rng = trial_stream(8008, 0, StreamPurpose::Channel);
    for _ in 0..10_000 {
        let alpha = rng.random::<f64>();
        let p01 = rng.random::<f64>();
        let p10 = rng.random::<f64>();
        let pd = 0.01 + rng.random::<f64>() * 0.98;
        let pf = 0.01 + rng.random::<f64>() * 0.98;
        let e0 = 0.01 + rng.random::<f64>() * 0.48;
        let e1 = 0.01 + rng.random::<f64>() * 0.48;
        let modes = [
            NamedAttack::always_no(alpha).unwrap(),
            NamedAttack::always_yes(alpha).unwrap(),
            NamedAttack::always_false(alpha).unwrap(),
            NamedAttack::random(alpha, p01, p10).unwrap(),
        ];
        for attack in modes {
            for y in [false, true] {
                let named = branch_llr_named(&attack, pd, pf, e0, e1, y).unwrap();
                let b = branch(pd, pf, e0, e1, attack.profile.pi01(), attack.profile.pi10());
                let reference = llr_branch_optimal(y, &b).unwrap();
                assert!(
                    (named - reference).abs() < 1e-12,
                    "{} y={y}: {named} vs {reference}",
                    attack.kind
                );
            }
        }
    }
    pass("8 (named-mode consistency)", t0);
}

/// 9. A seeded sweep produces byte-identical CSV across repeated runs and
///    across worker counts 1 and 4.
#[test]
fn criterion_9_reproducibility() {
    let t0 = Instant::now();
    let mut spec = mc_spec(9009, 0.0, 3000);
    spec.attack = NamedAttack::always_false(0.4).unwrap();
    let sweep = Sweep {
        axis: SweepAxis::SnrDb,
        values: vec![-3.0, 0.0, 3.0, 6.0],
    };

    let run_with = |threads: usize| -> String {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| csv_string(&run_sweep(&spec, &sweep).unwrap()))
    };

    let single = run_with(1);
    let quad = run_with(4);
    let quad_again = run_with(4);
    assert_eq!(single, quad, "1-worker and 4-worker CSV differ");
    assert_eq!(quad, quad_again, "repeated 4-worker runs differ");
    assert!(single.starts_with("sweep_value,ber,"));
    assert_eq!(single.lines().count(), 5);
    pass("9 (reproducibility)", t0);
}
