//! Threshold calibration and per-SU operating points.
//!
//! Draws one RIS-augmented channel realization, calibrates the shared
//! constant-false-alarm threshold, and prints each SU's instantaneous SNR
//! with the closed-form detection/false-alarm probabilities. Then shows how
//! the average operating point moves with transmit power.
//!
//! Run with: cargo run --example calibrate_sensors

use specfuse::rng::{trial_stream, StreamPurpose};
use specfuse::sensing::{
    calibrate_threshold, draw_channels, local_probabilities, SystemConfig,
};

fn main() -> specfuse::Result<()> {
    let cfg = SystemConfig {
        su_count: 10,
        antennas_per_su: 6,
        ris_elements: 9,
        transmit_power: 0.02,
        target_pf: 0.1,
        seed: 7,
        ..SystemConfig::default()
    };

    let lambda = calibrate_threshold(&cfg)?;
    println!(
        "CFAR threshold: lambda = {lambda:.5} for target Pf = {} at T = {} samples\n",
        cfg.target_pf, cfg.sample_count
    );

    let mut rng = trial_stream(cfg.seed, 0, StreamPurpose::Channel);
    let real = draw_channels(&cfg, &mut rng)?;
    println!("one channel realization ({} SUs, {} antennas, {} RIS elements):",
        cfg.su_count, cfg.antennas_per_su, cfg.ris_elements);
    println!("{:>4} {:>10} {:>10} {:>10}", "su", "gamma", "Pd", "Pf");
    for (i, &gamma) in real.snr.iter().enumerate() {
        let p = local_probabilities(lambda, gamma, &cfg)?;
        println!("{i:>4} {gamma:>10.4} {:>10.6} {:>10.6}", p.pd, p.pf);
    }

    println!("\naverage detection probability vs transmit power (1000 draws each):");
    println!("{:>10} {:>12} {:>10}", "power", "mean gamma", "mean Pd");
    for power in [0.002, 0.005, 0.01, 0.02, 0.05, 0.1] {
        let cfg = SystemConfig {
            transmit_power: power,
            ..cfg.clone()
        };
        let (mut gamma_acc, mut pd_acc, mut count) = (0.0, 0.0, 0);
        for trial in 0..1000 {
            let mut rng = trial_stream(cfg.seed, trial, StreamPurpose::Channel);
            let real = draw_channels(&cfg, &mut rng)?;
            for &g in &real.snr {
                gamma_acc += g;
                pd_acc += local_probabilities(lambda, g, &cfg)?.pd;
                count += 1;
            }
        }
        println!(
            "{power:>10} {:>12.4} {:>10.4}",
            gamma_acc / count as f64,
            pd_acc / count as f64
        );
    }
    Ok(())
}
