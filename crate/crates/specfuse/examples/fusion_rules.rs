//! The four per-branch LLR rules side by side.
//!
//! Sweeps the report-channel quality and prints each rule's branch LLR for
//! a received 1, with and without an attack, showing where the suboptimal
//! shortcuts track the exact rule and where they drift.
//!
//! Run with: cargo run --example fusion_rules

use specfuse::fusion::{llr_branch, BranchInputs, FusionRule};
use specfuse::report_channel::ReportPath;
use specfuse::sensing::SensorProfile;

const RULES: [FusionRule; 4] = [
    FusionRule::Optimal,
    FusionRule::IdealSensing,
    FusionRule::HighRelaySnr,
    FusionRule::LowRelaySnr,
];

fn row(sensor: SensorProfile, snr_db: f64, pi01: f64, pi10: f64) -> specfuse::Result<Vec<f64>> {
    let path = ReportPath::uniform_from_snr_db(snr_db, 3)?;
    let b = BranchInputs::new(sensor, path, pi01, pi10)?;
    RULES.iter().map(|&rule| llr_branch(rule, true, &b)).collect()
}

fn main() -> specfuse::Result<()> {
    let sensor = SensorProfile {
        lambda: 1.1,
        gamma: 0.8,
        pd: 0.9,
        pf: 0.1,
    };

    println!("branch LLR for y = 1, three hops per path, Pd = 0.9, Pf = 0.1\n");
    for (label, pi01, pi10) in [
        ("no attack", 0.0, 0.0),
        ("AF attack at alpha = 0.3 (pi01 = pi10 = 0.3)", 0.3, 0.3),
        ("blinding profile (pi01 + pi10 = 1)", 0.4, 0.6),
    ] {
        println!("{label}:");
        println!(
            "{:>12} {:>10} {:>14} {:>14} {:>14}",
            "hop snr dB", "optimal", "ideal-sensing", "high-relay-snr", "low-relay-snr"
        );
        for snr_db in [-6.0, -3.0, 0.0, 3.0, 6.0, 10.0] {
            let v = row(sensor, snr_db, pi01, pi10)?;
            println!(
                "{snr_db:>12} {:>10.5} {:>14.5} {:>14.5} {:>14.5}",
                v[0], v[1], v[2], v[3]
            );
        }
        println!();
    }

    println!("observations:");
    println!("- high-relay-snr converges to the optimal values as the hops clean up;");
    println!("- low-relay-snr tracks the optimal rule only near fully noisy hops;");
    println!("- ideal-sensing overstates the evidence because it trusts the sensor;");
    println!("- the blinding profile forces every rule to exactly zero.");
    Ok(())
}
