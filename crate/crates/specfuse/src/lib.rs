//! Cooperative spectrum sensing under Byzantine data falsification.
//!
//! A desk-scale simulator and analytic toolkit for a cognitive-radio
//! network in which secondary users sense a primary transmitter through
//! RIS-augmented Rayleigh channels, report one-bit decisions over
//! decode-and-forward relay chains, and a fusion center combines the
//! reports with channel- and attack-aware log-likelihood-ratio rules.
//! A fraction of the users may be compromised and flip their reports.
//!
//! The crate covers:
//!
//! * [`sensing`] - channel realizations, energy detection, closed-form
//!   detection/false-alarm probabilities and CFAR threshold calibration;
//! * [`byzantine`] - attack profiles, compromised-node assignment, report
//!   falsification and the optimal attack strategy per compromised
//!   fraction;
//! * [`report_channel`] - serial binary-channel relay chains and their
//!   exact equivalent channel;
//! * [`fusion`] - the optimal per-branch LLR plus three suboptimal rules,
//!   and the fused global decision;
//! * [`attack_analysis`] - closed-form attack ranking proxies, crossover
//!   thresholds, and the small-scale optimality grid check;
//! * [`harness`] - deterministic parallel Monte-Carlo experiments (BER,
//!   mean |LLR|, mutual information), parameter sweeps and attack
//!   comparisons under common random numbers.
//!
//! Start with the `examples/` directory: each file is a runnable tour of
//! one capability (`cargo run --example fusion_rules`, etc.). The `specfuse`
//! binary wraps the harness behind a small CLI.

pub mod attack_analysis;
pub mod byzantine;
pub mod config;
pub mod error;
pub mod fusion;
pub mod harness;
pub mod output;
pub mod report_channel;
pub mod rng;
pub mod sensing;

pub use error::{Error, Result};
