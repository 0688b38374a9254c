//! Thin CLI over the library: calibration, single runs, sweeps, attack
//! comparison and the analytic ranking/blinding checks.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use specfuse::attack_analysis::{attack_comparison_table, crossover_thresholds};
use specfuse::byzantine::{is_blinding, AttackKind, AttackProfile, NamedAttack};
use specfuse::config::ExperimentConfig;
use specfuse::error::{Error, Result};
use specfuse::fusion::{llr_branch, BranchInputs, FusionRule};
use specfuse::harness::{compare_attacks, estimate_metrics, run_sweep, ExperimentSpec, Sweep};
use specfuse::output;
use specfuse::report_channel::{RelayHop, ReportPath};
use specfuse::rng::{trial_stream, StreamPurpose};
use specfuse::sensing::{calibrate_threshold, draw_channels, local_probabilities, SensorProfile};

#[derive(Parser)]
#[command(
    name = "specfuse",
    about = "Cooperative spectrum sensing under Byzantine attacks: decision-fusion simulator"
)]
struct Cli {
    /// Experiment config (JSON). Required by calibrate/simulate/sweep/compare-attacks.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Override the config seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Override the config trial count.
    #[arg(long, global = true)]
    trials: Option<u64>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Output CSV path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Also write a JSON mirror next to the CSV.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the calibrated threshold and per-SU (gamma, Pd, Pf) for one
    /// channel realization.
    Calibrate,
    /// Run a single experiment point and print its metrics row.
    Simulate,
    /// Run the sweep configured in the config file; write CSV and a
    /// companion gnuplot script.
    Sweep,
    /// Monte-Carlo comparison of attack modes under common random numbers.
    CompareAttacks {
        /// Comma-separated subset of AN,AY,AF,RD (default: all feasible).
        #[arg(long)]
        modes: Option<String>,
    },
    /// Analytic ranking table: proxies, predicted order, exact branch LLRs.
    RankAttacks {
        #[arg(long, default_value_t = 0.4)]
        alpha: f64,
        #[arg(long, default_value_t = 0.75)]
        p01: f64,
        #[arg(long, default_value_t = 0.75)]
        p10: f64,
        #[arg(long, default_value_t = 0.9)]
        pd: f64,
        #[arg(long, default_value_t = 0.1)]
        pf: f64,
        #[arg(long, default_value_t = 0.1)]
        eps0: f64,
        #[arg(long, default_value_t = 0.1)]
        eps1: f64,
        /// Emit CSV instead of the aligned table.
        #[arg(long)]
        csv: bool,
    },
    /// Check whether an attack profile blinds the fusion center and verify
    /// that every rule's branch LLR vanishes on it.
    BlindCheck {
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        p01: f64,
        #[arg(long)]
        p10: f64,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

fn main() {
    env_logger::init();
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> Result<()> {
    if let Some(workers) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    }

    match &cli.command {
        Command::Calibrate => calibrate(&cli),
        Command::Simulate => simulate(&cli),
        Command::Sweep => sweep(&cli),
        Command::CompareAttacks { modes } => compare(&cli, modes.as_deref()),
        Command::RankAttacks {
            alpha,
            p01,
            p10,
            pd,
            pf,
            eps0,
            eps1,
            csv,
        } => rank_attacks(*alpha, *p01, *p10, *pd, *pf, *eps0, *eps1, *csv),
        Command::BlindCheck {
            alpha,
            p01,
            p10,
            tol,
        } => blind_check(*alpha, *p01, *p10, *tol),
    }
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("this subcommand needs --config <file>".into()))?;
    let mut cfg = ExperimentConfig::load(path)?;
    if let Some(seed) = cli.seed {
        cfg.system.seed = seed;
    }
    if let Some(trials) = cli.trials {
        cfg.trials = trials;
        cfg.max_trials = cfg.max_trials.max(trials);
    }
    Ok(cfg)
}

fn calibrate(cli: &Cli) -> Result<()> {
    let cfg = load_config(cli)?;
    cfg.system.validate()?;
    let lambda = calibrate_threshold(&cfg.system)?;
    let mut rng = trial_stream(cfg.system.seed, 0, StreamPurpose::Channel);
    let real = draw_channels(&cfg.system, &mut rng)?;
    println!(
        "threshold lambda = {lambda:.6} (target_pf = {}, T = {})",
        cfg.system.target_pf, cfg.system.sample_count
    );
    println!("{:>4} {:>12} {:>10} {:>10}", "su", "gamma", "pd", "pf");
    for (i, &g) in real.snr.iter().enumerate() {
        let p = local_probabilities(lambda, g, &cfg.system)?;
        println!("{i:>4} {g:>12.4} {:>10.6} {:>10.6}", p.pd, p.pf);
    }
    Ok(())
}

fn emit_rows(cli: &Cli, spec: &ExperimentSpec, rows: &[specfuse::harness::ResultRow]) -> Result<()> {
    match &cli.out {
        Some(path) => {
            output::write_csv(rows, path)?;
            output::write_gnuplot(path, &format!("{} / {}", spec.attack.kind, spec.rule))?;
            if cli.json {
                output::write_json(rows, &spec.paths, &path.with_extension("json"))?;
            }
            println!("wrote {} row(s) to {}", rows.len(), path.display());
        }
        None => print!("{}", output::csv_string(rows)),
    }
    Ok(())
}

fn simulate(cli: &Cli) -> Result<()> {
    let cfg = load_config(cli)?;
    let spec = cfg.resolve()?;
    for (i, path) in spec.paths.iter().enumerate() {
        log::info!(
            "path {i}: equivalent eps0 = {:.6}, eps1 = {:.6}",
            path.equivalent.eps0,
            path.equivalent.eps1
        );
    }
    let row = estimate_metrics(&spec)?;
    emit_rows(cli, &spec, &[row])
}

fn sweep(cli: &Cli) -> Result<()> {
    let cfg = load_config(cli)?;
    let spec = cfg.resolve()?;
    let sweep: Sweep = cfg
        .sweep()
        .ok_or_else(|| Error::Config("sweep subcommand needs a 'sweep' config block".into()))?;
    let rows = run_sweep(&spec, &sweep)?;
    emit_rows(cli, &spec, &rows)
}

fn parse_modes(spec: &ExperimentSpec, filter: Option<&str>) -> Result<Vec<NamedAttack>> {
    let alpha = spec.attack.profile.alpha;
    let all = [
        NamedAttack::always_no(alpha)?,
        NamedAttack::always_yes(alpha)?,
        NamedAttack::always_false(alpha)?,
        NamedAttack::random(alpha, spec.attack.profile.p01, spec.attack.profile.p10)?,
    ];
    match filter {
        None => Ok(all.to_vec()),
        Some(list) => {
            let mut out = Vec::new();
            for name in list.split(',') {
                let kind: AttackKind = name.trim().parse()?;
                let found = all
                    .iter()
                    .find(|m| m.kind == kind)
                    .ok_or_else(|| Error::invalid(format!("mode {kind} not comparable")))?;
                out.push(*found);
            }
            Ok(out)
        }
    }
}

fn compare(cli: &Cli, filter: Option<&str>) -> Result<()> {
    let cfg = load_config(cli)?;
    let spec = cfg.resolve()?;
    let modes = parse_modes(&spec, filter)?;
    let report = compare_attacks(&spec, &modes)?;

    println!(
        "{:>5} {:>8} {:>10} {:>14} {:>10}",
        "mode", "proxy", "ber", "mean_abs_llr", "mi_bits"
    );
    for m in &report.modes {
        println!(
            "{:>5} {:>8} {:>10.5} {:>14.5} {:>10.5}",
            m.attack.kind.to_string(),
            m.proxy.map_or("-".into(), |p| format!("{p:.3}")),
            m.row.ber,
            m.row.mean_abs_llr,
            m.row.mi_bits
        );
    }
    println!();
    for p in &report.pairs {
        let verdict = if !p.resolved {
            "tie"
        } else if p.consistent {
            "resolved"
        } else {
            "CONTRADICTS PROXY"
        };
        println!(
            "{} vs {}: ber gap {:+.5} (z = {:+.1}) [{verdict}]",
            p.a, p.b, p.ber_gap, p.z
        );
    }
    println!(
        "proxy agreement: {}",
        if report.agrees_with_proxies { "yes" } else { "no" }
    );

    if let Some(path) = &cli.out {
        let mut text = String::from(
            "mode,proxy,ber,mean_abs_llr,mi_bits,trials,errors,n00,n01,n10,n11\n",
        );
        for m in &report.modes {
            let r = &m.row;
            text.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},{}\n",
                m.attack.kind,
                m.proxy.map_or(f64::NAN, |p| p),
                r.ber,
                r.mean_abs_llr,
                r.mi_bits,
                r.trials,
                r.errors,
                r.confusion[0],
                r.confusion[1],
                r.confusion[2],
                r.confusion[3],
            ));
        }
        std::fs::write(path, text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        println!("wrote comparison to {}", path.display());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn rank_attacks(
    alpha: f64,
    p01: f64,
    p10: f64,
    pd: f64,
    pf: f64,
    eps0: f64,
    eps1: f64,
    csv: bool,
) -> Result<()> {
    let rows = attack_comparison_table(alpha, p01, p10, pd, pf, eps0, eps1)?;
    let th = crossover_thresholds(alpha.max(f64::MIN_POSITIVE))?;
    if csv {
        println!("mode,proxy,rank,llr_y1,llr_y0");
        for (rank, r) in rows.iter().enumerate() {
            println!("{},{},{},{},{}", r.kind, r.proxy, rank + 1, r.llr_y1, r.llr_y0);
        }
    } else {
        println!(
            "operating point: alpha={alpha} p01={p01} p10={p10} pd={pd} pf={pf} eps=({eps0},{eps1})"
        );
        println!(
            "crossovers: af/an at alpha=2/3; rd/an at p01+p10={:.4}; rd/af at {:.4}",
            th.rd_vs_an, th.rd_vs_af
        );
        println!(
            "{:>5} {:>8} {:>5} {:>12} {:>12}",
            "mode", "proxy", "rank", "|llr| y=1", "|llr| y=0"
        );
        for (rank, r) in rows.iter().enumerate() {
            println!(
                "{:>5} {:>8.4} {:>5} {:>12.6} {:>12.6}",
                r.kind.to_string(),
                r.proxy,
                rank + 1,
                r.llr_y1.abs(),
                r.llr_y0.abs()
            );
        }
        println!("(smaller proxy predicts the stronger attack)");
    }
    Ok(())
}

fn blind_check(alpha: f64, p01: f64, p10: f64, tol: f64) -> Result<()> {
    let profile = AttackProfile::new(
        alpha,
        p01,
        p10,
        specfuse::byzantine::AssignmentMode::FixedFraction,
    )?;
    let blinding = is_blinding(&profile, tol);
    println!(
        "pi01 + pi10 = {} -> blinding: {blinding}",
        profile.pi01() + profile.pi10()
    );

    // Evaluate every rule across a parameter grid and report the largest
    // branch-LLR magnitude the profile leaves standing.
    let mut max_abs: f64 = 0.0;
    for &pd in &[0.6, 0.75, 0.9, 0.99] {
        for &pf in &[0.01, 0.1, 0.3] {
            for &eps in &[0.05, 0.2, 0.4] {
                let sensor = SensorProfile {
                    lambda: 1.0,
                    gamma: 0.0,
                    pd,
                    pf,
                };
                let path = ReportPath::new(vec![RelayHop::symmetric(eps)?])?;
                let b =
                    BranchInputs::new(sensor, path, profile.pi01(), profile.pi10())?;
                for rule in [
                    FusionRule::Optimal,
                    FusionRule::IdealSensing,
                    FusionRule::HighRelaySnr,
                    FusionRule::LowRelaySnr,
                ] {
                    for y in [false, true] {
                        max_abs = max_abs.max(llr_branch(rule, y, &b)?.abs());
                    }
                }
            }
        }
    }
    println!("max |branch LLR| over rules and grid: {max_abs:.3e}");
    if blinding {
        println!(
            "profile {} the fusion center (tolerance {tol:.1e})",
            if max_abs < 1e-9 { "blinds" } else { "does NOT blind" }
        );
    }
    Ok(())
}
