//! Serial binary-channel relay chains.
//!
//! Shows the exact equivalent channel of a decode-and-forward chain, the
//! symmetric product identity, and how well the minimum per-hop
//! log-reliability approximates the chain's likelihood ratio as the hops
//! approach the fully noisy point.
//!
//! Run with: cargo run --example relay_chains

use specfuse::report_channel::{compose_serial, product_form_ratio, RelayHop, ReportPath};

fn main() -> specfuse::Result<()> {
    // Equivalent channel of a mixed asymmetric chain.
    let hops = vec![
        RelayHop::new(0.12, 0.30)?,
        RelayHop::new(0.25, 0.05)?,
        RelayHop::new(0.08, 0.18)?,
    ];
    let eq = compose_serial(&hops)?;
    println!("chain of {} asymmetric hops:", hops.len());
    for (j, h) in hops.iter().enumerate() {
        println!("  hop {j}: eps0 = {:.3}, eps1 = {:.3}, delta = {:.4}", h.eps0, h.eps1, h.delta());
    }
    println!("  equivalent: eps0 = {:.6}, eps1 = {:.6}\n", eq.eps0, eq.eps1);

    // Symmetric chains follow the product identity 1 - 2 eps_eq = prod (1 - 2 eps_j).
    println!("symmetric product identity (per-hop eps = 0.1):");
    println!("{:>6} {:>12} {:>14}", "hops", "eps_eq", "identity gap");
    for j in 1..=6 {
        let chain = vec![RelayHop::symmetric(0.1)?; j];
        let eq = compose_serial(&chain)?;
        let prod: f64 = chain.iter().map(|h| 1.0 - 2.0 * h.eps0).product();
        println!(
            "{j:>6} {:>12.8} {:>14.2e}",
            eq.eps0,
            ((1.0 - 2.0 * eq.eps0) - prod).abs()
        );
    }

    // Reliability of the min-delta shortcut as hops approach 1/2. The
    // approximation is exact for one hop and usable for chains only deep in
    // the noisy regime.
    println!("\nmin-delta approximation of the chain likelihood ratio:");
    println!("{:>6} {:>8} {:>12} {:>12} {:>10}", "hops", "eps", "exact", "exp(min d)", "rel err");
    for &eps in &[0.30, 0.40, 0.45, 0.48, 0.499] {
        for j in [1usize, 3] {
            let chain = vec![RelayHop::symmetric(eps)?; j];
            let r = product_form_ratio(&chain)?;
            println!(
                "{j:>6} {eps:>8.3} {:>12.6} {:>12.6} {:>9.2}%",
                r.ratio,
                r.min_delta_approx,
                100.0 * (r.ratio - r.min_delta_approx).abs() / r.ratio
            );
        }
    }

    // A path bundles the hops with the cached equivalent and min delta.
    let path = ReportPath::uniform_from_snr_db(0.0, 4)?;
    println!(
        "\n4 hops at 0 dB each: per-hop eps = {:.4}, equivalent eps = {:.4}, min delta = {:.4}",
        path.hops[0].eps0, path.equivalent.eps0, path.delta_min
    );
    Ok(())
}
