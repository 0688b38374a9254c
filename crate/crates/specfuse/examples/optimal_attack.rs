//! Optimal attack selection and verification.
//!
//! For each compromised fraction the optimal strategy needs no channel
//! knowledge: flip everything below one half, blind the fusion center
//! above. The grid search independently confirms the small-scale corner,
//! and the blinding check confirms the large-scale manifold.
//!
//! Run with: cargo run --example optimal_attack

use specfuse::attack_analysis::verify_small_scale_optimality;
use specfuse::byzantine::{is_blinding, optimal_attack};

fn main() -> specfuse::Result<()> {
    println!(
        "{:>7} {:>6} {:>7} {:>7} {:>9} {:>9} {:>10}",
        "alpha", "kind", "p01", "p10", "pi01", "pi10", "blinding?"
    );
    for k in 0..=10 {
        let alpha = k as f64 / 10.0;
        let attack = optimal_attack(alpha)?;
        println!(
            "{alpha:>7.2} {:>6} {:>7.4} {:>7.4} {:>9.4} {:>9.4} {:>10}",
            attack.kind.to_string(),
            attack.profile.p01,
            attack.profile.p10,
            attack.profile.pi01(),
            attack.profile.pi10(),
            is_blinding(&attack.profile, 1e-12)
        );
    }

    println!("\nsmall-scale grid search (step 0.05) over (p01, p10) in [0,1]^2,");
    println!("objective = mean |branch LLR|; argmin should be the AF corner (1,1):");
    println!(
        "{:>7} {:>6} {:>6} {:>6} {:>6} {:>14} {:>12}",
        "alpha", "pd", "pf", "eps0", "eps1", "argmin", "min |LLR|"
    );
    for (alpha, pd, pf, e0, e1) in [
        (0.1, 0.9, 0.1, 0.0, 0.0),
        (0.3, 0.9, 0.1, 0.1, 0.1),
        (0.3, 0.7, 0.3, 0.2, 0.3),
        (0.49, 0.8, 0.2, 0.05, 0.15),
    ] {
        let check = verify_small_scale_optimality(pd, pf, e0, e1, alpha, 0.05)?;
        println!(
            "{alpha:>7} {pd:>6} {pf:>6} {e0:>6} {e1:>6} {:>14} {:>12.6}",
            format!("({}, {})", check.argmin.0, check.argmin.1),
            check.min_objective
        );
        assert!(check.af_is_optimal);
    }

    println!("\nabove one half any profile with alpha (p01 + p10) = 1 blinds the center;");
    println!("the symmetric choice p01 = p10 = 1/(2 alpha) is just the canonical point.");
    Ok(())
}
