//! SU -> fusion-center report paths as serial chains of binary channels.
//!
//! Each decode-and-forward relay hop acts on the reported bit as a binary
//! (possibly asymmetric) channel with crossover probabilities
//! `eps0 = P(receive 1 | sent 0)` and `eps1 = P(receive 0 | sent 1)`.
//! A chain of hops collapses exactly to a single equivalent binary channel
//! via 2x2 transition-matrix products; for symmetric hops the product
//! identity `1 - 2 eps_eq = prod_j (1 - 2 eps_j)` holds.
//!
//! The per-hop log-reliability `delta_j = ln((1 - eps1_j) / eps0_j)` feeds
//! the low-relay-SNR fusion rule; its minimum over the chain approximates
//! the equivalent channel's likelihood ratio when every hop is nearly
//! fully noisy.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sensing::q_function;

/// One binary-channel hop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelayHop {
    /// P(receive 1 | sent 0).
    pub eps0: f64,
    /// P(receive 0 | sent 1).
    pub eps1: f64,
}

impl RelayHop {
    pub fn new(eps0: f64, eps1: f64) -> Result<Self> {
        for (name, v) in [("eps0", eps0), ("eps1", eps1)] {
            if !(v.is_finite() && (0.0..1.0).contains(&v)) {
                return Err(Error::invalid(format!(
                    "relay hop: {name} = {v} outside [0, 1)"
                )));
            }
        }
        Ok(Self { eps0, eps1 })
    }

    pub fn symmetric(eps: f64) -> Result<Self> {
        Self::new(eps, eps)
    }

    /// Symmetric hop from a per-hop transmission SNR, using the
    /// hard-decision BPSK-over-AWGN convention `eps = Q(sqrt(2 snr))`.
    pub fn from_snr_db(snr_db: f64) -> Result<Self> {
        if !snr_db.is_finite() {
            return Err(Error::invalid("relay hop: snr_db must be finite"));
        }
        let snr = 10f64.powf(snr_db / 10.0);
        let eps = q_function((2.0 * snr).sqrt())?;
        Self::symmetric(eps)
    }

    /// Log-reliability `ln((1 - eps1) / eps0)`. Infinite when `eps0 = 0`.
    pub fn delta(&self) -> f64 {
        ((1.0 - self.eps1) / self.eps0).ln()
    }
}

/// Exact equivalent channel of hops applied in order.
pub fn compose_serial(hops: &[RelayHop]) -> Result<RelayHop> {
    let Some((first, rest)) = hops.split_first() else {
        return Err(Error::invalid("compose_serial: empty hop list"));
    };
    let mut eq = *first;
    for hop in rest {
        eq = RelayHop {
            // Chain the transition matrices: a bit entering as 0 is seen as 1
            // after the new hop if it either arrived as 1 and survived or
            // arrived as 0 and flipped.
            eps0: eq.eps0 * (1.0 - hop.eps1) + (1.0 - eq.eps0) * hop.eps0,
            eps1: eq.eps1 * (1.0 - hop.eps0) + (1.0 - eq.eps1) * hop.eps1,
        };
    }
    Ok(eq)
}

/// One SU's full report path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportPath {
    pub hops: Vec<RelayHop>,
    /// Exact serial composition of `hops`.
    pub equivalent: RelayHop,
    /// `min_j delta_j` over the hops; `+inf` when some hop has `eps0 = 0`.
    pub delta_min: f64,
}

impl ReportPath {
    pub fn new(hops: Vec<RelayHop>) -> Result<Self> {
        let equivalent = compose_serial(&hops)?;
        let delta_min = hops.iter().map(RelayHop::delta).fold(f64::INFINITY, f64::min);
        Ok(Self {
            hops,
            equivalent,
            delta_min,
        })
    }

    /// Noiseless single-hop path.
    pub fn ideal() -> Self {
        Self {
            hops: vec![RelayHop { eps0: 0.0, eps1: 0.0 }],
            equivalent: RelayHop { eps0: 0.0, eps1: 0.0 },
            delta_min: f64::INFINITY,
        }
    }

    /// `hop_count` identical symmetric hops at the given per-hop SNR.
    pub fn uniform_from_snr_db(snr_db: f64, hop_count: usize) -> Result<Self> {
        let hop = RelayHop::from_snr_db(snr_db)?;
        Self::new(vec![hop; hop_count.max(1)])
    }
}

/// Diagnostic evaluation of the serial chain's likelihood ratio
/// `(1 - eps1_eq) / eps0_eq` in its product form, together with the
/// `exp(min delta)` approximation used by the low-relay-SNR fusion rule.
#[derive(Debug, Clone, Copy)]
pub struct ProductFormRatio {
    /// `(1/2)[1 + prod (1 - 2 eps1_j)] / (1 - (1/2)[1 + prod (1 - 2 eps0_j)])`.
    pub ratio: f64,
    /// `exp(min_j delta_j)`.
    pub min_delta_approx: f64,
}

/// Evaluate the product-form ratio. Requires every crossover below 1/2
/// (the regime where the form is meaningful) and positive `eps0`.
pub fn product_form_ratio(hops: &[RelayHop]) -> Result<ProductFormRatio> {
    if hops.is_empty() {
        return Err(Error::invalid("product_form_ratio: empty hop list"));
    }
    for (j, hop) in hops.iter().enumerate() {
        if hop.eps0 == 0.0 {
            return Err(Error::DivisionDomain(format!(
                "product_form_ratio: hop {j} has eps0 = 0, delta undefined"
            )));
        }
        if hop.eps0 >= 0.5 || hop.eps1 >= 0.5 {
            return Err(Error::invalid(format!(
                "product_form_ratio: hop {j} crossover >= 0.5"
            )));
        }
    }
    let prod1: f64 = hops.iter().map(|h| 1.0 - 2.0 * h.eps1).product();
    let prod0: f64 = hops.iter().map(|h| 1.0 - 2.0 * h.eps0).product();
    let num = 0.5 * (1.0 + prod1);
    let den = 1.0 - 0.5 * (1.0 + prod0);
    if den <= 0.0 {
        return Err(Error::DivisionDomain(
            "product_form_ratio: degenerate denominator".into(),
        ));
    }
    let min_delta = hops.iter().map(RelayHop::delta).fold(f64::INFINITY, f64::min);
    Ok(ProductFormRatio {
        ratio: num / den,
        min_delta_approx: min_delta.exp(),
    })
}

/// Send one bit through the path's equivalent channel.
pub fn transmit(sent: bool, path: &ReportPath, rng: &mut impl Rng) -> bool {
    let draw = rng.random::<f64>();
    if sent {
        !(draw < path.equivalent.eps1)
    } else {
        draw < path.equivalent.eps0
    }
}
