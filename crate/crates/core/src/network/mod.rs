//! Capacity and rate-region formulas for point-to-point, multiple access,
//! interference, broadcast and relay channels.
//!
//! Each formula builds a [`LabeledCqState`] from a channel and a code
//! distribution, then reads off conditional mutual informations. The
//! distribution types live in [`dist`].

pub mod bc;
pub mod dist;
pub mod ic;
pub mod mac;
pub mod p2p;

pub use bc::{marton_region, relay_pdf_rate, superposition_region};
pub use dist::{
    simplex_grid, AuxSizes, CmgDist, CodeDistribution, HkDist, InputDist, MartonDist, RelayDist,
    SuperpositionDist,
};
pub use ic::{
    cmg_mac_systems, cmg_projection_oracle, cmg_quantities, cmg_region, hk_region, sato_outer,
    si_capacity, vsi_capacity, vsi_check, CmgQuantities, VsiReport,
};
pub use mac::{input_state, mac_region, mac_region_q, mac_region_union, mac_state};
pub use p2p::{classical_capacity_ba, hsw_capacity, mutual_information_classical};

use crate::entropic::LabeledCqState;
use crate::error::{Error, Result};

/// Information values in `[-NEG_TOL, 0)` are roundoff and clamp to zero.
pub const NEG_TOL: f64 = 1e-9;

/// Default points per 1-simplex for distribution grids.
pub const DEFAULT_GRID: usize = 21;

pub(crate) fn clamp_info(name: &str, v: f64) -> Result<f64> {
    if v < -NEG_TOL || v.is_nan() {
        return Err(Error::NegativeInformation {
            name: name.to_string(),
            value: v,
        });
    }
    Ok(v.max(0.0))
}

/// `I(A;B|C)`, clamped at zero and labelled for error reports.
pub(crate) fn info(state: &LabeledCqState, a: &[&str], b: &[&str], c: &[&str]) -> Result<f64> {
    let v = state.conditional_mutual_information(a, b, c)?;
    let label = format!("I({};{}|{})", a.join(""), b.join(""), c.join(""));
    clamp_info(&label, v)
}

/// Output labels of a two-output channel, `(first, second)`.
pub(crate) fn two_outputs(ch: &crate::channels::CqChannel) -> Result<(String, String)> {
    match ch.output_names() {
        [a, b] => Ok((a.clone(), b.clone())),
        other => Err(Error::InvalidArgument(format!(
            "expected a channel with two output systems, got {}",
            other.len()
        ))),
    }
}

pub(crate) fn require_inputs(ch: &crate::channels::CqChannel, n: usize) -> Result<()> {
    if ch.num_inputs() != n {
        return Err(Error::InvalidArgument(format!(
            "expected a channel with {n} input(s), got {}",
            ch.num_inputs()
        )));
    }
    Ok(())
}
