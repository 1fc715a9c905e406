//! Broadcast regions and the partial decode-and-forward relay rate.

use crate::channels::CqChannel;
use crate::entropic::{CqEntry, LabeledCqState, Register};
use crate::error::Result;
use crate::regions::HalfspaceRegion;

use super::dist::{MartonDist, RelayDist, SuperpositionDist};
use super::{info, require_inputs, two_outputs};

fn superposition_state(ch: &CqChannel, d: &SuperpositionDist) -> Result<LabeledCqState> {
    d.validate(ch)?;
    let nx = ch.alphabet_size(0);
    let mut entries = Vec::new();
    for w in 0..d.w.len() {
        for x in 0..nx {
            entries.push(CqEntry {
                symbols: vec![w, x],
                prob: d.w.get(w) * d.x[w].get(x),
                state: ch.output(&[x]).clone(),
            });
        }
    }
    LabeledCqState::new(
        vec![Register::new("W", d.w.len()), Register::new("X", nx)],
        ch.output_names().to_vec(),
        entries,
    )
}

/// Superposition coding over `(R1, R)`: `R` is the cloud-centre rate
/// decoded by both receivers, `R1` the satellite rate for receiver 1.
pub fn superposition_region(ch: &CqChannel, d: &SuperpositionDist) -> Result<HalfspaceRegion> {
    require_inputs(ch, 1)?;
    let (b1, b2) = two_outputs(ch)?;
    let st = superposition_state(ch, d)?;
    HalfspaceRegion::from_rows(
        &["R1", "R"],
        &[
            (&[1.0, 0.0], info(&st, &["X"], &[&b1], &["W"])?),
            (&[0.0, 1.0], info(&st, &["W"], &[&b2], &[])?),
            (&[1.0, 1.0], info(&st, &["X"], &[&b1], &[])?),
        ],
    )
}

fn marton_state(ch: &CqChannel, d: &MartonDist) -> Result<LabeledCqState> {
    d.validate(ch)?;
    let mut entries = Vec::new();
    for u1 in 0..d.n1 {
        for u2 in 0..d.n2 {
            entries.push(CqEntry {
                symbols: vec![u1, u2],
                prob: d.p(u1, u2),
                state: ch.output(&[d.f[u1][u2]]).clone(),
            });
        }
    }
    LabeledCqState::new(
        vec![Register::new("U1", d.n1), Register::new("U2", d.n2)],
        ch.output_names().to_vec(),
        entries,
    )
}

/// Marton's region. When `I(U1;U2)` exceeds `I(U1;B1) + I(U2;B2)` the sum
/// bound is zero and the region is the origin.
pub fn marton_region(ch: &CqChannel, d: &MartonDist) -> Result<HalfspaceRegion> {
    require_inputs(ch, 1)?;
    let (b1, b2) = two_outputs(ch)?;
    let st = marton_state(ch, d)?;
    let i1 = info(&st, &["U1"], &[&b1], &[])?;
    let i2 = info(&st, &["U2"], &[&b2], &[])?;
    let i12 = info(&st, &["U1"], &["U2"], &[])?;
    HalfspaceRegion::from_rows(
        &["R1", "R2"],
        &[
            (&[1.0, 0.0], i1),
            (&[0.0, 1.0], i2),
            (&[1.0, 1.0], (i1 + i2 - i12).max(0.0)),
        ],
    )
}

fn relay_state(ch: &CqChannel, d: &RelayDist) -> Result<LabeledCqState> {
    d.validate(ch)?;
    let mut entries = Vec::new();
    for u in 0..d.nu {
        for x in 0..d.nx {
            for x1 in 0..d.nx1 {
                entries.push(CqEntry {
                    symbols: vec![u, x, x1],
                    prob: d.p(u, x, x1),
                    state: ch.output(&[x, x1]).clone(),
                });
            }
        }
    }
    LabeledCqState::new(
        vec![
            Register::new("U", d.nu),
            Register::new("X", d.nx),
            Register::new("X1", d.nx1),
        ],
        ch.output_names().to_vec(),
        entries,
    )
}

/// `min{I(XX1;B), I(U;B1|X1) + I(X;B|X1U)}` for a relay channel with inputs
/// `(x, x1)` (sender, relay) and outputs `(B1, B)` (relay, destination).
pub fn relay_pdf_rate(ch: &CqChannel, d: &RelayDist) -> Result<f64> {
    require_inputs(ch, 2)?;
    let (relay, dest) = two_outputs(ch)?;
    let st = relay_state(ch, d)?;
    let cooperative = info(&st, &["X", "X1"], &[&dest], &[])?;
    let split = info(&st, &["U"], &[&relay], &["X1"])? + info(&st, &["X"], &[&dest], &["X1", "U"])?;
    Ok(cooperative.min(split))
}
