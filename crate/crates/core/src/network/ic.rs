//! Interference channel regions.
//!
//! The first output label is receiver 1's system `B1`, the second is
//! receiver 2's `B2`. Sender `i` controls input `i`.

use rayon::prelude::*;

use crate::channels::CqChannel;
use crate::entropic::{CqEntry, LabeledCqState, ProbDist, Register};
use crate::error::Result;
use crate::regions::{HalfspaceRegion, Inequality};

use super::dist::{simplex_grid, CmgDist, HkDist, InputDist};
use super::mac::input_state;
use super::{info, require_inputs, two_outputs};

const R12: [&str; 2] = ["R1", "R2"];

fn region(rows: &[([f64; 2], f64)]) -> Result<HalfspaceRegion> {
    HalfspaceRegion::new(
        R12.iter().map(|s| s.to_string()).collect(),
        rows.iter()
            .map(|(c, b)| Inequality::new(c.to_vec(), *b))
            .collect(),
    )
}

/// Outcome of a very-strong-interference scan over input laws.
#[derive(Debug, Clone)]
pub struct VsiReport {
    pub holds: bool,
    /// Smallest `RHS - LHS` over both conditions and all grid laws.
    pub worst_slack: f64,
    /// The grid law attaining `worst_slack`.
    pub worst: (ProbDist, ProbDist),
}

/// Checks `I(X1;B1|X2) ≤ I(X1;B2)` and `I(X2;B2|X1) ≤ I(X2;B1)` for every
/// product law on the grid, with absolute tolerance `tol`.
pub fn vsi_check(ch: &CqChannel, resolution: usize, tol: f64) -> Result<VsiReport> {
    require_inputs(ch, 2)?;
    let (b1, b2) = two_outputs(ch)?;
    let g1 = simplex_grid(ch.alphabet_size(0), resolution);
    let g2 = simplex_grid(ch.alphabet_size(1), resolution);
    let pairs: Vec<(&ProbDist, &ProbDist)> =
        g1.iter().flat_map(|a| g2.iter().map(move |b| (a, b))).collect();
    let slacks = pairs
        .par_iter()
        .map(|(p1, p2)| {
            let st = input_state(ch, &InputDist::product((*p1).clone(), (*p2).clone()))?;
            let s1 = info(&st, &["X1"], &[&b2], &[])? - info(&st, &["X1"], &[&b1], &["X2"])?;
            let s2 = info(&st, &["X2"], &[&b1], &[])? - info(&st, &["X2"], &[&b2], &["X1"])?;
            Ok(s1.min(s2))
        })
        .collect::<Result<Vec<f64>>>()?;
    let (k, worst_slack) = slacks
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &s)| if s < acc.1 { (i, s) } else { acc });
    Ok(VsiReport {
        holds: worst_slack >= -tol,
        worst_slack,
        worst: (pairs[k].0.clone(), pairs[k].1.clone()),
    })
}

/// `{R1 ≤ I(X1;B1|X2Q), R2 ≤ I(X2;B2|X1Q)}`.
pub fn vsi_capacity(ch: &CqChannel, d: &InputDist) -> Result<HalfspaceRegion> {
    let (b1, b2) = two_outputs(ch)?;
    let st = input_state(ch, d)?;
    region(&[
        ([1.0, 0.0], info(&st, &["X1"], &[&b1], &["X2", "Q"])?),
        ([0.0, 1.0], info(&st, &["X2"], &[&b2], &["X1", "Q"])?),
    ])
}

/// The very-strong rectangle plus
/// `R1 + R2 ≤ min{I(X1X2;B1|Q), I(X1X2;B2|Q)}`.
pub fn si_capacity(ch: &CqChannel, d: &InputDist) -> Result<HalfspaceRegion> {
    let (b1, b2) = two_outputs(ch)?;
    let st = input_state(ch, d)?;
    let sum1 = info(&st, &["X1", "X2"], &[&b1], &["Q"])?;
    let sum2 = info(&st, &["X1", "X2"], &[&b2], &["Q"])?;
    region(&[
        ([1.0, 0.0], info(&st, &["X1"], &[&b1], &["X2", "Q"])?),
        ([0.0, 1.0], info(&st, &["X2"], &[&b2], &["X1", "Q"])?),
        ([1.0, 1.0], sum1.min(sum2)),
    ])
}

/// Outer bound with the sum rate measured on the joint output `B1B2`.
pub fn sato_outer(ch: &CqChannel, d: &InputDist) -> Result<HalfspaceRegion> {
    let (b1, b2) = two_outputs(ch)?;
    let st = input_state(ch, d)?;
    region(&[
        ([1.0, 0.0], info(&st, &["X1"], &[&b1], &["X2", "Q"])?),
        ([0.0, 1.0], info(&st, &["X2"], &[&b2], &["X1", "Q"])?),
        ([1.0, 1.0], info(&st, &["X1", "X2"], &[&b1, &b2], &["Q"])?),
    ])
}

/// Registers `Q, U1, W1, U2, W2` with output `ρ_{f1(u1,w1), f2(u2,w2)}`.
pub fn hk_state(ch: &CqChannel, d: &HkDist) -> Result<LabeledCqState> {
    require_inputs(ch, 2)?;
    d.validate(ch)?;
    let s = d.sizes();
    let mut entries = Vec::new();
    for q in 0..s.q {
        for u1 in 0..s.u1 {
            for w1 in 0..s.w1 {
                for u2 in 0..s.u2 {
                    for w2 in 0..s.w2 {
                        let prob = d.q.get(q)
                            * d.u1[q].get(u1)
                            * d.w1[q].get(w1)
                            * d.u2[q].get(u2)
                            * d.w2[q].get(w2);
                        if prob == 0.0 {
                            continue;
                        }
                        let x = [d.f1[u1][w1], d.f2[u2][w2]];
                        entries.push(CqEntry {
                            symbols: vec![q, u1, w1, u2, w2],
                            prob,
                            state: ch.output(&x).clone(),
                        });
                    }
                }
            }
        }
    }
    LabeledCqState::new(
        vec![
            Register::new("Q", s.q),
            Register::new("U1", s.u1),
            Register::new("W1", s.w1),
            Register::new("U2", s.u2),
            Register::new("W2", s.w2),
        ],
        ch.output_names().to_vec(),
        entries,
    )
}

/// The nine-inequality Han-Kobayashi region for one code distribution.
pub fn hk_region(ch: &CqChannel, d: &HkDist) -> Result<HalfspaceRegion> {
    let (b1, b2) = two_outputs(ch)?;
    let st = hk_state(ch, d)?;
    let (b1, b2) = ([b1.as_str()], [b2.as_str()]);
    let i = |a: &[&str], b: &[&str], c: &[&str]| info(&st, a, b, c);

    let hk1 = i(&["U1", "W1"], &b1, &["W2", "Q"])?;
    let u1_b1 = i(&["U1"], &b1, &["W1", "W2", "Q"])?;
    let w1_b2 = i(&["W1"], &b2, &["U2", "W2", "Q"])?;
    let hk3 = i(&["U2", "W2"], &b2, &["W1", "Q"])?;
    let w2_b1 = i(&["W2"], &b1, &["U1", "W1", "Q"])?;
    let u2_b2 = i(&["U2"], &b2, &["W1", "W2", "Q"])?;
    let all_b1 = i(&["U1", "W1", "W2"], &b1, &["Q"])?;
    let all_b2 = i(&["U2", "W2", "W1"], &b2, &["Q"])?;
    let u1w2_b1 = i(&["U1", "W2"], &b1, &["W1", "Q"])?;
    let u2w1_b2 = i(&["U2", "W1"], &b2, &["W2", "Q"])?;

    region(&[
        ([1.0, 0.0], hk1),
        ([1.0, 0.0], u1_b1 + w1_b2),
        ([0.0, 1.0], hk3),
        ([0.0, 1.0], w2_b1 + u2_b2),
        ([1.0, 1.0], all_b1 + u2_b2),
        ([1.0, 1.0], u1_b1 + all_b2),
        ([1.0, 1.0], u1w2_b1 + u2w1_b2),
        ([2.0, 1.0], u1_b1 + u2w1_b2 + all_b1),
        ([1.0, 2.0], u1w2_b1 + u2_b2 + all_b2),
    ])
}

/// Registers `Q, W1, X1, W2, X2` with output `ρ_{x1,x2}`.
pub fn cmg_state(ch: &CqChannel, d: &CmgDist) -> Result<LabeledCqState> {
    require_inputs(ch, 2)?;
    d.validate(ch)?;
    let (n1, n2) = (ch.alphabet_size(0), ch.alphabet_size(1));
    let (nw1, nw2) = (d.w1[0].len(), d.w2[0].len());
    let mut entries = Vec::new();
    for q in 0..d.q.len() {
        for w1 in 0..nw1 {
            for x1 in 0..n1 {
                let p1 = d.w1[q].get(w1) * d.x1[q][w1].get(x1);
                for w2 in 0..nw2 {
                    for x2 in 0..n2 {
                        let prob = d.q.get(q) * p1 * d.w2[q].get(w2) * d.x2[q][w2].get(x2);
                        if prob == 0.0 {
                            continue;
                        }
                        entries.push(CqEntry {
                            symbols: vec![q, w1, x1, w2, x2],
                            prob,
                            state: ch.output(&[x1, x2]).clone(),
                        });
                    }
                }
            }
        }
    }
    LabeledCqState::new(
        vec![
            Register::new("Q", d.q.len()),
            Register::new("W1", nw1),
            Register::new("X1", n1),
            Register::new("W2", nw2),
            Register::new("X2", n2),
        ],
        ch.output_names().to_vec(),
        entries,
    )
}

/// The four rate quantities each receiver's three-sender decoder sees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CmgQuantities {
    /// `I(X1;B1|W1W2Q)`
    pub a1: f64,
    /// `I(X1;B1|W2Q)`
    pub b1: f64,
    /// `I(X1W2;B1|W1Q)`
    pub c1: f64,
    /// `I(X1W2;B1|Q)`
    pub d1: f64,
    /// `I(X2;B2|W1W2Q)`
    pub a2: f64,
    /// `I(X2;B2|W1Q)`
    pub b2: f64,
    /// `I(X2W1;B2|W2Q)`
    pub c2: f64,
    /// `I(X2W1;B2|Q)`
    pub d2: f64,
}

pub fn cmg_quantities(ch: &CqChannel, d: &CmgDist) -> Result<CmgQuantities> {
    let (b1, b2) = two_outputs(ch)?;
    let st = cmg_state(ch, d)?;
    let (b1, b2) = ([b1.as_str()], [b2.as_str()]);
    Ok(CmgQuantities {
        a1: info(&st, &["X1"], &b1, &["W1", "W2", "Q"])?,
        b1: info(&st, &["X1"], &b1, &["W2", "Q"])?,
        c1: info(&st, &["X1", "W2"], &b1, &["W1", "Q"])?,
        d1: info(&st, &["X1", "W2"], &b1, &["Q"])?,
        a2: info(&st, &["X2"], &b2, &["W1", "W2", "Q"])?,
        b2: info(&st, &["X2"], &b2, &["W1", "Q"])?,
        c2: info(&st, &["X2", "W1"], &b2, &["W2", "Q"])?,
        d2: info(&st, &["X2", "W1"], &b2, &["Q"])?,
    })
}

impl CmgQuantities {
    /// The net-rate region in closed form.
    pub fn region(&self) -> Result<HalfspaceRegion> {
        let q = self;
        region(&[
            ([1.0, 0.0], q.b1),
            ([1.0, 0.0], q.a1 + q.c2),
            ([0.0, 1.0], q.b2),
            ([0.0, 1.0], q.c1 + q.a2),
            ([1.0, 1.0], q.d1 + q.a2),
            ([1.0, 1.0], q.a1 + q.d2),
            ([1.0, 1.0], q.c1 + q.c2),
            ([2.0, 1.0], q.d1 + q.a1 + q.c2),
            ([1.0, 2.0], q.a2 + q.d2 + q.c1),
        ])
    }

    /// The two receivers' split-rate systems over
    /// `(R1p, R1c, R2p, R2c)`.
    pub fn split_systems(&self) -> Result<(HalfspaceRegion, HalfspaceRegion)> {
        let coords = ["R1p", "R1c", "R2p", "R2c"];
        let q = self;
        let rx1 = HalfspaceRegion::from_rows(
            &coords,
            &[
                (&[1.0, 0.0, 0.0, 0.0], q.a1),
                (&[1.0, 1.0, 0.0, 0.0], q.b1),
                (&[1.0, 0.0, 0.0, 1.0], q.c1),
                (&[1.0, 1.0, 0.0, 1.0], q.d1),
            ],
        )?;
        let rx2 = HalfspaceRegion::from_rows(
            &coords,
            &[
                (&[0.0, 0.0, 1.0, 0.0], q.a2),
                (&[0.0, 0.0, 1.0, 1.0], q.b2),
                (&[0.0, 1.0, 1.0, 0.0], q.c2),
                (&[0.0, 1.0, 1.0, 1.0], q.d2),
            ],
        )?;
        Ok((rx1, rx2))
    }

    /// Fourier-Motzkin image of the intersected split systems under
    /// `R1 = R1p + R1c`, `R2 = R2p + R2c`.
    pub fn projected(&self) -> Result<HalfspaceRegion> {
        let (rx1, rx2) = self.split_systems()?;
        rx1.intersect(&rx2)?.fm_project(&split_map(), &R12)
    }
}

/// Rows of `(R1, R2)` as combinations of `(R1p, R1c, R2p, R2c)`.
pub fn split_map() -> Vec<Vec<f64>> {
    vec![vec![1.0, 1.0, 0.0, 0.0], vec![0.0, 0.0, 1.0, 1.0]]
}

/// The nine-inequality Chong-Motani-Garg region for one code distribution.
pub fn cmg_region(ch: &CqChannel, d: &CmgDist) -> Result<HalfspaceRegion> {
    cmg_quantities(ch, d)?.region()
}

pub fn cmg_mac_systems(ch: &CqChannel, d: &CmgDist) -> Result<(HalfspaceRegion, HalfspaceRegion)> {
    cmg_quantities(ch, d)?.split_systems()
}

/// The same region obtained by projecting the receivers' split systems.
pub fn cmg_projection_oracle(ch: &CqChannel, d: &CmgDist) -> Result<HalfspaceRegion> {
    cmg_quantities(ch, d)?.projected()
}
