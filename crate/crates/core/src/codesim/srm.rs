use rayon::prelude::*;

use crate::channels::{CqChannel, Povm};
use crate::entropic::ProbDist;
use crate::error::{Error, Result};
use crate::qstate::{c, eigh, trace_product, CMatrix};

use super::typical::{projector_set, ProjectorSet};
use super::{codeword_state, Codebook};

/// Eigenvalues of `S` below this fraction of the largest are dropped from
/// the pseudo-inverse square root.
pub const PINV_CUTOFF: f64 = 1e-10;

/// Eigenvalues of `S` below this fraction are roundoff of an exact zero.
const ROUNDOFF: f64 = 1e-13;

pub const SWEEP_CSV_HEADER: &str = "n,R,seed,delta,exact_error,hn_bound";

/// The square-root measurement `Λ_m = S^{-1/2} P_m S^{-1/2}` plus the
/// remainder `I − Σ Λ_m` as a final error outcome.
#[derive(Debug, Clone)]
pub struct SquareRootMeasurement {
    /// `M` message elements followed by the remainder.
    pub povm: Povm,
    /// The detection operators `P_m`.
    pub detection: Vec<CMatrix>,
    pub dim: usize,
    /// Rank of `S` after the cutoff.
    pub support_rank: usize,
    /// Largest eigenvalue of `S` that was dropped, relative to the largest
    /// kept one.
    pub largest_dropped: f64,
    /// `max |(Σ Λ − I)_{ij}|` including the remainder.
    pub completeness_error: f64,
}

impl SquareRootMeasurement {
    pub fn messages(&self) -> usize {
        self.detection.len()
    }

    /// True when `S` had eigenvalues below the cutoff that are not roundoff
    /// of zero; the measurement then ignores part of the support of `S`.
    pub fn rank_deficient(&self) -> bool {
        self.largest_dropped > ROUNDOFF
    }

    pub fn remainder(&self) -> &CMatrix {
        self.povm.elements().last().expect("remainder present")
    }
}

fn hermitize(m: CMatrix) -> CMatrix {
    (&m + m.adjoint()) * c(0.5, 0.0)
}

/// Square-root measurement built from arbitrary detection operators
/// `0 ≤ P_m ≤ I`.
pub fn srm_from_detection(detection: Vec<CMatrix>) -> Result<SquareRootMeasurement> {
    let d = detection
        .first()
        .map(|p| p.nrows())
        .ok_or_else(|| Error::Measurement("no detection operators".into()))?;
    let mut s = CMatrix::zeros(d, d);
    for p in &detection {
        if p.nrows() != d || p.ncols() != d {
            return Err(Error::Measurement("detection operators differ in dimension".into()));
        }
        s += p;
    }
    let spec = eigh(&hermitize(s))?;
    let top = spec.eigenvalues.first().copied().unwrap_or(0.0).max(0.0);
    let cutoff = PINV_CUTOFF * top;
    let mut support_rank = 0;
    let mut largest_dropped = 0.0f64;
    for &l in &spec.eigenvalues {
        if top > 0.0 && l > cutoff {
            support_rank += 1;
        } else if top > 0.0 {
            largest_dropped = largest_dropped.max(l / top);
        }
    }
    let inv_sqrt = spec.apply(|l| if top > 0.0 && l > cutoff { 1.0 / l.sqrt() } else { 0.0 });
    let mut elements: Vec<CMatrix> = detection
        .iter()
        .map(|p| hermitize(&inv_sqrt * p * &inv_sqrt))
        .collect();
    let mut rest = CMatrix::identity(d, d);
    for e in &elements {
        rest -= e;
    }
    let rest = hermitize(rest);
    let mut total = rest.clone();
    for e in &elements {
        total += e;
    }
    let completeness_error = (&total - CMatrix::identity(d, d))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    elements.push(rest);
    let povm = Povm::new(elements).map_err(|e| Error::Measurement(e.to_string()))?;
    Ok(SquareRootMeasurement {
        povm,
        detection,
        dim: d,
        support_rank,
        largest_dropped,
        completeness_error,
    })
}

/// `P_m = Π̄ Π_m Π̄` from a projector set.
pub fn detection_operators(set: &ProjectorSet) -> Vec<CMatrix> {
    let avg = set.average.matrix();
    set.codewords
        .iter()
        .map(|pi| hermitize(avg * pi.matrix() * avg))
        .collect()
}

/// The square-root measurement for `code`, with `Π̄` taken from the
/// ensemble average under `p`.
pub fn square_root_measurement(
    ch: &CqChannel,
    p: &ProbDist,
    code: &Codebook,
    delta: f64,
) -> Result<(SquareRootMeasurement, ProjectorSet)> {
    let set = projector_set(ch, p, code, delta)?;
    let srm = srm_from_detection(detection_operators(&set))?;
    Ok((srm, set))
}

fn codeword_states(ch: &CqChannel, code: &Codebook) -> Result<Vec<CMatrix>> {
    code.codewords().iter().map(|cw| codeword_state(ch, cw)).collect()
}

/// `(1/M) Σ_m (1 − Tr[Λ_m ρ_{xⁿ(m)}])`, with outcome `m` decoding message `m`.
pub fn exact_error(ch: &CqChannel, code: &Codebook, povm: &Povm) -> Result<f64> {
    code.check_channel(ch)?;
    if povm.len() < code.len() {
        return Err(Error::Measurement(format!(
            "POVM has {} outcomes for {} messages",
            povm.len(),
            code.len()
        )));
    }
    let states = codeword_states(ch, code)?;
    if povm.dim() != states[0].nrows() {
        return Err(Error::DimensionMismatch(format!(
            "POVM acts on dimension {}, codeword states have {}",
            povm.dim(),
            states[0].nrows()
        )));
    }
    let m = code.len() as f64;
    let miss: f64 = states
        .iter()
        .zip(povm.elements())
        .map(|(rho, lam)| 1.0 - trace_product(lam, rho))
        .sum();
    Ok((miss / m).clamp(0.0, 1.0))
}

/// `(1/M) Σ_m [2 Tr((I − P_m) ρ_m) + 4 Σ_{m'≠m} Tr(P_{m'} ρ_m)]`.
pub fn hayashi_nagaoka_bound(ch: &CqChannel, code: &Codebook, detection: &[CMatrix]) -> Result<f64> {
    code.check_channel(ch)?;
    if detection.len() != code.len() {
        return Err(Error::Measurement("one detection operator per message expected".into()));
    }
    let states = codeword_states(ch, code)?;
    let mut total = 0.0;
    for (m, rho) in states.iter().enumerate() {
        let hits: Vec<f64> = detection.iter().map(|p| trace_product(p, rho)).collect();
        let cross: f64 = hits.iter().enumerate().filter(|(k, _)| *k != m).map(|(_, v)| v).sum();
        total += 2.0 * (1.0 - hits[m]) + 4.0 * cross;
    }
    Ok(total / code.len() as f64)
}

/// One line of a blocklength sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub rate: f64,
    pub seed: u64,
    pub delta: f64,
    pub messages: usize,
    pub exact_error: f64,
    pub hn_bound: f64,
    pub rank_bound_holds: bool,
    pub rank_deficient: bool,
}

/// Exact square-root-measurement error for every `(n, seed)` pair, with a
/// fresh random codebook of `⌈2^{nR}⌉` codewords per pair.
pub fn quantum_sweep(
    ch: &CqChannel,
    p: &ProbDist,
    rate: f64,
    ns: &[usize],
    seeds: &[u64],
    delta: f64,
) -> Result<Vec<SweepRow>> {
    let jobs: Vec<(usize, u64)> = ns
        .iter()
        .flat_map(|&n| seeds.iter().map(move |&s| (n, s)))
        .collect();
    // Fail fast on the budget before spawning work.
    for &n in ns {
        super::check_budget(ch.output_dim(), n)?;
    }
    jobs.par_iter()
        .map(|&(n, seed)| {
            let code = Codebook::for_rate(p, n, rate, seed)?;
            let (srm, set) = square_root_measurement(ch, p, &code, delta)?;
            Ok(SweepRow {
                n,
                rate,
                seed,
                delta,
                messages: code.len(),
                exact_error: exact_error(ch, &code, &srm.povm)?,
                hn_bound: hayashi_nagaoka_bound(ch, &code, &srm.detection)?,
                rank_bound_holds: set.rank_bound_holds(),
                rank_deficient: srm.rank_deficient(),
            })
        })
        .collect()
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.n, r.rate, r.seed, r.delta, r.exact_error, r.hn_bound
        ));
    }
    out
}
