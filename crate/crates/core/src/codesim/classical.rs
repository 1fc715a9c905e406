use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channels::Transition;
use crate::entropic::ProbDist;
use crate::error::{Error, Result};

use super::{check_delta, message_count, sample_codewords};

const WINDOW_SLACK: f64 = 1e-12;

/// Outcome counts of a typical-set decoding experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalSimReport {
    pub n: usize,
    pub rate: f64,
    pub messages: usize,
    pub trials: usize,
    /// Trials that decoded the wrong message or none.
    pub errors: usize,
    /// Output sequence not typical for the output law.
    pub e0: usize,
    /// Transmitted codeword not conditionally typical with the output.
    pub e1: usize,
    /// Some other codeword also conditionally typical with the output.
    pub e2: usize,
    /// `(M−1) (Σ_x p(x) 2^{H(W_x)})^n 2^{−n[H(Y) − 2δ]}`, an upper bound on
    /// the probability of the wrong-codeword event.
    pub packing_bound: f64,
}

impl ClassicalSimReport {
    pub fn error_rate(&self) -> f64 {
        self.errors as f64 / self.trials as f64
    }

    pub fn e2_rate(&self) -> f64 {
        self.e2 as f64 / self.trials as f64
    }
}

fn entropy_row(row: &[f64]) -> f64 {
    row.iter().filter(|&&w| w > 0.0).map(|&w| -w * w.log2()).sum()
}

/// Monte-Carlo estimate of the typical-set decoder's error probability for
/// a random codebook of `⌈2^{nR}⌉` codewords drawn from `p`.
///
/// Conditional typicality is judged against the empirical conditional
/// entropy `(1/n) Σ H(W_{x_i})` of each candidate codeword. Each trial uses
/// its own codebook and message; trials are seeded from `seed` and their
/// index, so results do not depend on thread count.
pub fn classical_typical_decode_sim(
    t: &Transition,
    p: &ProbDist,
    rate: f64,
    n: usize,
    delta: f64,
    trials: usize,
    seed: u64,
) -> Result<ClassicalSimReport> {
    check_delta(delta)?;
    if p.len() != t.num_inputs() {
        return Err(Error::DimensionMismatch(format!(
            "input law has {} entries, channel has {} inputs",
            p.len(),
            t.num_inputs()
        )));
    }
    if n == 0 || trials == 0 {
        return Err(Error::InvalidArgument("need n ≥ 1 and at least one trial".into()));
    }
    let m = message_count(n, rate)?;
    if m.saturating_mul(n) > 50_000_000 {
        return Err(Error::DimensionBudget(format!(
            "{m} codewords of length {n} per trial is too large"
        )));
    }
    let ny = t.num_outputs();
    let mut q = vec![0.0; ny];
    for x in 0..t.num_inputs() {
        for (y, acc) in q.iter_mut().enumerate() {
            *acc += p.get(x) * t.get(x, y);
        }
    }
    let h_y = entropy_row(&q);
    let row_h: Vec<f64> = (0..t.num_inputs()).map(|x| entropy_row(t.row(x))).collect();
    let log_q: Vec<f64> = q.iter().map(|&v| if v > 0.0 { v.log2() } else { f64::NEG_INFINITY }).collect();
    let log_w: Vec<Vec<f64>> = t
        .rows()
        .iter()
        .map(|r| r.iter().map(|&w| if w > 0.0 { w.log2() } else { f64::NEG_INFINITY }).collect())
        .collect();
    let rows: Vec<WeightedIndex<f64>> = t
        .rows()
        .iter()
        .map(|r| WeightedIndex::new(r).map_err(|e| Error::InvalidDistribution(e.to_string())))
        .collect::<Result<_>>()?;

    let nf = n as f64;
    let cond_typical = |cw: &[usize], y: &[usize]| -> bool {
        let mut lp = 0.0;
        let mut h = 0.0;
        for (&x, &yy) in cw.iter().zip(y) {
            lp += log_w[x][yy];
            h += row_h[x];
        }
        lp.is_finite() && (-lp / nf - h / nf).abs() <= delta + WINDOW_SLACK
    };

    // (0 = ok, 1 = error) plus the three event flags.
    let outcomes: Vec<[bool; 4]> = (0..trials)
        .into_par_iter()
        .map(|trial| -> Result<[bool; 4]> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(trial as u64);
            let book = sample_codewords(&mut rng, p, n, m)?;
            let sent = rng.random_range(0..m);
            let y: Vec<usize> = book[sent].iter().map(|&x| rows[x].sample(&mut rng)).collect();
            let lq: f64 = y.iter().map(|&v| log_q[v]).sum();
            if !((-lq / nf - h_y).abs() <= delta + WINDOW_SLACK) {
                return Ok([true, true, false, false]);
            }
            let e1 = !cond_typical(&book[sent], &y);
            let e2 = book
                .iter()
                .enumerate()
                .any(|(k, cw)| k != sent && cond_typical(cw, &y));
            Ok([e1 || e2, false, e1, e2])
        })
        .collect::<Result<_>>()?;

    let count = |i: usize| outcomes.iter().filter(|o| o[i]).count();
    let spread: f64 = (0..t.num_inputs()).map(|x| p.get(x) * row_h[x].exp2()).sum();
    let packing_bound = (m as f64 - 1.0) * (nf * (spread.log2() - h_y + 2.0 * delta)).exp2();
    Ok(ClassicalSimReport {
        n,
        rate,
        messages: m,
        trials,
        errors: count(0),
        e0: count(1),
        e1: count(2),
        e2: count(3),
        packing_bound,
    })
}
