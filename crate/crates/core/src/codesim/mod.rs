//! Exact small-blocklength simulation of typical-projector decoders.
//!
//! The quantum side builds dense projectors on the `n`-fold output space,
//! forms the square-root measurement and evaluates its average error
//! probability exactly. The classical side runs Monte-Carlo trials of the
//! joint-typicality decoder.

mod classical;
mod srm;
mod typical;

pub use classical::{classical_typical_decode_sim, ClassicalSimReport};
pub use srm::{
    detection_operators, exact_error, hayashi_nagaoka_bound, quantum_sweep,
    square_root_measurement, srm_from_detection, sweep_csv, SquareRootMeasurement, SweepRow,
    PINV_CUTOFF, SWEEP_CSV_HEADER,
};
pub use typical::{
    cond_typical_projector, projector_set, typical_projector, Projector, ProjectorSet,
};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channels::CqChannel;
use crate::entropic::ProbDist;
use crate::error::{Error, Result};
use crate::qstate::{kron, CMatrix};

/// Largest allowed `n · log₂(dim)`, so dense matrices stay at most `2¹⁴` wide.
pub const QUBIT_BUDGET: f64 = 14.0;

/// Typicality width used when none is given.
pub const DEFAULT_DELTA: f64 = 0.4;

pub(crate) fn check_budget(dim: usize, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("blocklength must be at least 1".into()));
    }
    let cost = n as f64 * (dim as f64).log2();
    if cost > QUBIT_BUDGET + 1e-12 {
        return Err(Error::DimensionBudget(format!(
            "n = {n} copies of a {dim}-dimensional system need {cost:.1} qubits, limit is {QUBIT_BUDGET}"
        )));
    }
    Ok(())
}

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "typicality width must be positive, got {delta}"
        )));
    }
    Ok(())
}

/// `⌈2^{nR}⌉`, at least 1.
pub fn message_count(n: usize, rate: f64) -> Result<usize> {
    if !(rate >= 0.0) || !rate.is_finite() {
        return Err(Error::InvalidArgument(format!("rate must be nonnegative, got {rate}")));
    }
    let m = (n as f64 * rate).exp2().ceil();
    if m > 1e9 {
        return Err(Error::InvalidArgument(format!(
            "2^(nR) = {m:.3e} messages is too many to simulate"
        )));
    }
    // Guard against 2^{integer} landing one ulp above the integer.
    let exact = (n as f64 * rate).exp2();
    let m = if (exact - exact.round()).abs() < 1e-9 { exact.round() } else { m };
    Ok((m as usize).max(1))
}

/// `M` codewords of length `n` over a single input alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    n: usize,
    alphabet: usize,
    codewords: Vec<Vec<usize>>,
    seed: Option<u64>,
}

impl Codebook {
    pub fn new(alphabet: usize, codewords: Vec<Vec<usize>>) -> Result<Self> {
        let n = codewords
            .first()
            .map(|c| c.len())
            .ok_or_else(|| Error::InvalidArgument("codebook needs at least one codeword".into()))?;
        if n == 0 {
            return Err(Error::InvalidArgument("codewords must be nonempty".into()));
        }
        for (m, cw) in codewords.iter().enumerate() {
            if cw.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "codeword {m} has length {}, expected {n}",
                    cw.len()
                )));
            }
            if let Some(&s) = cw.iter().find(|&&s| s >= alphabet) {
                return Err(Error::InvalidArgument(format!(
                    "codeword {m} uses symbol {s} outside an alphabet of size {alphabet}"
                )));
            }
        }
        Ok(Codebook {
            n,
            alphabet,
            codewords,
            seed: None,
        })
    }

    /// `m` codewords drawn i.i.d. from `p`. The same seed always yields the
    /// same codebook.
    pub fn random(p: &ProbDist, n: usize, m: usize, seed: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidArgument("codebook needs n ≥ 1 and M ≥ 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let codewords = sample_codewords(&mut rng, p, n, m)?;
        Ok(Codebook {
            n,
            alphabet: p.len(),
            codewords,
            seed: Some(seed),
        })
    }

    /// A random codebook with `⌈2^{nR}⌉` messages.
    pub fn for_rate(p: &ProbDist, n: usize, rate: f64, seed: u64) -> Result<Self> {
        Self::random(p, n, message_count(n, rate)?, seed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn codewords(&self) -> &[Vec<usize>] {
        &self.codewords
    }

    pub fn codeword(&self, m: usize) -> &[usize] {
        &self.codewords[m]
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// The same codewords under a message permutation: new message `k` is
    /// old message `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.len()];
        if perm.len() != self.len() || perm.iter().any(|&k| k >= self.len() || std::mem::replace(&mut seen[k], true)) {
            return Err(Error::InvalidArgument("not a permutation of the messages".into()));
        }
        Ok(Codebook {
            codewords: perm.iter().map(|&k| self.codewords[k].clone()).collect(),
            ..self.clone()
        })
    }

    pub(crate) fn check_channel(&self, ch: &CqChannel) -> Result<()> {
        if ch.num_inputs() != 1 {
            return Err(Error::InvalidArgument(
                "code simulation needs a single-input channel".into(),
            ));
        }
        if ch.alphabet_size(0) != self.alphabet {
            return Err(Error::DimensionMismatch(format!(
                "codebook alphabet has {} symbols, channel has {}",
                self.alphabet,
                ch.alphabet_size(0)
            )));
        }
        Ok(())
    }
}

pub(crate) fn sample_codewords<R: rand::Rng>(
    rng: &mut R,
    p: &ProbDist,
    n: usize,
    m: usize,
) -> Result<Vec<Vec<usize>>> {
    let dist = WeightedIndex::new(p.weights())
        .map_err(|e| Error::InvalidDistribution(e.to_string()))?;
    Ok((0..m)
        .map(|_| (0..n).map(|_| dist.sample(rng)).collect())
        .collect())
}

/// `ρ_{x1} ⊗ … ⊗ ρ_{xn}`.
pub fn codeword_state(ch: &CqChannel, xn: &[usize]) -> Result<CMatrix> {
    check_budget(ch.output_dim(), xn.len())?;
    let mut acc = CMatrix::identity(1, 1);
    for &x in xn {
        if x >= ch.alphabet_size(0) {
            return Err(Error::InvalidArgument(format!("symbol {x} outside the input alphabet")));
        }
        acc = kron(&acc, ch.output(&[x]).matrix());
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn message_counts() {
        assert_eq!(message_count(2, 0.3).unwrap(), 2);
        assert_eq!(message_count(4, 0.3).unwrap(), 3);
        assert_eq!(message_count(6, 0.3).unwrap(), 4);
        assert_eq!(message_count(8, 0.3).unwrap(), 6);
        assert_eq!(message_count(4, 0.5).unwrap(), 4);
        assert_eq!(message_count(5, 0.0).unwrap(), 1);
        assert!(message_count(5, -1.0).is_err());
    }

    #[test]
    fn seeded_codebooks_reproduce() {
        let p = ProbDist::uniform(3);
        let a = Codebook::random(&p, 7, 5, 42).unwrap();
        let b = Codebook::random(&p, 7, 5, 42).unwrap();
        let c = Codebook::random(&p, 7, 5, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.codewords().iter().flatten().all(|&s| s < 3));
    }

    #[test]
    fn codebook_validation() {
        assert!(Codebook::new(2, vec![]).is_err());
        assert!(Codebook::new(2, vec![vec![0, 1], vec![1]]).is_err());
        assert!(Codebook::new(2, vec![vec![0, 2]]).is_err());
        let cb = Codebook::new(2, vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(cb.permuted(&[0, 0]).is_err());
        assert_eq!(cb.permuted(&[1, 0]).unwrap().codeword(0), &[1, 1]);
    }

    #[test]
    fn budget() {
        assert!(check_budget(2, 14).is_ok());
        assert!(matches!(check_budget(2, 15), Err(Error::DimensionBudget(_))));
        assert!(matches!(check_budget(4, 8), Err(Error::DimensionBudget(_))));
        assert!(check_budget(4, 7).is_ok());
    }
}
