use crate::channels::CqChannel;
use crate::entropic::{ProbDist, EIG_CUTOFF};
use crate::error::{Error, Result};
use crate::qstate::{c, CMatrix, DensityMatrix, Spectrum};

use super::{check_budget, check_delta, Codebook};

/// Slack on the typicality window so sequences sitting exactly on its edge
/// are not lost to roundoff.
const WINDOW_SLACK: f64 = 1e-12;

/// A dense orthogonal projector with its exact rank.
#[derive(Debug, Clone)]
pub struct Projector {
    matrix: CMatrix,
    rank: usize,
}

impl Projector {
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Number of typical eigen-sequences, which is also `Tr Π`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `max |(Π² − Π)_{ij}|`.
    pub fn idempotence_error(&self) -> f64 {
        let sq = &self.matrix * &self.matrix;
        (&sq - &self.matrix).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        crate::qstate::hermitian_deviation(&self.matrix)
    }

    /// `Tr[Π σ]`.
    pub fn weight(&self, sigma: &CMatrix) -> f64 {
        crate::qstate::trace_product(&self.matrix, sigma)
    }
}

/// Product eigenvectors `v_{k1} ⊗ … ⊗ v_{kn}` whose log-probability per
/// symbol lies within `delta` of `target`.
fn product_typical(spectra: &[&Spectrum], target: f64, delta: f64) -> Projector {
    let n = spectra.len();
    let d = spectra[0].dim();
    let total = d.pow(n as u32);
    let logs: Vec<Vec<f64>> = spectra
        .iter()
        .map(|s| {
            s.eigenvalues
                .iter()
                .map(|&l| if l > EIG_CUTOFF { l.log2() } else { f64::NEG_INFINITY })
                .collect()
        })
        .collect();

    // Mixed-radix enumeration; position 0 is the most significant digit,
    // matching the Kronecker ordering.
    let mut columns: Vec<Vec<usize>> = Vec::new();
    let mut digits = vec![0usize; n];
    for _ in 0..total {
        let lp: f64 = digits.iter().enumerate().map(|(i, &k)| logs[i][k]).sum();
        if lp.is_finite() && (-lp / n as f64 - target).abs() <= delta + WINDOW_SLACK {
            columns.push(digits.clone());
        }
        for i in (0..n).rev() {
            digits[i] += 1;
            if digits[i] < d {
                break;
            }
            digits[i] = 0;
        }
    }

    let rank = columns.len();
    let mut w = CMatrix::zeros(total, rank);
    for (col, seq) in columns.iter().enumerate() {
        let mut v = vec![c(1.0, 0.0)];
        for (i, &k) in seq.iter().enumerate() {
            let e = spectra[i].eigenvectors.column(k);
            let mut next = Vec::with_capacity(v.len() * d);
            for a in &v {
                for b in e.iter() {
                    next.push(a * b);
                }
            }
            v = next;
        }
        for (r, z) in v.into_iter().enumerate() {
            w[(r, col)] = z;
        }
    }
    let m = &w * w.adjoint();
    Projector {
        matrix: (&m + m.adjoint()) * c(0.5, 0.0),
        rank,
    }
}

fn entropy_of(s: &Spectrum) -> f64 {
    s.eigenvalues
        .iter()
        .filter(|&&l| l > EIG_CUTOFF)
        .map(|&l| -l * l.log2())
        .sum()
}

/// Projector onto the δ-typical subspace of `ρ^{⊗n}`.
pub fn typical_projector(rho: &DensityMatrix, n: usize, delta: f64) -> Result<Projector> {
    check_delta(delta)?;
    check_budget(rho.dim(), n)?;
    let s = rho.spectrum();
    let h = entropy_of(&s);
    let spectra = vec![&s; n];
    Ok(product_typical(&spectra, h, delta))
}

/// The conditionally typical projector of `ρ_{x1} ⊗ … ⊗ ρ_{xn}`. The window
/// is centred on the empirical conditional entropy `(1/n) Σ H(ρ_{xi})`.
///
/// Returns the projector together with that entropy.
pub fn cond_typical_projector(ch: &CqChannel, xn: &[usize], delta: f64) -> Result<(Projector, f64)> {
    check_delta(delta)?;
    if ch.num_inputs() != 1 {
        return Err(Error::InvalidArgument(
            "conditional typicality needs a single-input channel".into(),
        ));
    }
    check_budget(ch.output_dim(), xn.len())?;
    let spectra: Vec<Spectrum> = ch.outputs().iter().map(|r| r.spectrum()).collect();
    let mut per_pos = Vec::with_capacity(xn.len());
    for &x in xn {
        per_pos.push(spectra.get(x).ok_or_else(|| {
            Error::InvalidArgument(format!("symbol {x} outside the input alphabet"))
        })?);
    }
    let h_emp = per_pos.iter().map(|s| entropy_of(s)).sum::<f64>() / xn.len() as f64;
    Ok((product_typical(&per_pos, h_emp, delta), h_emp))
}

/// The average-typical projector and one conditionally typical projector
/// per codeword.
#[derive(Debug, Clone)]
pub struct ProjectorSet {
    pub average: Projector,
    pub codewords: Vec<Projector>,
    /// Empirical conditional entropy of each codeword.
    pub empirical_entropies: Vec<f64>,
    pub delta: f64,
    pub blocklength: usize,
}

impl ProjectorSet {
    /// Whether `Tr Π_m ≤ 2^{n(H_emp + δ)}` for every codeword, comparing
    /// the integer rank against the bound.
    pub fn rank_bound_holds(&self) -> bool {
        self.rank_bound_slacks().iter().all(|&s| s >= 0.0)
    }

    /// `2^{n(H_emp + δ)} − Tr Π_m` per codeword.
    pub fn rank_bound_slacks(&self) -> Vec<f64> {
        self.codewords
            .iter()
            .zip(&self.empirical_entropies)
            .map(|(p, &h)| self.n_exp(h) - p.rank() as f64)
            .collect()
    }

    fn n_exp(&self, h: f64) -> f64 {
        (self.blocklength as f64 * (h + self.delta)).exp2()
    }
}

/// Builds `Π̄` for the ensemble average `Σ p(x) ρ_x` and `Π_{xⁿ(m)}` for
/// every codeword.
pub fn projector_set(ch: &CqChannel, p: &ProbDist, code: &Codebook, delta: f64) -> Result<ProjectorSet> {
    code.check_channel(ch)?;
    let avg = ch.average_state(&[p])?;
    let average = typical_projector(&avg, code.n(), delta)?;
    let mut codewords = Vec::with_capacity(code.len());
    let mut empirical_entropies = Vec::with_capacity(code.len());
    for cw in code.codewords() {
        let (pi, h) = cond_typical_projector(ch, cw, delta)?;
        codewords.push(pi);
        empirical_entropies.push(h);
    }
    Ok(ProjectorSet {
        average,
        codewords,
        empirical_entropies,
        delta,
        blocklength: code.n(),
    })
}
