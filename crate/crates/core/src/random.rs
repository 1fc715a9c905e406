//! Seeded generators for random states, distributions and channels.
//!
//! Used by property tests and by the distribution samplers in
//! [`network`](crate::network).

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::channels::CqChannel;
use crate::entropic::{CqEntry, LabeledCqState, ProbDist, Register};
use crate::qstate::{c, trace, CMatrix, DensityMatrix};

/// Ginibre ensemble state of the given rank on a single `d`-dimensional system.
pub fn random_density_matrix<R: Rng + ?Sized>(rng: &mut R, d: usize, rank: usize) -> DensityMatrix {
    random_density_matrix_dims(rng, vec![d], rank)
}

pub fn random_density_matrix_dims<R: Rng + ?Sized>(
    rng: &mut R,
    dims: Vec<usize>,
    rank: usize,
) -> DensityMatrix {
    let d: usize = dims.iter().product();
    let rank = rank.clamp(1, d);
    let g = CMatrix::from_fn(d, rank, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let mut m = &g * g.adjoint();
    let tr = trace(&m).re;
    m /= c(tr, 0.0);
    // Exact Hermitian symmetrization of roundoff in the product.
    let m = (&m + m.adjoint()) * c(0.5, 0.0);
    DensityMatrix::new(m, dims).expect("Ginibre construction yields a state")
}

pub fn random_pure_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> DensityMatrix {
    random_density_matrix(rng, d, 1)
}

/// Flat-Dirichlet sample on the `n`-simplex.
pub fn random_prob_dist<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ProbDist {
    let w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1) + 1e-300).collect();
    ProbDist::normalized(w).expect("positive weights")
}

/// Random table over registers `A0, A1, …` with quantum labels `B0, B1, …`.
/// Probabilities are a flat-Dirichlet sample over all symbol tuples.
pub fn random_cq_state<R: Rng + ?Sized>(
    rng: &mut R,
    register_sizes: &[usize],
    qdims: &[usize],
    pure: bool,
) -> LabeledCqState {
    let registers: Vec<Register> = register_sizes
        .iter()
        .enumerate()
        .map(|(i, &s)| Register::new(format!("A{i}"), s))
        .collect();
    let quantum: Vec<String> = (0..qdims.len()).map(|i| format!("B{i}")).collect();
    let total: usize = register_sizes.iter().product();
    let p = random_prob_dist(rng, total);
    let d: usize = qdims.iter().product();
    let mut entries = Vec::with_capacity(total);
    for flat in 0..total {
        let mut symbols = vec![0; register_sizes.len()];
        let mut rem = flat;
        for (k, &s) in register_sizes.iter().enumerate().rev() {
            symbols[k] = rem % s;
            rem /= s;
        }
        let rank = if pure { 1 } else { rng.random_range(1..=d) };
        entries.push(CqEntry {
            symbols,
            prob: p.get(flat),
            state: random_density_matrix_dims(rng, qdims.to_vec(), rank),
        });
    }
    LabeledCqState::new(registers, quantum, entries).expect("consistent random table")
}

/// Channel with independent random outputs for every input tuple.
pub fn random_channel<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet_sizes: &[usize],
    output_dims: &[usize],
    rank: usize,
) -> CqChannel {
    let tuples: usize = alphabet_sizes.iter().product();
    let outputs = (0..tuples)
        .map(|_| random_density_matrix_dims(rng, output_dims.to_vec(), rank))
        .collect();
    let names = if output_dims.len() == 1 {
        vec!["B".to_string()]
    } else {
        (1..=output_dims.len()).map(|i| format!("B{i}")).collect()
    };
    CqChannel::with_numeric_alphabets(alphabet_sizes, names, outputs)
        .expect("consistent random channel")
}
