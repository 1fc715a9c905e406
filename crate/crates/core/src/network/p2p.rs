//! Point-to-point capacities: Blahut-Arimoto for classical channels and a
//! grid search with local refinement for the Holevo capacity.

use rayon::prelude::*;

use crate::channels::{CqChannel, Transition};
use crate::entropic::{holevo_information, ProbDist};
use crate::error::{Error, Result};

use super::dist::simplex_grid;
use super::require_inputs;

const BA_MAX_ITERS: usize = 200_000;

/// `I(X;Y)` in bits for input law `p` through `t`.
pub fn mutual_information_classical(t: &Transition, p: &ProbDist) -> f64 {
    let ny = t.num_outputs();
    let mut py = vec![0.0; ny];
    for x in 0..t.num_inputs() {
        for (y, acc) in py.iter_mut().enumerate() {
            *acc += p.get(x) * t.get(x, y);
        }
    }
    let mut i = 0.0;
    for x in 0..t.num_inputs() {
        for (y, &q) in py.iter().enumerate() {
            let w = t.get(x, y);
            if p.get(x) > 0.0 && w > 0.0 {
                i += p.get(x) * w * (w / q).log2();
            }
        }
    }
    i
}

/// `D(W_x || q)` for every input, in bits.
fn divergences(t: &Transition, py: &[f64]) -> Vec<f64> {
    (0..t.num_inputs())
        .map(|x| {
            t.row(x)
                .iter()
                .zip(py)
                .filter(|(w, _)| **w > 0.0)
                .map(|(w, q)| w * (w / q).log2())
                .sum()
        })
        .collect()
}

/// Blahut-Arimoto iteration, stopped once the gap between the lower bound
/// `I(p)` and the upper bound `max_x D(W_x || pW)` drops below `tol`.
pub fn classical_capacity_ba(t: &Transition, tol: f64) -> Result<(f64, ProbDist)> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let nx = t.num_inputs();
    let ny = t.num_outputs();
    let mut p = vec![1.0 / nx as f64; nx];
    for _ in 0..BA_MAX_ITERS {
        let mut py = vec![0.0; ny];
        for (x, &px) in p.iter().enumerate() {
            for (y, acc) in py.iter_mut().enumerate() {
                *acc += px * t.get(x, y);
            }
        }
        let d = divergences(t, &py);
        let lower: f64 = p.iter().zip(&d).map(|(a, b)| a * b).sum();
        let upper = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if upper - lower < tol {
            let p = ProbDist::normalized(p)?;
            return Ok((lower.max(0.0), p));
        }
        let mut next: Vec<f64> = p.iter().zip(&d).map(|(a, b)| a * b.exp2()).collect();
        let total: f64 = next.iter().sum();
        next.iter_mut().for_each(|v| *v /= total);
        p = next;
    }
    Err(Error::Numerical(format!(
        "Blahut-Arimoto did not reach tolerance {tol} in {BA_MAX_ITERS} iterations"
    )))
}

/// Pairwise mass-transfer search from `start` with shrinking steps.
pub(crate) fn refine_on_simplex<F>(start: &ProbDist, mut step: f64, f: F) -> Result<(f64, ProbDist)>
where
    F: Fn(&ProbDist) -> Result<f64>,
{
    let k = start.len();
    let mut best = start.clone();
    let mut best_v = f(&best)?;
    while step > 1e-9 {
        let mut improved = false;
        for i in 0..k {
            for j in 0..k {
                if i == j || best.get(j) <= 0.0 {
                    continue;
                }
                let mv = step.min(best.get(j));
                let mut w = best.weights().to_vec();
                w[i] += mv;
                w[j] -= mv;
                let cand = ProbDist::normalized(w)?;
                let v = f(&cand)?;
                if v > best_v + 1e-15 {
                    best_v = v;
                    best = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Ok((best_v, best))
}

/// Holevo capacity `max_p I(X;B)` of a single-input channel.
///
/// `grid_resolution` points per 1-simplex seed the search; the best grid
/// point is then refined locally.
pub fn hsw_capacity(ch: &CqChannel, grid_resolution: usize) -> Result<(f64, ProbDist)> {
    require_inputs(ch, 1)?;
    if grid_resolution < 2 {
        return Err(Error::InvalidArgument("grid resolution must be at least 2".into()));
    }
    let grid = simplex_grid(ch.alphabet_size(0), grid_resolution);
    let values = grid
        .par_iter()
        .map(|p| holevo_information(ch, p))
        .collect::<Result<Vec<f64>>>()?;
    let (idx, _) = values
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc });
    let step = 1.0 / (grid_resolution - 1) as f64;
    let (v, p) = refine_on_simplex(&grid[idx], step * 0.5, |p| holevo_information(ch, p))?;
    Ok((v.max(values[idx]).max(0.0), p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{builtin, Povm};
    use crate::entropic::binary_entropy;
    use crate::random::random_channel;
    use crate::DensityMatrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn z_channel_capacity() {
        let t = Transition::z_channel(0.5).unwrap();
        let (c, p) = classical_capacity_ba(&t, 1e-10).unwrap();
        assert!((c - (binary_entropy(0.2) - 0.4)).abs() < 1e-8);
        assert!((p.get(0) - 0.6).abs() < 1e-3);
    }

    #[test]
    fn bsc_capacity() {
        let ps = (std::f64::consts::PI / 8.0).sin().powi(2);
        let (c, p) = classical_capacity_ba(&Transition::bsc(ps).unwrap(), 1e-10).unwrap();
        assert!((c - (1.0 - binary_entropy(ps))).abs() < 1e-8);
        assert!((c - 0.3991).abs() < 1e-4);
        assert!((p.get(0) - 0.5).abs() < 1e-6);
    }

    #[test]
    fn noiseless_capacity() {
        let (c, p) = classical_capacity_ba(&Transition::identity(2), 1e-12).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
        assert!((p.get(0) - 0.5).abs() < 1e-12);
        let (c4, _) = classical_capacity_ba(&Transition::identity(4), 1e-12).unwrap();
        assert!((c4 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn povm_induced_channels_of_bb84() {
        let ch = builtin("bb84_p2p", &[]).unwrap();
        let z = ch.induced_classical_channel(&Povm::computational(2)).unwrap();
        let (cz, _) = classical_capacity_ba(&z, 1e-10).unwrap();
        assert!((cz - 0.3219).abs() < 1e-3);
        let b = ch.induced_classical_channel(&Povm::bb84_aligned()).unwrap();
        let (cb, _) = classical_capacity_ba(&b, 1e-10).unwrap();
        assert!((cb - 0.3991).abs() < 1e-3);
    }

    #[test]
    fn holevo_capacity_bb84() {
        let ch = builtin("bb84_p2p", &[]).unwrap();
        let (c, p) = hsw_capacity(&ch, 21).unwrap();
        let want = binary_entropy((std::f64::consts::PI / 8.0).cos().powi(2));
        assert!((c - want).abs() < 1e-9);
        assert!((p.get(0) - 0.5).abs() < 1e-4);
    }

    #[test]
    fn identical_outputs_have_zero_capacity() {
        let rho = DensityMatrix::diagonal(&[0.3, 0.7]).unwrap();
        let ch = CqChannel::single_input(vec![rho.clone(), rho], "B").unwrap();
        assert!(hsw_capacity(&ch, 11).unwrap().0.abs() < 1e-12);
    }

    #[test]
    fn embedded_classical_channel_matches_ba() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..3 {
            let q = random_channel(&mut rng, &[3], &[3], 3);
            let t = q.induced_classical_channel(&Povm::computational(3)).unwrap();
            let diag = CqChannel::from_transition(&t).unwrap();
            let (cba, _) = classical_capacity_ba(&t, 1e-10).unwrap();
            let (chsw, _) = hsw_capacity(&diag, 21).unwrap();
            assert!((cba - chsw).abs() < 1e-4, "{cba} vs {chsw}");
        }
    }

    #[test]
    fn capacity_monotone_in_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let ch = random_channel(&mut rng, &[3], &[2], 1);
        let (c5, _) = hsw_capacity(&ch, 5).unwrap();
        let (c41, _) = hsw_capacity(&ch, 41).unwrap();
        assert!(c41 >= c5 - 1e-9);
    }
}
