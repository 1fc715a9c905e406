//! Multiple access regions.

use rayon::prelude::*;

use crate::channels::CqChannel;
use crate::entropic::{CqEntry, LabeledCqState, ProbDist, Register};
use crate::error::Result;
use crate::regions::{HalfspaceRegion, RegionUnion};

use super::dist::{simplex_grid, InputDist};
use super::{info, require_inputs};

/// `Σ p1(x1) p2(x2) |x1 x2⟩⟨x1 x2| ⊗ ρ_{x1,x2}` with registers `X1`, `X2`.
pub fn mac_state(ch: &CqChannel, p1: &ProbDist, p2: &ProbDist) -> Result<LabeledCqState> {
    input_state(ch, &InputDist::product(p1.clone(), p2.clone()))
}

/// Registers `Q`, `X1`, `X2` under a time-shared product law.
pub fn input_state(ch: &CqChannel, d: &InputDist) -> Result<LabeledCqState> {
    require_inputs(ch, 2)?;
    d.validate(ch)?;
    let (n1, n2) = (ch.alphabet_size(0), ch.alphabet_size(1));
    let mut entries = Vec::new();
    for q in 0..d.q.len() {
        for x1 in 0..n1 {
            for x2 in 0..n2 {
                entries.push(CqEntry {
                    symbols: vec![q, x1, x2],
                    prob: d.q.get(q) * d.x1[q].get(x1) * d.x2[q].get(x2),
                    state: ch.output(&[x1, x2]).clone(),
                });
            }
        }
    }
    LabeledCqState::new(
        vec![
            Register::new("Q", d.q.len()),
            Register::new("X1", n1),
            Register::new("X2", n2),
        ],
        ch.output_names().to_vec(),
        entries,
    )
}

fn pentagon(i1: f64, i2: f64, i12: f64) -> Result<HalfspaceRegion> {
    HalfspaceRegion::from_rows(
        &["R1", "R2"],
        &[(&[1.0, 0.0], i1), (&[0.0, 1.0], i2), (&[1.0, 1.0], i12)],
    )
}

/// `{R1 ≤ I(X1;B|X2), R2 ≤ I(X2;B|X1), R1+R2 ≤ I(X1X2;B)}` where `B` is
/// the channel's full output.
pub fn mac_region(ch: &CqChannel, p1: &ProbDist, p2: &ProbDist) -> Result<HalfspaceRegion> {
    mac_region_q(ch, &InputDist::product(p1.clone(), p2.clone()))
}

/// The pentagon with every quantity conditioned on `Q`.
pub fn mac_region_q(ch: &CqChannel, d: &InputDist) -> Result<HalfspaceRegion> {
    let st = input_state(ch, d)?;
    let b = ch.output_name_refs();
    pentagon(
        info(&st, &["X1"], &b, &["X2", "Q"])?,
        info(&st, &["X2"], &b, &["X1", "Q"])?,
        info(&st, &["X1", "X2"], &b, &["Q"])?,
    )
}

/// Pentagons over the product grid of input laws, `resolution` points per
/// 1-simplex.
pub fn mac_region_union(ch: &CqChannel, resolution: usize) -> Result<RegionUnion> {
    require_inputs(ch, 2)?;
    let g1 = simplex_grid(ch.alphabet_size(0), resolution);
    let g2 = simplex_grid(ch.alphabet_size(1), resolution);
    let pairs: Vec<(&ProbDist, &ProbDist)> =
        g1.iter().flat_map(|a| g2.iter().map(move |b| (a, b))).collect();
    let members = pairs
        .par_iter()
        .map(|(a, b)| mac_region(ch, a, b))
        .collect::<Result<Vec<_>>>()?;
    RegionUnion::new(members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::builtin;
    use crate::entropic::binary_entropy;
    use crate::random::{random_channel, random_prob_dist};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn h8() -> f64 {
        binary_entropy((std::f64::consts::PI / 8.0).cos().powi(2))
    }

    #[test]
    fn qmac_uniform_pentagon() {
        let ch = builtin("bb84_qmac", &[]).unwrap();
        let r = mac_region(&ch, &ProbDist::uniform(2), &ProbDist::uniform(2)).unwrap();
        let b: Vec<f64> = r.inequalities().iter().map(|q| q.bound).collect();
        assert!((b[0] - h8()).abs() < 1e-12);
        assert!((b[1] - h8()).abs() < 1e-12);
        assert!((b[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn point_mass_degenerates() {
        let ch = builtin("bb84_qmac", &[]).unwrap();
        let r = mac_region(&ch, &ProbDist::uniform(2), &ProbDist::point_mass(2, 0)).unwrap();
        assert!(r.inequalities()[1].bound.abs() < 1e-12);
        assert!(!r.contains(&[0.0, 1e-3], 1e-9));
    }

    #[test]
    fn corner_on_sum_facet() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10 {
            let ch = random_channel(&mut rng, &[2, 3], &[3], 2);
            let p1 = random_prob_dist(&mut rng, 2);
            let p2 = random_prob_dist(&mut rng, 3);
            let st = mac_state(&ch, &p1, &p2).unwrap();
            let i1 = st.mutual_information(&["X1"], &["B"]).unwrap();
            let i2_1 = st.conditional_mutual_information(&["X2"], &["B"], &["X1"]).unwrap();
            let r = mac_region(&ch, &p1, &p2).unwrap();
            let sum = r.inequalities()[2].bound;
            assert!((i1 + i2_1 - sum).abs() < 1e-9);
            assert!(r.contains(&[i1, i2_1], 1e-9));
        }
    }

    #[test]
    fn union_contains_members_and_equals_uniform_pentagon() {
        let ch = builtin("bb84_qmac", &[]).unwrap();
        let u = mac_region_union(&ch, 11).unwrap();
        let uniform = mac_region(&ch, &ProbDist::uniform(2), &ProbDist::uniform(2)).unwrap();
        for m in u.members() {
            for p in m.boundary_sample(9).unwrap() {
                assert!(u.contains(&[p.r1, p.r2], 1e-12));
                assert!(uniform.contains(&[p.r1, p.r2], 1e-9));
            }
        }
    }

    #[test]
    fn time_sharing_with_identical_rows_matches_product() {
        let ch = builtin("bb84_qmac", &[]).unwrap();
        let p1 = ProbDist::new(vec![0.3, 0.7]).unwrap();
        let p2 = ProbDist::new(vec![0.6, 0.4]).unwrap();
        let d = InputDist {
            q: ProbDist::uniform(2),
            x1: vec![p1.clone(), p1.clone()],
            x2: vec![p2.clone(), p2.clone()],
        };
        let a = mac_region_q(&ch, &d).unwrap();
        let b = mac_region(&ch, &p1, &p2).unwrap();
        for (x, y) in a.inequalities().iter().zip(b.inequalities()) {
            assert!((x.bound - y.bound).abs() < 1e-10);
        }
    }
}
