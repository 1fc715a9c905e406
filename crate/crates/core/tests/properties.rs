use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qnetcap::entropic::{holevo_information, von_neumann_entropy};
use qnetcap::qstate::DensityMatrix;
use qnetcap::random::{random_channel, random_cq_state, random_density_matrix_dims, random_prob_dist};

const TOL: f64 = 1e-9;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn strong_subadditivity(seed in any::<u64>(), pure in any::<bool>()) {
        let st = random_cq_state(&mut rng(seed), &[2, 3], &[2, 2], pure);
        let cmi = st.conditional_mutual_information(&["A0"], &["B0", "B1"], &["A1"]).unwrap();
        prop_assert!(cmi >= -TOL);
        let h = |s: &[&str]| st.entropy(s).unwrap();
        let q = h(&["B0", "A1"]) + h(&["A1", "B1"]) - h(&["B0", "A1", "B1"]) - h(&["A1"]);
        prop_assert!(q >= -TOL);
    }

    #[test]
    fn chain_rule(seed in any::<u64>()) {
        let st = random_cq_state(&mut rng(seed), &[2, 2, 3], &[2], false);
        let whole = st.mutual_information(&["A0", "A1", "A2"], &["B0"]).unwrap();
        let parts = st.mutual_information(&["A0"], &["B0"]).unwrap()
            + st.conditional_mutual_information(&["A1"], &["B0"], &["A0"]).unwrap()
            + st.conditional_mutual_information(&["A2"], &["B0"], &["A0", "A1"]).unwrap();
        prop_assert!((whole - parts).abs() <= TOL);
    }

    #[test]
    fn entropy_is_concave(seed in any::<u64>(), t in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let a = random_density_matrix_dims(&mut r, vec![3], 2);
        let b = random_density_matrix_dims(&mut r, vec![3], 3);
        let mix = DensityMatrix::mixture(&[(t, &a), (1.0 - t, &b)]).unwrap();
        let lower = t * von_neumann_entropy(&a) + (1.0 - t) * von_neumann_entropy(&b);
        prop_assert!(von_neumann_entropy(&mix) >= lower - TOL);
    }

    #[test]
    fn partial_trace_composes(seed in any::<u64>()) {
        let rho = random_density_matrix_dims(&mut rng(seed), vec![2, 3, 2], 4);
        let direct = rho.partial_trace(&[0]).unwrap();
        let staged = rho.partial_trace(&[0, 1]).unwrap().partial_trace(&[0]).unwrap();
        prop_assert!(direct.trace_distance(&staged).unwrap() <= 1e-12);
        let again = direct.partial_trace(&[0]).unwrap();
        prop_assert!(direct.trace_distance(&again).unwrap() <= 1e-12);
    }

    #[test]
    fn trace_distance_is_a_metric(seed in any::<u64>()) {
        let mut r = rng(seed);
        let [a, b, c] = [1, 2, 4].map(|k| random_density_matrix_dims(&mut r, vec![4], k));
        let ab = a.trace_distance(&b).unwrap();
        let bc = b.trace_distance(&c).unwrap();
        let ac = a.trace_distance(&c).unwrap();
        prop_assert!(ac <= ab + bc + 1e-12);
        prop_assert!((0.0..=2.0 + 1e-12).contains(&ab));
        prop_assert!((ab - b.trace_distance(&a).unwrap()).abs() <= 1e-12);
    }

    #[test]
    fn holevo_information_bounds(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ch = random_channel(&mut r, &[3], &[2], 2);
        let p = random_prob_dist(&mut r, 3);
        let chi = holevo_information(&ch, &p).unwrap();
        prop_assert!(chi >= -TOL);
        prop_assert!(chi <= 1.0 + TOL);
    }
}
