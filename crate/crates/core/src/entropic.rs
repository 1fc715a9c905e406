//! Entropies and information functionals, all in bits.
//!
//! The workhorse is [`LabeledCqState`], a table pairing tuples of classical
//! symbols with conditional density matrices. Entropies of any subset of
//! classical registers and quantum labels are evaluated by embedding the
//! classical part as orthogonal diagonal blocks; subsets without quantum
//! labels are handled by marginalizing the probability table directly.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::channels::CqChannel;
use crate::error::{Error, Result};
use crate::qstate::{eigh, CMatrix, DensityMatrix};

/// Eigenvalues at or below this contribute nothing to `-λ log λ`.
pub const EIG_CUTOFF: f64 = 1e-12;

/// Tolerance on the total mass of a probability vector.
pub const PROB_TOL: f64 = 1e-10;

fn xlogx(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// A probability vector over a finite alphabet indexed `0..len`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ProbDist {
    weights: Vec<f64>,
}

impl TryFrom<Vec<f64>> for ProbDist {
    type Error = Error;
    fn try_from(w: Vec<f64>) -> Result<Self> {
        ProbDist::new(w)
    }
}

impl From<ProbDist> for Vec<f64> {
    fn from(p: ProbDist) -> Self {
        p.weights
    }
}

impl ProbDist {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidDistribution("empty alphabet".into()));
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidDistribution(format!("weight {w} is invalid")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > PROB_TOL {
            return Err(Error::InvalidDistribution(format!(
                "weights sum to {total}"
            )));
        }
        Ok(ProbDist { weights })
    }

    /// Normalizes nonnegative weights with positive total.
    pub fn normalized(weights: Vec<f64>) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) {
            return Err(Error::InvalidDistribution(
                "weights have no positive mass".into(),
            ));
        }
        Self::new(weights.into_iter().map(|w| w / total).collect())
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform distribution needs a nonempty alphabet");
        ProbDist {
            weights: vec![1.0 / n as f64; n],
        }
    }

    pub fn point_mass(n: usize, i: usize) -> Self {
        assert!(i < n, "point mass index out of range");
        let mut weights = vec![0.0; n];
        weights[i] = 1.0;
        ProbDist { weights }
    }

    /// `(p, 1 - p)`.
    pub fn bernoulli(p0: f64) -> Result<Self> {
        Self::new(vec![p0, 1.0 - p0])
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.weights[i]
    }
}

pub fn shannon_entropy(p: &ProbDist) -> f64 {
    -p.weights.iter().map(|&w| xlogx(w)).sum::<f64>()
}

/// `H₂(p)`; arguments are clamped into `[0, 1]`.
pub fn binary_entropy(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    -(xlogx(p) + xlogx(1.0 - p))
}

/// Entropy of a (possibly unnormalized) Hermitian PSD block.
fn block_entropy(m: &CMatrix) -> Result<f64> {
    let spec = eigh(m)?;
    Ok(-spec
        .eigenvalues
        .iter()
        .filter(|&&l| l > EIG_CUTOFF)
        .map(|&l| xlogx(l))
        .sum::<f64>())
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    -rho.spectrum()
        .eigenvalues
        .iter()
        .filter(|&&l| l > EIG_CUTOFF)
        .map(|&l| xlogx(l))
        .sum::<f64>()
}

/// Entropy of a thermal state with mean photon number `n`:
/// `g(N) = (N+1) log(N+1) - N log N`.
pub fn g_thermal(n: f64) -> Result<f64> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "mean photon number must be finite and nonnegative, got {n}"
        )));
    }
    Ok(g_unchecked(n))
}

pub(crate) fn g_unchecked(n: f64) -> f64 {
    let n = n.max(0.0);
    xlogx(n + 1.0) - xlogx(n)
}

/// A named classical register with alphabet `0..size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register {
    pub name: String,
    pub size: usize,
}

impl Register {
    pub fn new(name: impl Into<String>, size: usize) -> Self {
        Register {
            name: name.into(),
            size,
        }
    }
}

/// One row of a classical-quantum table.
#[derive(Debug, Clone)]
pub struct CqEntry {
    pub symbols: Vec<usize>,
    pub prob: f64,
    pub state: DensityMatrix,
}

/// `Σ p(s) |s⟩⟨s| ⊗ ρ_s` over tuples `s` of classical symbols.
#[derive(Debug, Clone)]
pub struct LabeledCqState {
    registers: Vec<Register>,
    quantum: Vec<String>,
    qdims: Vec<usize>,
    entries: Vec<CqEntry>,
}

enum Label {
    Classical(usize),
    Quantum(usize),
}

impl LabeledCqState {
    /// Zero-probability rows are dropped.
    pub fn new(
        registers: Vec<Register>,
        quantum: Vec<String>,
        entries: Vec<CqEntry>,
    ) -> Result<Self> {
        let mut names: Vec<&str> = registers.iter().map(|r| r.name.as_str()).collect();
        names.extend(quantum.iter().map(String::as_str));
        let mut sorted = names.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!("duplicate label `{}`", w[0])));
        }
        let first = entries
            .first()
            .ok_or_else(|| Error::InvalidDistribution("empty cq table".into()))?;
        let qdims = first.state.dims().to_vec();
        if qdims.len() != quantum.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} quantum labels but conditional states have {} subsystems",
                quantum.len(),
                qdims.len()
            )));
        }
        let mut total = 0.0;
        for e in &entries {
            if e.symbols.len() != registers.len() {
                return Err(Error::InvalidArgument(format!(
                    "symbol tuple {:?} does not match {} registers",
                    e.symbols,
                    registers.len()
                )));
            }
            for (s, r) in e.symbols.iter().zip(&registers) {
                if *s >= r.size {
                    return Err(Error::InvalidArgument(format!(
                        "symbol {s} outside register {} of size {}",
                        r.name, r.size
                    )));
                }
            }
            if e.state.dims() != qdims.as_slice() {
                return Err(Error::DimensionMismatch(format!(
                    "conditional state dims {:?} differ from {:?}",
                    e.state.dims(),
                    qdims
                )));
            }
            if !(e.prob >= 0.0) {
                return Err(Error::InvalidDistribution(format!(
                    "negative probability {}",
                    e.prob
                )));
            }
            total += e.prob;
        }
        if (total - 1.0).abs() > PROB_TOL {
            return Err(Error::InvalidDistribution(format!(
                "table probabilities sum to {total}"
            )));
        }
        let entries = entries.into_iter().filter(|e| e.prob > 0.0).collect();
        Ok(LabeledCqState {
            registers,
            quantum,
            qdims,
            entries,
        })
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn quantum_names(&self) -> &[String] {
        &self.quantum
    }

    pub fn entries(&self) -> &[CqEntry] {
        &self.entries
    }

    fn resolve(&self, name: &str) -> Result<Label> {
        if let Some(i) = self.registers.iter().position(|r| r.name == name) {
            return Ok(Label::Classical(i));
        }
        if let Some(i) = self.quantum.iter().position(|q| q == name) {
            return Ok(Label::Quantum(i));
        }
        Err(Error::UnknownName(name.to_string()))
    }

    fn split(&self, names: &[&str]) -> Result<(Vec<usize>, Vec<usize>)> {
        let mut cls = Vec::new();
        let mut qs = Vec::new();
        for n in names {
            match self.resolve(n)? {
                Label::Classical(i) => cls.push(i),
                Label::Quantum(i) => qs.push(i),
            }
        }
        cls.sort_unstable();
        cls.dedup();
        qs.sort_unstable();
        qs.dedup();
        Ok((cls, qs))
    }

    /// Joint entropy `H(S)` of any set of register names and quantum labels.
    pub fn entropy(&self, names: &[&str]) -> Result<f64> {
        let (cls, qs) = self.split(names)?;
        self.entropy_of(&cls, &qs)
    }

    fn entropy_of(&self, cls: &[usize], qs: &[usize]) -> Result<f64> {
        if cls.is_empty() && qs.is_empty() {
            return Ok(0.0);
        }
        if qs.is_empty() {
            let mut marg: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
            for e in &self.entries {
                let key: Vec<usize> = cls.iter().map(|&i| e.symbols[i]).collect();
                *marg.entry(key).or_insert(0.0) += e.prob;
            }
            return Ok(-marg.values().map(|&p| xlogx(p)).sum::<f64>());
        }
        let mut blocks: BTreeMap<Vec<usize>, CMatrix> = BTreeMap::new();
        for e in &self.entries {
            let key: Vec<usize> = cls.iter().map(|&i| e.symbols[i]).collect();
            let reduced = if qs.len() == self.qdims.len() {
                e.state.clone()
            } else {
                e.state.partial_trace(qs)?
            };
            let scaled = reduced.matrix() * crate::qstate::c(e.prob, 0.0);
            match blocks.get_mut(&key) {
                Some(acc) => *acc += scaled,
                None => {
                    blocks.insert(key, scaled);
                }
            }
        }
        let mut h = 0.0;
        for m in blocks.values() {
            h += block_entropy(m)?;
        }
        Ok(h)
    }

    /// `I(A;B|C)` with `A`, `C` classical registers and `B` any labels.
    pub fn conditional_mutual_information(
        &self,
        a: &[&str],
        b: &[&str],
        cond: &[&str],
    ) -> Result<f64> {
        for (set, what) in [(a, "first argument"), (cond, "conditioning set")] {
            for n in set {
                if let Label::Quantum(_) = self.resolve(n)? {
                    return Err(Error::InvalidArgument(format!(
                        "quantum label `{n}` not allowed in {what}"
                    )));
                }
            }
        }
        for n in b {
            self.resolve(n)?;
        }
        for (x, y) in [(a, b), (a, cond), (b, cond)] {
            if let Some(n) = x.iter().find(|n| y.contains(n)) {
                return Err(Error::OverlappingSets(n.to_string()));
            }
        }
        fn join<'a>(sets: &[&[&'a str]]) -> Vec<&'a str> {
            sets.iter().flat_map(|s| s.iter().copied()).collect()
        }
        let h_ac = self.entropy(&join(&[a, cond]))?;
        let h_bc = self.entropy(&join(&[b, cond]))?;
        let h_abc = self.entropy(&join(&[a, b, cond]))?;
        let h_c = self.entropy(cond)?;
        Ok(h_ac + h_bc - h_abc - h_c)
    }

    pub fn mutual_information(&self, a: &[&str], b: &[&str]) -> Result<f64> {
        self.conditional_mutual_information(a, b, &[])
    }

    /// `H(A|C) = H(AC) - H(C)`.
    pub fn conditional_entropy(&self, a: &[&str], cond: &[&str]) -> Result<f64> {
        let mut ac: Vec<&str> = a.to_vec();
        ac.extend_from_slice(cond);
        Ok(self.entropy(&ac)? - self.entropy(cond)?)
    }
}

pub fn conditional_mutual_information(
    state: &LabeledCqState,
    a: &[&str],
    b: &[&str],
    cond: &[&str],
) -> Result<f64> {
    state.conditional_mutual_information(a, b, cond)
}

/// `I(X;B)` of `Σ p(x)|x⟩⟨x| ⊗ ρ_x` for a single-input channel.
pub fn holevo_information(ch: &CqChannel, p: &ProbDist) -> Result<f64> {
    if ch.num_inputs() != 1 {
        return Err(Error::InvalidArgument(format!(
            "Holevo information needs a single-input channel, got {} inputs",
            ch.num_inputs()
        )));
    }
    if p.len() != ch.alphabet_size(0) {
        return Err(Error::DimensionMismatch(format!(
            "distribution over {} symbols for alphabet of size {}",
            p.len(),
            ch.alphabet_size(0)
        )));
    }
    let entries = (0..p.len())
        .map(|x| CqEntry {
            symbols: vec![x],
            prob: p.get(x),
            state: ch.output(&[x]).clone(),
        })
        .collect();
    let state = LabeledCqState::new(
        vec![Register::new("X", p.len())],
        ch.output_names().to_vec(),
        entries,
    )?;
    let names: Vec<&str> = ch.output_names().iter().map(String::as_str).collect();
    state.mutual_information(&["X"], &names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::builtin;
    use crate::random::{random_cq_state, random_density_matrix};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const H_COS2_PI8: f64 = 0.600_876_036_692_856_2;

    #[test]
    fn shannon_examples() {
        assert_eq!(shannon_entropy(&ProbDist::uniform(2)), 1.0);
        assert_eq!(shannon_entropy(&ProbDist::point_mass(2, 0)), 0.0);
        let p = ProbDist::new(vec![0.2, 0.8]).unwrap();
        let direct = -(0.2f64 * 0.2f64.log2() + 0.8 * 0.8f64.log2());
        assert!((shannon_entropy(&p) - direct).abs() < 1e-15);
        assert!((shannon_entropy(&p) - 0.721_928_094_887_362_3).abs() < 1e-12);
    }

    #[test]
    fn binary_entropy_examples() {
        assert_eq!(binary_entropy(0.5), 1.0);
        assert_eq!(binary_entropy(0.0), 0.0);
        let c2 = (std::f64::consts::PI / 8.0).cos().powi(2);
        assert!((binary_entropy(c2) - H_COS2_PI8).abs() < 1e-12);
        assert!((binary_entropy(c2) - 0.6009).abs() < 1e-4);
    }

    #[test]
    fn bad_distributions_rejected() {
        assert!(ProbDist::new(vec![]).is_err());
        assert!(ProbDist::new(vec![0.5, 0.6]).is_err());
        assert!(ProbDist::new(vec![1.5, -0.5]).is_err());
    }

    #[test]
    fn von_neumann_examples() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let pure = DensityMatrix::pure_real(&[s, -s]).unwrap();
        assert!(von_neumann_entropy(&pure).abs() < 1e-12);
        let half = DensityMatrix::maximally_mixed(vec![2]).unwrap();
        assert!((von_neumann_entropy(&half) - 1.0).abs() < 1e-12);
        let plus = DensityMatrix::pure_real(&[s, s]).unwrap();
        let avg = DensityMatrix::mixture(&[
            (0.5, &DensityMatrix::basis(2, 0).unwrap()),
            (0.5, &plus),
        ])
        .unwrap();
        assert!((von_neumann_entropy(&avg) - H_COS2_PI8).abs() < 1e-12);
    }

    #[test]
    fn tensor_square_doubles_entropy() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            let rho = random_density_matrix(&mut rng, 3, 3);
            let h = von_neumann_entropy(&rho);
            let h2 = von_neumann_entropy(&rho.tensor(&rho));
            assert!((h2 - 2.0 * h).abs() < 1e-9);
        }
    }

    #[test]
    fn bb84_holevo() {
        let ch = builtin("bb84_p2p", &[]).unwrap();
        let v = holevo_information(&ch, &ProbDist::uniform(2)).unwrap();
        assert!((v - H_COS2_PI8).abs() < 1e-12);
        let v0 = holevo_information(&ch, &ProbDist::point_mass(2, 1)).unwrap();
        assert!(v0.abs() < 1e-12);
    }

    #[test]
    fn qmac_informations() {
        let ch = builtin("bb84_qmac", &[]).unwrap();
        let st = crate::network::mac_state(&ch, &ProbDist::uniform(2), &ProbDist::uniform(2))
            .unwrap();
        let i1 = st.conditional_mutual_information(&["X1"], &["B"], &["X2"]).unwrap();
        let i12 = st.mutual_information(&["X1", "X2"], &["B"]).unwrap();
        assert!((i1 - H_COS2_PI8).abs() < 1e-12);
        assert!((i12 - 1.0).abs() < 1e-12);
        // Pure conditionals.
        assert!(st.conditional_entropy(&["B"], &["X1", "X2"]).unwrap().abs() < 1e-12);
    }

    #[test]
    fn cmi_argument_errors() {
        let ch = builtin("bb84_qmac", &[]).unwrap();
        let st = crate::network::mac_state(&ch, &ProbDist::uniform(2), &ProbDist::uniform(2))
            .unwrap();
        assert!(matches!(
            st.conditional_mutual_information(&["Y"], &["B"], &[]),
            Err(Error::UnknownName(_))
        ));
        assert!(matches!(
            st.conditional_mutual_information(&["X1"], &["B"], &["X1"]),
            Err(Error::OverlappingSets(_))
        ));
        assert!(st
            .conditional_mutual_information(&["B"], &["X1"], &[])
            .is_err());
        assert!(st
            .conditional_mutual_information(&["X1"], &["X2"], &["B"])
            .is_err());
    }

    #[test]
    fn classical_labels_in_b() {
        // I(X1;X2) = 0 for a product input distribution.
        let ch = builtin("bb84_qmac", &[]).unwrap();
        let st = crate::network::mac_state(&ch, &ProbDist::uniform(2), &ProbDist::uniform(2))
            .unwrap();
        assert!(st.mutual_information(&["X1"], &["X2"]).unwrap().abs() < 1e-12);
        // I(X1; X2 B) = I(X1;B|X2) when X1 ⟂ X2.
        let a = st.mutual_information(&["X1"], &["X2", "B"]).unwrap();
        let b = st.conditional_mutual_information(&["X1"], &["B"], &["X2"]).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn embedded_classical_channel_matches_shannon() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        use rand::Rng;
        let rows: Vec<Vec<f64>> = (0..3)
            .map(|_| {
                let w: Vec<f64> = (0..3).map(|_| rng.random::<f64>() + 0.05).collect();
                let t: f64 = w.iter().sum();
                w.into_iter().map(|x| x / t).collect()
            })
            .collect();
        let p = ProbDist::new(vec![0.2, 0.5, 0.3]).unwrap();
        let outputs: Vec<DensityMatrix> = rows
            .iter()
            .map(|r| DensityMatrix::diagonal(r).unwrap())
            .collect();
        let ch = CqChannel::single_input(outputs, "B").unwrap();
        let q = holevo_information(&ch, &p).unwrap();
        // Classical I(X;Y) = H(Y) - H(Y|X).
        let py: Vec<f64> = (0..3)
            .map(|y| (0..3).map(|x| p.get(x) * rows[x][y]).sum())
            .collect();
        let hy = -py.iter().map(|&v| v * v.log2()).sum::<f64>();
        let hyx: f64 = (0..3)
            .map(|x| -p.get(x) * rows[x].iter().map(|&v| v * v.log2()).sum::<f64>())
            .sum();
        assert!((q - (hy - hyx)).abs() < 1e-10);
    }

    #[test]
    fn pure_conditionals_have_zero_conditional_entropy() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let st = random_cq_state(&mut rng, &[2, 3], &[2], true);
            let h = st.conditional_entropy(&["B0"], &["A0", "A1"]).unwrap();
            assert!(h.abs() < 1e-9);
        }
    }

    #[test]
    fn g_thermal_values() {
        assert_eq!(g_thermal(0.0).unwrap(), 0.0);
        assert_eq!(g_thermal(1.0).unwrap(), 2.0);
        assert!(g_thermal(-0.1).is_err());
        let mut prev = 0.0;
        for k in 1..50 {
            let v = g_thermal(k as f64 * 0.3).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn g_thermal_matches_truncated_thermal_state() {
        // Truncation oracle: spectrum (1/(N+1)) (N/(N+1))^n, n < 60, renormalized
        // only by the tail mass which is below 1e-6 in entropy for these N.
        for &n in &[0.1f64, 0.5, 1.0] {
            let r = n / (n + 1.0);
            let probs: Vec<f64> = (0..60).map(|k| r.powi(k) / (n + 1.0)).collect();
            let rho = DensityMatrix::diagonal(
                &probs.iter().map(|p| p / probs.iter().sum::<f64>()).collect::<Vec<_>>(),
            )
            .unwrap();
            let h = von_neumann_entropy(&rho);
            assert!((h - g_thermal(n).unwrap()).abs() < 1e-6, "N = {n}");
        }
        // N = 5 needs a longer series for the same accuracy.
        let n: f64 = 5.0;
        let r = n / (n + 1.0);
        let h: f64 = -(0..400)
            .map(|k| {
                let p = r.powi(k) / (n + 1.0);
                p * p.log2()
            })
            .sum::<f64>();
        assert!((h - g_thermal(n).unwrap()).abs() < 1e-6);
    }
}
