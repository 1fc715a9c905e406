//! Classical-quantum channels, POVMs and the induced classical channels.
//!
//! Outputs are stored row-major over the input tuple, so for a two-input
//! channel the output for `(x1, x2)` sits at `x1 * |X2| + x2`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::entropic::ProbDist;
use crate::error::{Error, Result};
use crate::qstate::{
    c, hermitian_deviation, matrix_to_pairs, outer, pairs_to_matrix, trace_product, CMatrix,
    CVector, DensityMatrix, STATE_TOL,
};

/// Completeness tolerance for POVMs.
pub const POVM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct CqChannel {
    alphabets: Vec<Vec<String>>,
    output_names: Vec<String>,
    dims: Vec<usize>,
    outputs: Vec<DensityMatrix>,
}

fn numeric_alphabet(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

impl CqChannel {
    /// `outputs` are listed row-major over `alphabets`; each output label
    /// names one tensor factor of the output states.
    pub fn new(
        alphabets: Vec<Vec<String>>,
        output_names: Vec<String>,
        outputs: Vec<DensityMatrix>,
    ) -> Result<Self> {
        if alphabets.is_empty() || alphabets.len() > 2 {
            return Err(Error::Schema(format!(
                "channels take 1 or 2 inputs, got {}",
                alphabets.len()
            )));
        }
        if let Some(i) = alphabets.iter().position(|a| a.is_empty()) {
            return Err(Error::Schema(format!("input alphabet {i} is empty")));
        }
        for a in &alphabets {
            let mut s: Vec<&String> = a.iter().collect();
            s.sort();
            if s.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::Schema(format!("repeated symbol in alphabet {a:?}")));
            }
        }
        if output_names.is_empty() || output_names.len() > 2 {
            return Err(Error::Schema(format!(
                "channels have 1 or 2 outputs, got {}",
                output_names.len()
            )));
        }
        if output_names.len() == 2 && output_names[0] == output_names[1] {
            return Err(Error::Schema("output labels must differ".into()));
        }
        let count: usize = alphabets.iter().map(Vec::len).product();
        if outputs.len() != count {
            return Err(Error::Schema(format!(
                "{} input tuples but {} outputs",
                count,
                outputs.len()
            )));
        }
        let dims = outputs[0].dims().to_vec();
        if dims.len() != output_names.len() {
            return Err(Error::Schema(format!(
                "outputs have {} subsystems but {} output labels",
                dims.len(),
                output_names.len()
            )));
        }
        let ch = CqChannel {
            alphabets,
            output_names,
            dims,
            outputs,
        };
        for (i, o) in ch.outputs.iter().enumerate() {
            if o.dims() != ch.dims.as_slice() {
                return Err(Error::InvalidOutput {
                    tuple: ch.tuple_label(&ch.tuple_of(i)),
                    reason: format!("dims {:?} differ from {:?}", o.dims(), ch.dims),
                });
            }
        }
        Ok(ch)
    }

    /// Alphabets `0..n` named by their indices.
    pub fn with_numeric_alphabets(
        sizes: &[usize],
        output_names: Vec<String>,
        outputs: Vec<DensityMatrix>,
    ) -> Result<Self> {
        Self::new(
            sizes.iter().map(|&n| numeric_alphabet(n)).collect(),
            output_names,
            outputs,
        )
    }

    pub fn single_input(outputs: Vec<DensityMatrix>, output_name: &str) -> Result<Self> {
        let n = outputs.len();
        Self::with_numeric_alphabets(&[n], vec![output_name.to_string()], outputs)
    }

    /// Classical channel embedded as diagonal output states.
    pub fn from_transition(t: &Transition) -> Result<Self> {
        let outputs = (0..t.num_inputs())
            .map(|x| DensityMatrix::diagonal(t.row(x)))
            .collect::<Result<Vec<_>>>()?;
        Self::single_input(outputs, "B")
    }

    pub fn num_inputs(&self) -> usize {
        self.alphabets.len()
    }

    pub fn alphabets(&self) -> &[Vec<String>] {
        &self.alphabets
    }

    pub fn alphabet_size(&self, input: usize) -> usize {
        self.alphabets[input].len()
    }

    pub fn alphabet_sizes(&self) -> Vec<usize> {
        self.alphabets.iter().map(Vec::len).collect()
    }

    pub fn output_names(&self) -> &[String] {
        &self.output_names
    }

    pub fn output_name_refs(&self) -> Vec<&str> {
        self.output_names.iter().map(String::as_str).collect()
    }

    /// Subsystem dimensions of every output state.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn output_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn outputs(&self) -> &[DensityMatrix] {
        &self.outputs
    }

    pub fn index_of(&self, tuple: &[usize]) -> usize {
        assert_eq!(tuple.len(), self.num_inputs(), "input tuple arity");
        tuple
            .iter()
            .zip(&self.alphabets)
            .fold(0, |acc, (&x, a)| {
                assert!(x < a.len(), "input symbol out of range");
                acc * a.len() + x
            })
    }

    pub fn tuple_of(&self, mut index: usize) -> Vec<usize> {
        let mut t = vec![0; self.num_inputs()];
        for (k, a) in self.alphabets.iter().enumerate().rev() {
            t[k] = index % a.len();
            index /= a.len();
        }
        t
    }

    /// Output state for an input tuple of symbol indices.
    pub fn output(&self, tuple: &[usize]) -> &DensityMatrix {
        &self.outputs[self.index_of(tuple)]
    }

    fn tuple_label(&self, tuple: &[usize]) -> String {
        tuple
            .iter()
            .zip(&self.alphabets)
            .map(|(&x, a)| a[x].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn to_json(&self) -> ChannelJson {
        let outputs = (0..self.outputs.len())
            .map(|i| {
                (
                    self.tuple_label(&self.tuple_of(i)),
                    MatrixEntry::Pairs(matrix_to_pairs(self.outputs[i].matrix())),
                )
            })
            .collect();
        ChannelJson {
            alphabets: self.alphabets.clone(),
            dims: self.dims.clone(),
            output_names: Some(self.output_names.clone()),
            outputs,
        }
    }

    pub fn from_json(json: &ChannelJson) -> Result<Self> {
        if json.alphabets.is_empty() || json.alphabets.len() > 2 {
            return Err(Error::Schema(format!(
                "\"alphabets\" must list 1 or 2 alphabets, got {}",
                json.alphabets.len()
            )));
        }
        if json.dims.is_empty() || json.dims.contains(&0) {
            return Err(Error::Schema(format!("bad \"dims\" {:?}", json.dims)));
        }
        let output_names = match &json.output_names {
            Some(n) => n.clone(),
            None if json.dims.len() == 1 => vec!["B".to_string()],
            None => (1..=json.dims.len()).map(|i| format!("B{i}")).collect(),
        };
        let d: usize = json.dims.iter().product();
        let sizes: Vec<usize> = json.alphabets.iter().map(Vec::len).collect();
        let count: usize = sizes.iter().product();
        if json.outputs.len() != count {
            return Err(Error::Schema(format!(
                "expected {} output entries, found {}",
                count,
                json.outputs.len()
            )));
        }
        let mut outputs: Vec<Option<DensityMatrix>> = vec![None; count];
        for (key, entry) in &json.outputs {
            let symbols: Vec<&str> = key.split(',').map(str::trim).collect();
            if symbols.len() != json.alphabets.len() {
                return Err(Error::Schema(format!(
                    "output key \"{key}\" does not have {} symbols",
                    json.alphabets.len()
                )));
            }
            let mut idx = 0;
            for (s, a) in symbols.iter().zip(&json.alphabets) {
                let pos = a.iter().position(|x| x == s).ok_or_else(|| {
                    Error::Schema(format!("output key \"{key}\": unknown symbol \"{s}\""))
                })?;
                idx = idx * a.len() + pos;
            }
            let (pairs, dims) = match entry {
                MatrixEntry::Pairs(p) => (p, json.dims.clone()),
                MatrixEntry::Full(m) => (&m.entries, m.dims.clone()),
            };
            let dims_prod: usize = dims.iter().product();
            if dims != json.dims || dims_prod != d {
                return Err(Error::InvalidOutput {
                    tuple: key.clone(),
                    reason: format!("dims {dims:?} differ from {:?}", json.dims),
                });
            }
            let m = pairs_to_matrix(pairs, d).map_err(|e| Error::InvalidOutput {
                tuple: key.clone(),
                reason: e.to_string(),
            })?;
            let rho = DensityMatrix::new(m, dims).map_err(|e| Error::InvalidOutput {
                tuple: key.clone(),
                reason: e.to_string(),
            })?;
            if outputs[idx].replace(rho).is_some() {
                return Err(Error::Schema(format!("duplicate output key \"{key}\"")));
            }
        }
        let outputs = outputs
            .into_iter()
            .map(|o| o.expect("every tuple filled when counts match and keys are unique"))
            .collect();
        Self::new(json.alphabets.clone(), output_names, outputs)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("channel JSON serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: ChannelJson =
            serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_json(&json)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json_str(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json_string())?;
        Ok(())
    }

    fn label_indices(&self, keep: &[&str]) -> Result<Vec<usize>> {
        let mut idx = Vec::new();
        for k in keep {
            let i = self
                .output_names
                .iter()
                .position(|n| n == k)
                .ok_or_else(|| Error::UnknownName(k.to_string()))?;
            if idx.contains(&i) {
                return Err(Error::InvalidSubsystems(format!("label `{k}` listed twice")));
            }
            idx.push(i);
        }
        if idx.is_empty() {
            return Err(Error::InvalidSubsystems("no output labels kept".into()));
        }
        idx.sort_unstable();
        Ok(idx)
    }

    /// Channel to the kept output labels, tracing out the rest.
    pub fn marginal_output(&self, keep: &[&str]) -> Result<CqChannel> {
        let idx = self.label_indices(keep)?;
        let outputs = self
            .outputs
            .iter()
            .map(|o| o.partial_trace(&idx))
            .collect::<Result<Vec<_>>>()?;
        let names = idx.iter().map(|&i| self.output_names[i].clone()).collect();
        CqChannel::new(self.alphabets.clone(), names, outputs)
    }

    /// Averages a two-input channel over one input, leaving the other.
    pub fn averaged_channel(&self, average_over: usize, p: &ProbDist) -> Result<CqChannel> {
        if self.num_inputs() != 2 {
            return Err(Error::InvalidArgument(
                "averaging over an input needs a two-input channel".into(),
            ));
        }
        if average_over > 1 {
            return Err(Error::InvalidArgument(format!(
                "input index {average_over} out of range"
            )));
        }
        if p.len() != self.alphabet_size(average_over) {
            return Err(Error::DimensionMismatch(format!(
                "distribution over {} symbols for alphabet of size {}",
                p.len(),
                self.alphabet_size(average_over)
            )));
        }
        let keep = 1 - average_over;
        let mut outputs = Vec::with_capacity(self.alphabet_size(keep));
        for x in 0..self.alphabet_size(keep) {
            let parts: Vec<(f64, &DensityMatrix)> = (0..p.len())
                .map(|y| {
                    let mut t = [0, 0];
                    t[keep] = x;
                    t[average_over] = y;
                    (p.get(y), self.output(&t))
                })
                .collect();
            outputs.push(DensityMatrix::mixture(&parts)?);
        }
        CqChannel::new(
            vec![self.alphabets[keep].clone()],
            self.output_names.clone(),
            outputs,
        )
    }

    /// `Σ p₁(x₁)⋯ ρ_{x₁…}` for one distribution per input.
    pub fn average_state(&self, dists: &[&ProbDist]) -> Result<DensityMatrix> {
        if dists.len() != self.num_inputs() {
            return Err(Error::DimensionMismatch(format!(
                "{} distributions for {} inputs",
                dists.len(),
                self.num_inputs()
            )));
        }
        for (k, p) in dists.iter().enumerate() {
            if p.len() != self.alphabet_size(k) {
                return Err(Error::DimensionMismatch(format!(
                    "distribution {k} has {} symbols, alphabet has {}",
                    p.len(),
                    self.alphabet_size(k)
                )));
            }
        }
        let parts: Vec<(f64, &DensityMatrix)> = (0..self.outputs.len())
            .map(|i| {
                let t = self.tuple_of(i);
                let w: f64 = t.iter().zip(dists).map(|(&x, p)| p.get(x)).product();
                (w, &self.outputs[i])
            })
            .collect();
        DensityMatrix::mixture(&parts)
    }

    /// `p(y|x) = Tr[Λ_y ρ_x]` for a single-input channel.
    pub fn induced_classical_channel(&self, povm: &Povm) -> Result<Transition> {
        if self.num_inputs() != 1 {
            return Err(Error::InvalidArgument(
                "induced classical channel needs a single-input channel".into(),
            ));
        }
        if povm.dim() != self.output_dim() {
            return Err(Error::DimensionMismatch(format!(
                "POVM acts on dimension {}, outputs have dimension {}",
                povm.dim(),
                self.output_dim()
            )));
        }
        let rows = self
            .outputs
            .iter()
            .map(|rho| {
                povm.elements()
                    .iter()
                    .map(|e| trace_product(e, rho.matrix()).max(0.0))
                    .collect()
            })
            .collect();
        Transition::new(rows)
    }
}

pub fn marginal_output(ch: &CqChannel, keep: &[&str]) -> Result<CqChannel> {
    ch.marginal_output(keep)
}

pub fn averaged_channel(ch: &CqChannel, average_over: usize, p: &ProbDist) -> Result<CqChannel> {
    ch.averaged_channel(average_over, p)
}

pub fn induced_classical_channel(ch: &CqChannel, povm: &Povm) -> Result<Transition> {
    ch.induced_classical_channel(povm)
}

pub fn load_channel(json: &str) -> Result<CqChannel> {
    CqChannel::from_json_str(json)
}

/// On-disk channel document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelJson {
    pub alphabets: Vec<Vec<String>>,
    pub dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_names: Option<Vec<String>>,
    pub outputs: BTreeMap<String, MatrixEntry>,
}

/// A matrix given either as bare `[re, im]` pairs or with its own dims.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixEntry {
    Pairs(Vec<[f64; 2]>),
    Full(crate::qstate::MatrixJson),
}

/// Row-stochastic matrix `p(y|x)`, rows indexed by input.
#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    rows: Vec<Vec<f64>>,
}

impl Transition {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let width = rows
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidDistribution("transition has no rows".into()))?;
        for (x, r) in rows.iter().enumerate() {
            if r.len() != width {
                return Err(Error::InvalidDistribution(format!(
                    "row {x} has {} entries, expected {width}",
                    r.len()
                )));
            }
            ProbDist::new(r.clone()).map_err(|e| {
                Error::InvalidDistribution(format!("row {x}: {e}"))
            })?;
        }
        Ok(Transition { rows })
    }

    /// `1 - p` on the diagonal, `p` off it.
    pub fn bsc(p: f64) -> Result<Self> {
        Self::new(vec![vec![1.0 - p, p], vec![p, 1.0 - p]])
    }

    /// Input 0 is noiseless; input 1 flips to 0 with probability `p`.
    pub fn z_channel(p: f64) -> Result<Self> {
        Self::new(vec![vec![1.0, 0.0], vec![p, 1.0 - p]])
    }

    pub fn identity(n: usize) -> Self {
        Transition {
            rows: (0..n)
                .map(|x| (0..n).map(|y| if x == y { 1.0 } else { 0.0 }).collect())
                .collect(),
        }
    }

    pub fn num_inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn num_outputs(&self) -> usize {
        self.rows[0].len()
    }

    pub fn row(&self, x: usize) -> &[f64] {
        &self.rows[x]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.rows[x][y]
    }
}

/// A complete set of PSD measurement operators.
#[derive(Debug, Clone)]
pub struct Povm {
    elements: Vec<CMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<CMatrix>) -> Result<Self> {
        let d = elements
            .first()
            .map(|e| e.nrows())
            .ok_or_else(|| Error::InvalidPovm("no elements".into()))?;
        let mut sum = CMatrix::zeros(d, d);
        for (k, e) in elements.iter().enumerate() {
            if e.nrows() != d || e.ncols() != d {
                return Err(Error::InvalidPovm(format!("element {k} is not {d}x{d}")));
            }
            let dev = hermitian_deviation(e);
            if dev > STATE_TOL {
                return Err(Error::InvalidPovm(format!(
                    "element {k} not Hermitian ({dev:.3e})"
                )));
            }
            let min = crate::qstate::eigh(e)?
                .eigenvalues
                .last()
                .copied()
                .unwrap_or(0.0);
            if min < -STATE_TOL {
                return Err(Error::InvalidPovm(format!(
                    "element {k} has negative eigenvalue {min:.3e}"
                )));
            }
            sum += e;
        }
        let gap = (&sum - CMatrix::identity(d, d))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if gap > POVM_TOL {
            return Err(Error::InvalidPovm(format!(
                "elements sum to identity only within {gap:.3e}"
            )));
        }
        Ok(Povm { elements })
    }

    /// Appends `I - Σ elements` as a final outcome.
    pub fn with_remainder(mut elements: Vec<CMatrix>) -> Result<Self> {
        let d = elements
            .first()
            .map(|e| e.nrows())
            .ok_or_else(|| Error::InvalidPovm("no elements".into()))?;
        let mut rest = CMatrix::identity(d, d);
        for e in &elements {
            if e.nrows() != d {
                return Err(Error::InvalidPovm("elements differ in dimension".into()));
            }
            rest -= e;
        }
        let rest = (&rest + rest.adjoint()) * c(0.5, 0.0);
        elements.push(rest);
        Self::new(elements)
    }

    /// Projective measurement in the standard basis.
    pub fn computational(d: usize) -> Self {
        let elements = (0..d)
            .map(|i| {
                let mut m = CMatrix::zeros(d, d);
                m[(i, i)] = c(1.0, 0.0);
                m
            })
            .collect();
        Povm { elements }
    }

    /// The single-outcome measurement `{I}`.
    pub fn trivial(d: usize) -> Self {
        Povm {
            elements: vec![CMatrix::identity(d, d)],
        }
    }

    /// Qubit measurement along the directions at `-π/8` and `π/4 + π/8`,
    /// symmetric between `|0⟩` and `|+⟩`.
    pub fn bb84_aligned() -> Self {
        let (s, co) = (std::f64::consts::PI / 8.0).sin_cos();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // c|0⟩ - s|1⟩ and c|+⟩ - s|−⟩.
        let v0 = CVector::from_vec(vec![c(co, 0.0), c(-s, 0.0)]);
        let v1 = CVector::from_vec(vec![c(h * (co - s), 0.0), c(h * (co + s), 0.0)]);
        Povm {
            elements: vec![outer(&v0), outer(&v1)],
        }
    }

    pub fn builtin(name: &str, d: usize) -> Result<Self> {
        match name {
            "computational" => Ok(Self::computational(d)),
            "trivial" => Ok(Self::trivial(d)),
            "bb84_aligned" if d == 2 => Ok(Self::bb84_aligned()),
            "bb84_aligned" => Err(Error::InvalidPovm(
                "bb84_aligned acts on a qubit".into(),
            )),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: PovmJson = serde_json::from_str(s).map_err(|e| Error::Schema(e.to_string()))?;
        let elements = json
            .elements
            .iter()
            .map(|p| pairs_to_matrix(p, json.dim))
            .collect::<Result<Vec<_>>>()?;
        if json.remainder {
            Self::with_remainder(elements)
        } else {
            Self::new(elements)
        }
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].nrows()
    }
}

/// `{"dim": d, "elements": [pairs...], "remainder": bool}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PovmJson {
    pub dim: usize,
    pub elements: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    pub remainder: bool,
}

fn ket(amps: &[f64]) -> Result<DensityMatrix> {
    DensityMatrix::pure_real(amps)
}

fn ket2(amps: &[f64]) -> Result<DensityMatrix> {
    let a: Vec<_> = amps.iter().map(|&x| c(x, 0.0)).collect();
    DensityMatrix::pure_with_dims(&a, vec![2, 2])
}

/// Named example channels.
///
/// * `bb84_p2p`: `0 → |0⟩`, `1 → |+⟩`.
/// * `bb84_qmac`: `(0,0) → |0⟩`, `(1,0) → |+⟩`, `(0,1) → |−⟩`, `(1,1) → |1⟩`.
/// * `bb84_ic`: `bb84_qmac` with the same state delivered to `B1` and `B2`.
/// * `theta_swap` (one parameter θ): a partial swap of the two input bits.
pub fn builtin(name: &str, params: &[f64]) -> Result<CqChannel> {
    let need = |n: usize| -> Result<()> {
        if params.len() != n {
            return Err(Error::InvalidArgument(format!(
                "builtin `{name}` takes {n} parameter(s), got {}",
                params.len()
            )));
        }
        Ok(())
    };
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let qmac_states = || -> Result<Vec<DensityMatrix>> {
        // Row-major: (0,0), (0,1), (1,0), (1,1).
        Ok(vec![
            ket(&[1.0, 0.0])?,
            ket(&[h, -h])?,
            ket(&[h, h])?,
            ket(&[0.0, 1.0])?,
        ])
    };
    match name {
        "bb84_p2p" => {
            need(0)?;
            CqChannel::single_input(vec![ket(&[1.0, 0.0])?, ket(&[h, h])?], "B")
        }
        "bb84_qmac" => {
            need(0)?;
            CqChannel::with_numeric_alphabets(&[2, 2], vec!["B".into()], qmac_states()?)
        }
        "bb84_ic" => {
            need(0)?;
            let outputs = qmac_states()?.iter().map(|r| r.tensor(r)).collect();
            CqChannel::with_numeric_alphabets(&[2, 2], vec!["B1".into(), "B2".into()], outputs)
        }
        "theta_swap" => {
            need(1)?;
            let (s, co) = params[0].sin_cos();
            // Basis |b1 b2⟩ at index 2·b1 + b2.
            let outputs = vec![
                ket2(&[1.0, 0.0, 0.0, 0.0])?,
                ket2(&[0.0, co, s, 0.0])?,
                ket2(&[0.0, -s, co, 0.0])?,
                ket2(&[0.0, 0.0, 0.0, 1.0])?,
            ];
            CqChannel::with_numeric_alphabets(&[2, 2], vec!["B1".into(), "B2".into()], outputs)
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

pub const BUILTIN_NAMES: &[&str] = &["bb84_p2p", "bb84_qmac", "bb84_ic", "theta_swap"];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_channel, random_prob_dist};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

    #[test]
    fn builtins_are_valid() {
        for name in ["bb84_p2p", "bb84_qmac", "bb84_ic"] {
            let ch = builtin(name, &[]).unwrap();
            for o in ch.outputs() {
                DensityMatrix::new(o.matrix().clone(), o.dims().to_vec()).unwrap();
                assert!(o.is_pure(1e-12));
            }
        }
        for th in [0.0, 0.3, 1.5, 3.0] {
            builtin("theta_swap", &[th]).unwrap();
        }
        assert!(builtin("theta_swap", &[]).is_err());
        assert!(matches!(builtin("nope", &[]), Err(Error::UnknownName(_))));
    }

    #[test]
    fn theta_swap_limits() {
        let id = builtin("theta_swap", &[0.0]).unwrap();
        let b01 = ket2(&[0.0, 1.0, 0.0, 0.0]).unwrap();
        let b10 = ket2(&[0.0, 0.0, 1.0, 0.0]).unwrap();
        assert!(id.output(&[0, 1]).trace_distance(&b01).unwrap() < 1e-12);
        let swap = builtin("theta_swap", &[FRAC_PI_2]).unwrap();
        assert!(swap.output(&[0, 1]).trace_distance(&b10).unwrap() < 1e-12);
        assert!(swap.output(&[1, 0]).trace_distance(&b01).unwrap() < 1e-12);
    }

    #[test]
    fn swap_marginal_ignores_own_input() {
        let swap = builtin("theta_swap", &[FRAC_PI_2]).unwrap();
        let b1 = swap.marginal_output(&["B1"]).unwrap();
        for x2 in 0..2 {
            let d = b1
                .output(&[0, x2])
                .trace_distance(b1.output(&[1, x2]))
                .unwrap();
            assert!(d < 1e-12);
        }
        let all = swap.marginal_output(&["B1", "B2"]).unwrap();
        assert_eq!(all, swap);
        assert!(swap.marginal_output(&["B3"]).is_err());
    }

    #[test]
    fn product_output_marginal() {
        let ic = builtin("bb84_ic", &[]).unwrap();
        let qmac = builtin("bb84_qmac", &[]).unwrap();
        let m = ic.marginal_output(&["B2"]).unwrap();
        for i in 0..4 {
            assert!(m.outputs()[i].trace_distance(&qmac.outputs()[i]).unwrap() < 1e-12);
        }
    }

    #[test]
    fn qmac_average_over_second_input() {
        let qmac = builtin("bb84_qmac", &[]).unwrap();
        let avg = qmac.averaged_channel(1, &ProbDist::uniform(2)).unwrap();
        let zero = ket(&[1.0, 0.0]).unwrap();
        let minus = ket(&[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]).unwrap();
        let want = DensityMatrix::mixture(&[(0.5, &zero), (0.5, &minus)]).unwrap();
        assert!(avg.output(&[0]).trace_distance(&want).unwrap() < 1e-12);
        // Point mass equals slicing.
        let slice = qmac.averaged_channel(0, &ProbDist::point_mass(2, 1)).unwrap();
        for x2 in 0..2 {
            assert_eq!(slice.output(&[x2]), qmac.output(&[1, x2]));
        }
    }

    #[test]
    fn double_average_is_average_state() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let ch = random_channel(&mut rng, &[3, 2], &[2], 2);
        let p1 = random_prob_dist(&mut rng, 3);
        let p2 = random_prob_dist(&mut rng, 2);
        let once = ch.averaged_channel(1, &p2).unwrap();
        let twice = once.average_state(&[&p1]).unwrap();
        let direct = ch.average_state(&[&p1, &p2]).unwrap();
        assert!(twice.trace_distance(&direct).unwrap() < 1e-12);
    }

    #[test]
    fn marginal_and_average_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..10 {
            let ch = random_channel(&mut rng, &[2, 3], &[2, 2], 3);
            let p = random_prob_dist(&mut rng, 3);
            let a = ch.marginal_output(&["B1"]).unwrap().averaged_channel(1, &p).unwrap();
            let b = ch.averaged_channel(1, &p).unwrap().marginal_output(&["B1"]).unwrap();
            for x in 0..2 {
                assert!(a.output(&[x]).trace_distance(b.output(&[x])).unwrap() < 1e-9);
            }
        }
    }

    #[test]
    fn induced_z_channel() {
        let ch = builtin("bb84_p2p", &[]).unwrap();
        let t = ch.induced_classical_channel(&Povm::computational(2)).unwrap();
        assert!((t.get(0, 0) - 1.0).abs() < 1e-12);
        assert!((t.get(1, 0) - 0.5).abs() < 1e-12);
        assert!((t.get(1, 1) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn induced_bsc() {
        let ch = builtin("bb84_p2p", &[]).unwrap();
        let t = ch.induced_classical_channel(&Povm::bb84_aligned()).unwrap();
        let ps = (std::f64::consts::PI / 8.0).sin().powi(2);
        assert!((t.get(0, 1) - ps).abs() < 1e-12);
        assert!((t.get(1, 0) - ps).abs() < 1e-12);
        Povm::new(Povm::bb84_aligned().elements().to_vec()).unwrap();
    }

    #[test]
    fn induced_trivial_povm() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let ch = random_channel(&mut rng, &[4], &[3], 3);
        let t = ch.induced_classical_channel(&Povm::trivial(3)).unwrap();
        for x in 0..4 {
            assert!((t.get(x, 0) - 1.0).abs() < 1e-12);
        }
        assert!(ch.induced_classical_channel(&Povm::trivial(2)).is_err());
    }

    #[test]
    fn povm_validation() {
        let mut half = CMatrix::identity(2, 2);
        half *= c(0.5, 0.0);
        assert!(Povm::new(vec![half.clone()]).is_err());
        let p = Povm::with_remainder(vec![half]).unwrap();
        assert_eq!(p.len(), 2);
        let mut neg = CMatrix::zeros(2, 2);
        neg[(0, 0)] = c(1.5, 0.0);
        assert!(Povm::with_remainder(vec![neg]).is_err());
    }

    #[test]
    fn json_round_trip_is_identity() {
        let ch = builtin("bb84_p2p", &[]).unwrap();
        let text = ch.to_json_string();
        let back = CqChannel::from_json_str(&text).unwrap();
        assert_eq!(back, ch);
        assert_eq!(back.to_json_string(), text);
        let swap = builtin("theta_swap", &[0.7]).unwrap();
        let back = CqChannel::from_json_str(&swap.to_json_string()).unwrap();
        assert_eq!(back, swap);
    }

    #[test]
    fn json_errors_name_the_tuple() {
        let text = r#"{"alphabets": [["a","b"]], "dims": [2],
            "outputs": {"a": [[1,0],[0,0],[0,0],[0,0]],
                        "b": [[1.2,0],[0,0],[0,0],[-0.2,0]]}}"#;
        match CqChannel::from_json_str(text) {
            Err(Error::InvalidOutput { tuple, .. }) => assert_eq!(tuple, "b"),
            other => panic!("unexpected {other:?}"),
        }
        let missing = r#"{"alphabets": [["a","b"]], "dims": [2],
            "outputs": {"a": [[1,0],[0,0],[0,0],[0,0]]}}"#;
        assert!(matches!(CqChannel::from_json_str(missing), Err(Error::Schema(_))));
        let unknown = r#"{"alphabets": [["a"]], "dims": [2],
            "outputs": {"z": [[1,0],[0,0],[0,0],[0,0]]}}"#;
        assert!(matches!(CqChannel::from_json_str(unknown), Err(Error::Schema(_))));
    }

    #[test]
    fn json_accepts_matrices_with_dims() {
        let text = r#"{"alphabets": [["0"]], "dims": [2],
            "outputs": {"0": {"dims": [2], "entries": [[0.5,0],[0,0],[0,0],[0.5,0]]}}}"#;
        let ch = CqChannel::from_json_str(text).unwrap();
        assert_eq!(ch.output_names(), &["B".to_string()]);
    }
}
