//! Dense density matrices tagged with subsystem dimensions.
//!
//! Every `DensityMatrix` is validated on construction: Hermitian, unit trace
//! and positive semidefinite, each to an absolute tolerance of
//! [`STATE_TOL`]. Inputs that fail are rejected rather than repaired.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Absolute tolerance for Hermiticity, trace and positivity checks.
pub const STATE_TOL: f64 = 1e-10;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Largest entrywise deviation `max |M - M†|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

/// Kronecker product of two dense complex matrices.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// `|v⟩⟨v|` for an (unnormalized) column vector.
pub fn outer(v: &CVector) -> CMatrix {
    v * v.adjoint()
}

pub fn trace(m: &CMatrix) -> C64 {
    m.diagonal().iter().sum()
}

/// Real part of `Tr[A B]` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc.re
}

/// Eigendecomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    /// Nonincreasing real eigenvalues.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, aligned with `eigenvalues`.
    pub eigenvectors: CMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn vector(&self, k: usize) -> CVector {
        self.eigenvectors.column(k).into_owned()
    }

    /// `U f(Λ) U†`.
    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> CMatrix {
        let n = self.dim();
        let mut scaled = self.eigenvectors.clone();
        for k in 0..n {
            let w = f(self.eigenvalues[k]);
            for i in 0..n {
                scaled[(i, k)] *= w;
            }
        }
        &scaled * self.eigenvectors.adjoint()
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.apply(|x| x)
    }
}

/// Eigendecomposition of any Hermitian matrix (not necessarily a state).
pub fn eigh(m: &CMatrix) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let dev = hermitian_deviation(m);
    let scale = m.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
    if dev > STATE_TOL * scale {
        return Err(Error::NotHermitian(dev));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok(Spectrum {
            eigenvalues: vec![],
            eigenvectors: CMatrix::zeros(0, 0),
        });
    }
    let eig = SymmetricEigen::new(m.clone());
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut eigenvectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
    })
}

/// A validated quantum state on a composite system.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix, dims: Vec<usize>) -> Result<Self> {
        let d: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidState(format!("bad subsystem dims {dims:?}")));
        }
        if entries.nrows() != d || entries.ncols() != d {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {}x{} but dims {:?} give {}",
                entries.nrows(),
                entries.ncols(),
                dims,
                d
            )));
        }
        let dev = hermitian_deviation(&entries);
        if dev > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (max |ρ-ρ†| = {dev:.3e})"
            )));
        }
        let tr = trace(&entries);
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "trace is {:.12} + {:.3e}i",
                tr.re, tr.im
            )));
        }
        let spec = eigh(&entries)?;
        let min = spec.eigenvalues.last().copied().unwrap_or(0.0);
        if min < -STATE_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(DensityMatrix { entries, dims })
    }

    /// Single-system state from a real or complex state vector (normalized here).
    pub fn pure(amplitudes: &[C64]) -> Result<Self> {
        Self::pure_with_dims(amplitudes, vec![amplitudes.len()])
    }

    pub fn pure_with_dims(amplitudes: &[C64], dims: Vec<usize>) -> Result<Self> {
        let v = CVector::from_column_slice(amplitudes);
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let v = v / c(norm, 0.0);
        Self::new(outer(&v), dims)
    }

    pub fn pure_real(amplitudes: &[f64]) -> Result<Self> {
        let amps: Vec<C64> = amplitudes.iter().map(|&a| c(a, 0.0)).collect();
        Self::pure(&amps)
    }

    /// `|i⟩⟨i|` in dimension `d`.
    pub fn basis(d: usize, i: usize) -> Result<Self> {
        if i >= d {
            return Err(Error::InvalidState(format!("basis index {i} >= {d}")));
        }
        let mut m = CMatrix::zeros(d, d);
        m[(i, i)] = c(1.0, 0.0);
        Ok(DensityMatrix {
            entries: m,
            dims: vec![d],
        })
    }

    pub fn maximally_mixed(dims: Vec<usize>) -> Result<Self> {
        let d: usize = dims.iter().product();
        if d == 0 {
            return Err(Error::InvalidState("zero dimension".into()));
        }
        let m = CMatrix::identity(d, d) * c(1.0 / d as f64, 0.0);
        Self::new(m, dims)
    }

    pub fn diagonal(probs: &[f64]) -> Result<Self> {
        let d = probs.len();
        let mut m = CMatrix::zeros(d, d);
        for (i, &p) in probs.iter().enumerate() {
            m[(i, i)] = c(p, 0.0);
        }
        Self::new(m, vec![d])
    }

    /// Convex combination `Σ w_k ρ_k`; weights must form a distribution.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidState("empty mixture".into()))?;
        let dims = first.1.dims.clone();
        let d = first.1.dim();
        let mut acc = CMatrix::zeros(d, d);
        let mut total = 0.0;
        for (w, rho) in parts {
            if rho.dims != dims {
                return Err(Error::DimensionMismatch(format!(
                    "mixture of dims {:?} and {:?}",
                    dims, rho.dims
                )));
            }
            if *w < 0.0 {
                return Err(Error::InvalidDistribution(format!("negative weight {w}")));
            }
            total += w;
            acc += &rho.entries * c(*w, 0.0);
        }
        if (total - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidDistribution(format!(
                "mixture weights sum to {total}"
            )));
        }
        Ok(DensityMatrix {
            entries: acc,
            dims,
        })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn num_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        DensityMatrix {
            entries: kron(&self.entries, &other.entries),
            dims,
        }
    }

    /// Reduced state on the subsystems listed in `keep` (any order, no repeats).
    /// The result lists kept subsystems in increasing index order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let n = self.dims.len();
        if keep.is_empty() {
            return Err(Error::InvalidSubsystems("keep set is empty".into()));
        }
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        for w in kept.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidSubsystems(format!(
                    "subsystem {} listed twice",
                    w[0]
                )));
            }
        }
        if let Some(&bad) = kept.iter().find(|&&k| k >= n) {
            return Err(Error::InvalidSubsystems(format!(
                "subsystem {bad} out of range for {n} subsystems"
            )));
        }
        if kept.len() == n {
            return Ok(self.clone());
        }
        let traced: Vec<usize> = (0..n).filter(|i| !kept.contains(i)).collect();
        let kept_dims: Vec<usize> = kept.iter().map(|&i| self.dims[i]).collect();
        let dk: usize = kept_dims.iter().product();
        let dt: usize = traced.iter().map(|&i| self.dims[i]).product();

        // Row-major strides of the full index.
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }
        let offsets = |subs: &[usize], mut idx: usize| -> usize {
            let mut off = 0;
            for &s in subs.iter().rev() {
                let d = self.dims[s];
                off += (idx % d) * strides[s];
                idx /= d;
            }
            off
        };
        let kept_off: Vec<usize> = (0..dk).map(|a| offsets(&kept, a)).collect();
        let traced_off: Vec<usize> = (0..dt).map(|t| offsets(&traced, t)).collect();

        let mut out = CMatrix::zeros(dk, dk);
        for a in 0..dk {
            for b in 0..dk {
                let mut acc = c(0.0, 0.0);
                for &t in &traced_off {
                    acc += self.entries[(kept_off[a] + t, kept_off[b] + t)];
                }
                out[(a, b)] = acc;
            }
        }
        Ok(DensityMatrix {
            entries: out,
            dims: kept_dims,
        })
    }

    pub fn spectrum(&self) -> Spectrum {
        // Validated on construction, so Hermiticity holds.
        eigh(&self.entries).expect("density matrix is Hermitian")
    }

    /// `‖a - b‖₁`, the sum of absolute eigenvalues of the difference.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!(
                "trace distance between dims {:?} and {:?}",
                self.dims, other.dims
            )));
        }
        let diff = &self.entries - &other.entries;
        let spec = eigh(&diff)?;
        Ok(spec.eigenvalues.iter().map(|x| x.abs()).sum())
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (trace_product(&self.entries, &self.entries) - 1.0).abs() <= tol
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            dims: self.dims.clone(),
            entries: matrix_to_pairs(&self.entries),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let m = pairs_to_matrix(&json.entries, json.dims.iter().product())?;
        Self::new(m, json.dims.clone())
    }
}

pub fn tensor_product(a: &DensityMatrix, b: &DensityMatrix) -> DensityMatrix {
    a.tensor(b)
}

pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    rho.partial_trace(keep)
}

pub fn eig_hermitian(rho: &DensityMatrix) -> Spectrum {
    rho.spectrum()
}

pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    a.trace_distance(b)
}

/// Row-major `[re, im]` pairs plus subsystem dims.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dims: Vec<usize>,
    pub entries: Vec<[f64; 2]>,
}

pub fn matrix_to_pairs(m: &CMatrix) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            out.push([z.re, z.im]);
        }
    }
    out
}

pub fn pairs_to_matrix(pairs: &[[f64; 2]], d: usize) -> Result<CMatrix> {
    if pairs.len() != d * d {
        return Err(Error::Schema(format!(
            "expected {} matrix entries for dimension {}, got {}",
            d * d,
            d,
            pairs.len()
        )));
    }
    if pairs.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::Schema("non-finite matrix entry".into()));
    }
    Ok(CMatrix::from_fn(d, d, |i, j| {
        let [re, im] = pairs[i * d + j];
        c(re, im)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plus() -> DensityMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::pure_real(&[s, s]).unwrap()
    }

    #[test]
    fn basis_product() {
        let r = DensityMatrix::basis(2, 0)
            .unwrap()
            .tensor(&DensityMatrix::basis(2, 1).unwrap());
        assert_eq!(r.dims(), &[2, 2]);
        assert!((r.matrix()[(1, 1)].re - 1.0).abs() < 1e-15);
        assert!((trace(r.matrix()).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mixed_tensor_mixed() {
        let half = DensityMatrix::maximally_mixed(vec![2]).unwrap();
        let r = half.tensor(&half);
        let quarter = DensityMatrix::maximally_mixed(vec![2, 2]).unwrap();
        assert!(r.trace_distance(&quarter).unwrap() < 1e-14);
    }

    #[test]
    fn trace_out_bell_pair() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let phi = DensityMatrix::pure_with_dims(
            &[c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(s, 0.0)],
            vec![2, 2],
        )
        .unwrap();
        let a = phi.partial_trace(&[0]).unwrap();
        let half = DensityMatrix::maximally_mixed(vec![2]).unwrap();
        assert!(a.trace_distance(&half).unwrap() < 1e-14);
    }

    #[test]
    fn partial_trace_rejects_bad_sets() {
        let r = DensityMatrix::maximally_mixed(vec![2, 3]).unwrap();
        assert!(r.partial_trace(&[]).is_err());
        assert!(r.partial_trace(&[2]).is_err());
        assert!(r.partial_trace(&[0, 0]).is_err());
        assert_eq!(r.partial_trace(&[1]).unwrap().dims(), &[3]);
    }

    #[test]
    fn spectrum_of_bb84_average() {
        let avg = DensityMatrix::mixture(&[
            (0.5, &DensityMatrix::basis(2, 0).unwrap()),
            (0.5, &plus()),
        ])
        .unwrap();
        let spec = avg.spectrum();
        let c8 = (std::f64::consts::PI / 8.0).cos().powi(2);
        assert!((spec.eigenvalues[0] - c8).abs() < 1e-12);
        assert!((spec.eigenvalues[1] - (1.0 - c8)).abs() < 1e-12);
    }

    #[test]
    fn non_hermitian_rejected() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(0.5, 0.0);
        m[(1, 1)] = c(0.5, 0.0);
        m[(0, 1)] = c(0.1, 0.0);
        assert!(DensityMatrix::new(m.clone(), vec![2]).is_err());
        assert!(matches!(eigh(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn negative_eigenvalue_rejected() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(1.2, 0.0);
        m[(1, 1)] = c(-0.2, 0.0);
        assert!(DensityMatrix::new(m, vec![2]).is_err());
    }

    #[test]
    fn trace_distance_examples() {
        let z0 = DensityMatrix::basis(2, 0).unwrap();
        let z1 = DensityMatrix::basis(2, 1).unwrap();
        assert!(z0.trace_distance(&z0).unwrap().abs() < 1e-15);
        assert!((z0.trace_distance(&z1).unwrap() - 2.0).abs() < 1e-14);
        // Difference |0⟩⟨0| - |+⟩⟨+| has eigenvalues ±1/√2.
        assert!((z0.trace_distance(&plus()).unwrap() - 2f64.sqrt()).abs() < 1e-12);
        let other = DensityMatrix::maximally_mixed(vec![4]).unwrap();
        assert!(z0.trace_distance(&other).is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = plus();
        let back = DensityMatrix::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let bad = MatrixJson {
            dims: vec![2],
            entries: vec![[1.0, 0.0]],
        };
        assert!(DensityMatrix::from_json(&bad).is_err());
    }
}
