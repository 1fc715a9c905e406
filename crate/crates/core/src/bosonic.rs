//! Closed-form rates for the free-space bosonic interference channel with
//! coherent-state encodings.
//!
//! Every rate reduces to one link term `t(S, I, ν)`: the information a
//! receiver gets about signal power `S` while power `I` of undecoded
//! signals and `ν = η̄·N_B` thermal photons act as noise.
//!
//! * homodyne: `γ(S / (I + (2ν+1)/4))`
//! * heterodyne: `log₂(1 + S / (I + ν + 1))`
//! * joint detection: `g(S + I + ν) − g(I + ν)`
//!
//! For joint detection the Han-Kobayashi bounds use the same bookkeeping
//! with `g`-differences in place of the Gaussian terms. That substitution
//! is a modelling choice rather than a separately derived result.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::entropic::g_unchecked;
use crate::error::{Error, Result};
use crate::regions::{HalfspaceRegion, Inequality};

/// Tolerance for the passivity and geometric-mean constraints.
pub const PARAM_TOL: f64 = 1e-9;

/// `γ(x) = ½ log₂(1 + x)`.
pub fn gamma(x: f64) -> f64 {
    0.5 * (1.0 + x).log2()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DetectionMode {
    #[serde(alias = "hom")]
    Homodyne,
    #[serde(alias = "het")]
    Heterodyne,
    Joint,
}

impl DetectionMode {
    pub const ALL: [DetectionMode; 3] = [
        DetectionMode::Homodyne,
        DetectionMode::Heterodyne,
        DetectionMode::Joint,
    ];

    /// `1` for homodyne, `0` for heterodyne, `None` for joint detection.
    pub fn exponent(self) -> Option<i32> {
        match self {
            DetectionMode::Homodyne => Some(1),
            DetectionMode::Heterodyne => Some(0),
            DetectionMode::Joint => None,
        }
    }

    /// The link term `t(S, I, ν)`.
    pub fn link(self, signal: f64, interference: f64, nu: f64) -> f64 {
        match self {
            DetectionMode::Homodyne => gamma(signal / (interference + (2.0 * nu + 1.0) / 4.0)),
            DetectionMode::Heterodyne => (1.0 + signal / (interference + nu + 1.0)).log2(),
            DetectionMode::Joint => {
                g_unchecked(signal + interference + nu) - g_unchecked(interference + nu)
            }
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            DetectionMode::Homodyne => "hom",
            DetectionMode::Heterodyne => "het",
            DetectionMode::Joint => "joint",
        }
    }
}

impl fmt::Display for DetectionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for DetectionMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hom" | "homodyne" => Ok(DetectionMode::Homodyne),
            "het" | "heterodyne" => Ok(DetectionMode::Heterodyne),
            "joint" => Ok(DetectionMode::Joint),
            other => Err(Error::InvalidArgument(format!(
                "unknown detection mode `{other}` (expected hom, het or joint)"
            ))),
        }
    }
}

/// `½ log₂(1 + 4ηN_S / (2(1−η)N_B + 1))`.
pub fn c_homodyne(eta: f64, ns: f64, nb: f64) -> f64 {
    DetectionMode::Homodyne.link(eta * ns, 0.0, (1.0 - eta) * nb)
}

/// `log₂(1 + ηN_S / ((1−η)N_B + 1))`.
pub fn c_heterodyne(eta: f64, ns: f64, nb: f64) -> f64 {
    DetectionMode::Heterodyne.link(eta * ns, 0.0, (1.0 - eta) * nb)
}

/// `g(ηN_S + (1−η)N_B) − g((1−η)N_B)`.
pub fn c_holevo(eta: f64, ns: f64, nb: f64) -> f64 {
    DetectionMode::Joint.link(eta * ns, 0.0, (1.0 - eta) * nb)
}

pub fn c_mode(mode: DetectionMode, eta: f64, ns: f64, nb: f64) -> f64 {
    mode.link(eta * ns, 0.0, (1.0 - eta) * nb)
}

/// Two-sender, two-receiver beam-splitter network parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BosonicICParams {
    /// `eta[j][k]`: transmissivity from sender `j` to receiver `k`.
    pub eta: [[f64; 2]; 2],
    pub ns: [f64; 2],
    pub nb: [f64; 2],
    /// Fraction of each sender's power spent on its personal message.
    pub lambda: [f64; 2],
}

impl BosonicICParams {
    pub fn new(eta: [[f64; 2]; 2], ns: [f64; 2], nb: [f64; 2], lambda: [f64; 2]) -> Result<Self> {
        let p = BosonicICParams {
            eta,
            ns,
            nb,
            lambda,
        };
        p.validate()?;
        Ok(p)
    }

    /// Mirror-symmetric network: `η11 = η22 = direct`, `η12 = η21 = cross`.
    pub fn symmetric(direct: f64, cross: f64, ns: f64, nb: f64, lambda: f64) -> Result<Self> {
        Self::new(
            [[direct, cross], [cross, direct]],
            [ns, ns],
            [nb, nb],
            [lambda, lambda],
        )
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::BosonicParams(m));
        for row in &self.eta {
            for &e in row {
                if !(0.0..=1.0).contains(&e) {
                    return bad(format!("transmissivity {e} outside [0, 1]"));
                }
            }
        }
        for (what, v) in [("N_S", self.ns), ("N_B", self.nb)] {
            if v.iter().any(|x| !x.is_finite() || *x < 0.0) {
                return bad(format!("{what} must be finite and nonnegative, got {v:?}"));
            }
        }
        if self.lambda.iter().any(|l| !(0.0..=1.0).contains(l)) {
            return Err(Error::InvalidArgument(format!(
                "power split λ must lie in [0, 1], got {:?}",
                self.lambda
            )));
        }
        let [[e11, e12], [e21, e22]] = self.eta;
        for (name, s) in [
            ("η11 + η12", e11 + e12),
            ("η11 + η21", e11 + e21),
            ("η22 + η21", e22 + e21),
            ("η22 + η12", e22 + e12),
        ] {
            if s > 1.0 + PARAM_TOL {
                return bad(format!("{name} = {s} exceeds 1; the network must be passive"));
            }
        }
        let (l, r) = ((e11 * e12).sqrt(), (e21 * e22).sqrt());
        if (l - r).abs() > PARAM_TOL {
            return bad(format!("√(η11 η12) = {l} differs from √(η21 η22) = {r}"));
        }
        Ok(())
    }

    pub fn eta11(&self) -> f64 {
        self.eta[0][0]
    }
    pub fn eta12(&self) -> f64 {
        self.eta[0][1]
    }
    pub fn eta21(&self) -> f64 {
        self.eta[1][0]
    }
    pub fn eta22(&self) -> f64 {
        self.eta[1][1]
    }

    /// `η̄1 = 1 − η11 − η21`, the environment's share at receiver 1.
    pub fn eta_bar1(&self) -> f64 {
        (1.0 - self.eta11() - self.eta21()).max(0.0)
    }

    /// `η̄2 = 1 − η12 − η22`.
    pub fn eta_bar2(&self) -> f64 {
        (1.0 - self.eta12() - self.eta22()).max(0.0)
    }

    /// Thermal photons `η̄_k N_Bk` reaching receiver `k` (0-based).
    pub fn nu(&self, k: usize) -> f64 {
        match k {
            0 => self.eta_bar1() * self.nb[0],
            _ => self.eta_bar2() * self.nb[1],
        }
    }

    /// Received power of sender `j` at receiver `k` (0-based).
    pub fn power(&self, j: usize, k: usize) -> f64 {
        self.eta[j][k] * self.ns[j]
    }

    pub fn to_json(&self, mode: Option<DetectionMode>) -> BosonicJson {
        BosonicJson {
            eta: self.eta,
            ns: self.ns.to_vec(),
            nb: self.nb.to_vec(),
            lambda: Some(self.lambda.to_vec()),
            mode,
        }
    }

    pub fn from_json(j: &BosonicJson) -> Result<Self> {
        let pair = |name: &str, v: &[f64]| -> Result<[f64; 2]> {
            match v {
                [a] => Ok([*a, *a]),
                [a, b] => Ok([*a, *b]),
                _ => Err(Error::Schema(format!("\"{name}\" needs 1 or 2 values"))),
            }
        };
        let lambda = match &j.lambda {
            Some(l) => pair("lambda", l)?,
            None => [1.0, 1.0],
        };
        Self::new(j.eta, pair("NS", &j.ns)?, pair("NB", &j.nb)?, lambda)
    }
}

/// `{"eta": [[η11, η12], [η21, η22]], "NS": [..], "NB": [..], "lambda": [..], "mode": ".."}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BosonicJson {
    pub eta: [[f64; 2]; 2],
    #[serde(rename = "NS")]
    pub ns: Vec<f64>,
    #[serde(rename = "NB")]
    pub nb: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<DetectionMode>,
}

fn rect(r1: f64, r2: f64) -> Vec<Inequality> {
    vec![
        Inequality::new(vec![1.0, 0.0], r1),
        Inequality::new(vec![0.0, 1.0], r2),
    ]
}

fn coords() -> Vec<String> {
    vec!["R1".into(), "R2".into()]
}

/// Whether each receiver decodes the other sender's message at least as
/// well as its intended receiver does, in the very-strong sense.
pub fn vsi_conditions(p: &BosonicICParams, mode: DetectionMode) -> [bool; 2] {
    let (n1, n2) = (p.nu(0), p.nu(1));
    match mode.exponent() {
        Some(i) => {
            let (a, b) = (4f64.powi(i), 2f64.powi(i));
            // η21/η22 ≥ (4^i η11 N_S1 + 2^i η̄1 N_B1 + 1) / (2^i η̄2 N_B2 + 1),
            // cross-multiplied so zero transmissivities are safe.
            let c1 = p.eta21() * (b * n2 + 1.0) >= p.eta22() * (a * p.power(0, 0) + b * n1 + 1.0);
            let c2 = p.eta12() * (b * n1 + 1.0) >= p.eta11() * (a * p.power(1, 1) + b * n2 + 1.0);
            [c1, c2]
        }
        None => {
            let t = |s, i, nu| mode.link(s, i, nu);
            let c1 = t(p.power(1, 1), 0.0, n2) <= t(p.power(1, 0), p.power(0, 0), n1) + PARAM_TOL;
            let c2 = t(p.power(0, 0), 0.0, n1) <= t(p.power(0, 1), p.power(1, 1), n2) + PARAM_TOL;
            [c1, c2]
        }
    }
}

/// The very-strong-interference capacity rectangle and whether its
/// conditions hold.
pub fn bosonic_vsi(p: &BosonicICParams, mode: DetectionMode) -> Result<(bool, HalfspaceRegion)> {
    p.validate()?;
    let [c1, c2] = vsi_conditions(p, mode);
    let r1 = mode.link(p.power(0, 0), 0.0, p.nu(0));
    let r2 = mode.link(p.power(1, 1), 0.0, p.nu(1));
    Ok((c1 && c2, HalfspaceRegion::new(coords(), rect(r1, r2))?))
}

pub fn si_conditions(p: &BosonicICParams, mode: DetectionMode) -> [bool; 2] {
    let (n1, n2) = (p.nu(0), p.nu(1));
    match mode.exponent() {
        Some(i) => {
            let b = 2f64.powi(i);
            // η21/η22 ≥ (2^i η̄1 N_B1 + 1) / (2^i η̄2 N_B2 + 1) and symmetric.
            let c1 = p.eta21() * (b * n2 + 1.0) >= p.eta22() * (b * n1 + 1.0);
            let c2 = p.eta12() * (b * n1 + 1.0) >= p.eta11() * (b * n2 + 1.0);
            [c1, c2]
        }
        None => {
            let t = |s, nu| mode.link(s, 0.0, nu);
            let c1 = t(p.power(1, 1), n2) <= t(p.power(1, 0), n1) + PARAM_TOL;
            let c2 = t(p.power(0, 0), n1) <= t(p.power(0, 1), n2) + PARAM_TOL;
            [c1, c2]
        }
    }
}

/// The strong-interference capacity region and whether its conditions hold.
pub fn bosonic_si(p: &BosonicICParams, mode: DetectionMode) -> Result<(bool, HalfspaceRegion)> {
    p.validate()?;
    let [c1, c2] = si_conditions(p, mode);
    let r1 = mode.link(p.power(0, 0), 0.0, p.nu(0));
    let r2 = mode.link(p.power(1, 1), 0.0, p.nu(1));
    let s1 = mode.link(p.power(0, 0) + p.power(1, 0), 0.0, p.nu(0));
    let s2 = mode.link(p.power(1, 1) + p.power(0, 1), 0.0, p.nu(1));
    let mut ineqs = rect(r1, r2);
    ineqs.push(Inequality::new(vec![1.0, 1.0], s1.min(s2)));
    Ok((c1 && c2, HalfspaceRegion::new(coords(), ineqs)?))
}

/// Received powers of the four message layers at one receiver, in the
/// order `U1, W1, U2, W2` (personal, common of sender 1, then sender 2).
fn layer_powers(p: &BosonicICParams, k: usize) -> [f64; 4] {
    let (a, b) = (p.power(0, k), p.power(1, k));
    let [l1, l2] = p.lambda;
    [l1 * a, (1.0 - l1) * a, l2 * b, (1.0 - l2) * b]
}

const LAYERS: [&str; 4] = ["U1", "W1", "U2", "W2"];

/// `I(A; B_k | C)` with Gaussian layers: `A` is signal, everything outside
/// `A ∪ C` is noise.
fn layered_info(p: &BosonicICParams, mode: DetectionMode, k: usize, a: &[&str], c: &[&str]) -> f64 {
    let pw = layer_powers(p, k);
    let (mut s, mut i) = (0.0, 0.0);
    for (name, &w) in LAYERS.iter().zip(&pw) {
        if a.contains(name) {
            s += w;
        } else if !c.contains(name) {
            i += w;
        }
    }
    mode.link(s, i, p.nu(k))
}

/// Han-Kobayashi region with power split `λ` between personal (`U`) and
/// common (`W`) layers.
pub fn bosonic_hk_region(p: &BosonicICParams, mode: DetectionMode) -> Result<HalfspaceRegion> {
    p.validate()?;
    let i1 = |a: &[&str], c: &[&str]| layered_info(p, mode, 0, a, c);
    let i2 = |a: &[&str], c: &[&str]| layered_info(p, mode, 1, a, c);

    let hk1 = i1(&["U1", "W1"], &["W2"]);
    let u1_b1 = i1(&["U1"], &["W1", "W2"]);
    let w1_b2 = i2(&["W1"], &["U2", "W2"]);
    let hk3 = i2(&["U2", "W2"], &["W1"]);
    let w2_b1 = i1(&["W2"], &["U1", "W1"]);
    let u2_b2 = i2(&["U2"], &["W1", "W2"]);
    let all_b1 = i1(&["U1", "W1", "W2"], &[]);
    let all_b2 = i2(&["U2", "W2", "W1"], &[]);
    let u1w2_b1 = i1(&["U1", "W2"], &["W1"]);
    let u2w1_b2 = i2(&["U2", "W1"], &["W2"]);

    let rows: [([f64; 2], f64); 9] = [
        ([1.0, 0.0], hk1),
        ([1.0, 0.0], u1_b1 + w1_b2),
        ([0.0, 1.0], hk3),
        ([0.0, 1.0], w2_b1 + u2_b2),
        ([1.0, 1.0], all_b1 + u2_b2),
        ([1.0, 1.0], u1_b1 + all_b2),
        ([1.0, 1.0], u1w2_b1 + u2w1_b2),
        ([2.0, 1.0], u1_b1 + u2w1_b2 + all_b1),
        ([1.0, 2.0], u1w2_b1 + u2_b2 + all_b2),
    ];
    HalfspaceRegion::new(
        coords(),
        rows.iter()
            .map(|(c, b)| Inequality::new(c.to_vec(), *b))
            .collect(),
    )
}

/// One row of the point-to-point comparison: `(N_S, hom, het, Holevo)`.
pub fn p2p_curves(eta: f64, nb: f64, ns_values: &[f64]) -> Vec<[f64; 4]> {
    ns_values
        .iter()
        .map(|&ns| {
            [
                ns,
                c_homodyne(eta, ns, nb),
                c_heterodyne(eta, ns, nb),
                c_holevo(eta, ns, nb),
            ]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn carleial(ns: f64) -> BosonicICParams {
        BosonicICParams::symmetric(1.0 / 16.0, 0.5, ns, 1.0, 1.0).unwrap()
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma(0.0), 0.0);
        assert_eq!(gamma(1.0), 0.5);
        assert_eq!(gamma(3.0), 1.0);
    }

    #[test]
    fn capacities_at_edges() {
        assert_eq!(c_homodyne(0.7, 0.0, 3.0), 0.0);
        assert_eq!(c_heterodyne(0.7, 0.0, 3.0), 0.0);
        assert!(c_holevo(0.7, 0.0, 3.0).abs() < 1e-15);
        assert!((c_homodyne(1.0, 2.0, 5.0) - 0.5 * 9f64.log2()).abs() < 1e-15);
        assert!((c_holevo(1.0, 2.0, 5.0) - g_unchecked(2.0)).abs() < 1e-15);
    }

    #[test]
    fn detection_orderings() {
        assert!(c_homodyne(0.9, 1.0, 1.0) < c_holevo(0.9, 1.0, 1.0));
        assert!(c_heterodyne(0.9, 100.0, 1.0) > c_homodyne(0.9, 100.0, 1.0));
        assert!(c_homodyne(0.9, 0.05, 1.0) > c_heterodyne(0.9, 0.05, 1.0));
    }

    #[test]
    fn holevo_dominates_on_grid() {
        for a in 0..10 {
            for b in 0..10 {
                for c in 0..10 {
                    let (eta, ns, nb) = (a as f64 / 9.0, b as f64 * 100.0 / 9.0, c as f64 * 10.0 / 9.0);
                    let chi = c_holevo(eta, ns, nb);
                    assert!(chi - c_homodyne(eta, ns, nb) >= -1e-9);
                    assert!(chi - c_heterodyne(eta, ns, nb) >= -1e-9);
                }
            }
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(BosonicICParams::symmetric(0.6, 0.5, 1.0, 1.0, 0.5).is_err());
        assert!(BosonicICParams::new([[0.5, 0.2], [0.1, 0.5]], [1.0; 2], [1.0; 2], [0.5; 2]).is_err());
        assert!(matches!(
            BosonicICParams::symmetric(0.3, 0.6, 1.0, 1.0, 1.5),
            Err(Error::InvalidArgument(_))
        ));
        assert!(BosonicICParams::symmetric(0.3, 0.6, -1.0, 1.0, 0.5).is_err());
        let p = carleial(1.0);
        assert!((p.eta_bar1() - 0.4375).abs() < 1e-15);
    }

    #[test]
    fn carleial_conditions() {
        let low = carleial(1.0);
        assert!(bosonic_vsi(&low, DetectionMode::Homodyne).unwrap().0);
        assert!(bosonic_vsi(&low, DetectionMode::Heterodyne).unwrap().0);
        let high = carleial(100.0);
        assert!(!bosonic_vsi(&high, DetectionMode::Homodyne).unwrap().0);
        assert!(bosonic_vsi(&high, DetectionMode::Heterodyne).unwrap().0);
    }

    #[test]
    fn vsi_needs_cross_coupling() {
        let p = BosonicICParams::new([[0.5, 0.0], [0.0, 0.5]], [1.0; 2], [1.0; 2], [1.0; 2]).unwrap();
        for m in DetectionMode::ALL {
            assert!(!bosonic_vsi(&p, m).unwrap().0);
        }
    }

    #[test]
    fn coherent_conditions_match_link_comparison() {
        // The closed-form ratio tests agree with comparing link terms.
        for &(d, x, ns, nb) in &[(0.3, 0.6, 100.0, 1.0), (1.0 / 16.0, 0.5, 1.0, 1.0), (0.2, 0.2, 3.0, 2.0)] {
            let p = BosonicICParams::symmetric(d, x, ns, nb, 1.0).unwrap();
            for m in [DetectionMode::Homodyne, DetectionMode::Heterodyne] {
                let lhs = m.link(p.power(1, 1), 0.0, p.nu(1));
                let rhs = m.link(p.power(1, 0), p.power(0, 0), p.nu(0));
                assert_eq!(vsi_conditions(&p, m)[0], lhs <= rhs, "{m} {d} {x}");
            }
        }
    }

    #[test]
    fn strong_interference_figure() {
        let p = BosonicICParams::symmetric(0.3, 0.6, 100.0, 1.0, 1.0).unwrap();
        for m in DetectionMode::ALL {
            let (ok, r) = bosonic_si(&p, m).unwrap();
            assert!(ok, "{m}");
            let b: Vec<f64> = r.inequalities().iter().map(|q| q.bound).collect();
            assert!((b[0] - b[1]).abs() < 1e-12);
        }
        // Homodyne closed forms with η̄ = 0.1.
        let (_, r) = bosonic_si(&p, DetectionMode::Homodyne).unwrap();
        let b: Vec<f64> = r.inequalities().iter().map(|q| q.bound).collect();
        assert!((b[0] - 0.5 * (1.0 + 4.0 * 30.0 / 1.2f64).log2()).abs() < 1e-12);
        assert!((b[2] - 0.5 * (1.0 + 4.0 * 90.0 / 1.2f64).log2()).abs() < 1e-12);
    }

    #[test]
    fn si_weaker_than_vsi() {
        for a in 1..20 {
            let d = a as f64 * 0.025;
            for c in 1..20 {
                let x = c as f64 * 0.025;
                let Ok(p) = BosonicICParams::symmetric(d, x, 5.0, 1.0, 1.0) else { continue };
                for m in DetectionMode::ALL {
                    if bosonic_vsi(&p, m).unwrap().0 {
                        assert!(bosonic_si(&p, m).unwrap().0);
                    }
                }
            }
        }
    }

    #[test]
    fn all_personal_hk_treats_interference_as_noise() {
        let p = BosonicICParams::symmetric(0.8, 0.1, 100.0, 1.0, 1.0).unwrap();
        let r = bosonic_hk_region(&p, DetectionMode::Homodyne).unwrap();
        let n1 = (2.0 * p.eta_bar1() * 1.0 + 1.0) / 4.0;
        let want = gamma(0.8 * 100.0 / (0.1 * 100.0 + n1));
        assert!((r.inequalities()[0].bound - want).abs() < 1e-12);
        assert!((r.inequalities()[2].bound - want).abs() < 1e-12);
    }

    #[test]
    fn all_common_hk_sum_matches_si() {
        let p = BosonicICParams::symmetric(0.3, 0.6, 100.0, 1.0, 0.0).unwrap();
        for m in DetectionMode::ALL {
            let hk = bosonic_hk_region(&p, m).unwrap();
            let (_, si) = bosonic_si(&p, m).unwrap();
            let s_hk = hk.support(&[1.0, 1.0]).unwrap().unwrap();
            let s_si = si.inequalities()[2].bound;
            assert!((s_hk - s_si).abs() < 1e-9, "{m}: {s_hk} vs {s_si}");
            for pt in hk.boundary_sample(41).unwrap() {
                assert!(si.contains(&[pt.r1, pt.r2], 1e-9));
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let p = BosonicICParams::symmetric(0.3, 0.6, 100.0, 1.0, 0.25).unwrap();
        let j = p.to_json(Some(DetectionMode::Joint));
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"NS\""));
        let back: BosonicJson = serde_json::from_str(&text).unwrap();
        assert_eq!(BosonicICParams::from_json(&back).unwrap(), p);
        assert_eq!(back.mode, Some(DetectionMode::Joint));
        let short: BosonicJson =
            serde_json::from_str(r#"{"eta":[[0.3,0.6],[0.6,0.3]],"NS":[100],"NB":[1],"mode":"hom"}"#)
                .unwrap();
        assert_eq!(short.mode, Some(DetectionMode::Homodyne));
    }
}
