//! Code distributions: input laws, auxiliary registers and deterministic
//! maps from auxiliaries to channel symbols.
//!
//! Conditional laws are stored as one [`ProbDist`] per conditioning value,
//! e.g. `x1[q]` is `p(x1 | q)` and `x1[q][w1]` is `p(x1 | w1, q)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channels::CqChannel;
use crate::entropic::ProbDist;
use crate::error::{Error, Result};
use crate::random::random_prob_dist;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidDistribution(msg.into())
}

fn check_rows(name: &str, rows: &[ProbDist], count: usize, size: Option<usize>) -> Result<usize> {
    if rows.len() != count {
        return Err(bad(format!("{name}: {} rows, expected {count}", rows.len())));
    }
    let size = size.unwrap_or_else(|| rows.first().map_or(0, ProbDist::len));
    if rows.iter().any(|r| r.len() != size) {
        return Err(bad(format!("{name}: rows must all have {size} symbols")));
    }
    Ok(size)
}

fn check_map(name: &str, f: &[Vec<usize>], rows: usize, cols: usize, range: usize) -> Result<()> {
    if f.len() != rows || f.iter().any(|r| r.len() != cols) {
        return Err(bad(format!("{name}: table must be {rows}x{cols}")));
    }
    if f.iter().flatten().any(|&x| x >= range) {
        return Err(bad(format!("{name}: value outside input alphabet of size {range}")));
    }
    Ok(())
}

/// All distributions on `k` symbols whose weights are multiples of
/// `1/(resolution-1)`, in lexicographic order.
pub fn simplex_grid(k: usize, resolution: usize) -> Vec<ProbDist> {
    assert!(k >= 1, "simplex needs at least one vertex");
    assert!(resolution >= 2, "grid resolution must be at least 2");
    let steps = resolution - 1;
    let mut out = Vec::new();
    let mut counts = vec![0usize; k];
    fn rec(pos: usize, left: usize, counts: &mut Vec<usize>, steps: usize, out: &mut Vec<ProbDist>) {
        if pos + 1 == counts.len() {
            counts[pos] = left;
            let w = counts.iter().map(|&c| c as f64 / steps as f64).collect();
            out.push(ProbDist::new(w).expect("grid point is a distribution"));
            return;
        }
        for c in (0..=left).rev() {
            counts[pos] = c;
            rec(pos + 1, left - c, counts, steps, out);
        }
    }
    rec(0, steps, &mut counts, steps, &mut out);
    out
}

/// Independent inputs given a time-sharing variable `Q`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputDist {
    pub q: ProbDist,
    pub x1: Vec<ProbDist>,
    pub x2: Vec<ProbDist>,
}

impl InputDist {
    /// `|Q| = 1`.
    pub fn product(p1: ProbDist, p2: ProbDist) -> Self {
        InputDist {
            q: ProbDist::point_mass(1, 0),
            x1: vec![p1],
            x2: vec![p2],
        }
    }

    pub fn uniform(ch: &CqChannel) -> Self {
        Self::product(
            ProbDist::uniform(ch.alphabet_size(0)),
            ProbDist::uniform(ch.alphabet_size(1)),
        )
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, ch: &CqChannel, nq: usize) -> Self {
        InputDist {
            q: random_prob_dist(rng, nq),
            x1: (0..nq).map(|_| random_prob_dist(rng, ch.alphabet_size(0))).collect(),
            x2: (0..nq).map(|_| random_prob_dist(rng, ch.alphabet_size(1))).collect(),
        }
    }

    pub fn validate(&self, ch: &CqChannel) -> Result<()> {
        if ch.num_inputs() != 2 {
            return Err(bad("input distribution needs a two-input channel"));
        }
        check_rows("x1", &self.x1, self.q.len(), Some(ch.alphabet_size(0)))?;
        check_rows("x2", &self.x2, self.q.len(), Some(ch.alphabet_size(1)))?;
        Ok(())
    }
}

/// Cardinalities of the auxiliary registers of an HK or CMG code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuxSizes {
    pub q: usize,
    pub u1: usize,
    pub w1: usize,
    pub u2: usize,
    pub w2: usize,
}

impl AuxSizes {
    /// `|Q| = 2` and each auxiliary as large as its input alphabet.
    pub fn default_for(ch: &CqChannel) -> Self {
        let (n1, n2) = (ch.alphabet_size(0), ch.alphabet_size(1));
        AuxSizes {
            q: 2,
            u1: n1,
            w1: n1,
            u2: n2,
            w2: n2,
        }
    }
}

/// Which auxiliary register carries a sender's input in a degenerate HK code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Personal,
    Common,
}

/// `p(q) p(u1|q) p(w1|q) p(u2|q) p(w2|q)` with `x_i = f_i(u_i, w_i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HkDist {
    pub q: ProbDist,
    pub u1: Vec<ProbDist>,
    pub w1: Vec<ProbDist>,
    pub u2: Vec<ProbDist>,
    pub w2: Vec<ProbDist>,
    /// `f1[u1][w1]`.
    pub f1: Vec<Vec<usize>>,
    /// `f2[u2][w2]`.
    pub f2: Vec<Vec<usize>>,
}

impl HkDist {
    /// Degenerate code with `|Q| = 1` where each input rides entirely on
    /// one auxiliary and the other auxiliary is a single symbol.
    pub fn from_roles(p1: ProbDist, role1: Role, p2: ProbDist, role2: Role) -> Self {
        let side = |p: ProbDist, role: Role| -> (ProbDist, ProbDist, Vec<Vec<usize>>) {
            let n = p.len();
            let one = ProbDist::point_mass(1, 0);
            match role {
                Role::Personal => (p, one, (0..n).map(|u| vec![u]).collect()),
                Role::Common => (one, p, vec![(0..n).collect()]),
            }
        };
        let (u1, w1, f1) = side(p1, role1);
        let (u2, w2, f2) = side(p2, role2);
        HkDist {
            q: ProbDist::point_mass(1, 0),
            u1: vec![u1],
            w1: vec![w1],
            u2: vec![u2],
            w2: vec![w2],
            f1,
            f2,
        }
    }

    /// `U_i = X_i`, trivial `W_i` and `Q`.
    pub fn personal_only(p1: ProbDist, p2: ProbDist) -> Self {
        Self::from_roles(p1, Role::Personal, p2, Role::Personal)
    }

    /// `W_i = X_i`, trivial `U_i` and `Q`.
    pub fn common_only(p1: ProbDist, p2: ProbDist) -> Self {
        Self::from_roles(p1, Role::Common, p2, Role::Common)
    }

    /// Random laws and random maps onto the input alphabets.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, ch: &CqChannel, sizes: AuxSizes) -> Self {
        let (n1, n2) = (ch.alphabet_size(0), ch.alphabet_size(1));
        let rows = |rng: &mut R, n: usize| -> Vec<ProbDist> {
            (0..sizes.q).map(|_| random_prob_dist(rng, n)).collect()
        };
        let q = random_prob_dist(rng, sizes.q);
        let u1 = rows(rng, sizes.u1);
        let w1 = rows(rng, sizes.w1);
        let u2 = rows(rng, sizes.u2);
        let w2 = rows(rng, sizes.w2);
        let f1 = (0..sizes.u1)
            .map(|_| (0..sizes.w1).map(|_| rng.random_range(0..n1)).collect())
            .collect();
        let f2 = (0..sizes.u2)
            .map(|_| (0..sizes.w2).map(|_| rng.random_range(0..n2)).collect())
            .collect();
        HkDist {
            q,
            u1,
            w1,
            u2,
            w2,
            f1,
            f2,
        }
    }

    pub fn sizes(&self) -> AuxSizes {
        AuxSizes {
            q: self.q.len(),
            u1: self.u1[0].len(),
            w1: self.w1[0].len(),
            u2: self.u2[0].len(),
            w2: self.w2[0].len(),
        }
    }

    pub fn validate(&self, ch: &CqChannel) -> Result<()> {
        if ch.num_inputs() != 2 {
            return Err(bad("HK distribution needs a two-input channel"));
        }
        let nq = self.q.len();
        let u1 = check_rows("u1", &self.u1, nq, None)?;
        let w1 = check_rows("w1", &self.w1, nq, None)?;
        let u2 = check_rows("u2", &self.u2, nq, None)?;
        let w2 = check_rows("w2", &self.w2, nq, None)?;
        check_map("f1", &self.f1, u1, w1, ch.alphabet_size(0))?;
        check_map("f2", &self.f2, u2, w2, ch.alphabet_size(1))?;
        Ok(())
    }

    /// `p(x1 | q)` and `p(x2 | q)` induced by the maps.
    pub fn input_dist(&self, ch: &CqChannel) -> InputDist {
        let induce = |u: &ProbDist, w: &ProbDist, f: &[Vec<usize>], n: usize| {
            let mut p = vec![0.0; n];
            for (a, row) in f.iter().enumerate() {
                for (b, &x) in row.iter().enumerate() {
                    p[x] += u.get(a) * w.get(b);
                }
            }
            ProbDist::normalized(p).expect("induced law has unit mass")
        };
        let nq = self.q.len();
        InputDist {
            q: self.q.clone(),
            x1: (0..nq)
                .map(|q| induce(&self.u1[q], &self.w1[q], &self.f1, ch.alphabet_size(0)))
                .collect(),
            x2: (0..nq)
                .map(|q| induce(&self.u2[q], &self.w2[q], &self.f2, ch.alphabet_size(1)))
                .collect(),
        }
    }
}

/// `p(q) p(w1|q) p(x1|w1,q) p(w2|q) p(x2|w2,q)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CmgDist {
    pub q: ProbDist,
    pub w1: Vec<ProbDist>,
    pub x1: Vec<Vec<ProbDist>>,
    pub w2: Vec<ProbDist>,
    pub x2: Vec<Vec<ProbDist>>,
}

impl CmgDist {
    /// Trivial `Q`, `W1`, `W2`.
    pub fn product(p1: ProbDist, p2: ProbDist) -> Self {
        let one = ProbDist::point_mass(1, 0);
        CmgDist {
            q: one.clone(),
            w1: vec![one.clone()],
            x1: vec![vec![p1]],
            w2: vec![one],
            x2: vec![vec![p2]],
        }
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, ch: &CqChannel, sizes: AuxSizes) -> Self {
        let (n1, n2) = (ch.alphabet_size(0), ch.alphabet_size(1));
        let q = random_prob_dist(rng, sizes.q);
        let w1 = (0..sizes.q).map(|_| random_prob_dist(rng, sizes.w1)).collect();
        let x1 = (0..sizes.q)
            .map(|_| (0..sizes.w1).map(|_| random_prob_dist(rng, n1)).collect())
            .collect();
        let w2 = (0..sizes.q).map(|_| random_prob_dist(rng, sizes.w2)).collect();
        let x2 = (0..sizes.q)
            .map(|_| (0..sizes.w2).map(|_| random_prob_dist(rng, n2)).collect())
            .collect();
        CmgDist { q, w1, x1, w2, x2 }
    }

    /// The superposition law matched to an HK code:
    /// `p(x1|w1,q) = Σ_{u1} p(u1|q) [f1(u1,w1) = x1]`.
    pub fn from_hk(hk: &HkDist, ch: &CqChannel) -> Result<Self> {
        hk.validate(ch)?;
        let nq = hk.q.len();
        let cond = |u: &ProbDist, f: &[Vec<usize>], nw: usize, n: usize| -> Vec<ProbDist> {
            (0..nw)
                .map(|w| {
                    let mut p = vec![0.0; n];
                    for (a, row) in f.iter().enumerate() {
                        p[row[w]] += u.get(a);
                    }
                    ProbDist::normalized(p).expect("conditional law has unit mass")
                })
                .collect()
        };
        let sz = hk.sizes();
        Ok(CmgDist {
            q: hk.q.clone(),
            w1: hk.w1.clone(),
            x1: (0..nq)
                .map(|q| cond(&hk.u1[q], &hk.f1, sz.w1, ch.alphabet_size(0)))
                .collect(),
            w2: hk.w2.clone(),
            x2: (0..nq)
                .map(|q| cond(&hk.u2[q], &hk.f2, sz.w2, ch.alphabet_size(1)))
                .collect(),
        })
    }

    pub fn validate(&self, ch: &CqChannel) -> Result<()> {
        if ch.num_inputs() != 2 {
            return Err(bad("CMG distribution needs a two-input channel"));
        }
        let nq = self.q.len();
        let w1 = check_rows("w1", &self.w1, nq, None)?;
        let w2 = check_rows("w2", &self.w2, nq, None)?;
        if self.x1.len() != nq || self.x2.len() != nq {
            return Err(bad("x1/x2 need one block per value of q"));
        }
        for q in 0..nq {
            check_rows("x1", &self.x1[q], w1, Some(ch.alphabet_size(0)))?;
            check_rows("x2", &self.x2[q], w2, Some(ch.alphabet_size(1)))?;
        }
        Ok(())
    }
}

/// `p(w) p(x|w)` for a broadcast channel with input `X`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuperpositionDist {
    pub w: ProbDist,
    pub x: Vec<ProbDist>,
}

impl SuperpositionDist {
    pub fn validate(&self, ch: &CqChannel) -> Result<()> {
        if ch.num_inputs() != 1 {
            return Err(bad("superposition code needs a single-input channel"));
        }
        check_rows("x", &self.x, self.w.len(), Some(ch.alphabet_size(0)))?;
        Ok(())
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, ch: &CqChannel, nw: usize) -> Self {
        SuperpositionDist {
            w: random_prob_dist(rng, nw),
            x: (0..nw).map(|_| random_prob_dist(rng, ch.alphabet_size(0))).collect(),
        }
    }
}

/// Joint `p(u1, u2)` (row-major, `u1 * n2 + u2`) with `x = f(u1, u2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MartonDist {
    pub n1: usize,
    pub n2: usize,
    pub joint: ProbDist,
    /// `f[u1][u2]`.
    pub f: Vec<Vec<usize>>,
}

impl MartonDist {
    pub fn validate(&self, ch: &CqChannel) -> Result<()> {
        if ch.num_inputs() != 1 {
            return Err(bad("Marton code needs a single-input channel"));
        }
        if self.joint.len() != self.n1 * self.n2 {
            return Err(bad(format!(
                "joint law has {} entries, expected {}",
                self.joint.len(),
                self.n1 * self.n2
            )));
        }
        check_map("f", &self.f, self.n1, self.n2, ch.alphabet_size(0))
    }

    pub fn p(&self, u1: usize, u2: usize) -> f64 {
        self.joint.get(u1 * self.n2 + u2)
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, ch: &CqChannel, n1: usize, n2: usize) -> Self {
        let nx = ch.alphabet_size(0);
        MartonDist {
            n1,
            n2,
            joint: random_prob_dist(rng, n1 * n2),
            f: (0..n1)
                .map(|_| (0..n2).map(|_| rng.random_range(0..nx)).collect())
                .collect(),
        }
    }
}

/// Joint `p(u, x, x1)` flattened as `(u * nx + x) * nx1 + x1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelayDist {
    pub nu: usize,
    pub nx: usize,
    pub nx1: usize,
    pub joint: ProbDist,
}

impl RelayDist {
    pub fn p(&self, u: usize, x: usize, x1: usize) -> f64 {
        self.joint.get((u * self.nx + x) * self.nx1 + x1)
    }

    /// `U = X` under `p(x, x1)` (row-major over `(x, x1)`).
    pub fn decode_forward(nx: usize, nx1: usize, pxx1: &ProbDist) -> Result<Self> {
        if pxx1.len() != nx * nx1 {
            return Err(bad("p(x, x1) has the wrong number of entries"));
        }
        let mut w = vec![0.0; nx * nx * nx1];
        for x in 0..nx {
            for x1 in 0..nx1 {
                w[(x * nx + x) * nx1 + x1] = pxx1.get(x * nx1 + x1);
            }
        }
        Ok(RelayDist {
            nu: nx,
            nx,
            nx1,
            joint: ProbDist::new(w)?,
        })
    }

    /// Trivial `U` under `p(x, x1)`.
    pub fn trivial_u(nx: usize, nx1: usize, pxx1: &ProbDist) -> Result<Self> {
        if pxx1.len() != nx * nx1 {
            return Err(bad("p(x, x1) has the wrong number of entries"));
        }
        Ok(RelayDist {
            nu: 1,
            nx,
            nx1,
            joint: pxx1.clone(),
        })
    }

    pub fn validate(&self, ch: &CqChannel) -> Result<()> {
        if ch.num_inputs() != 2 || ch.alphabet_size(0) != self.nx || ch.alphabet_size(1) != self.nx1
        {
            return Err(bad(format!(
                "relay law over {}x{} inputs does not fit the channel",
                self.nx, self.nx1
            )));
        }
        if self.joint.len() != self.nu * self.nx * self.nx1 {
            return Err(bad("joint law has the wrong number of entries"));
        }
        Ok(())
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, ch: &CqChannel, nu: usize) -> Self {
        let (nx, nx1) = (ch.alphabet_size(0), ch.alphabet_size(1));
        RelayDist {
            nu,
            nx,
            nx1,
            joint: random_prob_dist(rng, nu * nx * nx1),
        }
    }
}

/// Any supported code distribution, tagged by `"kind"` in JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CodeDistribution {
    P2p { p: ProbDist },
    Mac { p1: ProbDist, p2: ProbDist },
    CodedTimeShare(InputDist),
    Hk(HkDist),
    Cmg(CmgDist),
    Superposition(SuperpositionDist),
    Marton(MartonDist),
    RelayPdf(RelayDist),
}

impl CodeDistribution {
    pub fn kind(&self) -> &'static str {
        match self {
            CodeDistribution::P2p { .. } => "p2p",
            CodeDistribution::Mac { .. } => "mac",
            CodeDistribution::CodedTimeShare(_) => "coded-time-share",
            CodeDistribution::Hk(_) => "hk",
            CodeDistribution::Cmg(_) => "cmg",
            CodeDistribution::Superposition(_) => "superposition",
            CodeDistribution::Marton(_) => "marton",
            CodeDistribution::RelayPdf(_) => "relay-pdf",
        }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Schema(format!("distribution: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::builtin;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn grid_sizes() {
        assert_eq!(simplex_grid(1, 5).len(), 1);
        assert_eq!(simplex_grid(2, 21).len(), 21);
        assert_eq!(simplex_grid(3, 5).len(), 15);
        let g = simplex_grid(2, 3);
        assert_eq!(g[0].weights(), &[1.0, 0.0]);
        assert_eq!(g[1].weights(), &[0.5, 0.5]);
    }

    #[test]
    fn matched_cmg_induces_same_inputs() {
        let ch = builtin("bb84_ic", &[]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let hk = HkDist::random(&mut rng, &ch, AuxSizes::default_for(&ch));
        hk.validate(&ch).unwrap();
        let cmg = CmgDist::from_hk(&hk, &ch).unwrap();
        cmg.validate(&ch).unwrap();
        let inputs = hk.input_dist(&ch);
        for q in 0..hk.q.len() {
            for x in 0..2 {
                let via: f64 = (0..2).map(|w| cmg.w1[q].get(w) * cmg.x1[q][w].get(x)).sum();
                assert!((via - inputs.x1[q].get(x)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn validation_catches_shape_errors() {
        let ch = builtin("bb84_ic", &[]).unwrap();
        let mut hk = HkDist::personal_only(ProbDist::uniform(2), ProbDist::uniform(2));
        hk.validate(&ch).unwrap();
        hk.f1[0][0] = 5;
        assert!(hk.validate(&ch).is_err());
        let bad_inputs = InputDist::product(ProbDist::uniform(3), ProbDist::uniform(2));
        assert!(bad_inputs.validate(&ch).is_err());
    }

    #[test]
    fn json_tagging() {
        let d = CodeDistribution::Mac {
            p1: ProbDist::uniform(2),
            p2: ProbDist::point_mass(2, 0),
        };
        let text = serde_json::to_string(&d).unwrap();
        assert!(text.contains("\"kind\":\"mac\""));
        assert_eq!(CodeDistribution::from_json_str(&text).unwrap(), d);
        assert!(CodeDistribution::from_json_str(r#"{"kind":"mac","p1":[0.5,0.6],"p2":[1]}"#)
            .is_err());
    }
}
