//! Rate regions as finite systems of linear inequalities over the
//! nonnegative orthant.
//!
//! Projection onto net rates uses Fourier-Motzkin elimination (with exact
//! substitution through equality constraints where one is available),
//! followed by LP-based redundancy pruning after every eliminated variable.

use microlp::{ComparisonOp, OptimizationDirection, Problem};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::CqChannel;
use crate::error::{Error, Result};
use crate::network::{cmg_quantities, CmgDist};

/// Inclusive tolerance used on region boundaries.
pub const BOUNDARY_TOL: f64 = 1e-7;

/// Slack allowed when deciding an inequality is implied by the others.
pub const REDUNDANCY_TOL: f64 = 1e-9;

/// Bounds in `[-CLAMP_TOL, 0)` are treated as roundoff and set to zero.
pub const CLAMP_TOL: f64 = 1e-9;

const COEFF_EPS: f64 = 1e-12;

/// `coeffs · R ≤ bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct Inequality {
    pub coeffs: Vec<f64>,
    pub bound: f64,
}

impl Inequality {
    pub fn new(coeffs: Vec<f64>, bound: f64) -> Self {
        Inequality { coeffs, bound }
    }

    pub fn eval(&self, point: &[f64]) -> f64 {
        self.coeffs.iter().zip(point).map(|(a, x)| a * x).sum()
    }

    fn scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, a| m.max(a.abs()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HalfspaceRegion {
    coords: Vec<String>,
    ineqs: Vec<Inequality>,
}

impl HalfspaceRegion {
    pub fn new(coords: Vec<String>, ineqs: Vec<Inequality>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidRegion("no coordinates".into()));
        }
        let mut sorted = coords.clone();
        sorted.sort();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidRegion("repeated coordinate name".into()));
        }
        let mut out = Vec::with_capacity(ineqs.len());
        for (k, mut q) in ineqs.into_iter().enumerate() {
            if q.coeffs.len() != coords.len() {
                return Err(Error::InvalidRegion(format!(
                    "inequality {k} has {} coefficients for {} coordinates",
                    q.coeffs.len(),
                    coords.len()
                )));
            }
            if !q.bound.is_finite() || q.coeffs.iter().any(|a| !a.is_finite()) {
                return Err(Error::InvalidRegion(format!("inequality {k} is not finite")));
            }
            if q.bound < 0.0 {
                if q.bound < -CLAMP_TOL {
                    return Err(Error::InvalidRegion(format!(
                        "inequality {k} has negative bound {}",
                        q.bound
                    )));
                }
                q.bound = 0.0;
            }
            out.push(q);
        }
        Ok(HalfspaceRegion { coords, ineqs: out })
    }

    /// Convenience constructor from `(coeffs, bound)` pairs.
    pub fn from_rows(coords: &[&str], rows: &[(&[f64], f64)]) -> Result<Self> {
        Self::new(
            coords.iter().map(|s| s.to_string()).collect(),
            rows.iter()
                .map(|(c, b)| Inequality::new(c.to_vec(), *b))
                .collect(),
        )
    }

    /// The box `0 ≤ R_i ≤ upper_i`.
    pub fn rectangle(coords: &[&str], upper: &[f64]) -> Result<Self> {
        let n = coords.len();
        let rows = (0..n)
            .map(|i| {
                let mut c = vec![0.0; n];
                c[i] = 1.0;
                Inequality::new(c, upper[i])
            })
            .collect();
        Self::new(coords.iter().map(|s| s.to_string()).collect(), rows)
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.ineqs
    }

    /// Membership with tolerance `tol` on every inequality and on `R ≥ 0`.
    pub fn contains(&self, point: &[f64], tol: f64) -> bool {
        point.len() == self.dim()
            && point.iter().all(|&x| x >= -tol)
            && self.ineqs.iter().all(|q| q.eval(point) <= q.bound + tol)
    }

    fn aligned_to(&self, other: &HalfspaceRegion) -> Result<Vec<Inequality>> {
        let perm: Vec<usize> = self
            .coords
            .iter()
            .map(|n| {
                other
                    .coords
                    .iter()
                    .position(|m| m == n)
                    .ok_or_else(|| Error::InvalidRegion(format!("coordinate `{n}` missing")))
            })
            .collect::<Result<_>>()?;
        if other.dim() != self.dim() {
            return Err(Error::InvalidRegion("coordinate sets differ".into()));
        }
        Ok(other
            .ineqs
            .iter()
            .map(|q| Inequality::new(perm.iter().map(|&j| q.coeffs[j]).collect(), q.bound))
            .collect())
    }

    /// Intersection; `other`'s coordinates are matched by name.
    pub fn intersect(&self, other: &HalfspaceRegion) -> Result<HalfspaceRegion> {
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(self.aligned_to(other)?);
        HalfspaceRegion::new(self.coords.clone(), ineqs)
    }

    /// `max c·R` over the region, or `None` if unbounded.
    pub fn support(&self, c: &[f64]) -> Result<Option<f64>> {
        support_lp(&self.ineqs, self.dim(), c)
    }

    /// Drops inequalities implied by the others and by `R ≥ 0`.
    pub fn prune(&self) -> Result<HalfspaceRegion> {
        let ineqs = prune(dedup(self.ineqs.clone()), self.dim())?;
        HalfspaceRegion::new(self.coords.clone(), ineqs)
    }

    /// Image of the region under `q = map · R`.
    ///
    /// `map` has one row per new coordinate and nonnegative entries.
    pub fn fm_project(&self, map: &[Vec<f64>], names: &[&str]) -> Result<HalfspaceRegion> {
        let n = self.dim();
        let k = map.len();
        if names.len() != k {
            return Err(Error::InvalidArgument(format!(
                "{k} map rows but {} coordinate names",
                names.len()
            )));
        }
        for (i, row) in map.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "map row {i} has {} entries for {n} coordinates",
                    row.len()
                )));
            }
            if row.iter().any(|a| !a.is_finite() || *a < 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "map row {i} must be finite and nonnegative"
                )));
            }
        }
        // Variables: the n old coordinates followed by the k new ones.
        let width = n + k;
        let lift = |c: &[f64]| -> Vec<f64> {
            let mut v = c.to_vec();
            v.resize(width, 0.0);
            v
        };
        let mut ineqs: Vec<Inequality> = self
            .ineqs
            .iter()
            .map(|q| Inequality::new(lift(&q.coeffs), q.bound))
            .collect();
        // q_i - map_i · R = 0.
        let mut eqs: Vec<Vec<f64>> = map
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut v: Vec<f64> = row.iter().map(|a| -a).collect();
                v.resize(width, 0.0);
                v[n + i] = 1.0;
                v
            })
            .collect();

        for j in 0..n {
            let mut nonneg = vec![0.0; width];
            nonneg[j] = -1.0;
            ineqs.push(Inequality::new(nonneg, 0.0));

            let pivot = eqs
                .iter()
                .enumerate()
                .filter(|(_, e)| e[j].abs() > COEFF_EPS)
                .max_by(|a, b| a.1[j].abs().total_cmp(&b.1[j].abs()))
                .map(|(i, _)| i);
            if let Some(p) = pivot {
                let e = eqs.swap_remove(p);
                let substitute = |v: &mut Vec<f64>| {
                    let f = v[j] / e[j];
                    if f != 0.0 {
                        for (a, b) in v.iter_mut().zip(&e) {
                            *a -= f * b;
                        }
                    }
                    v[j] = 0.0;
                };
                for q in ineqs.iter_mut() {
                    substitute(&mut q.coeffs);
                }
                for other in eqs.iter_mut() {
                    substitute(other);
                }
            } else {
                ineqs = fm_eliminate(ineqs, j);
            }
            for q in ineqs.iter_mut() {
                for a in q.coeffs.iter_mut() {
                    if a.abs() <= COEFF_EPS {
                        *a = 0.0;
                    }
                }
            }
            ineqs = drop_trivial(ineqs)?;
            ineqs = prune(dedup(ineqs), width)?;
        }

        let mut out: Vec<Inequality> = ineqs
            .into_iter()
            .map(|q| Inequality::new(q.coeffs[n..].to_vec(), q.bound))
            .collect();
        for e in eqs {
            let c: Vec<f64> = e[n..].to_vec();
            out.push(Inequality::new(c.iter().map(|a| -a).collect(), 0.0));
            out.push(Inequality::new(c, 0.0));
        }
        let out = prune(dedup(drop_trivial(out)?), k)?
            .into_iter()
            .map(normalize_smallest)
            .collect();
        HalfspaceRegion::new(names.iter().map(|s| s.to_string()).collect(), out)
    }

    /// Radial boundary samples at `n_angles` directions spanning `[0, π/2]`.
    pub fn boundary_sample(&self, n_angles: usize) -> Result<Vec<BoundaryPoint>> {
        if self.dim() != 2 {
            return Err(Error::InvalidRegion(format!(
                "boundary sampling needs 2 coordinates, got {}",
                self.dim()
            )));
        }
        angles(n_angles)?
            .into_iter()
            .map(|theta| {
                let t = self.radial(theta)?;
                Ok(BoundaryPoint::new(theta, t))
            })
            .collect()
    }

    /// Largest `t` with `t (cos θ, sin θ)` in the region.
    pub fn radial(&self, theta: f64) -> Result<f64> {
        let u = [theta.cos(), theta.sin()];
        let mut best = f64::INFINITY;
        for q in &self.ineqs {
            let s = q.eval(&u);
            if s > COEFF_EPS {
                best = best.min(q.bound / s);
            }
        }
        if best.is_infinite() {
            return Err(Error::InvalidRegion(format!(
                "region is unbounded in direction θ = {theta}"
            )));
        }
        Ok(best)
    }

    pub fn to_json(&self) -> RegionJson {
        RegionJson {
            coords: self.coords.clone(),
            ineqs: self
                .ineqs
                .iter()
                .map(|q| IneqJson {
                    c: q.coeffs.clone(),
                    b: q.bound,
                })
                .collect(),
        }
    }

    pub fn from_json(json: &RegionJson) -> Result<Self> {
        Self::new(
            json.coords.clone(),
            json.ineqs
                .iter()
                .map(|q| Inequality::new(q.c.clone(), q.b))
                .collect(),
        )
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("region JSON serializes")
    }
}

fn angles(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidArgument(
            "boundary sampling needs at least 2 angles".into(),
        ));
    }
    Ok((0..n)
        .map(|k| std::f64::consts::FRAC_PI_2 * k as f64 / (n - 1) as f64)
        .collect())
}

fn fm_eliminate(ineqs: Vec<Inequality>, j: usize) -> Vec<Inequality> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for q in ineqs {
        if q.coeffs[j] > COEFF_EPS {
            pos.push(q);
        } else if q.coeffs[j] < -COEFF_EPS {
            neg.push(q);
        } else {
            out.push(q);
        }
    }
    for p in &pos {
        for m in &neg {
            let (a, b) = (p.coeffs[j], -m.coeffs[j]);
            let mut coeffs: Vec<f64> = p
                .coeffs
                .iter()
                .zip(&m.coeffs)
                .map(|(x, y)| (b * x + a * y) / (a + b))
                .collect();
            coeffs[j] = 0.0;
            out.push(Inequality::new(coeffs, (b * p.bound + a * m.bound) / (a + b)));
        }
    }
    out
}

/// Removes `0 ≤ b` rows; a violated one means the system is infeasible.
fn drop_trivial(ineqs: Vec<Inequality>) -> Result<Vec<Inequality>> {
    let mut out = Vec::with_capacity(ineqs.len());
    for q in ineqs {
        if q.scale() <= COEFF_EPS {
            if q.bound < -CLAMP_TOL {
                return Err(Error::EmptyRegion);
            }
        } else {
            out.push(q);
        }
    }
    Ok(out)
}

/// Merges parallel rows, keeping the tightest bound.
fn dedup(ineqs: Vec<Inequality>) -> Vec<Inequality> {
    let mut out: Vec<Inequality> = Vec::with_capacity(ineqs.len());
    'next: for q in ineqs {
        let s = q.scale();
        if s == 0.0 {
            out.push(q);
            continue;
        }
        for r in out.iter_mut() {
            let t = r.scale();
            if t == 0.0 {
                continue;
            }
            let same = q
                .coeffs
                .iter()
                .zip(&r.coeffs)
                .all(|(a, b)| (a / s - b / t).abs() <= 1e-12);
            if same {
                if q.bound / s < r.bound / t {
                    *r = q;
                }
                continue 'next;
            }
        }
        out.push(q);
    }
    out
}

fn lp_error(e: microlp::Error) -> Error {
    Error::Lp(format!("{e:?}"))
}

fn support_lp(ineqs: &[Inequality], n: usize, c: &[f64]) -> Result<Option<f64>> {
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let vars: Vec<_> = c.iter().map(|&a| lp.add_var(a, (0.0, f64::INFINITY))).collect();
    debug_assert_eq!(vars.len(), n);
    for q in ineqs {
        let expr: Vec<_> = vars
            .iter()
            .zip(&q.coeffs)
            .filter(|(_, a)| **a != 0.0)
            .map(|(v, a)| (*v, *a))
            .collect();
        if !expr.is_empty() {
            lp.add_constraint(expr, ComparisonOp::Le, q.bound);
        }
    }
    match lp.solve() {
        Ok(outcome) => match outcome.solution() {
            Some(s) => Ok(Some(s.objective())),
            None => Err(Error::Lp("solver interrupted".into())),
        },
        Err(microlp::Error::Unbounded) => Ok(None),
        Err(e) => Err(lp_error(e)),
    }
}

/// Sequentially drops rows whose LP maximum over the rest stays within
/// `REDUNDANCY_TOL` of their bound.
fn prune(mut ineqs: Vec<Inequality>, n: usize) -> Result<Vec<Inequality>> {
    let mut i = 0;
    while i < ineqs.len() {
        let q = ineqs.remove(i);
        // Rows that only push toward the origin are implied by R ≥ 0.
        if q.coeffs.iter().all(|&a| a <= 0.0) && q.bound >= 0.0 {
            continue;
        }
        match support_lp(&ineqs, n, &q.coeffs)? {
            Some(v) if v <= q.bound + REDUNDANCY_TOL => {}
            _ => {
                ineqs.insert(i, q);
                i += 1;
            }
        }
    }
    Ok(ineqs)
}

/// Whether some `R` in `region` has `map · R` within `tol` of `q`.
pub fn preimage_feasible(
    region: &HalfspaceRegion,
    map: &[Vec<f64>],
    q: &[f64],
    tol: f64,
) -> Result<bool> {
    if map.len() != q.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} map rows for a point of length {}",
            map.len(),
            q.len()
        )));
    }
    let mut lp = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<_> = (0..region.dim())
        .map(|_| lp.add_var(0.0, (0.0, f64::INFINITY)))
        .collect();
    for ineq in region.inequalities() {
        let expr: Vec<_> = vars.iter().copied().zip(ineq.coeffs.iter().copied()).collect();
        lp.add_constraint(expr, ComparisonOp::Le, ineq.bound + tol);
    }
    for (row, &target) in map.iter().zip(q) {
        let expr: Vec<_> = vars.iter().copied().zip(row.iter().copied()).collect();
        lp.add_constraint(expr.clone(), ComparisonOp::Le, target + tol);
        lp.add_constraint(expr, ComparisonOp::Ge, target - tol);
    }
    match lp.solve() {
        Ok(_) => Ok(true),
        Err(microlp::Error::Infeasible) => Ok(false),
        Err(e) => Err(lp_error(e)),
    }
}

pub fn contains(region: &HalfspaceRegion, point: &[f64], tol: f64) -> bool {
    region.contains(point, tol)
}

pub fn intersect(a: &HalfspaceRegion, b: &HalfspaceRegion) -> Result<HalfspaceRegion> {
    a.intersect(b)
}

/// Scales a row so its smallest nonzero coefficient has magnitude 1.
fn normalize_smallest(q: Inequality) -> Inequality {
    let m = q
        .coeffs
        .iter()
        .map(|a| a.abs())
        .filter(|a| *a > COEFF_EPS)
        .fold(f64::INFINITY, f64::min);
    if !m.is_finite() {
        return q;
    }
    Inequality::new(q.coeffs.iter().map(|a| a / m).collect(), q.bound / m)
}

pub fn fm_project(
    region: &HalfspaceRegion,
    map: &[Vec<f64>],
    names: &[&str],
) -> Result<HalfspaceRegion> {
    region.fm_project(map, names)
}

pub fn boundary_sample(region: &HalfspaceRegion, n_angles: usize) -> Result<Vec<BoundaryPoint>> {
    region.boundary_sample(n_angles)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub theta: f64,
    pub r1: f64,
    pub r2: f64,
}

impl BoundaryPoint {
    fn new(theta: f64, t: f64) -> Self {
        BoundaryPoint {
            theta,
            r1: t * theta.cos(),
            r2: t * theta.sin(),
        }
    }
}

/// `theta,R1,R2` rows with a header line.
pub fn boundary_csv(points: &[BoundaryPoint]) -> String {
    let mut s = String::from("theta,R1,R2\n");
    for p in points {
        s.push_str(&format!("{},{},{}\n", p.theta, p.r1, p.r2));
    }
    s
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IneqJson {
    pub c: Vec<f64>,
    pub b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionJson {
    pub coords: Vec<String>,
    pub ineqs: Vec<IneqJson>,
}

/// Fraction of a `grid × grid` lattice on which two planar regions agree
/// about membership at tolerance `tol`. The lattice spans `[0, R1max] ×
/// [0, R2max]` where each maximum is the larger of the two regions' extents
/// (1 if both are degenerate).
pub fn membership_agreement(
    a: &HalfspaceRegion,
    b: &HalfspaceRegion,
    grid: usize,
    tol: f64,
) -> Result<f64> {
    if a.dim() != 2 || a.coords() != b.coords() {
        return Err(Error::InvalidRegion(
            "membership comparison needs two planar regions on the same coordinates".into(),
        ));
    }
    if grid < 2 {
        return Err(Error::InvalidArgument("grid must have at least 2 points per side".into()));
    }
    let mut extent = [0.0f64; 2];
    for (k, dir) in [[1.0, 0.0], [0.0, 1.0]].iter().enumerate() {
        for r in [a, b] {
            let s = r.support(dir)?.ok_or_else(|| Error::InvalidRegion("region is unbounded".into()))?;
            extent[k] = extent[k].max(s);
        }
        if extent[k] <= 0.0 {
            extent[k] = 1.0;
        }
    }
    let step = |k: usize, i: usize| extent[k] * i as f64 / (grid - 1) as f64;
    let mut agree = 0usize;
    for i in 0..grid {
        for j in 0..grid {
            let pt = [step(0, i), step(1, j)];
            if a.contains(&pt, tol) == b.contains(&pt, tol) {
                agree += 1;
            }
        }
    }
    Ok(agree as f64 / (grid * grid) as f64)
}

/// A finite union of regions over the same coordinates.
#[derive(Debug, Clone, Default)]
pub struct RegionUnion {
    members: Vec<HalfspaceRegion>,
}

impl RegionUnion {
    pub fn new(members: Vec<HalfspaceRegion>) -> Result<Self> {
        if let Some(first) = members.first() {
            for m in &members[1..] {
                if m.coords() != first.coords() {
                    return Err(Error::InvalidRegion(
                        "union members have different coordinates".into(),
                    ));
                }
            }
        }
        Ok(RegionUnion { members })
    }

    pub fn members(&self) -> &[HalfspaceRegion] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn push(&mut self, r: HalfspaceRegion) -> Result<()> {
        if let Some(first) = self.members.first() {
            if first.coords() != r.coords() {
                return Err(Error::InvalidRegion(
                    "union members have different coordinates".into(),
                ));
            }
        }
        self.members.push(r);
        Ok(())
    }

    pub fn contains(&self, point: &[f64], tol: f64) -> bool {
        self.members.iter().any(|m| m.contains(point, tol))
    }

    /// Pointwise maximum of the members' radial functions.
    pub fn boundary_sample(&self, n_angles: usize) -> Result<Vec<BoundaryPoint>> {
        if self.members.is_empty() {
            return Err(Error::EmptyRegion);
        }
        angles(n_angles)?
            .into_par_iter()
            .map(|theta| {
                let mut best = 0.0f64;
                for m in &self.members {
                    best = best.max(m.radial(theta)?);
                }
                Ok(BoundaryPoint::new(theta, best))
            })
            .collect()
    }
}

/// One failed polymatroid inequality, `lhs ≤ rhs` with `slack = rhs - lhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub receiver: usize,
    pub inequality: &'static str,
    pub slack: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolymatroidReport {
    pub holds: bool,
    /// Smallest slack over all checked inequalities.
    pub min_slack: f64,
    pub violations: Vec<Violation>,
}

impl PolymatroidReport {
    pub fn first_violation(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Checks `a ≤ b ≤ d`, `a ≤ c ≤ d` and `a + d ≤ b + c` for one receiver's
/// four rate quantities.
pub fn check_polymatroid_values(
    receiver: usize,
    [a, b, c, d]: [f64; 4],
    tol: f64,
) -> PolymatroidReport {
    let checks: [(&'static str, f64); 5] = [
        ("a <= b", b - a),
        ("b <= d", d - b),
        ("a <= c", c - a),
        ("c <= d", d - c),
        ("a + d <= b + c", b + c - a - d),
    ];
    let min_slack = checks.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
    let violations: Vec<Violation> = checks
        .iter()
        .filter(|(_, s)| *s < -tol)
        .map(|&(name, slack)| Violation {
            receiver,
            inequality: name,
            slack,
        })
        .collect();
    PolymatroidReport {
        holds: violations.is_empty(),
        min_slack,
        violations,
    }
}

/// Evaluates the CMG quantities for both receivers and checks the
/// polymatroid inequalities with tolerance `tol`.
pub fn polymatroid_check(ch: &CqChannel, dist: &CmgDist, tol: f64) -> Result<PolymatroidReport> {
    let q = cmg_quantities(ch, dist)?;
    let r1 = check_polymatroid_values(1, [q.a1, q.b1, q.c1, q.d1], tol);
    let r2 = check_polymatroid_values(2, [q.a2, q.b2, q.c2, q.d2], tol);
    let mut violations = r1.violations;
    violations.extend(r2.violations);
    Ok(PolymatroidReport {
        holds: violations.is_empty(),
        min_slack: r1.min_slack.min(r2.min_slack),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn unit_box() -> HalfspaceRegion {
        HalfspaceRegion::rectangle(&["x", "y"], &[1.0, 1.0]).unwrap()
    }

    fn pentagon() -> HalfspaceRegion {
        HalfspaceRegion::from_rows(
            &["R1", "R2"],
            &[(&[1.0, 0.0], 0.6), (&[0.0, 1.0], 0.6), (&[1.0, 1.0], 1.0)],
        )
        .unwrap()
    }

    #[test]
    fn origin_and_violations() {
        let r = pentagon();
        assert!(r.contains(&[0.0, 0.0], 0.0));
        let tol = 1e-7;
        assert!(!r.contains(&[0.6 + 2.0 * tol, 0.0], tol));
        assert!(r.contains(&[0.6 + 0.5 * tol, 0.0], tol));
        assert!(!r.contains(&[-2.0 * tol, 0.0], tol));
        assert!(!r.contains(&[0.1], tol));
    }

    #[test]
    fn bounds_validated() {
        assert!(HalfspaceRegion::from_rows(&["x"], &[(&[1.0], -0.1)]).is_err());
        let r = HalfspaceRegion::from_rows(&["x"], &[(&[1.0], -1e-12)]).unwrap();
        assert_eq!(r.inequalities()[0].bound, 0.0);
        assert!(HalfspaceRegion::from_rows(&["x"], &[(&[1.0, 1.0], 1.0)]).is_err());
    }

    #[test]
    fn project_box_onto_sum() {
        let s = unit_box().fm_project(&[vec![1.0, 1.0]], &["s"]).unwrap();
        assert_eq!(s.inequalities().len(), 1);
        assert!((s.inequalities()[0].bound - 2.0).abs() < 1e-12);
        assert!(s.contains(&[2.0], 1e-9));
        assert!(!s.contains(&[2.1], 1e-9));
    }

    #[test]
    fn identity_projection_keeps_region() {
        let r = pentagon();
        let p = r
            .fm_project(&[vec![1.0, 0.0], vec![0.0, 1.0]], &["R1", "R2"])
            .unwrap();
        let mut rng = 0.1f64;
        for i in 0..400 {
            rng = (rng * 9301.0 + 49297.0 + i as f64) % 233280.0;
            let x = (rng / 233280.0) * 1.2;
            let y = ((rng * 7.0) % 233280.0) / 233280.0 * 1.2;
            assert_eq!(r.contains(&[x, y], 1e-9), p.contains(&[x, y], 1e-9));
        }
    }

    #[test]
    fn projection_through_free_coordinate() {
        // {a + b ≤ 1, b ≤ 0.3} viewed through s = a only: s ≤ 1.
        let r = HalfspaceRegion::from_rows(&["a", "b"], &[(&[1.0, 1.0], 1.0), (&[0.0, 1.0], 0.3)])
            .unwrap();
        let p = r.fm_project(&[vec![1.0, 0.0]], &["s"]).unwrap();
        assert!(p.contains(&[1.0], 1e-9));
        assert!(!p.contains(&[1.01], 1e-9));
    }

    #[test]
    fn projection_rejects_bad_maps() {
        let r = unit_box();
        assert!(r.fm_project(&[vec![1.0, -1.0]], &["s"]).is_err());
        assert!(r.fm_project(&[vec![1.0]], &["s"]).is_err());
        assert!(r.fm_project(&[vec![1.0, 1.0]], &[]).is_err());
    }

    #[test]
    fn boundary_of_box_and_pentagon() {
        let pts = unit_box().boundary_sample(3).unwrap();
        assert!((pts[1].r1 - 1.0).abs() < 1e-12 && (pts[1].r2 - 1.0).abs() < 1e-12);
        let pts = pentagon().boundary_sample(21).unwrap();
        let mid = pts[10];
        assert!((mid.r1 - 0.5).abs() < 1e-12 && (mid.r2 - 0.5).abs() < 1e-12);
        for p in &pts {
            assert!(pentagon().contains(&[p.r1, p.r2], BOUNDARY_TOL));
        }
        let csv = boundary_csv(&pts);
        assert!(csv.starts_with("theta,R1,R2\n"));
        assert_eq!(csv.lines().count(), 22);
    }

    #[test]
    fn unbounded_boundary_is_an_error() {
        let r = HalfspaceRegion::from_rows(&["x", "y"], &[(&[1.0, 0.0], 1.0)]).unwrap();
        assert!(r.boundary_sample(5).is_err());
    }

    #[test]
    fn disjoint_boxes_meet_only_near_origin() {
        let a = HalfspaceRegion::from_rows(&["x", "y"], &[(&[1.0, 0.0], 1.0), (&[0.0, 1.0], 0.0)])
            .unwrap();
        let b = HalfspaceRegion::from_rows(&["x", "y"], &[(&[1.0, 0.0], 0.0), (&[0.0, 1.0], 1.0)])
            .unwrap();
        let c = a.intersect(&b).unwrap();
        assert!(c.contains(&[0.0, 0.0], 0.0));
        assert!(!c.contains(&[0.01, 0.0], 1e-9));
        assert!(!c.contains(&[0.0, 0.01], 1e-9));
    }

    #[test]
    fn intersect_aligns_coordinate_names() {
        let a = HalfspaceRegion::from_rows(&["x", "y"], &[(&[1.0, 0.0], 1.0)]).unwrap();
        let b = HalfspaceRegion::from_rows(&["y", "x"], &[(&[1.0, 0.0], 0.5)]).unwrap();
        let c = a.intersect(&b).unwrap();
        assert!(c.contains(&[1.0, 0.5], 1e-12));
        assert!(!c.contains(&[0.5, 1.0], 1e-12));
        let z = HalfspaceRegion::from_rows(&["z", "x"], &[(&[1.0, 0.0], 0.5)]).unwrap();
        assert!(a.intersect(&z).is_err());
    }

    #[test]
    fn self_intersection_prunes_back() {
        let r = pentagon();
        let rr = r.intersect(&r).unwrap().prune().unwrap();
        assert_eq!(rr.inequalities().len(), 3);
    }

    #[test]
    fn support_values() {
        assert!((pentagon().support(&[1.0, 1.0]).unwrap().unwrap() - 1.0).abs() < 1e-9);
        let open = HalfspaceRegion::from_rows(&["x", "y"], &[(&[1.0, 0.0], 1.0)]).unwrap();
        assert_eq!(open.support(&[0.0, 1.0]).unwrap(), None);
    }

    #[test]
    fn json_round_trip() {
        let r = pentagon();
        let text = r.to_json_string();
        let json: RegionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(HalfspaceRegion::from_json(&json).unwrap(), r);
        assert!(text.contains("\"ineqs\""));
    }

    #[test]
    fn polymatroid_report_names_violation() {
        let ok = check_polymatroid_values(1, [0.1, 0.2, 0.3, 0.35], 1e-8);
        assert!(ok.holds);
        let bad = check_polymatroid_values(1, [0.1, 0.2, 0.3, 0.5], 1e-8);
        assert!(!bad.holds);
        assert_eq!(bad.first_violation().unwrap().inequality, "a + d <= b + c");
        let bad = check_polymatroid_values(2, [0.3, 0.2, 0.4, 0.5], 1e-8);
        assert_eq!(bad.first_violation().unwrap().inequality, "a <= b");
    }

    #[test]
    fn union_radial_max() {
        let a = HalfspaceRegion::rectangle(&["x", "y"], &[1.0, 0.2]).unwrap();
        let b = HalfspaceRegion::rectangle(&["x", "y"], &[0.2, 1.0]).unwrap();
        let u = RegionUnion::new(vec![a, b]).unwrap();
        assert!(u.contains(&[1.0, 0.1], 1e-9));
        assert!(!u.contains(&[0.5, 0.5], 1e-9));
        let pts = u.boundary_sample(3).unwrap();
        assert!((pts[0].r1 - 1.0).abs() < 1e-12);
        assert!((pts[2].r2 - 1.0).abs() < 1e-12);
    }

    fn arb_region() -> impl Strategy<Value = HalfspaceRegion> {
        prop::collection::vec((prop::collection::vec(-0.5f64..1.5, 3), 0.1f64..2.0), 3..7)
            .prop_map(|rows| {
                let mut ineqs: Vec<Inequality> =
                    rows.into_iter().map(|(c, b)| Inequality::new(c, b)).collect();
                // Keep the region bounded.
                ineqs.push(Inequality::new(vec![1.0, 1.0, 1.0], 3.0));
                HalfspaceRegion::new(vec!["a".into(), "b".into(), "c".into()], ineqs).unwrap()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn projection_matches_preimage_lp(
            region in arb_region(),
            pts in prop::collection::vec((0.0f64..3.0, 0.0f64..3.0), 40),
        ) {
            let map = vec![vec![1.0, 1.0, 0.0], vec![0.0, 0.5, 1.0]];
            let proj = region.fm_project(&map, &["s", "t"]).unwrap();
            for (s, t) in pts {
                let inside = proj.contains(&[s, t], 1e-7);
                let pre = preimage_feasible(&region, &map, &[s, t], 1e-9).unwrap();
                // Points within 1e-7 of a facet may legitimately disagree.
                let strict_in = proj.contains(&[s, t], -1e-7);
                let loose_pre = preimage_feasible(&region, &map, &[s, t], 1e-6).unwrap();
                if pre { prop_assert!(inside); }
                if strict_in { prop_assert!(loose_pre); }
            }
        }

        #[test]
        fn intersection_is_membership_and(
            a in arb_region(),
            b in arb_region(),
            c in arb_region(),
            pts in prop::collection::vec(prop::collection::vec(0.0f64..2.0, 3), 30),
        ) {
            let ab = a.intersect(&b).unwrap();
            let ba = b.intersect(&a).unwrap();
            let abc = ab.intersect(&c).unwrap();
            let a_bc = a.intersect(&b.intersect(&c).unwrap()).unwrap();
            for p in pts {
                let want = a.contains(&p, 1e-9) && b.contains(&p, 1e-9);
                prop_assert_eq!(ab.contains(&p, 1e-9), want);
                prop_assert_eq!(ba.contains(&p, 1e-9), want);
                prop_assert_eq!(abc.contains(&p, 1e-9), a_bc.contains(&p, 1e-9));
            }
        }
    }
}
