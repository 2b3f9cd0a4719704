//! Explicit graphs and automorphisms. Profiles are read off exactly from
//! traces of `P^j (A - θI)` instead of eigendecomposition, which makes this
//! module an independent oracle for the formulas in [`crate::benson`].

use crate::benson::{
    benson_residual, congruence_check, power_profile, CycleStructure, MultiplicityProfile,
};
use crate::linalg::{as_integer, fmt_rational, rat, solve_exact, IntMatrix, LinearSolution};
use crate::numtheory::{divisors, gcd, lcm, ramanujan_sum};
use crate::srg::IntegerSpectrum;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Soft size limit for dense matrices.
pub const MAX_VERTICES: usize = 1 << 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("expected {expected} vertices, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("edge ({0},{1}) is out of range")]
    VertexOutOfRange(usize, usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("adjacency is not a symmetric 0/1 matrix at ({0},{1})")]
    NotSymmetric(usize, usize),
    #[error("{0} vertices exceeds the dense-matrix limit")]
    TooLarge(usize),
    #[error("images do not form a bijection on 0..{0}")]
    NotBijection(usize),
    #[error("permutation is not an automorphism")]
    NotAutomorphism,
    #[error("adjacency does not have the spectrum {0}")]
    SpectrumMismatch(String),
    #[error("extracted multiplicities are not non-negative integers: {0}")]
    NonIntegralProfile(String),
}

/// Simple undirected graph on `0..v` with a dense 0/1 adjacency matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseGraph {
    adjacency: IntMatrix,
}

impl DenseGraph {
    pub fn from_edges(v: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if v > MAX_VERTICES {
            return Err(GraphError::TooLarge(v));
        }
        let mut a = IntMatrix::zeros(v, v);
        for &(i, j) in edges {
            if i >= v || j >= v {
                return Err(GraphError::VertexOutOfRange(i, j));
            }
            if i == j {
                return Err(GraphError::Loop(i));
            }
            a[(i, j)] = 1;
            a[(j, i)] = 1;
        }
        Ok(DenseGraph { adjacency: a })
    }

    pub fn from_matrix(a: IntMatrix) -> Result<Self, GraphError> {
        if !a.is_square() {
            return Err(GraphError::DimensionMismatch {
                expected: a.rows(),
                got: a.cols(),
            });
        }
        let v = a.rows();
        for i in 0..v {
            if a[(i, i)] != 0 {
                return Err(GraphError::Loop(i));
            }
            for j in 0..v {
                if !matches!(a[(i, j)], 0 | 1) || a[(i, j)] != a[(j, i)] {
                    return Err(GraphError::NotSymmetric(i, j));
                }
            }
        }
        Ok(DenseGraph { adjacency: a })
    }

    pub fn v(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[(i, j)] == 1
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.adjacency
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let v = self.v();
        (0..v)
            .flat_map(|i| (i + 1..v).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adjacent(i, j))
            .collect()
    }

    /// `(k, λ, μ)` by counting common neighbours, if the graph is strongly regular.
    pub fn srg_parameters(&self) -> Option<(u64, u64, u64)> {
        let v = self.v();
        let a2 = self.adjacency.mul(&self.adjacency);
        let k = a2[(0, 0)];
        let (mut lambda, mut mu) = (None, None);
        for i in 0..v {
            if a2[(i, i)] != k {
                return None;
            }
            for j in 0..v {
                if i == j {
                    continue;
                }
                let slot = if self.adjacent(i, j) {
                    &mut lambda
                } else {
                    &mut mu
                };
                match *slot {
                    None => *slot = Some(a2[(i, j)]),
                    Some(x) if x != a2[(i, j)] => return None,
                    _ => {}
                }
            }
        }
        Some((k as u64, lambda.unwrap_or(0) as u64, mu.unwrap_or(0) as u64))
    }
}

/// Bijection on `0..v`, `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPermutation", into = "RawPermutation")]
pub struct Permutation {
    images: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawPermutation {
    images: Vec<usize>,
}

impl TryFrom<RawPermutation> for Permutation {
    type Error = GraphError;
    fn try_from(r: RawPermutation) -> Result<Self, GraphError> {
        Permutation::new(r.images)
    }
}

impl From<Permutation> for RawPermutation {
    fn from(p: Permutation) -> Self {
        RawPermutation { images: p.images }
    }
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, GraphError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(GraphError::NotBijection(n));
            }
        }
        Ok(Permutation { images })
    }

    pub fn identity(v: usize) -> Self {
        Permutation {
            images: (0..v).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn pow(&self, s: u64) -> Permutation {
        let mut out = Permutation::identity(self.len());
        let mut base = self.clone();
        let mut e = s;
        while e > 0 {
            if e & 1 == 1 {
                out = out.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        out
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cyc.push(i);
                i = self.images[i];
            }
            out.push(cyc);
        }
        out
    }

    pub fn cycle_structure(&self) -> CycleStructure {
        let mut counts = BTreeMap::new();
        for c in self.cycles() {
            *counts.entry(c.len() as u64).or_insert(0) += 1;
        }
        CycleStructure::new(counts).expect("cycle lengths are positive")
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1, |acc, c| lcm(acc, c.len() as u64))
    }
}

fn check_size(graph: &DenseGraph, perm: &Permutation) -> Result<(), GraphError> {
    if graph.v() != perm.len() {
        return Err(GraphError::DimensionMismatch {
            expected: graph.v(),
            got: perm.len(),
        });
    }
    Ok(())
}

pub fn is_automorphism(graph: &DenseGraph, perm: &Permutation) -> Result<bool, GraphError> {
    check_size(graph, perm)?;
    let v = graph.v();
    Ok((0..v).all(|i| {
        (0..v).all(|j| graph.adjacent(i, j) == graph.adjacent(perm.apply(i), perm.apply(j)))
    }))
}

/// `(f, g)`: fixed vertices, and non-fixed vertices adjacent to their image.
pub fn fixed_and_adjacent(graph: &DenseGraph, perm: &Permutation) -> (u64, u64) {
    let mut f = 0;
    let mut g = 0;
    for i in 0..graph.v() {
        let j = perm.apply(i);
        if i == j {
            f += 1;
        } else if graph.adjacent(i, j) {
            g += 1;
        }
    }
    (f, g)
}

fn permutation_matrix(perm: &Permutation) -> IntMatrix {
    // P e_i = e_{φ(i)}
    let mut p = IntMatrix::zeros(perm.len(), perm.len());
    for i in 0..perm.len() {
        p[(perm.apply(i), i)] = 1;
    }
    p
}

/// `trace(P(A - rI)) == -r f + g`, with `P` built as an explicit matrix.
pub fn trace_check(graph: &DenseGraph, perm: &Permutation, r: i64) -> Result<bool, GraphError> {
    check_size(graph, perm)?;
    let m = graph.matrix().add_scalar_identity(-r);
    let trace = permutation_matrix(perm).mul(&m).trace();
    let (f, g) = fixed_and_adjacent(graph, perm);
    Ok(trace == -r * f as i64 + g as i64)
}

/// Checks row sums, `(A - kI)(A - θ₂I)(A - θ₃I) = 0` and the first two power sums.
pub fn has_spectrum(graph: &DenseGraph, spec: &IntegerSpectrum) -> bool {
    let a = graph.matrix();
    if graph.v() as u64 != spec.v || (0..graph.v()).any(|i| a.row(i).iter().sum::<i64>() != spec.k)
    {
        return false;
    }
    let prod = a
        .add_scalar_identity(-spec.k)
        .mul(&a.add_scalar_identity(-spec.theta2))
        .mul(&a.add_scalar_identity(-spec.theta3));
    prod.is_zero() && a.trace() == 0 && a.mul(a).trace() == spec.second_moment()
}

/// `Σ_i M[i][φ^j(i)]` for `M = A - rI`, i.e. `trace(P^j M)`.
fn power_trace(graph: &DenseGraph, perm: &Permutation, j: u64, r: i64) -> i64 {
    let pj = perm.pow(j);
    (0..graph.v())
        .map(|i| {
            let t = pj.apply(i);
            graph.matrix()[(i, t)] - if t == i { r } else { 0 }
        })
        .sum()
}

/// Solve `t_j = (k - r) + (θ - r) Σ_d x_d c_d(j)` for `j = 0..n`.
fn solve_multiplicities(
    graph: &DenseGraph,
    perm: &Permutation,
    spec: &IntegerSpectrum,
    r: i64,
    theta: i64,
) -> Result<Vec<u64>, GraphError> {
    let n = perm.order();
    let divs = divisors(n);
    let rows: Vec<Vec<_>> = (0..n)
        .map(|j| {
            divs.iter()
                .map(|&d| rat((theta - r) * ramanujan_sum(d, j as i64)))
                .collect()
        })
        .collect();
    let rhs: Vec<_> = (0..n)
        .map(|j| rat(power_trace(graph, perm, j, r) - (spec.k - r)))
        .collect();
    match solve_exact(&rows, &rhs) {
        LinearSolution::Unique(x) => x
            .iter()
            .map(|q| {
                as_integer(q)
                    .and_then(|z| u64::try_from(z).ok())
                    .ok_or_else(|| {
                        GraphError::NonIntegralProfile(
                            x.iter().map(fmt_rational).collect::<Vec<_>>().join(","),
                        )
                    })
            })
            .collect(),
        other => Err(GraphError::NonIntegralProfile(format!("{other:?}"))),
    }
}

fn extract_unchecked(
    graph: &DenseGraph,
    perm: &Permutation,
    spec: &IntegerSpectrum,
) -> Result<MultiplicityProfile, GraphError> {
    let n = perm.order();
    let a = solve_multiplicities(graph, perm, spec, spec.theta3, spec.theta2)?;
    let b = solve_multiplicities(graph, perm, spec, spec.theta2, spec.theta3)?;
    let divs = divisors(n);
    let profile = MultiplicityProfile {
        order: n,
        a: divs.iter().copied().zip(a).collect(),
        b: divs.iter().copied().zip(b).collect(),
    };
    if !profile.satisfies_invariants(spec, &perm.cycle_structure()) {
        return Err(GraphError::NonIntegralProfile(format!(
            "cycle sums violated: {profile}"
        )));
    }
    Ok(profile)
}

/// The multiplicity profile of `perm`, read from exact traces of its powers.
///
/// `a` and `b` are solved for separately (shifts `θ₃` and `θ₂`) and then
/// checked against the cycle-sum identities, so the result does not assume
/// the theorem it is used to test.
pub fn extract_profile(
    graph: &DenseGraph,
    perm: &Permutation,
    spec: &IntegerSpectrum,
) -> Result<MultiplicityProfile, GraphError> {
    check_size(graph, perm)?;
    if !has_spectrum(graph, spec) {
        return Err(GraphError::SpectrumMismatch(spec.to_string()));
    }
    if !is_automorphism(graph, perm)? {
        return Err(GraphError::NotAutomorphism);
    }
    extract_unchecked(graph, perm, spec)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub perm: usize,
    pub check: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub automorphisms: usize,
    pub profiles: Vec<String>,
    pub violations: Vec<Violation>,
}

impl TheoremReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every trace-theorem consequence on each supplied automorphism.
///
/// Per automorphism: the congruence, the trace identity at three shifts,
/// exact extraction, the residual at three shifts, invariance of `g` under
/// coprime powers, and `extract(φ^s) = power_profile(extract(φ), s)` for `s = 1..=n`.
pub fn verify_theorem_over_group(
    graph: &DenseGraph,
    perms: &[Permutation],
    spec: &IntegerSpectrum,
) -> Result<TheoremReport, GraphError> {
    if !has_spectrum(graph, spec) {
        return Err(GraphError::SpectrumMismatch(spec.to_string()));
    }
    let shifts = [spec.theta3, spec.theta2, 0];
    let mut violations = Vec::new();
    let mut profiles = Vec::new();
    for (idx, perm) in perms.iter().enumerate() {
        let mut fail = |check: String| violations.push(Violation { perm: idx, check });
        if !is_automorphism(graph, perm)? {
            fail("not an automorphism".into());
            continue;
        }
        let (f, g) = fixed_and_adjacent(graph, perm);
        if !congruence_check(spec, f, g) {
            fail(format!("congruence fails at f={f} g={g}"));
        }
        for &r in &shifts {
            if !trace_check(graph, perm, r)? {
                fail(format!("trace identity fails at r={r}"));
            }
        }
        let profile = match extract_unchecked(graph, perm, spec) {
            Ok(p) => p,
            Err(e) => {
                fail(format!("extraction: {e}"));
                continue;
            }
        };
        for &r in &shifts {
            let res = benson_residual(spec, &profile, r, f, g);
            if res != 0 {
                fail(format!("residual {res} at r={r}"));
            }
        }
        let n = perm.order();
        for s in 1..=n {
            let ps = perm.pow(s);
            if gcd(s, n) == 1 && fixed_and_adjacent(graph, &ps).1 != g {
                fail(format!("g changes under power {s}"));
            }
            match extract_unchecked(graph, &ps, spec) {
                Ok(q) if q == power_profile(&profile, s) => {}
                Ok(q) => fail(format!(
                    "power {s}: extracted {q}, predicted {}",
                    power_profile(&profile, s)
                )),
                Err(e) => fail(format!("power {s}: extraction: {e}")),
            }
        }
        profiles.push(format!("n={n} f={f} g={g} {profile}"));
    }
    Ok(TheoremReport {
        automorphisms: perms.len(),
        profiles,
        violations,
    })
}

/// The Petersen graph on the 2-subsets of `{0..5}` (lexicographic), adjacent when disjoint.
pub fn petersen() -> (DenseGraph, Vec<(usize, usize)>) {
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
        .collect();
    let mut edges = Vec::new();
    for (x, &(a, b)) in pairs.iter().enumerate() {
        for (y, &(c, d)) in pairs.iter().enumerate().skip(x + 1) {
            if a != c && a != d && b != c && b != d {
                edges.push((x, y));
            }
        }
    }
    (
        DenseGraph::from_edges(10, &edges).expect("valid edges"),
        pairs,
    )
}

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// The 120 automorphisms of the Petersen graph induced by `S_5` on 2-subsets.
pub fn petersen_automorphisms() -> Vec<Permutation> {
    let (_, pairs) = petersen();
    let index: BTreeMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    all_permutations(5)
        .into_iter()
        .map(|sigma| {
            let images = pairs
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (sigma[a], sigma[b]);
                    index[&(x.min(y), x.max(y))]
                })
                .collect();
            Permutation::new(images).expect("S5 acts bijectively on pairs")
        })
        .collect()
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                format!(
                    "({})",
                    c.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
                )
            })
            .collect();
        if parts.is_empty() {
            write!(f, "()")
        } else {
            write!(f, "{}", parts.concat())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::srg::{srg_spectrum, SrgParams};

    fn cycle(n: usize) -> DenseGraph {
        DenseGraph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn automorphism_checks() {
        let c5 = cycle(5);
        assert!(is_automorphism(&c5, &Permutation::identity(5)).unwrap());
        let rot = Permutation::new(vec![1, 2, 3, 4, 0]).unwrap();
        assert!(is_automorphism(&c5, &rot).unwrap());
        let path = DenseGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let swap = Permutation::new(vec![1, 0, 2]).unwrap();
        assert!(!is_automorphism(&path, &swap).unwrap());
        assert!(is_automorphism(&path, &Permutation::identity(4)).is_err());
    }

    #[test]
    fn permutation_basics() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        let p = Permutation::new(vec![1, 2, 0, 4, 3]).unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.pow(6), Permutation::identity(5));
        assert_eq!(
            p.pow(3).cycle_structure().counts(),
            &BTreeMap::from([(1, 3), (2, 1)])
        );
        assert_eq!(p.to_string(), "(0 1 2)(3 4)");
    }

    #[test]
    fn petersen_setup() {
        let (g, _) = petersen();
        assert_eq!(g.srg_parameters(), Some((3, 0, 1)));
        let autos = petersen_automorphisms();
        assert_eq!(autos.len(), 120);
        assert!(autos.iter().all(|p| is_automorphism(&g, p).unwrap()));
        let distinct: std::collections::HashSet<_> = autos.iter().collect();
        assert_eq!(distinct.len(), 120);
    }

    #[test]
    fn identity_statistics() {
        let (g, _) = petersen();
        assert_eq!(fixed_and_adjacent(&g, &Permutation::identity(10)), (10, 0));
        for r in -3..3 {
            assert!(trace_check(&g, &Permutation::identity(10), r).unwrap());
        }
    }

    #[test]
    fn petersen_profiles() {
        let (g, _) = petersen();
        let spec = srg_spectrum(&SrgParams::new(10, 3, 0, 1).unwrap()).unwrap();
        assert!(has_spectrum(&g, &spec));
        let id = extract_profile(&g, &Permutation::identity(10), &spec).unwrap();
        assert_eq!(id, MultiplicityProfile::identity(&spec));
        let report = verify_theorem_over_group(&g, &petersen_automorphisms(), &spec).unwrap();
        assert!(report.is_clean(), "{:?}", report.violations);
    }

    #[test]
    fn wrong_spectrum_rejected() {
        let (g, _) = petersen();
        let other = srg_spectrum(&SrgParams::new(9, 4, 1, 2).unwrap()).unwrap();
        assert!(matches!(
            extract_profile(&g, &Permutation::identity(10), &other),
            Err(GraphError::SpectrumMismatch(_))
        ));
    }
}
