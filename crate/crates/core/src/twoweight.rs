//! Projective two-weight sets and the strongly regular graphs they give on
//! affine space: parameters, the explicit Cayley graph over the translation
//! group, and the homology automorphisms fixing one vertex.

use crate::abelian::{AbelianGroup, ExplicitPds, GroupElement};
use crate::benson::{solve_prime_order, PrimeOrderOutcome};
use crate::field::{FieldError, FiniteField};
use crate::numtheory::factorize;
use crate::spectra::{DenseGraph, Permutation};
use crate::srg::{srg_spectrum, IntegerSpectrum, SrgError, SrgParams};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoWeightError {
    #[error("invalid two-weight parameters: {0}")]
    InvalidParams(String),
    #[error("parameters are not integral: {0}")]
    NonIntegralParams(String),
    #[error(transparent)]
    Srg(#[from] SrgError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
}

/// A set of `size` points in PG(n, q) met by every hyperplane in `w1` or `w2` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoWeightParams {
    pub q: u64,
    pub n: u32,
    pub size: u64,
    pub w1: u64,
    pub w2: u64,
}

impl TwoWeightParams {
    pub fn new(q: u64, n: u32, size: u64, w1: u64, w2: u64) -> Result<Self, TwoWeightError> {
        let f = factorize(q);
        if q < 2 || f.factors.len() != 1 {
            return Err(TwoWeightError::InvalidParams(format!(
                "q = {q} is not a prime power"
            )));
        }
        if n < 1 {
            return Err(TwoWeightError::InvalidParams(
                "projective dimension must be at least 1".into(),
            ));
        }
        if !(w1 < w2 && w2 <= size) {
            return Err(TwoWeightError::InvalidParams(format!(
                "need w1 < w2 <= N, got {w1}, {w2}, {size}"
            )));
        }
        Ok(TwoWeightParams { q, n, size, w1, w2 })
    }
}

/// v = q^(n+1), k = (q-1)N, mu = (N-w1)(N-w2)/q^(n-1), and lambda from
/// k(k - lambda - 1) = (v - k - 1) mu.
pub fn tw_srg_params(tw: &TwoWeightParams) -> Result<SrgParams, TwoWeightError> {
    let big = |e: u32| {
        tw.q.checked_pow(e)
            .ok_or_else(|| TwoWeightError::InvalidParams("q^(n+1) overflows".into()))
    };
    let v = big(tw.n + 1)?;
    let k = (tw.q - 1) * tw.size;
    let num = (tw.size - tw.w1) * (tw.size - tw.w2);
    let den = big(tw.n - 1)?;
    if !num.is_multiple_of(den) {
        return Err(TwoWeightError::NonIntegralParams(format!(
            "(N-w1)(N-w2) = {num} is not divisible by {den}"
        )));
    }
    let mu = num / den;
    if k == 0 || k >= v {
        return Err(TwoWeightError::InvalidParams(format!(
            "valency {k} out of range for {v} vertices"
        )));
    }
    let rhs = (v - k - 1) * mu;
    if !rhs.is_multiple_of(k) || rhs / k > k - 1 {
        return Err(TwoWeightError::NonIntegralParams(format!(
            "(v-k-1)mu = {rhs} does not give an integer lambda for k = {k}"
        )));
    }
    let lambda = k - 1 - rhs / k;
    Ok(SrgParams::new(v, k, lambda, mu)?)
}

/// A homology of prime order `p` fixes one vertex and moves every other
/// vertex to a neighbour or not according to the geometry; on the graph
/// this is f = 1 and g = k.
pub fn homology_outcome(spec: &IntegerSpectrum, p: u64) -> PrimeOrderOutcome {
    solve_prime_order(spec, p, 1, spec.k as u64).expect("caller passes a prime")
}

/// Outcome per prime divisor of q - 1; feasible outcomes have a1 = ap = m2/p.
pub fn homology_feasibility(
    tw: &TwoWeightParams,
) -> Result<BTreeMap<u64, PrimeOrderOutcome>, TwoWeightError> {
    let spec = srg_spectrum(&tw_srg_params(tw)?)?;
    if tw.q == 2 {
        return Ok(BTreeMap::new());
    }
    Ok(factorize(tw.q - 1)
        .primes()
        .map(|p| (p, homology_outcome(&spec, p)))
        .collect())
}

/// Affine space F_q^(n+1); vectors are indexed in base q, first coordinate
/// most significant.
#[derive(Debug, Clone)]
pub struct AffineSpace {
    field: FiniteField,
    dim: usize,
}

impl AffineSpace {
    pub fn new(field: FiniteField, n: u32) -> Self {
        AffineSpace {
            field,
            dim: n as usize + 1,
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> usize {
        (self.field.order() as usize).pow(self.dim as u32)
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .fold(0, |acc, &c| acc * self.field.order() as usize + c)
    }

    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        let q = self.field.order() as usize;
        let mut out = vec![0; self.dim];
        for c in out.iter_mut().rev() {
            *c = index % q;
            index /= q;
        }
        out
    }

    fn combine(&self, x: usize, y: usize, op: impl Fn(usize, usize) -> usize) -> usize {
        let (a, b) = (self.coords(x), self.coords(y));
        let c: Vec<usize> = a.iter().zip(&b).map(|(&u, &v)| op(u, v)).collect();
        self.index(&c)
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        self.combine(x, y, |u, v| self.field.add(u, v))
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.combine(x, y, |u, v| self.field.sub(u, v))
    }

    pub fn scale(&self, s: usize, x: usize) -> usize {
        let c: Vec<usize> = self
            .coords(x)
            .into_iter()
            .map(|u| self.field.mul(s, u))
            .collect();
        self.index(&c)
    }

    /// Scale so that the first nonzero coordinate is 1.
    pub fn normalize(&self, coords: &[usize]) -> Result<Vec<usize>, TwoWeightError> {
        let q = self.field.order() as usize;
        if coords.len() != self.dim {
            return Err(TwoWeightError::InvalidPoint(format!(
                "{coords:?} needs {} coordinates",
                self.dim
            )));
        }
        if let Some(&c) = coords.iter().find(|&&c| c >= q) {
            return Err(TwoWeightError::InvalidPoint(format!(
                "coordinate {c} is not an element of {}",
                self.field
            )));
        }
        let lead = *coords
            .iter()
            .find(|&&c| c != 0)
            .ok_or_else(|| TwoWeightError::InvalidPoint("zero vector".into()))?;
        let inv = self.field.inv(lead).expect("nonzero field element");
        Ok(coords.iter().map(|&c| self.field.mul(inv, c)).collect())
    }

    /// All nonzero vectors on the given projective points.
    pub fn direction_set(&self, points: &[Vec<usize>]) -> Result<BTreeSet<usize>, TwoWeightError> {
        let mut seen = BTreeSet::new();
        let mut out = BTreeSet::new();
        for p in points {
            let norm = self.normalize(p)?;
            let base = self.index(&norm);
            if !seen.insert(base) {
                return Err(TwoWeightError::InvalidPoint(format!(
                    "{p:?} is listed twice"
                )));
            }
            for s in 1..self.field.order() as usize {
                out.insert(self.scale(s, base));
            }
        }
        Ok(out)
    }

    /// The additive group, one cyclic factor per base-p digit.
    pub fn translation_group(&self) -> AbelianGroup {
        let digits = self.field.degree() as usize * self.dim;
        AbelianGroup::new(&vec![self.field.characteristic(); digits]).expect("small affine space")
    }

    pub fn group_element(&self, x: usize) -> GroupElement {
        let coords: Vec<u64> = self
            .coords(x)
            .into_iter()
            .flat_map(|c| self.field.coefficients(c))
            .collect();
        GroupElement { coords }
    }
}

/// Vertices are the affine vectors; x ~ y when x - y points in a direction of the set.
pub fn tw_cayley_graph(
    space: &AffineSpace,
    points: &[Vec<usize>],
) -> Result<DenseGraph, TwoWeightError> {
    let dirs = space.direction_set(points)?;
    let v = space.size();
    let mut edges = Vec::new();
    for x in 0..v {
        for &d in &dirs {
            let y = space.add(x, d);
            if x < y {
                edges.push((x, y));
            }
        }
    }
    Ok(DenseGraph::from_edges(v, &edges).expect("direction sets are closed under negation"))
}

/// The connection set as a subset of the translation group.
pub fn tw_difference_set(
    space: &AffineSpace,
    points: &[Vec<usize>],
) -> Result<ExplicitPds, TwoWeightError> {
    let group = space.translation_group();
    let elems: Vec<GroupElement> = space
        .direction_set(points)?
        .into_iter()
        .map(|x| space.group_element(x))
        .collect();
    Ok(ExplicitPds::from_elements(group, &elems)
        .expect("directions avoid zero and are closed under negation"))
}

/// x -> s x, fixing the origin.
pub fn homology(space: &AffineSpace, s: usize) -> Permutation {
    Permutation::new((0..space.size()).map(|x| space.scale(s, x)).collect())
        .expect("nonzero scalars act bijectively")
}

/// x -> x + t.
pub fn translation(space: &AffineSpace, t: usize) -> Permutation {
    Permutation::new((0..space.size()).map(|x| space.add(x, t)).collect())
        .expect("translations are bijective")
}

/// The conic (1, t, t^2) with its nucleus (0, 0, 1) and the point (0, 1, 0)
/// at infinity: a hyperoval of PG(2, 4).
pub fn hyperoval_pg2_4(field: &FiniteField) -> Vec<Vec<usize>> {
    assert_eq!(field.order(), 4, "the hyperoval lives in PG(2, 4)");
    let mut pts: Vec<Vec<usize>> = (0..4).map(|t| vec![1, t, field.mul(t, t)]).collect();
    pts.push(vec![0, 0, 1]);
    pts.push(vec![0, 1, 0]);
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::verify_pds;
    use crate::spectra::{extract_profile, fixed_and_adjacent, is_automorphism};

    fn gf(q: &str) -> FiniteField {
        q.parse().unwrap()
    }

    #[test]
    fn parameter_examples() {
        let hyper = TwoWeightParams::new(4, 2, 6, 0, 2).unwrap();
        let p = tw_srg_params(&hyper).unwrap();
        assert_eq!((p.v(), p.k(), p.lambda(), p.mu()), (64, 18, 2, 6));
        let p = tw_srg_params(&TwoWeightParams::new(2, 2, 4, 0, 2).unwrap()).unwrap();
        assert_eq!((p.v(), p.k(), p.lambda(), p.mu()), (8, 4, 0, 4));
        let p = tw_srg_params(&TwoWeightParams::new(2, 2, 3, 1, 3).unwrap()).unwrap();
        assert_eq!((p.v(), p.k(), p.lambda(), p.mu()), (8, 3, 2, 0));
        assert!(p.is_degenerate());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(TwoWeightParams::new(6, 2, 4, 0, 2).is_err());
        assert!(TwoWeightParams::new(4, 2, 6, 2, 2).is_err());
        // (6-1)(6-3) = 10 is not divisible by 4
        let tw = TwoWeightParams::new(4, 2, 6, 1, 3).unwrap();
        assert!(matches!(
            tw_srg_params(&tw),
            Err(TwoWeightError::NonIntegralParams(_))
        ));
    }

    #[test]
    fn homology_values() {
        let hyper = TwoWeightParams::new(4, 2, 6, 0, 2).unwrap();
        let map = homology_feasibility(&hyper).unwrap();
        assert_eq!(map.len(), 1);
        assert_eq!(map[&3].feasible(), Some((15, 15)));
        assert!(
            homology_feasibility(&TwoWeightParams::new(2, 2, 4, 0, 2).unwrap())
                .unwrap()
                .is_empty()
        );
        // m2 = 2 for the 4-cycle srg(4,2,0,2), not divisible by 3
        let spec = srg_spectrum(&SrgParams::new(4, 2, 0, 2).unwrap()).unwrap();
        assert!(homology_outcome(&spec, 3).feasible().is_none());
    }

    fn common_neighbour_params(g: &DenseGraph) -> Option<(u64, u64, u64)> {
        // independent count, not via srg_parameters
        let v = g.v();
        let k = (0..v).filter(|&j| g.adjacent(0, j)).count() as u64;
        let mut lam = None;
        let mut mu = None;
        for i in 0..v {
            if (0..v).filter(|&j| g.adjacent(i, j)).count() as u64 != k {
                return None;
            }
            for j in 0..v {
                if i == j {
                    continue;
                }
                let c = (0..v)
                    .filter(|&w| g.adjacent(i, w) && g.adjacent(j, w))
                    .count() as u64;
                let slot = if g.adjacent(i, j) { &mut lam } else { &mut mu };
                if *slot.get_or_insert(c) != c {
                    return None;
                }
            }
        }
        Some((k, lam.unwrap_or(0), mu.unwrap_or(0)))
    }

    #[test]
    fn hyperoval_graph_matches_formula() {
        let f = gf("4");
        let space = AffineSpace::new(f.clone(), 2);
        let pts = hyperoval_pg2_4(&f);
        let g = tw_cayley_graph(&space, &pts).unwrap();
        assert_eq!(g.v(), 64);
        assert_eq!(common_neighbour_params(&g), Some((18, 2, 6)));
        let pds = tw_difference_set(&space, &pts).unwrap();
        let p = verify_pds(&pds).unwrap();
        assert_eq!((p.v(), p.k(), p.lambda(), p.mu()), (64, 18, 2, 6));
    }

    #[test]
    fn small_examples() {
        let f = gf("2");
        let line = AffineSpace::new(f.clone(), 1);
        let g = tw_cayley_graph(&line, &[vec![0, 1]]).unwrap();
        assert_eq!(g.edges().len(), 2);
        assert_eq!(common_neighbour_params(&g), Some((1, 0, 0)));

        let plane = AffineSpace::new(f, 2);
        let fano_line = vec![vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1]];
        let g = tw_cayley_graph(&plane, &fano_line).unwrap();
        assert_eq!(common_neighbour_params(&g), Some((3, 2, 0)));
        let complement = vec![vec![1, 0, 0], vec![1, 0, 1], vec![1, 1, 0], vec![1, 1, 1]];
        let g = tw_cayley_graph(&plane, &complement).unwrap();
        assert_eq!(common_neighbour_params(&g), Some((4, 0, 4)));
    }

    #[test]
    fn invalid_points() {
        let plane = AffineSpace::new(gf("2"), 2);
        assert!(tw_cayley_graph(&plane, &[vec![0, 0, 0]]).is_err());
        assert!(tw_cayley_graph(&plane, &[vec![0, 1]]).is_err());
        assert!(tw_cayley_graph(&plane, &[vec![0, 2, 1]]).is_err());
        let f4 = AffineSpace::new(gf("4"), 2);
        // (0,1,2) and (0,2,3) = 2*(0,1,2) are the same point
        assert!(tw_cayley_graph(&f4, &[vec![0, 1, 2], vec![0, 2, 3]]).is_err());
    }

    #[test]
    fn homology_is_automorphism_with_expected_profile() {
        let f = gf("4");
        let space = AffineSpace::new(f.clone(), 2);
        let g = tw_cayley_graph(&space, &hyperoval_pg2_4(&f)).unwrap();
        let h = homology(&space, f.primitive_element());
        assert_eq!(h.order(), 3);
        assert!(is_automorphism(&g, &h).unwrap());
        assert_eq!(fixed_and_adjacent(&g, &h), (1, 18));
        let spec = srg_spectrum(&SrgParams::new(64, 18, 2, 6).unwrap()).unwrap();
        let prof = extract_profile(&g, &h, &spec).unwrap();
        assert_eq!(prof.a_vec(), vec![15, 15]);
    }

    #[test]
    fn translations_fix_nothing() {
        let f = gf("4");
        let space = AffineSpace::new(f.clone(), 2);
        let pts = hyperoval_pg2_4(&f);
        let g = tw_cayley_graph(&space, &pts).unwrap();
        let dirs = space.direction_set(&pts).unwrap();
        for t in 1..space.size() {
            let fg = fixed_and_adjacent(&g, &translation(&space, t));
            assert_eq!(fg, if dirs.contains(&t) { (0, 64) } else { (0, 0) });
        }
    }
}
