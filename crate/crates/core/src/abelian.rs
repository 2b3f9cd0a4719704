//! Finite abelian groups, explicit partial difference sets and the
//! difference-counting constraints used to refute them.
//!
//! Groups are stored as a product of cyclic groups of prime-power order,
//! sorted by `(prime, exponent)`. Elements are indexed in mixed radix with
//! the first coordinate most significant, so index order is lexicographic
//! coordinate order.

use crate::numtheory::{factorize, gcd, lcm};
use crate::spectra::DenseGraph;
use crate::srg::{srg_spectrum, SrgError, SrgParams};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Largest group order handled; every census is exhaustive.
pub const MAX_GROUP_ORDER: u64 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("cannot parse group spec {0:?}")]
    BadSpec(String),
    #[error("cyclic factor must have order at least 2, got {0}")]
    TrivialFactor(u64),
    #[error("group order {0} exceeds the supported maximum")]
    TooLarge(u64),
    #[error("cannot parse element {0:?}")]
    BadElement(String),
    #[error("element {element} does not belong to {group}")]
    NotInGroup { element: String, group: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
    order: u64,
}

impl AbelianGroup {
    /// Direct product of cyclic groups of the given orders, split into prime-power parts.
    pub fn new(cyclic_orders: &[u64]) -> Result<Self, GroupError> {
        let mut parts = Vec::new();
        let mut order: u64 = 1;
        for &m in cyclic_orders {
            if m < 2 {
                return Err(GroupError::TrivialFactor(m));
            }
            order = order
                .checked_mul(m)
                .filter(|&o| o <= MAX_GROUP_ORDER)
                .ok_or(GroupError::TooLarge(m))?;
            for (p, e) in factorize(m).factors {
                parts.push((p, e));
            }
        }
        parts.sort_unstable();
        let moduli = parts.into_iter().map(|(p, e)| p.pow(e)).collect();
        Ok(AbelianGroup { moduli, order })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.moduli.iter().fold(1, |acc, &m| lcm(acc, m))
    }

    /// Invariant factors `d1 | d2 | ...` of the same group.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &m in &self.moduli {
            by_prime
                .entry(factorize(m).factors[0].0)
                .or_default()
                .push(m);
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut out = vec![1u64; len];
        for powers in by_prime.values() {
            // largest powers go to the last factors
            for (slot, &m) in out.iter_mut().rev().zip(powers.iter().rev()) {
                *slot *= m;
            }
        }
        out
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn coords(&self, index: usize) -> Vec<u64> {
        let mut rest = index as u64;
        let mut out = vec![0; self.moduli.len()];
        for (slot, &m) in out.iter_mut().zip(&self.moduli).rev() {
            *slot = rest % m;
            rest /= m;
        }
        out
    }

    pub fn index_of(&self, coords: &[u64]) -> Option<usize> {
        if coords.len() != self.moduli.len() || coords.iter().zip(&self.moduli).any(|(c, m)| c >= m)
        {
            return None;
        }
        Some(
            coords
                .iter()
                .zip(&self.moduli)
                .fold(0u64, |acc, (c, m)| acc * m + c) as usize,
        )
    }

    pub fn element(&self, index: usize) -> GroupElement {
        GroupElement {
            coords: self.coords(index),
        }
    }

    pub fn index(&self, x: &GroupElement) -> Result<usize, GroupError> {
        self.index_of(&x.coords)
            .ok_or_else(|| GroupError::NotInGroup {
                element: x.to_string(),
                group: self.to_string(),
            })
    }

    pub fn add(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.coords(x), self.coords(y));
        let sum: Vec<u64> = a
            .iter()
            .zip(&b)
            .zip(&self.moduli)
            .map(|((p, q), m)| (p + q) % m)
            .collect();
        self.index_of(&sum).expect("closed under addition")
    }

    pub fn neg(&self, x: usize) -> usize {
        let c: Vec<u64> = self
            .coords(x)
            .iter()
            .zip(&self.moduli)
            .map(|(p, m)| (m - p) % m)
            .collect();
        self.index_of(&c).expect("closed under negation")
    }

    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// `s·x`.
    pub fn scale(&self, x: usize, s: u64) -> usize {
        let c: Vec<u64> = self
            .coords(x)
            .iter()
            .zip(&self.moduli)
            .map(|(p, m)| (p * (s % m)) % m)
            .collect();
        self.index_of(&c).expect("closed under scaling")
    }

    pub fn element_order(&self, x: usize) -> u64 {
        self.coords(x)
            .iter()
            .zip(&self.moduli)
            .fold(1, |acc, (&c, &m)| lcm(acc, m / gcd(c, m)))
    }

    pub fn parse_element(&self, s: &str) -> Result<usize, GroupError> {
        let x: GroupElement = s.parse()?;
        self.index(&x)
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl FromStr for AbelianGroup {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::BadSpec(s.to_string());
        let orders = s
            .trim()
            .split(['x', 'X', '×'])
            .map(|part| {
                let part = part.trim();
                let digits = part
                    .strip_prefix('Z')
                    .or_else(|| part.strip_prefix('z'))
                    .ok_or_else(bad)?;
                digits.parse::<u64>().map_err(|_| bad())
            })
            .collect::<Result<Vec<_>, _>>()?;
        AbelianGroup::new(&orders)
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for GroupElement {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::BadElement(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let coords = inner
            .split(',')
            .map(|c| c.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupElement { coords })
    }
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn order_census(g: &AbelianGroup) -> BTreeMap<u64, u64> {
    let mut out = BTreeMap::new();
    for x in 0..g.order() as usize {
        *out.entry(g.element_order(x)).or_insert(0) += 1;
    }
    out
}

/// Multipliers: residues `1 <= s < exponent` coprime to `v`. Scaling only
/// depends on `s` modulo the exponent, and every unit mod the exponent
/// lifts to one coprime to `v`.
fn multipliers(g: &AbelianGroup) -> Vec<u64> {
    let e = g.exponent();
    (1..=e).filter(|&s| gcd(s, g.order()) == 1).collect()
}

/// Orbits of `x ↦ s·x` over `s` coprime to `v`, each sorted, listed by smallest member.
pub fn multiplier_orbits(g: &AbelianGroup) -> Vec<Vec<usize>> {
    let ms = multipliers(g);
    let mut seen = vec![false; g.order() as usize];
    let mut out = Vec::new();
    for x in 0..g.order() as usize {
        if seen[x] {
            continue;
        }
        let orbit: BTreeSet<usize> = ms.iter().map(|&s| g.scale(x, s)).collect();
        for &y in &orbit {
            seen[y] = true;
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

/// Every per-order member count consistent with `|D| = k` and `D` being a
/// union of multiplier orbits. Keys cover every non-identity order of `g`.
pub fn membership_census(g: &AbelianGroup, k: u64) -> Vec<BTreeMap<u64, u64>> {
    let mut sizes: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for orbit in multiplier_orbits(g) {
        let d = g.element_order(orbit[0]);
        if d > 1 {
            sizes.entry(d).or_default().push(orbit.len() as u64);
        }
    }
    // attainable counts per order: subset sums of orbit sizes
    let attainable: Vec<(u64, Vec<u64>)> = sizes
        .into_iter()
        .map(|(d, list)| {
            let mut sums = BTreeSet::from([0u64]);
            for s in list {
                let next: Vec<u64> = sums.iter().map(|x| x + s).collect();
                sums.extend(next);
            }
            (d, sums.into_iter().collect())
        })
        .collect();

    let mut out = Vec::new();
    let mut current = BTreeMap::new();
    fn rec(
        i: usize,
        left: u64,
        att: &[(u64, Vec<u64>)],
        cur: &mut BTreeMap<u64, u64>,
        out: &mut Vec<BTreeMap<u64, u64>>,
    ) {
        if i == att.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let (d, sums) = &att[i];
        for &c in sums.iter().take_while(|&&c| c <= left) {
            cur.insert(*d, c);
            rec(i + 1, left - c, att, cur, out);
        }
        cur.remove(d);
    }
    rec(0, k, &attainable, &mut current, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PdsError {
    #[error("identity element belongs to the set")]
    ContainsIdentity,
    #[error("set is not inverse-closed: {element} is a member but its inverse is not")]
    NotInverseClosed { element: String },
    #[error(
        "not a partial difference set: {witness} has {count} representations, expected {expected}"
    )]
    NotPds {
        witness: String,
        count: u64,
        expected: u64,
    },
    #[error("difference counts are consistent but the parameters are not a valid srg: {0}")]
    Degenerate(SrgError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A subset `D` of an abelian group with `0 ∉ D` and `-D = D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitPds {
    group: AbelianGroup,
    members: BTreeSet<usize>,
}

impl ExplicitPds {
    pub fn new(group: AbelianGroup, members: BTreeSet<usize>) -> Result<Self, PdsError> {
        if members.contains(&group.identity()) {
            return Err(PdsError::ContainsIdentity);
        }
        if let Some(&x) = members.iter().find(|&&x| !members.contains(&group.neg(x))) {
            return Err(PdsError::NotInverseClosed {
                element: group.element(x).to_string(),
            });
        }
        Ok(ExplicitPds { group, members })
    }

    pub fn from_elements(group: AbelianGroup, elements: &[GroupElement]) -> Result<Self, PdsError> {
        let members = elements
            .iter()
            .map(|x| group.index(x))
            .collect::<Result<BTreeSet<_>, _>>()?;
        Self::new(group, members)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(&x)
    }

    /// Is `D` a union of multiplier orbits?
    pub fn is_multiplier_invariant(&self) -> bool {
        multipliers(&self.group).into_iter().all(|s| {
            self.members
                .iter()
                .all(|&x| self.members.contains(&self.group.scale(x, s)))
        })
    }
}

pub fn cayley_graph(pds: &ExplicitPds) -> DenseGraph {
    let g = &pds.group;
    let v = g.order() as usize;
    let mut edges = Vec::new();
    for x in 0..v {
        for &d in &pds.members {
            let y = g.add(x, d);
            if x < y {
                edges.push((x, y));
            }
        }
    }
    DenseGraph::from_edges(v, &edges).expect("inverse-closed set gives a simple graph")
}

/// Number of ordered member pairs `(x, y)` with `x - y = t`, for every `t`.
fn difference_counts(pds: &ExplicitPds) -> Vec<u64> {
    let g = &pds.group;
    let mut counts = vec![0u64; g.order() as usize];
    for &x in &pds.members {
        for &y in &pds.members {
            counts[g.sub(x, y)] += 1;
        }
    }
    counts
}

pub fn verify_pds(pds: &ExplicitPds) -> Result<SrgParams, PdsError> {
    let g = &pds.group;
    let counts = difference_counts(pds);
    let mut lambda = None;
    let mut mu = None;
    for t in 1..g.order() as usize {
        let slot = if pds.contains(t) {
            &mut lambda
        } else {
            &mut mu
        };
        match *slot {
            None => *slot = Some(counts[t]),
            Some(expected) if expected != counts[t] => {
                return Err(PdsError::NotPds {
                    witness: g.element(t).to_string(),
                    count: counts[t],
                    expected,
                })
            }
            Some(_) => {}
        }
    }
    let k = pds.members.len() as u64;
    SrgParams::new(g.order(), k, lambda.unwrap_or(0), mu.unwrap_or(0)).map_err(PdsError::Degenerate)
}

/// Ordered pairs `(x, y)` with `x - y = t` and `(ord x, ord y)` in `pairs`.
pub fn difference_order_census(g: &AbelianGroup, t: usize, pairs: &BTreeSet<(u64, u64)>) -> u64 {
    (0..g.order() as usize)
        .filter(|&x| pairs.contains(&(g.element_order(x), g.element_order(g.sub(x, t)))))
        .count() as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{element} is not an involution, swapping a pair changes the difference")]
pub struct SwapInvalid {
    pub element: String,
}

/// Orbits of pairs `(x, x - t)` with both orders in `order_filter`, under
/// multipliers and the swap. Each orbit is given by its first coordinates, sorted.
pub fn pair_orbits(
    g: &AbelianGroup,
    t: usize,
    order_filter: &BTreeSet<u64>,
) -> Result<Vec<Vec<usize>>, SwapInvalid> {
    if g.add(t, t) != g.identity() {
        return Err(SwapInvalid {
            element: g.element(t).to_string(),
        });
    }
    let ms = multipliers(g);
    let keep = |x: usize| {
        order_filter.contains(&g.element_order(x))
            && order_filter.contains(&g.element_order(g.sub(x, t)))
    };
    let mut seen = vec![false; g.order() as usize];
    let mut out = Vec::new();
    for x in 0..g.order() as usize {
        if seen[x] || !keep(x) {
            continue;
        }
        // the swap sends first coordinate x to x - t
        let mut orbit = BTreeSet::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            if !orbit.insert(y) {
                continue;
            }
            stack.push(g.sub(y, t));
            stack.extend(ms.iter().map(|&s| g.scale(y, s)));
        }
        for &y in &orbit {
            seen[y] = true;
        }
        out.push(orbit.into_iter().collect());
    }
    Ok(out)
}

/// Sorted orbit sizes of [`pair_orbits`].
pub fn pair_orbit_partition(
    g: &AbelianGroup,
    t: usize,
    order_filter: &BTreeSet<u64>,
) -> Result<Vec<usize>, SwapInvalid> {
    let mut sizes: Vec<usize> = pair_orbits(g, t, order_filter)?
        .iter()
        .map(Vec::len)
        .collect();
    sizes.sort_unstable();
    Ok(sizes)
}

/// `2k - λ + μ ≡ 0 ≡ v` modulo the square root of the discriminant.
pub fn ma_congruence(params: &SrgParams) -> Result<bool, SrgError> {
    let gap = srg_spectrum(params)?.gap;
    let lhs = 2 * params.k() as i64 - params.lambda() as i64 + params.mu() as i64;
    Ok(lhs % gap == 0 && params.v() as i64 % gap == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(s: &str) -> AbelianGroup {
        s.parse().unwrap()
    }

    fn rook() -> ExplicitPds {
        let g = grp("Z3xZ3");
        let els: Vec<GroupElement> = ["(1,0)", "(2,0)", "(0,1)", "(0,2)"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        ExplicitPds::from_elements(g, &els).unwrap()
    }

    #[test]
    fn parsing_and_normalization() {
        let g = grp("z2xZ2xZ5xZ5");
        assert_eq!(g.moduli(), &[2, 2, 5, 5]);
        assert_eq!(g.to_string(), "Z2xZ2xZ5xZ5");
        assert_eq!(grp("Z10xZ10"), g);
        assert_eq!(g.invariant_factors(), vec![10, 10]);
        assert_eq!(grp("Z5xZ20").moduli(), &[4, 5, 5]);
        assert_eq!(grp("Z4xZ5xZ5").invariant_factors(), vec![5, 20]);
        assert!("Z1xZ5".parse::<AbelianGroup>().is_err());
        assert!("Y5".parse::<AbelianGroup>().is_err());
    }

    #[test]
    fn element_orders() {
        let g = grp("Z2xZ2xZ5xZ5");
        assert_eq!(g.element_order(g.parse_element("(1,1,0,0)").unwrap()), 2);
        assert_eq!(g.element_order(g.parse_element("(1,0,1,0)").unwrap()), 10);
        let h = grp("Z4xZ5xZ5");
        assert_eq!(h.element_order(h.parse_element("(1,0,0)").unwrap()), 4);
        assert!(h.parse_element("(4,0,0)").is_err());
        assert_eq!(
            h.element(h.parse_element("(3,2,1)").unwrap()).to_string(),
            "(3,2,1)"
        );
    }

    #[test]
    fn censuses() {
        assert_eq!(
            order_census(&grp("Z2xZ2xZ5xZ5")),
            BTreeMap::from([(1, 1), (2, 3), (5, 24), (10, 72)])
        );
        assert_eq!(
            order_census(&grp("Z4xZ5xZ5")),
            BTreeMap::from([(1, 1), (2, 1), (4, 2), (5, 24), (10, 24), (20, 48)])
        );
        assert_eq!(
            order_census(&grp("Z3xZ3")),
            BTreeMap::from([(1, 1), (3, 8)])
        );
    }

    #[test]
    fn orbits_have_expected_sizes() {
        for s in ["Z2xZ2xZ5xZ5", "Z4xZ5xZ5", "Z3xZ3", "Z8xZ2"] {
            let g = grp(s);
            let orbits = multiplier_orbits(&g);
            assert_eq!(
                orbits.iter().map(Vec::len).sum::<usize>(),
                g.order() as usize
            );
            for o in &orbits {
                let d = g.element_order(o[0]);
                assert!(o.iter().all(|&x| g.element_order(x) == d));
                assert_eq!(o.len() as u64, crate::numtheory::euler_phi(d));
            }
        }
        let g = grp("Z4xZ5xZ5");
        assert!(multiplier_orbits(&g)
            .iter()
            .filter(|o| g.element_order(o[0]) == 20)
            .all(|o| o.len() == 8));
        assert_eq!(multiplier_orbits(&g)[0], vec![0]);
    }

    #[test]
    fn membership_census_examples() {
        let g = grp("Z2xZ2xZ5xZ5");
        let list = membership_census(&g, 33);
        assert!(!list.is_empty());
        for c in &list {
            assert_eq!(c[&2], 1);
            assert_eq!(c[&5] + c[&10], 32);
            assert_eq!(c[&5] % 4, 0);
        }
        for c in membership_census(&grp("Z4xZ5xZ5"), 36) {
            assert_eq!((c[&2], c[&4]), (0, 0));
        }
        assert_eq!(
            membership_census(&grp("Z3xZ3"), 4),
            vec![BTreeMap::from([(3, 4)])]
        );
    }

    #[test]
    fn rook_pds() {
        let pds = rook();
        assert_eq!(
            verify_pds(&pds).unwrap(),
            SrgParams::new(9, 4, 1, 2).unwrap()
        );
        assert!(pds.is_multiplier_invariant());
        let graph = cayley_graph(&pds);
        assert_eq!(graph.srg_parameters(), Some((4, 1, 2)));
    }

    #[test]
    fn pds_rejections() {
        let g = grp("Z3xZ3");
        let one_sided: Vec<GroupElement> = ["(1,0)", "(0,1)"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        assert!(matches!(
            ExplicitPds::from_elements(g.clone(), &one_sided),
            Err(PdsError::NotInverseClosed { .. })
        ));
        assert!(matches!(
            ExplicitPds::new(g.clone(), BTreeSet::from([0])),
            Err(PdsError::ContainsIdentity)
        ));
        // a subgroup minus the identity: disjoint triangles, a degenerate but genuine PDS
        let line: Vec<GroupElement> = ["(1,0)", "(2,0)"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let pds = ExplicitPds::from_elements(g.clone(), &line).unwrap();
        let params = verify_pds(&pds).unwrap();
        assert_eq!(params, SrgParams::new(9, 2, 1, 0).unwrap());
        assert!(params.is_degenerate());
        // the 6-cycle: distance-2 and distance-3 pairs have different counts
        let z6 = grp("Z6");
        let gens: Vec<GroupElement> = ["(1,1)", "(1,2)"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let pds = ExplicitPds::from_elements(z6, &gens).unwrap();
        assert!(matches!(verify_pds(&pds), Err(PdsError::NotPds { .. })));
    }

    #[test]
    fn trivial_cayley_graphs() {
        let g = grp("Z2xZ3");
        let all = ExplicitPds::new(g.clone(), (1..6).collect()).unwrap();
        let complete = cayley_graph(&all);
        assert!((0..6).all(|i| (0..6).all(|j| complete.adjacent(i, j) == (i != j))));
        let none = ExplicitPds::new(g, BTreeSet::new()).unwrap();
        assert!(cayley_graph(&none).matrix().is_zero());
    }

    #[test]
    fn difference_census_examples() {
        let g = grp("Z4xZ5xZ5");
        let t = g.parse_element("(1,0,0)").unwrap();
        let pairs = BTreeSet::from([(20, 20), (20, 2), (2, 20)]);
        assert_eq!(difference_order_census(&g, t, &pairs), 0);
        let h = grp("Z2xZ2xZ5xZ5");
        let t = h.parse_element("(1,0,0,0)").unwrap();
        assert_eq!(
            difference_order_census(&h, t, &BTreeSet::from([(10, 10)])),
            48
        );
        assert_eq!(difference_order_census(&h, t, &BTreeSet::from([(1, 1)])), 0);
    }

    #[test]
    fn pair_orbits_examples() {
        let h = grp("Z2xZ2xZ5xZ5");
        let t = h.parse_element("(1,0,0,0)").unwrap();
        let filter = BTreeSet::from([5, 10]);
        let sizes = pair_orbit_partition(&h, t, &filter).unwrap();
        assert!(sizes.iter().all(|&s| s == 8));
        let pairs: BTreeSet<(u64, u64)> =
            [(5, 5), (5, 10), (10, 5), (10, 10)].into_iter().collect();
        assert_eq!(
            sizes.iter().sum::<usize>() as u64,
            difference_order_census(&h, t, &pairs)
        );
        let five = h.parse_element("(0,0,1,0)").unwrap();
        assert!(pair_orbit_partition(&h, five, &filter).is_err());
    }

    #[test]
    fn ma_examples() {
        assert!(ma_congruence(&SrgParams::new(100, 33, 8, 12).unwrap()).unwrap());
        assert!(ma_congruence(&SrgParams::new(9, 4, 1, 2).unwrap()).unwrap());
        assert!(!ma_congruence(&SrgParams::new(28, 9, 0, 4).unwrap()).unwrap());
    }
}
