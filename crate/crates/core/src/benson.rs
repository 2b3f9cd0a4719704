//! Eigenvalue-multiplicity constraints for automorphisms of graphs with an
//! integer three-eigenvalue spectrum.
//!
//! Everything here is parameterized by [`IntegerSpectrum`], so undirected
//! and directed strongly regular graphs share one code path. For an
//! automorphism `φ` of order `n` and `M = A - rI`, `a_d` (resp. `b_d`)
//! counts the eigenvalues `ξ(θ₂ - r)` (resp. `ξ(θ₃ - r)`) of `PM` for each
//! primitive `d`-th root of unity `ξ`.

use crate::linalg::{as_integer, fmt_rational, rat, rat_frac, solve_exact, LinearSolution};
use crate::numtheory::{divisors, euler_phi, gcd, is_prime, lcm, mobius};
use crate::srg::{srg_spectrum, IntegerSpectrum, SrgError, SrgParams};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BensonError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cycle length {len} does not divide the automorphism order {order}")]
    CycleLengthMismatch { len: u64, order: u64 },
    #[error("cycle structure covers {covered} vertices, spectrum has {v}")]
    CycleCoverMismatch { covered: u64, v: u64 },
    #[error("f = {f} disagrees with {fixed} fixed points in the cycle structure")]
    FixedPointMismatch { f: u64, fixed: u64 },
    #[error("f + g = {0} exceeds the vertex count")]
    TooManyVertices(u64),
    #[error("profile key {d} is not a divisor of {order}")]
    BadDivisor { d: u64, order: u64 },
    #[error("negative multiplicity b_{d} = {value} from cycle bounds")]
    NegativeComplement { d: u64, value: i64 },
    #[error("invalid cycle structure: {0}")]
    BadCycles(String),
    #[error(transparent)]
    Spectrum(#[from] SrgError),
}

/// Cycle type of a permutation: cycle length ↦ number of cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleStructure {
    counts: BTreeMap<u64, u64>,
}

impl CycleStructure {
    pub fn new(counts: BTreeMap<u64, u64>) -> Result<Self, BensonError> {
        if counts.contains_key(&0) {
            return Err(BensonError::BadCycles("cycle length 0".into()));
        }
        Ok(CycleStructure {
            counts: counts.into_iter().filter(|&(_, c)| c > 0).collect(),
        })
    }

    /// `v/n` cycles of length `n`: a fixed-point-free semiregular action.
    pub fn fixed_point_free(v: u64, n: u64) -> Result<Self, BensonError> {
        if n == 0 || !v.is_multiple_of(n) {
            return Err(BensonError::BadCycles(format!("{n} does not divide {v}")));
        }
        Self::new(BTreeMap::from([(n, v / n)]))
    }

    pub fn counts(&self) -> &BTreeMap<u64, u64> {
        &self.counts
    }

    /// Number of vertices moved or fixed, `Σ l·c_l`.
    pub fn degree(&self) -> u64 {
        self.counts.iter().map(|(l, c)| l * c).sum()
    }

    pub fn fixed(&self) -> u64 {
        self.counts.get(&1).copied().unwrap_or(0)
    }

    pub fn total_cycles(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn order(&self) -> u64 {
        self.counts.keys().fold(1, |acc, &l| lcm(acc, l))
    }

    /// `a_d + b_d`: `c - 1` for `d = 1`, otherwise `Σ_{d | l} c_l`.
    pub fn bound(&self, d: u64) -> u64 {
        if d == 1 {
            self.total_cycles().saturating_sub(1)
        } else {
            self.counts
                .iter()
                .filter(|(l, _)| *l % d == 0)
                .map(|(_, c)| c)
                .sum()
        }
    }
}

/// Map `d ↦ (a_d, b_d)` over the divisors of an automorphism order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiplicityProfile {
    pub order: u64,
    pub a: BTreeMap<u64, u64>,
    pub b: BTreeMap<u64, u64>,
}

impl MultiplicityProfile {
    pub fn new(
        order: u64,
        a: BTreeMap<u64, u64>,
        b: BTreeMap<u64, u64>,
    ) -> Result<Self, BensonError> {
        let divs = divisors(order);
        for d in a.keys().chain(b.keys()) {
            if !order.is_multiple_of(*d) {
                return Err(BensonError::BadDivisor { d: *d, order });
            }
        }
        let fill = |m: BTreeMap<u64, u64>| {
            divs.iter()
                .map(|&d| (d, m.get(&d).copied().unwrap_or(0)))
                .collect()
        };
        Ok(MultiplicityProfile {
            order,
            a: fill(a),
            b: fill(b),
        })
    }

    /// Profile from the `a`-vector (ascending divisors), with `b` from the cycle bounds.
    pub fn from_a(order: u64, a: &[u64], cycles: &CycleStructure) -> Result<Self, BensonError> {
        let divs = divisors(order);
        assert_eq!(
            divs.len(),
            a.len(),
            "a-vector length must match the divisor count"
        );
        let mut am = BTreeMap::new();
        let mut bm = BTreeMap::new();
        for (&d, &ad) in divs.iter().zip(a) {
            let bd = cycles.bound(d) as i64 - ad as i64;
            if bd < 0 {
                return Err(BensonError::NegativeComplement { d, value: bd });
            }
            am.insert(d, ad);
            bm.insert(d, bd as u64);
        }
        Ok(MultiplicityProfile {
            order,
            a: am,
            b: bm,
        })
    }

    /// The identity automorphism: `a_1 = m2`, `b_1 = m3`.
    pub fn identity(spec: &IntegerSpectrum) -> Self {
        MultiplicityProfile {
            order: 1,
            a: BTreeMap::from([(1, spec.m2 as u64)]),
            b: BTreeMap::from([(1, spec.m3 as u64)]),
        }
    }

    pub fn a_vec(&self) -> Vec<u64> {
        self.a.values().copied().collect()
    }

    /// Checks non-negativity (by type), cycle-sum equalities and multiplicity exhaustion.
    pub fn satisfies_invariants(&self, spec: &IntegerSpectrum, cycles: &CycleStructure) -> bool {
        let sums_ok = divisors(self.order)
            .into_iter()
            .all(|d| self.a[&d] + self.b[&d] == cycles.bound(d));
        let weighted =
            |m: &BTreeMap<u64, u64>| m.iter().map(|(&d, &x)| euler_phi(d) * x).sum::<u64>() as i64;
        sums_ok && weighted(&self.a) == spec.m2 && weighted(&self.b) == spec.m3
    }
}

impl fmt::Display for MultiplicityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.a.iter().map(|(d, x)| format!("a{d}={x}")).collect();
        let bparts: Vec<String> = self.b.iter().map(|(d, x)| format!("b{d}={x}")).collect();
        write!(f, "{} {}", parts.join(" "), bparts.join(" "))
    }
}

/// Left side minus right side of the trace equation at `r`; zero iff it holds.
pub fn benson_residual(
    spec: &IntegerSpectrum,
    profile: &MultiplicityProfile,
    r: i64,
    f: u64,
    g: u64,
) -> i64 {
    let sa: i64 = profile.a.iter().map(|(&d, &x)| x as i64 * mobius(d)).sum();
    let sb: i64 = profile.b.iter().map(|(&d, &x)| x as i64 * mobius(d)).sum();
    (spec.k - r) + sa * (spec.theta2 - r) + sb * (spec.theta3 - r) - (-r * f as i64 + g as i64)
}

/// `k - θ₃ ≡ -θ₃ f + g (mod θ₂ - θ₃)`.
pub fn congruence_check(spec: &IntegerSpectrum, f: u64, g: u64) -> bool {
    let lhs = spec.k - spec.theta3;
    let rhs = -spec.theta3 * f as i64 + g as i64;
    (lhs - rhs).rem_euclid(spec.gap) == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Infeasibility {
    /// A value is a non-integral rational `num/den`.
    NonIntegral {
        name: String,
        num: i64,
        den: i64,
    },
    Negative {
        name: String,
        value: i64,
    },
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::NonIntegral { name, num, den } => {
                write!(f, "{name} = {num}/{den} is not integral")
            }
            Infeasibility::Negative { name, value } => write!(f, "{name} = {value} is negative"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PrimeOrderOutcome {
    Feasible { a1: u64, ap: u64 },
    Infeasible { reason: Infeasibility },
}

impl PrimeOrderOutcome {
    pub fn feasible(&self) -> Option<(u64, u64)> {
        match *self {
            PrimeOrderOutcome::Feasible { a1, ap } => Some((a1, ap)),
            PrimeOrderOutcome::Infeasible { .. } => None,
        }
    }
}

impl fmt::Display for PrimeOrderOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeOrderOutcome::Feasible { a1, ap } => write!(f, "a1={a1} ap={ap}"),
            PrimeOrderOutcome::Infeasible { reason } => write!(f, "infeasible: {reason}"),
        }
    }
}

fn reduced(num: i64, den: i64) -> (i64, i64) {
    let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
    let s = if den < 0 { -1 } else { 1 };
    (s * num / g, s * den / g)
}

fn integral(name: &str, num: i64, den: i64) -> Result<u64, Infeasibility> {
    if num % den != 0 {
        let (n, d) = reduced(num, den);
        return Err(Infeasibility::NonIntegral {
            name: name.into(),
            num: n,
            den: d,
        });
    }
    let value = num / den;
    u64::try_from(value).map_err(|_| Infeasibility::Negative {
        name: name.into(),
        value,
    })
}

/// Solves `gap·(a1 - ap) = -θ₃(f-1) + g - k`, `a1 + (p-1)ap = m2` exactly.
pub fn solve_prime_order(
    spec: &IntegerSpectrum,
    p: u64,
    f: u64,
    g: u64,
) -> Result<PrimeOrderOutcome, BensonError> {
    if !is_prime(p) {
        return Err(BensonError::NotPrime(p));
    }
    if f + g > spec.v {
        return Err(BensonError::TooManyVertices(f + g));
    }
    let rhs = -spec.theta3 * (f as i64 - 1) + g as i64 - spec.k;
    let p = p as i64;
    // p·ap = m2 - rhs/gap
    let ap = integral(&format!("a{p}"), spec.m2 * spec.gap - rhs, p * spec.gap);
    let a1 = ap
        .clone()
        .and_then(|ap| integral("a1", rhs + spec.gap * ap as i64, spec.gap));
    Ok(match (a1, ap) {
        (Ok(a1), Ok(ap)) => PrimeOrderOutcome::Feasible { a1, ap },
        (_, Err(reason)) | (Err(reason), _) => PrimeOrderOutcome::Infeasible { reason },
    })
}

/// Closed form for `a_p` of a translation by an element of prime order `p`
/// in an abelian Cayley graph:
/// `-v(λ-μ-√Δ) / (2p√Δ)` for non-members and `(-2v - v(λ-μ-√Δ)) / (2p√Δ)` for members.
pub fn pds_prime_integrality(
    params: &SrgParams,
    p: u64,
    member: bool,
) -> Result<PrimeOrderOutcome, BensonError> {
    if !is_prime(p) {
        return Err(BensonError::NotPrime(p));
    }
    let spec = srg_spectrum(params)?;
    let v = params.v() as i64;
    let root = spec.gap;
    let lm = params.lambda() as i64 - params.mu() as i64;
    let num = if member {
        -2 * v - v * (lm - root)
    } else {
        -v * (lm - root)
    };
    let den = 2 * p as i64 * root;
    Ok(match integral(&format!("a{p}"), num, den) {
        Ok(ap) => {
            // a1 from the exhaustion constraint a1 + (p-1) ap = m2
            let a1 = spec.m2 - (p as i64 - 1) * ap as i64;
            match u64::try_from(a1) {
                Ok(a1) => PrimeOrderOutcome::Feasible { a1, ap },
                Err(_) => PrimeOrderOutcome::Infeasible {
                    reason: Infeasibility::Negative {
                        name: "a1".into(),
                        value: a1,
                    },
                },
            }
        }
        Err(reason) => PrimeOrderOutcome::Infeasible { reason },
    })
}

/// Where the eigenvalue bookkeeping of `φ` lands under `φ ↦ φ^s`: for each
/// divisor `d` of `n`, the image divisor `d / gcd(d, s)` and the weight
/// `φ(d) / φ(d')`.
pub fn power_map(n: u64, s: u64) -> Vec<(u64, u64, u64)> {
    divisors(n)
        .into_iter()
        .map(|d| {
            let image = d / gcd(d, s);
            (d, image, euler_phi(d) / euler_phi(image))
        })
        .collect()
}

/// Order of `φ^s` when `φ` has order `n`.
pub fn power_order(n: u64, s: u64) -> u64 {
    n / gcd(n, s)
}

/// Profile of `φ^s` from the profile of `φ`.
pub fn power_profile(profile: &MultiplicityProfile, s: u64) -> MultiplicityProfile {
    let n = profile.order;
    let order = power_order(n, s);
    let mut a: BTreeMap<u64, u64> = divisors(order).into_iter().map(|d| (d, 0)).collect();
    let mut b = a.clone();
    for (d, image, w) in power_map(n, s) {
        *a.get_mut(&image).expect("image divides the new order") += w * profile.a[&d];
        *b.get_mut(&image).expect("image divides the new order") += w * profile.b[&d];
    }
    MultiplicityProfile { order, a, b }
}

fn validate_cycles(
    spec: &IntegerSpectrum,
    n: u64,
    cycles: &CycleStructure,
    f: u64,
    g: u64,
) -> Result<(), BensonError> {
    if let Some(&len) = cycles.counts().keys().find(|&&l| !n.is_multiple_of(l)) {
        return Err(BensonError::CycleLengthMismatch { len, order: n });
    }
    if cycles.degree() != spec.v {
        return Err(BensonError::CycleCoverMismatch {
            covered: cycles.degree(),
            v: spec.v,
        });
    }
    if cycles.fixed() != f {
        return Err(BensonError::FixedPointMismatch {
            f,
            fixed: cycles.fixed(),
        });
    }
    if f + g > spec.v {
        return Err(BensonError::TooManyVertices(f + g));
    }
    Ok(())
}

/// All non-negative integer profiles for an automorphism of order `n` with the
/// given cycle type and `(f, g)` that satisfy the cycle-sum constraints,
/// multiplicity exhaustion and the trace equation at `r = θ₃`.
///
/// Sorted lexicographically by the `a`-vector over ascending divisors.
pub fn enumerate_profiles(
    spec: &IntegerSpectrum,
    n: u64,
    cycles: &CycleStructure,
    f: u64,
    g: u64,
) -> Result<Vec<MultiplicityProfile>, BensonError> {
    validate_cycles(spec, n, cycles, f, g)?;
    enumerate_with(spec, n, cycles, f, g, |_| true)
}

fn enumerate_with(
    spec: &IntegerSpectrum,
    n: u64,
    cycles: &CycleStructure,
    f: u64,
    g: u64,
    mut keep: impl FnMut(&[u64]) -> bool,
) -> Result<Vec<MultiplicityProfile>, BensonError> {
    // Σ μ(d) a_d must equal (g - θ₃ f - (k - θ₃)) / gap
    let numer = g as i64 - spec.theta3 * f as i64 - (spec.k - spec.theta3);
    if numer % spec.gap != 0 {
        return Ok(Vec::new());
    }
    let target = numer / spec.gap;
    let divs = divisors(n);
    let weights: Vec<u64> = divs.iter().map(|&d| euler_phi(d)).collect();
    let bounds: Vec<u64> = divs.iter().map(|&d| cycles.bound(d)).collect();
    let mobs: Vec<i64> = divs.iter().map(|&d| mobius(d)).collect();

    let mut out = Vec::new();
    let mut a = vec![0u64; divs.len()];
    let mut search = |a: &mut Vec<u64>| -> Result<(), BensonError> {
        fn rec(
            i: usize,
            budget: u64,
            a: &mut Vec<u64>,
            ctx: &(&[u64], &[u64], &[i64], i64),
            hit: &mut dyn FnMut(&[u64]),
        ) {
            let (weights, bounds, mobs, target) = *ctx;
            if i + 1 == a.len() {
                if !budget.is_multiple_of(weights[i]) {
                    return;
                }
                let last = budget / weights[i];
                if last > bounds[i] {
                    return;
                }
                a[i] = last;
                let s: i64 = a.iter().zip(mobs).map(|(&x, &m)| x as i64 * m).sum();
                if s == target {
                    hit(a);
                }
                return;
            }
            let top = bounds[i].min(budget / weights[i]);
            for x in 0..=top {
                a[i] = x;
                rec(i + 1, budget - x * weights[i], a, ctx, hit);
            }
        }
        let ctx = (&weights[..], &bounds[..], &mobs[..], target);
        let mut found = Vec::new();
        rec(0, spec.m2 as u64, a, &ctx, &mut |v: &[u64]| {
            found.push(v.to_vec())
        });
        for v in found {
            if keep(&v) {
                out.push(MultiplicityProfile::from_a(n, &v, cycles)?);
            }
        }
        Ok(())
    };
    search(&mut a)?;
    Ok(out)
}

/// Status of a chained solution row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RowStatus {
    Admissible,
    /// Some `a_d` exceeds the cycle bound `a_d + b_d`.
    ExceedsBound {
        divisor: u64,
        value: i64,
        bound: u64,
    },
    Negative {
        divisor: u64,
        value: i64,
    },
    /// A power relation forces a non-integral value.
    NonIntegral {
        divisor: u64,
        value: String,
    },
    /// The power relations and trace equation have no common solution.
    Inconsistent,
    /// A lower power of the element has no admissible profile.
    SubPatternExcluded {
        power: u64,
    },
}

impl RowStatus {
    pub fn is_admissible(&self) -> bool {
        matches!(self, RowStatus::Admissible)
    }
}

/// Solution of the linear system linking `φ` to its prime powers.
#[derive(Debug, Clone, PartialEq)]
pub enum ChainSolution {
    /// The system pins the `a`-vector down to one rational point.
    Unique(Vec<BigRational>),
    /// Underdetermined: every admissible integer solution, found by bounded search.
    Enumerated(Vec<MultiplicityProfile>),
    Inconsistent,
}

/// Solve for the `a`-vector of a translation-like automorphism `φ` of order
/// `n` (cycle type `cycles`, `f` fixed, `g` adjacent) given the profiles of
/// `φ^q` for every prime `q | n`.
///
/// Equations: the trace equation at `r = θ₃` plus `power_profile(φ, q) = targets[q]`.
/// The `q = n` target for prime `n` is the identity profile, which is the exhaustion constraint.
pub fn chain_solve(
    spec: &IntegerSpectrum,
    n: u64,
    cycles: &CycleStructure,
    f: u64,
    g: u64,
    targets: &BTreeMap<u64, MultiplicityProfile>,
) -> Result<ChainSolution, BensonError> {
    validate_cycles(spec, n, cycles, f, g)?;
    let divs = divisors(n);
    let col = |d: u64| divs.iter().position(|&x| x == d).expect("divisor");
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut rhs = Vec::new();

    let mut trace_row = vec![rat(0); divs.len()];
    for &d in &divs {
        trace_row[col(d)] = rat(mobius(d));
    }
    rows.push(trace_row);
    rhs.push(rat_frac(
        g as i64 - spec.theta3 * f as i64 - (spec.k - spec.theta3),
        spec.gap,
    ));

    for (&q, target) in targets {
        assert_eq!(
            target.order,
            power_order(n, q),
            "target order for power {q}"
        );
        for &image in &divisors(target.order) {
            let mut row = vec![rat(0); divs.len()];
            for (d, im, w) in power_map(n, q) {
                if im == image {
                    row[col(d)] = rat(w as i64);
                }
            }
            rows.push(row);
            rhs.push(rat(target.a[&image] as i64));
        }
    }

    Ok(match solve_exact(&rows, &rhs) {
        LinearSolution::Unique(x) => ChainSolution::Unique(x),
        LinearSolution::Inconsistent => ChainSolution::Inconsistent,
        LinearSolution::Underdetermined { .. } => {
            let found = enumerate_with(spec, n, cycles, f, g, |a| {
                rows.iter().zip(&rhs).all(|(row, r)| {
                    let lhs = row
                        .iter()
                        .zip(a)
                        .fold(rat(0), |acc, (c, &x)| acc + c * rat(x as i64));
                    &lhs == r
                })
            })?;
            ChainSolution::Enumerated(found)
        }
    })
}

/// Classify a unique chained solution against non-negativity, integrality and cycle bounds.
///
/// Order of checks: integrality, sign, bound; the first violation (by ascending divisor) is reported.
pub fn classify_row(n: u64, values: &[BigRational], cycles: &CycleStructure) -> RowStatus {
    let divs = divisors(n);
    for (&d, x) in divs.iter().zip(values) {
        if !x.is_integer() {
            return RowStatus::NonIntegral {
                divisor: d,
                value: fmt_rational(x),
            };
        }
    }
    for (&d, x) in divs.iter().zip(values) {
        if x.is_negative() {
            return RowStatus::Negative {
                divisor: d,
                value: as_integer(x).unwrap_or(i64::MIN),
            };
        }
    }
    for (&d, x) in divs.iter().zip(values) {
        let value = as_integer(x).unwrap_or(i64::MAX);
        if value > cycles.bound(d) as i64 {
            return RowStatus::ExceedsBound {
                divisor: d,
                value,
                bound: cycles.bound(d),
            };
        }
    }
    RowStatus::Admissible
}

/// For `a`-values of an element that is the `q`-th power of an element of
/// order `n·q`: the first divisor whose value is not a multiple of the
/// common power-map weight, with that weight.
pub fn power_image_obstruction(n: u64, a: &[BigRational], q: u64) -> Option<(u64, u64)> {
    let big = n * q;
    let divs = divisors(n);
    for (&image, x) in divs.iter().zip(a) {
        let w = power_map(big, q)
            .into_iter()
            .filter(|&(_, im, _)| im == image)
            .map(|(_, _, w)| w)
            .fold(0, gcd);
        if w > 1 && !(x.clone() / rat(w as i64)).is_integer() {
            return Some((image, w));
        }
    }
    None
}

/// Integer values of a rational vector, if all are integral.
pub fn integer_vector(values: &[BigRational]) -> Option<Vec<i64>> {
    values.iter().map(as_integer).collect()
}

pub fn is_zero_residual_for_all(
    spec: &IntegerSpectrum,
    profile: &MultiplicityProfile,
    f: u64,
    g: u64,
    rs: &[i64],
) -> bool {
    rs.iter()
        .all(|&r| benson_residual(spec, profile, r, f, g).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: u64, k: u64, l: u64, m: u64) -> IntegerSpectrum {
        srg_spectrum(&SrgParams::new(v, k, l, m).unwrap()).unwrap()
    }

    fn prof(n: u64, a: &[u64], cycles: &CycleStructure) -> MultiplicityProfile {
        MultiplicityProfile::from_a(n, a, cycles).unwrap()
    }

    #[test]
    fn residual_examples() {
        let s = spec(100, 33, 8, 12);
        let c5 = CycleStructure::fixed_point_free(100, 5).unwrap();
        let p5 = prof(5, &[18, 12], &c5);
        assert_eq!((p5.b[&1], p5.b[&5]), (1, 8));
        assert_eq!(benson_residual(&s, &p5, -7, 0, 100), 0);
        let c2 = CycleStructure::fixed_point_free(100, 2).unwrap();
        let p2 = prof(2, &[31, 35], &c2);
        assert_eq!((p2.b[&1], p2.b[&2]), (18, 15));
        assert_eq!(benson_residual(&s, &p2, -7, 0, 0), 0);
        let id = MultiplicityProfile::identity(&s);
        for r in -10..10 {
            assert_eq!(benson_residual(&s, &id, r, 100, 0), 0);
        }
    }

    #[test]
    fn congruence_examples() {
        let s = spec(100, 33, 8, 12);
        assert!(congruence_check(&s, 0, 0));
        assert!(congruence_check(&s, 0, 100));
        assert!(!congruence_check(&s, 1, 5));
    }

    #[test]
    fn prime_order_examples() {
        let s = spec(100, 33, 8, 12);
        assert_eq!(
            solve_prime_order(&s, 5, 0, 100).unwrap(),
            PrimeOrderOutcome::Feasible { a1: 18, ap: 12 }
        );
        assert_eq!(
            solve_prime_order(&s, 5, 0, 0).unwrap(),
            PrimeOrderOutcome::Feasible { a1: 10, ap: 14 }
        );
        let t = spec(100, 36, 14, 12);
        assert_eq!(
            solve_prime_order(&t, 5, 0, 0).unwrap(),
            PrimeOrderOutcome::Feasible { a1: 4, ap: 8 }
        );
        match solve_prime_order(&s, 3, 0, 0).unwrap() {
            PrimeOrderOutcome::Infeasible {
                reason: Infeasibility::NonIntegral { num, den, .. },
            } => {
                assert_eq!((num, den), (70, 3))
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
        assert_eq!(
            solve_prime_order(&s, 4, 0, 0),
            Err(BensonError::NotPrime(4))
        );
    }

    #[test]
    fn closed_form_examples() {
        let p = SrgParams::new(100, 33, 8, 12).unwrap();
        assert_eq!(
            pds_prime_integrality(&p, 5, false).unwrap().feasible(),
            Some((10, 14))
        );
        assert_eq!(
            pds_prime_integrality(&p, 5, true).unwrap().feasible(),
            Some((18, 12))
        );
        match pds_prime_integrality(&p, 3, false).unwrap() {
            PrimeOrderOutcome::Infeasible {
                reason: Infeasibility::NonIntegral { num, den, .. },
            } => {
                assert_eq!((num, den), (70, 3)) // 1400/60
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn power_profile_examples() {
        let c10 = CycleStructure::fixed_point_free(100, 10).unwrap();
        let p = prof(10, &[4, 6, 8, 6], &c10);
        let p5 = power_profile(&p, 5);
        assert_eq!(p5.order, 2);
        assert_eq!((p5.a[&1], p5.a[&2]), (36, 30));
        let p2 = power_profile(&p, 2);
        assert_eq!(p2.order, 5);
        assert_eq!((p2.a[&1], p2.a[&5]), (10, 14));
        for s in [1, 3, 7, 9, 11] {
            assert_eq!(power_profile(&p, s), p);
        }
        let id = power_profile(&p, 10);
        assert_eq!(id.order, 1);
        assert_eq!(id.a[&1], 66);
    }

    #[test]
    fn enumerate_examples() {
        let s = spec(100, 33, 8, 12);
        let c10 = CycleStructure::fixed_point_free(100, 10).unwrap();
        let non: Vec<Vec<u64>> = enumerate_profiles(&s, 10, &c10, 0, 0)
            .unwrap()
            .iter()
            .map(|p| p.a_vec())
            .collect();
        assert!(non.contains(&vec![3, 7, 7, 7]));
        assert!(non.contains(&vec![4, 6, 8, 6]));
        assert!(!non.contains(&vec![7, 11, 6, 6]));
        let mut sorted = non.clone();
        sorted.sort();
        assert_eq!(sorted, non);
        let mem: Vec<Vec<u64>> = enumerate_profiles(&s, 10, &c10, 0, 100)
            .unwrap()
            .iter()
            .map(|p| p.a_vec())
            .collect();
        assert!(!mem.contains(&vec![12, 6, 6, 6]));
        assert!(mem.iter().all(|a| a[0] <= 9));

        let id_cycles = CycleStructure::new(BTreeMap::from([(1, 100)])).unwrap();
        let only = enumerate_profiles(&s, 1, &id_cycles, 100, 0).unwrap();
        assert_eq!(only, vec![MultiplicityProfile::identity(&s)]);
    }

    #[test]
    fn enumerate_rejects_bad_cycles() {
        let s = spec(100, 33, 8, 12);
        let c = CycleStructure::fixed_point_free(100, 4).unwrap();
        assert!(matches!(
            enumerate_profiles(&s, 10, &c, 0, 0),
            Err(BensonError::CycleLengthMismatch { .. })
        ));
        let c = CycleStructure::fixed_point_free(100, 5).unwrap();
        assert!(matches!(
            enumerate_profiles(&s, 5, &c, 1, 0),
            Err(BensonError::FixedPointMismatch { .. })
        ));
    }

    #[test]
    fn chain_prime_order_matches_solver() {
        let s = spec(100, 36, 14, 12);
        for p in [2, 5] {
            let c = CycleStructure::fixed_point_free(100, p).unwrap();
            let targets = BTreeMap::from([(p, MultiplicityProfile::identity(&s))]);
            for g in [0, 100] {
                let sol = chain_solve(&s, p, &c, 0, g, &targets).unwrap();
                let ChainSolution::Unique(x) = sol else {
                    panic!("expected unique")
                };
                let x = integer_vector(&x).unwrap();
                let direct = solve_prime_order(&s, p, 0, g).unwrap().feasible().unwrap();
                assert_eq!((x[0] as u64, x[1] as u64), direct);
            }
        }
    }

    #[test]
    fn chain_order_four_from_order_two() {
        let s = spec(100, 36, 14, 12);
        let c2 = CycleStructure::fixed_point_free(100, 2).unwrap();
        let p2 = prof(2, &[16, 20], &c2);
        let c4 = CycleStructure::fixed_point_free(100, 4).unwrap();
        let sol = chain_solve(&s, 4, &c4, 0, 0, &BTreeMap::from([(2, p2)])).unwrap();
        let ChainSolution::Unique(x) = sol else {
            panic!("expected unique")
        };
        assert_eq!(integer_vector(&x).unwrap(), vec![6, 10, 10]);
        assert_eq!(classify_row(4, &x, &c4), RowStatus::Admissible);
    }

    #[test]
    fn obstruction_detects_odd_entries() {
        let row: Vec<BigRational> = [8, 10, 7, 5].iter().map(|&x| rat(x)).collect();
        assert_eq!(power_image_obstruction(10, &row, 2), Some((10, 2)));
        let ok: Vec<BigRational> = [4, 6, 8, 6].iter().map(|&x| rat(x)).collect();
        assert_eq!(power_image_obstruction(10, &ok, 2), None);
        // order-5 element as fifth power of an order-25 element: a5 must be a multiple of 5
        let five: Vec<BigRational> = [18, 12].iter().map(|&x| rat(x)).collect();
        assert_eq!(power_image_obstruction(5, &five, 5), Some((5, 5)));
    }
}
