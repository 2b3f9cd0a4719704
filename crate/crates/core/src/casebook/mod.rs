//! A fixed sequence of refutation rules for regular partial difference sets
//! in abelian groups. Every step is a pure function of its serialized
//! inputs, so a verdict can be re-checked step by step with [`Verdict::replay`].

pub mod propagate;
pub mod tables;

use crate::abelian::{
    difference_order_census, ma_congruence, membership_census, order_census, pair_orbits,
    AbelianGroup,
};
use crate::benson::{solve_prime_order, PrimeOrderOutcome};
use crate::numtheory::{factorize, is_prime};
use crate::srg::{srg_spectrum, IntegerSpectrum, SrgError, SrgParams};
use propagate::{Assignment, OrbitModel, PatternConstraint, Propagator};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use tables::{
    chain_table, membership_word, pattern_exponents, power_label, ChainTable, PatternSolver,
};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    In,
    Out,
}

impl From<bool> for Membership {
    fn from(b: bool) -> Self {
        if b {
            Membership::In
        } else {
            Membership::Out
        }
    }
}

impl Membership {
    pub fn is_in(self) -> bool {
        self == Membership::In
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    MaCongruence,
    PrimeTable,
    PrimeSquareExclusion,
    MembershipCensus,
    ProfileChaining,
    ParityFromPower,
    BoundExclusion,
    DifferenceCensus,
    PairOrbit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conclusion {
    pub text: String,
    pub refutes: bool,
    pub data: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Deduction {
    pub rule: Rule,
    pub anchor: String,
    pub inputs: Value,
    pub conclusion: Conclusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Contradiction,
    NoContradictionFound,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub engine_version: String,
    pub params: SrgParams,
    pub group: AbelianGroup,
    pub status: VerdictStatus,
    pub chain: Vec<Deduction>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaseError {
    #[error(transparent)]
    Spectrum(#[from] SrgError),
    #[error("group {group} has order {order}, parameters need {v}")]
    GroupOrderMismatch { group: String, order: u64, v: u64 },
    #[error("v = {v} has {primes} distinct prime divisors; chains are implemented for at most 2")]
    UnsupportedOrder { v: u64, primes: usize },
    #[error("malformed step input: {0}")]
    BadInput(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReplayError {
    #[error("step {index}: {source}")]
    Evaluation { index: usize, source: CaseError },
    #[error("step {index} ({rule:?}): replayed conclusion differs from the recorded one")]
    Mismatch { index: usize, rule: Rule },
    #[error("verdict status does not match the chain")]
    StatusMismatch,
}

/// Serialized inputs of one step; the outer key names the computation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepInput {
    MaCongruence {
        params: SrgParams,
    },
    PrimeTable {
        params: SrgParams,
        prime: u64,
    },
    PrimeSquare {
        params: SrgParams,
        prime: u64,
        group: AbelianGroup,
    },
    Census {
        params: SrgParams,
        group: AbelianGroup,
        forced: BTreeMap<u64, Membership>,
    },
    ChainTable {
        params: SrgParams,
        group: AbelianGroup,
        order: u64,
        forced: BTreeMap<u64, Membership>,
    },
    PowerDivisibility {
        params: SrgParams,
        group: AbelianGroup,
        order: u64,
        forced: BTreeMap<u64, Membership>,
    },
    Bounds {
        params: SrgParams,
        group: AbelianGroup,
        order: u64,
        forced: BTreeMap<u64, Membership>,
    },
    Propagation {
        params: SrgParams,
        group: AbelianGroup,
        forced: BTreeMap<u64, Membership>,
        classes: Vec<ViableClass>,
        censuses: Vec<BTreeMap<u64, u64>>,
    },
    Differences {
        params: SrgParams,
        group: AbelianGroup,
        statuses: BTreeMap<String, Membership>,
        censuses: Vec<BTreeMap<u64, u64>>,
    },
    PairOrbits {
        params: SrgParams,
        group: AbelianGroup,
        statuses: BTreeMap<String, Membership>,
        censuses: Vec<BTreeMap<u64, u64>>,
    },
}

impl StepInput {
    pub fn rule(&self) -> Rule {
        match self {
            StepInput::MaCongruence { .. } => Rule::MaCongruence,
            StepInput::PrimeTable { .. } => Rule::PrimeTable,
            StepInput::PrimeSquare { .. } => Rule::PrimeSquareExclusion,
            StepInput::Census { .. } => Rule::MembershipCensus,
            StepInput::ChainTable { .. } | StepInput::Propagation { .. } => Rule::ProfileChaining,
            StepInput::PowerDivisibility { .. } => Rule::ParityFromPower,
            StepInput::Bounds { .. } => Rule::BoundExclusion,
            StepInput::Differences { .. } => Rule::DifferenceCensus,
            StepInput::PairOrbits { .. } => Rule::PairOrbit,
        }
    }

    pub fn anchor(&self) -> &'static str {
        match self {
            StepInput::MaCongruence { .. } => {
                "2k - lambda + mu and v vanish modulo the eigenvalue gap"
            }
            StepInput::PrimeTable { .. } => {
                "multiplicities of a translation of prime order, in and out of D"
            }
            StepInput::PrimeSquare { .. } => {
                "a_p of a p-th power is p times an entry of its root, so divisible by p"
            }
            StepInput::Census { .. } => {
                "D is a union of multiplier orbits, so counts per order are sums of orbit sizes"
            }
            StepInput::ChainTable { .. } => {
                "membership cases of the powers of a translation, solved through the power map"
            }
            StepInput::PowerDivisibility { .. } => {
                "power-map weights force divisibility when the translation is itself a power"
            }
            StepInput::Bounds { .. } => {
                "a_d + b_d equals the cycle count for d, and multiplicities are non-negative"
            }
            StepInput::Propagation { .. } => {
                "admissible cases of every translation must hold simultaneously"
            }
            StepInput::Differences { .. } => {
                "a target needs lambda or mu representations as a difference of members"
            }
            StepInput::PairOrbits { .. } => {
                "representations of an involution come in orbits under multipliers and swapping"
            }
        }
    }
}

/// Admissible membership patterns for translations of one order that are
/// `q`-th powers of higher-order elements exactly for `q` in `lift_primes`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViableClass {
    pub order: u64,
    pub lift_primes: Vec<u64>,
    pub elements: u64,
    pub patterns: Vec<Vec<Membership>>,
}

struct Step {
    data: Value,
    text: String,
    refutes: bool,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}

fn plural(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}

fn distinct_primes(v: u64) -> Vec<u64> {
    factorize(v).primes().collect()
}

fn forced_bools(forced: &BTreeMap<u64, Membership>) -> BTreeMap<u64, bool> {
    forced.iter().map(|(&d, m)| (d, m.is_in())).collect()
}

fn describe(o: &PrimeOrderOutcome, p: u64) -> String {
    match o {
        PrimeOrderOutcome::Feasible { a1, ap } => format!("a1={a1} a{p}={ap}"),
        PrimeOrderOutcome::Infeasible { reason } => format!("infeasible ({reason})"),
    }
}

fn step_ma(params: &SrgParams) -> Result<Step, CaseError> {
    let spec = srg_spectrum(params)?;
    let lhs = 2 * params.k() as i64 - params.lambda() as i64 + params.mu() as i64;
    let holds = ma_congruence(params)?;
    Ok(Step {
        data: json!({ "gap": spec.gap, "two_k_minus_lambda_plus_mu": lhs, "v": params.v(), "holds": holds }),
        text: if holds {
            format!(
                "{lhs} and {} are both divisible by {}",
                params.v(),
                spec.gap
            )
        } else {
            format!(
                "{lhs} and {} are not both divisible by {}",
                params.v(),
                spec.gap
            )
        },
        refutes: !holds,
    })
}

fn prime_outcomes(spec: &IntegerSpectrum, p: u64) -> (PrimeOrderOutcome, PrimeOrderOutcome) {
    let member = solve_prime_order(spec, p, 0, spec.v).expect("p is a prime dividing v");
    let non = solve_prime_order(spec, p, 0, 0).expect("p is a prime dividing v");
    (member, non)
}

fn step_prime_table(params: &SrgParams, p: u64) -> Result<Step, CaseError> {
    if !is_prime(p) || !params.v().is_multiple_of(p) {
        return Err(CaseError::BadInput(format!(
            "{p} is not a prime divisor of {}",
            params.v()
        )));
    }
    let spec = srg_spectrum(params)?;
    let (member, non) = prime_outcomes(&spec, p);
    let forced = match (member.feasible().is_some(), non.feasible().is_some()) {
        (true, false) => Some(Membership::In),
        (false, true) => Some(Membership::Out),
        _ => None,
    };
    let refutes = member.feasible().is_none() && non.feasible().is_none();
    let mut text = format!(
        "order {p}: in D {}; not in D {}",
        describe(&member, p),
        describe(&non, p)
    );
    if let Some(f) = forced {
        let _ = write!(
            text,
            "; every element of order {p} is {}",
            membership_word(f.is_in())
        );
    }
    Ok(Step {
        data: json!({ "prime": p, "member": member, "non_member": non, "forced": forced }),
        text,
        refutes,
    })
}

/// Feasible a_p values over both membership cases, and whether none is
/// divisible by p. A p-th power of an element of order p^2 has a_p equal
/// to p times an entry of its root, so exclusion rules out order p^2.
pub fn exclude_prime_square(spec: &IntegerSpectrum, p: u64) -> (Vec<u64>, bool) {
    let (member, non) = prime_outcomes(spec, p);
    let values: Vec<u64> = [member, non]
        .iter()
        .filter_map(|o| o.feasible())
        .map(|(_, ap)| ap)
        .collect();
    let excluded = values.iter().all(|a| a % p != 0);
    (values, excluded)
}

fn step_prime_square(params: &SrgParams, p: u64, group: &AbelianGroup) -> Result<Step, CaseError> {
    let spec = srg_spectrum(params)?;
    let (values, excluded) = exclude_prime_square(&spec, p);
    let present = group.exponent().is_multiple_of(p * p);
    let shown: Vec<String> = values.iter().map(u64::to_string).collect();
    let text = match (excluded, present) {
        (true, true) => format!(
            "a{p} takes values {{{}}}, none divisible by {p}, yet {group} has elements of order {}",
            shown.join(","),
            p * p
        ),
        (true, false) => format!(
            "a{p} takes values {{{}}}, none divisible by {p}: no elements of order {}",
            shown.join(","),
            p * p
        ),
        (false, _) => format!("a{p} takes values {{{}}}, inconclusive", shown.join(",")),
    };
    Ok(Step {
        data: json!({ "prime": p, "a_values": values, "excluded": excluded, "group_has_order": present }),
        text,
        refutes: excluded && present,
    })
}

#[derive(Serialize)]
struct CensusData {
    censuses: Vec<BTreeMap<u64, u64>>,
    forced: BTreeMap<u64, Membership>,
}

fn census_data(
    params: &SrgParams,
    group: &AbelianGroup,
    forced: &BTreeMap<u64, Membership>,
) -> CensusData {
    let totals = order_census(group);
    let censuses: Vec<BTreeMap<u64, u64>> = membership_census(group, params.k())
        .into_iter()
        .filter(|c| {
            forced.iter().all(|(d, m)| match (m, totals.get(d)) {
                (_, None) => true,
                (Membership::Out, _) => c.get(d).copied().unwrap_or(0) == 0,
                (Membership::In, Some(&t)) => c.get(d).copied().unwrap_or(0) == t,
            })
        })
        .collect();
    let mut out = forced.clone();
    if !censuses.is_empty() {
        for (&d, &t) in totals.iter().filter(|(&d, _)| d > 1) {
            if censuses.iter().all(|c| c[&d] == 0) {
                out.insert(d, Membership::Out);
            } else if censuses.iter().all(|c| c[&d] == t) {
                out.insert(d, Membership::In);
            }
        }
    }
    out.retain(|d, _| totals.contains_key(d));
    CensusData {
        censuses,
        forced: out,
    }
}

fn step_census(
    params: &SrgParams,
    group: &AbelianGroup,
    forced: &BTreeMap<u64, Membership>,
) -> Result<Step, CaseError> {
    let data = census_data(params, group, forced);
    let mut ranges: BTreeMap<u64, BTreeSet<u64>> = BTreeMap::new();
    for c in &data.censuses {
        for (&d, &x) in c {
            ranges.entry(d).or_default().insert(x);
        }
    }
    let text = if data.censuses.is_empty() {
        format!(
            "no per-order counts of multiplier orbits add up to k = {}",
            params.k()
        )
    } else {
        let parts: Vec<String> = ranges
            .iter()
            .map(|(d, xs)| {
                format!(
                    "order {d} in {{{}}}",
                    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
                )
            })
            .collect();
        format!("{} censuses; {}", data.censuses.len(), parts.join(", "))
    };
    Ok(Step {
        refutes: data.censuses.is_empty(),
        data: to_value(&data),
        text,
    })
}

fn has_order(group: &AbelianGroup, d: u64) -> bool {
    group.exponent().is_multiple_of(d)
}

fn lift_primes(params: &SrgParams, group: &AbelianGroup, n: u64) -> Vec<u64> {
    distinct_primes(params.v())
        .into_iter()
        .filter(|&q| has_order(group, n * q))
        .collect()
}

fn build_table(
    params: &SrgParams,
    group: &AbelianGroup,
    n: u64,
    forced: &BTreeMap<u64, Membership>,
) -> Result<ChainTable, CaseError> {
    if !has_order(group, n) || n < 2 {
        return Err(CaseError::BadInput(format!(
            "{group} has no elements of order {n}"
        )));
    }
    let spec = srg_spectrum(params)?;
    let mut solver = PatternSolver::new(&spec);
    Ok(chain_table(
        &mut solver,
        n,
        &forced_bools(forced),
        &lift_primes(params, group, n),
    ))
}

fn pattern_text(table: &ChainTable, pattern: &[bool]) -> String {
    table
        .exponents
        .iter()
        .zip(pattern)
        .map(|(&e, &m)| format!("{} {}", power_label(e), membership_word(m)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn memberships(p: &[bool]) -> Vec<Membership> {
    p.iter().map(|&b| b.into()).collect()
}

fn step_chain_table(
    params: &SrgParams,
    group: &AbelianGroup,
    n: u64,
    forced: &BTreeMap<u64, Membership>,
) -> Result<Step, CaseError> {
    let table = build_table(params, group, n, forced)?;
    let admissible = table
        .rows
        .iter()
        .filter(|r| r.outcome.status.is_admissible())
        .count();
    Ok(Step {
        text: format!(
            "order {n}: {} solved, {admissible} admissible by the chain, {} without a profile for a lower power",
            plural(table.rows.len(), "membership case"),
            table.omitted.len()
        ),
        data: to_value(&table),
        refutes: false,
    })
}

/// Elements of order `n` that are `q`-th powers of elements of order `n·q`.
fn power_elements(group: &AbelianGroup, n: u64, q: u64) -> BTreeSet<usize> {
    (0..group.order() as usize)
        .filter(|&y| group.element_order(y) == n * q)
        .map(|y| group.scale(y, q))
        .collect()
}

fn step_power_divisibility(
    params: &SrgParams,
    group: &AbelianGroup,
    n: u64,
    forced: &BTreeMap<u64, Membership>,
) -> Result<Step, CaseError> {
    let table = build_table(params, group, n, forced)?;
    let mut lifts = Vec::new();
    let mut texts = Vec::new();
    for q in lift_primes(params, group, n) {
        let powers = power_elements(group, n, q).len();
        let excluded: Vec<Value> = table
            .rows
            .iter()
            .filter(|r| r.outcome.status.is_admissible())
            .filter_map(|r| {
                let check = r.lifts.iter().find(|l| l.prime == q)?;
                let (d, w) = check.failure?;
                Some(json!({ "pattern": memberships(&r.pattern), "divisor": d, "factor": w }))
            })
            .collect();
        texts.push(format!(
            "{powers} elements of order {n} are multiples by {q} of elements of order {}; {} admissible {} divisibility",
            n * q,
            excluded.len(),
            if excluded.len() == 1 { "case fails" } else { "cases fail" }
        ));
        lifts.push(json!({ "prime": q, "lift_order": n * q, "power_elements": powers, "excluded": excluded }));
    }
    Ok(Step {
        data: json!({ "order": n, "lifts": lifts }),
        text: texts.join("; "),
        refutes: false,
    })
}

fn element_classes(params: &SrgParams, group: &AbelianGroup, n: u64) -> BTreeMap<Vec<u64>, u64> {
    let lifts: Vec<(u64, BTreeSet<usize>)> = lift_primes(params, group, n)
        .into_iter()
        .map(|q| (q, power_elements(group, n, q)))
        .collect();
    let mut classes = BTreeMap::new();
    for x in (0..group.order() as usize).filter(|&x| group.element_order(x) == n) {
        let key: Vec<u64> = lifts
            .iter()
            .filter(|(_, set)| set.contains(&x))
            .map(|(q, _)| *q)
            .collect();
        *classes.entry(key).or_insert(0) += 1;
    }
    classes
}

fn viable_classes(
    params: &SrgParams,
    group: &AbelianGroup,
    n: u64,
    forced: &BTreeMap<u64, Membership>,
) -> Result<(ChainTable, Vec<ViableClass>), CaseError> {
    let table = build_table(params, group, n, forced)?;
    let classes = element_classes(params, group, n)
        .into_iter()
        .map(|(lift_primes, elements)| ViableClass {
            order: n,
            patterns: table
                .viable_patterns(&lift_primes)
                .iter()
                .map(|p| memberships(p))
                .collect(),
            lift_primes,
            elements,
        })
        .collect();
    Ok((table, classes))
}

fn step_bounds(
    params: &SrgParams,
    group: &AbelianGroup,
    n: u64,
    forced: &BTreeMap<u64, Membership>,
) -> Result<Step, CaseError> {
    let (table, classes) = viable_classes(params, group, n, forced)?;
    let excluded: Vec<Value> = table
        .rows
        .iter()
        .filter(|r| !r.outcome.status.is_admissible())
        .map(|r| json!({ "pattern": memberships(&r.pattern), "values": r.outcome.values, "status": r.outcome.status }))
        .collect();
    let empty: Vec<&ViableClass> = classes.iter().filter(|c| c.patterns.is_empty()).collect();
    let mut text = format!(
        "order {n}: {} excluded by bounds or sign",
        plural(excluded.len(), "case")
    );
    for c in &classes {
        let cases: Vec<String> = c
            .patterns
            .iter()
            .map(|p| {
                let bools: Vec<bool> = p.iter().map(|m| m.is_in()).collect();
                format!("[{}]", pattern_text(&table, &bools))
            })
            .collect();
        let lift = if c.lift_primes.is_empty() {
            String::new()
        } else {
            format!(" (multiples by {:?} of higher orders)", c.lift_primes)
        };
        let _ = write!(
            text,
            "; {}{lift}: {}",
            plural(c.elements as usize, "element"),
            if cases.is_empty() {
                "no case survives".into()
            } else {
                cases.join(" ")
            }
        );
    }
    Ok(Step {
        data: json!({ "order": n, "excluded": excluded, "classes": classes }),
        text,
        refutes: !empty.is_empty(),
    })
}

fn literal(group: &AbelianGroup, x: usize) -> String {
    group.element(x).to_string()
}

fn statuses_of(
    group: &AbelianGroup,
    model: &OrbitModel,
    assign: &Assignment,
) -> BTreeMap<String, Membership> {
    assign
        .iter()
        .enumerate()
        .filter_map(|(i, a)| a.map(|b| (literal(group, model.rep(i)), b.into())))
        .collect()
}

fn assignment_from(
    group: &AbelianGroup,
    model: &OrbitModel,
    statuses: &BTreeMap<String, Membership>,
) -> Result<Assignment, CaseError> {
    let mut assign = vec![None; model.len()];
    for (lit, m) in statuses {
        let x = group
            .parse_element(lit)
            .map_err(|e| CaseError::BadInput(e.to_string()))?;
        let i = model.orbit_of[x]
            .ok_or_else(|| CaseError::BadInput("identity has no status".into()))?;
        assign[i] = Some(m.is_in());
    }
    Ok(assign)
}

fn order_summary(model: &OrbitModel, assign: &Assignment) -> BTreeMap<u64, Value> {
    let mut out: BTreeMap<u64, (usize, usize, usize)> = BTreeMap::new();
    for (i, a) in assign.iter().enumerate() {
        let s = out.entry(model.orders[i]).or_default();
        let size = model.orbits[i].len();
        match a {
            Some(true) => s.0 += size,
            Some(false) => s.1 += size,
            None => s.2 += size,
        }
    }
    out.into_iter()
        .map(|(d, (i, o, u))| (d, json!({ "in": i, "out": o, "open": u })))
        .collect()
}

fn summary_text(summary: &BTreeMap<u64, Value>) -> String {
    summary
        .iter()
        .map(|(d, s)| {
            let (i, o, u) = (
                s["in"].as_u64().unwrap_or(0),
                s["out"].as_u64().unwrap_or(0),
                s["open"].as_u64().unwrap_or(0),
            );
            match (i, o, u) {
                (0, _, 0) => format!("order {d} out"),
                (_, 0, 0) => format!("order {d} in"),
                _ => format!("order {d}: {i} in, {o} out, {u} open"),
            }
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn step_propagation(
    params: &SrgParams,
    group: &AbelianGroup,
    forced: &BTreeMap<u64, Membership>,
    classes: &[ViableClass],
    censuses: &[BTreeMap<u64, u64>],
) -> Result<Step, CaseError> {
    let model = OrbitModel::new(group);
    let mut constraints = Vec::new();
    for i in 0..model.len() {
        let n = model.orders[i];
        if is_prime(n) {
            continue;
        }
        let x = model.rep(i);
        let lifts: Vec<u64> = lift_primes(params, group, n)
            .into_iter()
            .filter(|&q| power_elements(group, n, q).contains(&x))
            .collect();
        let class = classes
            .iter()
            .find(|c| c.order == n && c.lift_primes == lifts)
            .ok_or_else(|| {
                CaseError::BadInput(format!(
                    "no admissible cases supplied for order {n}, lifts {lifts:?}"
                ))
            })?;
        let scope = pattern_exponents(n)
            .into_iter()
            .map(|e| model.orbit_of[group.scale(x, e)].expect("proper power is not the identity"))
            .collect();
        let allowed = class
            .patterns
            .iter()
            .map(|p| p.iter().map(|m| m.is_in()).collect())
            .collect();
        constraints.push(PatternConstraint { scope, allowed });
    }
    let mut assign: Assignment = (0..model.len())
        .map(|i| forced.get(&model.orders[i]).map(|m| m.is_in()))
        .collect();
    let prop = Propagator {
        model: &model,
        constraints: &constraints,
        censuses,
    };
    let outcome = prop.probe(&mut assign);
    let (settled, conflict) = match outcome {
        Ok(s) => (s, None),
        Err(c) => (Vec::new(), Some(c.0)),
    };
    let probed: BTreeMap<String, Membership> = settled
        .iter()
        .map(|&(i, b)| (literal(group, model.rep(i)), b.into()))
        .collect();
    let summary = order_summary(&model, &assign);
    let text = match &conflict {
        Some(c) => format!("contradiction: {c}"),
        None => {
            let mut t = summary_text(&summary);
            if !probed.is_empty() {
                let _ = write!(t, " ({} orbits settled by probing)", probed.len());
            }
            t
        }
    };
    Ok(Step {
        data: json!({
            "statuses": statuses_of(group, &model, &assign),
            "probed": probed,
            "by_order": summary,
            "conflict": conflict,
        }),
        text,
        refutes: conflict.is_some(),
    })
}

fn candidate_orders(model: &OrbitModel, assign: &Assignment) -> BTreeSet<u64> {
    (0..model.len())
        .filter(|&i| assign[i] != Some(false))
        .map(|i| model.orders[i])
        .collect()
}

/// Apply forced target statuses and check them against the censuses.
fn settle(
    group: &AbelianGroup,
    model: &OrbitModel,
    assign: &mut Assignment,
    forced: &BTreeMap<usize, bool>,
    censuses: &[BTreeMap<u64, u64>],
) -> Option<String> {
    for (&i, &b) in forced {
        if assign[i] == Some(!b) {
            return Some(format!(
                "{} would need to be both in and out",
                literal(group, model.rep(i))
            ));
        }
        assign[i] = Some(b);
    }
    let prop = Propagator {
        model,
        constraints: &[],
        censuses,
    };
    prop.propagate(assign).err().map(|c| {
        let ins: Vec<String> = forced
            .iter()
            .filter(|(_, &b)| b)
            .map(|(&i, _)| literal(group, model.rep(i)))
            .collect();
        if ins.is_empty() {
            c.0
        } else {
            format!("forced in: {}; {}", ins.join(", "), c.0)
        }
    })
}

fn step_differences(
    params: &SrgParams,
    group: &AbelianGroup,
    statuses: &BTreeMap<String, Membership>,
    censuses: &[BTreeMap<u64, u64>],
) -> Result<Step, CaseError> {
    let model = OrbitModel::new(group);
    let mut assign = assignment_from(group, &model, statuses)?;
    let cands = candidate_orders(&model, &assign);
    let pairs: BTreeSet<(u64, u64)> = cands
        .iter()
        .flat_map(|&a| cands.iter().map(move |&b| (a, b)))
        .collect();
    let (lambda, mu) = (params.lambda(), params.mu());
    let mut targets = Vec::new();
    let mut forced = BTreeMap::new();
    let mut conflict = None;
    for i in 0..model.len() {
        let t = model.rep(i);
        let bound = difference_order_census(group, t, &pairs);
        let status = assign[i];
        let required = match status {
            Some(true) => lambda,
            Some(false) => mu,
            None => lambda.min(mu),
        };
        let short_in = bound < lambda;
        let short_out = bound < mu;
        match status {
            Some(true) if short_in => {
                conflict.get_or_insert(format!(
                    "{} is in D but has at most {bound} < lambda = {lambda} representations",
                    literal(group, t)
                ));
            }
            Some(false) if short_out => {
                conflict.get_or_insert(format!(
                    "elements of order {} such as {} are not in D but have at most {bound} < mu = {mu} representations",
                    model.orders[i],
                    literal(group, t)
                ));
            }
            None if short_in && short_out => {
                conflict.get_or_insert(format!(
                    "{} has at most {bound} representations, below both lambda and mu",
                    literal(group, t)
                ));
            }
            None if short_in => {
                forced.insert(i, false);
            }
            None if short_out => {
                forced.insert(i, true);
            }
            _ => {}
        }
        targets.push(json!({
            "target": literal(group, t),
            "order": model.orders[i],
            "status": status.map(Membership::from),
            "bound": bound,
            "required": required,
        }));
    }
    if conflict.is_none() {
        conflict = settle(group, &model, &mut assign, &forced, censuses);
    }
    let forced_lits: BTreeMap<String, Membership> = forced
        .iter()
        .map(|(&i, &b)| (literal(group, model.rep(i)), b.into()))
        .collect();
    let text = match &conflict {
        Some(c) => format!("with members of orders {cands:?} only: {c}"),
        None => format!(
            "every target has enough candidate representations; {} statuses forced",
            forced_lits.len()
        ),
    };
    Ok(Step {
        data: json!({
            "candidate_orders": cands,
            "targets": targets,
            "forced": forced_lits,
            "statuses": statuses_of(group, &model, &assign),
            "conflict": conflict,
        }),
        text,
        refutes: conflict.is_some(),
    })
}

fn subset_sums(sizes: &[usize], limit: usize) -> Vec<bool> {
    let mut reach = vec![false; limit + 1];
    reach[0] = true;
    for &s in sizes {
        for x in (s..=limit).rev() {
            if reach[x - s] {
                reach[x] = true;
            }
        }
    }
    reach
}

fn step_pair_orbits(
    params: &SrgParams,
    group: &AbelianGroup,
    statuses: &BTreeMap<String, Membership>,
    censuses: &[BTreeMap<u64, u64>],
) -> Result<Step, CaseError> {
    let model = OrbitModel::new(group);
    let mut assign = assignment_from(group, &model, statuses)?;
    let cands = candidate_orders(&model, &assign);
    let live: Vec<BTreeMap<u64, u64>> = {
        let prop = Propagator {
            model: &model,
            constraints: &[],
            censuses,
        };
        prop.live_censuses(&assign).into_iter().cloned().collect()
    };
    let max_count = |d: u64| {
        live.iter()
            .map(|c| c.get(&d).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    };
    let (lambda, mu) = (params.lambda() as usize, params.mu() as usize);
    let mut targets = Vec::new();
    let mut forced = BTreeMap::new();
    let mut conflict = None;
    for i in (0..model.len()).filter(|&i| model.orders[i] == 2) {
        let t = model.rep(i);
        let orbits = pair_orbits(group, t, &cands).expect("order-2 elements are involutions");
        let all_sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        let usable: Vec<usize> = orbits
            .iter()
            .filter(|orbit| {
                let needed: BTreeSet<usize> = orbit
                    .iter()
                    .flat_map(|&x| [x, group.sub(x, t)])
                    .filter_map(|y| model.orbit_of[y])
                    .collect();
                if needed.iter().any(|&j| assign[j] == Some(false)) {
                    return false;
                }
                let mut per_order: BTreeMap<u64, u64> = BTreeMap::new();
                for j in 0..model.len() {
                    if assign[j] == Some(true) || needed.contains(&j) {
                        *per_order.entry(model.orders[j]).or_default() +=
                            model.orbits[j].len() as u64;
                    }
                }
                per_order.iter().all(|(&d, &c)| c <= max_count(d))
            })
            .map(Vec::len)
            .collect();
        let reach = subset_sums(&usable, lambda.max(mu));
        let (lam_ok, mu_ok) = (reach[lambda], reach[mu]);
        let status = assign[i];
        match (status, lam_ok, mu_ok) {
            (Some(true), false, _) => {
                conflict.get_or_insert(format!(
                    "{} is in D but lambda = {lambda} is not a sum of usable orbit sizes",
                    literal(group, t)
                ));
            }
            (Some(false), _, false) => {
                conflict.get_or_insert(format!(
                    "{} is not in D but mu = {mu} is not a sum of usable orbit sizes {usable:?}",
                    literal(group, t)
                ));
            }
            (None, false, false) => {
                conflict.get_or_insert(format!(
                    "{}: neither lambda nor mu is attainable",
                    literal(group, t)
                ));
            }
            (None, false, true) => {
                forced.insert(i, false);
            }
            (None, true, false) => {
                forced.insert(i, true);
            }
            _ => {}
        }
        targets.push(json!({
            "target": literal(group, t),
            "status": status.map(Membership::from),
            "orbit_sizes": all_sizes,
            "usable_sizes": usable,
            "lambda_attainable": lam_ok,
            "mu_attainable": mu_ok,
        }));
    }
    if conflict.is_none() {
        conflict = settle(group, &model, &mut assign, &forced, censuses);
    }
    let forced_lits: BTreeMap<String, Membership> = forced
        .iter()
        .map(|(&i, &b)| (literal(group, model.rep(i)), b.into()))
        .collect();
    let text = match &conflict {
        Some(c) => format!("involution representations come in orbit sizes from the candidate orders {cands:?}: {c}"),
        None => format!("{} involutions checked, {} statuses forced", targets.len(), forced_lits.len()),
    };
    Ok(Step {
        data: json!({
            "candidate_orders": cands,
            "lambda": lambda,
            "mu": mu,
            "targets": targets,
            "forced": forced_lits,
            "conflict": conflict,
        }),
        text,
        refutes: conflict.is_some(),
    })
}

/// Recompute the conclusion of a step from its inputs.
pub fn evaluate(input: &StepInput) -> Result<Conclusion, CaseError> {
    let step = match input {
        StepInput::MaCongruence { params } => step_ma(params)?,
        StepInput::PrimeTable { params, prime } => step_prime_table(params, *prime)?,
        StepInput::PrimeSquare {
            params,
            prime,
            group,
        } => step_prime_square(params, *prime, group)?,
        StepInput::Census {
            params,
            group,
            forced,
        } => step_census(params, group, forced)?,
        StepInput::ChainTable {
            params,
            group,
            order,
            forced,
        } => step_chain_table(params, group, *order, forced)?,
        StepInput::PowerDivisibility {
            params,
            group,
            order,
            forced,
        } => step_power_divisibility(params, group, *order, forced)?,
        StepInput::Bounds {
            params,
            group,
            order,
            forced,
        } => step_bounds(params, group, *order, forced)?,
        StepInput::Propagation {
            params,
            group,
            forced,
            classes,
            censuses,
        } => step_propagation(params, group, forced, classes, censuses)?,
        StepInput::Differences {
            params,
            group,
            statuses,
            censuses,
        } => step_differences(params, group, statuses, censuses)?,
        StepInput::PairOrbits {
            params,
            group,
            statuses,
            censuses,
        } => step_pair_orbits(params, group, statuses, censuses)?,
    };
    Ok(Conclusion {
        text: step.text,
        refutes: step.refutes,
        data: step.data,
    })
}

const NO_CLAIM: &str = "this is not a claim that such a difference set exists";

struct Chain {
    params: SrgParams,
    group: AbelianGroup,
    steps: Vec<Deduction>,
}

impl Chain {
    /// Evaluate and record a step; `Some(conclusion)` unless it refutes.
    fn push(&mut self, input: StepInput) -> Result<Option<Value>, CaseError> {
        let conclusion = evaluate(&input)?;
        let refutes = conclusion.refutes;
        let data = conclusion.data.clone();
        self.steps.push(Deduction {
            rule: input.rule(),
            anchor: input.anchor().into(),
            inputs: to_value(&input),
            conclusion,
        });
        Ok((!refutes).then_some(data))
    }

    fn finish(self, status: VerdictStatus) -> Verdict {
        Verdict {
            engine_version: crate::ENGINE_VERSION.into(),
            params: self.params,
            group: self.group,
            status,
            chain: self.steps,
            note: match status {
                VerdictStatus::Contradiction => {
                    "the final step refutes the existence of such a difference set in this group"
                        .into()
                }
                VerdictStatus::NoContradictionFound => NO_CLAIM.into(),
            },
        }
    }
}

// Integer map keys only deserialize from text, not from a `Value`.
fn parse_value<T: for<'de> Deserialize<'de>>(v: &Value) -> Result<T, serde_json::Error> {
    serde_json::from_str(&v.to_string())
}

fn from_value<T: for<'de> Deserialize<'de>>(v: &Value) -> T {
    parse_value(v).expect("step data has the documented shape")
}

/// Run the refutation rules in their fixed order on one group.
pub fn run_case(params: &SrgParams, group: &AbelianGroup) -> Result<Verdict, CaseError> {
    let v = params.v();
    if group.order() != v {
        return Err(CaseError::GroupOrderMismatch {
            group: group.to_string(),
            order: group.order(),
            v,
        });
    }
    let primes = distinct_primes(v);
    if primes.len() > 2 {
        return Err(CaseError::UnsupportedOrder {
            v,
            primes: primes.len(),
        });
    }
    srg_spectrum(params)?;
    let mut chain = Chain {
        params: *params,
        group: group.clone(),
        steps: Vec::new(),
    };
    macro_rules! step {
        ($input:expr) => {
            match chain.push($input)? {
                Some(data) => data,
                None => return Ok(chain.finish(VerdictStatus::Contradiction)),
            }
        };
    }

    step!(StepInput::MaCongruence { params: *params });

    let mut forced: BTreeMap<u64, Membership> = BTreeMap::new();
    for &p in &primes {
        let data = step!(StepInput::PrimeTable {
            params: *params,
            prime: p
        });
        if let Some(m) = from_value::<Option<Membership>>(&data["forced"]) {
            forced.insert(p, m);
        }
    }
    for &p in &primes {
        if v.is_multiple_of(p * p) {
            step!(StepInput::PrimeSquare {
                params: *params,
                prime: p,
                group: group.clone()
            });
        }
    }

    let data = step!(StepInput::Census {
        params: *params,
        group: group.clone(),
        forced: forced.clone()
    });
    let censuses: Vec<BTreeMap<u64, u64>> = from_value(&data["censuses"]);
    let forced: BTreeMap<u64, Membership> = from_value(&data["forced"]);

    let composite: Vec<u64> = order_census(group)
        .into_keys()
        .filter(|&d| d > 1 && !is_prime(d))
        .collect();
    let mut classes = Vec::new();
    for &n in &composite {
        let base = (params, group.clone(), n, forced.clone());
        step!(StepInput::ChainTable {
            params: *base.0,
            group: base.1.clone(),
            order: n,
            forced: base.3.clone()
        });
        if !lift_primes(params, group, n).is_empty() {
            step!(StepInput::PowerDivisibility {
                params: *params,
                group: group.clone(),
                order: n,
                forced: forced.clone()
            });
        }
        let data = step!(StepInput::Bounds {
            params: *params,
            group: group.clone(),
            order: n,
            forced: forced.clone()
        });
        classes.extend(from_value::<Vec<ViableClass>>(&data["classes"]));
    }

    let data = step!(StepInput::Propagation {
        params: *params,
        group: group.clone(),
        forced: forced.clone(),
        classes,
        censuses: censuses.clone(),
    });
    let statuses: BTreeMap<String, Membership> = from_value(&data["statuses"]);

    let data = step!(StepInput::Differences {
        params: *params,
        group: group.clone(),
        statuses,
        censuses: censuses.clone()
    });
    let statuses: BTreeMap<String, Membership> = from_value(&data["statuses"]);

    step!(StepInput::PairOrbits {
        params: *params,
        group: group.clone(),
        statuses,
        censuses
    });

    Ok(chain.finish(VerdictStatus::NoContradictionFound))
}

impl Verdict {
    /// Re-evaluate every step from its recorded inputs.
    pub fn replay(&self) -> Result<(), ReplayError> {
        for (index, d) in self.chain.iter().enumerate() {
            let input: StepInput = parse_value(&d.inputs).map_err(|e| ReplayError::Evaluation {
                index,
                source: CaseError::BadInput(e.to_string()),
            })?;
            let again =
                evaluate(&input).map_err(|source| ReplayError::Evaluation { index, source })?;
            if again != d.conclusion || input.rule() != d.rule {
                return Err(ReplayError::Mismatch {
                    index,
                    rule: d.rule,
                });
            }
        }
        let refuted = self.chain.last().is_some_and(|d| d.conclusion.refutes);
        let earlier = self
            .chain
            .iter()
            .rev()
            .skip(1)
            .any(|d| d.conclusion.refutes);
        match (self.status, refuted, earlier) {
            (VerdictStatus::Contradiction, true, false)
            | (VerdictStatus::NoContradictionFound, false, false) => Ok(()),
            _ => Err(ReplayError::StatusMismatch),
        }
    }

    pub fn final_rule(&self) -> Option<Rule> {
        self.chain.last().map(|d| d.rule)
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{} in {}\n", self.params, self.group);
        for (i, d) in self.chain.iter().enumerate() {
            let _ = writeln!(
                out,
                "{:>2}. {:?} [{}]: {}",
                i + 1,
                d.rule,
                d.anchor,
                d.conclusion.text
            );
        }
        let status = match self.status {
            VerdictStatus::Contradiction => "contradiction",
            VerdictStatus::NoContradictionFound => "no contradiction found",
        };
        let _ = writeln!(out, "verdict: {status} ({})", self.note);
        out
    }

    pub fn to_json(&self) -> Value {
        to_value(self)
    }
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Abelian groups of order `v` (one per isomorphism type) with no element
/// of any order in `excluded_orders`.
pub fn enumerate_group_candidates(v: u64, excluded_orders: &[u64]) -> Vec<AbelianGroup> {
    assert!(v >= 2, "group order must be at least 2");
    let mut groups: Vec<Vec<u64>> = vec![vec![]];
    for (p, e) in factorize(v).factors {
        let mut next = Vec::new();
        for g in &groups {
            for part in partitions(e, e) {
                let mut h = g.clone();
                h.extend(part.iter().map(|&k| p.pow(k)));
                next.push(h);
            }
        }
        groups = next;
    }
    let mut out: Vec<AbelianGroup> = groups
        .into_iter()
        .map(|m| AbelianGroup::new(&m).expect("prime powers at least 2"))
        .filter(|g| excluded_orders.iter().all(|&m| g.exponent() % m != 0))
        .collect();
    out.sort();
    out
}

/// Refutation verdicts for every abelian group of order `v`.
pub fn run_all_groups(params: &SrgParams) -> Result<Vec<Verdict>, CaseError> {
    enumerate_group_candidates(params.v(), &[])
        .iter()
        .map(|g| run_case(params, g))
        .collect()
}

/// Render the multiplicity tables for the given orders and forced memberships.
/// `lifts` maps an order to the primes whose power divisibility is shown.
pub fn render_tables(
    params: &SrgParams,
    orders: &[u64],
    forced: &BTreeMap<u64, bool>,
    lifts: &BTreeMap<u64, Vec<u64>>,
) -> Result<String, CaseError> {
    let spec = srg_spectrum(params)?;
    let mut solver = PatternSolver::new(&spec);
    let mut out = format!("{params} {spec}\n");
    for &n in orders {
        if n < 2 || !params.v().is_multiple_of(n) {
            return Err(CaseError::BadInput(format!(
                "order {n} does not divide {}",
                params.v()
            )));
        }
        let table = chain_table(
            &mut solver,
            n,
            forced,
            lifts.get(&n).map_or(&[][..], Vec::as_slice),
        );
        out.push_str(&tables::render_table(&table));
    }
    Ok(out)
}
