//! Multiplicity tables for fixed-point-free translations, indexed by which
//! powers of the translation lie in the difference set.

use crate::benson::{
    chain_solve, classify_row, integer_vector, power_image_obstruction, ChainSolution,
    CycleStructure, MultiplicityProfile, RowStatus,
};
use crate::linalg::fmt_rational;
use crate::numtheory::{divisors, factorize};
use crate::srg::IntegerSpectrum;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

/// Membership of `φ^e` for each proper divisor `e` of the order, listed by descending `e`.
pub type Pattern = Vec<bool>;

/// Proper divisors of `n`, descending: the exponents `e` with `φ^e ≠ 1`, excluding `φ` itself last.
pub fn pattern_exponents(n: u64) -> Vec<u64> {
    let mut e: Vec<u64> = divisors(n).into_iter().filter(|&d| d < n).collect();
    e.reverse();
    e
}

pub fn membership_word(m: bool) -> &'static str {
    if m {
        "in"
    } else {
        "out"
    }
}

pub fn power_label(e: u64) -> String {
    if e == 1 {
        "phi".into()
    } else {
        format!("phi^{e}")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatternOutcome {
    pub status: RowStatus,
    /// The unique rational solution, when the chain pins one down.
    pub values: Option<Vec<String>>,
    #[serde(skip)]
    pub raw: Option<Vec<BigRational>>,
    /// Every admissible integer profile for this pattern.
    #[serde(skip)]
    pub profiles: Vec<MultiplicityProfile>,
}

/// Memoized solver for fixed-point-free translations of every order dividing `v`.
pub struct PatternSolver<'a> {
    spec: &'a IntegerSpectrum,
    memo: HashMap<(u64, Pattern), PatternOutcome>,
}

impl<'a> PatternSolver<'a> {
    pub fn new(spec: &'a IntegerSpectrum) -> Self {
        PatternSolver {
            spec,
            memo: HashMap::new(),
        }
    }

    pub fn spec(&self) -> &IntegerSpectrum {
        self.spec
    }

    pub fn cycles(&self, n: u64) -> CycleStructure {
        CycleStructure::fixed_point_free(self.spec.v, n).expect("translation order divides v")
    }

    /// Sub-pattern of `φ^q` inside a pattern of `φ`.
    pub fn sub_pattern(n: u64, pattern: &Pattern, q: u64) -> Pattern {
        let exps = pattern_exponents(n);
        let lookup: BTreeMap<u64, bool> =
            exps.iter().copied().zip(pattern.iter().copied()).collect();
        pattern_exponents(n / q)
            .into_iter()
            .map(|e| lookup[&(q * e)])
            .collect()
    }

    pub fn solve(&mut self, n: u64, pattern: &Pattern) -> PatternOutcome {
        if let Some(hit) = self.memo.get(&(n, pattern.clone())) {
            return hit.clone();
        }
        let out = self.solve_uncached(n, pattern);
        self.memo.insert((n, pattern.clone()), out.clone());
        out
    }

    fn solve_uncached(&mut self, n: u64, pattern: &Pattern) -> PatternOutcome {
        let spec = *self.spec;
        if n == 1 {
            let id = MultiplicityProfile::identity(&spec);
            return PatternOutcome {
                status: RowStatus::Admissible,
                values: Some(vec![spec.m2.to_string()]),
                raw: None,
                profiles: vec![id],
            };
        }
        let member = *pattern
            .last()
            .expect("order > 1 has φ itself in the pattern");
        let g = if member { spec.v } else { 0 };
        let cycles = self.cycles(n);

        let mut choices: Vec<(u64, Vec<MultiplicityProfile>)> = Vec::new();
        for q in factorize(n).primes() {
            let sub = Self::sub_pattern(n, pattern, q);
            let lower = self.solve(n / q, &sub);
            let fits: Vec<MultiplicityProfile> = lower
                .profiles
                .into_iter()
                .filter(|p| {
                    let vals: Vec<BigRational> =
                        p.a.values()
                            .map(|&x| crate::linalg::rat(x as i64))
                            .collect();
                    power_image_obstruction(n / q, &vals, q).is_none()
                })
                .collect();
            if fits.is_empty() {
                return PatternOutcome {
                    status: RowStatus::SubPatternExcluded { power: q },
                    values: None,
                    raw: None,
                    profiles: vec![],
                };
            }
            choices.push((q, fits));
        }

        let mut combos: Vec<BTreeMap<u64, MultiplicityProfile>> = vec![BTreeMap::new()];
        for (q, fits) in &choices {
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    fits.iter().map(move |p| {
                        let mut c = c.clone();
                        c.insert(*q, p.clone());
                        c
                    })
                })
                .collect();
        }

        let single = combos.len() == 1;
        let mut profiles = Vec::new();
        let mut first: Option<(RowStatus, Option<Vec<BigRational>>)> = None;
        for targets in combos {
            let sol = chain_solve(&spec, n, &cycles, 0, g, &targets)
                .expect("translation data is consistent");
            let (status, raw) = match sol {
                ChainSolution::Unique(x) => {
                    let status = classify_row(n, &x, &cycles);
                    if status.is_admissible() {
                        let ints = integer_vector(&x).expect("admissible rows are integral");
                        let a: Vec<u64> = ints.iter().map(|&z| z as u64).collect();
                        profiles.push(
                            MultiplicityProfile::from_a(n, &a, &cycles).expect("within bounds"),
                        );
                    }
                    (status, Some(x))
                }
                ChainSolution::Enumerated(found) => {
                    let status = if found.is_empty() {
                        RowStatus::Inconsistent
                    } else {
                        RowStatus::Admissible
                    };
                    profiles.extend(found);
                    (status, None)
                }
                ChainSolution::Inconsistent => (RowStatus::Inconsistent, None),
            };
            first.get_or_insert((status, raw));
        }
        profiles.sort();
        profiles.dedup();
        let (status, raw) = first.expect("at least one combination");
        let status = if single || profiles.is_empty() {
            status
        } else {
            RowStatus::Admissible
        };
        let raw = if single { raw } else { None };
        PatternOutcome {
            status,
            values: raw.as_ref().map(|x| x.iter().map(fmt_rational).collect()),
            raw,
            profiles,
        }
    }
}

/// Divisibility check of a row against being the `q`-th power of a translation of order `n·q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftCheck {
    pub prime: u64,
    pub lift_order: u64,
    /// `(divisor, required factor)` of the first failing entry.
    pub failure: Option<(u64, u64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainRow {
    pub pattern: Pattern,
    pub outcome: PatternOutcome,
    pub lifts: Vec<LiftCheck>,
}

impl ChainRow {
    /// Admissible by the chain and compatible with every requested lift.
    pub fn viable(&self) -> bool {
        self.outcome.status.is_admissible() && self.lifts.iter().all(|l| l.failure.is_none())
    }

    pub fn viable_for(&self, primes: &[u64]) -> bool {
        self.outcome.status.is_admissible()
            && self
                .lifts
                .iter()
                .filter(|l| primes.contains(&l.prime))
                .all(|l| l.failure.is_none())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainTable {
    pub order: u64,
    pub cycle_count: u64,
    /// Exponents `e` (descending) whose membership indexes the rows.
    pub exponents: Vec<u64>,
    /// Forced membership by element order.
    pub forced: BTreeMap<u64, bool>,
    pub rows: Vec<ChainRow>,
    /// Patterns dropped because a lower power has no compatible profile.
    pub omitted: Vec<ChainRow>,
}

impl ChainTable {
    pub fn viable_patterns(&self, primes: &[u64]) -> Vec<Pattern> {
        self.rows
            .iter()
            .filter(|r| r.viable_for(primes))
            .map(|r| r.pattern.clone())
            .collect()
    }
}

/// All membership patterns for a translation of order `n`, restricted by
/// `forced` (element order ↦ membership), solved through the power chain.
/// `lift_primes` requests the divisibility test for being a `q`-th power.
pub fn chain_table(
    solver: &mut PatternSolver<'_>,
    n: u64,
    forced: &BTreeMap<u64, bool>,
    lift_primes: &[u64],
) -> ChainTable {
    let exps = pattern_exponents(n);
    let mut rows = Vec::new();
    let mut omitted = Vec::new();
    let free: Vec<usize> = (0..exps.len())
        .filter(|&i| !forced.contains_key(&(n / exps[i])))
        .collect();
    // rows in lexicographic order of the free columns, "in" before "out"
    for mask in 0..(1u64 << free.len()) {
        let mut pattern: Pattern = exps
            .iter()
            .map(|&e| forced.get(&(n / e)).copied().unwrap_or(false))
            .collect();
        for (bit, &i) in free.iter().enumerate() {
            pattern[i] = mask >> (free.len() - 1 - bit) & 1 == 0;
        }
        let outcome = solver.solve(n, &pattern);
        let lifts = lift_primes
            .iter()
            .map(|&q| LiftCheck {
                prime: q,
                lift_order: n * q,
                failure: match &outcome.raw {
                    Some(x) => power_image_obstruction(n, x, q),
                    // several candidate profiles: excluded only if all of them fail
                    None => {
                        let fails: Vec<Option<(u64, u64)>> = outcome
                            .profiles
                            .iter()
                            .map(|p| {
                                let vals: Vec<BigRational> =
                                    p.a.values()
                                        .map(|&x| crate::linalg::rat(x as i64))
                                        .collect();
                                power_image_obstruction(n, &vals, q)
                            })
                            .collect();
                        if fails.iter().all(Option::is_some) {
                            fails.first().copied().flatten()
                        } else {
                            None
                        }
                    }
                },
            })
            .collect();
        let row = ChainRow {
            pattern,
            outcome,
            lifts,
        };
        if matches!(row.outcome.status, RowStatus::SubPatternExcluded { .. }) {
            omitted.push(row);
        } else {
            rows.push(row);
        }
    }
    ChainTable {
        order: n,
        cycle_count: solver.spec().v / n,
        exponents: exps,
        forced: forced.clone(),
        rows,
        omitted,
    }
}

fn status_text(table: &ChainTable, row: &ChainRow) -> String {
    let divs = divisors(table.order);
    let entry = |d: u64| {
        let i = divs.iter().position(|&x| x == d).expect("divisor");
        row.outcome
            .values
            .as_ref()
            .map(|v| v[i].clone())
            .unwrap_or_default()
    };
    match &row.outcome.status {
        RowStatus::Admissible => match row.lifts.iter().find(|l| l.failure.is_some()) {
            Some(l) => {
                let (d, w) = l.failure.expect("checked");
                let kind = if w == 2 { "parity" } else { "divisibility" };
                format!(
                    "excluded: {kind} under order {} (a{d}={} not divisible by {w})",
                    l.lift_order,
                    entry(d)
                )
            }
            None => "admissible".into(),
        },
        RowStatus::ExceedsBound {
            divisor,
            value,
            bound,
        } => format!("excluded: bound (a{divisor}={value} > {bound})"),
        RowStatus::Negative { divisor, value } => {
            format!("excluded: negative (a{divisor}={value})")
        }
        RowStatus::NonIntegral { divisor, value } => {
            format!("excluded: non-integral (a{divisor}={value})")
        }
        RowStatus::Inconsistent => "excluded: inconsistent".into(),
        RowStatus::SubPatternExcluded { power } => {
            format!("excluded: no profile for {}", power_label(*power))
        }
    }
}

/// One block per table: header, then one line per row.
pub fn render_table(table: &ChainTable) -> String {
    let mut out = String::new();
    let free: Vec<usize> = (0..table.exponents.len())
        .filter(|&i| {
            !table
                .forced
                .contains_key(&(table.order / table.exponents[i]))
        })
        .collect();
    let forced: Vec<String> = table
        .exponents
        .iter()
        .filter(|&&e| table.forced.contains_key(&(table.order / e)))
        .map(|&e| {
            format!(
                "{} {}",
                power_label(e),
                membership_word(table.forced[&(table.order / e)])
            )
        })
        .collect();
    let columns: Vec<String> = free
        .iter()
        .map(|&i| power_label(table.exponents[i]))
        .collect();
    let _ = writeln!(
        out,
        "order {}: {} cycles of length {}; forced: {}; columns: {}",
        table.order,
        table.cycle_count,
        table.order,
        if forced.is_empty() {
            "none".into()
        } else {
            forced.join(", ")
        },
        if columns.is_empty() {
            "none".into()
        } else {
            columns.join(" ")
        },
    );
    let divs = divisors(table.order);
    for row in &table.rows {
        let key: Vec<&str> = free
            .iter()
            .map(|&i| membership_word(row.pattern[i]))
            .collect();
        let values = match &row.outcome.values {
            Some(v) => divs
                .iter()
                .zip(v)
                .map(|(d, x)| format!("a{d}={x}"))
                .collect::<Vec<_>>()
                .join(" "),
            None => format!("{} admissible profiles", row.outcome.profiles.len()),
        };
        let key = if key.is_empty() {
            "-".to_string()
        } else {
            key.join(" ")
        };
        let _ = writeln!(out, "  {key} | {values} | {}", status_text(table, row));
    }
    out
}
