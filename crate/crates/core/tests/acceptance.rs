// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use benson_core::abelian::{
    cayley_graph, ma_congruence, verify_pds, AbelianGroup, ExplicitPds, GroupElement,
};
use benson_core::benson::{congruence_check, solve_prime_order, Infeasibility, PrimeOrderOutcome};
use benson_core::casebook::{
    enumerate_group_candidates, render_tables, run_case, Rule, VerdictStatus,
};
use benson_core::dsrg::{dsrg_matrix_check, dsrg_spectrum, DsrgError, DsrgParams};
use benson_core::field::FiniteField;
use benson_core::linalg::IntMatrix;
use benson_core::numtheory::{divisors, euler_phi, mobius, ramanujan_sum};
use benson_core::spectra::{
    extract_profile, fixed_and_adjacent, petersen, petersen_automorphisms,
    verify_theorem_over_group, Permutation,
};
use benson_core::srg::{srg_spectrum, SrgParams};
use benson_core::twoweight::{
    homology, homology_feasibility, hyperoval_pg2_4, tw_cayley_graph, tw_srg_params, AffineSpace,
    TwoWeightParams,
};
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn srg(v: u64, k: u64, l: u64, m: u64) -> SrgParams {
    SrgParams::new(v, k, l, m).expect("valid parameters")
}

fn fixture(name: &str) -> String {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

fn first_difference(got: &str, want: &str) -> String {
    for (i, (g, w)) in got.lines().zip(want.lines()).enumerate() {
        if g != w {
            return format!("line {}: got '{g}', want '{w}'", i + 1);
        }
    }
    format!(
        "line counts differ: got {}, want {}",
        got.lines().count(),
        want.lines().count()
    )
}

fn golden_first() -> Check {
    let got = render_tables(
        &srg(100, 33, 8, 12),
        &[5, 2, 10],
        &BTreeMap::new(),
        &BTreeMap::from([(10, vec![2])]),
    )
    .map_err(|e| e.to_string())?;
    let want = fixture("tables_100_33_8_12.txt");
    ensure(got == want, || first_difference(&got, &want))
}

fn golden_second() -> Check {
    let got = render_tables(
        &srg(100, 36, 14, 12),
        &[5, 2, 4, 10, 20],
        &BTreeMap::from([(2, false), (4, false)]),
        &BTreeMap::from([(10, vec![2])]),
    )
    .map_err(|e| e.to_string())?;
    let want = fixture("tables_100_36_14_12.txt");
    ensure(got == want, || first_difference(&got, &want))
}

fn nonexistence() -> Check {
    for (k, l, m) in [(33, 8, 12), (36, 14, 12)] {
        let params = srg(100, k, l, m);
        let groups = enumerate_group_candidates(100, &[]);
        ensure(groups.len() == 4, || {
            format!("{} groups of order 100", groups.len())
        })?;
        for g in &groups {
            let verdict = run_case(&params, g).map_err(|e| e.to_string())?;
            ensure(verdict.status == VerdictStatus::Contradiction, || {
                format!("{params} in {g}: no contradiction")
            })?;
            verdict
                .replay()
                .map_err(|e| format!("{params} in {g}: {e}"))?;
            let last = verdict.chain.last().expect("nonempty chain");
            let expected = match (k, g.to_string().as_str()) {
                (_, "Z2xZ2xZ25") | (_, "Z4xZ25") => Rule::PrimeSquareExclusion,
                (_, "Z2xZ2xZ5xZ5") => Rule::PairOrbit,
                (33, "Z4xZ5xZ5") => Rule::DifferenceCensus,
                (36, "Z4xZ5xZ5") => Rule::BoundExclusion,
                _ => unreachable!(),
            };
            ensure(last.rule == expected, || {
                format!(
                    "{params} in {g}: ends at {:?}, expected {expected:?}",
                    last.rule
                )
            })?;
            match expected {
                Rule::DifferenceCensus => {
                    let zero = last.conclusion.data["targets"]
                        .as_array()
                        .is_some_and(|ts| {
                            ts.iter()
                                .any(|t| t["order"] == 4 && t["bound"] == 0 && t["required"] == 12)
                        });
                    ensure(zero, || {
                        format!("{params} in {g}: no order-4 target with 0 of 12 representations")
                    })?;
                }
                Rule::PairOrbit if k == 36 => {
                    let eights = last.conclusion.data["targets"]
                        .as_array()
                        .is_some_and(|ts| {
                            ts.iter().any(|t| {
                                t["status"] == "out"
                                    && t["mu_attainable"] == false
                                    && t["usable_sizes"]
                                        .as_array()
                                        .is_some_and(|s| !s.is_empty() && s.iter().all(|x| x == 8))
                            })
                        });
                    ensure(eights && last.conclusion.data["mu"] == 12, || {
                        format!("{params} in {g}: pair orbits are not all of size 8")
                    })?;
                }
                Rule::PairOrbit => {
                    let blocked = last.conclusion.data["targets"]
                        .as_array()
                        .is_some_and(|ts| ts.iter().all(|t| t["mu_attainable"] == false));
                    ensure(blocked, || {
                        format!("{params} in {g}: mu = 12 attainable for some involution")
                    })?;
                }
                _ => {}
            }
        }
    }
    Ok(())
}

fn theorem_oracle() -> Check {
    let (graph, _) = petersen();
    let spec = srg_spectrum(&srg(10, 3, 0, 1)).map_err(|e| e.to_string())?;
    let perms = petersen_automorphisms();
    ensure(perms.len() == 120, || {
        format!("{} Petersen automorphisms", perms.len())
    })?;
    let report = verify_theorem_over_group(&graph, &perms, &spec).map_err(|e| e.to_string())?;
    ensure(report.is_clean(), || {
        format!("Petersen violations: {:?}", report.violations)
    })?;

    let (group, pds) = rook();
    let graph = cayley_graph(&pds);
    let spec = srg_spectrum(&srg(9, 4, 1, 2)).map_err(|e| e.to_string())?;
    let translations = translations(&group);
    ensure(translations.len() == 9, || "expected 9 translations".into())?;
    let report =
        verify_theorem_over_group(&graph, &translations, &spec).map_err(|e| e.to_string())?;
    ensure(report.is_clean(), || {
        format!("rook violations: {:?}", report.violations)
    })
}

fn rook() -> (AbelianGroup, ExplicitPds) {
    let group: AbelianGroup = "Z3xZ3".parse().unwrap();
    let elems: Vec<GroupElement> = ["(1,0)", "(2,0)", "(0,1)", "(0,2)"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
    let pds = ExplicitPds::from_elements(group.clone(), &elems).unwrap();
    (group, pds)
}

fn translations(group: &AbelianGroup) -> Vec<Permutation> {
    let v = group.order() as usize;
    (0..v)
        .map(|t| Permutation::new((0..v).map(|x| group.add(x, t)).collect()).unwrap())
        .collect()
}

fn pds_corpus() -> Check {
    let (group, pds) = rook();
    let params = verify_pds(&pds).map_err(|e| e.to_string())?;
    ensure(
        (params.v(), params.k(), params.lambda(), params.mu()) == (9, 4, 1, 2),
        || format!("verify_pds gave {params}"),
    )?;
    let graph = cayley_graph(&pds);
    for (t, perm) in translations(&group).iter().enumerate().skip(1) {
        let fg = fixed_and_adjacent(&graph, perm);
        let want = if pds.contains(t) { (0, 9) } else { (0, 0) };
        ensure(fg == want, || {
            format!("translation {t}: (f,g) = {fg:?}, want {want:?}")
        })?;
    }
    ensure(ma_congruence(&params).map_err(|e| e.to_string())?, || {
        "Ma congruence fails".into()
    })?;
    ensure(pds.is_multiplier_invariant(), || {
        "not a union of multiplier orbits".into()
    })?;
    let verdict = run_case(&params, &group).map_err(|e| e.to_string())?;
    ensure(
        verdict.status == VerdictStatus::NoContradictionFound,
        || "rook's graph refuted".into(),
    )?;
    verdict.replay().map_err(|e| e.to_string())
}

fn two_weight() -> Check {
    let tw = TwoWeightParams::new(4, 2, 6, 0, 2).map_err(|e| e.to_string())?;
    let params = tw_srg_params(&tw).map_err(|e| e.to_string())?;
    let field: FiniteField = "4"
        .parse()
        .map_err(|e: benson_core::field::FieldError| e.to_string())?;
    let space = AffineSpace::new(field.clone(), 2);
    let graph = tw_cayley_graph(&space, &hyperoval_pg2_4(&field)).map_err(|e| e.to_string())?;
    // common neighbours counted directly on the adjacency relation
    let v = graph.v();
    let mut counts: BTreeMap<(bool, usize), usize> = BTreeMap::new();
    for i in 0..v {
        for j in 0..v {
            if i != j {
                let c = (0..v)
                    .filter(|&w| graph.adjacent(i, w) && graph.adjacent(j, w))
                    .count();
                counts.insert((graph.adjacent(i, j), c), 0);
            }
        }
    }
    let degree: Vec<usize> = (0..v)
        .map(|i| (0..v).filter(|&j| graph.adjacent(i, j)).count())
        .collect();
    let keys: Vec<(bool, usize)> = counts.into_keys().collect();
    ensure(
        v == 64 && degree.iter().all(|&d| d == 18) && keys == vec![(false, 6), (true, 2)],
        || format!("constructed graph: v={v}, common-neighbour classes {keys:?}"),
    )?;
    ensure(
        (params.v(), params.k(), params.lambda(), params.mu()) == (64, 18, 2, 6),
        || format!("formula gave {params}"),
    )?;
    let map = homology_feasibility(&tw).map_err(|e| e.to_string())?;
    ensure(
        map.get(&3).and_then(PrimeOrderOutcome::feasible) == Some((15, 15)),
        || format!("homology outcome {map:?}"),
    )?;
    let h = homology(&space, field.primitive_element());
    let fg = fixed_and_adjacent(&graph, &h);
    ensure(fg == (1, 18), || format!("homology (f,g) = {fg:?}"))?;
    let spec = srg_spectrum(&params).map_err(|e| e.to_string())?;
    let profile = extract_profile(&graph, &h, &spec).map_err(|e| e.to_string())?;
    ensure(profile.a_vec() == vec![15, 15], || {
        format!("extracted {profile}")
    })
}

/// First 0/1 matrix with zero diagonal, row and column sums k, and
/// A^2 = tI + lambda A + mu (J - I - A), by backtracking over rows.
fn search_dsrg(v: usize, k: usize, t: i64, lambda: i64, mu: i64) -> Option<Vec<Vec<i64>>> {
    fn rows_with(v: usize, k: usize, i: usize) -> Vec<Vec<i64>> {
        (0u32..1 << v)
            .filter(|m| m.count_ones() as usize == k && m >> i & 1 == 0)
            .map(|m| (0..v).map(|j| (m >> j & 1) as i64).collect())
            .collect()
    }
    fn ok(a: &[Vec<i64>], t: i64, lambda: i64, mu: i64) -> bool {
        let v = a.len();
        (0..v).all(|i| {
            (0..v).all(|j| {
                let sq: i64 = (0..v).map(|l| a[i][l] * a[l][j]).sum();
                let want = if i == j {
                    t
                } else if a[i][j] == 1 {
                    lambda
                } else {
                    mu
                };
                sq == want
            })
        })
    }
    fn go(
        a: &mut Vec<Vec<i64>>,
        v: usize,
        k: usize,
        p: (i64, i64, i64),
        cols: &mut Vec<usize>,
    ) -> bool {
        let i = a.len();
        if i == v {
            return ok(a, p.0, p.1, p.2);
        }
        for row in rows_with(v, k, i) {
            if (0..v).any(|j| cols[j] + row[j] as usize > k) {
                continue;
            }
            for j in 0..v {
                cols[j] += row[j] as usize;
            }
            a.push(row);
            if go(a, v, k, p, cols) {
                return true;
            }
            let row = a.pop().unwrap();
            for j in 0..v {
                cols[j] -= row[j] as usize;
            }
        }
        false
    }
    let mut a = Vec::new();
    let mut cols = vec![0; v];
    go(&mut a, v, k, (t, lambda, mu), &mut cols).then_some(a)
}

fn dsrg_path() -> Check {
    let params = DsrgParams::new(6, 2, 1, 0, 1).map_err(|e| e.to_string())?;
    let spec = dsrg_spectrum(&params).map_err(|e| e.to_string())?;
    ensure(
        (spec.theta2, spec.theta3, spec.m2, spec.m3) == (0, -1, 3, 2),
        || format!("spectrum {spec}"),
    )?;
    let rows = search_dsrg(6, 2, 1, 0, 1).ok_or("exhaustive search found no dsrg(6,2,1,0,1)")?;
    let a = IntMatrix::from_fn(6, 6, |i, j| rows[i][j]);
    ensure(
        dsrg_matrix_check(&a, &params).map_err(|e| e.to_string())?,
        || "found matrix rejected".into(),
    )?;
    ensure(congruence_check(&spec, 6, 0), || {
        "congruence fails for the identity".into()
    })?;
    ensure(
        matches!(
            DsrgParams::new(10, 3, 3, 0, 1),
            Err(DsrgError::UndirectedCase { .. })
        ),
        || "undirected case accepted".into(),
    )?;
    ensure(
        matches!(
            DsrgParams::new(10, 4, 2, 2, 1),
            Err(DsrgError::HadamardCase { .. })
        ),
        || "Hadamard case accepted".into(),
    )
}

fn properties() -> Check {
    for n in 1..=200u64 {
        let ds = divisors(n);
        let mob: i64 = ds.iter().map(|&d| mobius(d)).sum();
        ensure(mob == i64::from(n == 1), || {
            format!("sum of mobius over divisors of {n} is {mob}")
        })?;
        let phi: u64 = ds.iter().map(|&d| euler_phi(d)).sum();
        ensure(phi == n, || {
            format!("sum of phi over divisors of {n} is {phi}")
        })?;
        for j in 0..=n as i64 {
            let s: i64 = ds.iter().map(|&d| ramanujan_sum(d, j)).sum();
            let want = if j % n as i64 == 0 { n as i64 } else { 0 };
            ensure(s == want, || {
                format!("sum of c_d({j}) over divisors of {n} is {s}")
            })?;
        }
    }
    // residual independence of r, on profiles drawn from the chain tables
    let mut rng = 0x2545_f491_4f6c_dd1du64;
    let mut next = || {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        rng
    };
    let cases = [
        (srg(100, 33, 8, 12), 10u64),
        (srg(100, 36, 14, 12), 10),
        (srg(100, 36, 14, 12), 4),
        (srg(64, 18, 2, 6), 4),
    ];
    let mut tested = 0;
    while tested < 100 {
        let (params, n) = cases[(next() % cases.len() as u64) as usize];
        let spec = srg_spectrum(&params).unwrap();
        let cycles = benson_core::benson::CycleStructure::fixed_point_free(params.v(), n).unwrap();
        let g = [0, params.v()][(next() % 2) as usize];
        let profiles = benson_core::benson::enumerate_profiles(&spec, n, &cycles, 0, g).unwrap();
        if profiles.is_empty() {
            continue;
        }
        let p = &profiles[(next() % profiles.len() as u64) as usize];
        let r = (next() % 2001) as i64 - 1000;
        let res = benson_core::benson::benson_residual(&spec, p, r, 0, g);
        ensure(res == 0, || {
            format!("{params} profile {p}: residual {res} at r={r}")
        })?;
        tested += 1;
    }
    let spec = srg_spectrum(&srg(100, 33, 8, 12)).unwrap();
    match solve_prime_order(&spec, 3, 0, 0).map_err(|e| e.to_string())? {
        PrimeOrderOutcome::Infeasible {
            reason: Infeasibility::NonIntegral { .. },
        } => Ok(()),
        other => Err(format!("order 3 outcome {other:?}")),
    }
}

type Criterion = (&'static str, fn() -> Check, Duration);

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "1 golden tables srg(100,33,8,12)",
            golden_first,
            Duration::from_secs(1),
        ),
        (
            "2 golden tables srg(100,36,14,12)",
            golden_second,
            Duration::from_secs(1),
        ),
        (
            "3 contradictions on every group of order 100",
            nonexistence,
            Duration::from_secs(10),
        ),
        (
            "4 trace theorem on Petersen and rook's graph",
            theorem_oracle,
            Duration::from_secs(30),
        ),
        (
            "5 rook's graph difference set",
            pds_corpus,
            Duration::from_secs(10),
        ),
        (
            "6 hyperoval two-weight graph and homology",
            two_weight,
            Duration::from_secs(10),
        ),
        ("7 directed srg path", dsrg_path, Duration::from_secs(30)),
        (
            "8 divisor sums, residual independence, prime-order infeasibility",
            properties,
            Duration::from_secs(30),
        ),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= limit, || {
                format!("took {elapsed:?}, limit {limit:?}")
            })
        });
        match result {
            Ok(()) => println!("PASS criterion {name} ({elapsed:.2?})"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name}: {e}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
