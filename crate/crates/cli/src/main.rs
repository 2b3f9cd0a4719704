//! Command-line front end. Exit status 0 means the analysis ran (whatever
//! its verdict); 2 means the input was rejected.

use benson_core::abelian::{
    cayley_graph, ma_congruence, verify_pds, AbelianGroup, ExplicitPds, GroupElement,
};
use benson_core::benson::{
    congruence_check, enumerate_profiles, solve_prime_order, CycleStructure, PrimeOrderOutcome,
};
use benson_core::casebook::{self, Verdict, VerdictStatus};
use benson_core::dsrg::{dsrg_matrix_check, dsrg_spectrum, DsrgParams};
use benson_core::field::FiniteField;
use benson_core::io;
use benson_core::numtheory::{divisors, is_prime};
use benson_core::spectra::{
    extract_profile, fixed_and_adjacent, has_spectrum, is_automorphism, petersen,
    petersen_automorphisms, verify_theorem_over_group, DenseGraph, Permutation, TheoremReport,
};
use benson_core::srg::{srg_spectrum, IntegerSpectrum, SrgParams};
use benson_core::twoweight::{
    homology, homology_feasibility, hyperoval_pg2_4, tw_cayley_graph, tw_difference_set,
    tw_srg_params, AffineSpace, TwoWeightParams,
};
use benson_core::ENGINE_VERSION;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "benson",
    version,
    about = "Eigenvalue-multiplicity constraints for automorphisms of strongly regular graphs"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues and multiplicities of srg or dsrg parameters.
    Spectrum(SpectrumArgs),
    /// Multiplicity profiles of an automorphism with given f and g.
    Benson(BensonArgs),
    /// Run the refutation rules for a difference set in abelian groups.
    Casebook(CasebookArgs),
    /// Check the trace theorem on explicit graphs and automorphisms.
    Verify(VerifyArgs),
    /// Parameters, graph and homology constraints of a projective two-weight set.
    TwoWeight(TwoWeightArgs),
    /// Check a 0/1 matrix against directed strongly regular parameters.
    DsrgCheck(DsrgCheckArgs),
    /// Multiplicity tables for the powers of a fixed-point-free automorphism.
    Tables(TablesArgs),
}

#[derive(Args)]
struct SpectrumArgs {
    /// v,k,lambda,mu
    #[arg(long, conflicts_with = "dsrg", required_unless_present = "dsrg")]
    srg: Option<String>,
    /// v,k,t,lambda,mu
    #[arg(long)]
    dsrg: Option<String>,
}

#[derive(Args)]
struct BensonArgs {
    #[arg(long)]
    srg: String,
    /// Solve the two-unknown system for an automorphism of prime order.
    #[arg(long, conflicts_with = "order", required_unless_present = "order")]
    prime: Option<u64>,
    /// Enumerate profiles for an automorphism of this order.
    #[arg(long)]
    order: Option<u64>,
    /// Cycle structure `length:count,...`, fixed points as length 1.
    #[arg(long, conflicts_with = "fpf")]
    cycles: Option<String>,
    /// Fixed-point-free: v/n cycles of length n.
    #[arg(long)]
    fpf: bool,
    /// Fixed vertices.
    #[arg(short = 'f', default_value_t = 0)]
    f: u64,
    /// Vertices adjacent to their image.
    #[arg(short = 'g', default_value_t = 0)]
    g: u64,
}

#[derive(Args)]
struct CasebookArgs {
    #[arg(long)]
    srg: String,
    /// Group such as Z2xZ2xZ5xZ5.
    #[arg(
        long,
        conflicts_with = "all_groups",
        required_unless_present = "all_groups"
    )]
    group: Option<String>,
    /// Every abelian group of order v.
    #[arg(long)]
    all_groups: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Built-in graph and automorphism group.
    #[arg(long, value_enum, conflicts_with_all = ["graph", "cayley"])]
    generate: Option<Builtin>,
    /// Graph file.
    #[arg(long, requires = "srg")]
    graph: Option<PathBuf>,
    /// Permutation file; defaults to the identity.
    #[arg(long, requires = "graph")]
    perms: Option<PathBuf>,
    #[arg(long)]
    srg: Option<String>,
    /// Group for a Cayley graph, with --pds.
    #[arg(long, requires = "pds", conflicts_with = "graph")]
    cayley: Option<String>,
    /// Connection set such as "(1,0),(2,0)".
    #[arg(long, requires = "cayley")]
    pds: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    Petersen,
}

#[derive(Args)]
struct TwoWeightArgs {
    /// q,n,N,w1,w2
    #[arg(long)]
    params: String,
    /// Build the hyperoval of PG(2,4) and check the graph.
    #[arg(long, conflicts_with = "points")]
    hyperoval: bool,
    /// Point-set file of homogeneous coordinates.
    #[arg(long, requires = "field")]
    points: Option<PathBuf>,
    /// Field: q, p^e, or p^e/c0,c1,...,ce.
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args)]
struct DsrgCheckArgs {
    /// v,k,t,lambda,mu
    #[arg(long)]
    dsrg: String,
    /// 0/1 adjacency matrix file.
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Args)]
struct TablesArgs {
    #[arg(long)]
    srg: String,
    /// Orders to tabulate, e.g. 5,2,10.
    #[arg(long)]
    orders: String,
    /// Forced memberships by element order, e.g. 2:out,4:out.
    #[arg(long)]
    forced: Option<String>,
    /// Lift primes per order, e.g. 10:2.
    #[arg(long)]
    lift: Option<String>,
}

/// Rejected input; reported on stderr with exit status 2.
struct Rejected(String);

impl<E: std::fmt::Display> From<E> for Rejected {
    fn from(e: E) -> Self {
        Rejected(e.to_string())
    }
}

type Outcome = Result<Report, Rejected>;

struct Report {
    json: Value,
    text: String,
}

fn parse_list(s: &str, len: usize, what: &str) -> Result<Vec<u64>, Rejected> {
    let vals: Vec<u64> = s
        .split(',')
        .map(|x| x.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            Rejected(format!(
                "{what}: expected {len} comma-separated non-negative integers, got '{s}'"
            ))
        })?;
    if vals.len() != len {
        return Err(Rejected(format!(
            "{what}: expected {len} values, got {}",
            vals.len()
        )));
    }
    Ok(vals)
}

fn parse_srg(s: &str) -> Result<SrgParams, Rejected> {
    let x = parse_list(s, 4, "--srg")?;
    Ok(SrgParams::new(x[0], x[1], x[2], x[3])?)
}

fn parse_dsrg(s: &str) -> Result<DsrgParams, Rejected> {
    let x = parse_list(s, 5, "--dsrg")?;
    Ok(DsrgParams::new(x[0], x[1], x[2], x[3], x[4])?)
}

fn read(path: &Path) -> Result<String, Rejected> {
    std::fs::read_to_string(path).map_err(|e| Rejected(format!("{}: {e}", path.display())))
}

fn spectrum_json(s: &IntegerSpectrum) -> Value {
    json!({ "v": s.v, "k": s.k, "theta2": s.theta2, "theta3": s.theta3, "m2": s.m2, "m3": s.m3, "gap": s.gap })
}

fn cmd_spectrum(a: &SpectrumArgs) -> Outcome {
    if let Some(text) = &a.dsrg {
        let p = parse_dsrg(text)?;
        let s = dsrg_spectrum(&p)?;
        return Ok(Report {
            json: json!({ "input": { "dsrg": p }, "spectrum": spectrum_json(&s) }),
            text: format!(
                "dsrg({},{},{},{},{}): k={} kappa2={} kappa3={} m2={} m3={}\n",
                p.v(),
                p.k(),
                p.t(),
                p.lambda(),
                p.mu(),
                s.k,
                s.theta2,
                s.theta3,
                s.m2,
                s.m3
            ),
        });
    }
    let p = parse_srg(a.srg.as_deref().expect("clap requires one of --srg/--dsrg"))?;
    let s = srg_spectrum(&p)?;
    let mut text = format!("{p}: {s}\n");
    if let Some(note) = p.advisory() {
        let _ = writeln!(text, "note: {note}");
    }
    Ok(Report {
        json: json!({ "input": { "srg": p }, "spectrum": spectrum_json(&s), "advisory": p.advisory() }),
        text,
    })
}

fn parse_cycles(s: &str) -> Result<CycleStructure, Rejected> {
    let mut counts = BTreeMap::new();
    for part in s.split(',') {
        let (len, count) = part
            .split_once(':')
            .ok_or_else(|| Rejected(format!("--cycles: expected length:count, got '{part}'")))?;
        let len: u64 = len
            .trim()
            .parse()
            .map_err(|_| Rejected(format!("bad cycle length '{len}'")))?;
        let count: u64 = count
            .trim()
            .parse()
            .map_err(|_| Rejected(format!("bad cycle count '{count}'")))?;
        *counts.entry(len).or_insert(0) += count;
    }
    Ok(CycleStructure::new(counts)?)
}

fn outcome_text(o: &PrimeOrderOutcome, p: u64) -> String {
    match o {
        PrimeOrderOutcome::Feasible { a1, ap } => format!("a1={a1} a{p}={ap}"),
        PrimeOrderOutcome::Infeasible { reason } => format!("infeasible ({reason})"),
    }
}

fn cmd_benson(a: &BensonArgs) -> Outcome {
    let params = parse_srg(&a.srg)?;
    let spec = srg_spectrum(&params)?;
    let congruence = congruence_check(&spec, a.f, a.g);
    let input = json!({ "srg": params, "prime": a.prime, "order": a.order, "cycles": a.cycles, "fpf": a.fpf, "f": a.f, "g": a.g });
    if let Some(p) = a.prime {
        if !is_prime(p) {
            return Err(Rejected(format!("--prime {p} is not prime")));
        }
        let out = solve_prime_order(&spec, p, a.f, a.g)?;
        let text = format!(
            "{}\ncongruence: {}\n",
            outcome_text(&out, p),
            if congruence { "holds" } else { "fails" }
        );
        return Ok(Report {
            json: json!({ "input": input, "outcome": out, "congruence": congruence }),
            text,
        });
    }
    let n = a.order.expect("clap requires one of --prime/--order");
    let cycles = match (&a.cycles, a.fpf) {
        (Some(c), _) => parse_cycles(c)?,
        (None, true) => CycleStructure::fixed_point_free(params.v(), n)?,
        (None, false) => return Err(Rejected("--order needs --cycles or --fpf".into())),
    };
    let profiles = enumerate_profiles(&spec, n, &cycles, a.f, a.g)?;
    let mut text = String::new();
    for p in &profiles {
        let _ = writeln!(text, "{p}");
    }
    let _ = writeln!(
        text,
        "{} profiles; congruence: {}",
        profiles.len(),
        if congruence { "holds" } else { "fails" }
    );
    Ok(Report {
        json: json!({ "input": input, "divisors": divisors(n), "profiles": profiles, "congruence": congruence }),
        text,
    })
}

fn verdict_line(v: &Verdict) -> String {
    let status = match v.status {
        VerdictStatus::Contradiction => "contradiction",
        VerdictStatus::NoContradictionFound => "no contradiction found",
    };
    let rule = v
        .final_rule()
        .map(|r| format!(" at {r:?}"))
        .unwrap_or_default();
    format!("{}: {status}{rule}", v.group)
}

fn cmd_casebook(a: &CasebookArgs) -> Outcome {
    let params = parse_srg(&a.srg)?;
    let verdicts = if a.all_groups {
        casebook::run_all_groups(&params)?
    } else {
        let g: AbelianGroup = a
            .group
            .as_deref()
            .expect("clap requires --group or --all-groups")
            .parse()?;
        vec![casebook::run_case(&params, &g)?]
    };
    let mut text = String::new();
    for v in &verdicts {
        text.push_str(&v.render_text());
        text.push('\n');
    }
    if verdicts.len() > 1 {
        let _ = writeln!(text, "summary for {params}:");
        for v in &verdicts {
            let _ = writeln!(text, "  {}", verdict_line(v));
        }
    }
    Ok(Report {
        json: json!({ "input": { "srg": params, "group": a.group, "all_groups": a.all_groups }, "verdicts": verdicts }),
        text,
    })
}

/// Split `(1,0),(2,0)` into element literals.
fn parse_elements(s: &str) -> Result<Vec<GroupElement>, Rejected> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let end = rest
            .find(')')
            .ok_or_else(|| Rejected(format!("unterminated element in '{s}'")))?;
        out.push(rest[..=end].parse()?);
        rest = rest[end + 1..]
            .trim_start()
            .trim_start_matches(',')
            .trim_start();
    }
    Ok(out)
}

fn theorem_json(r: &TheoremReport) -> Value {
    json!({ "automorphisms": r.automorphisms, "violations": r.violations, "profiles": r.profiles })
}

fn theorem_text(r: &TheoremReport) -> String {
    let mut distinct = r.profiles.clone();
    distinct.sort();
    distinct.dedup();
    let mut out = format!(
        "{} automorphisms, {} distinct profiles, {} violations\n",
        r.automorphisms,
        distinct.len(),
        r.violations.len()
    );
    for p in &distinct {
        let _ = writeln!(out, "  {p}");
    }
    for v in &r.violations {
        let _ = writeln!(out, "  violation at permutation {}: {}", v.perm, v.check);
    }
    out
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    if a.generate.is_some() {
        let (graph, _) = petersen();
        let params = SrgParams::new(10, 3, 0, 1)?;
        let spec = srg_spectrum(&params)?;
        let report = verify_theorem_over_group(&graph, &petersen_automorphisms(), &spec)?;
        return Ok(Report {
            json: json!({ "input": { "generate": "petersen" }, "srg": params, "report": theorem_json(&report) }),
            text: format!("petersen graph {params}\n{}", theorem_text(&report)),
        });
    }
    if let (Some(gs), Some(ds)) = (&a.cayley, &a.pds) {
        let group: AbelianGroup = gs.parse()?;
        let pds = ExplicitPds::from_elements(group.clone(), &parse_elements(ds)?)?;
        let params = verify_pds(&pds)?;
        let spec = srg_spectrum(&params)?;
        let graph = cayley_graph(&pds);
        let translations: Vec<Permutation> = (0..group.order() as usize)
            .map(|t| {
                Permutation::new(
                    (0..group.order() as usize)
                        .map(|x| group.add(x, t))
                        .collect(),
                )
                .expect("translation")
            })
            .collect();
        let report = verify_theorem_over_group(&graph, &translations, &spec)?;
        let invariant = pds.is_multiplier_invariant();
        let ma = ma_congruence(&params)?;
        let text = format!(
            "Cayley graph on {group}: {params}\nunion of multiplier orbits: {}\nMa congruence: {}\n{}",
            if invariant { "yes" } else { "no" },
            if ma { "holds" } else { "fails" },
            theorem_text(&report)
        );
        return Ok(Report {
            json: json!({
                "input": { "cayley": gs, "pds": ds },
                "srg": params,
                "multiplier_invariant": invariant,
                "ma_congruence": ma,
                "report": theorem_json(&report),
            }),
            text,
        });
    }
    let path = a
        .graph
        .as_ref()
        .ok_or_else(|| Rejected("verify needs --generate, --graph or --cayley".into()))?;
    let graph = io::parse_graph(&read(path)?)?;
    let params = parse_srg(a.srg.as_deref().expect("clap requires --srg with --graph"))?;
    if graph.v() as u64 != params.v() {
        return Err(Rejected(format!(
            "graph has {} vertices, parameters need {}",
            graph.v(),
            params.v()
        )));
    }
    let spec = srg_spectrum(&params)?;
    if !has_spectrum(&graph, &spec) {
        return Err(Rejected(format!(
            "spectrum precondition fails: graph is not {params}"
        )));
    }
    let perms = match &a.perms {
        Some(p) => io::parse_permutations(&read(p)?)?,
        None => vec![Permutation::identity(graph.v())],
    };
    for (i, p) in perms.iter().enumerate() {
        if !is_automorphism(&graph, p)? {
            return Err(Rejected(format!("permutation {i} is not an automorphism")));
        }
    }
    let report = verify_theorem_over_group(&graph, &perms, &spec)?;
    Ok(Report {
        json: json!({ "input": { "graph": graph_input(&graph), "perms": perms, "srg": params }, "report": theorem_json(&report) }),
        text: format!("{params}\n{}", theorem_text(&report)),
    })
}

fn graph_input(g: &DenseGraph) -> Value {
    serde_json::from_str(&io::graph_to_json(g)).expect("round trip")
}

fn cmd_two_weight(a: &TwoWeightArgs) -> Outcome {
    let x = parse_list(&a.params, 5, "--params")?;
    let n = u32::try_from(x[1]).map_err(|_| Rejected("projective dimension too large".into()))?;
    let tw = TwoWeightParams::new(x[0], n, x[2], x[3], x[4])?;
    let params = tw_srg_params(&tw)?;
    let spec = srg_spectrum(&params)?;
    let homologies = homology_feasibility(&tw)?;
    let mut text = format!("{params}: {spec}\n");
    if params.is_degenerate() {
        text.push_str("note: degenerate (disjoint union of cliques or complete multipartite)\n");
    }
    for (p, o) in &homologies {
        let _ = writeln!(
            text,
            "homology of order {p} (f=1, g={}): {}",
            params.k(),
            outcome_text(o, *p)
        );
    }
    let mut json = json!({
        "input": { "params": tw, "hyperoval": a.hyperoval, "field": a.field, "points": a.points },
        "srg": params,
        "spectrum": spectrum_json(&spec),
        "homology": homologies,
    });
    let points = match (&a.points, a.hyperoval) {
        (Some(path), _) => {
            let field: FiniteField = a.field.as_deref().expect("clap requires --field").parse()?;
            Some((field, io::parse_points(&read(path)?)?))
        }
        (None, true) => {
            if (tw.q, tw.n) != (4, 2) {
                return Err(Rejected("--hyperoval needs q=4 and n=2".into()));
            }
            let field = FiniteField::standard(2, 2)?;
            let pts = hyperoval_pg2_4(&field);
            Some((field, pts))
        }
        (None, false) => None,
    };
    if let Some((field, pts)) = points {
        if field.order() != tw.q {
            return Err(Rejected(format!(
                "field {field} does not have order {}",
                tw.q
            )));
        }
        let space = AffineSpace::new(field.clone(), tw.n);
        let graph = tw_cayley_graph(&space, &pts)?;
        let counted = graph.srg_parameters();
        let pds = verify_pds(&tw_difference_set(&space, &pts)?).ok();
        let matches = counted == Some((params.k(), params.lambda(), params.mu()));
        let mut construction = json!({ "points": pts, "common_neighbours": counted, "difference_set": pds, "matches": matches });
        let _ = writeln!(
            text,
            "constructed graph on {} vertices: {}",
            graph.v(),
            match counted {
                Some((k, l, m)) => format!(
                    "srg({},{k},{l},{m}){}",
                    graph.v(),
                    if matches { "" } else { " (mismatch)" }
                ),
                None => "not strongly regular".into(),
            }
        );
        if tw.q > 2 && matches {
            let h = homology(&space, field.primitive_element());
            let (f, g) = fixed_and_adjacent(&graph, &h);
            let profile = extract_profile(&graph, &h, &spec)?;
            let _ = writeln!(
                text,
                "homology x -> {}x: order {}, f={f} g={g}, {profile}",
                field.primitive_element(),
                h.order()
            );
            construction["homology"] =
                json!({ "order": h.order(), "f": f, "g": g, "profile": profile });
        }
        json["construction"] = construction;
    }
    Ok(Report { json, text })
}

fn cmd_dsrg_check(a: &DsrgCheckArgs) -> Outcome {
    let params = parse_dsrg(&a.dsrg)?;
    let spec = dsrg_spectrum(&params)?;
    let matrix = io::parse_matrix(&read(&a.matrix)?)?;
    let ok = dsrg_matrix_check(&matrix, &params)?;
    let identity = congruence_check(&spec, params.v(), 0);
    Ok(Report {
        json: json!({ "input": { "dsrg": params, "matrix": a.matrix }, "spectrum": spectrum_json(&spec), "matrix_ok": ok, "identity_congruence": identity }),
        text: format!(
            "dsrg({},{},{},{},{}): matrix {}\nidentity automorphism congruence (f={}, g=0): {}\n",
            params.v(),
            params.k(),
            params.t(),
            params.lambda(),
            params.mu(),
            if ok {
                "satisfies A^2 = tI + lambda A + mu (J - I - A) and AJ = JA = kJ"
            } else {
                "does not satisfy the defining equations"
            },
            params.v(),
            if identity { "holds" } else { "fails" }
        ),
    })
}

fn parse_keyed<T>(
    s: &str,
    mut value: impl FnMut(&str) -> Result<T, Rejected>,
) -> Result<BTreeMap<u64, T>, Rejected> {
    let mut out = BTreeMap::new();
    for part in s.split(',') {
        let (k, v) = part
            .split_once(':')
            .ok_or_else(|| Rejected(format!("expected key:value, got '{part}'")))?;
        let k: u64 = k
            .trim()
            .parse()
            .map_err(|_| Rejected(format!("bad order '{k}'")))?;
        out.insert(k, value(v.trim())?);
    }
    Ok(out)
}

fn cmd_tables(a: &TablesArgs) -> Outcome {
    let params = parse_srg(&a.srg)?;
    let orders: Vec<u64> = a
        .orders
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| Rejected(format!("bad order '{x}'")))
        })
        .collect::<Result<_, _>>()?;
    let forced = match &a.forced {
        Some(s) => parse_keyed(s, |v| match v {
            "in" => Ok(true),
            "out" => Ok(false),
            _ => Err(Rejected(format!("membership must be in or out, got '{v}'"))),
        })?,
        None => BTreeMap::new(),
    };
    let lifts = match &a.lift {
        Some(s) => parse_keyed(s, |v| {
            v.parse::<u64>()
                .map(|q| vec![q])
                .map_err(|_| Rejected(format!("bad prime '{v}'")))
        })?,
        None => BTreeMap::new(),
    };
    let text = casebook::render_tables(&params, &orders, &forced, &lifts)?;
    Ok(Report {
        json: json!({ "input": { "srg": params, "orders": orders, "forced": forced, "lift": lifts }, "rendered": text }),
        text,
    })
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Benson(a) => cmd_benson(a),
        Command::Casebook(a) => cmd_casebook(a),
        Command::Verify(a) => cmd_verify(a),
        Command::TwoWeight(a) => cmd_two_weight(a),
        Command::DsrgCheck(a) => cmd_dsrg_check(a),
        Command::Tables(a) => cmd_tables(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(mut report) => {
            let body = match cli.format {
                Format::Text => report.text,
                Format::Json => {
                    report.json["engine_version"] = json!(ENGINE_VERSION);
                    let mut s =
                        serde_json::to_string_pretty(&report.json).expect("report serializes");
                    s.push('\n');
                    s
                }
            };
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, body) {
                        eprintln!("error: {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{body}"),
            }
            ExitCode::SUCCESS
        }
        Err(Rejected(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
