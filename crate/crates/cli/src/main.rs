//! `cayley-drg`: check, classify and construct distance-regular Cayley graphs.
//!
//! Exit codes: 0 ok, 1 anomalies or failed predictions, 2 negative verdict,
//! 64 usage or parse error, 65 budget exceeded.

use std::io::Write;
use std::process::ExitCode;

use cayley_drg::bits::BitSet;
use cayley_drg::cayley::{build, distance_partition, SymmetricSet};
use cayley_drg::classify::{
    census, construct_family, CensusMode, CensusOptions, KernelCheck, DEFAULT_MAX_SETS,
    DEFAULT_NODE_BUDGET,
};
use cayley_drg::designs::{
    bipartite_from_rows, diffset_search, doubled_group_families, rows_from_shifted,
    BipartiteConstruction, DEFAULT_SEARCH_BUDGET,
};
use cayley_drg::drg::{check_drg, recognize, srg_params, FamilyTag};
use cayley_drg::fourier::fourier_audit;
use cayley_drg::group::GroupDescriptor;
use cayley_drg::schur::{distance_module, is_primitive, is_schur_ring};
use cayley_drg::structure::{antipodal_classes, is_bipartite, is_primitive_graph};
use cayley_drg::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

const EXIT_ANOMALY: u8 = 1;
const EXIT_NEGATIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_BUDGET: u8 = 65;

#[derive(Parser)]
#[command(
    name = "cayley-drg",
    version,
    about = "Distance-regular Cayley graphs over Z_m + Z_q"
)]
struct Cli {
    /// Output format; only JSON output is stable across versions and threads.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
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
    /// Decide distance-regularity of one connection set.
    Check(SetArgs),
    /// Enumerate every symmetric set of a group and classify the hits.
    Census(CensusArgs),
    /// Build a connection set for a known family.
    Construct(ConstructArgs),
    /// Verify the common-neighbor identities in transform space.
    FourierAudit(SetArgs),
    /// Bipartite graphs over Z_n + Z_2 from odd rows R_0, R_1.
    #[command(alias = "theorem4")]
    Bipartite(BipartiteArgs),
}

#[derive(clap::Args)]
struct SetArgs {
    /// "p^s x p" (e.g. 3^2x3), "Zn:27" or "Zn:16x2".
    #[arg(long)]
    group: String,
    /// Elements like (1,0),(2,0); "all" for every non-identity element.
    #[arg(long)]
    set: String,
    /// Add missing inverses instead of rejecting the set.
    #[arg(long)]
    close: bool,
}

#[derive(clap::Args)]
struct CensusArgs {
    #[arg(long)]
    group: String,
    #[arg(long, env = "CAYLEY_DRG_THREADS", default_value_t = 1)]
    threads: usize,
    /// Contiguous ranges of the selection space; does not affect output.
    #[arg(long, default_value_t = 16)]
    partitions: usize,
    /// Largest number of symmetric sets to scan.
    #[arg(long, default_value_t = DEFAULT_MAX_SETS)]
    max_sets: u128,
    /// Send every set through the generic checker.
    #[arg(long)]
    no_pruning: bool,
    /// Compare the fast kernel with the generic checker on every set.
    #[arg(long)]
    verify_kernel: bool,
    /// Run the Schur-ring check on every N-th hit (0 disables).
    #[arg(long, default_value_t = 1)]
    schur_every: usize,
    #[arg(long)]
    no_fourier: bool,
    /// Enumerate automorphism-orbit representatives only (experimental).
    #[arg(long)]
    orbit_first: bool,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Complete,
    Multipartite,
    TdLine,
    Cycle,
    Paley,
    Cocktail,
}

#[derive(clap::Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Group; defaults to Z_{p^s} + Z_p for the pair families.
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// Number of parallel classes (td-line).
    #[arg(long)]
    r: Option<usize>,
    /// Part size (multipartite); defaults to p^s.
    #[arg(long)]
    part_size: Option<usize>,
    /// Order for cycle, Paley and cocktail families.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(clap::Args)]
struct BipartiteArgs {
    #[arg(long)]
    n: usize,
    /// Odd residues of the first row, e.g. 1,15.
    #[arg(long, requires = "r1")]
    r0: Option<String>,
    #[arg(long, requires = "r0")]
    r1: Option<String>,
    /// Search Z_{n/2} + Z_2 for difference sets and try every admissible one.
    #[arg(long, conflicts_with = "r0")]
    auto_search: bool,
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u128,
}

struct Outcome {
    code: u8,
    json: Value,
    text: String,
}

fn fail(e: Error) -> u8 {
    eprintln!("error: {e}");
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Inconsistent(_) => EXIT_ANOMALY,
        _ => EXIT_USAGE,
    }
}

fn parse_group(text: &str) -> Result<GroupDescriptor, Error> {
    text.parse()
}

fn parse_set(args: &SetArgs) -> Result<SymmetricSet, Error> {
    let group = parse_group(&args.group)?;
    if args.set.trim() == "all" {
        return Ok(SymmetricSet::all_nonidentity(group));
    }
    if args.close {
        SymmetricSet::parse_closed(group, &args.set)
    } else {
        SymmetricSet::from_elements(group, &group.parse_elements(&args.set)?)
    }
}

fn cmd_check(args: &SetArgs) -> Result<Outcome, Error> {
    let set = parse_set(args)?;
    let group = set.group();
    let strings = set.to_strings();
    let graph = build(set);
    let connected = graph.is_connected();
    let array = if connected { check_drg(&graph) } else { None };
    let Some(array) = array else {
        let reason = if connected {
            "not distance-regular"
        } else {
            "not connected"
        };
        return Ok(Outcome {
            code: EXIT_NEGATIVE,
            json: json!({"group": group, "set": strings, "drg": false, "connected": connected}),
            text: format!("{group}: {reason}; not DRG"),
        });
    };
    let family = recognize(&array);
    let bipartite = is_bipartite(graph.graph()).is_some();
    let antipodal =
        array.diameter() >= 2 && antipodal_classes(graph.graph(), array.diameter()).is_some();
    let partition = distance_partition(&graph)?;
    let primitive = is_primitive_graph(&graph, &partition);
    let module = distance_module(&graph, &partition);
    let schur = is_schur_ring(&module).is_some();
    let schur_primitive = schur.then(|| is_primitive(&module));
    let srg = srg_params(&array);
    let consistent = schur && schur_primitive == Some(primitive);
    Ok(Outcome {
        code: if consistent { 0 } else { EXIT_ANOMALY },
        json: json!({
            "group": group,
            "set": strings,
            "drg": true,
            "connected": true,
            "array": array,
            "family": family,
            "srg": srg,
            "flags": {
                "primitive": primitive,
                "bipartite": bipartite,
                "antipodal": antipodal,
                "schurVerified": schur,
                "schurPrimitive": schur_primitive,
            },
        }),
        text: format!(
            "{group}: DRG {array} {family}{}\nprimitive={primitive} bipartite={bipartite} antipodal={antipodal} schur={schur}",
            srg.map(|p| format!(" SRG{p}")).unwrap_or_default()
        ),
    })
}

fn cmd_census(args: &CensusArgs) -> Result<Outcome, Error> {
    let group = parse_group(&args.group)?;
    let opts = CensusOptions {
        mode: if args.orbit_first {
            CensusMode::OrbitFirst {
                node_budget: args.node_budget,
            }
        } else {
            CensusMode::Full
        },
        partitions: args.partitions.max(1),
        threads: args.threads.max(1),
        pruning: !args.no_pruning,
        kernel_check: if args.verify_kernel {
            KernelCheck::All
        } else {
            KernelCheck::Hits
        },
        schur_every: args.schur_every,
        fourier: !args.no_fourier,
        max_sets: args.max_sets,
    };
    let report = census(group, &opts)?;
    let mut text = format!(
        "{group}: {} symmetric sets, {} connected, {} DRG sets in {} orbits, {} parameter classes\n",
        report.totals.symmetric_sets,
        report.totals.connected,
        report.totals.drg_sets,
        report.totals.orbits,
        report.totals.parameter_classes
    );
    for f in &report.families {
        text += &format!(
            "  {} {}: {} sets, {} orbits\n",
            f.family, f.array, f.sets, f.orbits
        );
    }
    for a in &report.anomalies {
        text += &format!("  anomaly: {a}\n");
    }
    for r in &report.review {
        text += &format!("  review: {r}\n");
    }
    Ok(Outcome {
        code: if report.anomalies.is_empty() {
            0
        } else {
            EXIT_ANOMALY
        },
        json: serde_json::to_value(&report).expect("report serializes"),
        text: text.trim_end().to_string(),
    })
}

fn cmd_construct(args: &ConstructArgs) -> Result<Outcome, Error> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Error::Precondition(format!("--{flag} is required")))
    };
    let pair_group = || -> Result<GroupDescriptor, Error> {
        match &args.group {
            Some(g) => parse_group(g),
            None => GroupDescriptor::prime_power_pair(need(args.p, "p")?, args.s),
        }
    };
    let (group, family) = match args.family {
        Family::Complete => (pair_group()?, FamilyTag::Complete),
        Family::Multipartite => {
            let g = pair_group()?;
            let m = match (args.part_size, g.pair_params()) {
                (Some(m), _) => m,
                (None, Some((p, s))) => p.pow(s),
                (None, None) => return Err(Error::Precondition("--part-size is required".into())),
            };
            if m == 0 || g.order() % m != 0 {
                return Err(Error::Precondition(format!(
                    "part size {m} does not divide {}",
                    g.order()
                )));
            }
            let family = FamilyTag::CompleteMultipartite {
                parts: g.order() / m,
                part_size: m,
            };
            (g, family)
        }
        Family::TdLine => {
            let g = pair_group()?;
            let v = g.first_mod();
            (
                g,
                FamilyTag::TdLineGraph {
                    r: need(args.r, "r")?,
                    v,
                },
            )
        }
        Family::Cycle => {
            let n = need(args.n, "n")?;
            (GroupDescriptor::cyclic(n)?, FamilyTag::Cycle(n))
        }
        Family::Paley => {
            let n = need(args.n, "n")?;
            (GroupDescriptor::cyclic(n)?, FamilyTag::Paley(n))
        }
        Family::Cocktail => {
            let n = need(args.n, "n")?;
            (
                GroupDescriptor::product(n, 2)?,
                FamilyTag::CocktailComplement(n),
            )
        }
    };
    let graph = construct_family(group, family)?;
    let array = check_drg(&graph)
        .ok_or_else(|| Error::Inconsistent("construction is not distance-regular".into()))?;
    let srg = srg_params(&array);
    let set = graph.connection_set().to_strings();
    Ok(Outcome {
        code: 0,
        json: json!({"group": group, "family": family, "set": set, "array": array, "srg": srg}),
        text: format!(
            "{group}: {family} {array}{}\nS = {{{}}}",
            srg.map(|p| format!(" SRG{p}")).unwrap_or_default(),
            set.join(",")
        ),
    })
}

fn cmd_fourier(args: &SetArgs) -> Result<Outcome, Error> {
    let set = parse_set(args)?;
    let group = set.group();
    let graph = build(set);
    let drg = graph.is_connected() && check_drg(&graph).is_some_and(|a| a.diameter() >= 2);
    if !drg {
        return Ok(Outcome {
            code: EXIT_NEGATIVE,
            json: json!({"group": group, "set": graph.connection_set().to_strings(), "audited": false}),
            text: format!(
                "{group}: not a distance-regular graph of diameter at least 2; nothing to audit"
            ),
        });
    }
    let audit = fourier_audit(&graph)?;
    let text = match &audit.failure {
        None => format!(
            "{group}: all identities hold ({} row checks, {} weighted checks; k={} lambda={} mu={})",
            audit.identity_checks, audit.weighted_checks, audit.k, audit.lambda, audit.mu
        ),
        Some(f) => format!("{group}: identity failed: {f}"),
    };
    Ok(Outcome {
        code: if audit.passed() { 0 } else { EXIT_ANOMALY },
        json: serde_json::to_value(&audit).expect("audit serializes"),
        text,
    })
}

fn parse_row(n: usize, text: &str) -> Result<BitSet, Error> {
    text.split(',')
        .map(|t| {
            let x: i64 = t
                .trim()
                .parse()
                .map_err(|_| Error::ElementSpec(t.to_string()))?;
            Ok(x.rem_euclid(n as i64) as usize)
        })
        .collect()
}

fn construction_line(c: &BipartiteConstruction) -> String {
    format!(
        "S = {{{}}}: {} certificate={} bipartite={} antipodal={} prediction={}",
        c.connection_set.join(","),
        c.array
            .as_ref()
            .map_or("not DRG".to_string(), |a| a.to_string()),
        c.certificate
            .as_ref()
            .map_or("none".to_string(), |d| format!(
                "({},{},{})",
                d.v, d.k, d.lambda
            )),
        c.bipartite,
        c.antipodal,
        c.prediction_holds
    )
}

fn cmd_bipartite(args: &BipartiteArgs) -> Result<Outcome, Error> {
    let n = args.n;
    let classical: Vec<Value> = doubled_group_families(n)?
        .into_iter()
        .map(|(name, g, a)| json!({"name": name, "set": g.connection_set().to_strings(), "array": a}))
        .collect();
    let mut text = format!("Z_{n} + Z_2\n");
    for c in &classical {
        text += &format!(
            "  {} {}\n",
            c["name"].as_str().unwrap_or(""),
            c["array"].as_str().unwrap_or("")
        );
    }
    if let (Some(r0), Some(r1)) = (&args.r0, &args.r1) {
        let c = bipartite_from_rows(n, &parse_row(n, r0)?, &parse_row(n, r1)?)?;
        text += &format!("  {}", construction_line(&c));
        let code = if !c.prediction_holds {
            EXIT_ANOMALY
        } else if c.array.is_none() {
            EXIT_NEGATIVE
        } else {
            0
        };
        return Ok(Outcome {
            code,
            json: json!({"n": n, "classical": classical, "construction": c}),
            text,
        });
    }
    if !args.auto_search {
        return Err(Error::Precondition(
            "give --r0 and --r1, or --auto-search".into(),
        ));
    }
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "n = {n} must be even and greater than 2"
        )));
    }
    let half = GroupDescriptor::product(n / 2, 2)?;
    let v = half.order();
    let mut searches = Vec::new();
    let mut constructions = Vec::new();
    // (v, k, λ) needs k(k-1) = λ(v-1)
    for k in (2..v - 1).filter(|k| k * (k - 1) % (v - 1) == 0) {
        let search = diffset_search(half, k, args.budget)?;
        let sets = search.all_sets();
        let admissible: Vec<_> = sets
            .iter()
            .filter_map(|d| rows_from_shifted(n, d))
            .collect();
        text += &format!(
            "  k={k}: {} difference sets, {} admissible\n",
            sets.len(),
            admissible.len()
        );
        searches
            .push(json!({"k": k, "differenceSets": sets.len(), "admissible": admissible.len()}));
        for (r0, r1) in admissible {
            let c = bipartite_from_rows(n, &r0, &r1)?;
            text += &format!("  {}\n", construction_line(&c));
            constructions.push(c);
        }
    }
    let code = if constructions.iter().any(|c| !c.prediction_holds) {
        EXIT_ANOMALY
    } else if constructions.is_empty() {
        text +=
            "  no admissible difference set; no bipartite diameter-3 graph from this construction";
        EXIT_NEGATIVE
    } else {
        0
    };
    Ok(Outcome {
        code,
        json: json!({"n": n, "classical": classical, "searches": searches, "constructions": constructions}),
        text: text.trim_end().to_string(),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut output = None;
    let result = match &cli.command {
        Command::Check(a) => cmd_check(a),
        Command::Census(a) => {
            output = a.output.clone();
            cmd_census(a)
        }
        Command::Construct(a) => cmd_construct(a),
        Command::FourierAudit(a) => cmd_fourier(a),
        Command::Bipartite(a) => cmd_bipartite(a),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => return ExitCode::from(fail(e)),
    };
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).expect("json") + "\n",
        Format::Text => outcome.text + "\n",
    };
    let written = match output {
        Some(path) => std::fs::write(&path, body.as_bytes()),
        None => std::io::stdout().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_ANOMALY);
    }
    ExitCode::from(outcome.code)
}
