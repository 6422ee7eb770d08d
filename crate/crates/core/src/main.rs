//! Thin command-line front end over the `sumfree_census` library.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports a failure
//! or an input cannot be processed, 2 on usage errors (clap's default).

use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sumfree_census::bounds::check_bounds;
use sumfree_census::census::{
    census, census_csv, census_json, enumerate_groups_of_order, verify_bounds, verify_claims3,
    verify_partitions, verify_prop14, verify_prop31, verify_section4, VerifyReport,
};
use sumfree_census::linkgraph::{
    build_link_graph, canonical_odd_coset, edge_lower_bound, verify_degree_claim, EdgeType,
};
use sumfree_census::mis::SimpleGraph;
use sumfree_census::sumfree::enumerate_maximal_sumfree;
use sumfree_census::{Caps, ElementSet, GroupSpec};

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Parser)]
#[command(
    name = "sumfree-census",
    version,
    about = "Exact enumeration and verification of maximal sum-free sets in finite abelian groups"
)]
struct Cli {
    /// Output format for tabular and structured results.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Worker threads for parallel sections (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Override the exact-enumeration cap (group order / vertex count).
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Seed for the randomized verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a group and report its largest sum-free cardinality.
    Classify { group: String },
    /// Print the largest sum-free cardinality of a group.
    Mu { group: String },
    /// Count (and optionally list) all maximal sum-free sets of a group.
    Msf {
        group: String,
        /// Also print every maximal sum-free set.
        #[arg(long)]
        list: bool,
    },
    /// Count maximal independent sets of a graph given as an edge list
    /// (file path, or stdin when omitted) and evaluate the bound stack.
    Mis { file: Option<String> },
    /// Build the link graph of a generator set on a base set.
    Link(LinkArgs),
    /// Tabulate every abelian group in a range of orders.
    Census {
        /// Smallest order, inclusive.
        #[arg(long, default_value_t = 1)]
        min: u64,
        /// Largest order, inclusive.
        #[arg(long)]
        max: u64,
    },
    /// Run a named verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
}

#[derive(Args)]
struct LinkArgs {
    /// Group, e.g. `Z2*Z9`.
    #[arg(long)]
    group: String,
    /// Generator elements as residue vectors, e.g. `0,3;0,6`.
    #[arg(long)]
    gens: String,
    /// Base set: `odd` for the canonical odd coset, or explicit elements.
    #[arg(long, default_value = "odd")]
    base: String,
    /// Emit the graph in DOT format instead of the summary.
    #[arg(long)]
    dot: bool,
}

#[derive(Subcommand)]
enum Suite {
    /// Triangle-decomposition lower-bound construction for orders with 9 | n.
    Prop14 {
        /// Specific group; defaults to every group with 9 | n <= 45.
        group: Option<String>,
    },
    /// Fraction of groups with many square roots of zero, two routes.
    Prop31 {
        #[arg(long, default_value_t = 20)]
        max_exp: u32,
        #[arg(long, default_value_t = 0.01)]
        epsilon: f64,
    },
    /// Link-graph degree, edge-bound, hitting-set and stability claims.
    Claims3,
    /// Structural claims for Z2^t*Z4 and Z5+H base sets.
    Section4 {
        #[arg(long, default_value_t = 6)]
        tmax: u32,
    },
    /// MIS oracle equivalence, tight families, and the bound stack.
    Bounds,
    /// Partition counting, the asymptotic estimate, and group counts.
    Partitions,
}

fn parse_group(s: &str) -> Result<GroupSpec, String> {
    GroupSpec::parse(s).map_err(|e| format!("invalid group {s:?}: {e}"))
}

fn parse_elements(g: &GroupSpec, text: &str) -> Result<ElementSet, String> {
    let mut set = ElementSet::empty(g.clone());
    for part in text.split(';').filter(|p| !p.trim().is_empty()) {
        let residues: Vec<i64> = part
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|e| format!("invalid element {part:?}: {e}"))?;
        let e = g
            .element(&residues)
            .map_err(|e| format!("invalid element {part:?}: {e}"))?;
        set.insert(g.index_of(&e));
    }
    Ok(set)
}

fn emit_report(report: &VerifyReport, format: Format) -> ExitCode {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        ),
        Format::Csv => print!("{}", report.render_text()),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let mut caps = Caps::from_env();
    if let Some(cap) = cli.cap {
        caps.fmax = cap;
        caps.mis_vertices = cap as usize;
    }
    let seed = cli.seed;
    let format = cli.format;

    match cli.command {
        Command::Classify { group } => {
            let g = parse_group(&group)?;
            let (t, mu, n) = (g.classify(), g.mu(), g.order());
            match format {
                Format::Json => println!(
                    "{}",
                    json!({"group": g.to_string(), "n": n, "type": t.to_string(), "mu": mu})
                ),
                Format::Csv => {
                    println!("group,n,type,mu");
                    println!("{g},{n},{t},{mu}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mu { group } => {
            let g = parse_group(&group)?;
            match format {
                Format::Json => {
                    println!("{}", json!({"group": g.to_string(), "mu": g.mu()}))
                }
                Format::Csv => println!("{}", g.mu()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Msf { group, list } => {
            let g = parse_group(&group)?;
            let report =
                enumerate_maximal_sumfree(&g, list, caps.fmax).map_err(|e| e.to_string())?;
            match format {
                Format::Json => {
                    let witnesses: Option<Vec<String>> = report
                        .witnesses
                        .as_ref()
                        .map(|w| w.iter().map(|s| s.to_string()).collect());
                    println!(
                        "{}",
                        json!({
                            "group": g.to_string(),
                            "count": report.count.to_string(),
                            "elapsed_ms": report.elapsed.as_millis() as u64,
                            "witnesses": witnesses,
                        })
                    );
                }
                Format::Csv => {
                    println!("group,count");
                    println!("{g},{}", report.count);
                    if let Some(w) = &report.witnesses {
                        for s in w {
                            println!("{s}");
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mis { file } => {
            let text = match file {
                Some(path) => std::fs::read_to_string(&path)
                    .map_err(|e| format!("cannot read {path}: {e}"))?,
                None => {
                    let mut buf = String::new();
                    std::io::stdin()
                        .read_to_string(&mut buf)
                        .map_err(|e| format!("cannot read stdin: {e}"))?;
                    buf
                }
            };
            let g = SimpleGraph::parse_edge_list(&text).map_err(|e| e.to_string())?;
            if g.vertex_count() > caps.mis_vertices {
                return Err(format!(
                    "graph has {} vertices, above the cap of {}",
                    g.vertex_count(),
                    caps.mis_vertices
                ));
            }
            let report = check_bounds(&g, None).map_err(|e| e.to_string())?;
            match format {
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("report serializes")
                ),
                Format::Csv => {
                    println!("mis,{}", report.exact);
                    println!("bound,value_log2,applicable,holds");
                    for e in &report.entries {
                        println!(
                            "{},{},{},{}",
                            e.name,
                            e.value_log2
                                .map(|v| format!("{v:.6}"))
                                .unwrap_or_default(),
                            e.applicable,
                            e.holds
                        );
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Link(args) => {
            let g = parse_group(&args.group)?;
            let gens = parse_elements(&g, &args.gens)?;
            let base = if args.base.trim() == "odd" {
                canonical_odd_coset(&g).map_err(|e| e.to_string())?
            } else {
                parse_elements(&g, &args.base)?
            };
            let l = build_link_graph(&gens, &base);
            if args.dot {
                print!("{}", l.to_dot());
                return Ok(ExitCode::SUCCESS);
            }
            let degrees = verify_degree_claim(&l).map_err(|e| e.to_string());
            let bound = edge_lower_bound(&l).map_err(|e| e.to_string());
            match format {
                Format::Json => println!(
                    "{}",
                    json!({
                        "group": g.to_string(),
                        "vertices": l.vertex_count(),
                        "type1_edges": l.edge_count_of_type(EdgeType::One),
                        "type2_edges": l.edge_count_of_type(EdgeType::Two),
                        "loops": l.loop_count(),
                        "degree_claim_ok": degrees.as_ref().map(|d| d.all_ok()).ok(),
                        "edge_bound_holds": bound.as_ref().map(|b| b.holds).ok(),
                    })
                ),
                Format::Csv => {
                    println!("vertices,type1_edges,type2_edges,loops,degree_claim_ok,edge_bound_holds");
                    println!(
                        "{},{},{},{},{},{}",
                        l.vertex_count(),
                        l.edge_count_of_type(EdgeType::One),
                        l.edge_count_of_type(EdgeType::Two),
                        l.loop_count(),
                        degrees.map(|d| d.all_ok().to_string()).unwrap_or_default(),
                        bound.map(|b| b.holds.to_string()).unwrap_or_default()
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Census { min, max } => {
            let rows = census(min..=max, &caps).map_err(|e| e.to_string())?;
            match format {
                Format::Csv => print!("{}", census_csv(&rows)),
                Format::Json => println!("{}", census_json(&rows, seed, &caps)),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite } => {
            let report = match suite {
                Suite::Prop14 { group } => match group {
                    Some(s) => verify_prop14(&parse_group(&s)?, &caps).map_err(|e| e.to_string())?,
                    None => {
                        let mut merged = None::<VerifyReport>;
                        for n in (9..=45u64).step_by(9) {
                            for g in enumerate_groups_of_order(n).map_err(|e| e.to_string())? {
                                let r = verify_prop14(&g, &caps).map_err(|e| e.to_string())?;
                                match &mut merged {
                                    None => merged = Some(r),
                                    Some(m) => m.checks.extend(r.checks),
                                }
                            }
                        }
                        let mut m = merged.expect("orders exist");
                        m.name = "prop14 (all 9 | n <= 45)".into();
                        m
                    }
                },
                Suite::Prop31 { max_exp, epsilon } => {
                    verify_prop31(max_exp, epsilon).map_err(|e| e.to_string())?
                }
                Suite::Claims3 => verify_claims3(seed).map_err(|e| e.to_string())?,
                Suite::Section4 { tmax } => {
                    verify_section4(tmax, seed).map_err(|e| e.to_string())?
                }
                Suite::Bounds => verify_bounds(seed, 7, 1000).map_err(|e| e.to_string())?,
                Suite::Partitions => verify_partitions(200).map_err(|e| e.to_string())?,
            };
            Ok(emit_report(&report, format))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global();
    }
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
