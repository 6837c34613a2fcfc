//! `xorkneser`: build, check and measure semi-intersecting families.
//!
//! Exit codes: 0 success, 1 a violation was found, 2 usage or input error,
//! 3 the search budget ran out before an exact answer.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use xorkneser::analysis::{bound_table, peel, to_csv, TableRow};
use xorkneser::constructions::{
    build_core, construct_f2_lower, core_to_family, extend_power, matrix_family, plane_family,
};
use xorkneser::setsystem::{decode_any, encode, encode_json};
use xorkneser::solver::{
    build_product_graph, build_product_graph_with_budget, check_rank_bound, max_clique,
    max_clique_parallel, parse_dimacs, to_dimacs, CliqueGraph, CliqueResult, DEFAULT_NODE_BUDGET,
    DEFAULT_VERTEX_BUDGET,
};
use xorkneser::{verify_family, Error, Family};

#[derive(Parser, Debug)]
#[command(
    name = "xorkneser",
    version,
    about = "Semi-intersecting families and xor-powers of Kneser graphs"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Solver threads; results do not depend on this.
    #[arg(long, default_value_t = 1, global = true)]
    threads: usize,
    /// Search-tree node budget.
    #[arg(long, env = "XORKNESER_BUDGET", default_value_t = DEFAULT_NODE_BUDGET, global = true)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a family and write it out.
    Construct {
        #[command(subcommand)]
        kind: Construction,
        /// Write the family here instead of standard output.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Check that a family file is semi-intersecting.
    Verify { input: PathBuf },
    /// Exact clique number of a product graph or a DIMACS graph.
    Solve {
        #[command(flatten)]
        params: Option<ProductParams>,
        /// Read the graph from a DIMACS file instead.
        #[arg(long, conflicts_with_all = ["n", "k", "ell"])]
        dimacs: Option<PathBuf>,
    },
    /// GF(2) rank check for a k = 1 family.
    Rank { input: PathBuf },
    /// Peel a two-block family and verify the resulting matching.
    Peel { input: PathBuf },
    /// Constructions, exact values and upper bounds over a grid.
    Table {
        /// Values or inclusive ranges, e.g. `3`, `2..8`, `1,2,4`.
        #[arg(long)]
        ell: String,
        #[arg(long)]
        n: String,
        #[arg(long)]
        k: String,
        /// Skip the clique search above this many vertices.
        #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
        vertex_budget: u128,
    },
    /// Write the product graph in DIMACS format.
    ExportDimacs {
        #[command(flatten)]
        params: ProductParams,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct ProductParams {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    ell: usize,
}

#[derive(Subcommand, Debug)]
enum Construction {
    /// Two-block family of size ⌊n/k⌋ + C(2k,k)·k/2 - k.
    F2 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// k = 1 family from an ℓ-core; every block gets size `n` unless `--sizes` is given.
    Core {
        #[arg(long)]
        ell: usize,
        #[arg(long, required_unless_present = "sizes")]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
    },
    /// k = 1 family from the projective plane of odd prime order q.
    Plane {
        #[arg(long)]
        q: usize,
    },
    /// Family of size ⌊n/k⌋^t over 2^t - 1 blocks.
    Matrix {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        t: usize,
    },
    /// Append a block to an existing family, using the same k-set for every member.
    Extend {
        input: PathBuf,
        /// Local indices of the added k-set; defaults to 0..k.
        #[arg(long, value_delimiter = ',')]
        extra: Option<Vec<usize>>,
    },
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        let code = match error.downcast_ref::<Error>() {
            Some(Error::VertexBudget { .. }) => 3,
            _ => 2,
        };
        Self { code, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    if cli.threads == 0 {
        return Err(anyhow!("--threads must be at least 1").into());
    }
    match &cli.command {
        Command::Construct { kind, output } => construct(cli, kind, output.as_ref()),
        Command::Verify { input } => verify(cli, &read_family(input)?),
        Command::Solve { params, dimacs } => solve(cli, params.as_ref(), dimacs.as_ref()),
        Command::Rank { input } => rank(cli, &read_family(input)?),
        Command::Peel { input } => peel_cmd(cli, &read_family(input)?),
        Command::Table {
            ell,
            n,
            k,
            vertex_budget,
        } => table(cli, ell, n, k, *vertex_budget),
        Command::ExportDimacs { params, output } => export_dimacs(params, output.as_ref()),
    }
}

fn read_family(path: &PathBuf) -> Result<Family, Failure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let f = decode_any(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(f)
}

fn emit_json(mut doc: Value) {
    if let Value::Object(map) = &mut doc {
        map.insert("schema".into(), json!(1));
    }
    println!("{doc}");
}

fn construct(cli: &Cli, kind: &Construction, output: Option<&PathBuf>) -> Outcome {
    let (family, name, witness) = match kind {
        Construction::F2 { n, k } => {
            let f = construct_f2_lower(*n, *k)?;
            let note = format!("f_2({n},{k}) >= {} = floor(n/k) + C(2k,k)k/2 - k", f.len());
            (f, "f2", note)
        }
        Construction::Core { ell, n, sizes } => {
            let sizes = match (sizes, n) {
                (Some(s), _) => s.clone(),
                (None, Some(n)) => vec![*n; *ell],
                (None, None) => unreachable!("clap requires --n or --sizes"),
            };
            let core = build_core(*ell)?;
            let f = core_to_family(&core, &sizes)?;
            let v: usize = sizes.iter().sum();
            let note = format!(
                "clique of size {} in the xor-product of complete graphs, |V| = {v}, |V| - 2ell - 1 = {}",
                f.len(),
                v as i64 - 2 * *ell as i64 - 1
            );
            (f, "core", note)
        }
        Construction::Plane { q } => {
            let f = plane_family(*q)?;
            let l = f.layout();
            let note = format!(
                "tight: size {} = |V| - ell + 1 = {}",
                f.len(),
                l.universe() - l.ell() + 1
            );
            (f, "plane", note)
        }
        Construction::Matrix { n, k, t } => {
            let f = matrix_family(*n, *k, *t)?;
            let note = format!(
                "f_{}({n},{k}) >= {} = floor(n/k)^t",
                f.layout().ell(),
                f.len()
            );
            (f, "matrix", note)
        }
        Construction::Extend { input, extra } => {
            let base = read_family(input)?;
            let extra = extra
                .clone()
                .unwrap_or_else(|| (0..base.layout().k()).collect());
            let f = extend_power(&base, &extra)?;
            let l = f.layout();
            let note = format!("f_{}({},{}) >= {}", l.ell(), l.n(), l.k(), f.len());
            (f, "extend", note)
        }
    };
    let report = verify_family(&family);
    if !report.valid {
        return Err(Failure {
            code: 1,
            error: anyhow!(
                "constructed family failed verification: {:?}",
                report.violation
            ),
        });
    }
    let body = match cli.format {
        Format::Json => encode_json(&family) + "\n",
        _ => encode(&family),
    };
    let summary = json!({
        "construction": name,
        "layout": {"ell": family.layout().ell(), "n": family.layout().n(), "k": family.layout().k()},
        "size": family.len(),
        "bound": witness,
    });
    match output {
        Some(path) => {
            fs::write(path, body).with_context(|| format!("writing {}", path.display()))?;
            match cli.format {
                Format::Json => emit_json(summary),
                _ => println!(
                    "{name} {} size {}: {witness}",
                    family.layout(),
                    family.len()
                ),
            }
        }
        None => {
            print!("{body}");
            eprintln!(
                "{name} {} size {}: {witness}",
                family.layout(),
                family.len()
            );
        }
    }
    Ok(0)
}

fn verify(cli: &Cli, f: &Family) -> Outcome {
    let report = verify_family(f);
    match cli.format {
        Format::Json => emit_json(json!({
            "layout": {"ell": f.layout().ell(), "n": f.layout().n(), "k": f.layout().k()},
            "size": f.len(),
            "report": report,
        })),
        _ => match &report.violation {
            None => println!("valid: {} members over {}", f.len(), f.layout()),
            Some(v) => println!("invalid: {v:?}"),
        },
    }
    Ok(if report.valid { 0 } else { 1 })
}

fn solve(cli: &Cli, params: Option<&ProductParams>, dimacs: Option<&PathBuf>) -> Outcome {
    let (g, label): (CliqueGraph, String) = match (params, dimacs) {
        (_, Some(path)) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            (parse_dimacs(&text)?, path.display().to_string())
        }
        (Some(p), None) => (
            build_product_graph(p.n, p.k, p.ell)?,
            format!("KG({},{})^{}", p.n, p.k, p.ell),
        ),
        (None, None) => return Err(anyhow!("give --n, --k and --ell, or --dimacs").into()),
    };
    let r = run_search(&g, cli.budget, cli.threads);
    let members: Option<Vec<Vec<usize>>> = g.labels().map(|l| {
        r.witness
            .iter()
            .map(|&v| l.vertex_set(v).to_vec())
            .collect()
    });
    match cli.format {
        Format::Json => emit_json(json!({
            "graph": label,
            "vertices": g.vertex_count(),
            "result": r,
            "witness_sets": members,
        })),
        _ => {
            let status = if r.is_exact() {
                "exact"
            } else {
                "lower bound only"
            };
            println!(
                "{label}: omega {} {status} ({} nodes)",
                r.size, r.nodes_explored
            );
            println!("witness: {:?}", r.witness);
        }
    }
    Ok(if r.is_exact() { 0 } else { 3 })
}

fn run_search(g: &CliqueGraph, budget: u64, threads: usize) -> CliqueResult {
    if threads > 1 {
        max_clique_parallel(g, budget, threads)
    } else {
        max_clique(g, budget)
    }
}

fn rank(cli: &Cli, f: &Family) -> Outcome {
    let check = check_rank_bound(f)?;
    let valid = verify_family(f).valid;
    match cli.format {
        Format::Json => emit_json(json!({"family_valid": valid, "rank": check})),
        _ => println!(
            "rank {} (required {} = |S| + ell - 1), bound |S| <= |V| - ell + 1: {}",
            check.rank,
            check.required,
            if check.holds { "holds" } else { "fails" }
        ),
    }
    Ok(if check.holds && valid { 0 } else { 1 })
}

fn peel_cmd(cli: &Cli, f: &Family) -> Outcome {
    let trace = peel(f)?;
    let report = trace.matching_report();
    let ok = trace.accounting_holds()
        && trace.rounds.iter().all(|r| r.within_removal_bound())
        && report.as_ref().is_none_or(|r| r.valid && r.within_bound);
    match cli.format {
        Format::Json => emit_json(json!({
            "trace": trace,
            "accounting_holds": trace.accounting_holds(),
            "matching": report,
        })),
        _ => {
            println!(
                "{} rounds, {} residual members, accounting {}",
                trace.q(),
                trace.residual.len(),
                if trace.accounting_holds() {
                    "holds"
                } else {
                    "fails"
                }
            );
            for (i, r) in trace.rounds.iter().enumerate() {
                println!(
                    "round {i}: point {} degree {} removed {} (bound {})",
                    r.point,
                    r.degree,
                    r.removed(),
                    r.removal_bound
                );
            }
            match &report {
                Some(m) => println!(
                    "matching: valid {}, weight {} <= {}: {}",
                    m.valid, m.weight, m.bound, m.within_bound
                ),
                None => println!("matching: fewer than two rounds or k < 2"),
            }
        }
    }
    Ok(if ok { 0 } else { 1 })
}

/// `3`, `2..8` (inclusive) or `1,2,4`.
fn parse_grid(spec: &str, name: &str) -> Result<Vec<usize>, Failure> {
    let bad = |detail: String| -> Failure { anyhow!("--{name} `{spec}`: {detail}").into() };
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim) {
        if let Some((a, b)) = part.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let a: usize = a.parse().map_err(|e| bad(format!("{e}")))?;
            let b: usize = b.parse().map_err(|e| bad(format!("{e}")))?;
            if a > b {
                return Err(bad("empty range".into()));
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|e| bad(format!("{e}")))?);
        }
    }
    Ok(out)
}

fn table(cli: &Cli, ell: &str, n: &str, k: &str, vertex_budget: u128) -> Outcome {
    let ells = parse_grid(ell, "ell")?;
    let ns = parse_grid(n, "n")?;
    let ks = parse_grid(k, "k")?;
    let rows = bound_table(&ells, &ns, &ks, cli.budget, vertex_budget)?;
    match cli.format {
        Format::Csv => print!("{}", to_csv(&rows)),
        Format::Json => emit_json(json!({ "rows": rows })),
        Format::Text => {
            for r in &rows {
                println!("{r}");
            }
        }
    }
    let code = if !rows.iter().all(TableRow::sandwich_holds) {
        1
    } else if rows
        .iter()
        .any(|r| r.search.as_ref().is_some_and(|s| !s.exact))
    {
        3
    } else {
        0
    };
    Ok(code)
}

fn export_dimacs(p: &ProductParams, output: Option<&PathBuf>) -> Outcome {
    let g = build_product_graph_with_budget(p.n, p.k, p.ell, DEFAULT_VERTEX_BUDGET)?;
    let text = to_dimacs(
        &g,
        Some(&format!("xor-power KG({},{})^{}", p.n, p.k, p.ell)),
    );
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(0)
}
