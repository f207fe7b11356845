use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use metdim::bounds::{
    bound_report, expected_unresolved, inequality_chain, monte_carlo_success, sweep_projective, sweep_symmetric,
    sweep_transversal, ExactValue,
};
use metdim::designs::{biaffine_plane, hadamard_design, hadamard_std, parse_design, projective_plane, write_design, Design};
use metdim::hadamard::hadamard_matrix;
use metdim::incidence::{
    classify, incidence_graph, intersection_array, parse_edge_list, write_edge_list, Graph, IntersectionArray,
};
use metdim::resolve::{
    greedy_resolving_set, greedy_semi_resolving, metric_dimension, min_semi_resolving_with_limit, paper_sample_size,
    parse_witness, randomized_semi_resolving, sample_size, split_resolving, verify_on_graph, verify_witness,
    write_witness, Method, Resolution, Role, VerifyReport, Witness, DEFAULT_EXACT_LIMIT, DEFAULT_MAX_RETRIES,
    DEFAULT_MDIM_LIMIT, DEFAULT_NODE_BUDGET,
};

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Symmetric designs, their incidence graphs and resolving sets.
///
/// Exit codes: 0 success, 1 verification or solver failure, 2 usage or
/// parse error.
#[derive(Parser)]
#[command(name = "metdim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a design (or re-check a design file) and write it out.
    Construct(ConstructArgs),
    /// Find a semi-resolving, split resolving or minimum resolving set.
    Resolve(ResolveArgs),
    /// Evaluate expectation bounds for parameters, a design or a sweep.
    Bounds(BoundsArgs),
    /// Re-check a witness file against a design or graph file.
    Verify(VerifyArgs),
    /// Write the incidence graph of a design as an edge list.
    Export(ExportArgs),
    /// Report distance-regularity and related invariants of a design or graph.
    Classify(ClassifyArgs),
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Family {
    /// PG(2, q), q a prime power.
    Pg,
    /// Hadamard 2-design from a Hadamard matrix of order n.
    HadamardDesign,
    /// Biaffine plane STD_1[q; q], q a prime power.
    Biaffine,
    /// STD_{n/2}[n; 2] from a Hadamard matrix of order n.
    HadamardStd,
}

#[derive(Args, Serialize)]
struct ConstructArgs {
    #[arg(value_enum, required_unless_present = "input", requires = "param")]
    family: Option<Family>,
    /// Order q or n.
    param: Option<usize>,
    /// Re-validate an existing design file instead of constructing one.
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
    /// Output file (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
enum MethodArg {
    Random,
    Greedy,
    Exact,
}

#[derive(Clone, Copy, ValueEnum, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
enum Target {
    /// Blocks separating every pair of points.
    SemiPoints,
    /// Points separating every pair of blocks.
    SemiBlocks,
    /// A semi-resolving set on each side; resolves the incidence graph.
    Split,
    /// Minimum resolving set of the whole graph.
    FullMdim,
}

#[derive(Args, Serialize)]
struct ResolveArgs {
    /// Design file (graph edge lists are accepted for full-mdim).
    input: PathBuf,
    /// Default: exact for full-mdim, random otherwise.
    #[arg(long, value_enum)]
    method: Option<MethodArg>,
    #[arg(long, value_enum, default_value = "semi-points")]
    target: Target,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_RETRIES)]
    retries: u64,
    /// Sample size for the random method (default ⌈v ln v / (k - λ)⌉).
    #[arg(long)]
    size: Option<usize>,
    /// Node budget for the exact hitting-set search.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Size limit for exact solvers (blocks for semi targets, vertices for full-mdim).
    #[arg(long)]
    limit: Option<usize>,
    /// Write the witness here.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Write the JSON report here (default: stdout).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SweepKind {
    /// PG(2, q) for prime powers q <= qmax.
    Pg,
    /// Every admissible symmetric-design parameter set with v <= vmax.
    Sd,
    /// Every STD_λ[λg; g] with λg² <= vmax.
    Std,
}

#[derive(Args, Serialize)]
struct BoundsArgs {
    #[arg(long, requires_all = ["m", "s"], conflicts_with_all = ["design", "sweep"])]
    v: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, conflicts_with = "sweep")]
    design: Option<PathBuf>,
    /// Use ⌈v ln v / (k - λ)⌉ as the sample size.
    #[arg(long, requires = "design", conflicts_with = "s")]
    paper_s: bool,
    #[arg(long, value_enum)]
    sweep: Option<SweepKind>,
    #[arg(long, default_value_t = 11)]
    qmax: usize,
    #[arg(long, default_value_t = 500)]
    vmax: usize,
    /// Monte Carlo trials (0 disables).
    #[arg(long, default_value_t = 0)]
    mc_trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct VerifyArgs {
    /// Design or graph file.
    structure: PathBuf,
    witness: PathBuf,
}

#[derive(Args, Serialize)]
struct ExportArgs {
    input: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Serialize)]
struct ClassifyArgs {
    input: PathBuf,
}

/// Bad input or usage, exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn exit_code(e: &anyhow::Error) -> u8 {
    use metdim::Error as E;
    for cause in e.chain() {
        if cause.is::<Usage>() || cause.is::<std::io::Error>() {
            return 2;
        }
        if let Some(err) = cause.downcast_ref::<E>() {
            return match err {
                E::InvalidDesign(_)
                | E::Unseparable(..)
                | E::CompleteBipartite
                | E::RetriesExhausted { .. }
                | E::BudgetExceeded { .. }
                | E::LimitExceeded { .. } => 1,
                _ => 2,
            };
        }
    }
    2
}

enum Structure {
    Design(Design),
    Graph(Graph),
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<Structure> {
    let text = read(path)?;
    let head = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.split_whitespace().next())
        .unwrap_or("");
    let ctx = || format!("parsing {}", path.display());
    match head {
        "G" => Ok(Structure::Graph(parse_edge_list(&text).with_context(ctx)?.0)),
        _ => Ok(Structure::Design(parse_design(&text).with_context(ctx)?)),
    }
}

fn load_design(path: &Path) -> Result<Design> {
    match load(path)? {
        Structure::Design(d) => Ok(d),
        Structure::Graph(_) => Err(usage(format!("{} is a graph, expected a design", path.display()))),
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn emit_json(output: Option<&Path>, value: &Value) -> Result<()> {
    emit(output, &(serde_json::to_string_pretty(value)? + "\n"))
}

fn provenance(command: &str, config: &impl Serialize) -> Result<Value> {
    Ok(json!({ "tool": "metdim", "version": VERSION, "command": command, "config": config }))
}

fn with(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn failure_message(r: &VerifyReport) -> String {
    let unit = match r.role {
        Role::SemiPoints => "points",
        Role::SemiBlocks => "blocks",
        Role::Split | Role::Full => "vertices",
    };
    match (r.agree, r.distance, r.symmetric_difference) {
        (false, _, _) => "the two verification routes disagree".into(),
        (_, Resolution::Collision { x, y }, _) => format!("{unit} {x} and {y} are not separated"),
        (_, _, Some(Resolution::Collision { x, y })) => format!("{unit} {x} and {y} are not separated"),
        _ => "verification failed".into(),
    }
}

fn cmd_construct(args: &ConstructArgs) -> Result<ExitCode> {
    let design: Design = match (args.family, &args.input) {
        (_, Some(path)) => load_design(path)?,
        (Some(family), None) => {
            let n = args.param.ok_or_else(|| usage("missing order parameter"))?;
            match family {
                Family::Pg => projective_plane(n)?.into(),
                Family::HadamardDesign => hadamard_design(&hadamard_matrix(n)?)?.into(),
                Family::Biaffine => biaffine_plane(n)?.into(),
                Family::HadamardStd => hadamard_std(&hadamard_matrix(n)?)?.into(),
            }
        }
        (None, None) => return Err(usage("give a family and order, or --input")),
    };
    let report = design.validate();
    if !report.is_valid() {
        eprintln!("{}: invalid", design.header());
        for v in &report.violations {
            eprintln!("  {v}");
        }
        return Ok(ExitCode::from(1));
    }
    eprintln!(
        "{}: valid, {} points, {} blocks, order {}",
        design.header(),
        design.num_points(),
        design.num_blocks(),
        design.order()
    );
    emit(args.output.as_deref(), &write_design(&design))?;
    Ok(ExitCode::SUCCESS)
}

fn split_bound(d: &Design) -> Option<usize> {
    let q = d.order();
    (q > 0).then(|| sample_size(d.num_points(), q as usize))
}

fn random_size(d: &Design, size: Option<usize>) -> Result<usize> {
    match size {
        Some(s) => Ok(s),
        None => paper_sample_size(d)
            .map_err(|e| usage(format!("no default sample size ({e}); pass --size"))),
    }
}

fn cmd_resolve(args: &ResolveArgs) -> Result<ExitCode> {
    let structure = load(&args.input)?;
    let method = args.method.unwrap_or(match args.target {
        Target::FullMdim => MethodArg::Exact,
        _ => MethodArg::Random,
    });
    let base = provenance("resolve", args)?;

    let (witness, details, verdict) = match (&structure, args.target) {
        (Structure::Graph(g), Target::FullMdim) => {
            let (w, details) = full_mdim(g, method, args)?;
            let verdict = verify_on_graph(g, &w)?;
            (w, details, verdict)
        }
        (Structure::Graph(_), _) => return Err(usage("graph files only support --target full-mdim")),
        (Structure::Design(d), target) => {
            let (w, details) = match target {
                Target::SemiPoints | Target::SemiBlocks => semi(d, target, method, args)?,
                Target::Split => split(d, method, args)?,
                Target::FullMdim => full_mdim(incidence_graph(d)?.graph(), method, args)?,
            };
            let verdict = verify_witness(d, &w)?;
            (w, details, verdict)
        }
    };
    let report = with(
        base,
        with(
            json!({
                "target": args.target,
                "method": method,
                "size": witness.indices.len(),
                "set": witness.indices,
                "verification": verdict,
            }),
            details,
        ),
    );
    if let Some(path) = &args.witness {
        fs::write(path, write_witness(&witness)).with_context(|| format!("writing {}", path.display()))?;
    }
    emit_json(args.output.as_deref(), &report)?;
    if verdict.passed {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("verification failed: {}", failure_message(&verdict));
        Ok(ExitCode::from(1))
    }
}

fn semi(d: &Design, target: Target, method: MethodArg, args: &ResolveArgs) -> Result<(Witness, Value)> {
    let (role, on) = match target {
        Target::SemiPoints => (Role::SemiPoints, d.clone()),
        _ => (Role::SemiBlocks, d.dual()?),
    };
    let mut details = json!({ "design": d.header(), "paper_bound": split_bound(d) });
    let set = match method {
        MethodArg::Random => {
            let s = random_size(d, args.size)?;
            let out = randomized_semi_resolving(&on, s, args.seed, args.retries)?;
            details = with(details, json!({ "sample_size": s, "trials": out.trials }));
            out.set
        }
        MethodArg::Greedy => greedy_semi_resolving(&on)?,
        MethodArg::Exact => {
            let limit = args.limit.unwrap_or(DEFAULT_EXACT_LIMIT);
            let out = min_semi_resolving_with_limit(&on, limit, args.budget)?;
            details = with(details, json!({ "nodes": out.nodes, "optimal": true }));
            out.set
        }
    };
    Ok((Witness { role, indices: set }, details))
}

fn split(d: &Design, method: MethodArg, args: &ResolveArgs) -> Result<(Witness, Value)> {
    let m = match method {
        MethodArg::Random => Method::Randomized {
            seed: args.seed,
            max_retries: args.retries,
            size: Some(random_size(d, args.size)?),
        },
        MethodArg::Greedy => Method::Greedy,
        MethodArg::Exact => Method::Exact { budget: args.budget },
    };
    let r = split_resolving(d, &m)?;
    let g = incidence_graph(d)?;
    let details = json!({
        "design": d.header(),
        "points": r.set.points,
        "blocks": r.set.blocks,
        "paper_bound": r.paper_bound,
        "trials": r.trials,
    });
    Ok((
        Witness {
            role: Role::Split,
            indices: r.set.vertices(&g),
        },
        details,
    ))
}

fn full_mdim(g: &Graph, method: MethodArg, args: &ResolveArgs) -> Result<(Witness, Value)> {
    let (set, details) = match method {
        MethodArg::Exact => {
            let r = metric_dimension(g, args.limit.unwrap_or(DEFAULT_MDIM_LIMIT))?;
            let details = json!({
                "dimension": r.dimension,
                "optimal": r.optimal,
                "lower_bound": r.lower_bound,
                "nodes": r.nodes,
            });
            (r.set, details)
        }
        MethodArg::Greedy => (greedy_resolving_set(g)?, json!({ "optimal": false })),
        MethodArg::Random => return Err(usage("full-mdim supports --method exact or greedy")),
    };
    Ok((Witness { role: Role::Full, indices: set }, with(json!({ "vertices": g.n() }), details)))
}

fn cmd_bounds(args: &BoundsArgs) -> Result<ExitCode> {
    if let Some(kind) = args.sweep {
        let rows = match kind {
            SweepKind::Pg => sweep_projective(args.qmax, args.mc_trials, args.seed)?,
            SweepKind::Sd => sweep_symmetric(args.vmax)?,
            SweepKind::Std => sweep_transversal(args.vmax)?,
        };
        let mut out = Vec::new();
        writeln!(out, "# metdim {VERSION} bounds {}", serde_json::to_string(args)?)?;
        {
            let mut w = csv::Writer::from_writer(&mut out);
            for row in &rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        emit(args.output.as_deref(), &String::from_utf8(out)?)?;
        return Ok(ExitCode::SUCCESS);
    }
    let base = provenance("bounds", args)?;
    let report = if let Some(path) = &args.design {
        let d = load_design(path)?;
        let s = match (args.s, args.paper_s) {
            (Some(s), _) => s,
            (None, true) => paper_sample_size(&d)?,
            (None, false) => return Err(usage("--design needs --s or --paper-s")),
        };
        let mut r = serde_json::to_value(bound_report(&d, s)?)?;
        if args.mc_trials > 0 {
            let mc = monte_carlo_success(&d, s, args.mc_trials, args.seed)?;
            r = with(r, json!({ "monte_carlo": mc }));
        }
        with(base, with(json!({ "design": d.header() }), r))
    } else {
        let (Some(v), Some(m), Some(s)) = (args.v, args.m, args.s) else {
            return Err(usage("give --v --m --s, --design, or --sweep"));
        };
        let e = expected_unresolved(v, m, s)?;
        let chain = if m > 0 && m < v { Some(inequality_chain(v, m, s)?) } else { None };
        with(
            base,
            json!({ "v": v, "m": m, "s": s, "e_exact": ExactValue::from(&e), "chain": chain }),
        )
    };
    emit_json(args.output.as_deref(), &report)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let structure = load(&args.structure)?;
    let text = read(&args.witness)?;
    let w = parse_witness(&text).with_context(|| format!("parsing {}", args.witness.display()))?;
    let report = match &structure {
        Structure::Design(d) => verify_witness(d, &w),
        Structure::Graph(g) => verify_on_graph(g, &w),
    }
    .map_err(|e| match e {
        metdim::Error::Precondition(msg) => usage(msg),
        other => other.into(),
    })?;
    emit_json(None, &with(provenance("verify", args)?, json!({ "report": report })))?;
    if report.passed {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("verification failed: {}", failure_message(&report));
        Ok(ExitCode::from(1))
    }
}

fn cmd_export(args: &ExportArgs) -> Result<ExitCode> {
    let d = load_design(&args.input)?;
    let g = incidence_graph(&d)?;
    emit(args.output.as_deref(), &write_edge_list(&g, d.num_points()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(args: &ClassifyArgs) -> Result<ExitCode> {
    let (g, expected) = match load(&args.input)? {
        Structure::Graph(g) => (g, None),
        Structure::Design(d) => {
            let expected = match &d {
                Design::Symmetric(_) => IntersectionArray::symmetric_design(d.k() as u32, d.lambda() as u32),
                Design::Transversal(t) => IntersectionArray::symmetric_transversal(t.lambda() as u32, t.g() as u32),
            };
            (incidence_graph(&d)?.graph().clone(), Some(expected))
        }
    };
    let drg = intersection_array(&g);
    let class = classify(&g);
    let array = drg.array().map(|a| a.to_string());
    let report = with(
        provenance("classify", args)?,
        json!({
            "vertices": g.n(),
            "edges": g.num_edges(),
            "diameter": class.diameter,
            "girth": g.girth(),
            "bipartite": class.bipartite,
            "antipodal": class.antipodal,
            "distance_regular": drg,
            "intersection_array": array,
            "expected_array": expected.as_ref().map(|a| a.to_string()),
            "matches_expected": expected.map(|e| drg.array() == Some(&e)),
        }),
    );
    emit_json(None, &report)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Construct(a) => cmd_construct(a),
        Command::Resolve(a) => cmd_resolve(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Export(a) => cmd_export(a),
        Command::Classify(a) => cmd_classify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
