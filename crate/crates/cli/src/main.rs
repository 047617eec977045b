//! `linlay`: generate, solve, transform, subdivide, validate and render
//! linear layouts stored as JSON.
//!
//! Exit codes: 0 on success, 1 when a layout is invalid or a budget is
//! infeasible, 2 on usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use linlay::generators::{
    challenge_graph, challenge_permutation, complete_bipartite, complete_graph, diagonal_grid_instance,
    permuted_challenge_layout, random_layout_instance, CellPattern, RandomLayoutParams,
};
use linlay::io::{graph_from_json, graph_to_json, layout_to_json, record_to_json, to_json, LayoutJson};
use linlay::render::{render, RenderSpec};
use linlay::solver::{Measure, DEFAULT_MAX_VERTICES};
use linlay::transforms::{
    build_shallow_graph_H, checkerboard_transform, halve_diagonal_grid, riffle_split, same_permutation_transform,
    separate, theorem5_transform, BlockStructure, CheckerboardGrid, ExactOracle, RiffleSpec,
};
use linlay::tree::Pipeline;
use linlay::{validate_layout, Graph, LinearLayout, PageBudget, Solver, SolverConfig};

const MAX_REPORTED_VIOLATIONS: usize = 100;

#[derive(Parser)]
#[command(name = "linlay", version, about = "Stack, queue and mixed linear layouts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a graph (and optionally a layout) from one of the built-in families.
    Generate(GenerateArgs),
    /// Decide a page budget or compute a layout number exactly.
    Solve(SolveArgs),
    /// Apply a layout transformation.
    Transform(TransformArgs),
    /// Subdivide a layout's graph down to a fixed page budget.
    Subdivide(SubdivideArgs),
    /// Check a layout; exits 1 if it is invalid.
    Validate(ValidateArgs),
    /// Draw a layout as SVG.
    Render(RenderArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    K6,
    Kmn,
    Challenge,
    DiagGrid,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pattern {
    Increasing,
    Alternating,
    Random,
}

#[derive(clap::Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Graph output; stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    layout_out: Option<PathBuf>,
    /// diag-grid: where to write the block structure for `transform --op checkerboard`.
    #[arg(long)]
    spec_out: Option<PathBuf>,
    /// kmn: size of side A.
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// kmn: size of side B.
    #[arg(long, default_value_t = 3)]
    n: usize,
    /// challenge: the instance has 2^k vertices per side.
    #[arg(long, default_value_t = 4)]
    k: u32,
    /// challenge: emit the 4-queue layout instead of the 1-stack 2-queue one.
    #[arg(long)]
    permuted: bool,
    #[arg(long, default_value_t = 2)]
    block_rows: usize,
    #[arg(long, default_value_t = 2)]
    block_cols: usize,
    #[arg(long, value_enum, default_value = "alternating")]
    pattern: Pattern,
    #[arg(long, default_value_t = 1)]
    stacks: usize,
    #[arg(long, default_value_t = 1)]
    queues: usize,
    #[arg(long, default_value_t = 8)]
    n_a: usize,
    #[arg(long, default_value_t = 8)]
    n_b: usize,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long)]
    separated: bool,
}

#[derive(clap::Args)]
struct SolveArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 0)]
    stacks: usize,
    #[arg(long, default_value_t = 0)]
    queues: usize,
    #[arg(long)]
    separated: bool,
    /// Compute a layout number instead of testing the budget.
    #[arg(long, value_enum)]
    minimize: Option<MeasureArg>,
    /// Refuse larger graphs (default 16, or LINLAY_MAX_VERTICES).
    #[arg(long)]
    max_vertices: Option<usize>,
    #[arg(long)]
    witness: Option<PathBuf>,
    #[arg(long)]
    sequential: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Sn,
    Qn,
    Mn,
    Sqn,
    Smn,
}

impl From<MeasureArg> for Measure {
    fn from(m: MeasureArg) -> Self {
        match m {
            MeasureArg::Sn => Measure::Sn,
            MeasureArg::Qn => Measure::Qn,
            MeasureArg::Mn => Measure::Mn,
            MeasureArg::Sqn => Measure::Sqn,
            MeasureArg::Smn => Measure::Smn,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Riffle,
    Separate,
    Thm5,
    Checkerboard,
    SamePerm,
    BuildH,
}

#[derive(Clone, Copy, ValueEnum)]
enum Oracle {
    Exact,
}

#[derive(clap::Args)]
struct TransformArgs {
    #[arg(long, value_enum)]
    op: Op,
    #[arg(long)]
    layout: PathBuf,
    /// riffle: a partition spec; checkerboard: block cuts, with or without `stack_parity`.
    #[arg(long)]
    spec: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "exact")]
    oracle: Oracle,
    /// same-perm: pad the smaller side with isolated vertices.
    #[arg(long)]
    pad: bool,
    /// build-h: where to write the minor map and vertex legend.
    #[arg(long)]
    map_out: Option<PathBuf>,
    #[arg(long)]
    max_vertices: Option<usize>,
}

#[derive(clap::Args)]
struct SubdivideArgs {
    #[arg(long)]
    pipeline: String,
    #[arg(long)]
    layout: PathBuf,
    #[arg(long)]
    out_layout: Option<PathBuf>,
    #[arg(long)]
    out_record: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ValidateArgs {
    #[arg(long)]
    layout: PathBuf,
    /// Check against this graph instead of the union of the pages.
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum StyleArg {
    Arc,
    Grid,
}

#[derive(clap::Args)]
struct RenderArgs {
    #[arg(long)]
    layout: PathBuf,
    #[arg(long, value_enum, default_value = "arc")]
    style: StyleArg,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    width: Option<f64>,
    #[arg(long)]
    height: Option<f64>,
    /// Render invalid layouts too, marking the offending edges.
    #[arg(long)]
    force: bool,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<linlay::Error> for Failure {
    fn from(e: linlay::Error) -> Self {
        input_error(e)
    }
}

fn input_error(e: impl std::fmt::Display) -> Failure {
    Failure {
        code: 2,
        message: e.to_string(),
    }
}

type CliResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Solve(a) => solve(a),
        Command::Transform(a) => transform(a),
        Command::Subdivide(a) => subdivide(a),
        Command::Validate(a) => validate(a),
        Command::Render(a) => render_cmd(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| input_error(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_layout(path: &Path) -> Result<LinearLayout, Failure> {
    let wire: LayoutJson = serde_json::from_str(&read(path)?).map_err(input_error)?;
    Ok(wire.into_layout()?)
}

fn solver(max_vertices: Option<usize>, sequential: bool) -> Result<Solver, Failure> {
    let cap = match max_vertices {
        Some(c) => c,
        None => match std::env::var("LINLAY_MAX_VERTICES") {
            Ok(v) => v
                .parse()
                .map_err(|_| input_error(format!("LINLAY_MAX_VERTICES={v:?} is not a number")))?,
            Err(_) => DEFAULT_MAX_VERTICES,
        },
    };
    let config = if sequential {
        SolverConfig::sequential()
    } else {
        SolverConfig::default()
    };
    Ok(Solver::new(config.with_max_vertices(cap)))
}

fn generate(a: GenerateArgs) -> CliResult {
    let mut meta = json!({ "family": family_name(a.family), "seed": a.seed });
    let (graph, layout): (Graph, Option<LinearLayout>) = match a.family {
        Family::K6 => {
            let g = complete_graph(6)?;
            let l = a
                .layout_out
                .as_ref()
                .map(|_| Solver::default().minimize(&g, Measure::Mn).map(|r| r.1))
                .transpose()?;
            (g, l)
        }
        Family::Kmn => {
            let g = complete_bipartite(a.m, a.n)?;
            let l = a
                .layout_out
                .as_ref()
                .map(|_| Solver::default().minimize(&g, Measure::Smn).map(|r| r.1))
                .transpose()?;
            (g, l)
        }
        Family::Challenge => {
            let inst = challenge_graph(a.k)?;
            meta["k"] = json!(a.k);
            meta["permutation_rule_provisional"] = json!(inst.permutation_rule_provisional);
            let l = if a.permuted {
                let perm = challenge_permutation(a.k)?;
                meta["permutation"] = json!(perm);
                permuted_challenge_layout(&inst, &perm)?
            } else {
                inst.mixed_layout.clone()
            };
            (inst.graph, Some(l))
        }
        Family::DiagGrid => {
            let pattern = match a.pattern {
                Pattern::Increasing => CellPattern::Increasing,
                Pattern::Alternating => CellPattern::Alternating,
                Pattern::Random => CellPattern::Random,
            };
            let (l, blocks) = diagonal_grid_instance(a.block_rows, a.block_cols, &pattern, a.seed)?;
            if let Some(p) = &a.spec_out {
                write_or_print(Some(p), &to_json(&blocks))?;
            }
            meta["blocks"] = json!(blocks);
            (l.graph().clone(), Some(l))
        }
        Family::Random => {
            let p = RandomLayoutParams::new(a.stacks, a.queues, a.n_a, a.n_b)
                .density(a.density)
                .separated(a.separated)
                .seed(a.seed);
            let l = random_layout_instance(p)?;
            (l.graph().clone(), Some(l))
        }
    };
    write_or_print(a.out.as_deref(), &graph_to_json(&graph))?;
    if let (Some(path), Some(l)) = (&a.layout_out, &layout) {
        write_or_print(Some(path), &layout_to_json(l))?;
        let (s, q) = l.signature();
        meta["signature"] = json!([s, q]);
    }
    meta["n"] = json!(graph.n());
    meta["m"] = json!(graph.m());
    if a.out.is_some() {
        println!("{meta}");
    }
    Ok(ExitCode::SUCCESS)
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::K6 => "k6",
        Family::Kmn => "kmn",
        Family::Challenge => "challenge",
        Family::DiagGrid => "diag-grid",
        Family::Random => "random",
    }
}

fn solve(a: SolveArgs) -> CliResult {
    let graph = graph_from_json(&read(&a.graph)?)?;
    let solver = solver(a.max_vertices, a.sequential)?;
    if let Some(m) = a.minimize {
        let (value, witness) = solver.minimize(&graph, m.into())?;
        if let Some(p) = &a.witness {
            write_or_print(Some(p), &layout_to_json(&witness))?;
        }
        if a.json {
            let (s, q) = witness.signature();
            println!("{}", json!({ "measure": Measure::from(m), "value": value, "signature": [s, q] }));
        } else {
            println!("{value}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let budget = if a.separated {
        PageBudget::separated(a.stacks, a.queues)
    } else {
        PageBudget::new(a.stacks, a.queues)
    };
    let result = solver.feasible(&graph, budget)?;
    if let (Some(p), Some(w)) = (&a.witness, &result.witness) {
        write_or_print(Some(p), &layout_to_json(w))?;
    }
    if a.json {
        println!(
            "{}",
            json!({ "feasible": result.feasible, "nodes_explored": result.nodes_explored })
        );
    } else {
        println!("{}", if result.feasible { "feasible" } else { "infeasible" });
    }
    Ok(if result.feasible {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn read_spec(path: Option<&PathBuf>, op: &str) -> Result<String, Failure> {
    let path = path.ok_or_else(|| input_error(format!("--op {op} needs --spec")))?;
    read(path)
}

fn transform(a: TransformArgs) -> CliResult {
    let layout = load_layout(&a.layout)?;
    let out = match a.op {
        Op::Riffle => {
            let spec: RiffleSpec =
                serde_json::from_str(&read_spec(a.spec.as_ref(), "riffle")?).map_err(input_error)?;
            riffle_split(&layout, &spec)?
        }
        Op::Separate => separate(&layout)?,
        Op::Thm5 => theorem5_transform(&layout)?,
        Op::Checkerboard => {
            let v: Value =
                serde_json::from_str(&read_spec(a.spec.as_ref(), "checkerboard")?).map_err(input_error)?;
            let grid: CheckerboardGrid = if v.get("stack_parity").is_some() {
                serde_json::from_value(v).map_err(input_error)?
            } else {
                let blocks: BlockStructure = serde_json::from_value(v).map_err(input_error)?;
                halve_diagonal_grid(&layout, &blocks)?
            };
            checkerboard_transform(&layout, &grid)?
        }
        Op::SamePerm => {
            let Oracle::Exact = a.oracle;
            let oracle = ExactOracle {
                solver: solver(a.max_vertices, false)?,
            };
            same_permutation_transform(&layout, &oracle, a.pad)?.layout
        }
        Op::BuildH => {
            let h = build_shallow_graph_H(&layout)?;
            if let Some(p) = &a.map_out {
                write_or_print(Some(p), &to_json(&json!({ "map": h.map, "legend": h.legend })))?;
            }
            h.layout
        }
    };
    write_or_print(a.out.as_deref(), &layout_to_json(&out))?;
    if a.out.is_some() {
        let (s, q) = out.signature();
        println!("{}", json!({ "signature": [s, q], "n": out.graph().n(), "m": out.graph().m() }));
    }
    Ok(ExitCode::SUCCESS)
}

fn subdivide(a: SubdivideArgs) -> CliResult {
    let pipeline: Pipeline = a.pipeline.parse()?;
    let layout = load_layout(&a.layout)?;
    let (record, out) = pipeline.run(&layout)?;
    if let Some(p) = &a.out_record {
        write_or_print(Some(p), &record_to_json(&record))?;
    }
    write_or_print(a.out_layout.as_deref(), &layout_to_json(&out))?;
    if a.out_layout.is_some() {
        let (s, q) = out.signature();
        println!(
            "{}",
            json!({
                "pipeline": pipeline.name(),
                "signature": [s, q],
                "max_division_vertices": record.max_division_count(),
                "host_vertices": record.host.n(),
            })
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn validate(a: ValidateArgs) -> CliResult {
    let wire: LayoutJson = serde_json::from_str(&read(&a.layout)?).map_err(input_error)?;
    let layout = match &a.graph {
        Some(g) => wire.with_graph(graph_from_json(&read(g)?)?)?,
        None => wire.into_layout()?,
    };
    let report = validate_layout(&layout);
    let (s, q) = layout.signature();
    let separated = layout.separated_first_side().ok().map(|side| side.is_some());
    if a.json {
        let shown: Vec<_> = report.violations.iter().take(MAX_REPORTED_VIOLATIONS).collect();
        println!(
            "{}",
            json!({
                "valid": report.is_valid(),
                "signature": [s, q],
                "separated": separated,
                "violation_count": report.violations.len(),
                "violations": shown,
            })
        );
    } else if report.is_valid() {
        println!("valid: {s} stack(s), {q} queue(s)");
    } else {
        println!("invalid: {} violation(s)", report.violations.len());
        for v in report.violations.iter().take(MAX_REPORTED_VIOLATIONS) {
            println!("  {}", serde_json::to_string(v).unwrap_or_default());
        }
    }
    Ok(if report.is_valid() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn render_cmd(a: RenderArgs) -> CliResult {
    let layout = load_layout(&a.layout)?;
    let valid = validate_layout(&layout).is_valid();
    if !valid && !a.force {
        return Err(Failure {
            code: 1,
            message: "layout is invalid; pass --force to draw it anyway".into(),
        });
    }
    let mut spec = match a.style {
        StyleArg::Arc => RenderSpec::default(),
        StyleArg::Grid => RenderSpec::grid(),
    };
    spec.width = a.width.unwrap_or(spec.width);
    spec.height = a.height.unwrap_or(spec.height);
    spec.highlight_violations = !valid;
    write_or_print(a.out.as_deref(), &render(&layout, &spec)?)?;
    Ok(ExitCode::SUCCESS)
}
