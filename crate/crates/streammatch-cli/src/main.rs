//! Command-line surface: generate instances, run algorithms, audit the
//! analysis inequalities, and benchmark over a corpus.

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use streammatch::audit::{audit_run, AuditReport};
use streammatch::exact::max_matching;
use streammatch::gen::{generate, FamilySpec};
use streammatch::{
    make_order, parse_instance, run_multi_pass, AlgoId, Instance, OrderPolicy, RunResult,
    StreamOrder,
};

#[derive(Parser)]
#[command(
    name = "streammatch",
    about = "Multi-pass semi-streaming maximum-matching workbench",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file from a family specification.
    Gen(GenArgs),
    /// Run one algorithm over an instance and report the output size.
    Run(RunArgs),
    /// Run and verify every analysis inequality; nonzero exit on violation.
    Audit(RunArgs),
    /// Run algorithms over a corpus directory and aggregate ratios.
    Bench(BenchArgs),
}

#[derive(Args)]
struct GenArgs {
    /// gnp | bipartite | triangle-free | adversarial-paths | components-mix
    #[arg(long)]
    family: String,
    /// Vertex count (gnp, triangle-free, components-mix).
    #[arg(long)]
    n: Option<usize>,
    /// Left side size (bipartite).
    #[arg(long)]
    n1: Option<usize>,
    /// Right side size (bipartite).
    #[arg(long)]
    n2: Option<usize>,
    /// Edge probability.
    #[arg(long)]
    p: Option<f64>,
    /// Path count (adversarial-paths).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// greedy | tri2 | tri3 | wing-tf | wing-gen
    #[arg(long)]
    algo: String,
    /// Instance file in the edge-list format.
    #[arg(long)]
    input: PathBuf,
    /// file | reverse | random
    #[arg(long, default_value = "file")]
    order: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also compute the exact optimum and the achieved ratio.
    #[arg(long)]
    opt: bool,
    /// Write the JSON run report to this path.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Refuse to run wing-tf on an input containing a triangle.
    #[arg(long)]
    strict_tf: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of .el instance files.
    #[arg(long)]
    dir: PathBuf,
    /// Restrict to one algorithm.
    #[arg(long)]
    algo: Option<String>,
    /// file | reverse | random
    #[arg(long, default_value = "file")]
    order: String,
    /// Base seed for the random order policy.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the CSV summary to this path; stdout when omitted.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(args, false),
        Command::Audit(args) => cmd_run(args, true),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn parse_algo(s: &str) -> Result<AlgoId> {
    AlgoId::from_str(s).map_err(|e| anyhow::anyhow!(e))
}

fn parse_policy(s: &str) -> Result<OrderPolicy> {
    OrderPolicy::from_str(s).map_err(|e| anyhow::anyhow!(e))
}

fn load_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read instance file {}", path.display()))?;
    let mut inst = parse_instance(&text).with_context(|| format!("parsing {}", path.display()))?;
    if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
        inst.name = stem.to_string();
    }
    Ok(inst)
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let need = |flag: Option<usize>, name: &str| {
        flag.with_context(|| format!("--{name} is required for family {}", args.family))
    };
    let p = args.p.unwrap_or(0.5);
    let spec = match args.family.as_str() {
        "gnp" => FamilySpec::Gnp {
            n: need(args.n, "n")?,
            p,
            seed: args.seed,
        },
        "bipartite" => FamilySpec::Bipartite {
            n1: need(args.n1, "n1")?,
            n2: need(args.n2, "n2")?,
            p,
            seed: args.seed,
        },
        "triangle-free" => FamilySpec::TriangleFree {
            n: need(args.n, "n")?,
            p,
            seed: args.seed,
        },
        "adversarial-paths" => FamilySpec::AdversarialPaths {
            k: need(args.k, "k")?,
        },
        "components-mix" => FamilySpec::ComponentsMix {
            n: need(args.n, "n")?,
            seed: args.seed,
        },
        other => bail!("unknown family {other:?}"),
    };
    let inst = generate(spec)?;
    let text = inst.render();
    match &args.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs().max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Output/optimum as a reduced fraction; an empty optimum counts as met.
fn ratio(out: usize, opt: usize) -> (i64, i64) {
    if opt == 0 {
        return (1, 1);
    }
    let g = gcd(out as i64, opt as i64);
    (out as i64 / g, opt as i64 / g)
}

struct Execution {
    run: RunResult,
    order: StreamOrder,
    opt: Option<usize>,
    report: Option<AuditReport>,
}

fn execute(args: &RunArgs, with_audit: bool) -> Result<Execution> {
    let algo = parse_algo(&args.algo)?;
    let policy = parse_policy(&args.order)?;
    let inst = load_instance(&args.input)?;
    if args.strict_tf && algo == AlgoId::WingTf && inst.graph.contains_triangle() {
        bail!(
            "{} contains a triangle; wing-tf guarantees apply to triangle-free inputs only",
            inst.name
        );
    }
    let order = make_order(inst.edge_count(), policy, args.seed);
    let run = run_multi_pass(algo, &inst, &order)?;
    let (opt, report) = if with_audit || args.opt {
        let mstar = max_matching(&inst.graph);
        let report = if with_audit {
            Some(audit_run(&run, &mstar)?)
        } else {
            None
        };
        (Some(mstar.len()), report)
    } else {
        (None, None)
    };
    Ok(Execution {
        run,
        order,
        opt,
        report,
    })
}

fn print_summary(exec: &Execution) {
    let run = &exec.run;
    print!("output={}", run.output.len());
    if let Some(opt) = exec.opt {
        let (num, den) = ratio(run.output.len(), opt);
        print!(
            " opt={opt} ratio={num}/{den} (~{:.4})",
            num as f64 / den as f64
        );
    }
    println!(
        " passes={} peak_edges={}",
        run.passes_used,
        run.meter.peak_retained_edges()
    );
}

fn json_report(exec: &Execution, inst_name: &str, n: usize, m: usize) -> serde_json::Value {
    let run = &exec.run;
    let mut report = json!({
        "instance": inst_name,
        "n": n,
        "m": m,
        "algo": run.algo.name(),
        "order": exec.order.policy.name(),
        "seed": exec.order.seed,
        "passes": run.passes_used,
        "output_size": run.output.len(),
        "memory": {
            "peak_edges": run.meter.peak_retained_edges(),
            "per_pass": run.meter.per_pass_peaks(),
        },
    });
    if let Some(opt) = exec.opt {
        let (num, den) = ratio(run.output.len(), opt);
        report["opt_size"] = json!(opt);
        report["ratio"] = json!({ "num": num, "den": den });
    }
    if let Some(audit) = &exec.report {
        report["audit"] = json!(audit
            .records
            .iter()
            .map(|r| json!({ "id": r.id, "lhs": r.lhs, "rhs": r.rhs, "holds": r.holds }))
            .collect::<Vec<_>>());
    }
    report
}

fn cmd_run(args: RunArgs, with_audit: bool) -> Result<()> {
    let inst = load_instance(&args.input)?;
    let (name, n, m) = (inst.name.clone(), inst.vertex_count(), inst.edge_count());
    let exec = execute(&args, with_audit)?;
    print_summary(&exec);
    if let Some(report) = &exec.report {
        for r in &report.records {
            println!(
                "{} lhs={} rhs={} {}",
                r.id,
                r.lhs,
                r.rhs,
                if r.holds { "ok" } else { "VIOLATED" }
            );
        }
    }
    if let Some(path) = &args.json {
        let report = json_report(&exec, &name, n, m);
        fs::write(path, serde_json::to_string_pretty(&report)?)
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    if let Some(report) = &exec.report {
        if !report.all_hold() {
            bail!("audit failed: at least one inequality violated");
        }
    }
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let policy = parse_policy(&args.order)?;
    let algos: Vec<AlgoId> = match &args.algo {
        Some(name) => vec![parse_algo(name)?],
        None => AlgoId::ALL.to_vec(),
    };
    let mut files: Vec<PathBuf> = fs::read_dir(&args.dir)
        .with_context(|| format!("cannot read corpus dir {}", args.dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "el"))
        .collect();
    files.sort();
    if files.is_empty() {
        bail!("no .el instances in {}", args.dir.display());
    }
    struct Aggregate {
        instances: usize,
        min_ratio: (i64, i64),
        ratio_sum: f64,
        max_peak: usize,
    }
    let mut aggregates: Vec<(AlgoId, Aggregate)> = algos
        .iter()
        .map(|&a| {
            (
                a,
                Aggregate {
                    instances: 0,
                    min_ratio: (1, 1),
                    ratio_sum: 0.0,
                    max_peak: 0,
                },
            )
        })
        .collect();
    for file in &files {
        let inst = load_instance(file)?;
        let opt = max_matching(&inst.graph).len();
        let order = make_order(inst.edge_count(), policy, args.seed);
        for (algo, agg) in aggregates.iter_mut() {
            let run = run_multi_pass(*algo, &inst, &order)?;
            let r = ratio(run.output.len(), opt);
            // min over exact fractions: a/b < c/d iff ad < cb
            if r.0 * agg.min_ratio.1 < agg.min_ratio.0 * r.1 {
                agg.min_ratio = r;
            }
            agg.ratio_sum += r.0 as f64 / r.1 as f64;
            agg.max_peak = agg.max_peak.max(run.meter.peak_retained_edges());
            agg.instances += 1;
        }
    }
    let mut csv = String::from("algo,instances,min_ratio,mean_ratio,max_peak_edges\n");
    for (algo, agg) in &aggregates {
        csv.push_str(&format!(
            "{},{},{}/{},{:.6},{}\n",
            algo.name(),
            agg.instances,
            agg.min_ratio.0,
            agg.min_ratio.1,
            agg.ratio_sum / agg.instances.max(1) as f64,
            agg.max_peak
        ));
    }
    match &args.csv {
        Some(path) => {
            fs::write(path, &csv).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{csv}"),
    }
    Ok(())
}
