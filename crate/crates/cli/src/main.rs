use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coprime_census::census::{
    brute_force_count, census_sweep, density_rho, inclusion_exclusion_count, monte_carlo_density, run_verify,
    squarefree_label_count, Backend, RhoJson, SweepOptions, VerifyOptions,
};
use coprime_census::graphpoly::{q_g, q_g_plus, q_g_r, q_g_r_plus, q_rs};
use coprime_census::polyfq::prime_power_parts;
use coprime_census::{Budgets, CensusError, CoprimalityGraph, FieldCtx, GraphError, PolyError};
use num_bigint::BigUint;
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "coprime-census",
    version,
    about = "Count polynomial tuples with graph-prescribed coprimality over F_q"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact g(n), or a Monte Carlo estimate
    Count(CountArgs),
    /// Interval for the density rho (or rho+ with --plus)
    Density(DensityArgs),
    /// Print the graph polynomials
    Polys(PolysArgs),
    /// Run the self-check suite
    Verify(VerifyArgs),
    /// Convergence table over a range of n
    Sweep(SweepArgs),
}

#[derive(Args)]
#[group(id = "source", required = true, multiple = false)]
struct GraphSource {
    /// Inline graph, e.g. "v=3;1-2,2-3" or JSON
    #[arg(long, group = "source")]
    graph: Option<String>,
    /// File holding a graph in either form
    #[arg(long, group = "source")]
    graph_file: Option<PathBuf>,
}

#[derive(Args)]
struct BudgetArgs {
    /// Ceiling for every budget at once
    #[arg(long, env = "COPRIME_CENSUS_BUDGET")]
    budget: Option<u64>,
    #[arg(long)]
    budget_brute: Option<u64>,
    #[arg(long)]
    budget_ie: Option<u64>,
    #[arg(long)]
    budget_subsets: Option<u64>,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        let mut b = self.budget.map(Budgets::uniform).unwrap_or_default();
        if let Some(x) = self.budget_brute {
            b.brute_gcd_tests = x;
        }
        if let Some(x) = self.budget_ie {
            b.ie_labelings = x;
        }
        if let Some(x) = self.budget_subsets {
            b.subsets = x;
        }
        b
    }
}

#[derive(Args)]
struct OutArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Brute,
    Ie,
    Auto,
    Montecarlo,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Brute => Backend::Brute,
            BackendArg::Ie => Backend::InclusionExclusion,
            BackendArg::Auto => Backend::Auto,
            BackendArg::Montecarlo => Backend::MonteCarlo,
        }
    }
}

#[derive(Args)]
struct McArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// Defaults to the available parallelism
    #[arg(long)]
    workers: Option<usize>,
}

impl McArgs {
    fn workers(&self) -> usize {
        self.workers.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    src: GraphSource,
    /// Field order, "p", "p^k" or a prime power
    #[arg(long)]
    q: String,
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
    backend: BackendArg,
    #[command(flatten)]
    mc: McArgs,
    #[command(flatten)]
    budgets: BudgetArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct DensityArgs {
    #[command(flatten)]
    src: GraphSource,
    #[arg(long)]
    q: String,
    /// Target interval width
    #[arg(long, default_value_t = 1e-12)]
    eps: f64,
    #[arg(long)]
    plus: bool,
    #[command(flatten)]
    budgets: BudgetArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct PolysArgs {
    #[command(flatten)]
    src: GraphSource,
    /// Also print Q_{G,r} and Q_{G,r}+ for this vertex (1-based)
    #[arg(long)]
    vertex: Option<usize>,
    /// Also print Q_{r,s} for a non-edge "r,s" (1-based)
    #[arg(long)]
    pair: Option<String>,
    #[command(flatten)]
    budgets: BudgetArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 4)]
    max_vertices: usize,
    /// Comma-separated field orders
    #[arg(long, default_value = "2,3,4")]
    q: String,
    #[arg(long, hide = true)]
    inject_fault: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    src: GraphSource,
    #[arg(long)]
    q: String,
    /// Inclusive range "A..B"
    #[arg(long)]
    n_range: String,
    #[arg(long, value_enum, default_value_t = BackendArg::Auto)]
    backend: BackendArg,
    #[arg(long, default_value_t = 1e-12)]
    eps: f64,
    #[command(flatten)]
    mc: McArgs,
    #[command(flatten)]
    budgets: BudgetArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// An error together with its exit code.
struct Fail(u8, String);

impl From<CensusError> for Fail {
    fn from(e: CensusError) -> Self {
        let code = match e {
            CensusError::Budget { .. } | CensusError::Graph(GraphError::SubsetBudget { .. }) => 3,
            CensusError::Graph(_) | CensusError::Poly(PolyError::Parse(_)) => 2,
            _ => 1,
        };
        Fail(code, e.to_string())
    }
}

impl From<GraphError> for Fail {
    fn from(e: GraphError) -> Self {
        CensusError::from(e).into()
    }
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(2, msg.into())
}

fn read_graph(src: &GraphSource) -> Result<CoprimalityGraph, Fail> {
    let text = match (&src.graph, &src.graph_file) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?,
        (None, None) => return Err(usage("no graph given")),
    };
    Ok(CoprimalityGraph::parse(text.trim())?)
}

fn parse_q(s: &str) -> Result<u64, Fail> {
    let bad = || usage(format!("invalid field order {s:?}"));
    let q = match s.split_once('^') {
        Some((p, k)) => {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let k: u32 = k.trim().parse().map_err(|_| bad())?;
            p.checked_pow(k).ok_or_else(bad)?
        }
        None => s.trim().parse().map_err(|_| bad())?,
    };
    match prime_power_parts(q) {
        Some(_) => Ok(q),
        None => Err(usage(format!("{s} is not a prime power"))),
    }
}

fn field(q: u64) -> Result<FieldCtx, Fail> {
    FieldCtx::from_order(q).map_err(|e| usage(e.to_string()))
}

fn parse_range(s: &str) -> Result<(i64, i64), Fail> {
    let bad = || usage(format!("invalid range {s:?}, expected A..B"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(usage(format!("empty range {s}")));
    }
    Ok((a, b))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Fail> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| Fail(1, format!("{}: {e}", p.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Fail(1, e.to_string())),
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json")
}

fn cmd_count(a: &CountArgs) -> Result<(), Fail> {
    let g = read_graph(&a.src)?;
    let q = parse_q(&a.q)?;
    let ctx = field(q)?;
    let budgets = a.budgets.budgets();
    let mut backend = Backend::from(a.backend);
    if backend == Backend::Auto {
        let cost = squarefree_label_count(q, a.n).pow(g.edge_count() as u32);
        backend = if cost <= BigUint::from(budgets.ie_labelings) {
            Backend::InclusionExclusion
        } else {
            eprintln!("warning: inclusion-exclusion cost {cost} exceeds budget, falling back to Monte Carlo");
            Backend::MonteCarlo
        };
    }
    let exact = match backend {
        Backend::Brute => brute_force_count(&g, &ctx, a.n, &budgets)?,
        Backend::InclusionExclusion => inclusion_exclusion_count(&g, &ctx, a.n, &budgets)?,
        _ => {
            let est = monte_carlo_density(&g, &ctx, a.n, a.mc.samples, a.mc.seed, a.mc.workers())?;
            let text = match a.out.format {
                Format::Json => pretty(&json!({
                    "graph": g.to_string(), "q": q, "n": a.n, "backend": "montecarlo", "estimate": est,
                })),
                Format::Csv => format!(
                    "graph,q,n,backend,estimate,stderr,hits,samples,seed,workers\n\"{g}\",{q},{},montecarlo,{},{},{},{},{},{}",
                    a.n, est.estimate, est.stderr, est.hits, est.samples, est.seed, est.workers
                ),
                Format::Text => format!("{} +- {} (density estimate)", est.estimate, est.stderr),
            };
            return emit(&a.out.out, &text);
        }
    };
    let name = Backend::name(backend);
    let text = match a.out.format {
        Format::Json => pretty(&json!({
            "graph": g.to_string(), "q": q, "n": a.n, "backend": name, "count": exact.to_string(),
        })),
        Format::Csv => format!("graph,q,n,backend,count\n\"{g}\",{q},{},{name},{exact}", a.n),
        Format::Text => exact.to_string(),
    };
    emit(&a.out.out, &text)
}

fn cmd_density(a: &DensityArgs) -> Result<(), Fail> {
    let g = read_graph(&a.src)?;
    let q = parse_q(&a.q)?;
    let rho = density_rho(&g, q, a.eps, a.plus, &a.budgets.budgets())?;
    let r = RhoJson::from(&rho);
    let text = match a.out.format {
        Format::Json => pretty(&json!({
            "graph": g.to_string(), "q": q, "plus": a.plus, "eps": a.eps, "lo": r.lo, "hi": r.hi, "D": r.d,
        })),
        Format::Csv => format!("graph,q,plus,eps,lo,hi,D\n\"{g}\",{q},{},{},{},{},{}", a.plus, a.eps, r.lo, r.hi, r.d),
        Format::Text => {
            let name = if a.plus { "rho+" } else { "rho" };
            format!("{name} in [{}, {}]\nlo = {}\nhi = {}\nD = {}", rho.lo_f64(), rho.hi_f64(), r.lo, r.hi, r.d)
        }
    };
    emit(&a.out.out, &text)
}

fn parse_pair(s: &str) -> Result<(usize, usize), Fail> {
    let bad = || usage(format!("invalid pair {s:?}, expected r,s"));
    let (r, t) = s.split_once(',').ok_or_else(bad)?;
    Ok((r.trim().parse().map_err(|_| bad())?, t.trim().parse().map_err(|_| bad())?))
}

/// 1-based vertex to 0-based, or a range error.
fn vertex(g: &CoprimalityGraph, r: usize) -> Result<usize, Fail> {
    if r == 0 || r > g.vertex_count() {
        return Err(GraphError::VertexOutOfRange { vertex: r, v: g.vertex_count() }.into());
    }
    Ok(r - 1)
}

fn cmd_polys(a: &PolysArgs) -> Result<(), Fail> {
    let g = read_graph(&a.src)?;
    let budget = a.budgets.budgets().subsets;
    if g.edge_count() > 62 || 1u64 << g.edge_count() > budget {
        return Err(GraphError::SubsetBudget { e: g.edge_count(), budget }.into());
    }
    let mut polys = vec![("Q_G".to_string(), q_g(&g)?), ("Q_G+".to_string(), q_g_plus(&g)?)];
    if let Some(r) = a.vertex {
        let r0 = vertex(&g, r)?;
        polys.push((format!("Q_G,{r}"), q_g_r(&g, r0)?));
        polys.push((format!("Q_G,{r}+"), q_g_r_plus(&g, r0)?));
    }
    if let Some(p) = &a.pair {
        let (r, s) = parse_pair(p)?;
        polys.push((format!("Q_{r},{s}"), q_rs(&g, vertex(&g, r)?, vertex(&g, s)?)?));
    }
    let text = match a.out.format {
        Format::Json => {
            let entries: serde_json::Map<_, _> = polys
                .iter()
                .map(|(k, p)| (k.clone(), json!(p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>())))
                .collect();
            pretty(&json!({ "graph": g.to_string(), "polynomials": entries }))
        }
        Format::Csv => {
            let mut s = "name,coefficients\n".to_string();
            for (k, p) in &polys {
                let cs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                s += &format!("{k},{}\n", cs.join(" "));
            }
            s
        }
        Format::Text => polys.iter().map(|(k, p)| format!("{k} = {p}")).collect::<Vec<_>>().join("\n"),
    };
    emit(&a.out.out, &text)
}

fn cmd_verify(a: &VerifyArgs) -> Result<bool, Fail> {
    let qs = a.q.split(',').map(parse_q).collect::<Result<Vec<_>, _>>()?;
    let opts = VerifyOptions { max_vertices: a.max_vertices, qs, inject_fault: a.inject_fault, ..Default::default() };
    let rep = run_verify(&opts)?;
    let text = match a.out.format {
        Format::Json => serde_json::to_string_pretty(&rep).expect("json"),
        Format::Csv => {
            let mut s = "check,instances,passed,counterexample\n".to_string();
            for c in &rep.checks {
                s += &format!(
                    "{},{},{},\"{}\"\n",
                    c.name,
                    c.instances,
                    c.passed,
                    c.counterexample.clone().unwrap_or_default()
                );
            }
            s
        }
        Format::Text => rep.to_text(),
    };
    emit(&a.out.out, &text)?;
    Ok(rep.passed())
}

fn cmd_sweep(a: &SweepArgs) -> Result<(), Fail> {
    let g = read_graph(&a.src)?;
    let q = parse_q(&a.q)?;
    let ctx = field(q)?;
    let (lo, hi) = parse_range(&a.n_range)?;
    let opts = SweepOptions {
        backend: a.backend.into(),
        budgets: a.budgets.budgets(),
        eps: a.eps,
        samples: a.mc.samples,
        seed: a.mc.seed,
        workers: a.mc.workers(),
        ..Default::default()
    };
    let rep = census_sweep(&g, &ctx, lo..=hi, &opts)?;
    let text = match a.format {
        Format::Csv => rep.to_csv(),
        _ => rep.to_json(),
    };
    emit(&a.out, &text)?;
    if rep.rows.iter().all(|r| r.error.is_some()) {
        return Err(Fail(1, "every row failed".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Count(a) => cmd_count(a).map(|_| true),
        Cmd::Density(a) => cmd_density(a).map(|_| true),
        Cmd::Polys(a) => cmd_polys(a).map(|_| true),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Sweep(a) => cmd_sweep(a).map(|_| true),
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
