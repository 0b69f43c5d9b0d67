//! `hullwalk`: command-line front end for the hull-edge and stay-positive engines.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use hullwalk::asymptotics::{asymptotic_pn, ckm_quadrature, ckm_series_tail};
use hullwalk::edge::{brute_force_edge_probability, exact_edge_probability};
use hullwalk::hull::{
    chord_is_hull_edge_geometric, chord_on_boundary_strict, convex_hull, has_collinear_visit,
};
use hullwalk::montecarlo::{mc_edge_probability, mc_stay_positive, McEstimate, RunConfig};
use hullwalk::series::{brute_force_stay_positive, check_exact_steps, stay_positive, stay_positive_dp};
use hullwalk::tables::{ratio_table, DEFAULT_LAWS, DEFAULT_NS};
use hullwalk::{EdgeSpec, Error, LatticePath, Mode, Probability, QuadratureSpec, StepLaw};

use output::{sig6, CommandResult, Format, Provenance, Rendered};

#[derive(Parser)]
#[command(name = "hullwalk", version, about = "Hull-edge probabilities of planar lattice walks")]
struct Cli {
    /// Worker threads. Results are identical for every worker count.
    #[arg(long, global = true, env = "HULLWALK_WORKERS")]
    workers: Option<usize>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    out: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The constant C_{k,m} of the stay-positive asymptotics.
    Ckm {
        k: u64,
        m: u64,
        /// Absolute tolerance; for the series method, the largest acceptable error bound.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value_t = CkmMethod::Quadrature)]
        method: CkmMethod,
        /// Terms of the series method.
        #[arg(long, default_value_t = 2000)]
        terms: usize,
    },
    /// The probability p_n that the walk with steps ±k, ±m stays positive for n steps.
    Pn {
        k: u64,
        m: u64,
        n: usize,
        #[arg(long, value_enum, default_value_t = PnMode::Exact)]
        mode: PnMode,
        /// Arithmetic for the exact and dp modes.
        #[arg(long, value_enum, default_value_t = Arith::Exact)]
        arith: Arith,
        #[arg(long, default_value_t = 100_000)]
        runs: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// The probability that the chord S_{n1} S_{n2} is an edge of the hull of an n-step walk.
    Edge {
        n1: usize,
        n2: usize,
        n: usize,
        #[arg(long, value_enum, default_value_t = EdgeMode::Exact)]
        mode: EdgeMode,
        #[arg(long, value_enum, default_value_t = Arith::Exact)]
        arith: Arith,
        #[arg(long, default_value_t = 100_000)]
        runs: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Simulated stay-positive probabilities against C_{k,m} / sqrt(pi n).
    Tables {
        #[arg(long, default_value_t = 1_000_000)]
        runs: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Law as `k,m`; repeatable. Defaults to 1,1 2,1 5,7.
        #[arg(long = "law", value_parser = parse_law)]
        laws: Vec<(u64, u64)>,
        /// Step count; repeatable. Defaults to 100 1000 10000.
        #[arg(long = "n")]
        ns: Vec<usize>,
    },
    /// Convex hull of a path file, and the chord predicates when n1 n2 are given.
    Hull {
        /// Path file: one step (E, W, N, S) per line, or a JSON array of [x, y] pairs.
        #[arg(long = "in")]
        input: PathBuf,
        n1: Option<usize>,
        n2: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CkmMethod {
    Quadrature,
    Series,
}

#[derive(Clone, Copy, ValueEnum)]
enum PnMode {
    Exact,
    Dp,
    Mc,
    Asymp,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum EdgeMode {
    Exact,
    Mc,
    Brute,
}

#[derive(Clone, Copy, ValueEnum)]
enum Arith {
    Exact,
    Float,
}

impl From<Arith> for Mode {
    fn from(a: Arith) -> Mode {
        match a {
            Arith::Exact => Mode::Exact,
            Arith::Float => Mode::Float,
        }
    }
}

fn parse_law(s: &str) -> Result<(u64, u64), String> {
    let (k, m) = s.split_once(',').ok_or_else(|| format!("expected k,m, got {s:?}"))?;
    let k = k.trim().parse().map_err(|e| format!("k: {e}"))?;
    let m = m.trim().parse().map_err(|e| format!("m: {e}"))?;
    Ok((k, m))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Tolerance { .. } => 3,
        Error::TooLarge { .. } => 4,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let workers = match cli.workers {
        Some(0) => return fail(&Error::InvalidArgument("workers must be at least 1".into())),
        Some(w) => w,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(workers).build_global() {
        eprintln!("error: cannot start worker pool: {e}");
        return ExitCode::from(4);
    }
    match run(cli.command, workers) {
        Ok(rendered) => {
            print!("{}", rendered.render(cli.out));
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(exit_code(e))
}

fn run(command: Command, workers: usize) -> hullwalk::Result<Rendered> {
    match command {
        Command::Ckm { k, m, tol, method, terms } => cmd_ckm(k, m, tol, method, terms),
        Command::Pn { k, m, n, mode, arith, runs, seed } => {
            let cfg = RunConfig::new(runs, seed).with_workers(workers);
            cmd_pn(k, m, n, mode, arith.into(), &cfg)
        }
        Command::Edge { n1, n2, n, mode, arith, runs, seed } => {
            let cfg = RunConfig::new(runs, seed).with_workers(workers);
            cmd_edge(EdgeSpec::new(n1, n2, n)?, mode, arith.into(), &cfg)
        }
        Command::Tables { runs, seed, laws, ns } => {
            cmd_tables(&laws, &ns, &RunConfig::new(runs, seed).with_workers(workers))
        }
        Command::Hull { input, n1, n2 } => cmd_hull(&input, n1, n2),
    }
}

fn cmd_ckm(k: u64, m: u64, tol: Option<f64>, method: CkmMethod, terms: usize) -> hullwalk::Result<Rendered> {
    let law = StepLaw::new(k, m)?;
    let c = match method {
        CkmMethod::Quadrature => {
            let spec = tol.map_or_else(QuadratureSpec::default, QuadratureSpec::with_tolerance);
            ckm_quadrature(&law, &spec)?
        }
        CkmMethod::Series => {
            if terms == 0 {
                return Err(Error::InvalidArgument("terms must be at least 1".into()));
            }
            let c = ckm_series_tail(&law, terms);
            if let Some(t) = tol {
                if c.error_bound > t {
                    return Err(Error::Tolerance { tolerance: t, estimate: c.error_bound });
                }
            }
            c
        }
    };
    let tolerance = match method {
        CkmMethod::Quadrature => Some(tol.unwrap_or(QuadratureSpec::default().absolute_tolerance)),
        CkmMethod::Series => tol,
    };
    let result = CommandResult::new(
        "ckm",
        json!({ "k": k, "m": m, "tol": tolerance, "method": c.method, "terms": matches!(method, CkmMethod::Series).then_some(terms) }),
        json!({ "value": c.value, "method": c.method, "error_bound": c.error_bound }),
        Provenance { mode: "float".into(), tolerance, stderr: None, seed: None },
    );
    let headline = format!("C({k},{m}) = {}", sig6(c.value));
    Ok(Rendered::Command { result, headline })
}

fn probability_payload(p: &Probability, method: &str) -> serde_json::Value {
    json!({ "value": p, "value_f64": p.to_f64(), "method": method })
}

fn probability_headline(name: &str, p: &Probability) -> String {
    match p {
        Probability::Exact(r) => format!("{name} = {r} ({})", sig6(p.to_f64())),
        Probability::Float(x) => format!("{name} = {}", sig6(*x)),
    }
}

fn mc_payload(e: &McEstimate) -> serde_json::Value {
    json!({
        "value": e.mean,
        "stderr": e.stderr,
        "hits": e.hits,
        "runs": e.runs,
        "derived_constant": e.derived_constant,
        "derived_stderr": e.derived_stderr(),
        "method": "monte-carlo",
    })
}

fn mc_headline(name: &str, e: &McEstimate) -> String {
    let mut s = format!("{name} = {} +/- {}", sig6(e.mean), sig6(e.stderr));
    if let (Some(c), Some(se)) = (e.derived_constant, e.derived_stderr()) {
        s.push_str(&format!(", scaled {} +/- {}", sig6(c), sig6(se)));
    }
    s
}

fn mc_provenance(e: &McEstimate) -> Provenance {
    Provenance { mode: "monte-carlo".into(), tolerance: None, stderr: Some(e.stderr), seed: Some(e.seed) }
}

fn exact_provenance(mode: Mode) -> Provenance {
    Provenance { mode: mode.to_string(), tolerance: None, stderr: None, seed: None }
}

fn cmd_pn(
    k: u64,
    m: u64,
    n: usize,
    mode: PnMode,
    arith: Mode,
    cfg: &RunConfig,
) -> hullwalk::Result<Rendered> {
    let law = StepLaw::new(k, m)?;
    let name = format!("p_{n}");
    let mut params = json!({ "k": k, "m": m, "n": n });
    let (payload, provenance, headline) = match mode {
        PnMode::Exact | PnMode::Dp => {
            check_exact_steps(n, arith)?;
            let (p, method) = match mode {
                PnMode::Exact => (stay_positive(&law, n, arith), "recursion"),
                _ => (stay_positive_dp(&law, n, arith), "position-dp"),
            };
            params["arith"] = json!(arith);
            (probability_payload(&p, method), exact_provenance(arith), probability_headline(&name, &p))
        }
        PnMode::Brute => {
            let p = Probability::Exact(brute_force_stay_positive(&law, n)?);
            (
                probability_payload(&p, "enumeration"),
                exact_provenance(Mode::Exact),
                probability_headline(&name, &p),
            )
        }
        PnMode::Asymp => {
            let spec = QuadratureSpec::default();
            let v = asymptotic_pn(&law, n, &spec)?;
            let c = ckm_quadrature(&law, &spec)?.value;
            let prov = Provenance {
                mode: "asymptotic".into(),
                tolerance: Some(spec.absolute_tolerance),
                stderr: None,
                seed: None,
            };
            (
                json!({ "value": v, "constant": c, "method": "asymptotic" }),
                prov,
                format!("{name} ~ {}", sig6(v)),
            )
        }
        PnMode::Mc => {
            let e = mc_stay_positive(&law, n, cfg)?;
            params["runs"] = json!(cfg.runs);
            params["seed"] = json!(cfg.seed);
            (mc_payload(&e), mc_provenance(&e), mc_headline(&name, &e))
        }
    };
    params["mode"] = json!(mode_name(mode));
    Ok(Rendered::Command { result: CommandResult::new("pn", params, payload, provenance), headline })
}

fn mode_name(mode: PnMode) -> &'static str {
    match mode {
        PnMode::Exact => "exact",
        PnMode::Dp => "dp",
        PnMode::Mc => "mc",
        PnMode::Asymp => "asymp",
        PnMode::Brute => "brute",
    }
}

fn cmd_edge(spec: EdgeSpec, mode: EdgeMode, arith: Mode, cfg: &RunConfig) -> hullwalk::Result<Rendered> {
    let name = format!("P(edge {},{} of {})", spec.n1, spec.n2, spec.n);
    let mut params = json!({ "n1": spec.n1, "n2": spec.n2, "n": spec.n });
    let scale = (spec.n as f64).sqrt();
    let (payload, provenance, headline, mode_str) = match mode {
        EdgeMode::Exact | EdgeMode::Brute => {
            let (r, method, mode_str, arith) = match mode {
                EdgeMode::Exact => (exact_edge_probability(spec, arith)?, "exact-factored", "exact", arith),
                _ => (brute_force_edge_probability(spec)?, "brute-force", "brute", Mode::Exact),
            };
            if matches!(mode, EdgeMode::Exact) {
                params["arith"] = json!(arith);
            }
            let mut payload = probability_payload(&r.value, method);
            payload["scaled"] = json!(scale * r.value.to_f64());
            (payload, exact_provenance(arith), probability_headline(&name, &r.value), mode_str)
        }
        EdgeMode::Mc => {
            let e = mc_edge_probability(spec, cfg)?;
            params["runs"] = json!(cfg.runs);
            params["seed"] = json!(cfg.seed);
            (mc_payload(&e), mc_provenance(&e), mc_headline(&name, &e), "mc")
        }
    };
    params["mode"] = json!(mode_str);
    Ok(Rendered::Command { result: CommandResult::new("edge", params, payload, provenance), headline })
}

fn cmd_tables(laws: &[(u64, u64)], ns: &[usize], cfg: &RunConfig) -> hullwalk::Result<Rendered> {
    let laws = if laws.is_empty() { DEFAULT_LAWS.to_vec() } else { laws.to_vec() };
    let ns = if ns.is_empty() { DEFAULT_NS.to_vec() } else { ns.to_vec() };
    let laws = laws.into_iter().map(|(k, m)| StepLaw::new(k, m)).collect::<hullwalk::Result<Vec<_>>>()?;
    Ok(Rendered::Table(ratio_table(&laws, &ns, cfg, &QuadratureSpec::default())?))
}

fn cmd_hull(input: &PathBuf, n1: Option<usize>, n2: Option<usize>) -> hullwalk::Result<Rendered> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Error::InvalidPath(format!("{}: {e}", input.display())))?;
    let path = LatticePath::parse(&text)?;
    let hull = convex_hull(path.points())?;
    let vertices: Vec<[i64; 2]> = hull.vertices.iter().map(|p| [p.x, p.y]).collect();
    let mut params = json!({ "input": input.display().to_string(), "steps": path.steps() });
    let mut result = json!({ "vertices": vertices, "degenerate": hull.is_degenerate() });
    let mut headline = format!(
        "hull of {} steps: {} vertices{}",
        path.steps(),
        vertices.len(),
        if hull.is_degenerate() { " (degenerate)" } else { "" }
    );
    match (n1, n2) {
        (Some(n1), Some(n2)) => {
            let spec = EdgeSpec::new(n1, n2, path.steps())?;
            params["n1"] = json!(n1);
            params["n2"] = json!(n2);
            let strict = chord_on_boundary_strict(&path, spec)?;
            let geometric = chord_is_hull_edge_geometric(&path, spec)?;
            result["strict"] = json!(strict);
            result["geometric"] = json!(geometric);
            result["collinear_visit"] = json!(has_collinear_visit(&path, spec)?);
            headline.push_str(&format!("; chord {n1},{n2}: strict {strict}, geometric {geometric}"));
        }
        (None, None) => {}
        _ => return Err(Error::InvalidArgument("give both n1 and n2, or neither".into())),
    }
    let provenance = exact_provenance(Mode::Exact);
    Ok(Rendered::Command { result: CommandResult::new("hull", params, result, provenance), headline })
}
