//! `rigid`: command-line front end for rigidity analysis and unlabeled
//! reconstruction. Machine output is JSON on stdout; errors go to stderr with
//! a distinct exit code per failure kind.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use rigidity_core::graph::io::{parse_any, to_json, to_text};
use rigidity_core::graph::{
    catalog, is_cycle_isomorphism_with_cap, is_isomorphic, vertex_map_from_edge_bijection, EdgeBijection,
    OrderedGraph, DEFAULT_CIRCUIT_CAP,
};
use rigidity_core::linalg::random_unit_configuration;
use rigidity_core::rigidity::{hendrickson_check, is_generically_globally_rigid, measure, Framework};
use rigidity_core::unlabeled::{
    certify, not_rr_pair, parse_configuration_json, parse_distance_file, reconstruct,
    same_measurement_variety_sampled, to_distance_file, DistanceMultiset, SearchOptions, CERTIFY_TOL,
    DEFAULT_RESTARTS,
};
use rigidity_core::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "rigid", version, about = "Graph rigidity analysis and unlabeled distance geometry")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "RIGID_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rigidity report for a graph (file or built-in name such as K5, W4).
    Analyze {
        graph: Option<String>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Analyze every built-in catalog graph instead.
        #[arg(long, conflicts_with = "graph")]
        catalog: bool,
    },
    /// Recover graphs and configurations from a distance file.
    Reconstruct {
        distances: PathBuf,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        /// Wall-clock budget in seconds; the search reports `timed_out`.
        #[arg(long)]
        max_time: Option<f64>,
    },
    /// Check a candidate answer: globally rigid graph and matching distances.
    Certify {
        distances: PathBuf,
        graph: String,
        /// `[[x, y], ...]` or a solution record with a `coords` field.
        coords: PathBuf,
    },
    /// Cycle-isomorphism test of an edge bijection between two graphs.
    CompareMatroid {
        first: String,
        second: String,
        /// Whitespace-separated 1-based target edge per source edge; default is
        /// edge order.
        #[arg(long)]
        bijection: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_CIRCUIT_CAP)]
        max_circuits: usize,
    },
    /// Swap one edge for a non-edge across a flex and compare measurement sets.
    VarietyPair {
        graph: String,
        /// Endpoints of the edge to remove (1-based).
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        edge: Vec<usize>,
        /// Endpoints of the pair to add (1-based).
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        new_edge: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_RESTARTS)]
        restarts: usize,
        /// Directory for the two graph files.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Distance file for a random framework on a graph.
    Generate {
        graph: String,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Also write the source configuration as JSON.
        #[arg(long)]
        coords_out: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::InvalidGraph(_) | Error::ShapeMismatch(_) | Error::NonGenericInput(_) => 2,
            Error::DimensionTooSmall { .. } => 3,
            Error::ScaleExceeded(_) | Error::CapExceeded { .. } => 5,
            Error::PreconditionFailed(_) => 6,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: String) -> Failure {
    Failure { code: 2, message }
}

type Outcome = Result<(Value, u8), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

/// A path to a graph file, or a built-in name when no such file exists.
fn load_graph(spec: &str) -> Result<OrderedGraph, Failure> {
    let path = Path::new(spec);
    if path.exists() {
        return parse_any(&read(path)?).map_err(|e| input_error(format!("{spec}: {e}")));
    }
    catalog::by_name(spec).map_err(|_| input_error(format!("{spec}: no such file or built-in graph")))
}

fn graph_json(g: &OrderedGraph) -> Value {
    serde_json::from_str(&to_json(g)).expect("graph JSON")
}

fn analyze(graph: Option<String>, dim: usize, all: bool, seed: u64) -> Outcome {
    if all {
        let mut reports = Vec::new();
        for (name, g) in catalog::builtin() {
            let d = dim.min(g.n() - 2).max(1);
            let mut r = serde_json::to_value(hendrickson_check(&g, d, seed)?).expect("report");
            r["name"] = json!(name);
            reports.push(r);
        }
        return Ok((Value::Array(reports), 0));
    }
    let spec = graph.ok_or_else(|| input_error("analyze needs a graph or --catalog".into()))?;
    let g = load_graph(&spec)?;
    Ok((serde_json::to_value(hendrickson_check(&g, dim, seed)?).expect("report"), 0))
}

fn run_reconstruct(distances: &Path, restarts: usize, max_time: Option<f64>, seed: u64) -> Outcome {
    let file = parse_distance_file(&read(distances)?)?;
    let max_time = match max_time {
        Some(t) if !(t.is_finite() && t >= 0.0) => return Err(input_error(format!("bad --max-time {t}"))),
        t => t.map(Duration::from_secs_f64),
    };
    let opts = SearchOptions { restarts: restarts.max(1), seed, max_time, ..SearchOptions::default() };
    let res = reconstruct(&file.values, file.n, file.d, &opts)?;
    let code = if res.solutions.is_empty() { 4 } else { 0 };
    Ok((serde_json::to_value(&res).expect("result"), code))
}

fn run_certify(distances: &Path, graph: &str, coords: &Path, seed: u64) -> Outcome {
    let file = parse_distance_file(&read(distances)?)?;
    let h = load_graph(graph)?;
    let q = parse_configuration_json(&read(coords)?)?;
    let certified = certify(&file.values, file.n, file.d, &h, &q, seed)?;
    let lengths = measure(&Framework::new(h.clone(), q)?).to_f64();
    let globally_rigid = h.n() >= file.d + 2 && is_generically_globally_rigid(&h, file.d, seed)?;
    Ok((
        json!({
            "certified": certified,
            "globally_rigid": globally_rigid,
            "distances_match": file.values.matches(&lengths, CERTIFY_TOL),
        }),
        0,
    ))
}

fn read_bijection(path: &Path, m: usize) -> Result<Vec<usize>, Failure> {
    let text = read(path)?;
    let map: Vec<usize> = text
        .split(|c: char| c.is_whitespace() || c == ',' || c == '[' || c == ']')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| input_error(format!("bad edge index {t:?}"))))
        .collect::<Result<_, _>>()?;
    if map.len() != m || map.contains(&0) {
        return Err(input_error(format!("bijection needs {m} 1-based edge indices")));
    }
    Ok(map.into_iter().map(|x| x - 1).collect())
}

fn compare_matroid(first: &str, second: &str, bijection: Option<&Path>, cap: usize) -> Outcome {
    let (g, h) = (load_graph(first)?, load_graph(second)?);
    if g.m() != h.m() {
        return Err(input_error(format!("edge counts differ: {} vs {}", g.m(), h.m())));
    }
    let map = match bijection {
        Some(p) => read_bijection(p, g.m())?,
        None => (0..g.m()).collect(),
    };
    let b = EdgeBijection::new(g.clone(), h.clone(), map)?;
    let cyc = is_cycle_isomorphism_with_cap(&b, cap)?;
    let vmap = if cyc { vertex_map_from_edge_bijection(&b) } else { None };
    let relation = match (&vmap, cyc) {
        (Some(_), _) => "isomorphic",
        (None, true) => "2-isomorphic only",
        (None, false) => "not cycle-isomorphic",
    };
    Ok((
        json!({
            "cycle_isomorphic": cyc,
            "relation": relation,
            "vertex_map": vmap.map(|v| v.as_slice().iter().map(|x| x + 1).collect::<Vec<_>>()),
            "graphs_isomorphic": is_isomorphic(&g, &h),
        }),
        0,
    ))
}

#[allow(clippy::too_many_arguments)]
fn variety_pair(
    graph: &str,
    edge: &[usize],
    new_edge: &[usize],
    dim: usize,
    trials: usize,
    restarts: usize,
    out_dir: &Path,
    seed: u64,
) -> Outcome {
    let g = load_graph(graph)?;
    let vertex = |x: usize| {
        (1..=g.n()).contains(&x).then(|| x - 1).ok_or_else(|| input_error(format!("vertex {x} out of range")))
    };
    let (a, b) = (vertex(edge[0])?, vertex(edge[1])?);
    let e = g.edge_index(a, b).ok_or_else(|| Failure::from(Error::PreconditionFailed(format!("{} {} is not an edge", a + 1, b + 1))))?;
    let eprime = (vertex(new_edge[0])?, vertex(new_edge[1])?);
    let (first, second) = not_rr_pair(&g, e, eprime, dim, seed)?;
    fs::create_dir_all(out_dir).map_err(|e| input_error(format!("{}: {e}", out_dir.display())))?;
    let paths = [out_dir.join("pair-a.txt"), out_dir.join("pair-b.txt")];
    for (p, h) in paths.iter().zip([&first, &second]) {
        fs::write(p, to_text(h)).map_err(|e| input_error(format!("{}: {e}", p.display())))?;
    }
    let bij = EdgeBijection::by_index(first.clone(), second.clone())?;
    let same = same_measurement_variety_sampled(&first, &second, dim, trials, seed, Some(&bij), restarts.max(1))?;
    Ok((
        json!({
            "graphs": [graph_json(&first), graph_json(&second)],
            "files": paths.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            "same_measurement_variety": same,
            "isomorphic": is_isomorphic(&first, &second),
            "trials": trials,
        }),
        0,
    ))
}

fn generate(graph: &str, dim: usize, coords_out: Option<&Path>, seed: u64) -> Result<(String, u8), Failure> {
    let g = load_graph(graph)?;
    if dim == 0 {
        return Err(Failure::from(Error::DimensionTooSmall { n: g.n(), d: dim, required: 1 }));
    }
    let p = random_unit_configuration(g.n(), dim, seed);
    let v = DistanceMultiset::new(measure(&Framework::new(g.clone(), p.clone())?).to_f64())?;
    if let Some(path) = coords_out {
        let body = serde_json::to_string(&p).expect("configuration JSON");
        fs::write(path, body).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    }
    Ok((to_distance_file(g.n(), dim, &v), 0))
}

fn render(v: &Value, pretty: bool) -> String {
    if pretty {
        serde_json::to_string_pretty(v).expect("JSON")
    } else {
        serde_json::to_string(v).expect("JSON")
    }
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    let seed = cli.seed;
    let json = |o: Outcome| o.map(|(v, code)| (render(&v, cli.pretty), code));
    match cli.command {
        Command::Analyze { graph, dim, catalog } => json(analyze(graph, dim, catalog, seed)),
        Command::Reconstruct { distances, restarts, max_time } => {
            json(run_reconstruct(&distances, restarts, max_time, seed))
        }
        Command::Certify { distances, graph, coords } => json(run_certify(&distances, &graph, &coords, seed)),
        Command::CompareMatroid { first, second, bijection, max_circuits } => {
            json(compare_matroid(&first, &second, bijection.as_deref(), max_circuits))
        }
        Command::VarietyPair { graph, edge, new_edge, dim, trials, restarts, out_dir } => {
            json(variety_pair(&graph, &edge, &new_edge, dim, trials, restarts, &out_dir, seed))
        }
        Command::Generate { graph, dim, coords_out } => generate(&graph, dim, coords_out.as_deref(), seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("rigid: {e}");
        }
    }
    match run(cli) {
        Ok((out, code)) => {
            if out.ends_with('\n') {
                print!("{out}");
            } else {
                println!("{out}");
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("rigid: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
