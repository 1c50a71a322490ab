//! `torelli`: reproducible experiments on finite pieces of the Torelli
//! geometry.

mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::info;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use torelli_core::algebra::{p5_2, p6, p7, PropsOptions, PropsReport};
use torelli_core::complex::{build_tg, build_tgs, detect_marked_triangle, ComponentReport, DisjointnessTable, Graph, Vertex};
use torelli_core::curve::Surface;
use torelli_core::encoding::{encoding_experiment, Encoder, EncodingReport, ExperimentOptions};
use torelli_core::inventory::{
    enumerate_curves, CurveInventory, EnumerateOptions, InventoryCurve, InventoryError, InventoryFile, Provenance,
};

use crate::config::{ConfigError, ExperimentConfig};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "torelli", version, about = "Experiments on finite pieces of the Torelli geometry")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Experiment config file (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Recompute every cached invariant of loaded or built data.
    #[arg(long, global = true)]
    verify: bool,
    /// Override the config's random seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Triangulated surface summary.
    Surface {
        #[arg(long)]
        genus: Option<u32>,
    },
    /// Curve inventory.
    Enumerate,
    /// Induced complex as JSON, with a DOT export.
    Complex {
        /// tg, tgs or tgs-genus1.
        #[arg(long)]
        which: Option<String>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Component report for an exported complex.
    Connectivity { complex: PathBuf },
    /// Admissible pair encoding experiment.
    Encoding,
    /// Rank characterizations of simple twists.
    Props,
}

#[derive(Debug)]
enum Failure {
    Config(String),
    Hash(String),
    Invariant(String),
    Other(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Hash(_) => 3,
            Failure::Invariant(_) | Failure::Other(_) => 1,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "config error: {m}"),
            Failure::Hash(m) => write!(f, "hash mismatch: {m}"),
            Failure::Invariant(m) => write!(f, "invariant violated: {m}"),
            Failure::Other(m) => write!(f, "{m}"),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

fn other<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Other(e.to_string())
}

/// Header shared by every output file.
#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    schema: String,
    schema_version: u32,
    tool: String,
    tool_version: String,
    config_hash: String,
    surface_hash: String,
    #[serde(flatten)]
    body: T,
}

struct Ctx {
    config: ExperimentConfig,
    out: Option<PathBuf>,
    verify: bool,
    explicit_config: bool,
}

impl Ctx {
    fn emit<T: Serialize>(&self, schema: &str, surface: &Surface, body: T) -> Result<(), Failure> {
        let env = Envelope {
            schema: schema.into(),
            schema_version: 1,
            tool: "torelli".into(),
            tool_version: VERSION.into(),
            config_hash: self.config.hash(),
            surface_hash: surface.hash().to_string(),
            body,
        };
        let text = serde_json::to_string_pretty(&env).map_err(other)? + "\n";
        write_or_print(self.out.as_deref(), &text)
    }

    fn surface(&self) -> Result<Surface, Failure> {
        Surface::new(self.config.genus).map_err(other)
    }

    fn inventory(&self, s: &Surface) -> Result<CurveInventory, Failure> {
        if let Some(path) = &self.config.inventory {
            info!("loading inventory {}", path.display());
            let env: Envelope<InventoryBody> = read_json(path)?;
            let file = InventoryFile {
                schema_version: env.schema_version,
                surface: env.surface_hash,
                provenance: env.body.provenance,
                curves: env.body.curves,
            };
            return CurveInventory::from_file(s, &file, self.verify).map_err(|e| match e {
                InventoryError::Hash { .. } | InventoryError::Schema(_) => Failure::Hash(e.to_string()),
                InventoryError::Stale(_) => Failure::Invariant(e.to_string()),
                InventoryError::Curve(..) => Failure::Other(e.to_string()),
            });
        }
        let c = &self.config;
        let seeds = c.seed_curves(s).map_err(other)?;
        let gens = c.generator_curves(s).map_err(other)?;
        info!("enumerating: {} seeds, {} generators, depth {}, weight cap {}", seeds.len(), gens.len(), c.depth, c.weight_cap);
        let opts = EnumerateOptions { depth: c.depth, weight_cap: c.weight_cap, seed: c.seed, max_curves: c.max_curves };
        let inv = enumerate_curves(s, &seeds, &gens, &opts).map_err(other)?;
        info!("inventory has {} curves", inv.len());
        if !inv.provenance.exhaustive {
            log::warn!("curve budget hit; inventory is truncated");
        }
        Ok(inv)
    }
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Other(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct SurfaceBody {
    genus: u32,
    vertices: usize,
    edges: usize,
    faces: usize,
    euler_characteristic: i64,
    valid: bool,
    problems: Vec<String>,
    intersection_form: Vec<Vec<i64>>,
    intersection_form_det: i64,
    triangulation: serde_json::Value,
}

fn cmd_surface(ctx: &Ctx) -> Result<(), Failure> {
    let s = ctx.surface()?;
    let t = s.triangulation();
    let report = t.validate();
    let j = s.intersection_form();
    let (v, e, f) = (t.vertex_classes(), t.num_edges, t.num_triangles());
    let body = SurfaceBody {
        genus: s.genus(),
        vertices: v,
        edges: e,
        faces: f,
        euler_characteristic: v as i64 - e as i64 + f as i64,
        valid: report.is_valid(),
        problems: report.problems.clone(),
        intersection_form: (0..j.rows()).map(|r| j.row(r).to_vec()).collect(),
        intersection_form_det: j.det(),
        triangulation: serde_json::from_str(&t.to_json()).map_err(other)?,
    };
    ctx.emit("surface", &s, body)?;
    if !report.is_valid() {
        return Err(Failure::Invariant(report.problems.join("; ")));
    }
    Ok(())
}

/// Inventory file body; version and surface live in the envelope.
#[derive(Serialize, Deserialize)]
struct InventoryBody {
    provenance: Provenance,
    curves: Vec<InventoryCurve>,
}

fn cmd_enumerate(ctx: &Ctx) -> Result<(), Failure> {
    let s = ctx.surface()?;
    let inv = ctx.inventory(&s)?;
    let file = inv.to_file();
    if ctx.verify {
        CurveInventory::from_file(&s, &file, true).map_err(|e| Failure::Invariant(e.to_string()))?;
    }
    ctx.emit("inventory", &s, InventoryBody { provenance: file.provenance, curves: file.curves })
}

#[derive(Serialize, Deserialize)]
struct VertexOut {
    id: usize,
    kind: String,
    curves: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ComplexBody {
    complex: String,
    provenance: Provenance,
    /// Weights of every inventory curve, indexed as in `vertices`.
    curves: Vec<Vec<u32>>,
    vertices: Vec<VertexOut>,
    edges: Vec<[usize; 2]>,
    marked_triangles: Vec<[usize; 3]>,
}

fn edge_list(g: &Graph) -> Vec<[usize; 2]> {
    g.adj.iter().enumerate().flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| [u, v])).collect()
}

fn dot(body: &ComplexBody) -> String {
    let mut out = format!("graph {} {{\n", body.complex.replace('-', "_"));
    for v in &body.vertices {
        let color = if v.kind == "separating" { "blue" } else { "red" };
        out += &format!("  v{} [label=\"{}{:?}\", color={color}];\n", v.id, if v.kind == "separating" { "S" } else { "BP" }, v.curves);
    }
    for [u, v] in &body.edges {
        out += &format!("  v{u} -- v{v};\n");
    }
    for [a, b, c] in &body.marked_triangles {
        out += &format!("  // marked triangle v{a} v{b} v{c}\n");
    }
    out + "}\n"
}

fn cmd_complex(ctx: &Ctx, which: &str, dot_path: Option<PathBuf>) -> Result<(), Failure> {
    let s = ctx.surface()?;
    let inv = ctx.inventory(&s)?;
    let table = DisjointnessTable::compute(&s, &inv).map_err(other)?;
    let (vertices, graph, marked_triangles): (Vec<Vertex>, Graph, Vec<[usize; 3]>) = match which {
        "tg" => {
            let tg = build_tg(&s, &inv, &table).map_err(other)?;
            if ctx.verify {
                verify_tg(&s, &inv, &table, &tg.vertices, &tg.marked_triangles)?;
            }
            (tg.vertices, tg.graph, tg.marked_triangles)
        }
        "tgs" | "tgs-genus1" => {
            let c = build_tgs(&inv, &table, which == "tgs-genus1");
            (c.curves.iter().map(|&i| Vertex::Separating(i)).collect(), c.graph, Vec::new())
        }
        _ => return Err(Failure::Config(format!("unknown complex {which:?}"))),
    };
    info!("{which}: {} vertices, {} edges, {} marked triangles", vertices.len(), graph.edge_count(), marked_triangles.len());
    let body = ComplexBody {
        complex: which.to_string(),
        provenance: inv.provenance.clone(),
        curves: inv.entries.iter().map(|e| e.curve.weights().to_vec()).collect(),
        vertices: vertices
            .iter()
            .enumerate()
            .map(|(id, v)| VertexOut {
                id,
                kind: if v.is_bounding_pair() { "bounding_pair" } else { "separating" }.into(),
                curves: v.curves(),
            })
            .collect(),
        edges: edge_list(&graph),
        marked_triangles,
    };
    let dot_path = dot_path.or_else(|| ctx.config.dot.clone()).or_else(|| ctx.out.as_ref().map(|p| p.with_extension("dot")));
    if let Some(p) = dot_path {
        write_or_print(Some(&p), &dot(&body))?;
    }
    ctx.emit("complex", &s, body)
}

fn verify_tg(s: &Surface, inv: &CurveInventory, table: &DisjointnessTable, vs: &[Vertex], tris: &[[usize; 3]]) -> Result<(), Failure> {
    for v in vs {
        let ok = match *v {
            Vertex::Separating(i) => s.is_separating(&inv.entries[i].curve),
            Vertex::BoundingPair(i, j) => s.is_bounding_pair(&inv.entries[i].curve, &inv.entries[j].curve).map_err(other)?,
        };
        if !ok {
            return Err(Failure::Invariant(format!("vertex {v:?} has the wrong type")));
        }
    }
    for t in tris {
        if !detect_marked_triangle(s, inv, table, [&vs[t[0]], &vs[t[1]], &vs[t[2]]]) {
            return Err(Failure::Invariant(format!("triangle {t:?} is not marked")));
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ConnectivityBody {
    complex: String,
    source_config_hash: String,
    report: ComponentReport,
}

fn cmd_connectivity(ctx: &Ctx, path: &Path) -> Result<(), Failure> {
    let env: Envelope<ComplexBody> = read_json(path)?;
    let s = Surface::new(env.body.provenance.genus).map_err(other)?;
    if s.hash() != env.surface_hash {
        return Err(Failure::Hash(format!("complex file surface {} differs from {}", env.surface_hash, s.hash())));
    }
    if ctx.explicit_config && ctx.config.genus != env.body.provenance.genus {
        return Err(Failure::Hash(format!("complex is on genus {}, config on genus {}", env.body.provenance.genus, ctx.config.genus)));
    }
    let n = env.body.vertices.len();
    let mut adj = vec![Vec::new(); n];
    for &[u, v] in &env.body.edges {
        if u >= n || v >= n || u == v {
            return Err(Failure::Invariant(format!("bad edge {u}-{v}")));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    let report = Graph { adj }.report();
    info!("{} components over {} vertices", report.components, report.vertices);
    let body = ConnectivityBody { complex: env.body.complex, source_config_hash: env.config_hash, report };
    ctx.emit("connectivity", &s, body)
}

#[derive(Serialize)]
struct EncodingBody {
    genus: u32,
    inventory_size: usize,
    inventory_exhaustive: bool,
    vertices: usize,
    marked_triangles: usize,
    sample_seed: u64,
    report: EncodingReport,
}

fn cmd_encoding(ctx: &Ctx) -> Result<(), Failure> {
    let s = ctx.surface()?;
    let inv = ctx.inventory(&s)?;
    let table = DisjointnessTable::compute(&s, &inv).map_err(other)?;
    let tg = build_tg(&s, &inv, &table).map_err(other)?;
    let c = &ctx.config;
    let opts = ExperimentOptions {
        move_samples: c.move_samples,
        pair_samples: c.pair_samples,
        budget: c.bfs_budget,
        escalations: c.budget_escalations,
        seed: c.seed,
    };
    let report = encoding_experiment(&Encoder::new(&tg), &opts).map_err(other)?;
    let sound = report.moves_sound == report.moves_sampled;
    let separated = report.mixed_components == 0 && report.different_decode_connected == 0;
    if report.failures.iter().any(|f| f.cause == "budget") {
        log::warn!("some searches were cut by the BFS budget");
    }
    let body = EncodingBody {
        genus: s.genus(),
        inventory_size: inv.len(),
        inventory_exhaustive: inv.provenance.exhaustive,
        vertices: tg.vertices.len(),
        marked_triangles: tg.marked_triangles.len(),
        sample_seed: c.seed,
        report,
    };
    ctx.emit("encoding", &s, body)?;
    if !sound || !separated {
        return Err(Failure::Invariant("decode not preserved by moves".into()));
    }
    Ok(())
}

fn cmd_props(ctx: &Ctx) -> Result<(), Failure> {
    let s = ctx.surface()?;
    let inv = ctx.inventory(&s)?;
    let table = DisjointnessTable::compute(&s, &inv).map_err(other)?;
    let tg = build_tg(&s, &inv, &table).map_err(other)?;
    let c = &ctx.config;
    let opts = PropsOptions {
        non_marked_samples: c.non_marked_samples,
        cross_validate_triangles: c.cross_validate_triangles,
        probes: c.probes,
        seed: c.seed,
    };
    let report = PropsReport { p5_2: p5_2(&inv, &table), p6: p6(&tg), p7: p7(&s, &inv, &tg, &opts).map_err(other)? };
    let violated = report.p5_2.systems_over_bound > 0
        || report.p6.separating_with_witness > 0
        || report.p6.bp_with_witness < report.p6.bp_twists_in_triangles
        || report.p7.marked_passing < report.p7.marked_checks
        || report.p7.non_marked_violating < report.p7.non_marked_sampled
        || report.p7.cross_validation_passing < report.p7.cross_validated_triangles;
    ctx.emit("props", &s, report)?;
    if violated {
        return Err(Failure::Invariant("a rank characterization failed".into()));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let mut config = match &cli.config {
        Some(p) => ExperimentConfig::from_toml(&std::fs::read_to_string(p).map_err(ConfigError::from)?)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Cmd::Surface { genus: Some(g) } = &cli.cmd {
        config.genus = *g;
    }
    if let Cmd::Complex { which: Some(w), .. } = &cli.cmd {
        config.complex = w.clone();
    }
    config.validate()?;
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global().map_err(other)?;
    }
    let ctx = Ctx { out: cli.out.clone().or_else(|| config.out.clone()), config, verify: cli.verify, explicit_config: cli.config.is_some() };
    match cli.cmd {
        Cmd::Surface { .. } => cmd_surface(&ctx),
        Cmd::Enumerate => cmd_enumerate(&ctx),
        Cmd::Complex { dot, .. } => {
            let which = ctx.config.complex.clone();
            cmd_complex(&ctx, &which, dot)
        }
        Cmd::Connectivity { complex } => cmd_connectivity(&ctx, &complex),
        Cmd::Encoding => cmd_encoding(&ctx),
        Cmd::Props => cmd_props(&ctx),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).target(env_logger::Target::Stderr).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("torelli: {e}");
            ExitCode::from(e.code())
        }
    }
}
