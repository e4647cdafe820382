use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use quasiplanar::bounds::{bound_report, BoundConstants, BoundName};
use quasiplanar::construct::{build_from_crossing_edge, build_from_vertical_line, SequencePair};
use quasiplanar::experiment::{all_crossing_edge, verify_instance, VerifyOptions, CSV_HEADER};
use quasiplanar::generate::{generate, Family, GeneratorSpec, DEFAULT_RETRIES};
use quasiplanar::geometry::{parse_rational, Curve, PointPair};
use quasiplanar::sequences::{
    contains_up, contains_up_down_up, extract_l_regular_greedy, format_sequence, longest_l_regular_subsequence,
    parse_sequences, Sequence, SymbolTable,
};
use quasiplanar::structure::{decompose, CurveSet, DecomposeConfig};
use quasiplanar::{par, TopoGraph};

/// Experiments on k-quasi-planar topological graphs.
#[derive(Parser)]
#[command(name = "quasiplanar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate drawings as TopoGraph JSON.
    Generate(GenerateArgs),
    /// Check drawings for degeneracies.
    Validate {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Pattern and regularity analysis of sequences, or of the sequence pair
    /// built from a drawing.
    Analyze(AnalyzeArgs),
    /// Evaluate the edge and sequence bounds (log2).
    Bounds(BoundsArgs),
    /// Decompose the curves of a drawing (or a raw curve list) and compute a
    /// separator.
    Decompose(DecomposeArgs),
    /// Run every applicable check on drawings and emit CSV / JSON reports.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Convex,
    Segments,
    Xmonotone,
    CrossingEdge,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value = "segments")]
    family: FamilyArg,
    /// Number of vertices.
    #[arg(long, default_value_t = 12)]
    n: usize,
    /// Number of edges (ignored for convex).
    #[arg(long, default_value_t = 24)]
    edges: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Thin the drawing until no k edges pairwise cross.
    #[arg(long)]
    thin: Option<usize>,
    /// Generate this many instances with seeds seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, default_value_t = DEFAULT_RETRIES)]
    retries: usize,
    /// A GeneratorSpec JSON file; overrides the family flags.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Output file, or directory when count > 1. Defaults to stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Sequence text file, or TopoGraph JSON (`.json`).
    input: PathBuf,
    #[arg(long, default_value_t = 2)]
    l: usize,
    /// Also test for up(l, t).
    #[arg(long)]
    t: Option<usize>,
    /// Crossing edge to build from (graph input); defaults to the designated
    /// or first all-crossing edge.
    #[arg(long)]
    edge: Option<u32>,
    /// Build from this vertical line instead, over edges crossing it.
    #[arg(long)]
    line: Option<String>,
    /// Write the sequence pair text here (sidecar JSON next to it).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ConstantArgs {
    /// Exponent constant of the simple-graph bound (integral).
    #[arg(long)]
    thm1_exponent: Option<f64>,
    /// Constant of the x-monotone bound.
    #[arg(long, default_value_t = 1.0)]
    thm2_c: f64,
    /// Constant of the up-down-up sequence bound.
    #[arg(long, default_value_t = 1.0)]
    pettie_c: f64,
}

impl ConstantArgs {
    fn constants(&self) -> BoundConstants {
        BoundConstants {
            thm1_exponent: self.thm1_exponent,
            thm2_c: self.thm2_c,
            pettie_c: self.pettie_c,
        }
    }
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: u128,
    #[arg(long, default_value_t = 3)]
    k: u32,
    /// Sequence bound parameter l.
    #[arg(long, default_value_t = 2)]
    l: u64,
    /// Sequence bound parameter t.
    #[arg(long, default_value_t = 3)]
    t: u64,
    #[command(flatten)]
    constants: ConstantArgs,
    /// Print only JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DecomposeArgs {
    /// TopoGraph JSON, or a JSON list of curves (lists of [x, y] points).
    input: PathBuf,
    /// Intersection multiplicity bound; defaults to the observed maximum.
    #[arg(long)]
    t: Option<usize>,
    /// Separator constant c1.
    #[arg(long, default_value_t = 4.0)]
    c1: f64,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// TopoGraph JSON files or directories of them.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, short, default_value_t = 3)]
    k: usize,
    #[command(flatten)]
    constants: ConstantArgs,
    #[arg(long, default_value_t = 4.0)]
    c1: f64,
    /// Skip decomposition and separator metrics.
    #[arg(long)]
    no_curves: bool,
    /// CSV output path; stdout by default.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Full JSON reports.
    #[arg(long)]
    json: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(a) => cmd_generate(a),
        Command::Validate { inputs } => cmd_validate(&inputs),
        Command::Analyze(a) => cmd_analyze(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(path: &Path) -> Result<TopoGraph> {
    TopoGraph::from_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn instance_id(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn family_for(a: &GenerateArgs, seed: u64) -> Family {
    let base = match a.family {
        FamilyArg::Convex => Family::ConvexComplete { n: a.n, seed },
        FamilyArg::Segments => Family::RandomSegments {
            n: a.n,
            edge_count: a.edges,
            seed,
        },
        FamilyArg::Xmonotone => Family::RandomXmonotone {
            n: a.n,
            edge_count: a.edges,
            seed,
        },
        FamilyArg::CrossingEdge => {
            return Family::CrossingEdge {
                n: a.n,
                edge_count: a.edges,
                seed,
                crosser_k: a.thin,
            }
        }
    };
    match a.thin {
        Some(k) => Family::Thinned {
            base: Box::new(base),
            k,
            seed,
        },
        None => base,
    }
}

fn family_name(f: &Family) -> String {
    match f {
        Family::ConvexComplete { n, .. } => format!("convex-n{n}"),
        Family::RandomSegments { n, edge_count, seed } => format!("segments-n{n}-m{edge_count}-s{seed}"),
        Family::RandomXmonotone { n, edge_count, seed } => format!("xmonotone-n{n}-m{edge_count}-s{seed}"),
        Family::Thinned { base, k, .. } => format!("{}-thin{k}", family_name(base)),
        Family::CrossingEdge { n, edge_count, seed, .. } => format!("crossing-edge-n{n}-m{edge_count}-s{seed}"),
    }
}

fn cmd_generate(a: GenerateArgs) -> Result<bool> {
    let specs: Vec<GeneratorSpec> = match &a.spec {
        Some(path) => {
            let spec: GeneratorSpec = serde_json::from_str(&read(path)?).context("parsing generator spec")?;
            vec![spec]
        }
        None => (0..a.count)
            .map(|i| GeneratorSpec {
                family: family_for(&a, a.seed + i),
                general_position_retries: a.retries,
            })
            .collect(),
    };
    let graphs = par::map(&specs, |s| generate(s).map(|g| (family_name(&s.family), g)));
    if specs.len() == 1 {
        let (_, g) = graphs.into_iter().next().unwrap()?;
        write_or_print(a.out.as_deref(), &(g.to_json() + "\n"))?;
        return Ok(true);
    }
    let dir = a.out.ok_or_else(|| anyhow!("--out DIR is required with --count > 1"))?;
    fs::create_dir_all(&dir)?;
    for result in graphs {
        let (name, g) = result?;
        let path = dir.join(format!("{name}.json"));
        fs::write(&path, g.to_json() + "\n")?;
        println!("{}", path.display());
    }
    Ok(true)
}

fn cmd_validate(inputs: &[PathBuf]) -> Result<bool> {
    let mut clean = true;
    for path in collect_inputs(inputs)? {
        let g = load_graph(&path)?;
        let violations = g.validate();
        if violations.is_empty() {
            println!("{}: OK ({} vertices, {} edges)", path.display(), g.vertex_count(), g.edge_count());
        } else {
            clean = false;
            println!("{}: FAILURE", path.display());
            for v in violations {
                println!("  {v}");
            }
        }
    }
    Ok(clean)
}

fn sequence_summary(s: &Sequence, table: Option<&SymbolTable>, l: usize, t: Option<usize>) -> serde_json::Value {
    // Past the exact search's reach, the greedy scan gives a lower bound.
    let (longest, exact) = match longest_l_regular_subsequence(s, l) {
        Ok(best) => (best, true),
        Err(_) => (extract_l_regular_greedy(s, l), false),
    };
    let udu = contains_up_down_up(s, l);
    let mut value = json!({
        "sequence": format_sequence(s, table),
        "length": s.len(),
        "distinct": s.distinct_count(),
        "l": l,
        "l_regular": s.is_l_regular(l),
        "longest_l_regular": {
            "length": longest.len(),
            "exact": exact,
            "subsequence": format_sequence(&longest, table),
        },
        "up_down_up": udu.map(|w| format_sequence(&Sequence::from_symbols(w.letters(s)), table)),
    });
    if let Some(t) = t {
        value["t"] = json!(t);
        value["up"] = json!(contains_up(s, l, t).map(|w| format_sequence(&Sequence::from_symbols(w.letters(s)), table)));
    }
    value
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<bool> {
    let text = read(&a.input)?;
    let is_graph = a.input.extension().is_some_and(|e| e == "json");
    let (seqs, table, pair) = if is_graph {
        let g = TopoGraph::from_json(&text)?;
        let pair = build_pair(&g, &a)?;
        let (seqs, table) = parse_sequences(&pair.to_text());
        (seqs, table, Some(pair))
    } else {
        let (seqs, table) = parse_sequences(&text);
        (seqs, table, None)
    };
    if let (Some(pair), Some(out)) = (&pair, &a.out) {
        fs::write(out, pair.to_text())?;
        fs::write(out.with_extension("json"), pair.sidecar_json())?;
    }
    let summaries: Vec<_> = seqs.iter().map(|s| sequence_summary(s, Some(&table), a.l, a.t)).collect();
    let report = match pair {
        Some(p) => json!({ "provenance": p.provenance, "order": p.order, "sequences": summaries }),
        None => json!({ "sequences": summaries }),
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(true)
}

fn build_pair(g: &TopoGraph, a: &AnalyzeArgs) -> Result<SequencePair> {
    if let Some(line) = &a.line {
        let x = parse_rational(line).ok_or_else(|| anyhow!("bad rational {line:?}"))?;
        let edges: Vec<u32> = g.edges().iter().map(|e| e.id).collect();
        let crossing: Vec<u32> = edges
            .into_iter()
            .filter(|&id| {
                let c = &g.edge(id).expect("listed edge").curve;
                let (a, b) = (&c.start().x, &c.end().x);
                a.min(b) < &x && &x < a.max(b)
            })
            .collect();
        return Ok(build_from_vertical_line(g, &x, &crossing)?);
    }
    let e = match a.edge {
        Some(e) => e,
        None => all_crossing_edge(g)?.ok_or_else(|| anyhow!("no all-crossing edge; pass --edge or --line"))?,
    };
    Ok(build_from_crossing_edge(g, e)?)
}

fn cmd_bounds(a: BoundsArgs) -> Result<bool> {
    let constants = a.constants.constants();
    let mut reports = Vec::new();
    let mut skipped = Vec::new();
    for name in [
        BoundName::Planar,
        BoundName::Thm1,
        BoundName::Thm2,
        BoundName::Klazar,
        BoundName::Pettie,
    ] {
        match bound_report(name, a.n, a.k, a.l, a.t, &constants) {
            Ok(r) => reports.push(r),
            Err(e) => skipped.push(json!({ "name": name, "reason": e.to_string() })),
        }
    }
    let out = json!({
        "n": a.n.to_string(),
        "k": a.k,
        "l": a.l,
        "t": a.t,
        "constants": constants,
        "reports": reports,
        "skipped": skipped,
    });
    if a.json {
        println!("{}", serde_json::to_string_pretty(&out)?);
        return Ok(true);
    }
    println!("# values are log2 of the bound; log n is read as log2 n");
    println!("{:<8} {:>20} {:>16}  expression", "bound", "log2 (approx)", "log2 log2");
    for r in &reports {
        let approx = r.log2_value.approx().map_or_else(|| "huge".to_owned(), |v| format!("{v:.6}"));
        println!(
            "{:<8} {:>20} {:>16.6}  {}",
            r.name.to_string(),
            approx,
            r.log2_value.magnitude(),
            r.log2_value
        );
    }
    for s in &skipped {
        println!("{:<8} skipped: {}", s["name"].as_str().unwrap_or("?"), s["reason"].as_str().unwrap_or(""));
    }
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(true)
}

fn load_curves(path: &Path) -> Result<Vec<Curve>> {
    let text = read(path)?;
    if let Ok(g) = TopoGraph::from_json(&text) {
        return Ok(g.edges().iter().map(|e| e.curve.clone()).collect());
    }
    let raw: Vec<Vec<PointPair>> =
        serde_json::from_str(&text).with_context(|| format!("{} is neither a drawing nor a curve list", path.display()))?;
    raw.into_iter()
        .enumerate()
        .map(|(i, pts)| Curve::new(pts.into_iter().map(Into::into).collect()).with_context(|| format!("curve {i}")))
        .collect()
}

fn cmd_decompose(a: DecomposeArgs) -> Result<bool> {
    let set = CurveSet::new(load_curves(&a.input)?)?;
    let t = a.t.unwrap_or_else(|| set.max_pair_intersections().max(1));
    let (dec, stats) = decompose(&set, t, &DecomposeConfig::with_c1(a.c1))?;
    let all: Vec<usize> = (0..set.len()).collect();
    let sep = set.separator(&all);
    let dec_check = dec.validate(&set);
    let sep_check = sep.validate(&set, &all);
    let ok = dec_check.is_ok() && sep_check.is_ok();
    let out = json!({
        "stats": stats,
        "decomposition": dec,
        "decomposition_valid": dec_check.err().unwrap_or_else(|| "ok".into()),
        "separator": sep,
        "separator_ratio": sep.ratio(),
        "separator_valid": sep_check.err().unwrap_or_else(|| "ok".into()),
        "status": if ok { "OK" } else { "FAILURE" },
    });
    write_or_print(a.out.as_deref(), &(serde_json::to_string_pretty(&out)? + "\n"))?;
    Ok(ok)
}

fn collect_inputs(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for p in inputs {
        if p.is_dir() {
            for entry in fs::read_dir(p)? {
                let path = entry?.path();
                if path.extension().is_some_and(|e| e == "json") {
                    files.push(path);
                }
            }
        } else {
            files.push(p.clone());
        }
    }
    if files.is_empty() {
        bail!("no input drawings");
    }
    files.sort_by_key(|p| instance_id(p));
    Ok(files)
}

fn cmd_verify(a: VerifyArgs) -> Result<bool> {
    let files = collect_inputs(&a.inputs)?;
    let options = VerifyOptions {
        constants: a.constants.constants(),
        decompose: DecomposeConfig::with_c1(a.c1),
        curve_metrics: !a.no_curves,
    };
    let reports = par::map(&files, |path| -> Result<_> {
        let g = load_graph(path)?;
        verify_instance(&instance_id(path), &g, a.k, &options).with_context(|| format!("verifying {}", path.display()))
    });
    let reports = reports.into_iter().collect::<Result<Vec<_>>>()?;
    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for r in &reports {
        csv.push_str(&r.csv_row());
        csv.push('\n');
    }
    write_or_print(a.csv.as_deref(), &csv)?;
    if let Some(path) = &a.json {
        fs::write(path, serde_json::to_string_pretty(&reports)? + "\n")?;
    }
    let failed: Vec<_> = reports.iter().filter(|r| r.failed()).collect();
    for r in &failed {
        for f in &r.failures {
            eprintln!("FAILURE {}: {f}", r.id);
        }
    }
    eprintln!("{} instance(s), {} with failures", reports.len(), failed.len());
    Ok(failed.is_empty())
}
