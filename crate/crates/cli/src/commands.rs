//! The generate / compute / analyze / verify subcommands.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use jnc_core::analysis::{shape_verdict, Thresholds};
use jnc_core::centrality::{xi_all, CentralityMatrix};
use jnc_core::generators::GeneratorSpec;
use jnc_core::graph::{connected_components, graph_from_text, largest_connected_component, Graph};
use jnc_core::spectral::verify_bounds;

use crate::report::{self, NetworkReport};
use crate::{CliError, Source};

pub const CSV_HEADER: &str = "vertex,j,out_edges,layer_size,xi";

/// A graph ready for computation, plus where it came from.
pub struct LoadedGraph {
    pub graph: Graph,
    /// File stem or generator model tag; names output files.
    pub name: String,
    /// Canonical spec string when the graph was generated.
    pub generator_spec: Option<String>,
}

/// Resolve a `--input`/`--gen` source. Disconnected graphs are reduced to
/// their largest component with a warning; every centrality here is defined
/// per component, so the usual convention is to analyze the giant one.
pub fn load_graph(source: &Source) -> Result<LoadedGraph, CliError> {
    let (graph, name, generator_spec) = match (&source.input, &source.gen) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            let (g, ingest) = graph_from_text(&text)?;
            if ingest.self_loops > 0 || ingest.duplicate_edges > 0 {
                eprintln!(
                    "warning: cleaned {} self-loop(s) and {} duplicate edge(s) from {}",
                    ingest.self_loops,
                    ingest.duplicate_edges,
                    path.display()
                );
            }
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "graph".to_string());
            (g, name, None)
        }
        (None, Some(spec_str)) => {
            let spec: GeneratorSpec = spec_str.parse()?;
            let (spec, warning) = spec.normalized();
            if let Some(w) = warning {
                eprintln!("warning: {w}");
            }
            let g = spec.generate()?;
            (g, spec.model_tag().to_string(), Some(spec.to_string()))
        }
        _ => return Err(CliError::Usage("exactly one of --input/--gen is required".into())),
    };

    let info = connected_components(&graph);
    let graph = if info.is_connected {
        graph
    } else {
        let (lcc, _) = largest_connected_component(&graph)?;
        eprintln!(
            "warning: input has {} components; continuing on the largest ({} of {} vertices)",
            info.component_sizes.len(),
            lcc.vertex_count(),
            graph.vertex_count()
        );
        lcc
    };
    Ok(LoadedGraph { graph, name, generator_spec })
}

fn write_or_stdout(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(path, bytes)?;
        }
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

pub fn generate(spec_str: &str, out: Option<&Path>) -> Result<(), CliError> {
    let spec: GeneratorSpec = spec_str.parse()?;
    let (spec, warning) = spec.normalized();
    if let Some(w) = warning {
        eprintln!("warning: {w}");
    }
    let graph = spec.generate()?;
    let mut text = spec.metadata_line();
    text.push('\n');
    text.push_str(&graph.to_canonical_string());
    write_or_stdout(out, text.as_bytes())
}

pub fn compute(source: &Source, j_max: usize, out: Option<&Path>) -> Result<(), CliError> {
    let loaded = load_graph(source)?;
    let matrix = xi_all(&loaded.graph, j_max);
    let mut buf = Vec::new();
    matrix.write_csv(loaded.graph.labels(), &mut buf)?;
    write_or_stdout(out, &buf)
}

/// Per-depth value lists, from a graph or a previously computed CSV.
pub fn values_per_j(source: &Source, j_max: usize) -> Result<(BTreeMap<usize, Vec<f64>>, String, Option<String>), CliError> {
    if let Some(path) = &source.input {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        if text.lines().next().map(str::trim) == Some(CSV_HEADER) {
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "values".to_string());
            return Ok((parse_centrality_csv(&text, j_max)?, name, None));
        }
    }
    let loaded = load_graph(source)?;
    let matrix = xi_all(&loaded.graph, j_max);
    Ok((matrix_values(&matrix, j_max), loaded.name, loaded.generator_spec))
}

pub fn matrix_values(matrix: &CentralityMatrix, j_max: usize) -> BTreeMap<usize, Vec<f64>> {
    (0..=j_max.min(matrix.j_max()))
        .map(|j| (j, matrix.values_for_j(j)))
        .collect()
}

/// Read `xi` values back out of a `compute` CSV. Fields are taken from the
/// right since labels may contain commas.
fn parse_centrality_csv(text: &str, j_max: usize) -> Result<BTreeMap<usize, Vec<f64>>, CliError> {
    let mut per_j: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.rsplitn(5, ',').collect();
        if fields.len() != 5 {
            return Err(CliError::Io(format!("line {}: expected 5 CSV fields", lineno + 1)));
        }
        // rsplitn yields right-to-left: xi, layer_size, out_edges, j, vertex.
        let bad = |what: &str| CliError::Io(format!("line {}: bad {what}", lineno + 1));
        let xi: f64 = fields[0].parse().map_err(|_| bad("xi"))?;
        let j: usize = fields[3].parse().map_err(|_| bad("j"))?;
        if j <= j_max {
            per_j.entry(j).or_default().push(xi);
        }
    }
    if per_j.is_empty() {
        return Err(CliError::Io("centrality CSV contains no data rows".into()));
    }
    Ok(per_j)
}

pub fn analyze(
    source: &Source,
    j_max: usize,
    bins: usize,
    thresholds: &Thresholds,
    out_dir: &Path,
) -> Result<(), CliError> {
    let (per_j, name, generator_spec) = values_per_j(source, j_max)?;
    fs::create_dir_all(out_dir)?;
    let reports = build_reports(&per_j, bins, thresholds)?;
    write_network_outputs(out_dir, &NetworkReport { name, generator_spec, reports })?;
    Ok(())
}

pub fn build_reports(
    per_j: &BTreeMap<usize, Vec<f64>>,
    bins: usize,
    thresholds: &Thresholds,
) -> Result<Vec<jnc_core::analysis::DistributionReport>, CliError> {
    per_j
        .iter()
        .map(|(&j, values)| shape_verdict(j, values, bins, thresholds).map_err(CliError::from))
        .collect()
}

/// Write `<name>.json` and one `<name>_j<j>.csv` plot file per depth.
pub fn write_network_outputs(out_dir: &Path, network: &NetworkReport) -> Result<(), CliError> {
    let json = report::network_json(network);
    fs::write(
        out_dir.join(format!("{}.json", network.name)),
        serde_json::to_string_pretty(&json).expect("report serializes") + "\n",
    )?;
    for dist in &network.reports {
        let mut csv = String::from("bin_mid,count,ln_count\n");
        for (k, &count) in dist.histogram.counts.iter().enumerate() {
            let ln = if count > 0 { format!("{}", (count as f64).ln()) } else { String::new() };
            csv.push_str(&format!("{},{},{}\n", dist.histogram.bin_mid(k), count, ln));
        }
        fs::write(out_dir.join(format!("{}_j{}.csv", network.name, dist.j)), csv)?;
    }
    Ok(())
}

pub fn verify(
    source: &Source,
    j_max: usize,
    tol: f64,
    seed: u64,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let loaded = load_graph(source)?;
    let report = verify_bounds(&loaded.graph, j_max, tol, seed)?;
    if report.cheeger_skipped {
        eprintln!(
            "note: n = {} > 20, Cheeger lower-bound checks skipped (exact h(G) is exponential)",
            loaded.graph.vertex_count()
        );
    }
    let json = serde_json::to_string_pretty(&report.rows).expect("rows serialize") + "\n";
    write_or_stdout(out, json.as_bytes())?;

    let violations = report.violations();
    if violations.is_empty() {
        Ok(())
    } else {
        for row in &violations {
            eprintln!(
                "violation: vertex {} j {}: xi {} vs lambda_max {} / cheeger {:?}",
                row.vertex, row.j, row.xi, row.lambda_max, row.cheeger
            );
        }
        Err(CliError::Violations(violations.len()))
    }
}
