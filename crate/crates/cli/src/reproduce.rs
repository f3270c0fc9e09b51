//! The end-to-end experiment: four seeded artificial networks (plus any
//! user-supplied real edge lists), centralities for j = 0..j_max, per-depth
//! distribution reports, and the real-vs-artificial comparison table.
//!
//! Reference parameters are ER (4000, 0.02), BA (4000, 43), WS (4000, k=21
//! rounded down to 20, p=0.3) and BHL (4000, 20, 100). The scale factor
//! multiplies the vertex count; the ER probability is adjusted to keep the
//! mean degree at 80, and the growth parameters (BA m, WS k, BHL m/n0) are
//! mean-degree invariants already, so they stay fixed.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use jnc_core::analysis::{compare_networks, DistributionReport, Thresholds};
use jnc_core::centrality::xi_all;
use jnc_core::generators::GeneratorSpec;
use jnc_core::graph::Graph;

use crate::commands::{self, LoadedGraph};
use crate::report::{ComparisonJson, NetworkReport};
use crate::{CliError, Source};

const BASE_N: f64 = 4000.0;
const ER_MEAN_DEGREE: f64 = 80.0;
const BA_M: usize = 43;
const WS_K: usize = 21; // rounded down to 20 by spec normalization
const WS_P: f64 = 0.3;
const BHL_M: usize = 20;
const BHL_N0: usize = 100;

pub struct ReproduceConfig {
    pub out: PathBuf,
    pub scale: f64,
    pub seed: u64,
    pub j_max: usize,
    pub bins: usize,
    pub thresholds: Thresholds,
    pub real: Vec<PathBuf>,
}

fn scaled_specs(scale: f64, seed: u64) -> Result<Vec<GeneratorSpec>, CliError> {
    let n = (BASE_N * scale).round() as usize;
    if n < 50 {
        return Err(CliError::Usage(format!(
            "scale {scale} gives n = {n} < 50; the distributions are meaningless that small"
        )));
    }
    let mut p = ER_MEAN_DEGREE / n as f64;
    if p > 1.0 {
        eprintln!("warning: n = {n} cannot reach mean degree {ER_MEAN_DEGREE}; clamping p to 1");
        p = 1.0;
    }
    Ok(vec![
        GeneratorSpec::ErdosRenyi { n, p, seed },
        GeneratorSpec::BarabasiAlbert { n, m: BA_M, seed },
        GeneratorSpec::WattsStrogatz { n, k: WS_K, p: WS_P, seed },
        GeneratorSpec::BoccalettiHwangLatora { n, m: BHL_M, n0: BHL_N0, seed },
    ])
}

pub fn reproduce(config: &ReproduceConfig) -> Result<(), CliError> {
    let graphs_dir = config.out.join("graphs");
    let centrality_dir = config.out.join("centrality");
    let analysis_dir = config.out.join("analysis");
    fs::create_dir_all(&graphs_dir)?;
    fs::create_dir_all(&centrality_dir)?;
    fs::create_dir_all(&analysis_dir)?;

    let mut networks: Vec<(String, Option<String>, Graph, bool)> = Vec::new();
    for spec in scaled_specs(config.scale, config.seed)? {
        let (spec, warning) = spec.normalized();
        if let Some(w) = warning {
            eprintln!("warning: {w}");
        }
        let graph = spec.generate()?;
        let text = format!("{}\n{}", spec.metadata_line(), graph.to_canonical_string());
        fs::write(graphs_dir.join(format!("{}.edges", spec.model_tag())), text)?;
        networks.push((spec.model_tag().to_string(), Some(spec.to_string()), graph, false));
    }

    for path in &config.real {
        let source = Source { input: Some(path.clone()), gen: None };
        let LoadedGraph { graph, name, .. } = commands::load_graph(&source)?;
        if networks.iter().any(|(existing, ..)| *existing == name) {
            return Err(CliError::Usage(format!(
                "duplicate network name '{name}'; rename the input file"
            )));
        }
        fs::write(graphs_dir.join(format!("{name}.edges")), graph.to_canonical_string())?;
        networks.push((name, None, graph, true));
    }

    let mut per_network: BTreeMap<String, Vec<DistributionReport>> = BTreeMap::new();
    for (name, generator_spec, graph, _) in &networks {
        let matrix = xi_all(graph, config.j_max);
        let mut csv = Vec::new();
        matrix.write_csv(graph.labels(), &mut csv)?;
        fs::write(centrality_dir.join(format!("{name}.csv")), csv)?;

        let per_j = commands::matrix_values(&matrix, config.j_max);
        let reports = commands::build_reports(&per_j, config.bins, &config.thresholds)?;
        commands::write_network_outputs(
            &analysis_dir,
            &NetworkReport {
                name: name.clone(),
                generator_spec: generator_spec.clone(),
                reports: reports.clone(),
            },
        )?;
        per_network.insert(name.clone(), reports);
    }

    let table = compare_networks(&per_network);
    let notice = if config.real.is_empty() {
        let msg = "no real networks supplied; the table compares artificial models only";
        eprintln!("note: {msg}");
        Some(msg.to_string())
    } else {
        None
    };

    let mut text = table.to_string();
    if let Some(msg) = &notice {
        text.push_str(&format!("\nnote: {msg}\n"));
    }
    fs::write(config.out.join("comparison.txt"), text)?;
    let json = ComparisonJson { table, notice };
    fs::write(
        config.out.join("comparison.json"),
        serde_json::to_string_pretty(&json).expect("comparison serializes") + "\n",
    )?;
    Ok(())
}
