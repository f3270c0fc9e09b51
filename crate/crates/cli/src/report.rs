//! Serializable views of the analysis reports.

use jnc_core::analysis::{ComparisonTable, DistributionReport, Verdict};
use serde::Serialize;

/// One network's per-depth reports plus naming metadata.
pub struct NetworkReport {
    pub name: String,
    pub generator_spec: Option<String>,
    pub reports: Vec<DistributionReport>,
}

/// JSON schema: `{name, generator_spec?, notes, per_j: [{j, bin_edges,
/// counts, slope, intercept, r2, skewness, verdict}]}`.
#[derive(Serialize)]
pub struct NetworkJson {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator_spec: Option<String>,
    pub notes: Vec<String>,
    pub per_j: Vec<PerDepthJson>,
}

#[derive(Serialize)]
pub struct PerDepthJson {
    pub j: usize,
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub slope: Option<f64>,
    pub intercept: Option<f64>,
    pub r2: Option<f64>,
    pub skewness: Option<f64>,
    pub verdict: Verdict,
}

pub fn network_json(network: &NetworkReport) -> NetworkJson {
    let mut notes = Vec::new();
    if network.reports.iter().any(|r| r.j == 0) {
        notes.push(
            "j=0 is the degree distribution; it is fitted with the same \
             linear log-frequency machinery even though heavy-tailed degrees \
             are usually judged on a log-log scale"
                .to_string(),
        );
    }
    NetworkJson {
        name: network.name.clone(),
        generator_spec: network.generator_spec.clone(),
        notes,
        per_j: network
            .reports
            .iter()
            .map(|r| PerDepthJson {
                j: r.j,
                bin_edges: r.histogram.bin_edges.clone(),
                counts: r.histogram.counts.clone(),
                slope: r.fit.map(|f| f.slope),
                intercept: r.fit.map(|f| f.intercept),
                r2: r.fit.map(|f| f.r_squared),
                skewness: r.skewness,
                verdict: r.verdict,
            })
            .collect(),
    }
}

/// Comparison bundle: the table rows plus an optional notice (e.g. no real
/// networks were supplied).
#[derive(Serialize)]
pub struct ComparisonJson {
    #[serde(flatten)]
    pub table: ComparisonTable,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notice: Option<String>,
}
