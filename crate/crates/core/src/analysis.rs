//! Distribution shape analysis for per-vertex centrality values.
//!
//! The discriminating signal is visual in origin — right-skewed values whose
//! log-frequency plot is close to a descending line versus centered,
//! normal-like values — operationalized here as three checks on a uniform
//! histogram: the OLS slope of `ln(count)` against bin midpoints must be
//! negative, its R-squared at least `r_squared` (default 0.8), and the sample
//! skewness above `skewness` (default 0.5). All thresholds are configurable.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// Uniform-width histogram over `[min, max]`.
#[derive(Debug, Clone, Serialize)]
pub struct Histogram {
    /// `bins + 1` strictly increasing edges.
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// Always zero by construction (the edges span the data); kept so that
    /// consumers can rely on the fields being present.
    pub underflow: u64,
    pub overflow: u64,
}

impl Histogram {
    pub fn bin_mid(&self, k: usize) -> f64 {
        (self.bin_edges[k] + self.bin_edges[k + 1]) / 2.0
    }

    /// `(midpoint, ln count)` for the nonzero bins.
    pub fn nonzero_log_points(&self) -> Vec<(f64, f64)> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(k, &c)| (self.bin_mid(k), (c as f64).ln()))
            .collect()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Bin finite values into `bins` uniform bins spanning `[min, max]`; the
/// maximum lands in the last bin. An all-equal sample gets a unit-width span
/// so a single bin holds everything.
pub fn histogram(values: &[f64], bins: usize) -> Result<Histogram> {
    assert!(bins >= 1, "bins must be >= 1");
    let finite: Vec<f64> = values.iter().copied().filter(|v| v.is_finite()).collect();
    if finite.is_empty() {
        return Err(Error::EmptyHistogram);
    }
    let min = finite.iter().copied().fold(f64::INFINITY, f64::min);
    let max = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = if max > min { max - min } else { 1.0 };
    let bin_edges: Vec<f64> =
        (0..=bins).map(|k| min + span * k as f64 / bins as f64).collect();
    let mut counts = vec![0u64; bins];
    for v in finite {
        let mut idx = ((v - min) / span * bins as f64) as usize;
        if idx >= bins {
            idx = bins - 1;
        }
        counts[idx] += 1;
    }
    Ok(Histogram { bin_edges, counts, underflow: 0, overflow: 0 })
}

/// Ordinary least squares of `ln(count)` on bin midpoints.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FitReport {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Nonzero bins entering the fit.
    pub points_used: usize,
}

/// Fit a line through the log-frequency plot, zero-count bins excluded
/// (ln 0 is undefined, and exclusion matches eyeballing a log plot).
pub fn log_frequency_fit(h: &Histogram) -> Result<FitReport> {
    let points = h.nonzero_log_points();
    if points.len() < 2 {
        return Err(Error::TooFewBins(points.len()));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 =
        points.iter().map(|p| (p.1 - (intercept + slope * p.0)).powi(2)).sum();
    let ss_tot: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    let r_squared = if ss_tot == 0.0 { 1.0 } else { (1.0 - ss_res / ss_tot).clamp(0.0, 1.0) };
    Ok(FitReport { slope, intercept, r_squared, points_used: points.len() })
}

/// Fisher-Pearson sample skewness `m3 / m2^(3/2)` (the biased form; at the
/// sample sizes here the adjustment is negligible).
pub fn skewness(values: &[f64]) -> Result<f64> {
    if values.len() < 3 {
        return Err(Error::DegenerateSample("need at least 3 values"));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let m2 = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let m3 = values.iter().map(|v| (v - mean).powi(3)).sum::<f64>() / n;
    if m2 == 0.0 {
        return Err(Error::DegenerateSample("zero variance"));
    }
    Ok(m3 / m2.powf(1.5))
}

/// Shape classification of one value distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ExponentialLike,
    Centered,
    Degenerate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ExponentialLike => "exponential-like",
            Verdict::Centered => "centered",
            Verdict::Degenerate => "degenerate",
        })
    }
}

/// Classification thresholds.
#[derive(Debug, Clone, Copy)]
pub struct Thresholds {
    /// Minimum R-squared of the log-frequency fit.
    pub r_squared: f64,
    /// Minimum sample skewness.
    pub skewness: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { r_squared: 0.8, skewness: 0.5 }
    }
}

/// Distribution report for one depth.
#[derive(Debug, Clone)]
pub struct DistributionReport {
    pub j: usize,
    pub histogram: Histogram,
    /// Present whenever at least two bins are nonzero.
    pub fit: Option<FitReport>,
    /// Absent for all-equal samples (zero variance).
    pub skewness: Option<f64>,
    pub verdict: Verdict,
}

/// Histogram, fit, skewness and verdict in one pass.
///
/// Degenerate means fewer than 3 nonzero bins or an (all-but-)constant
/// sample; exponential-like needs a descending fit with R-squared and
/// skewness above the thresholds; everything else is centered. Fails only on
/// an empty sample.
pub fn shape_verdict(
    j: usize,
    values: &[f64],
    bins: usize,
    thresholds: &Thresholds,
) -> Result<DistributionReport> {
    let histogram = histogram(values, bins)?;
    let fit = log_frequency_fit(&histogram).ok();
    let skew = skewness(values).ok();
    let verdict = match (&fit, skew) {
        (Some(f), Some(s)) if f.points_used >= 3 => {
            if f.slope < 0.0 && f.r_squared >= thresholds.r_squared && s > thresholds.skewness {
                Verdict::ExponentialLike
            } else {
                Verdict::Centered
            }
        }
        _ => Verdict::Degenerate,
    };
    Ok(DistributionReport { j, histogram, fit, skewness: skew, verdict })
}

/// One network's row in the comparison table.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonRow {
    pub name: String,
    /// `(j, verdict)` pairs in ascending `j`.
    pub verdicts: Vec<(usize, Verdict)>,
    /// True when every depth `j >= 1` came out exponential-like.
    pub real_like: bool,
    /// Depths that look exponential in a network not flagged real-like.
    pub notes: Vec<String>,
}

/// Comparison across networks: which look real (exponential-like at every
/// depth) and which do not.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
}

/// Tabulate verdicts per network. Depth 0 is shown when present but does not
/// enter the real-like flag.
pub fn compare_networks(
    reports: &BTreeMap<String, Vec<DistributionReport>>,
) -> ComparisonTable {
    let rows = reports
        .iter()
        .map(|(name, per_j)| {
            let verdicts: Vec<(usize, Verdict)> =
                per_j.iter().map(|r| (r.j, r.verdict)).collect();
            let deep: Vec<&DistributionReport> =
                per_j.iter().filter(|r| r.j >= 1).collect();
            let real_like = !deep.is_empty()
                && deep.iter().all(|r| r.verdict == Verdict::ExponentialLike);
            let notes = if real_like {
                Vec::new()
            } else {
                deep.iter()
                    .filter(|r| r.verdict == Verdict::ExponentialLike)
                    .map(|r| format!("exponential-like at j={}", r.j))
                    .collect()
            };
            ComparisonRow { name: name.clone(), verdicts, real_like, notes }
        })
        .collect();
    ComparisonTable { rows }
}

impl fmt::Display for ComparisonTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<16} {:<52} {:<9} notes", "network", "verdicts", "real-like")?;
        for row in &self.rows {
            let verdicts = row
                .verdicts
                .iter()
                .map(|(j, v)| format!("j{j}:{v}"))
                .collect::<Vec<_>>()
                .join(" ");
            writeln!(
                f,
                "{:<16} {:<52} {:<9} {}",
                row.name,
                verdicts,
                if row.real_like { "yes" } else { "no" },
                row.notes.join("; ")
            )?;
        }
        Ok(())
    }
}
