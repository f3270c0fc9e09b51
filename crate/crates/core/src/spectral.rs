//! Laplacian quadratic form, extreme eigenvalue, Cheeger number, and the two
//! bound checks: `xi <= lambda_max` always, and `xi >= h(G)` whenever the
//! layer covers at most half the vertices.
//!
//! `lambda_max` is matrix-free power iteration; the Laplacian is positive
//! semidefinite, so its largest eigenvalue is the dominant one and no shift is
//! needed. The Cheeger number is exact subset enumeration, refused above
//! n = 20.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::centrality::xi_all;
use crate::graph::{connected_components, Graph};
use crate::{Error, Result};

/// RNG stream id for power-iteration start vectors (generator streams live in
/// [`crate::generators`]).
const STREAM_SPECTRAL: u64 = 0x53;

/// Convergence tolerance used by default callers.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Iteration budget used by default callers.
pub fn default_max_iter(n: usize) -> usize {
    10 * n + 1000
}

/// Result of the power iteration.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectralEstimate {
    /// Largest Laplacian eigenvalue (Rayleigh quotient at termination).
    pub lambda_max: f64,
    /// Iterations performed.
    pub iterations: usize,
    /// `max_k |(Lv - lambda v)_k|` at termination.
    pub residual: f64,
}

impl SpectralEstimate {
    pub fn converged(&self, tol: f64) -> bool {
        self.residual <= tol
    }
}

/// `(Lx, x) = sum over edges (x_u - x_v)^2`.
///
/// Zero exactly when `x` is constant on every component.
pub fn laplacian_quadratic_form(g: &Graph, x: &[f64]) -> Result<f64> {
    if x.len() != g.vertex_count() {
        return Err(Error::LengthMismatch { got: x.len(), expected: g.vertex_count() });
    }
    let mut sum = 0.0;
    for u in 0..g.vertex_count() {
        for &v in g.neighbors(u) {
            if (u as u32) < v {
                let d = x[u] - x[v as usize];
                sum += d * d;
            }
        }
    }
    Ok(sum)
}

/// Largest Laplacian eigenvalue by seeded power iteration.
///
/// Matrix-free: `(Lx)_k = deg(k) x_k - sum of x over neighbors of k`.
/// Terminates when the Rayleigh quotient moves less than `tol`, the residual
/// drops below `tol`, or `max_iter` is exhausted (in which case the returned
/// residual tells the caller how far off it still was).
pub fn lambda_max(g: &Graph, tol: f64, max_iter: usize, seed: u64) -> Result<SpectralEstimate> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if g.edge_count() == 0 {
        return Ok(SpectralEstimate { lambda_max: 0.0, iterations: 0, residual: 0.0 });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(STREAM_SPECTRAL);
    let mut v: Vec<f64> = (0..n).map(|_| rng.random::<f64>() - 0.5).collect();
    normalize(&mut v);

    let mut w = vec![0.0; n];
    let mut lambda_prev = f64::INFINITY;
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    let mut iterations = 0;
    for it in 1..=max_iter {
        iterations = it;
        apply_laplacian(g, &v, &mut w);
        // v is unit, so the Rayleigh quotient is just v . w.
        lambda = dot(&v, &w);
        residual = w
            .iter()
            .zip(&v)
            .map(|(wk, vk)| (wk - lambda * vk).abs())
            .fold(0.0f64, f64::max);
        if residual <= tol || (lambda - lambda_prev).abs() <= tol {
            break;
        }
        lambda_prev = lambda;
        let norm = dot(&w, &w).sqrt();
        if norm == 0.0 {
            // Start vector lay in the kernel; for a graph with edges this is
            // measure-zero, but bail out gracefully.
            lambda = 0.0;
            residual = 0.0;
            break;
        }
        for (vk, wk) in v.iter_mut().zip(&w) {
            *vk = wk / norm;
        }
    }
    Ok(SpectralEstimate { lambda_max: lambda, iterations, residual })
}

fn apply_laplacian(g: &Graph, x: &[f64], out: &mut [f64]) {
    for k in 0..g.vertex_count() {
        let mut acc = g.deg(k) as f64 * x[k];
        for &l in g.neighbors(k) {
            acc -= x[l as usize];
        }
        out[k] = acc;
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) {
    let norm = dot(v, v).sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

/// Exact Cheeger number as an integer ratio `(cut, size)`:
/// the minimum of `|out(S)| / |S|` over nonempty `S` with `|S| <= n/2`,
/// by exhaustive subset enumeration.
///
/// Refused for n > 20. Disconnected graphs return `(0, 1)` (a component with
/// no boundary realizes the infimum); so does n = 1, where no admissible
/// subset exists.
pub fn cheeger_brute_force_exact(g: &Graph) -> Result<(u64, u64)> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if n > 20 {
        return Err(Error::CheegerTooLarge(n));
    }
    if n == 1 {
        return Ok((0, 1));
    }
    if !connected_components(g).is_connected {
        return Ok((0, 1));
    }

    let masks = 1u32 << n;
    #[cfg(feature = "parallel")]
    let best = {
        use rayon::prelude::*;
        (1..masks)
            .into_par_iter()
            .with_min_len(1 << 12)
            .filter_map(|mask| subset_ratio(g, mask))
            .reduce(|| (u64::MAX, 1), min_ratio)
    };
    #[cfg(not(feature = "parallel"))]
    let best = (1..masks)
        .filter_map(|mask| subset_ratio(g, mask))
        .fold((u64::MAX, 1), min_ratio);

    Ok(best)
}

/// `h(G)` as a real number; see [`cheeger_brute_force_exact`].
pub fn cheeger_brute_force(g: &Graph) -> Result<f64> {
    let (cut, size) = cheeger_brute_force_exact(g)?;
    Ok(cut as f64 / size as f64)
}

fn subset_ratio(g: &Graph, mask: u32) -> Option<(u64, u64)> {
    let size = mask.count_ones() as u64;
    if 2 * size > g.vertex_count() as u64 {
        return None;
    }
    let mut cut = 0u64;
    let mut bits = mask;
    while bits != 0 {
        let u = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        for &v in g.neighbors(u) {
            if mask >> v & 1 == 0 {
                cut += 1;
            }
        }
    }
    Some((cut, size))
}

/// Smaller ratio wins; exact cross-multiplied comparison, ties broken
/// lexicographically so parallel reduction stays deterministic.
fn min_ratio(a: (u64, u64), b: (u64, u64)) -> (u64, u64) {
    let lhs = u128::from(a.0) * u128::from(b.1);
    let rhs = u128::from(b.0) * u128::from(a.1);
    if lhs < rhs || (lhs == rhs && a <= b) {
        a
    } else {
        b
    }
}

/// One row of the bound report: both theorem checks for a single (vertex, j).
#[derive(Debug, Clone, Serialize)]
pub struct BoundRow {
    pub vertex: usize,
    pub j: usize,
    pub xi: f64,
    pub lambda_max: f64,
    /// The lower bound's hypothesis: the layer is nonempty and covers at most
    /// half the vertices.
    pub cheeger_applicable: bool,
    pub cheeger: Option<f64>,
    pub upper_ok: bool,
    pub lower_ok: Option<bool>,
}

/// Verification of both bounds over every vertex and depth.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub rows: Vec<BoundRow>,
    pub lambda: SpectralEstimate,
    /// Exact Cheeger ratio when n <= 20, otherwise None.
    pub cheeger_exact: Option<(u64, u64)>,
    /// True when the Cheeger checks were skipped because n > 20.
    pub cheeger_skipped: bool,
}

impl BoundReport {
    /// Rows violating a bound that applied to them.
    pub fn violations(&self) -> Vec<&BoundRow> {
        self.rows
            .iter()
            .filter(|r| !r.upper_ok || r.lower_ok == Some(false))
            .collect()
    }

    pub fn all_ok(&self) -> bool {
        self.violations().is_empty()
    }
}

/// Check `xi <= lambda_max + tol` for every (vertex, j <= j_max), and
/// `xi >= h(G)` exactly (integer cross-multiplication) wherever the layer is
/// nonempty with `|N^j(i)| <= n/2` and `h` is computable (n <= 20).
pub fn verify_bounds(g: &Graph, j_max: usize, tol: f64, seed: u64) -> Result<BoundReport> {
    let n = g.vertex_count();
    let lambda = lambda_max(g, DEFAULT_TOL, default_max_iter(n), seed)?;
    let cheeger_exact = if n <= 20 { Some(cheeger_brute_force_exact(g)?) } else { None };
    let cheeger_value = cheeger_exact.map(|(c, s)| c as f64 / s as f64);

    let matrix = xi_all(g, j_max);
    let mut rows = Vec::with_capacity(n * (j_max + 1));
    for rec in matrix.records() {
        let applicable = rec.layer_size >= 1 && 2 * rec.layer_size <= n as u64;
        let lower_ok = match (applicable, cheeger_exact) {
            (true, Some((hc, hs))) => {
                // out/size >= hc/hs with positive denominators.
                Some(u128::from(rec.out_edges) * u128::from(hs)
                    >= u128::from(hc) * u128::from(rec.layer_size))
            }
            _ => None,
        };
        rows.push(BoundRow {
            vertex: rec.vertex,
            j: rec.j,
            xi: rec.value,
            lambda_max: lambda.lambda_max,
            cheeger_applicable: applicable,
            cheeger: cheeger_value,
            upper_ok: rec.value <= lambda.lambda_max + tol,
            lower_ok,
        });
    }
    Ok(BoundReport { rows, lambda, cheeger_exact, cheeger_skipped: n > 20 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::layers::IndicatorVector;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(u32, u32)]) -> Graph {
        build_graph(n, edges).unwrap()
    }

    fn k4() -> Graph {
        graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    fn path(n: usize) -> Graph {
        graph(n, &(0..n as u32 - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    fn dense_lambda_max(g: &Graph) -> f64 {
        let n = g.vertex_count();
        let mut l = nalgebra::DMatrix::<f64>::zeros(n, n);
        for u in 0..n {
            l[(u, u)] = g.deg(u) as f64;
            for &v in g.neighbors(u) {
                l[(u, v as usize)] = -1.0;
            }
        }
        l.symmetric_eigen().eigenvalues.iter().cloned().fold(0.0, f64::max)
    }

    #[test]
    fn quadratic_form_single_edge() {
        let g = path(2);
        assert_eq!(laplacian_quadratic_form(&g, &[1.0, 0.0]).unwrap(), 1.0);
    }

    #[test]
    fn quadratic_form_kernel() {
        let g = k4();
        assert_eq!(laplacian_quadratic_form(&g, &[1.0; 4]).unwrap(), 0.0);
    }

    #[test]
    fn quadratic_form_k4_half_split() {
        let g = k4();
        assert_eq!(laplacian_quadratic_form(&g, &[1.0, 1.0, 0.0, 0.0]).unwrap(), 4.0);
    }

    #[test]
    fn quadratic_form_rejects_length_mismatch() {
        assert!(laplacian_quadratic_form(&k4(), &[1.0, 2.0]).is_err());
    }

    #[test]
    fn lambda_max_of_p2() {
        let est = lambda_max(&path(2), 1e-10, 1000, 1).unwrap();
        assert!((est.lambda_max - 2.0).abs() < 1e-8, "{est:?}");
    }

    #[test]
    fn lambda_max_of_k4() {
        let est = lambda_max(&k4(), 1e-10, 1000, 1).unwrap();
        assert!((est.lambda_max - 4.0).abs() < 1e-8, "{est:?}");
    }

    #[test]
    fn lambda_max_of_star5() {
        let g = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let est = lambda_max(&g, 1e-10, 2000, 1).unwrap();
        assert!((est.lambda_max - 5.0).abs() < 1e-8, "{est:?}");
        assert!((est.lambda_max - dense_lambda_max(&g)).abs() < 1e-8);
    }

    #[test]
    fn lambda_max_rejects_empty_graph() {
        assert!(lambda_max(&graph(0, &[]), 1e-10, 10, 1).is_err());
    }

    #[test]
    fn lambda_max_of_edgeless_graph_is_zero() {
        let est = lambda_max(&graph(3, &[]), 1e-10, 10, 1).unwrap();
        assert_eq!(est.lambda_max, 0.0);
    }

    #[test]
    fn cheeger_of_k4() {
        assert_eq!(cheeger_brute_force_exact(&k4()).unwrap(), (4, 2));
        assert_eq!(cheeger_brute_force(&k4()).unwrap(), 2.0);
    }

    #[test]
    fn cheeger_of_p4_is_half() {
        assert_eq!(cheeger_brute_force(&path(4)).unwrap(), 0.5);
    }

    #[test]
    fn cheeger_of_p2() {
        assert_eq!(cheeger_brute_force(&path(2)).unwrap(), 1.0);
    }

    #[test]
    fn cheeger_of_disconnected_is_zero() {
        let g = graph(4, &[(0, 1), (2, 3)]);
        assert_eq!(cheeger_brute_force(&g).unwrap(), 0.0);
    }

    #[test]
    fn cheeger_refuses_large_graphs() {
        let g = graph(21, &(0..20u32).map(|i| (i, i + 1)).collect::<Vec<_>>());
        assert!(matches!(cheeger_brute_force(&g), Err(Error::CheegerTooLarge(21))));
    }

    #[test]
    fn verify_bounds_on_k4() {
        let report = verify_bounds(&k4(), 2, 1e-6, 1).unwrap();
        assert!(report.all_ok());
        // |N^1| = 3 > n/2 = 2: the lower bound never applies at j = 1.
        for row in report.rows.iter().filter(|r| r.j == 1) {
            assert!(!row.cheeger_applicable);
            assert_eq!(row.lower_ok, None);
        }
        for row in report.rows.iter().filter(|r| r.j == 0) {
            assert_eq!(row.lower_ok, Some(true));
        }
    }

    #[test]
    fn verify_bounds_on_p4() {
        let report = verify_bounds(&path(4), 3, 1e-6, 1).unwrap();
        assert!(report.all_ok());
        assert_eq!(report.cheeger_exact, Some((1, 2)));
        assert!(report
            .rows
            .iter()
            .any(|r| r.cheeger_applicable && r.lower_ok == Some(true)));
    }

    #[test]
    fn bound_row_json_schema() {
        let report = verify_bounds(&k4(), 1, 1e-6, 1).unwrap();
        let json = serde_json::to_value(&report.rows[0]).unwrap();
        for key in
            ["vertex", "j", "xi", "lambda_max", "cheeger_applicable", "cheeger", "upper_ok", "lower_ok"]
        {
            assert!(json.get(key).is_some(), "missing field {key}");
        }
    }

    proptest! {
        /// The identity behind the combinatorial formula: the quadratic form of
        /// an indicator equals its boundary edge count.
        #[test]
        fn quadratic_form_equals_boundary_count(
            n in 2usize..16,
            raw in prop::collection::vec((0u32..16, 0u32..16), 0..60),
            mask in 0u32..65536,
        ) {
            let edges: Vec<(u32, u32)> = raw.into_iter().map(|(u, v)| (u % n as u32, v % n as u32)).collect();
            let g = build_graph(n, &edges).unwrap();
            let members: Vec<u32> = (0..n as u32).filter(|&k| mask >> k & 1 == 1).collect();
            let ind = IndicatorVector::from_indices(n, &members);
            let qf = laplacian_quadratic_form(&g, &ind.to_f64_vec()).unwrap();
            let cut = crate::centrality::boundary_edge_count(&g, &ind);
            prop_assert_eq!(qf, cut as f64);
        }

        /// Power iteration against a dense eigensolver, plus the classical
        /// envelope lambda_max <= 2 * max_degree.
        #[test]
        fn lambda_max_matches_dense_oracle(
            n in 2usize..24,
            raw in prop::collection::vec((0u32..24, 0u32..24), 1..100),
            seed in 0u64..1000,
        ) {
            let edges: Vec<(u32, u32)> = raw.into_iter().map(|(u, v)| (u % n as u32, v % n as u32)).collect();
            let g = build_graph(n, &edges).unwrap();
            let est = lambda_max(&g, DEFAULT_TOL, default_max_iter(n), seed).unwrap();
            let dense = dense_lambda_max(&g);
            prop_assert!((est.lambda_max - dense).abs() < 1e-6,
                "power {} vs dense {}", est.lambda_max, dense);
            prop_assert!(est.lambda_max <= 2.0 * g.max_degree() as f64 + 1e-9);
        }
    }
}
