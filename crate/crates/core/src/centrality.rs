//! Neighborhood centralities.
//!
//! `xi(g, i, j)` is the number of edges leaving the distance-`j` layer of `i`
//! divided by the layer size, kept as an exact integer pair plus the real
//! quotient. The fast path counts boundary edges straight off BFS distance
//! labels, so no indicator vector is materialized; [`xi_quadratic_oracle`]
//! recomputes the same value through the Laplacian quadratic form and serves
//! as the independent cross-check.

use std::io::{self, Write};

use crate::graph::Graph;
use crate::layers::{bfs_layers, IndicatorVector};
use crate::spectral::laplacian_quadratic_form;
use crate::Result;

/// One centrality value with its exact integer numerator and denominator.
///
/// `value * layer_size == out_edges` exactly whenever the layer is nonempty;
/// empty layers (isolated vertices included) get value 0.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityRecord {
    pub vertex: usize,
    pub j: usize,
    /// Number of edges with exactly one endpoint in the layer.
    pub out_edges: u64,
    /// Layer size `|N^j(i)|`.
    pub layer_size: u64,
    /// `out_edges / layer_size`, or 0 when the layer is empty.
    pub value: f64,
}

impl CentralityRecord {
    fn new(vertex: usize, j: usize, out_edges: u64, layer_size: u64) -> Self {
        let value = if layer_size == 0 { 0.0 } else { out_edges as f64 / layer_size as f64 };
        CentralityRecord { vertex, j, out_edges, layer_size, value }
    }
}

/// Per-vertex, per-depth table of [`CentralityRecord`], vertex-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralityMatrix {
    n: usize,
    j_max: usize,
    records: Vec<CentralityRecord>,
}

impl CentralityMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn j_max(&self) -> usize {
        self.j_max
    }

    /// Record for vertex `i` at depth `j`; panics if out of range.
    pub fn get(&self, i: usize, j: usize) -> &CentralityRecord {
        &self.records[i * (self.j_max + 1) + j]
    }

    pub fn records(&self) -> &[CentralityRecord] {
        &self.records
    }

    /// All `xi^j` values in vertex order for one depth.
    pub fn values_for_j(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, j).value).collect()
    }

    /// CSV export: header `vertex,j,out_edges,layer_size,xi`, one row per
    /// (vertex, depth), vertices in index order then `j` ascending. Labels are
    /// substituted for indices when provided.
    pub fn write_csv<W: Write>(&self, labels: Option<&[String]>, w: &mut W) -> io::Result<()> {
        writeln!(w, "vertex,j,out_edges,layer_size,xi")?;
        for rec in &self.records {
            let name = match labels {
                Some(l) => l[rec.vertex].clone(),
                None => rec.vertex.to_string(),
            };
            writeln!(w, "{},{},{},{},{}", name, rec.j, rec.out_edges, rec.layer_size, rec.value)?;
        }
        Ok(())
    }
}

/// Number of edges with exactly one endpoint in `subset`.
///
/// Panics if the subset length differs from the vertex count.
pub fn boundary_edge_count(g: &Graph, subset: &IndicatorVector) -> u64 {
    assert_eq!(subset.len(), g.vertex_count(), "subset length must equal vertex count");
    let mut count = 0u64;
    for u in subset.iter_ones() {
        for &v in g.neighbors(u) {
            if !subset.contains(v as usize) {
                count += 1;
            }
        }
    }
    count
}

/// Reusable per-worker BFS scratch.
struct Scratch {
    dist: Vec<u32>,
    queue: Vec<u32>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch { dist: vec![u32::MAX; n], queue: Vec::with_capacity(n) }
    }
}

/// One truncated BFS from `root`, producing records for every `j <= j_max`.
///
/// Boundary edges are counted from the distance labels: an edge contributes to
/// layer `d` exactly when one endpoint is at distance `d` and the other is
/// not (deeper-than-`j_max` vertices stay unlabeled, which is enough, since
/// membership rather than the next layer decides the count).
fn xi_row(g: &Graph, root: usize, j_max: usize, s: &mut Scratch) -> Vec<CentralityRecord> {
    let dist = &mut s.dist;
    let queue = &mut s.queue;
    for d in dist.iter_mut() {
        *d = u32::MAX;
    }
    queue.clear();

    dist[root] = 0;
    queue.push(root as u32);
    let mut head = 0;
    let mut sizes = vec![0u64; j_max + 1];
    sizes[0] = 1;
    while head < queue.len() {
        let u = queue[head] as usize;
        head += 1;
        let du = dist[u];
        if du as usize >= j_max {
            continue;
        }
        for &v in g.neighbors(u) {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = du + 1;
                sizes[du as usize + 1] += 1;
                queue.push(v);
            }
        }
    }

    let mut outs = vec![0u64; j_max + 1];
    for &u in queue.iter() {
        let du = dist[u as usize];
        for &v in g.neighbors(u as usize) {
            if dist[v as usize] != du {
                outs[du as usize] += 1;
            }
        }
    }

    (0..=j_max).map(|j| CentralityRecord::new(root, j, outs[j], sizes[j])).collect()
}

/// `xi^j` for a single vertex.
pub fn xi(g: &Graph, i: usize, j: usize) -> Result<CentralityRecord> {
    g.check_vertex(i)?;
    let mut s = Scratch::new(g.vertex_count());
    Ok(xi_row(g, i, j, &mut s).pop().expect("row spans 0..=j"))
}

/// `xi^j` for every vertex and every `j <= j_max`.
///
/// With the `parallel` feature the vertices are distributed across the rayon
/// pool; rows are assembled in vertex order either way, so the result is
/// identical to [`xi_all_sequential`].
pub fn xi_all(g: &Graph, j_max: usize) -> CentralityMatrix {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let n = g.vertex_count();
        let rows: Vec<Vec<CentralityRecord>> = (0..n)
            .into_par_iter()
            .map_init(|| Scratch::new(n), |s, i| xi_row(g, i, j_max, s))
            .collect();
        CentralityMatrix { n, j_max, records: rows.into_iter().flatten().collect() }
    }
    #[cfg(not(feature = "parallel"))]
    {
        xi_all_sequential(g, j_max)
    }
}

/// Single-threaded [`xi_all`].
pub fn xi_all_sequential(g: &Graph, j_max: usize) -> CentralityMatrix {
    let n = g.vertex_count();
    let mut s = Scratch::new(n);
    let mut records = Vec::with_capacity(n * (j_max + 1));
    for i in 0..n {
        records.extend(xi_row(g, i, j_max, &mut s));
    }
    CentralityMatrix { n, j_max, records }
}

/// `xi^j` straight from the definition: the Laplacian quadratic form at the
/// layer indicator, divided by the indicator's popcount.
///
/// Quadratic in nothing but still O(n + m) per call; it exists as the
/// independent route against the label-counting fast path and is meant for
/// tests and small graphs.
pub fn xi_quadratic_oracle(g: &Graph, i: usize, j: usize) -> Result<f64> {
    let layers = bfs_layers(g, i, Some(j))?;
    let chi = layers.indicator(j);
    if chi.is_zero() {
        return Ok(0.0);
    }
    let q = laplacian_quadratic_form(g, &chi.to_f64_vec())?;
    Ok(q / chi.count_ones() as f64)
}

/// Ksi-centrality: `|E(N^1(i), V \ N^1(i))| / deg(i)`, coded directly from
/// adjacency scans as an independent check of the `j = 1` case. Isolated
/// vertices get 0.
pub fn ksi_centrality(g: &Graph, i: usize) -> Result<f64> {
    g.check_vertex(i)?;
    let deg = g.deg(i);
    if deg == 0 {
        return Ok(0.0);
    }
    let mut in_layer = vec![false; g.vertex_count()];
    for &v in g.neighbors(i) {
        in_layer[v as usize] = true;
    }
    let mut crossing = 0u64;
    for &u in g.neighbors(i) {
        for &v in g.neighbors(u as usize) {
            if !in_layer[v as usize] {
                crossing += 1;
            }
        }
    }
    Ok(crossing as f64 / deg as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn graph(n: usize, edges: &[(u32, u32)]) -> Graph {
        build_graph(n, edges).unwrap()
    }

    fn k4() -> Graph {
        graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    fn star(leaves: usize) -> Graph {
        graph(leaves + 1, &(1..=leaves as u32).map(|l| (0, l)).collect::<Vec<_>>())
    }

    #[test]
    fn boundary_count_on_k4() {
        let g = k4();
        let one = IndicatorVector::from_indices(4, &[0]);
        assert_eq!(boundary_edge_count(&g, &one), 3);
        // Two vertices: of the 6 edges one is internal, one is outside-only,
        // the remaining 4 cross.
        let two = IndicatorVector::from_indices(4, &[0, 1]);
        assert_eq!(boundary_edge_count(&g, &two), 4);
        let all = IndicatorVector::from_indices(4, &[0, 1, 2, 3]);
        assert_eq!(boundary_edge_count(&g, &all), 0);
    }

    #[test]
    fn xi_zero_is_degree() {
        let g = k4();
        for i in 0..4 {
            let rec = xi(&g, i, 0).unwrap();
            assert_eq!(rec.layer_size, 1);
            assert_eq!(rec.out_edges, 3);
            assert_eq!(rec.value, 3.0);
        }
    }

    #[test]
    fn xi_on_star_with_four_leaves() {
        let g = star(4);
        let center = xi(&g, 0, 1).unwrap();
        assert_eq!((center.out_edges, center.layer_size), (4, 4));
        assert_eq!(center.value, 1.0);
        let leaf = xi(&g, 1, 1).unwrap();
        assert_eq!((leaf.out_edges, leaf.layer_size), (4, 1));
        assert_eq!(leaf.value, 4.0);
    }

    #[test]
    fn xi_on_p3() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(xi(&g, 1, 1).unwrap().value, 1.0); // 2 crossing / 2 vertices
        assert_eq!(xi(&g, 0, 1).unwrap().value, 2.0); // 2 crossing / 1 vertex
        assert_eq!(xi(&g, 0, 2).unwrap().value, 1.0);
        let empty = xi(&g, 1, 2).unwrap();
        assert_eq!(empty.layer_size, 0);
        assert_eq!(empty.value, 0.0);
    }

    #[test]
    fn xi_rejects_bad_vertex() {
        assert!(xi(&k4(), 7, 0).is_err());
    }

    #[test]
    fn xi_all_on_k4() {
        let m = xi_all(&k4(), 2);
        for i in 0..4 {
            assert_eq!(m.get(i, 0).value, 3.0);
            assert_eq!(m.get(i, 1).value, 1.0);
            assert_eq!(m.get(i, 2).value, 0.0);
        }
    }

    #[test]
    fn xi_all_on_edgeless_graph_is_zero() {
        let m = xi_all(&graph(5, &[]), 3);
        for rec in m.records() {
            assert_eq!(rec.value, 0.0);
        }
    }

    #[test]
    fn xi_all_matches_sequential() {
        let g = star(9);
        assert_eq!(xi_all(&g, 3), xi_all_sequential(&g, 3));
    }

    #[test]
    fn oracle_matches_fast_path_on_fixtures() {
        for g in [k4(), star(5), graph(3, &[(0, 1), (1, 2)])] {
            for i in 0..g.vertex_count() {
                for j in 0..=4 {
                    let rec = xi(&g, i, j).unwrap();
                    let oracle = xi_quadratic_oracle(&g, i, j).unwrap();
                    assert_eq!(rec.value, oracle, "vertex {i} depth {j}");
                }
            }
        }
    }

    #[test]
    fn oracle_j0_is_degree() {
        let g = star(3);
        assert_eq!(xi_quadratic_oracle(&g, 0, 0).unwrap(), 3.0);
        assert_eq!(xi_quadratic_oracle(&g, 1, 0).unwrap(), 1.0);
    }

    #[test]
    fn oracle_p3_end_j1() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(xi_quadratic_oracle(&g, 0, 1).unwrap(), 2.0);
    }

    #[test]
    fn ksi_matches_examples() {
        let tri = graph(3, &[(0, 1), (1, 2), (0, 2)]);
        for i in 0..3 {
            assert_eq!(ksi_centrality(&tri, i).unwrap(), 1.0);
        }
        let g = star(6);
        assert_eq!(ksi_centrality(&g, 0).unwrap(), 1.0);
        let iso = graph(2, &[]);
        assert_eq!(ksi_centrality(&iso, 0).unwrap(), 0.0);
    }

    #[test]
    fn ksi_equals_xi_one(){
        let g = graph(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (2, 5), (5, 6), (1, 3)]);
        for i in 0..7 {
            assert_eq!(ksi_centrality(&g, i).unwrap(), xi(&g, i, 1).unwrap().value);
        }
    }

    #[test]
    fn disconnected_layers_stop_at_component() {
        // Component of 0 is a P2; the other P2 is outside every layer.
        let g = graph(4, &[(0, 1), (2, 3)]);
        let rec = xi(&g, 0, 1).unwrap();
        assert_eq!((rec.out_edges, rec.layer_size), (1, 1));
        let rec2 = xi(&g, 0, 2).unwrap();
        assert_eq!(rec2.layer_size, 0);
        assert_eq!(rec2.value, 0.0);
    }

    #[test]
    fn csv_format_is_stable() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let m = xi_all(&g, 1);
        let mut buf = Vec::new();
        m.write_csv(None, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let expected = "vertex,j,out_edges,layer_size,xi\n\
                        0,0,1,1,1\n0,1,2,1,2\n\
                        1,0,2,1,2\n1,1,2,2,1\n\
                        2,0,1,1,1\n2,1,2,1,2\n";
        assert_eq!(text, expected);

        let labels = vec!["a".to_string(), "b".to_string(), "c".to_string()];
        let mut buf = Vec::new();
        m.write_csv(Some(&labels), &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().contains("b,1,2,2,1"));
    }
}
