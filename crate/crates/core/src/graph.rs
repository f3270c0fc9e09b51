//! Immutable simple undirected graphs in compressed adjacency form.
//!
//! Graphs are built once from an edge list (self-loops dropped, parallel edges
//! merged) and never mutated, so they are safe to share across threads.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::{Error, Result};

/// Simple undirected graph.
///
/// Adjacency is compressed sparse row: the neighbors of `v` are
/// `targets[offsets[v]..offsets[v + 1]]`, strictly ascending. Each undirected
/// edge appears in both endpoint lists; `m` counts it once.
#[derive(Debug, Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<u32>,
    m: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.m
    }

    /// Neighbors of `v`, strictly ascending.
    ///
    /// Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Degree of `v`; panics if `v` is out of range.
    pub fn deg(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Checked degree. Equals `xi(g, i, 0)` on any graph.
    pub fn degree(&self, i: usize) -> Result<usize> {
        self.check_vertex(i)?;
        Ok(self.deg(i))
    }

    /// Largest degree, 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.deg(v)).max().unwrap_or(0)
    }

    /// Undirected edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| (u as u32) < v)
                .map(move |v| (u as u32, v))
        })
    }

    /// Original vertex labels, if the graph was parsed from a labeled edge list.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of `v` when present, otherwise its index rendered as a string.
    pub fn vertex_name(&self, v: usize) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub(crate) fn check_vertex(&self, i: usize) -> Result<()> {
        if i >= self.vertex_count() {
            return Err(Error::VertexOutOfRange { index: i, n: self.vertex_count() });
        }
        Ok(())
    }

    /// Canonical serialization: a `# n=<n> m=<m>` header, then one `u v` line
    /// per edge with `u < v`, sorted by `(u, v)`.
    pub fn to_canonical_string(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# n={} m={}", self.vertex_count(), self.m);
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", u, v);
        }
        out
    }

    fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.vertex_count());
        self.labels = Some(labels);
        self
    }
}

/// Raw result of tokenizing an edge-list text.
///
/// Self-loops and duplicate edges are preserved here (and counted) so that
/// [`build_graph`] can clean them.
#[derive(Debug, Clone)]
pub struct ParsedEdgeList {
    /// Distinct vertex labels in first-appearance order.
    pub labels: Vec<String>,
    /// Edges as dense index pairs, in input order, uncleaned.
    pub edges: Vec<(u32, u32)>,
    /// Number of self-loop lines seen.
    pub self_loops: usize,
    /// Number of lines repeating an already-seen unordered pair.
    pub duplicate_edges: usize,
}

/// Parse whitespace-separated `u v` lines into labels and index pairs.
///
/// Lines starting with `#` or `%` and blank lines are ignored. Labels are
/// arbitrary non-whitespace tokens, mapped to dense indices `0..n-1` in
/// first-appearance order. Extra tokens after the first two are ignored.
pub fn parse_edge_list(text: &str) -> Result<ParsedEdgeList> {
    let mut index: HashMap<String, u32> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut seen: HashMap<(u32, u32), ()> = HashMap::new();
    let mut self_loops = 0;
    let mut duplicate_edges = 0;

    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let a = tokens.next();
        let b = tokens.next();
        let (a, b) = match (a, b) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: lineno + 1,
                    msg: format!("expected at least 2 tokens, got '{line}'"),
                })
            }
        };
        let mut intern = |tok: &str| -> u32 {
            if let Some(&i) = index.get(tok) {
                return i;
            }
            let i = labels.len() as u32;
            labels.push(tok.to_string());
            index.insert(tok.to_string(), i);
            i
        };
        let u = intern(a);
        let v = intern(b);
        if u == v {
            self_loops += 1;
        } else {
            let key = (u.min(v), u.max(v));
            if seen.insert(key, ()).is_some() {
                duplicate_edges += 1;
            }
        }
        edges.push((u, v));
    }

    if edges.is_empty() {
        return Err(Error::EmptyInput);
    }
    Ok(ParsedEdgeList { labels, edges, self_loops, duplicate_edges })
}

/// Build a simple graph on `n` vertices from (possibly dirty) index pairs.
///
/// Self-loops are dropped and parallel edges merged; the result has symmetric,
/// strictly sorted adjacency and `m` equal to the number of distinct unordered
/// pairs. Fails if any index is `>= n`.
pub fn build_graph(n: usize, edges: &[(u32, u32)]) -> Result<Graph> {
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(edges.len());
    for &(u, v) in edges {
        if u as usize >= n {
            return Err(Error::VertexOutOfRange { index: u as usize, n });
        }
        if v as usize >= n {
            return Err(Error::VertexOutOfRange { index: v as usize, n });
        }
        if u != v {
            pairs.push((u.min(v), u.max(v)));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    let m = pairs.len();

    let mut degree = vec![0usize; n];
    for &(u, v) in &pairs {
        degree[u as usize] += 1;
        degree[v as usize] += 1;
    }
    let mut offsets = Vec::with_capacity(n + 1);
    let mut acc = 0usize;
    offsets.push(0);
    for d in &degree {
        acc += d;
        offsets.push(acc);
    }
    let mut cursor = offsets.clone();
    let mut targets = vec![0u32; 2 * m];
    for &(u, v) in &pairs {
        targets[cursor[u as usize]] = v;
        cursor[u as usize] += 1;
        targets[cursor[v as usize]] = u;
        cursor[v as usize] += 1;
    }
    for v in 0..n {
        targets[offsets[v]..offsets[v + 1]].sort_unstable();
    }

    Ok(Graph { offsets, targets, m, labels: None })
}

/// What ingestion had to clean up or infer.
#[derive(Debug, Clone, Copy, Default)]
pub struct IngestReport {
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

/// Read a graph from edge-list text.
///
/// If a canonical `# n=<n> m=<m>` header is present, tokens are taken as dense
/// indices in `0..n` (this preserves isolated vertices and exact labeling, so
/// canonical output round-trips identically). Otherwise tokens are treated as
/// labels in first-appearance order and attached to the graph.
pub fn graph_from_text(text: &str) -> Result<(Graph, IngestReport)> {
    if let Some(n) = canonical_header(text) {
        let mut edges = Vec::new();
        let mut self_loops = 0;
        let mut duplicate_edges = 0;
        let mut seen: HashMap<(u32, u32), ()> = HashMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let parse_idx = |tok: Option<&str>| -> Result<u32> {
                let tok = tok.ok_or(Error::Parse {
                    line: lineno + 1,
                    msg: "expected at least 2 tokens".into(),
                })?;
                tok.parse::<u32>().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    msg: format!("expected a vertex index, got '{tok}'"),
                })
            };
            let u = parse_idx(tokens.next())?;
            let v = parse_idx(tokens.next())?;
            if u as usize >= n || v as usize >= n {
                return Err(Error::VertexOutOfRange { index: u.max(v) as usize, n });
            }
            if u == v {
                self_loops += 1;
            } else if seen.insert((u.min(v), u.max(v)), ()).is_some() {
                duplicate_edges += 1;
            }
            edges.push((u, v));
        }
        let g = build_graph(n, &edges)?;
        return Ok((g, IngestReport { self_loops, duplicate_edges }));
    }

    let parsed = parse_edge_list(text)?;
    let g = build_graph(parsed.labels.len(), &parsed.edges)?.with_labels(parsed.labels);
    let report =
        IngestReport { self_loops: parsed.self_loops, duplicate_edges: parsed.duplicate_edges };
    Ok((g, report))
}

fn canonical_header(text: &str) -> Option<usize> {
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if !(line.starts_with('#') || line.starts_with('%')) {
            return None;
        }
        // The canonical header is exactly "# n=<n> m=<m>"; other comment
        // lines (e.g. generator metadata) carry different leading tokens.
        let body = line[1..].trim();
        let mut tokens = body.split_whitespace();
        if let (Some(first), Some(second)) = (tokens.next(), tokens.next()) {
            if second.starts_with("m=") && tokens.next().is_none() {
                if let Some(n) = first.strip_prefix("n=").and_then(|r| r.parse::<usize>().ok()) {
                    return Some(n);
                }
            }
        }
        // Only the leading comment block is considered.
    }
    None
}

/// Connected-component labeling.
#[derive(Debug, Clone)]
pub struct ComponentInfo {
    /// Component id per vertex, contiguous from 0 in first-seen order.
    pub component_id: Vec<u32>,
    /// Size of each component; sums to `n`.
    pub component_sizes: Vec<usize>,
    /// True iff there is exactly one component or `n <= 1`.
    pub is_connected: bool,
}

/// Label components by BFS in ascending vertex order.
pub fn connected_components(g: &Graph) -> ComponentInfo {
    let n = g.vertex_count();
    let mut component_id = vec![u32::MAX; n];
    let mut component_sizes = Vec::new();
    let mut queue = Vec::new();
    for start in 0..n {
        if component_id[start] != u32::MAX {
            continue;
        }
        let id = component_sizes.len() as u32;
        let mut size = 0usize;
        component_id[start] = id;
        queue.clear();
        queue.push(start as u32);
        let mut head = 0;
        while head < queue.len() {
            let u = queue[head] as usize;
            head += 1;
            size += 1;
            for &v in g.neighbors(u) {
                if component_id[v as usize] == u32::MAX {
                    component_id[v as usize] = id;
                    queue.push(v);
                }
            }
        }
        component_sizes.push(size);
    }
    let is_connected = component_sizes.len() <= 1;
    ComponentInfo { component_id, component_sizes, is_connected }
}

/// Induced subgraph on the largest component, plus the new-to-old index map.
///
/// Ties go to the component containing the smallest original index (which is
/// the one labeled first). Fails on the empty graph.
pub fn largest_connected_component(g: &Graph) -> Result<(Graph, Vec<u32>)> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let info = connected_components(g);
    let best = info
        .component_sizes
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(id, _)| id as u32)
        .expect("n > 0 implies at least one component");

    let mut new_to_old = Vec::new();
    let mut old_to_new = vec![u32::MAX; n];
    for v in 0..n {
        if info.component_id[v] == best {
            old_to_new[v] = new_to_old.len() as u32;
            new_to_old.push(v as u32);
        }
    }
    let mut edges = Vec::new();
    for &old in &new_to_old {
        for &w in g.neighbors(old as usize) {
            if old < w {
                edges.push((old_to_new[old as usize], old_to_new[w as usize]));
            }
        }
    }
    let mut sub = build_graph(new_to_old.len(), &edges)?;
    if let Some(labels) = g.labels() {
        sub = sub
            .with_labels(new_to_old.iter().map(|&v| labels[v as usize].clone()).collect());
    }
    Ok((sub, new_to_old))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn graph(n: usize, edges: &[(u32, u32)]) -> Graph {
        build_graph(n, edges).unwrap()
    }

    fn k4() -> Graph {
        graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn parse_two_edge_path() {
        let p = parse_edge_list("a b\nb c").unwrap();
        assert_eq!(p.labels, vec!["a", "b", "c"]);
        assert_eq!(p.edges, vec![(0, 1), (1, 2)]);
        assert_eq!(p.self_loops, 0);
        assert_eq!(p.duplicate_edges, 0);
    }

    #[test]
    fn parse_flags_duplicates_and_loops() {
        let p = parse_edge_list("# comment\n1 2\n1 2\n2 2").unwrap();
        assert_eq!(p.edges, vec![(0, 1), (0, 1), (1, 1)]);
        assert_eq!(p.duplicate_edges, 1);
        assert_eq!(p.self_loops, 1);
    }

    #[test]
    fn parse_rejects_single_token_line() {
        match parse_edge_list("x") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_empty_input() {
        assert!(matches!(parse_edge_list(""), Err(Error::EmptyInput)));
        assert!(matches!(parse_edge_list("# only comments\n"), Err(Error::EmptyInput)));
    }

    #[test]
    fn build_dedupes_and_drops_loops() {
        let g = graph(3, &[(0, 1), (1, 0), (2, 2)]);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(0), &[1]);
        assert_eq!(g.neighbors(2), &[] as &[u32]);
    }

    #[test]
    fn build_complete_graph() {
        let g = k4();
        assert_eq!(g.edge_count(), 6);
        for v in 0..4 {
            assert_eq!(g.deg(v), 3);
        }
    }

    #[test]
    fn build_empty_graph() {
        let g = graph(2, &[]);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.vertex_count(), 2);
    }

    #[test]
    fn build_rejects_out_of_range() {
        assert!(matches!(
            build_graph(2, &[(0, 5)]),
            Err(Error::VertexOutOfRange { index: 5, n: 2 })
        ));
    }

    #[test]
    fn components_of_k4() {
        let info = connected_components(&k4());
        assert_eq!(info.component_sizes, vec![4]);
        assert!(info.is_connected);
    }

    #[test]
    fn components_of_two_disjoint_edges() {
        let info = connected_components(&graph(4, &[(0, 1), (2, 3)]));
        assert_eq!(info.component_sizes, vec![2, 2]);
        assert!(!info.is_connected);
        assert_eq!(info.component_id, vec![0, 0, 1, 1]);
    }

    #[test]
    fn components_of_empty_vertex_set() {
        let info = connected_components(&graph(0, &[]));
        assert!(info.component_sizes.is_empty());
        assert!(info.is_connected);
    }

    #[test]
    fn lcc_drops_isolated_vertex() {
        // P3 plus an isolated vertex.
        let g = graph(4, &[(0, 1), (1, 2)]);
        let (sub, map) = largest_connected_component(&g).unwrap();
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edge_count(), 2);
        assert_eq!(map, vec![0, 1, 2]);
    }

    #[test]
    fn lcc_of_connected_graph_is_identity() {
        let (sub, map) = largest_connected_component(&k4()).unwrap();
        assert_eq!(sub.vertex_count(), 4);
        assert_eq!(map, vec![0, 1, 2, 3]);
        assert_eq!(sub.to_canonical_string(), k4().to_canonical_string());
    }

    #[test]
    fn lcc_tie_breaks_to_smallest_index() {
        let g = graph(4, &[(0, 1), (2, 3)]);
        let (_, map) = largest_connected_component(&g).unwrap();
        assert_eq!(map, vec![0, 1]);
    }

    #[test]
    fn lcc_rejects_empty_graph() {
        assert!(matches!(largest_connected_component(&graph(0, &[])), Err(Error::EmptyGraph)));
    }

    #[test]
    fn degree_matches_examples() {
        assert_eq!(k4().degree(0).unwrap(), 3);
        let star = graph(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        assert_eq!(star.degree(0).unwrap(), 5);
        let iso = graph(1, &[]);
        assert_eq!(iso.degree(0).unwrap(), 0);
        assert!(iso.degree(1).is_err());
    }

    #[test]
    fn canonical_round_trip_preserves_isolated_vertices() {
        let g = graph(5, &[(1, 3), (0, 4)]);
        let text = g.to_canonical_string();
        let (back, _) = graph_from_text(&text).unwrap();
        assert_eq!(back.to_canonical_string(), text);
        assert_eq!(back.vertex_count(), 5);
    }

    #[test]
    fn labeled_text_keeps_labels() {
        let (g, report) = graph_from_text("alice bob\nbob carol\nalice bob").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(report.duplicate_edges, 1);
        assert_eq!(g.vertex_name(2), "carol");
    }

    proptest! {
        #[test]
        fn build_invariants_hold(n in 1usize..30, raw in prop::collection::vec((0u32..30, 0u32..30), 0..120)) {
            let edges: Vec<(u32, u32)> = raw
                .into_iter()
                .map(|(u, v)| (u % n as u32, v % n as u32))
                .collect();
            let g = build_graph(n, &edges).unwrap();

            let mut total_degree = 0usize;
            for v in 0..n {
                let nb = g.neighbors(v);
                total_degree += nb.len();
                for w in nb.windows(2) {
                    prop_assert!(w[0] < w[1], "adjacency not strictly sorted");
                }
                for &w in nb {
                    prop_assert!(g.neighbors(w as usize).contains(&(v as u32)), "asymmetric edge");
                    prop_assert!(w as usize != v, "self-loop survived");
                }
            }
            prop_assert_eq!(total_degree, 2 * g.edge_count());
        }

        #[test]
        fn canonical_round_trips(n in 1usize..20, raw in prop::collection::vec((0u32..20, 0u32..20), 1..60)) {
            let edges: Vec<(u32, u32)> = raw
                .into_iter()
                .map(|(u, v)| (u % n as u32, v % n as u32))
                .collect();
            let g = build_graph(n, &edges).unwrap();
            let text = g.to_canonical_string();
            let (back, _) = graph_from_text(&text).unwrap();
            prop_assert_eq!(back.to_canonical_string(), text);
        }

        #[test]
        fn lcc_is_connected_and_largest(n in 1usize..25, raw in prop::collection::vec((0u32..25, 0u32..25), 0..40)) {
            let edges: Vec<(u32, u32)> = raw
                .into_iter()
                .map(|(u, v)| (u % n as u32, v % n as u32))
                .collect();
            let g = build_graph(n, &edges).unwrap();
            let info = connected_components(&g);
            let (sub, map) = largest_connected_component(&g).unwrap();
            prop_assert!(connected_components(&sub).is_connected);
            prop_assert_eq!(sub.vertex_count(), *info.component_sizes.iter().max().unwrap());
            prop_assert_eq!(sub.vertex_count(), map.len());
        }
    }
}
