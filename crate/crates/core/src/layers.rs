//! Distance layers and their indicator vectors.
//!
//! [`bfs_layers`] is the reference path: one breadth-first sweep per root,
//! O(n + m). The characteristic-matrix recursions compute whole layer
//! matrices at once from
//!
//! ```text
//! chi^0 = I,  chi^1 = A,  chi^j = xor(bool(A chi^{j-1}), chi^{j-2})
//! ```
//!
//! [`paper_recursion_layers`] implements that verbatim. It is NOT a correct
//! layer computation in general: the XOR resurrects any vertex of layer j-2
//! that has no neighbor in layer j-1, and collapses layers with internal
//! edges (on a triangle chi^2 = A while the true second layer is empty). Even
//! on trees it diverges from j = 3 onward whenever a root has a shallow leaf;
//! only chi^0..chi^2 are trustworthy there. [`corrected_recursion_layers`]
//! replaces the XOR with a visited mask and agrees with BFS on every graph.

use crate::graph::Graph;
use crate::Result;

/// 0/1 vector over the vertex set with a cached popcount.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicatorVector {
    words: Vec<u64>,
    len: usize,
    ones: usize,
}

impl IndicatorVector {
    /// All-zero vector of the given length.
    pub fn zeros(len: usize) -> Self {
        IndicatorVector { words: vec![0; len.div_ceil(64)], len, ones: 0 }
    }

    /// Vector with exactly the given bits set.
    pub fn from_indices(len: usize, indices: &[u32]) -> Self {
        let mut v = Self::zeros(len);
        for &i in indices {
            v.set(i as usize);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of set bits.
    pub fn count_ones(&self) -> usize {
        self.ones
    }

    pub fn is_zero(&self) -> bool {
        self.ones == 0
    }

    pub fn contains(&self, k: usize) -> bool {
        debug_assert!(k < self.len);
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    /// Set bit `k`; panics if out of range.
    pub fn set(&mut self, k: usize) {
        assert!(k < self.len, "bit {k} out of range for length {}", self.len);
        let w = &mut self.words[k / 64];
        let mask = 1u64 << (k % 64);
        if *w & mask == 0 {
            *w |= mask;
            self.ones += 1;
        }
    }

    /// Indices of set bits, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + bit)
            })
        })
    }

    /// Symmetric difference.
    pub fn xor(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len);
        let words: Vec<u64> =
            self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect();
        Self::from_words(words, self.len)
    }

    /// Bits set in `self` but not in `other`.
    pub fn and_not(&self, other: &Self) -> Self {
        assert_eq!(self.len, other.len);
        let words: Vec<u64> =
            self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        Self::from_words(words, self.len)
    }

    /// In-place union.
    pub fn union_with(&mut self, other: &Self) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.ones = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }

    /// Dense 0.0/1.0 copy, e.g. for quadratic forms.
    pub fn to_f64_vec(&self) -> Vec<f64> {
        (0..self.len).map(|k| if self.contains(k) { 1.0 } else { 0.0 }).collect()
    }

    fn from_words(words: Vec<u64>, len: usize) -> Self {
        let ones = words.iter().map(|w| w.count_ones() as usize).sum();
        IndicatorVector { words, len, ones }
    }
}

/// Partition of the root's component into distance layers.
#[derive(Debug, Clone)]
pub struct LayerSet {
    root: usize,
    n: usize,
    /// `layers[j]` holds the vertices at distance exactly `j`, ascending.
    /// Only nonempty layers are stored, so the last entry is never empty.
    layers: Vec<Vec<u32>>,
}

impl LayerSet {
    pub fn root(&self) -> usize {
        self.root
    }

    /// Vertex count of the underlying graph.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest computed `j` with a nonempty layer.
    pub fn eccentricity(&self) -> usize {
        self.layers.len() - 1
    }

    /// Vertices at distance exactly `j`; empty beyond the eccentricity.
    pub fn layer(&self, j: usize) -> &[u32] {
        self.layers.get(j).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    /// Total number of reachable vertices (the root's component, when the
    /// sweep was not truncated).
    pub fn reached(&self) -> usize {
        self.layers.iter().map(Vec::len).sum()
    }

    /// 0/1 indicator of layer `j`; the zero vector when the layer is empty.
    pub fn indicator(&self, j: usize) -> IndicatorVector {
        IndicatorVector::from_indices(self.n, self.layer(j))
    }
}

/// Distance layers of `root` by breadth-first search, optionally truncated at
/// depth `j_max`. Layer 0 is the root itself; each layer is sorted ascending.
pub fn bfs_layers(g: &Graph, root: usize, j_max: Option<usize>) -> Result<LayerSet> {
    g.check_vertex(root)?;
    let n = g.vertex_count();
    let limit = j_max.unwrap_or(usize::MAX);
    let mut dist = vec![u32::MAX; n];
    dist[root] = 0;
    let mut frontier = vec![root as u32];
    let mut layers = Vec::new();
    let mut depth = 0usize;
    while !frontier.is_empty() {
        frontier.sort_unstable();
        layers.push(frontier.clone());
        if depth >= limit {
            break;
        }
        let mut next = Vec::new();
        for &u in &frontier {
            for &v in g.neighbors(u as usize) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = depth as u32 + 1;
                    next.push(v);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    Ok(LayerSet { root, n, layers })
}

/// Layer matrices `chi^0..chi^j_max` by the verbatim XOR recursion.
///
/// Row `i` of `chi^j` is `xor(bool(A chi^{j-1}_i), chi^{j-2}_i)` where `bool`
/// maps any nonzero entry to 1. Returned as computed, with no correction; see
/// the module docs for where this diverges from true distance layers.
pub fn paper_recursion_layers(g: &Graph, j_max: usize) -> Vec<Vec<IndicatorVector>> {
    recursion_layers(g, j_max, false)
}

/// Layer matrices `chi^0..chi^j_max` with the XOR replaced by a visited mask:
/// `chi^j_i = bool(A chi^{j-1}_i) minus everything already reached`. Rows
/// equal [`bfs_layers`] indicators on every graph.
pub fn corrected_recursion_layers(g: &Graph, j_max: usize) -> Vec<Vec<IndicatorVector>> {
    recursion_layers(g, j_max, true)
}

/// Sequential variant of [`corrected_recursion_layers`], kept callable for
/// benchmarking against the parallel path.
pub fn corrected_recursion_layers_sequential(
    g: &Graph,
    j_max: usize,
) -> Vec<Vec<IndicatorVector>> {
    transpose_rows(
        (0..g.vertex_count()).map(|i| recursion_row(g, i, j_max, true)).collect(),
        g.vertex_count(),
        j_max,
    )
}

fn recursion_layers(g: &Graph, j_max: usize, corrected: bool) -> Vec<Vec<IndicatorVector>> {
    let n = g.vertex_count();
    #[cfg(feature = "parallel")]
    let rows: Vec<Vec<IndicatorVector>> = {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(|i| recursion_row(g, i, j_max, corrected)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let rows: Vec<Vec<IndicatorVector>> =
        (0..n).map(|i| recursion_row(g, i, j_max, corrected)).collect();
    transpose_rows(rows, n, j_max)
}

fn recursion_row(g: &Graph, i: usize, j_max: usize, corrected: bool) -> Vec<IndicatorVector> {
    let n = g.vertex_count();
    let mut row = Vec::with_capacity(j_max + 1);
    let mut chi0 = IndicatorVector::zeros(n);
    chi0.set(i);
    row.push(chi0);
    if j_max == 0 {
        return row;
    }
    row.push(IndicatorVector::from_indices(n, g.neighbors(i)));
    let mut visited = row[0].clone();
    visited.union_with(&row[1]);
    for j in 2..=j_max {
        let expanded = expand(g, &row[j - 1]);
        let next = if corrected {
            let next = expanded.and_not(&visited);
            visited.union_with(&next);
            next
        } else {
            expanded.xor(&row[j - 2])
        };
        row.push(next);
    }
    row
}

/// `bool(A x)`: vertices adjacent to at least one set bit of `x`.
fn expand(g: &Graph, x: &IndicatorVector) -> IndicatorVector {
    let mut y = IndicatorVector::zeros(x.len());
    for l in x.iter_ones() {
        for &t in g.neighbors(l) {
            y.set(t as usize);
        }
    }
    y
}

fn transpose_rows(
    rows: Vec<Vec<IndicatorVector>>,
    n: usize,
    j_max: usize,
) -> Vec<Vec<IndicatorVector>> {
    let mut mats: Vec<Vec<IndicatorVector>> = (0..=j_max).map(|_| Vec::with_capacity(n)).collect();
    for row in rows {
        for (j, chi) in row.into_iter().enumerate() {
            mats[j].push(chi);
        }
    }
    mats
}
