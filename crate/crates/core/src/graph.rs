//! Simple undirected graphs on at most 64 vertices, stored as one `u64`
//! neighbour bitset per vertex.
//!
//! Vertices are dense `0..n` indices. Every operation here is a pure
//! function; graphs are immutable once built.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard vertex cap of the single-word bitset representation.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),
    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("adjacency rows are not symmetric at ({u}, {v})")]
    Asymmetric { u: usize, v: usize },
    #[error("{requested} vertices requested, cap is {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

#[inline]
pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A set of vertex indices of some host graph.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    /// `{0, …, n-1}`.
    pub const fn full(n: usize) -> Self {
        VertexSet(low_bits(n))
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, v: usize) -> bool {
        v < 64 && (self.0 >> v) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < MAX_VERTICES, "vertex {v} exceeds bitset width");
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        if v < 64 {
            self.0 &= !(1 << v);
        }
    }

    pub const fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> Bits {
        Bits(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl From<VertexSet> for Vec<usize> {
    fn from(s: VertexSet) -> Self {
        s.to_vec()
    }
}

impl TryFrom<Vec<usize>> for VertexSet {
    type Error = GraphError;

    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        let mut s = VertexSet::EMPTY;
        for x in v {
            if x >= MAX_VERTICES {
                return Err(GraphError::IndexOutOfRange { index: x, n: MAX_VERTICES });
            }
            s.insert(x);
        }
        Ok(s)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ascending iterator over the set bits of a word.
#[derive(Clone, Debug)]
pub struct Bits(u64);

impl Bits {
    pub fn new(word: u64) -> Self {
        Bits(word)
    }
}

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// Simple undirected graph with bitset adjacency rows.
///
/// Invariants: rows are symmetric, loop-free and only mention vertices `< n`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Graph {
    adj: Vec<u64>,
}

/// Result of [`Graph::induced`]: the subgraph plus, for each new vertex,
/// the host vertex it came from (ascending).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    pub original: Vec<usize>,
}

impl InducedSubgraph {
    /// Host index of new vertex `v`.
    pub fn to_host(&self, v: usize) -> usize {
        self.original[v]
    }
}

/// Result of [`Graph::remove_isolated`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRemoval {
    pub graph: Graph,
    pub removed: VertexSet,
    /// Host index of each vertex of `graph`.
    pub original: Vec<usize>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        check_cap(n)?;
        Ok(Graph { adj: vec![0; n] })
    }

    /// Builds a graph from an edge list; duplicate pairs are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::IndexOutOfRange { index: x, n });
                }
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, checking every invariant.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self, GraphError> {
        let n = rows.len();
        check_cap(n)?;
        let mask = low_bits(n);
        for (u, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                let index = (row & !mask).trailing_zeros() as usize;
                return Err(GraphError::IndexOutOfRange { index, n });
            }
            if (row >> u) & 1 == 1 {
                return Err(GraphError::LoopEdge(u));
            }
            for v in Bits(row) {
                if (rows[v] >> u) & 1 == 0 {
                    return Err(GraphError::Asymmetric { u, v });
                }
            }
        }
        Ok(Graph { adj: rows })
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        check_cap(n)?;
        let mask = low_bits(n);
        Ok(Graph {
            adj: (0..n).map(|u| mask & !(1 << u)).collect(),
        })
    }

    /// Path `0-1-…-(n-1)`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    /// Cycle `0-1-…-(n-1)-0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        assert!(n >= 3, "a cycle needs at least three vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Two disjoint edges `0-1`, `2-3`.
    pub fn two_k2() -> Self {
        Graph::from_edges(4, [(0, 1), (2, 3)]).expect("valid")
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && v < 64 && (self.adj[u] >> v) & 1 == 1
    }

    /// Open neighbourhood `N(v)`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, &row)| Bits(row & !low_bits(u + 1)).map(move |v| (u, v)))
    }

    /// No two members adjacent.
    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.bits() == 0)
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.bits() & !(self.adj[v] | 1 << v) == 0)
    }

    /// Vertices of degree zero.
    pub fn isolated_vertices(&self) -> VertexSet {
        self.adj
            .iter()
            .enumerate()
            .filter(|(_, &r)| r == 0)
            .map(|(v, _)| v)
            .collect()
    }

    pub fn complement(&self) -> Graph {
        let mask = low_bits(self.vertex_count());
        Graph {
            adj: self
                .adj
                .iter()
                .enumerate()
                .map(|(u, &r)| !r & mask & !(1 << u))
                .collect(),
        }
    }

    /// Subgraph induced on `w`, relabelled to `0..|w|` in ascending order.
    pub fn induced(&self, w: VertexSet) -> Result<InducedSubgraph, GraphError> {
        let n = self.vertex_count();
        if let Some(bad) = w.difference(self.vertices()).min() {
            return Err(GraphError::IndexOutOfRange { index: bad, n });
        }
        let original = w.to_vec();
        let adj = original
            .iter()
            .map(|&u| {
                original
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| self.has_edge(u, v))
                    .fold(0u64, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        Ok(InducedSubgraph { graph: Graph { adj }, original })
    }

    /// Disjoint union of `self` and `other`, plus every edge between them.
    /// Vertices of `other` are shifted by `self.vertex_count()`.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        self.combine(other, true)
    }

    /// Disjoint union; vertices of `other` are shifted as in [`Graph::join`].
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        self.combine(other, false)
    }

    fn combine(&self, other: &Graph, cross: bool) -> Result<Graph, GraphError> {
        let (n1, n2) = (self.vertex_count(), other.vertex_count());
        check_cap(n1 + n2)?;
        let left = low_bits(n1);
        let right = low_bits(n1 + n2) & !left;
        let mut adj = Vec::with_capacity(n1 + n2);
        adj.extend(self.adj.iter().map(|&r| if cross { r | right } else { r }));
        adj.extend(
            other
                .adj
                .iter()
                .map(|&r| if cross { (r << n1) | left } else { r << n1 }),
        );
        Ok(Graph { adj })
    }

    /// Drops every degree-0 vertex.
    pub fn remove_isolated(&self) -> IsolatedRemoval {
        let removed = self.isolated_vertices();
        let kept = self.vertices().difference(removed);
        let sub = self.induced(kept).expect("kept vertices are in range");
        IsolatedRemoval {
            graph: sub.graph,
            removed,
            original: sub.original,
        }
    }

    /// Greedy maximal independent set: scan vertices in ascending order and
    /// take every vertex with no neighbour already taken.
    pub fn maximal_independent_set(&self) -> VertexSet {
        let mut chosen = 0u64;
        let mut blocked = 0u64;
        for v in 0..self.vertex_count() {
            if (blocked >> v) & 1 == 0 {
                chosen |= 1 << v;
                blocked |= self.adj[v] | 1 << v;
            }
        }
        VertexSet(chosen)
    }
}

fn check_cap(n: usize) -> Result<(), GraphError> {
    if n > MAX_VERTICES {
        Err(GraphError::CapExceeded { requested: n, cap: MAX_VERTICES })
    } else {
        Ok(())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.vertex_count())?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        f.write_str("])")
    }
}

/// Serialized as `{"n": .., "edges": [[u, v], ..]}`.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.vertex_count(),
            edges: self.edges().collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        Graph::from_edges(repr.n, repr.edges).map_err(serde::de::Error::custom)
    }
}
