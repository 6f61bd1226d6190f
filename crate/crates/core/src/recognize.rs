//! Induced-pattern search (2K2, P4, C4, chordless cycles), chordality
//! certificates and the recursive join decomposition of (2K2, P4)-free
//! graphs.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{low_bits, Bits, Graph, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternKind {
    TwoK2,
    P4,
    C4,
    ChordlessCycle,
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PatternKind::TwoK2 => "2K2",
            PatternKind::P4 => "P4",
            PatternKind::C4 => "C4",
            PatternKind::ChordlessCycle => "chordless cycle",
        })
    }
}

/// Ordered vertex tuple realizing an induced pattern.
///
/// * `TwoK2 (a,b,c,d)`: `ab`, `cd` edges; `ac`, `ad`, `bc`, `bd` non-edges.
/// * `P4 (a,b,c,d)`: `ab`, `bc`, `cd` edges; `ac`, `ad`, `bd` non-edges.
/// * `C4 (a,b,c,d)`: `ab`, `bc`, `cd`, `da` edges; `ac`, `bd` non-edges.
/// * `ChordlessCycle`: consecutive vertices adjacent (cyclically), length at
///   least 4, no other edges among them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternWitness {
    pub kind: PatternKind,
    pub vertices: Vec<usize>,
}

impl PatternWitness {
    /// Checks the witness against `g` from scratch.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let vs = &self.vertices;
        let n = g.vertex_count();
        if vs.iter().any(|&v| v >= n) {
            return false;
        }
        let distinct = vs.iter().collect::<std::collections::BTreeSet<_>>().len() == vs.len();
        if !distinct {
            return false;
        }
        let e = |i: usize, j: usize| g.has_edge(vs[i], vs[j]);
        match self.kind {
            PatternKind::TwoK2 => {
                vs.len() == 4
                    && e(0, 1)
                    && e(2, 3)
                    && !e(0, 2)
                    && !e(0, 3)
                    && !e(1, 2)
                    && !e(1, 3)
            }
            PatternKind::P4 => {
                vs.len() == 4 && e(0, 1) && e(1, 2) && e(2, 3) && !e(0, 2) && !e(0, 3) && !e(1, 3)
            }
            PatternKind::C4 => {
                vs.len() == 4 && e(0, 1) && e(1, 2) && e(2, 3) && e(3, 0) && !e(0, 2) && !e(1, 3)
            }
            PatternKind::ChordlessCycle => {
                let k = vs.len();
                k >= 4
                    && (0..k).all(|i| {
                        (i + 1..k).all(|j| {
                            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                            e(i, j) == consecutive
                        })
                    })
            }
        }
    }

    fn map_vertices(mut self, f: impl Fn(usize) -> usize) -> Self {
        for v in &mut self.vertices {
            *v = f(*v);
        }
        self
    }
}

/// Lexicographically least ordered 4-tuple realizing `kind` as an induced
/// subgraph, or `None`.
///
/// # Panics
///
/// If `kind` is [`PatternKind::ChordlessCycle`]; use [`is_chordal`] for that.
pub fn find_induced(g: &Graph, kind: PatternKind) -> Option<PatternWitness> {
    let n = g.vertex_count();
    let all = g.vertices().bits();
    let bit = |v: usize| 1u64 << v;
    let found = |a, b, c, d| Some(PatternWitness { kind, vertices: vec![a, b, c, d] });
    for a in 0..n {
        let na = g.row(a);
        for b in Bits::new(na) {
            let nb = g.row(b);
            match kind {
                PatternKind::TwoK2 => {
                    let far = all & !(na | nb | bit(a) | bit(b));
                    for c in Bits::new(far) {
                        if let Some(d) = Bits::new(g.row(c) & far).next() {
                            return found(a, b, c, d);
                        }
                    }
                }
                PatternKind::P4 => {
                    for c in Bits::new(nb & !na & !bit(a)) {
                        let d_mask = g.row(c) & !na & !nb & !bit(a) & !bit(b);
                        if let Some(d) = Bits::new(d_mask).next() {
                            return found(a, b, c, d);
                        }
                    }
                }
                PatternKind::C4 => {
                    for c in Bits::new(nb & !na & !bit(a)) {
                        let d_mask = g.row(c) & na & !nb & !bit(b);
                        if let Some(d) = Bits::new(d_mask).next() {
                            return found(a, b, c, d);
                        }
                    }
                }
                PatternKind::ChordlessCycle => {
                    panic!("find_induced searches fixed 4-vertex patterns only")
                }
            }
        }
    }
    None
}

/// Outcome of a (2K2, P4)-freeness test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Freeness {
    pub free: bool,
    pub witness: Option<PatternWitness>,
}

impl Freeness {
    fn from_witness(witness: Option<PatternWitness>) -> Self {
        Freeness { free: witness.is_none(), witness }
    }
}

/// 2K2 is searched first, then P4.
pub fn is_2k2_p4_free(g: &Graph) -> Freeness {
    Freeness::from_witness(
        find_induced(g, PatternKind::TwoK2).or_else(|| find_induced(g, PatternKind::P4)),
    )
}

/// C4 is searched first, then P4.
pub fn is_c4_p4_free(g: &Graph) -> Freeness {
    Freeness::from_witness(
        find_induced(g, PatternKind::C4).or_else(|| find_induced(g, PatternKind::P4)),
    )
}

/// A perfect elimination ordering: each vertex's neighbours that come later
/// in `order` form a clique.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordalityCertificate {
    pub order: Vec<usize>,
}

impl ChordalityCertificate {
    /// First `(v, a, b)` where `a`, `b` are non-adjacent later neighbours of
    /// `v`, or `None` for a valid PEO. `Err` if `order` is not a permutation.
    fn first_violation(&self, g: &Graph) -> Result<Option<(usize, usize, usize)>, ()> {
        let n = g.vertex_count();
        if self.order.len() != n {
            return Err(());
        }
        let mut later = g.vertices().bits();
        let mut seen = 0u64;
        for &v in &self.order {
            if v >= n || (seen >> v) & 1 == 1 {
                return Err(());
            }
            seen |= 1 << v;
            later &= !(1 << v);
            let ln = g.row(v) & later;
            for a in Bits::new(ln) {
                let missing = ln & !g.row(a) & !(1 << a);
                if let Some(b) = Bits::new(missing).next() {
                    return Ok(Some((v, a, b)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        matches!(self.first_violation(g), Ok(None))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Chordality {
    Chordal { certificate: ChordalityCertificate },
    NotChordal { witness: PatternWitness },
}

impl Chordality {
    pub fn is_chordal(&self) -> bool {
        matches!(self, Chordality::Chordal { .. })
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        match self {
            Chordality::Chordal { certificate } => certificate.is_valid_for(g),
            Chordality::NotChordal { witness } => {
                witness.kind == PatternKind::ChordlessCycle && witness.is_valid_in(g)
            }
        }
    }
}

/// Maximum-cardinality search; ties go to the lowest index. Returns the
/// visit order reversed, which is a PEO exactly when `g` is chordal.
pub fn mcs_order(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut weight = vec![0usize; n];
    let mut unvisited = g.vertices().bits();
    let mut visit = Vec::with_capacity(n);
    while unvisited != 0 {
        let v = Bits::new(unvisited)
            .max_by(|&x, &y| weight[x].cmp(&weight[y]).then(y.cmp(&x)))
            .expect("nonempty");
        unvisited &= !(1 << v);
        for u in Bits::new(g.row(v) & unvisited) {
            weight[u] += 1;
        }
        visit.push(v);
    }
    visit.reverse();
    visit
}

/// Chordality test with a certificate either way: a validated perfect
/// elimination ordering or an induced cycle of length at least 4.
pub fn is_chordal(g: &Graph) -> Chordality {
    let certificate = ChordalityCertificate { order: mcs_order(g) };
    let Some(first) = certificate.first_violation(g).expect("MCS yields a permutation") else {
        return Chordality::Chordal { certificate };
    };

    // Triples from the failing ordering first, then every (v, a, b).
    let from_order = peo_violations(g, &certificate.order);
    let everywhere = (0..g.vertex_count()).flat_map(|v| {
        let nv = g.row(v);
        Bits::new(nv).flat_map(move |a| {
            Bits::new(nv & !g.row(a) & !low_bits(a + 1)).map(move |b| (v, a, b))
        })
    });
    std::iter::once(first)
        .chain(from_order)
        .chain(everywhere)
        .find_map(|(v, a, b)| chordless_cycle_through(g, v, a, b))
        .map(|witness| Chordality::NotChordal { witness })
        .expect("a non-chordal graph has a chordless cycle through some (v, a, b)")
}

fn peo_violations(g: &Graph, order: &[usize]) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    let mut later = g.vertices().bits();
    for &v in order {
        later &= !(1 << v);
        let ln = g.row(v) & later;
        for a in Bits::new(ln) {
            for b in Bits::new(ln & !g.row(a) & !low_bits(a + 1)) {
                out.push((v, a, b));
            }
        }
    }
    out
}

/// `a`, `b` are non-adjacent neighbours of `v`. A shortest `a`–`b` path
/// avoiding `N[v] \ {a, b}` closes a chordless cycle through `v`.
fn chordless_cycle_through(g: &Graph, v: usize, a: usize, b: usize) -> Option<PatternWitness> {
    let blocked = (g.row(v) | 1 << v) & !(1u64 << a | 1u64 << b);
    let allowed = g.vertices().bits() & !blocked;
    let mut parent = vec![usize::MAX; g.vertex_count()];
    let mut seen = 1u64 << a;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            break;
        }
        for y in Bits::new(g.row(x) & allowed & !seen) {
            seen |= 1 << y;
            parent[y] = x;
            queue.push_back(y);
        }
    }
    if (seen >> b) & 1 == 0 {
        return None;
    }
    let mut path = vec![b];
    let mut x = b;
    while x != a {
        x = parent[x];
        path.push(x);
    }
    path.reverse();
    let mut vertices = vec![v];
    vertices.extend(path);
    Some(PatternWitness { kind: PatternKind::ChordlessCycle, vertices })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error("equivalence violated: {0}")]
    EquivalenceViolation(String),
}

/// Both sides of "G is (2K2, P4)-free iff its complement is (C4, P4)-free".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementReport {
    pub graph_side: Freeness,
    pub complement_side: Freeness,
}

/// Computes both sides independently and fails if they disagree.
pub fn complement_equivalence_check(g: &Graph) -> Result<ComplementReport, RecognizeError> {
    let graph_side = is_2k2_p4_free(g);
    let complement_side = is_c4_p4_free(&g.complement());
    if graph_side.free != complement_side.free {
        return Err(RecognizeError::EquivalenceViolation(format!(
            "{g:?}: graph side free={}, complement side free={}",
            graph_side.free, complement_side.free
        )));
    }
    Ok(ComplementReport { graph_side, complement_side })
}

/// Certificate tree for a (2K2, P4)-free graph, over the host's vertex
/// labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "snake_case")]
pub enum JoinNode {
    Leaf {
        vertex: usize,
    },
    /// `child` (absent when every vertex is isolated) plus isolated vertices.
    IsolatedExtension {
        child: Option<Box<JoinNode>>,
        isolated: VertexSet,
    },
    /// Join of two parts; `cross_edges = |left| * |right|`.
    Join {
        left: Box<JoinNode>,
        right: Box<JoinNode>,
        cross_edges: usize,
    },
}

impl JoinNode {
    pub fn vertices(&self) -> VertexSet {
        match self {
            JoinNode::Leaf { vertex } => VertexSet::from_iter([*vertex]),
            JoinNode::IsolatedExtension { child, isolated } => child
                .as_ref()
                .map_or(VertexSet::EMPTY, |c| c.vertices())
                .union(*isolated),
            JoinNode::Join { left, right, .. } => left.vertices().union(right.vertices()),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            JoinNode::Leaf { .. } => 1,
            JoinNode::IsolatedExtension { child, .. } => {
                1 + child.as_ref().map_or(0, |c| c.depth())
            }
            JoinNode::Join { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    /// Adds the node's edges to `rows`; returns its vertex set. Fails on
    /// overlapping parts or a wrong cross-edge count.
    fn replay_into(&self, rows: &mut [u64]) -> Result<u64, ReplayError> {
        let in_range = |v: usize| {
            if v < rows.len() {
                Ok(())
            } else {
                Err(ReplayError::VertexOutOfRange(v))
            }
        };
        match self {
            JoinNode::Leaf { vertex } => {
                in_range(*vertex)?;
                Ok(1 << vertex)
            }
            JoinNode::IsolatedExtension { child, isolated } => {
                for v in isolated.iter() {
                    in_range(v)?;
                }
                let inner = match child {
                    Some(c) => c.replay_into(rows)?,
                    None => 0,
                };
                if inner & isolated.bits() != 0 {
                    return Err(ReplayError::Overlap);
                }
                Ok(inner | isolated.bits())
            }
            JoinNode::Join { left, right, cross_edges } => {
                let l = left.replay_into(rows)?;
                let r = right.replay_into(rows)?;
                if l & r != 0 {
                    return Err(ReplayError::Overlap);
                }
                let count = (l.count_ones() * r.count_ones()) as usize;
                if count != *cross_edges {
                    return Err(ReplayError::CrossEdgeCount { stated: *cross_edges, actual: count });
                }
                for u in Bits::new(l) {
                    rows[u] |= r;
                }
                for v in Bits::new(r) {
                    rows[v] |= l;
                }
                Ok(l | r)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("certificate mentions vertex {0} outside the graph")]
    VertexOutOfRange(usize),
    #[error("certificate parts overlap")]
    Overlap,
    #[error("certificate does not cover every vertex")]
    Uncovered,
    #[error("join node states {stated} cross edges but its parts give {actual}")]
    CrossEdgeCount { stated: usize, actual: usize },
}

/// Join certificate of a whole graph on `n` vertices. `root` is absent only
/// for the empty graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinCertificate {
    pub n: usize,
    pub root: Option<JoinNode>,
}

impl JoinCertificate {
    /// Rebuilds the graph described by the tree.
    pub fn replay(&self) -> Result<Graph, ReplayError> {
        let mut rows = vec![0u64; self.n];
        let covered = match &self.root {
            Some(root) => root.replay_into(&mut rows)?,
            None => 0,
        };
        if covered != VertexSet::full(self.n).bits() {
            return Err(ReplayError::Uncovered);
        }
        Ok(Graph::from_rows(rows).expect("replayed rows are symmetric and loop-free"))
    }

    pub fn replays_to(&self, g: &Graph) -> bool {
        self.replay().is_ok_and(|h| &h == g)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Decomposition {
    Certificate(JoinCertificate),
    Obstruction(PatternWitness),
}

/// Recursive join decomposition.
///
/// Isolated vertices are split off first. A single vertex is a leaf.
/// Otherwise take the least vertex `v` of the greedy maximal independent set
/// and split into `N(v)` and the rest; in a (2K2, P4)-free graph every
/// vertex of `N(v)` is adjacent to every vertex outside it. When that fails
/// somewhere, a 2K2 or P4 witness in `g` is returned instead.
pub fn join_decompose(g: &Graph) -> Decomposition {
    let n = g.vertex_count();
    if n == 0 {
        return Decomposition::Certificate(JoinCertificate { n, root: None });
    }
    match decompose_part(g, g.vertices()) {
        Some(root) => Decomposition::Certificate(JoinCertificate { n, root: Some(root) }),
        None => Decomposition::Obstruction(
            is_2k2_p4_free(g)
                .witness
                .expect("a failed join split implies an induced 2K2 or P4"),
        ),
    }
}

fn decompose_part(g: &Graph, w: VertexSet) -> Option<JoinNode> {
    debug_assert!(!w.is_empty());
    if w.len() == 1 {
        return Some(JoinNode::Leaf { vertex: w.min().unwrap() });
    }
    let isolated: VertexSet = w.iter().filter(|&v| g.row(v) & w.bits() == 0).collect();
    if !isolated.is_empty() {
        let rest = w.difference(isolated);
        let child = if rest.is_empty() {
            None
        } else {
            Some(Box::new(decompose_part(g, rest)?))
        };
        return Some(JoinNode::IsolatedExtension { child, isolated });
    }

    // Not every member of the independent set splits (the paw, split at a
    // triangle vertex, fails); the one that is universal in its component
    // of the complement does, so scan in ascending order.
    let sub = g.induced(w).expect("w is within g");
    let (left, right) = sub
        .graph
        .maximal_independent_set()
        .iter()
        .map(|v| {
            let left = g.neighbors(sub.to_host(v)).intersection(w);
            (left, w.difference(left))
        })
        .find(|(left, right)| right.iter().all(|y| left.bits() & !g.row(y) == 0))?;
    Some(JoinNode::Join {
        left: Box::new(decompose_part(g, left)?),
        right: Box::new(decompose_part(g, right)?),
        cross_edges: left.len() * right.len(),
    })
}

/// Relabels a witness found on an induced subgraph back to the host.
pub fn witness_to_host(w: PatternWitness, original: &[usize]) -> PatternWitness {
    w.map_vertices(|v| original[v])
}
