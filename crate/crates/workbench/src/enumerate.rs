//! Graph corpora: every labelled graph, one representative per isomorphism
//! class, or a seeded random sample.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use koszulgraph_core::{Graph, MAX_VERTICES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::WorkbenchError;

pub const LABELED_CAP: usize = 7;
pub const CANONICAL_CAP: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Mode {
    /// All `2^{n(n-1)/2}` labelled graphs.
    Labeled,
    /// One graph per isomorphism class, in canonical form.
    Canonical,
    /// `count` uniform random labelled graphs (each pair an edge with
    /// probability 1/2) from a seeded ChaCha8 stream.
    Sample { count: usize, seed: u64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Labeled => f.write_str("labeled"),
            Mode::Canonical => f.write_str("canonical"),
            Mode::Sample { count, seed } => write!(f, "sample:{count}:{seed}"),
        }
    }
}

/// `labeled`, `canonical`, or `sample:<count>:<seed>`.
impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "labeled" | "labelled" => Ok(Mode::Labeled),
            "canonical" => Ok(Mode::Canonical),
            _ => {
                let parts: Vec<&str> = s.split(':').collect();
                match parts.as_slice() {
                    ["sample", count, seed] => Ok(Mode::Sample {
                        count: count.parse().map_err(|e| format!("sample count: {e}"))?,
                        seed: seed.parse().map_err(|e| format!("sample seed: {e}"))?,
                    }),
                    _ => Err(format!(
                        "expected labeled, canonical or sample:<count>:<seed>, got {s:?}"
                    )),
                }
            }
        }
    }
}

/// Vertex pairs in graph6 column order `(0,1), (0,2), (1,2), (0,3), …`.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// Graph whose edge `k` (in [`pairs`] order) is present iff bit `k` of
/// `mask` is set.
fn from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    Graph::from_edges(
        n,
        pairs.iter().enumerate().filter(|(k, _)| (mask >> k) & 1 == 1).map(|(_, &p)| p),
    )
    .expect("pairs are in range")
}

pub fn enumerate_graphs(
    n: usize,
    mode: Mode,
) -> Result<Box<dyn Iterator<Item = Graph> + Send>, WorkbenchError> {
    let cap_err = |cap| Err(WorkbenchError::CapExceeded { requested: n, cap });
    match mode {
        Mode::Labeled => {
            if n > LABELED_CAP {
                return cap_err(LABELED_CAP);
            }
            let p = pairs(n);
            Ok(Box::new((0u64..1 << p.len()).map(move |mask| from_mask(n, &p, mask))))
        }
        Mode::Canonical => {
            if n > CANONICAL_CAP {
                return cap_err(CANONICAL_CAP);
            }
            Ok(Box::new(canonical_classes(n).into_iter()))
        }
        Mode::Sample { count, seed } => {
            if n > MAX_VERTICES {
                return cap_err(MAX_VERTICES);
            }
            let p = pairs(n);
            // one stream per n so that different n in a range stay independent
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            Ok(Box::new((0..count).map(move |_| {
                let edges: Vec<(usize, usize)> =
                    p.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
                Graph::from_edges(n, edges).expect("pairs are in range")
            })))
        }
    }
}

/// Adjacency code: bit `k` (most significant first, in graph6 pair order)
/// records pair `k`. Smaller codes sort first.
fn code_of(g: &Graph) -> u64 {
    let p = pairs(g.vertex_count());
    let m = p.len();
    p.iter()
        .enumerate()
        .filter(|(_, &(i, j))| g.has_edge(i, j))
        .fold(0u64, |acc, (k, _)| acc | 1 << (m - 1 - k))
}

/// Canonical form: the relabelling whose adjacency code is smallest over
/// all `n!` permutations (n <= 11, so the code fits a word).
///
/// Branch and bound over partial placements: fixing the vertices at
/// positions `0..=j` fixes the first `j(j+1)/2` code bits, so a placement
/// whose prefix already exceeds the best code is abandoned.
pub fn canonical_form(g: &Graph) -> Graph {
    let n = g.vertex_count();
    assert!(n <= 11, "canonical form supports at most 11 vertices");
    if n <= 1 {
        return g.clone();
    }
    let m = n * (n - 1) / 2;
    let mut search = Search { g, n, m, best: u64::MAX, best_perm: Vec::new(), perm: Vec::with_capacity(n) };
    search.extend(0, 0);
    let perm = search.best_perm;
    let edges = pairs(n)
        .into_iter()
        .filter(|&(i, j)| g.has_edge(perm[i], perm[j]));
    Graph::from_edges(n, edges).expect("relabelling stays in range")
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    m: usize,
    best: u64,
    best_perm: Vec<usize>,
    /// `perm[position] = original vertex`
    perm: Vec<usize>,
}

impl Search<'_> {
    /// `code` holds the bits of columns `1..perm.len()` (left-aligned in an
    /// `m`-bit word); `used` marks placed vertices.
    fn extend(&mut self, code: u64, used: u64) {
        let j = self.perm.len();
        if j == self.n {
            if code < self.best {
                self.best = code;
                self.best_perm = self.perm.clone();
            }
            return;
        }
        let first_bit = j * j.saturating_sub(1) / 2;
        for v in 0..self.n {
            if (used >> v) & 1 == 1 {
                continue;
            }
            let mut c = code;
            for (i, &u) in self.perm.iter().enumerate() {
                if self.g.has_edge(u, v) {
                    c |= 1 << (self.m - 1 - (first_bit + i));
                }
            }
            let fixed = first_bit + j;
            // compare the fixed prefix against the best code
            let shift = self.m - fixed;
            if self.best != u64::MAX && (c >> shift) > (self.best >> shift) {
                continue;
            }
            self.perm.push(v);
            self.extend(c, used | 1 << v);
            self.perm.pop();
        }
    }
}

/// One canonical representative per isomorphism class on `n` vertices,
/// sorted by adjacency code. Classes on `n` vertices are generated by
/// attaching a new vertex, with every possible neighbourhood, to each class
/// on `n - 1` vertices.
pub fn canonical_classes(n: usize) -> Vec<Graph> {
    // on a fixed vertex count the code determines the graph
    let mut level = BTreeMap::from([(0u64, Graph::empty(0).expect("n = 0"))]);
    for k in 1..=n {
        let mut next = BTreeMap::new();
        for h in level.values() {
            for nbhd in 0u64..1 << (k - 1) {
                let edges = h
                    .edges()
                    .chain((0..k - 1).filter(|&u| (nbhd >> u) & 1 == 1).map(|u| (u, k - 1)));
                let g = Graph::from_edges(k, edges).expect("in range");
                let c = canonical_form(&g);
                next.insert(code_of(&c), c);
            }
        }
        level = next;
    }
    level.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Canonical code by trying every permutation.
    fn brute_canonical_code(g: &Graph) -> u64 {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = g.vertex_count();
        perms(n)
            .into_iter()
            .map(|perm| {
                let h = Graph::from_edges(n, pairs(n).into_iter().filter(|&(i, j)| g.has_edge(perm[i], perm[j])))
                    .unwrap();
                code_of(&h)
            })
            .min()
            .unwrap()
    }

    #[test]
    fn labeled_counts() {
        assert_eq!(enumerate_graphs(3, Mode::Labeled).unwrap().count(), 8);
        assert_eq!(enumerate_graphs(1, Mode::Labeled).unwrap().count(), 1);
        assert_eq!(enumerate_graphs(0, Mode::Labeled).unwrap().count(), 1);
        let all: BTreeSet<String> = enumerate_graphs(4, Mode::Labeled)
            .unwrap()
            .map(|g| format!("{g:?}"))
            .collect();
        assert_eq!(all.len(), 64);
        assert!(enumerate_graphs(8, Mode::Labeled).is_err());
    }

    #[test]
    fn canonical_counts() {
        let counts: Vec<usize> = (0..=7).map(|n| canonical_classes(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156, 1044]);
        assert_eq!(enumerate_graphs(1, Mode::Canonical).unwrap().count(), 1);
        assert!(enumerate_graphs(9, Mode::Canonical).is_err());
    }

    #[test]
    fn canonical_form_matches_permutation_brute_force() {
        for n in 0..=5 {
            for g in enumerate_graphs(n, Mode::Labeled).unwrap() {
                let c = canonical_form(&g);
                assert_eq!(code_of(&c), brute_canonical_code(&g), "{g:?}");
                assert_eq!(c.edge_count(), g.edge_count());
            }
        }
    }

    #[test]
    fn isomorphism_classes_by_brute_force() {
        // n = 4: group all 64 labelled graphs by brute-force canonical code
        let classes: BTreeSet<u64> = enumerate_graphs(4, Mode::Labeled)
            .unwrap()
            .map(|g| brute_canonical_code(&g))
            .collect();
        assert_eq!(classes.len(), 11);
        let reps: BTreeSet<u64> = canonical_classes(4).iter().map(code_of).collect();
        assert_eq!(reps, classes);
    }

    #[test]
    fn samples_are_reproducible() {
        let a: Vec<Graph> = enumerate_graphs(10, Mode::Sample { count: 20, seed: 7 }).unwrap().collect();
        let b: Vec<Graph> = enumerate_graphs(10, Mode::Sample { count: 20, seed: 7 }).unwrap().collect();
        let c: Vec<Graph> = enumerate_graphs(10, Mode::Sample { count: 20, seed: 8 }).unwrap().collect();
        assert_eq!(a.len(), 20);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("labeled".parse::<Mode>().unwrap(), Mode::Labeled);
        assert_eq!("canonical".parse::<Mode>().unwrap(), Mode::Canonical);
        assert_eq!("sample:5:42".parse::<Mode>().unwrap(), Mode::Sample { count: 5, seed: 42 });
        assert!("sample:5".parse::<Mode>().is_err());
        for m in [Mode::Labeled, Mode::Canonical, Mode::Sample { count: 3, seed: 9 }] {
            assert_eq!(m.to_string().parse::<Mode>().unwrap(), m);
        }
    }
}
