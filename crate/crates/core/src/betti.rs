//! Graded Betti numbers of `S / I(G)` from Hochster's formula
//!
//! ```text
//! β_{i,j}(S/I(G)) = Σ_{W ⊆ V, |W| = j} dim H̃_{j-i-1}(Δ_W; K)
//! ```
//!
//! where `Δ_W` is the independence complex of `G[W]`. Reduced homology is
//! computed with exact ranks of the simplicial boundary maps, including the
//! augmentation to the empty face.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Bits, Graph, VertexSet};
use crate::ideal::{
    independence_complex_capped, Face, IdealError, SimplicialComplex, DEFAULT_BETTI_CAP,
};
use crate::rank::{is_prime, rank_mod_p, rank_rational, SparseRow};
use crate::recognize::{is_chordal, Chordality};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BettiError {
    #[error("graph has {requested} vertices, Betti cap is {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("equivalence violated: {0}")]
    EquivalenceViolation(String),
}

impl From<IdealError> for BettiError {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::CapExceeded { requested, cap } => BettiError::CapExceeded { requested, cap },
            other => unreachable!("independence complexes only fail on the cap: {other}"),
        }
    }
}

/// Coefficient field for homology.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(into = "String", try_from = "String")]
pub enum FieldSpec {
    #[default]
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    pub const GF2: FieldSpec = FieldSpec::PrimeField(2);

    /// `GF(p)`; `p` must be a prime below `2^31`.
    pub fn prime(p: u32) -> Result<Self, BettiError> {
        if p >= 1 << 31 || !is_prime(p as u64) {
            return Err(BettiError::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    fn rank(self, rows: &[SparseRow], ncols: usize) -> usize {
        match self {
            FieldSpec::Rationals => rank_rational(rows, ncols),
            FieldSpec::PrimeField(p) => rank_mod_p(rows, p),
        }
    }
}

/// `q`, `gf2`, or `gfp:<p>`.
impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("q"),
            FieldSpec::PrimeField(2) => f.write_str("gf2"),
            FieldSpec::PrimeField(p) => write!(f, "gfp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = BettiError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "q" | "Q" => Ok(FieldSpec::Rationals),
            "gf2" => Ok(FieldSpec::GF2),
            _ => {
                let p = s
                    .strip_prefix("gfp:")
                    .and_then(|p| p.parse::<u32>().ok())
                    .ok_or_else(|| {
                        BettiError::InvalidField(format!("expected q, gf2 or gfp:<p>, got {s:?}"))
                    })?;
                FieldSpec::prime(p)
            }
        }
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> Self {
        f.to_string()
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = BettiError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Reduced homology ranks for dimensions `-1 ..= dim`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    ranks: Vec<usize>,
}

impl HomologyProfile {
    /// `dim H̃_d`; zero outside the stored range.
    pub fn rank(&self, d: isize) -> usize {
        usize::try_from(d + 1)
            .ok()
            .and_then(|i| self.ranks.get(i))
            .copied()
            .unwrap_or(0)
    }

    /// `(dimension, rank)` for every nonzero rank.
    pub fn nonzero(&self) -> impl Iterator<Item = (isize, usize)> + '_ {
        self.ranks
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(i, &r)| (i as isize - 1, r))
    }

    pub fn is_acyclic(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }
}

/// Boundary map from `d`-faces to `(d-1)`-faces, one sparse row per
/// `d`-face. For `d = 0` this is the augmentation onto the empty face.
fn boundary_rows(c: &SimplicialComplex, d: isize) -> (Vec<SparseRow>, usize) {
    let lower = c.faces_of_dim(d - 1);
    let index: BTreeMap<Face, usize> = lower.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let rows = c
        .faces_of_dim(d)
        .iter()
        .map(|&f| {
            let mut row: SparseRow = Bits::new(f)
                .enumerate()
                .map(|(k, v)| {
                    let sign = if k % 2 == 0 { 1 } else { -1 };
                    (index[&(f & !(1 << v))], sign)
                })
                .collect();
            row.sort_unstable_by_key(|e| e.0);
            row
        })
        .collect();
    (rows, lower.len())
}

/// `dim H̃_d = f_d − rank ∂_d − rank ∂_{d+1}`.
pub fn reduced_homology(c: &SimplicialComplex, field: FieldSpec) -> HomologyProfile {
    let top = c.dimension();
    // rank ∂_d for d = 0 ..= top + 1 (∂_{top+1} is the zero map)
    let boundary_rank = |d: isize| -> usize {
        if d <= -1 || d > top {
            return 0;
        }
        let (rows, ncols) = boundary_rows(c, d);
        field.rank(&rows, ncols)
    };
    let ranks_of_boundaries: Vec<usize> = (-1..=top + 1).map(boundary_rank).collect();
    let ranks = (-1..=top)
        .map(|d| {
            let faces = c.faces_of_dim(d).len();
            let i = (d + 1) as usize;
            faces - ranks_of_boundaries[i] - ranks_of_boundaries[i + 1]
        })
        .collect();
    HomologyProfile { ranks }
}

/// Graded Betti table of `S / I(G)` for homological degrees `i >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "BettiTableRepr", try_from = "BettiTableRepr")]
pub struct BettiTable {
    nvars: usize,
    field: FieldSpec,
    entries: BTreeMap<(usize, usize), u64>,
}

#[derive(Serialize, Deserialize)]
struct BettiTableRepr {
    nvars: usize,
    field: FieldSpec,
    /// `[i, j, β_{i,j}]`, sorted.
    entries: Vec<(usize, usize, u64)>,
}

impl From<BettiTable> for BettiTableRepr {
    fn from(t: BettiTable) -> Self {
        BettiTableRepr {
            nvars: t.nvars,
            field: t.field,
            entries: t.entries.into_iter().map(|((i, j), b)| (i, j, b)).collect(),
        }
    }
}

impl TryFrom<BettiTableRepr> for BettiTable {
    type Error = String;

    fn try_from(r: BettiTableRepr) -> Result<Self, Self::Error> {
        let mut entries = BTreeMap::new();
        for (i, j, b) in r.entries {
            if !(1..=j).contains(&i) || !(2..=r.nvars).contains(&j) || b == 0 {
                return Err(format!("invalid Betti entry ({i}, {j}) = {b}"));
            }
            entries.insert((i, j), b);
        }
        Ok(BettiTable { nvars: r.nvars, field: r.field, entries })
    }
}

impl BettiTable {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// `β_{i,j}`, zero when absent.
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries `((i, j), β_{i,j})` in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Projective dimension (0 for the empty table).
    pub fn projdim(&self) -> usize {
        self.entries.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Entries agree, ignoring the field tag.
    pub fn same_numbers(&self, other: &BettiTable) -> bool {
        self.nvars == other.nvars && self.entries == other.entries
    }

    /// Table in the usual layout: row `j - i`, column `i`, with `i = 0`
    /// holding the single generator of `S`.
    pub fn render(&self) -> String {
        let pd = self.projdim();
        let max_row = self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0);
        let cell = |row: usize, col: usize| -> String {
            if col == 0 {
                return if row == 0 { "1".into() } else { ".".into() };
            }
            match self.get(col, col + row) {
                0 => ".".into(),
                b => b.to_string(),
            }
        };
        let width = (0..=max_row)
            .flat_map(|r| (0..=pd).map(move |c| (r, c)))
            .map(|(r, c)| cell(r, c).len())
            .chain((0..=pd).map(|c| c.to_string().len()))
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        out.push_str(&format!("{:>6}", ""));
        for c in 0..=pd {
            out.push_str(&format!(" {c:>width$}"));
        }
        out.push('\n');
        out.push_str(&format!("{:>6}", "total:"));
        for c in 0..=pd {
            let total: u64 = if c == 0 {
                1
            } else {
                self.entries.iter().filter(|(k, _)| k.0 == c).map(|(_, v)| v).sum()
            };
            out.push_str(&format!(" {total:>width$}"));
        }
        out.push('\n');
        for r in 0..=max_row {
            out.push_str(&format!("{:>6}", format!("{r}:")));
            for c in 0..=pd {
                out.push_str(&format!(" {:>width$}", cell(r, c)));
            }
            out.push('\n');
        }
        out
    }
}

/// [`betti_table_capped`] with the default cap of 14 vertices.
pub fn betti_table(g: &Graph, field: FieldSpec) -> Result<BettiTable, BettiError> {
    betti_table_capped(g, field, DEFAULT_BETTI_CAP)
}

/// Hochster's formula over every vertex subset `W`.
///
/// Subsets where `G[W]` has an isolated vertex are skipped: that vertex is a
/// cone point of `Δ_W`, so every reduced homology group vanishes. The
/// per-subset terms are independent and summed in parallel; addition is
/// commutative so the table does not depend on scheduling.
pub fn betti_table_capped(
    g: &Graph,
    field: FieldSpec,
    cap: usize,
) -> Result<BettiTable, BettiError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(BettiError::CapExceeded { requested: n, cap });
    }
    let terms: Vec<((usize, usize), u64)> = (1u64..1 << n)
        .into_par_iter()
        .filter(|&w| w.count_ones() >= 2 && Bits::new(w).all(|v| g.row(v) & w != 0))
        .flat_map_iter(|w| subset_terms(g, VertexSet::from_bits(w), field))
        .collect();
    let mut entries = BTreeMap::new();
    for (key, b) in terms {
        *entries.entry(key).or_insert(0) += b;
    }
    Ok(BettiTable { nvars: n, field, entries })
}

/// Contributions of one subset `W` with `|W| = j`: `H̃_k(Δ_W)` lands at
/// `(i, j)` with `i = j - k - 1`.
fn subset_terms(g: &Graph, w: VertexSet, field: FieldSpec) -> Vec<((usize, usize), u64)> {
    let j = w.len();
    let sub = g.induced(w).expect("subset of the vertex set").graph;
    let complex = independence_complex_capped(&sub, usize::MAX).expect("no cap");
    reduced_homology(&complex, field)
        .nonzero()
        .filter_map(|(k, r)| {
            let i = j as isize - k - 1;
            (i >= 1).then_some(((i as usize, j), r as u64))
        })
        .collect()
}

/// Linear resolution: every nonzero `β_{i,j}` has `j = i + 1`.
pub fn is_linear_resolution(t: &BettiTable) -> bool {
    t.entries.keys().all(|&(i, j)| j == i + 1)
}

/// Both sides of "S/I(G) has a linear resolution iff the complement of G
/// is chordal".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobergReport {
    pub linear_resolution: bool,
    pub complement_chordality: Chordality,
    pub betti: BettiTable,
}

/// Computes both sides independently and fails if they disagree.
pub fn froberg_check(g: &Graph, field: FieldSpec) -> Result<FrobergReport, BettiError> {
    froberg_check_capped(g, field, DEFAULT_BETTI_CAP)
}

pub fn froberg_check_capped(
    g: &Graph,
    field: FieldSpec,
    cap: usize,
) -> Result<FrobergReport, BettiError> {
    let betti = betti_table_capped(g, field, cap)?;
    let linear_resolution = is_linear_resolution(&betti);
    let complement_chordality = is_chordal(&g.complement());
    if linear_resolution != complement_chordality.is_chordal() {
        return Err(BettiError::EquivalenceViolation(format!(
            "{g:?} over {field}: linear resolution {linear_resolution}, complement chordal {}",
            complement_chordality.is_chordal()
        )));
    }
    Ok(FrobergReport { linear_resolution, complement_chordality, betti })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(entries: &[((usize, usize), u64)]) -> BTreeMap<(usize, usize), u64> {
        entries.iter().copied().collect()
    }

    #[test]
    fn homology_of_small_complexes() {
        let pentagon =
            crate::ideal::independence_complex(&Graph::cycle(5).unwrap()).unwrap();
        let h = reduced_homology(&pentagon, FieldSpec::Rationals);
        assert_eq!((h.rank(-1), h.rank(0), h.rank(1)), (0, 0, 1));

        for n in 1..=5 {
            let simplex = crate::ideal::independence_complex(&Graph::empty(n).unwrap()).unwrap();
            assert!(reduced_homology(&simplex, FieldSpec::Rationals).is_acyclic());
        }

        let two_points = SimplicialComplex::from_facets(2, [0b01, 0b10]).unwrap();
        let h = reduced_homology(&two_points, FieldSpec::Rationals);
        assert_eq!((h.rank(-1), h.rank(0)), (0, 1));

        // independence complex of 2K2 is the square 0-2-1-3
        let square = crate::ideal::independence_complex(&Graph::two_k2()).unwrap();
        let h = reduced_homology(&square, FieldSpec::GF2);
        assert_eq!((h.rank(0), h.rank(1)), (0, 1));

        let void = SimplicialComplex::from_facets(0, []).unwrap();
        let h = reduced_homology(&void, FieldSpec::Rationals);
        assert_eq!(h.rank(-1), 1);
    }

    #[test]
    fn projective_plane_has_torsion() {
        // 6-vertex RP^2: H_1 = Z/2, so GF(2) sees homology that Q does not.
        let tris: [[usize; 3]; 10] = [
            [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
            [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
        ];
        let facets = tris.iter().map(|t| t.iter().fold(0u64, |a, &v| a | 1 << v));
        let rp2 = SimplicialComplex::from_facets(6, facets).unwrap();
        let q = reduced_homology(&rp2, FieldSpec::Rationals);
        let f2 = reduced_homology(&rp2, FieldSpec::GF2);
        assert!(q.is_acyclic());
        assert_eq!((f2.rank(1), f2.rank(2)), (1, 1));
        let f3 = reduced_homology(&rp2, FieldSpec::prime(3).unwrap());
        assert!(f3.is_acyclic());
    }

    #[test]
    fn betti_examples() {
        let k3 = betti_table(&Graph::complete(3).unwrap(), FieldSpec::Rationals).unwrap();
        assert_eq!(k3.entries, table(&[((1, 2), 3), ((2, 3), 2)]));
        assert!(is_linear_resolution(&k3));

        let two_k2 = betti_table(&Graph::two_k2(), FieldSpec::Rationals).unwrap();
        assert_eq!(two_k2.entries, table(&[((1, 2), 2), ((2, 4), 1)]));
        assert!(!is_linear_resolution(&two_k2));

        let c5 = betti_table(&Graph::cycle(5).unwrap(), FieldSpec::Rationals).unwrap();
        assert_eq!(c5.get(3, 5), 1);

        let empty = betti_table(&Graph::empty(4).unwrap(), FieldSpec::Rationals).unwrap();
        assert!(empty.is_empty());
        assert!(is_linear_resolution(&empty));

        assert_eq!(
            betti_table(&Graph::empty(15).unwrap(), FieldSpec::Rationals),
            Err(BettiError::CapExceeded { requested: 15, cap: 14 })
        );
    }

    #[test]
    fn froberg_examples() {
        let r = froberg_check(&Graph::path(4).unwrap(), FieldSpec::Rationals).unwrap();
        assert!(r.linear_resolution && r.complement_chordality.is_chordal());
        let r = froberg_check(&Graph::two_k2(), FieldSpec::Rationals).unwrap();
        assert!(!r.linear_resolution && !r.complement_chordality.is_chordal());
        assert_eq!(r.betti.get(2, 4), 1);
        let r = froberg_check(&Graph::empty(1).unwrap(), FieldSpec::Rationals).unwrap();
        assert!(r.linear_resolution && r.complement_chordality.is_chordal());
    }

    #[test]
    fn field_spec_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("gf2".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(2));
        assert_eq!("gfp:7".parse::<FieldSpec>().unwrap(), FieldSpec::PrimeField(7));
        assert!("gfp:8".parse::<FieldSpec>().is_err());
        assert!("gfp:2147483659".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
        for f in [FieldSpec::Rationals, FieldSpec::GF2, FieldSpec::PrimeField(101)] {
            assert_eq!(f.to_string().parse::<FieldSpec>().unwrap(), f);
        }
    }

    #[test]
    fn render_layout() {
        let t = betti_table(&Graph::two_k2(), FieldSpec::Rationals).unwrap();
        let s = t.render();
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[1].split_whitespace().collect::<Vec<_>>(), ["total:", "1", "2", "1"]);
        assert_eq!(lines[2].split_whitespace().collect::<Vec<_>>(), ["0:", "1", ".", "."]);
        assert_eq!(lines[3].split_whitespace().collect::<Vec<_>>(), ["1:", ".", "2", "."]);
        assert_eq!(lines[4].split_whitespace().collect::<Vec<_>>(), ["2:", ".", ".", "1"]);
    }
}
