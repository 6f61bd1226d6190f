//! Squarefree monomials, edge ideals, fiber products, the colon obstruction
//! attached to an induced 2K2 or P4, and independence complexes.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{low_bits, Bits, Graph, MAX_VERTICES};
use crate::recognize::{PatternKind, PatternWitness};

/// Largest graph whose independence complex (and Betti table) we build.
pub const DEFAULT_BETTI_CAP: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("monomial must have degree at least one")]
    ZeroDegree,
    #[error("edge ideal generator {0} is not of degree two")]
    NotQuadratic(Monomial),
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("{requested} variables requested, cap is {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("obstructions come from 2K2 or P4 witnesses, not {0}")]
    WrongPatternKind(PatternKind),
}

/// Squarefree monomial `x_{i1} x_{i2} …`, stored as its support bitset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Monomial(u64);

impl Monomial {
    pub fn new<I: IntoIterator<Item = usize>>(support: I) -> Result<Self, IdealError> {
        let mut bits = 0u64;
        for v in support {
            if v >= MAX_VERTICES {
                return Err(IdealError::IndexOutOfRange { index: v, nvars: MAX_VERTICES });
            }
            bits |= 1 << v;
        }
        Monomial::from_bits(bits)
    }

    pub fn from_bits(bits: u64) -> Result<Self, IdealError> {
        if bits == 0 {
            Err(IdealError::ZeroDegree)
        } else {
            Ok(Monomial(bits))
        }
    }

    /// `x_a x_b`; panics if `a == b`.
    pub fn quadratic(a: usize, b: usize) -> Self {
        assert_ne!(a, b, "squarefree quadratic needs two distinct variables");
        Monomial(1 << a | 1 << b)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn support(self) -> Vec<usize> {
        Bits::new(self.0).collect()
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.0 & !other.0 == 0
    }

    /// Product, or `None` if the supports overlap (the result would not be
    /// squarefree).
    pub fn product(self, other: Monomial) -> Option<Monomial> {
        (self.0 & other.0 == 0).then_some(Monomial(self.0 | other.0))
    }

    fn max_index(self) -> usize {
        63 - self.0.leading_zeros() as usize
    }
}

/// Lexicographic on the ascending support lists.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        Bits::new(self.0).cmp(Bits::new(other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in Bits::new(self.0) {
            write!(f, "x{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<Monomial> for Vec<usize> {
    fn from(m: Monomial) -> Self {
        m.support()
    }
}

impl TryFrom<Vec<usize>> for Monomial {
    type Error = IdealError;

    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Monomial::new(v)
    }
}

/// Ideal generated by squarefree quadratic monomials in `nvars` variables.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EdgeIdealRepr", into = "EdgeIdealRepr")]
pub struct EdgeIdeal {
    nvars: usize,
    gens: BTreeSet<Monomial>,
}

#[derive(Serialize, Deserialize)]
struct EdgeIdealRepr {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl From<EdgeIdeal> for EdgeIdealRepr {
    fn from(i: EdgeIdeal) -> Self {
        EdgeIdealRepr { nvars: i.nvars, gens: i.gens.into_iter().collect() }
    }
}

impl TryFrom<EdgeIdealRepr> for EdgeIdeal {
    type Error = IdealError;

    fn try_from(r: EdgeIdealRepr) -> Result<Self, Self::Error> {
        EdgeIdeal::new(r.nvars, r.gens)
    }
}

impl EdgeIdeal {
    /// Rejects generators that are not squarefree quadratics in range.
    pub fn new<I>(nvars: usize, gens: I) -> Result<Self, IdealError>
    where
        I: IntoIterator<Item = Monomial>,
    {
        if nvars > MAX_VERTICES {
            return Err(IdealError::CapExceeded { requested: nvars, cap: MAX_VERTICES });
        }
        let mut set = BTreeSet::new();
        for m in gens {
            if m.degree() != 2 {
                return Err(IdealError::NotQuadratic(m));
            }
            if m.max_index() >= nvars {
                return Err(IdealError::IndexOutOfRange { index: m.max_index(), nvars });
            }
            set.insert(m);
        }
        Ok(EdgeIdeal { nvars, gens: set })
    }

    /// `I(G)`: one generator `x_u x_v` per edge.
    pub fn of_graph(g: &Graph) -> Self {
        EdgeIdeal {
            nvars: g.vertex_count(),
            gens: g.edges().map(|(u, v)| Monomial::quadratic(u, v)).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Generators in lexicographic order.
    pub fn generators(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.gens.iter().copied()
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    /// Monomial membership: some generator divides `m`.
    pub fn contains_monomial(&self, m: Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Membership of `Σ terms` (unit coefficients, distinct squarefree
    /// terms). A polynomial lies in a monomial ideal iff each of its terms
    /// does.
    pub fn contains_poly(&self, terms: &[Monomial]) -> bool {
        terms.iter().all(|&t| self.contains_monomial(t))
    }

    /// Fiber product: variables of `other` are shifted by `self.nvars()` and
    /// every cross product `x_i y_j` is added.
    pub fn fiber_product(&self, other: &EdgeIdeal) -> Result<EdgeIdeal, IdealError> {
        let (n, m) = (self.nvars, other.nvars);
        if n + m > MAX_VERTICES {
            return Err(IdealError::CapExceeded { requested: n + m, cap: MAX_VERTICES });
        }
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().map(|g| Monomial(g.0 << n)));
        for i in 0..n {
            for j in 0..m {
                gens.insert(Monomial::quadratic(i, n + j));
            }
        }
        Ok(EdgeIdeal { nvars: n + m, gens })
    }

    /// The graph whose edge ideal this is.
    pub fn to_graph(&self) -> Graph {
        Graph::from_edges(
            self.nvars,
            self.gens.iter().map(|g| {
                let s = g.support();
                (s[0], s[1])
            }),
        )
        .expect("generators are validated quadratics in range")
    }
}

impl fmt::Debug for EdgeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeIdeal(nvars={}, ", self.nvars)?;
        f.debug_set().entries(self.gens.iter()).finish()?;
        f.write_str(")")
    }
}

/// The linear form `x_a + x_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearFormPair {
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObstructionCase {
    /// Induced 2K2: `x1x2, x3x4 ∈ I`.
    TwoK2,
    /// Induced P4: `x1x2, x2x3, x3x4 ∈ I`.
    P4,
}

/// `x_{i1} x_{i4}` is a degree-two minimal generator of
/// `0 : (x_{i2} + x_{i3})` in the edge ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ObstructionWitness {
    pub outer: (usize, usize),
    pub form: LinearFormPair,
    pub case: ObstructionCase,
}

impl ObstructionWitness {
    /// Witness `(a, b, c, d)` gives outer `(a, d)` and form `x_b + x_c`.
    pub fn from_pattern(w: &PatternWitness) -> Result<Self, IdealError> {
        let case = match w.kind {
            PatternKind::TwoK2 => ObstructionCase::TwoK2,
            PatternKind::P4 => ObstructionCase::P4,
            other => return Err(IdealError::WrongPatternKind(other)),
        };
        let &[a, b, c, d] = w.vertices.as_slice() else {
            return Err(IdealError::WrongPatternKind(w.kind));
        };
        Ok(ObstructionWitness {
            outer: (a, d),
            form: LinearFormPair { a: b, b: c },
            case,
        })
    }

    fn indices(&self) -> [usize; 4] {
        [self.outer.0, self.form.a, self.form.b, self.outer.1]
    }

    /// Checks, inside `S / I`:
    ///
    /// * `x_{i1} x_{i4} (x_{i2} + x_{i3}) = 0`,
    /// * `x_{i1} (x_{i2} + x_{i3}) ≠ 0` and `x_{i4} (x_{i2} + x_{i3}) ≠ 0`,
    /// * `x_{i1} x_{i4} ≠ 0`, so the quadric is a genuine minimal generator
    ///   of the colon ideal rather than zero.
    pub fn verify(&self, ideal: &EdgeIdeal) -> bool {
        let idx = self.indices();
        if idx.iter().any(|&i| i >= ideal.nvars()) {
            return false;
        }
        if idx.iter().collect::<BTreeSet<_>>().len() != 4 {
            return false;
        }
        let [i1, i2, i3, i4] = idx;
        let x = |i: usize| Monomial(1 << i);
        let outer = Monomial::quadratic(i1, i4);
        // distinct indices: every product below is squarefree
        let times_form = |m: Monomial| {
            [m.product(x(i2)).expect("distinct"), m.product(x(i3)).expect("distinct")]
        };
        ideal.contains_poly(&times_form(outer))
            && !ideal.contains_poly(&times_form(x(i1)))
            && !ideal.contains_poly(&times_form(x(i4)))
            && !ideal.contains_monomial(outer)
    }
}

/// Face: set of vertices, as a bitset.
pub type Face = u64;

/// Simplicial complex with every face stored, grouped by dimension.
/// `faces[d + 1]` holds the `d`-dimensional faces in lexicographic order;
/// `faces[0] = [∅]`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialComplex {
    nverts: usize,
    faces: Vec<Vec<Face>>,
}

impl SimplicialComplex {
    /// Downward closure of `facets` on `nverts` vertices.
    pub fn from_facets<I>(nverts: usize, facets: I) -> Result<Self, IdealError>
    where
        I: IntoIterator<Item = Face>,
    {
        if nverts > MAX_VERTICES {
            return Err(IdealError::CapExceeded { requested: nverts, cap: MAX_VERTICES });
        }
        let mut all = BTreeSet::from([0u64]);
        for f in facets {
            if f & !low_bits(nverts) != 0 {
                let index = 63 - (f & !low_bits(nverts)).leading_zeros() as usize;
                return Err(IdealError::IndexOutOfRange { index, nvars: nverts });
            }
            if all.contains(&f) {
                continue;
            }
            // enumerate subsets of f
            let mut s = f;
            loop {
                all.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        Ok(SimplicialComplex::from_face_set(nverts, all))
    }

    fn from_face_set(nverts: usize, all: BTreeSet<Face>) -> Self {
        let top = all.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
        let mut faces = vec![Vec::new(); top + 1];
        for f in all {
            faces[f.count_ones() as usize].push(f);
        }
        for level in &mut faces {
            level.sort_by(|a, b| Bits::new(*a).cmp(Bits::new(*b)));
        }
        SimplicialComplex { nverts, faces }
    }

    pub fn nverts(&self) -> usize {
        self.nverts
    }

    /// Largest face dimension; `-1` for the complex `{∅}`.
    pub fn dimension(&self) -> isize {
        self.faces.len() as isize - 2
    }

    /// Faces of dimension `d` (`d >= -1`).
    pub fn faces_of_dim(&self, d: isize) -> &[Face] {
        usize::try_from(d + 1)
            .ok()
            .and_then(|i| self.faces.get(i))
            .map_or(&[], Vec::as_slice)
    }

    pub fn face_count(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn contains(&self, f: Face) -> bool {
        self.faces_of_dim(f.count_ones() as isize - 1)
            .binary_search_by(|x| Bits::new(*x).cmp(Bits::new(f)))
            .is_ok()
    }

    /// Closed under taking subsets (checked on codimension-one faces).
    pub fn is_closed(&self) -> bool {
        self.faces.iter().flatten().all(|&f| Bits::new(f).all(|v| self.contains(f & !(1 << v))))
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let counts: Vec<usize> = self.faces.iter().map(Vec::len).collect();
        write!(f, "SimplicialComplex(nverts={}, f-vector={counts:?})", self.nverts)
    }
}

/// Independence complex of `g`: faces are the independent vertex sets.
/// This is the Stanley–Reisner complex of `I(g)`.
pub fn independence_complex(g: &Graph) -> Result<SimplicialComplex, IdealError> {
    independence_complex_capped(g, DEFAULT_BETTI_CAP)
}

pub fn independence_complex_capped(
    g: &Graph,
    cap: usize,
) -> Result<SimplicialComplex, IdealError> {
    let n = g.vertex_count();
    if n > cap {
        return Err(IdealError::CapExceeded { requested: n, cap });
    }
    let mut all = BTreeSet::new();
    extend_independent(g, 0, g.vertices().bits(), &mut all);
    Ok(SimplicialComplex::from_face_set(n, all))
}

/// Adds `current ∪ S` for every independent `S` drawn from `candidates`.
fn extend_independent(g: &Graph, current: Face, candidates: u64, out: &mut BTreeSet<Face>) {
    out.insert(current);
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        // only larger vertices afterwards, so each set is produced once
        extend_independent(g, current | 1 << v, rest & !g.row(v), out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexSet;
    use crate::recognize::{find_induced, is_2k2_p4_free};
    use proptest::prelude::*;

    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            Graph::from_edges(
                n,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (mask >> i) & 1 == 1)
                    .map(|(_, &p)| p),
            )
            .unwrap()
        })
    }

    fn m(v: &[usize]) -> Monomial {
        Monomial::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn edge_ideal_examples() {
        let k2 = EdgeIdeal::of_graph(&Graph::complete(2).unwrap());
        assert_eq!(k2.generators().collect::<Vec<_>>(), vec![m(&[0, 1])]);

        let p4 = EdgeIdeal::of_graph(&Graph::path(4).unwrap());
        assert_eq!(
            p4.generators().collect::<Vec<_>>(),
            vec![m(&[0, 1]), m(&[1, 2]), m(&[2, 3])]
        );
        assert_eq!(p4.nvars(), 4);

        assert_eq!(EdgeIdeal::of_graph(&Graph::empty(3).unwrap()).generator_count(), 0);
    }

    #[test]
    fn non_quadratic_generators_rejected() {
        assert_eq!(
            EdgeIdeal::new(3, [m(&[0, 1, 2])]),
            Err(IdealError::NotQuadratic(m(&[0, 1, 2])))
        );
        assert_eq!(EdgeIdeal::new(3, [m(&[1])]), Err(IdealError::NotQuadratic(m(&[1]))));
        assert_eq!(
            EdgeIdeal::new(2, [m(&[0, 2])]),
            Err(IdealError::IndexOutOfRange { index: 2, nvars: 2 })
        );
        assert_eq!(Monomial::new([]), Err(IdealError::ZeroDegree));
    }

    #[test]
    fn fiber_product_examples() {
        let k1 = EdgeIdeal::of_graph(&Graph::empty(1).unwrap());
        assert_eq!(
            k1.fiber_product(&k1).unwrap(),
            EdgeIdeal::of_graph(&Graph::complete(2).unwrap())
        );

        let two_k1 = EdgeIdeal::of_graph(&Graph::empty(2).unwrap());
        let fp = two_k1.fiber_product(&two_k1).unwrap();
        assert_eq!(fp.generator_count(), 4);
        let g = Graph::empty(2).unwrap();
        assert_eq!(fp, EdgeIdeal::of_graph(&g.join(&g).unwrap()));

        let none = EdgeIdeal::of_graph(&Graph::empty(0).unwrap());
        let p4 = EdgeIdeal::of_graph(&Graph::path(4).unwrap());
        assert_eq!(none.fiber_product(&p4).unwrap(), p4);
        assert_eq!(p4.fiber_product(&none).unwrap(), p4);

        let big = EdgeIdeal::of_graph(&Graph::empty(40).unwrap());
        assert!(matches!(big.fiber_product(&big), Err(IdealError::CapExceeded { .. })));
    }

    #[test]
    fn fiber_product_is_join_exhaustive() {
        let small: Vec<Graph> = (0..=3).flat_map(all_graphs).collect();
        for g1 in &small {
            for g2 in &small {
                let lhs = EdgeIdeal::of_graph(g1)
                    .fiber_product(&EdgeIdeal::of_graph(g2))
                    .unwrap();
                assert_eq!(lhs, EdgeIdeal::of_graph(&g1.join(g2).unwrap()));
            }
        }
    }

    #[test]
    fn contains_poly_examples() {
        let i = EdgeIdeal::of_graph(&Graph::two_k2());
        assert!(i.contains_poly(&[m(&[0, 1, 3]), m(&[0, 2, 3])]));
        assert!(!i.contains_poly(&[m(&[0, 2])]));
        for g in i.generators() {
            assert!(i.contains_poly(&[g]));
        }
    }

    /// Normal form: drop every term divisible by a generator; the
    /// polynomial lies in the ideal iff nothing survives.
    fn normal_form(i: &EdgeIdeal, terms: &[Monomial]) -> Vec<Monomial> {
        let gens: Vec<Vec<usize>> = i.generators().map(|g| g.support()).collect();
        terms
            .iter()
            .filter(|t| {
                let s = t.support();
                !gens.iter().any(|g| g.iter().all(|v| s.contains(v)))
            })
            .copied()
            .collect()
    }

    proptest! {
        #[test]
        fn contains_poly_agrees_with_normal_form(
            n in 2usize..8,
            edge_bits in any::<u32>(),
            raw_terms in prop::collection::vec(1u64..256, 1..6),
        ) {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
            let g = Graph::from_edges(
                n,
                pairs.iter().enumerate().filter(|(k, _)| (edge_bits >> (k % 32)) & 1 == 1).map(|(_, &p)| p),
            ).unwrap();
            let i = EdgeIdeal::of_graph(&g);
            let mask = low_bits(n);
            let terms: BTreeSet<Monomial> = raw_terms
                .iter()
                .filter_map(|&t| Monomial::from_bits(t & mask).ok())
                .collect();
            prop_assume!(!terms.is_empty());
            let terms: Vec<Monomial> = terms.into_iter().collect();
            prop_assert_eq!(i.contains_poly(&terms), normal_form(&i, &terms).is_empty());
        }
    }

    #[test]
    fn obstruction_from_witness_examples() {
        let w = PatternWitness { kind: PatternKind::TwoK2, vertices: vec![0, 1, 2, 3] };
        let o = ObstructionWitness::from_pattern(&w).unwrap();
        assert_eq!(o.outer, (0, 3));
        assert_eq!(o.form, LinearFormPair { a: 1, b: 2 });
        assert_eq!(o.case, ObstructionCase::TwoK2);

        let w = PatternWitness { kind: PatternKind::P4, vertices: vec![0, 1, 2, 3] };
        let o = ObstructionWitness::from_pattern(&w).unwrap();
        assert_eq!((o.outer, o.form, o.case), ((0, 3), LinearFormPair { a: 1, b: 2 }, ObstructionCase::P4));

        let w = PatternWitness { kind: PatternKind::C4, vertices: vec![0, 1, 2, 3] };
        assert_eq!(
            ObstructionWitness::from_pattern(&w),
            Err(IdealError::WrongPatternKind(PatternKind::C4))
        );
    }

    #[test]
    fn verify_obstruction_examples() {
        let p4 = Graph::path(4).unwrap();
        let w = find_induced(&p4, PatternKind::P4).unwrap();
        assert!(ObstructionWitness::from_pattern(&w).unwrap().verify(&EdgeIdeal::of_graph(&p4)));

        let g = Graph::two_k2();
        let w = find_induced(&g, PatternKind::TwoK2).unwrap();
        assert!(ObstructionWitness::from_pattern(&w).unwrap().verify(&EdgeIdeal::of_graph(&g)));

        // C4 0-1-2-3: x0 (x1 + x3) already vanishes
        let c4 = EdgeIdeal::of_graph(&Graph::cycle(4).unwrap());
        let o = ObstructionWitness {
            outer: (0, 2),
            form: LinearFormPair { a: 1, b: 3 },
            case: ObstructionCase::TwoK2,
        };
        assert!(!o.verify(&c4));

        // degenerate indices are refused rather than panicking
        let o = ObstructionWitness {
            outer: (0, 0),
            form: LinearFormPair { a: 1, b: 2 },
            case: ObstructionCase::P4,
        };
        assert!(!o.verify(&EdgeIdeal::of_graph(&p4)));
        let o = ObstructionWitness {
            outer: (0, 9),
            form: LinearFormPair { a: 1, b: 2 },
            case: ObstructionCase::P4,
        };
        assert!(!o.verify(&EdgeIdeal::of_graph(&p4)));
    }

    #[test]
    fn every_found_witness_gives_a_valid_obstruction() {
        for n in 0..=6 {
            for g in all_graphs(n) {
                let ideal = EdgeIdeal::of_graph(&g);
                for kind in [PatternKind::TwoK2, PatternKind::P4] {
                    if let Some(w) = find_induced(&g, kind) {
                        assert!(ObstructionWitness::from_pattern(&w).unwrap().verify(&ideal));
                    }
                }
                if let Some(w) = is_2k2_p4_free(&g).witness {
                    assert!(ObstructionWitness::from_pattern(&w).unwrap().verify(&ideal));
                }
            }
        }
    }

    #[test]
    fn independence_complex_examples() {
        let pentagon = independence_complex(&Graph::cycle(5).unwrap()).unwrap();
        assert_eq!(pentagon.dimension(), 1);
        assert_eq!(pentagon.faces_of_dim(0).len(), 5);
        assert_eq!(pentagon.faces_of_dim(1).len(), 5);

        let k4 = independence_complex(&Graph::complete(4).unwrap()).unwrap();
        assert_eq!(k4.dimension(), 0);
        assert_eq!(k4.face_count(), 5);

        let simplex = independence_complex(&Graph::empty(4).unwrap()).unwrap();
        assert_eq!(simplex.face_count(), 16);
        assert_eq!(simplex.dimension(), 3);

        assert!(matches!(
            independence_complex(&Graph::empty(15).unwrap()),
            Err(IdealError::CapExceeded { requested: 15, cap: 14 })
        ));
        assert!(independence_complex_capped(&Graph::empty(15).unwrap(), 15).is_ok());
    }

    #[test]
    fn independence_complex_structure_exhaustive() {
        for n in 0..=6 {
            for g in all_graphs(n) {
                let c = independence_complex(&g).unwrap();
                assert!(c.is_closed());
                assert_eq!(c.faces_of_dim(-1), &[0]);
                assert_eq!(c.faces_of_dim(0).len(), n);
                let non_edges: Vec<Face> = g
                    .complement()
                    .edges()
                    .map(|(u, v)| 1 << u | 1 << v)
                    .collect();
                let mut dim1 = c.faces_of_dim(1).to_vec();
                dim1.sort();
                let mut expected = non_edges;
                expected.sort();
                assert_eq!(dim1, expected);
                for &f in c.faces_of_dim(2) {
                    assert!(g.is_independent(VertexSet::from_bits(f)));
                }
            }
        }
    }

    #[test]
    fn from_facets_closes_downward() {
        let c = SimplicialComplex::from_facets(3, [0b011, 0b110]).unwrap();
        assert_eq!(c.face_count(), 1 + 3 + 2);
        assert!(c.is_closed());
        assert!(SimplicialComplex::from_facets(2, [0b100]).is_err());
    }

    #[test]
    fn serde_shapes() {
        let i = EdgeIdeal::of_graph(&Graph::path(3).unwrap());
        let r: EdgeIdealRepr = i.clone().into();
        assert_eq!(r.gens, vec![m(&[0, 1]), m(&[1, 2])]);
        assert_eq!(EdgeIdeal::try_from(r).unwrap(), i);
    }
}
