//! Universally Koszul edge rings.
//!
//! The edge ring `S/I(G)` of a graph is universally Koszul exactly when `G`
//! has no induced 2K2 and no induced P4. This crate decides that condition
//! with a certificate for either answer and checks the algebraic side
//! independently:
//!
//! * [`graph`]: bitset graphs and the constructions on them (complement,
//!   induced subgraphs, joins, greedy maximal independent sets).
//! * [`recognize`]: induced pattern search, chordality certificates and the
//!   recursive join decomposition.
//! * [`ideal`]: edge ideals, fiber products, the colon obstruction carried
//!   by an induced 2K2/P4, independence complexes.
//! * [`betti`]: graded Betti numbers through Hochster's formula and the
//!   linear-resolution test.

pub mod betti;
pub mod graph;
pub mod ideal;
pub mod rank;
pub mod recognize;

pub use betti::{
    betti_table, betti_table_capped, froberg_check, froberg_check_capped, is_linear_resolution,
    reduced_homology, BettiError, BettiTable, FieldSpec, FrobergReport, HomologyProfile,
};
pub use graph::{Graph, GraphError, VertexSet, MAX_VERTICES};
pub use ideal::{
    independence_complex, independence_complex_capped, EdgeIdeal, IdealError, LinearFormPair,
    Monomial, ObstructionCase, ObstructionWitness, SimplicialComplex, DEFAULT_BETTI_CAP,
};
pub use recognize::{
    complement_equivalence_check, find_induced, is_2k2_p4_free, is_c4_p4_free, is_chordal,
    join_decompose, ChordalityCertificate, Chordality, ComplementReport, Decomposition, Freeness,
    JoinCertificate, JoinNode, PatternKind, PatternWitness, RecognizeError,
};
