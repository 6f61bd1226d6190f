//! Top-level classifier: universally Koszul or not, with a certificate for
//! either answer and, optionally, the resolution-side consequences.

use koszulgraph_core::{
    froberg_check_capped, is_2k2_p4_free, join_decompose, Decomposition, EdgeIdeal, FieldSpec,
    FrobergReport, Graph, JoinCertificate, ObstructionWitness, PatternKind, PatternWitness,
    DEFAULT_BETTI_CAP,
};
use serde::{Deserialize, Serialize};

use crate::error::WorkbenchError;
use crate::graph6::{emit_graph6, parse_graph6};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    UniversallyKoszul,
    NotUniversallyKoszul,
}

impl Verdict {
    pub fn is_uk(self) -> bool {
        self == Verdict::UniversallyKoszul
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Join { decomposition: JoinCertificate },
    Obstruction { pattern: PatternWitness, obstruction: ObstructionWitness },
}

/// Betti table, linearity and complement chordality, computed and
/// cross-checked against each other.
pub type Consequences = FrobergReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub graph6: String,
    pub vertices: usize,
    pub edges: usize,
    pub verdict: Verdict,
    pub certificate: Certificate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub consequences: Option<Consequences>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub with_consequences: bool,
    pub field: FieldSpec,
    pub betti_cap: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            with_consequences: false,
            field: FieldSpec::Rationals,
            betti_cap: DEFAULT_BETTI_CAP,
        }
    }
}

impl ClassifyOptions {
    pub fn with_consequences(mut self) -> Self {
        self.with_consequences = true;
        self
    }
}

pub fn classify(g: &Graph, opts: ClassifyOptions) -> Result<Classification, WorkbenchError> {
    if opts.with_consequences && g.vertex_count() > opts.betti_cap {
        return Err(WorkbenchError::CapExceeded {
            requested: g.vertex_count(),
            cap: opts.betti_cap,
        });
    }
    let freeness = is_2k2_p4_free(g);
    let (verdict, certificate) = match join_decompose(g) {
        Decomposition::Certificate(decomposition) => {
            if !decomposition.replays_to(g) {
                return Err(WorkbenchError::InternalInconsistency(format!(
                    "join certificate does not replay to {g:?}"
                )));
            }
            (Verdict::UniversallyKoszul, Certificate::Join { decomposition })
        }
        Decomposition::Obstruction(pattern) => {
            let obstruction = ObstructionWitness::from_pattern(&pattern)?;
            if !pattern.is_valid_in(g) || !obstruction.verify(&EdgeIdeal::of_graph(g)) {
                return Err(WorkbenchError::InternalInconsistency(format!(
                    "obstruction {obstruction:?} from {pattern:?} fails on {g:?}"
                )));
            }
            (Verdict::NotUniversallyKoszul, Certificate::Obstruction { pattern, obstruction })
        }
    };
    if verdict.is_uk() != freeness.free {
        return Err(WorkbenchError::InternalInconsistency(format!(
            "join decomposition says {verdict:?} but pattern search says free = {} on {g:?}",
            freeness.free
        )));
    }

    let consequences = if opts.with_consequences {
        let report = froberg_check_capped(g, opts.field, opts.betti_cap)?;
        if verdict.is_uk() && !report.linear_resolution {
            return Err(WorkbenchError::InternalInconsistency(format!(
                "{g:?} is universally Koszul but its resolution is not linear"
            )));
        }
        Some(report)
    } else {
        None
    };

    Ok(Classification {
        graph6: emit_graph6(g),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        verdict,
        certificate,
        consequences,
    })
}

impl Classification {
    pub fn graph(&self) -> Result<Graph, WorkbenchError> {
        parse_graph6(&self.graph6)
    }

    /// Vertices to highlight: the witness of a negative answer.
    pub fn witness_vertices(&self) -> &[usize] {
        match &self.certificate {
            Certificate::Obstruction { pattern, .. } => &pattern.vertices,
            Certificate::Join { .. } => &[],
        }
    }

    /// Re-checks a stored classification from scratch: the certificate must
    /// replay (or the obstruction verify) on the stored graph, and any
    /// consequences must be internally consistent.
    pub fn revalidate(&self) -> Result<(), WorkbenchError> {
        let fail = |msg: String| Err(WorkbenchError::Revalidation(msg));
        let g = self.graph()?;
        if g.vertex_count() != self.vertices || g.edge_count() != self.edges {
            return fail("vertex or edge count does not match the graph".into());
        }
        match (&self.verdict, &self.certificate) {
            (Verdict::UniversallyKoszul, Certificate::Join { decomposition }) => {
                if !decomposition.replays_to(&g) {
                    return fail("join certificate does not replay to the graph".into());
                }
            }
            (Verdict::NotUniversallyKoszul, Certificate::Obstruction { pattern, obstruction }) => {
                if !matches!(pattern.kind, PatternKind::TwoK2 | PatternKind::P4)
                    || !pattern.is_valid_in(&g)
                {
                    return fail(format!("{pattern:?} is not an induced 2K2/P4"));
                }
                if ObstructionWitness::from_pattern(pattern)? != *obstruction {
                    return fail("obstruction does not match its pattern".into());
                }
                if !obstruction.verify(&EdgeIdeal::of_graph(&g)) {
                    return fail(format!("{obstruction:?} does not verify"));
                }
            }
            _ => return fail("verdict and certificate kind disagree".into()),
        }
        if let Some(c) = &self.consequences {
            if koszulgraph_core::is_linear_resolution(&c.betti) != c.linear_resolution {
                return fail("stored linearity disagrees with the stored Betti table".into());
            }
            if !c.complement_chordality.is_valid_for(&g.complement()) {
                return fail("complement chordality certificate does not verify".into());
            }
            if c.linear_resolution != c.complement_chordality.is_chordal() {
                return fail("linearity and complement chordality disagree".into());
            }
            if self.verdict.is_uk() && !c.linear_resolution {
                return fail("universally Koszul but not linear".into());
            }
            if c.betti.get(1, 2) != self.edges as u64 {
                return fail("beta_{1,2} differs from the edge count".into());
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use koszulgraph_core::{JoinNode, LinearFormPair, ObstructionCase};

    fn full() -> ClassifyOptions {
        ClassifyOptions::default().with_consequences()
    }

    #[test]
    fn c4_is_uk_with_linear_resolution() {
        let c = classify(&Graph::cycle(4).unwrap(), full()).unwrap();
        assert_eq!(c.verdict, Verdict::UniversallyKoszul);
        let Certificate::Join { decomposition } = &c.certificate else { panic!() };
        assert!(matches!(decomposition.root, Some(JoinNode::Join { .. })));
        assert!(c.consequences.as_ref().unwrap().linear_resolution);
        c.revalidate().unwrap();
    }

    #[test]
    fn p4_is_not_uk_but_linear() {
        let c = classify(&Graph::path(4).unwrap(), full()).unwrap();
        assert_eq!(c.verdict, Verdict::NotUniversallyKoszul);
        let Certificate::Obstruction { obstruction, .. } = &c.certificate else { panic!() };
        assert_eq!(obstruction.outer, (0, 3));
        assert_eq!(obstruction.form, LinearFormPair { a: 1, b: 2 });
        assert_eq!(obstruction.case, ObstructionCase::P4);
        assert!(c.consequences.as_ref().unwrap().linear_resolution);
        assert_eq!(c.witness_vertices(), &[0, 1, 2, 3]);
        c.revalidate().unwrap();
    }

    #[test]
    fn k1_is_a_leaf() {
        let c = classify(&Graph::empty(1).unwrap(), ClassifyOptions::default()).unwrap();
        assert_eq!(c.verdict, Verdict::UniversallyKoszul);
        let Certificate::Join { decomposition } = &c.certificate else { panic!() };
        assert_eq!(decomposition.root, Some(JoinNode::Leaf { vertex: 0 }));
        assert!(c.consequences.is_none());
    }

    #[test]
    fn consequences_respect_the_cap() {
        let g = Graph::empty(15).unwrap();
        assert!(matches!(classify(&g, full()), Err(WorkbenchError::CapExceeded { .. })));
        assert!(classify(&g, ClassifyOptions::default()).is_ok());
    }

    #[test]
    fn json_round_trip_revalidates_and_tampering_is_caught() {
        let c = classify(&Graph::two_k2(), full()).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: Classification = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        back.revalidate().unwrap();

        let mut forged = back.clone();
        forged.verdict = Verdict::UniversallyKoszul;
        assert!(forged.revalidate().is_err());

        let mut forged = back;
        forged.graph6 = emit_graph6(&Graph::cycle(4).unwrap());
        assert!(forged.revalidate().is_err());
    }
}
