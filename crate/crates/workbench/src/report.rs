//! Corpus verification: classify every graph of a corpus and cross-check
//! the classification against the independent characterisations, keeping
//! counts, anomalies and timings in a [`CorpusReport`].

use std::collections::BTreeMap;
use std::io::Write;
use std::ops::RangeInclusive;
use std::time::Instant;

use koszulgraph_core::{
    betti_table_capped, complement_equivalence_check, froberg_check_capped, is_chordal, EdgeIdeal,
    FieldSpec, Graph, DEFAULT_BETTI_CAP,
};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, Classification, ClassifyOptions};
use crate::enumerate::{enumerate_graphs, Mode};
use crate::error::WorkbenchError;
use crate::graph6::emit_graph6;

pub const SCHEMA_VERSION: u32 = 1;

/// Fiber-product spot checks run on corpora with at most this many vertices.
pub const FIBER_PRODUCT_UP_TO: usize = 4;

const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// Verdict agrees with the pattern search, the certificate replays or
    /// the obstruction verifies, and the JSON form re-validates.
    Classification,
    /// (2K2,P4)-free(G) iff (C4,P4)-free(complement of G).
    ComplementEquivalence,
    /// Chordality certificates for G and its complement verify.
    ChordalityCertificates,
    /// Linear resolution iff chordal complement.
    Froberg,
    /// Universally Koszul implies a linear resolution.
    UkImpliesLinear,
    /// Betti numbers agree over the primary and the cross-check field.
    FieldAgreement,
    /// I(G) x I(H) = I(G * H) for a fixed panel of partners H.
    FiberProduct,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Classification,
        Check::ComplementEquivalence,
        Check::ChordalityCertificates,
        Check::Froberg,
        Check::UkImpliesLinear,
        Check::FieldAgreement,
        Check::FiberProduct,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationConfig {
    pub range: RangeInclusive<usize>,
    pub mode: Mode,
    pub field: FieldSpec,
    /// Betti-side checks run for `n <= betti_up_to` (0 disables them).
    pub betti_up_to: usize,
    pub cross_field: Option<FieldSpec>,
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
    pub betti_cap: usize,
}

impl VerificationConfig {
    pub fn new(range: RangeInclusive<usize>, mode: Mode) -> Self {
        VerificationConfig {
            range,
            mode,
            field: FieldSpec::Rationals,
            betti_up_to: 0,
            cross_field: None,
            jobs: None,
            betti_cap: DEFAULT_BETTI_CAP,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCounts {
    pub uk: u64,
    pub not_uk: u64,
    /// Graphs whose classification failed (each has an anomaly).
    pub unclassified: u64,
}

impl VerdictCounts {
    pub fn total(&self) -> u64 {
        self.uk + self.not_uk + self.unclassified
    }

    fn add(&mut self, other: &VerdictCounts) {
        self.uk += other.uk;
        self.not_uk += other.not_uk;
        self.unclassified += other.unclassified;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeCounts {
    pub n: usize,
    pub graphs: u64,
    #[serde(flatten)]
    pub verdicts: VerdictCounts,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckCounts {
    pub run: u64,
    pub passed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Anomaly {
    pub n: usize,
    pub graph6: String,
    pub check: Check,
    pub detail: String,
    /// The classification involved, when one was produced.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub jobs: usize,
    /// Wall-clock seconds spent in each phase, summed over chunks.
    pub phases: BTreeMap<String, f64>,
    pub wall_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub schema_version: u32,
    /// Inclusive vertex-count range; `lo > hi` is an empty corpus.
    pub range: [usize; 2],
    pub mode: Mode,
    pub field: FieldSpec,
    pub cross_field: Option<FieldSpec>,
    pub betti_up_to: usize,
    pub graphs: u64,
    pub verdicts: VerdictCounts,
    pub per_n: Vec<SizeCounts>,
    pub checks: BTreeMap<Check, CheckCounts>,
    pub anomalies: Vec<Anomaly>,
    pub timing: Timing,
}

impl CorpusReport {
    pub fn is_clean(&self) -> bool {
        self.anomalies.is_empty() && self.checks.values().all(|c| c.run == c.passed)
    }

    pub fn to_json(&self) -> Result<String, WorkbenchError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One row per vertex count plus a `total` row.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), WorkbenchError> {
        #[derive(Serialize)]
        struct Row<'a> {
            n: &'a str,
            graphs: u64,
            uk: u64,
            not_uk: u64,
            unclassified: u64,
            anomalies: usize,
        }
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| WorkbenchError::Io(std::io::Error::other(e));
        for s in &self.per_n {
            let n = s.n.to_string();
            w.serialize(Row {
                n: &n,
                graphs: s.graphs,
                uk: s.verdicts.uk,
                not_uk: s.verdicts.not_uk,
                unclassified: s.verdicts.unclassified,
                anomalies: self.anomalies.iter().filter(|a| a.n == s.n).count(),
            })
            .map_err(csv_err)?;
        }
        w.serialize(Row {
            n: "total",
            graphs: self.graphs,
            uk: self.verdicts.uk,
            not_uk: self.verdicts.not_uk,
            unclassified: self.verdicts.unclassified,
            anomalies: self.anomalies.len(),
        })
        .map_err(csv_err)?;
        w.flush()?;
        Ok(())
    }
}

/// Partners for the fiber-product spot checks: K0, K1, 2K1, K2, P3, K3.
fn fiber_partners() -> Vec<Graph> {
    vec![
        Graph::empty(0).expect("n = 0"),
        Graph::empty(1).expect("n = 1"),
        Graph::empty(2).expect("n = 2"),
        Graph::complete(2).expect("n = 2"),
        Graph::path(3).expect("n = 3"),
        Graph::complete(3).expect("n = 3"),
    ]
}

/// Per-graph results of one phase, in corpus order.
type Outcome = Vec<(Check, Result<(), String>)>;

struct Tally<'a> {
    checks: &'a mut BTreeMap<Check, CheckCounts>,
    anomalies: &'a mut Vec<Anomaly>,
}

impl Tally<'_> {
    fn record(&mut self, n: usize, g: &Graph, c: Option<&Classification>, outcome: Outcome) {
        for (check, result) in outcome {
            let counts = self.checks.entry(check).or_default();
            counts.run += 1;
            match result {
                Ok(()) => counts.passed += 1,
                Err(detail) => self.anomalies.push(Anomaly {
                    n,
                    graph6: emit_graph6(g),
                    check,
                    detail,
                    classification: c.cloned(),
                }),
            }
        }
    }
}

fn check_classification(g: &Graph) -> (Option<Classification>, Outcome) {
    match classify(g, ClassifyOptions::default()) {
        Ok(c) => {
            let reloaded = serde_json::to_string(&c)
                .and_then(|s| serde_json::from_str::<Classification>(&s))
                .map_err(|e| format!("JSON round trip: {e}"))
                .and_then(|back| {
                    if back != c {
                        return Err("JSON round trip changed the classification".into());
                    }
                    back.revalidate().map_err(|e| e.to_string())
                });
            (Some(c), vec![(Check::Classification, reloaded)])
        }
        Err(e) => (None, vec![(Check::Classification, Err(e.to_string()))]),
    }
}

fn check_complement(g: &Graph) -> Outcome {
    let equivalence = complement_equivalence_check(g).map(|_| ()).map_err(|e| e.to_string());
    let gc = g.complement();
    let certificates = if !is_chordal(g).is_valid_for(g) {
        Err("chordality certificate of G does not verify".to_string())
    } else if !is_chordal(&gc).is_valid_for(&gc) {
        Err("chordality certificate of the complement does not verify".to_string())
    } else {
        Ok(())
    };
    vec![(Check::ComplementEquivalence, equivalence), (Check::ChordalityCertificates, certificates)]
}

fn check_betti(g: &Graph, c: Option<&Classification>, cfg: &VerificationConfig) -> Outcome {
    let mut out = Outcome::new();
    let report = match froberg_check_capped(g, cfg.field, cfg.betti_cap) {
        Ok(r) => r,
        Err(e) => {
            out.push((Check::Froberg, Err(e.to_string())));
            return out;
        }
    };
    out.push((Check::Froberg, Ok(())));
    if let Some(c) = c {
        let implication = if c.verdict.is_uk() && !report.linear_resolution {
            Err("universally Koszul but the resolution is not linear".into())
        } else {
            Ok(())
        };
        out.push((Check::UkImpliesLinear, implication));
    }
    if let Some(cross) = cfg.cross_field {
        let agreement = match betti_table_capped(g, cross, cfg.betti_cap) {
            Ok(t) if t.same_numbers(&report.betti) => Ok(()),
            Ok(t) => Err(format!(
                "over {}:\n{}over {cross}:\n{}",
                cfg.field,
                report.betti.render(),
                t.render()
            )),
            Err(e) => Err(e.to_string()),
        };
        out.push((Check::FieldAgreement, agreement));
    }
    out
}

fn check_fiber_products(g: &Graph, partners: &[Graph]) -> Outcome {
    let ig = EdgeIdeal::of_graph(g);
    let result = partners.iter().try_for_each(|h| {
        let joined = g.join(h).map_err(|e| e.to_string())?;
        let product = ig.fiber_product(&EdgeIdeal::of_graph(h)).map_err(|e| e.to_string())?;
        if product == EdgeIdeal::of_graph(&joined) {
            Ok(())
        } else {
            Err(format!("fiber product with {h:?} is not the edge ideal of the join"))
        }
    });
    vec![(Check::FiberProduct, result)]
}

pub fn run_verification(cfg: &VerificationConfig) -> Result<CorpusReport, WorkbenchError> {
    let start = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cfg.jobs {
        builder = builder.num_threads(jobs.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| WorkbenchError::Io(std::io::Error::other(e)))?;

    let mut checks = BTreeMap::new();
    let mut anomalies = Vec::new();
    let mut per_n = Vec::new();
    let mut verdicts = VerdictCounts::default();
    let mut phases: BTreeMap<String, f64> = BTreeMap::new();
    let partners = fiber_partners();

    let mut timed = |phase: &str, f: &mut dyn FnMut()| {
        let t = Instant::now();
        f();
        *phases.entry(phase.to_string()).or_default() += t.elapsed().as_secs_f64();
    };

    for n in cfg.range.clone() {
        let mut graphs = enumerate_graphs(n, cfg.mode)?;
        let mut counts = VerdictCounts::default();
        let betti = n <= cfg.betti_up_to;
        let fiber = n <= FIBER_PRODUCT_UP_TO;
        loop {
            let chunk: Vec<Graph> = graphs.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            let mut classified = Vec::new();
            let mut complements = Vec::new();
            let mut bettis = Vec::new();
            let mut fibers = Vec::new();
            pool.install(|| {
                timed("classify", &mut || {
                    classified = chunk.par_iter().map(check_classification).collect();
                });
                timed("complement", &mut || {
                    complements = chunk.par_iter().map(check_complement).collect();
                });
                if betti {
                    timed("betti", &mut || {
                        bettis = chunk
                            .par_iter()
                            .zip(&classified)
                            .map(|(g, (c, _))| check_betti(g, c.as_ref(), cfg))
                            .collect();
                    });
                }
                if fiber {
                    timed("fiber_product", &mut || {
                        fibers = chunk.par_iter().map(|g| check_fiber_products(g, &partners)).collect();
                    });
                }
            });

            // single-threaded merge, in enumeration order
            let mut tally = Tally { checks: &mut checks, anomalies: &mut anomalies };
            let mut bettis = bettis.into_iter();
            let mut fibers = fibers.into_iter();
            for ((g, (c, outcome)), complement) in chunk.iter().zip(classified).zip(complements) {
                match &c {
                    Some(c) if c.verdict.is_uk() => counts.uk += 1,
                    Some(_) => counts.not_uk += 1,
                    None => counts.unclassified += 1,
                }
                tally.record(n, g, c.as_ref(), outcome);
                tally.record(n, g, c.as_ref(), complement);
                if let Some(o) = bettis.next() {
                    tally.record(n, g, c.as_ref(), o);
                }
                if let Some(o) = fibers.next() {
                    tally.record(n, g, c.as_ref(), o);
                }
            }
        }
        verdicts.add(&counts);
        per_n.push(SizeCounts { n, graphs: counts.total(), verdicts: counts });
    }

    Ok(CorpusReport {
        schema_version: SCHEMA_VERSION,
        range: [*cfg.range.start(), *cfg.range.end()],
        mode: cfg.mode,
        field: cfg.field,
        cross_field: cfg.cross_field,
        betti_up_to: cfg.betti_up_to,
        graphs: verdicts.total(),
        verdicts,
        per_n,
        checks,
        anomalies,
        timing: Timing {
            jobs: pool.current_num_threads(),
            phases,
            wall_seconds: start.elapsed().as_secs_f64(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_up_to_four_is_clean() {
        let mut cfg = VerificationConfig::new(1..=4, Mode::Labeled);
        cfg.betti_up_to = 4;
        cfg.cross_field = Some(FieldSpec::GF2);
        let r = run_verification(&cfg).unwrap();
        assert_eq!(r.graphs, 1 + 2 + 8 + 64);
        assert!(r.is_clean(), "{:?}", r.anomalies);
        assert_eq!(r.per_n.iter().map(|s| s.graphs).collect::<Vec<_>>(), vec![1, 2, 8, 64]);
        for check in Check::ALL {
            assert_eq!(r.checks[&check].run, 75, "{check:?}");
        }
        // 4 vertices: 64 graphs, of which the 12 labelled P4s are not UK
        assert_eq!(r.per_n[3].verdicts.not_uk, 12 + 3);
    }

    #[test]
    fn canonical_five_skips_betti() {
        let cfg = VerificationConfig::new(5..=5, Mode::Canonical);
        let r = run_verification(&cfg).unwrap();
        assert_eq!(r.graphs, 34);
        assert!(r.is_clean());
        assert!(!r.checks.contains_key(&Check::Froberg));
        assert!(!r.checks.contains_key(&Check::FiberProduct));
        assert!(!r.timing.phases.contains_key("betti"));
    }

    #[test]
    #[allow(clippy::reversed_empty_ranges)]
    fn empty_range() {
        let r = run_verification(&VerificationConfig::new(3..=2, Mode::Labeled)).unwrap();
        assert_eq!(r.graphs, 0);
        assert!(r.per_n.is_empty() && r.anomalies.is_empty() && r.checks.is_empty());
    }

    #[test]
    fn ordering_is_independent_of_worker_count() {
        let mut cfg = VerificationConfig::new(1..=5, Mode::Labeled);
        cfg.jobs = Some(1);
        let a = run_verification(&cfg).unwrap();
        cfg.jobs = Some(4);
        let b = run_verification(&cfg).unwrap();
        assert_eq!((a.per_n, a.checks, a.anomalies), (b.per_n, b.checks, b.anomalies));
    }

    #[test]
    fn csv_summary() {
        let r = run_verification(&VerificationConfig::new(1..=3, Mode::Labeled)).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "n,graphs,uk,not_uk,unclassified,anomalies");
        assert_eq!(lines[3], "3,8,8,0,0,0");
        assert_eq!(lines[4], "total,11,11,0,0,0");
    }

    #[test]
    fn report_json_round_trips() {
        let r = run_verification(&VerificationConfig::new(1..=3, Mode::Canonical)).unwrap();
        let mut back: CorpusReport = serde_json::from_str(&r.to_json().unwrap()).unwrap();
        // timings are floats and need not survive the decimal round trip
        assert_eq!(back.timing.phases.keys().collect::<Vec<_>>(), r.timing.phases.keys().collect::<Vec<_>>());
        back.timing = r.timing.clone();
        assert_eq!(back, r);
    }
}
