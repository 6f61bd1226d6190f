//! File formats, corpora, the top-level classifier and corpus verification
//! reports for `koszulgraph-core`.

pub mod classify;
pub mod enumerate;
pub mod error;
pub mod graph6;
pub mod report;
pub mod text;

pub use classify::{classify, Certificate, Classification, ClassifyOptions, Consequences, Verdict};
pub use enumerate::{canonical_classes, canonical_form, enumerate_graphs, Mode};
pub use error::WorkbenchError;
pub use graph6::{emit_graph6, parse_graph6};
pub use report::{run_verification, Anomaly, Check, CorpusReport, VerificationConfig};
pub use text::{emit_dot, emit_edgelist, parse_edgelist};
