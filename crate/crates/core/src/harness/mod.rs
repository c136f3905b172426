//! Orbit scans, certificate files, summaries and the example constructions.

pub mod certs;
pub mod examples;
pub mod modes;
pub mod scan;
pub mod summary;

pub use certs::{verify_certificate_file, CertFileReport};
pub use examples::{generate_example, ExampleInstance, ExampleSets, ExampleSpec};
pub use modes::{evaluate, Evaluation, ScanMode, ScanRecord, Verdict};
pub use scan::{
    canonical_orbits, feasibility_sweep, min_feasible_prime, proven_regime, scan, ScanConfig,
    ScanReport, FEASIBILITY_THEOREMS,
};
pub use summary::{summarize, Summary};
