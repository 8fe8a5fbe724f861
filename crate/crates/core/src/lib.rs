//! Robust case-control association tests for single SNPs when the marker is
//! only in partial linkage disequilibrium with the functional locus.
//!
//! The crate covers the LD-to-penetrance mapping, the single-marker tests
//! (trend, Pearson, MAX3, MIN2, HWDTT, GMS), their null distributions and a
//! Monte Carlo harness for ranking and model-selection studies.

pub mod counts;
pub mod error;
pub mod ld;
pub mod null;
pub mod quadrature;
pub mod rng;
pub mod sim;
pub mod special;
pub mod stats;

pub use counts::GenotypeCounts;
pub use error::{Error, Result};
pub use ld::{
    allele_correlation, baseline_penetrance, case_control_dists, functional_penetrances,
    grr_from_model, haplotype_table, hwd_coefficients, marker_grr, marker_penetrances,
    transition_matrix, AlleleFreqs, GeneticModel, GrrPair, HaplotypeTable, HwdPair,
    PenetranceTriple, TransitionMatrix,
};
pub use null::{
    bootstrap_null, bootstrap_pvalue, min2_joint_cdf, min2_pvalue, BootstrapConfig,
    BootstrapMethod, JointCdfQuery,
};
pub use sim::{
    run_model_selection_study, run_scan, CriteriaReport, ModelSelectionConfig,
    ModelSelectionReport, ScanConfig, ScanMethod, TrueSnpMix, TrueSnpSpec,
};
pub use stats::{
    catt, gms, hwdtt, max3, min2, pearson, GmsResult, Method, SelectedModel, TestResult,
    DEFAULT_GMS_THRESHOLD,
};
