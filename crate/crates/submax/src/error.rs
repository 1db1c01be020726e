//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("element index {index} out of range for ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("k = {k} exceeds ground set size {n}")]
    KExceedsGroundSet { k: usize, n: usize },

    #[error("k must be at least 1")]
    KZero,

    #[error("ground set must be non-empty")]
    EmptyGroundSet,

    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },

    #[error("duplicate label {label:?}")]
    DuplicateLabel { label: String },

    #[error("duplicate element {element} in sequence")]
    DuplicateElement { element: usize },

    #[error("row {row} has {got} fields, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("negative entry {value} at row {row}, column {col}")]
    NegativeEntry { row: usize, col: usize, value: f64 },

    #[error("non-finite entry at row {row}, column {col}")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("negative weight {value} at index {index}")]
    NegativeWeight { index: usize, value: f64 },

    #[error("non-finite weight at index {index}")]
    NonFiniteWeight { index: usize },

    #[error("epsilon must lie in (0, 1), got {value}")]
    InvalidEpsilon { value: f64 },

    #[error("sample size must be at least 1")]
    ZeroSampleSize,

    #[error("{checker} check enumerates up to {limit} on n = {n}; exhaustive mode supports n <= {max}")]
    ExhaustiveLimit {
        checker: &'static str,
        n: usize,
        max: usize,
        limit: String,
    },

    #[error("oracle would enumerate C({n}, {k}) = {count} subsets, above the cap of {cap}")]
    OracleCap {
        n: usize,
        k: usize,
        count: String,
        cap: u64,
    },

    #[error("solve ran with k = {result_k} but the oracle ran with k = {oracle_k}")]
    KMismatch { result_k: usize, oracle_k: usize },
}
