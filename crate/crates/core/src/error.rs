//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be an odd prime, got {0}")]
    NotOddPrime(u64),

    #[error("floor must be >= 1, got {0}")]
    InvalidFloor(u64),

    #[error("invalid vertex: floor {floor}, class {class_k}, position {pos}")]
    InvalidVertex { floor: u64, class_k: u64, pos: u64 },

    #[error("not a diagram vertex: floor {floor}, size {size}, leg {leg}")]
    NotADiagramVertex { floor: u64, size: u64, leg: u64 },

    #[error("{what} out of range: {value} (max {max})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        max: u64,
    },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("operation undefined for top-class vertex {0}")]
    TopClass(String),

    #[error("floor 1 has no removal edges")]
    FloorOne,

    #[error("components are undefined for class-0 and top-class vertices")]
    NoComponents,

    #[error("block size mismatch: {left} vs {right}")]
    SizeMismatch { left: u64, right: u64 },

    #[error("digit {index} = {got} does not encode the vertex position (expected {expected})")]
    DigitMismatch {
        index: usize,
        expected: u64,
        got: u64,
    },

    #[error("enumeration needs {required} paths, over the budget of {budget}")]
    BudgetExceeded { required: String, budget: u64 },

    #[error("position {pos} not covered by exactly one case (classifier bug)")]
    Uncovered { pos: u64 },

    #[error("no generating function for case {0}")]
    NoGeneratingFunction(String),

    #[error("non-integer generating-function coefficient at n = {n}")]
    NonIntegerCoefficient { n: u64 },

    #[error("methods disagree at s = {s}: {left} vs {right}")]
    MethodMismatch { s: u64, left: String, right: String },
}

pub type Result<T> = std::result::Result<T, Error>;
