use thiserror::Error;

/// Errors raised by the computational modules.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("invalid group specification: {0}")]
    InvalidSpec(String),

    #[error("action is not by automorphisms: {0}")]
    InvalidAction(String),

    #[error("extension cocycle is not normalized at ({g}, {h})")]
    NotNormalized { g: usize, h: usize },

    #[error("cocycle identity fails at ({g}, {h}, {k})")]
    CocycleIdentity { g: usize, h: usize, k: usize },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("size bound exceeded: {what} has order {order}, bound is {bound}")]
    SizeBound {
        what: String,
        order: usize,
        bound: usize,
    },

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("centralizer character is not a homomorphism at g = {g}, h1 = {h1}, h2 = {h2}")]
    NotAHomomorphism { g: usize, h1: usize, h2: usize },

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("membership failure: {0}")]
    Membership(String),

    #[error("subgroup is not abelian")]
    NotAbelian,

    #[error("element is not unitary: {0}")]
    NotUnitary(String),

    #[error("no suitable prime in range {lo}..{hi}")]
    NoPrime { lo: u64, hi: u64 },

    #[error("non-integral structure constant at ({i}, {j}, {k}): {value}")]
    NonIntegral {
        i: usize,
        j: usize,
        k: usize,
        value: String,
    },

    #[error("support touches the truncation boundary (max safe step {max_safe})")]
    Truncation { max_safe: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
