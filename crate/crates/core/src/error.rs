use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("value {value} outside [0,1]{}", context_suffix(.context))]
    OutOfUnitInterval { value: Rational, context: String },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid grid chain: {0}")]
    InvalidChain(String),

    #[error("invalid capacity: {0}")]
    InvalidCapacity(String),

    #[error("invalid function: {0}")]
    InvalidFunction(String),

    #[error("chain is not closed under the {norm} t-norm: {left} * {right} = {product}")]
    ChainNotClosed {
        norm: &'static str,
        left: String,
        right: String,
        product: String,
    },

    #[error("functional is only tabulated on the grid; no value for {0}")]
    OffGrid(String),

    #[error("enumeration budget exceeded: {count} functionals > budget {budget}")]
    BudgetExceeded { count: String, budget: u64 },

    #[error("generated pair failed comonotonicity validation: {0}")]
    GeneratorInvariant(String),

    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
}

fn context_suffix(context: &str) -> String {
    if context.is_empty() {
        String::new()
    } else {
        format!(" ({context})")
    }
}

pub type Result<T, E = LabError> = std::result::Result<T, E>;
