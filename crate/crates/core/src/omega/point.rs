use std::fmt;

use crate::rational::{one, rat, Rational};

/// A point of `X = {p} ∪ {1 - 1/n : n >= 1} ∪ {1}` with `p = 2`.
///
/// The derived order (`P`, then indices ascending, then `Limit`) is the
/// tie-break order used when reporting where a maximum is attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaPoint {
    /// The isolated point `p = 2`.
    P,
    /// `a_n = 1 - 1/n`, `n >= 1`; `Index(1)` is the point 0.
    Index(u64),
    /// The accumulation point 1.
    Limit,
}

impl OmegaPoint {
    /// Position on the real line.
    pub fn coordinate(self) -> Rational {
        match self {
            OmegaPoint::P => crate::rational::int(2),
            OmegaPoint::Index(n) => sequence_point(n),
            OmegaPoint::Limit => one(),
        }
    }

    pub fn parse(s: &str) -> Option<OmegaPoint> {
        match s {
            "P" => Some(OmegaPoint::P),
            "Limit" => Some(OmegaPoint::Limit),
            _ => s
                .strip_prefix("Index(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|n| n.parse::<u64>().ok())
                .filter(|&n| n >= 1)
                .map(OmegaPoint::Index),
        }
    }
}

/// `1 - 1/n`.
pub fn sequence_point(n: u64) -> Rational {
    assert!(n >= 1, "sequence indices start at 1");
    rat(n as i64 - 1, n as i64)
}

impl fmt::Display for OmegaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaPoint::P => f.write_str("P"),
            OmegaPoint::Index(n) => write!(f, "Index({n})"),
            OmegaPoint::Limit => f.write_str("Limit"),
        }
    }
}
