use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::rational::{check_unit, fmt_rational, in_unit_interval, one, zero, Rational};

/// A finite chain `0 = v_0 < v_1 < ... < v_k = 1` standing in for `[0,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridChain {
    values: Vec<Rational>,
}

impl GridChain {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.len() < 2 {
            return Err(LabError::InvalidChain("a chain needs at least the points 0 and 1".into()));
        }
        if values[0] != zero() || values[values.len() - 1] != one() {
            return Err(LabError::InvalidChain("a chain must start at 0 and end at 1".into()));
        }
        for w in values.windows(2) {
            if w[0] >= w[1] {
                return Err(LabError::InvalidChain(format!(
                    "values must be strictly increasing ({} !< {})",
                    w[0], w[1]
                )));
            }
        }
        Ok(GridChain { values })
    }

    /// `{k/m : 0 <= k <= m}`.
    pub fn uniform(m: u32) -> Self {
        GridChain::new(crate::tnorm::uniform_grid(m.max(1))).expect("uniform grids are chains")
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, x: &Rational) -> Option<usize> {
        self.values.binary_search(x).ok()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.index_of(x).is_some()
    }
}

impl fmt::Display for GridChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(fmt_rational).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A `[0,1]`-valued function on the finite space `{0, ..., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridFunction {
    #[serde(with = "crate::rational::serde_str_vec")]
    values: Vec<Rational>,
}

impl GridFunction {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        for (i, v) in values.iter().enumerate() {
            check_unit(v, &format!("values[{i}]"))?;
        }
        Ok(GridFunction { values })
    }

    pub(crate) fn new_unchecked(values: Vec<Rational>) -> Self {
        debug_assert!(values.iter().all(in_unit_interval));
        GridFunction { values }
    }

    /// The constant function `c_X` on `n` points.
    pub fn constant(c: Rational, n: usize) -> Result<Self> {
        check_unit(&c, "constant")?;
        Ok(GridFunction { values: vec![c; n] })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn at(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    pub fn leq(&self, other: &GridFunction) -> Result<bool> {
        same_len(self, other)?;
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.values.iter().map(fmt_rational).collect()
    }
}

impl fmt::Display for GridFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

fn same_len(f: &GridFunction, g: &GridFunction) -> Result<()> {
    if f.len() != g.len() {
        return Err(LabError::LengthMismatch {
            left: f.len(),
            right: g.len(),
        });
    }
    Ok(())
}

/// `(f(i) - f(j)) * (g(i) - g(j)) >= 0` for every index pair.
pub fn comonotone_finite(f: &GridFunction, g: &GridFunction) -> Result<bool> {
    same_len(f, g)?;
    Ok(comonotone_witness(f.values(), g.values()).is_none())
}

/// First index pair `(i, j)`, `i < j`, where `f` and `g` order the points oppositely.
pub fn comonotone_witness<T: Ord>(f: &[T], g: &[T]) -> Option<(usize, usize)> {
    for i in 0..f.len() {
        for j in (i + 1)..f.len() {
            let df = f[i].cmp(&f[j]);
            let dg = g[i].cmp(&g[j]);
            if df != std::cmp::Ordering::Equal && dg != std::cmp::Ordering::Equal && df != dg {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn join_finite(f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    same_len(f, g)?;
    Ok(GridFunction {
        values: f.values.iter().zip(&g.values).map(|(a, b)| a.max(b).clone()).collect(),
    })
}

pub fn meet_finite(f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    same_len(f, g)?;
    Ok(GridFunction {
        values: f.values.iter().zip(&g.values).map(|(a, b)| a.min(b).clone()).collect(),
    })
}
