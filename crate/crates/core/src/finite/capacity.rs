use std::collections::BTreeMap;

use crate::error::{LabError, Result};
use crate::rational::{check_unit, fmt_rational, one, zero, Rational};

/// Largest space a capacity table is built for (`2^n` entries).
pub const MAX_CAPACITY_POINTS: usize = 16;

/// A monotone set function on `{0, ..., n-1}` with `mu(empty) = 0` and
/// `mu(everything) = 1`. Subsets are bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Capacity {
    n: usize,
    mu: Vec<Rational>,
}

impl Capacity {
    pub fn new(n: usize, mu: Vec<Rational>) -> Result<Self> {
        if n == 0 || n > MAX_CAPACITY_POINTS {
            return Err(LabError::InvalidCapacity(format!(
                "space size {n} outside 1..={MAX_CAPACITY_POINTS}"
            )));
        }
        if mu.len() != 1 << n {
            return Err(LabError::InvalidCapacity(format!(
                "expected {} subset values, got {}",
                1usize << n,
                mu.len()
            )));
        }
        for (mask, v) in mu.iter().enumerate() {
            check_unit(v, &format!("mu({})", subset_key(mask, n)))?;
        }
        if mu[0] != zero() {
            return Err(LabError::InvalidCapacity("mu(empty set) must be 0".into()));
        }
        if mu[(1 << n) - 1] != one() {
            return Err(LabError::InvalidCapacity("mu(whole space) must be 1".into()));
        }
        if let Some((a, b)) = monotonicity_violation(&mu, n) {
            return Err(LabError::InvalidCapacity(format!(
                "monotonicity violated: mu({{{}}})={} > mu({{{}}})={}",
                subset_key(a, n),
                fmt_rational(&mu[a]),
                subset_key(b, n),
                fmt_rational(&mu[b])
            )));
        }
        Ok(Capacity { n, mu })
    }

    /// Builds from `"01" -> value` style keys; every subset must be present.
    pub fn from_subset_map(n: usize, map: &BTreeMap<String, Rational>) -> Result<Self> {
        if n == 0 || n > 10 {
            return Err(LabError::InvalidCapacity(format!(
                "subset-string keys support 1..=10 points, got {n}"
            )));
        }
        let mut mu = vec![None; 1 << n];
        for (key, v) in map {
            let mask = parse_subset_key(key, n)?;
            if mu[mask].is_some() {
                return Err(LabError::InvalidCapacity(format!("duplicate subset {key:?}")));
            }
            mu[mask] = Some(v.clone());
        }
        let mu = mu
            .into_iter()
            .enumerate()
            .map(|(mask, v)| {
                v.ok_or_else(|| {
                    LabError::InvalidCapacity(format!("missing subset {:?}", subset_key(mask, n)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Capacity::new(n, mu)
    }

    /// The capacity that is 1 on the whole space and 0 elsewhere.
    pub fn minimal(n: usize) -> Self {
        let mut mu = vec![zero(); 1 << n];
        mu[(1 << n) - 1] = one();
        Capacity { n, mu }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, mask: usize) -> &Rational {
        &self.mu[mask]
    }

    pub fn to_subset_map(&self) -> BTreeMap<String, String> {
        self.mu
            .iter()
            .enumerate()
            .map(|(mask, v)| (subset_key(mask, self.n), fmt_rational(v)))
            .collect()
    }
}

/// Sorted index string for a subset, e.g. `{0,2}` -> `"02"`.
pub fn subset_key(mask: usize, n: usize) -> String {
    (0..n).filter(|i| mask >> i & 1 == 1).map(|i| i.to_string()).collect()
}

fn parse_subset_key(key: &str, n: usize) -> Result<usize> {
    let mut mask = 0usize;
    let mut last: Option<u32> = None;
    for ch in key.chars() {
        let d = ch
            .to_digit(10)
            .filter(|&d| (d as usize) < n)
            .ok_or_else(|| LabError::InvalidCapacity(format!("bad subset key {key:?}")))?;
        if last.is_some_and(|l| l >= d) {
            return Err(LabError::InvalidCapacity(format!(
                "subset key {key:?} must list indices in strictly increasing order"
            )));
        }
        last = Some(d);
        mask |= 1 << d;
    }
    Ok(mask)
}

/// First `(A, B)` with `A` a maximal proper subset of `B` and `mu(A) > mu(B)`.
fn monotonicity_violation(mu: &[Rational], n: usize) -> Option<(usize, usize)> {
    for b in 0..mu.len() {
        for i in 0..n {
            if b >> i & 1 == 1 {
                let a = b & !(1 << i);
                if mu[a] > mu[b] {
                    return Some((a, b));
                }
            }
        }
    }
    None
}

/// Every capacity on `n` points whose values lie in `values`
/// (which must contain 0 and 1). Ordered lexicographically by mask.
pub fn enumerate_capacities(n: usize, values: &[Rational]) -> Result<Vec<Capacity>> {
    if n == 0 || n > 4 {
        return Err(LabError::InvalidCapacity(format!(
            "capacity enumeration supports 1..=4 points, got {n}"
        )));
    }
    let mut values: Vec<Rational> = values.to_vec();
    values.sort();
    values.dedup();
    if !values.contains(&zero()) || !values.contains(&one()) {
        return Err(LabError::InvalidCapacity("value set must contain 0 and 1".into()));
    }
    let full = (1usize << n) - 1;
    let mut out = Vec::new();
    let mut mu = vec![zero(); 1 << n];
    mu[full] = one();
    fill(1, n, full, &values, &mut mu, &mut out);
    Ok(out)
}

fn fill(
    mask: usize,
    n: usize,
    full: usize,
    values: &[Rational],
    mu: &mut Vec<Rational>,
    out: &mut Vec<Capacity>,
) {
    if mask == full {
        // the whole space is fixed at 1, which dominates every value
        out.push(Capacity { n, mu: mu.clone() });
        return;
    }
    // all maximal proper subsets of `mask` have smaller masks, so they are fixed
    let floor = (0..n)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| mu[mask & !(1 << i)].clone())
        .max()
        .unwrap_or_else(zero);
    for v in values.iter().filter(|v| **v >= floor) {
        mu[mask] = v.clone();
        fill(mask + 1, n, full, values, mu, out);
    }
}
