//! Exhaustive enumeration of grid functionals and the finite-space census of
//! comonotone maxitivity versus monotonicity.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use super::functional::{Functional, GridDomain};
use super::grid::{GridChain, GridFunction};
use crate::error::{LabError, Result};
use crate::rational::{fmt_rational, Rational};
use crate::report::{Status, VerificationReport};

/// A total map from the grid domain to chain values, stored as chain indices.
#[derive(Debug, Clone)]
pub struct TabulatedFunctional {
    domain: Arc<GridDomain>,
    table: Vec<u8>,
}

impl TabulatedFunctional {
    pub fn new(domain: Arc<GridDomain>, table: Vec<u8>) -> Result<Self> {
        if table.len() != domain.len() {
            return Err(LabError::LengthMismatch {
                left: domain.len(),
                right: table.len(),
            });
        }
        if table.iter().any(|&v| v as usize >= domain.chain().len()) {
            return Err(LabError::InvalidFunction("table value outside the chain".into()));
        }
        Ok(TabulatedFunctional { domain, table })
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn domain(&self) -> &GridDomain {
        &self.domain
    }

    pub fn value_at(&self, i: usize) -> &Rational {
        &self.domain.chain().values()[self.table[i] as usize]
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..self.table.len())
            .map(|i| json!([self.domain.function(i).to_strings(), fmt_rational(self.value_at(i))]))
            .collect();
        Value::Array(entries)
    }
}

impl Functional for TabulatedFunctional {
    fn eval(&self, f: &GridFunction) -> Result<Rational> {
        self.domain
            .index_of(f)
            .map(|i| self.value_at(i).clone())
            .ok_or_else(|| LabError::OffGrid(f.to_string()))
    }

    fn label(&self) -> String {
        "tabulated".into()
    }
}

/// `|chain|^(|chain|^n)`.
pub fn functional_count(chain: &GridChain, n: usize) -> BigUint {
    let m = BigUint::from(chain.len());
    let domain = m.pow(n as u32);
    match domain.to_u32() {
        Some(d) => m.pow(d),
        // never materialized; report a saturated count rather than allocate
        None => BigUint::from(u64::MAX),
    }
}

fn check_budget(chain: &GridChain, n: usize, budget: u64) -> Result<u64> {
    let count = functional_count(chain, n);
    match count.to_u64() {
        Some(c) if c <= budget => Ok(c),
        _ => Err(LabError::BudgetExceeded {
            count: count.to_string(),
            budget,
        }),
    }
}

fn decode_table(mut k: u64, m: u64, len: usize, out: &mut [u8]) {
    for slot in out[..len].iter_mut().rev() {
        *slot = (k % m) as u8;
        k /= m;
    }
}

/// Every functional on the grid, in lexicographic table order (the table
/// entry of the first grid function is most significant).
pub struct FunctionalEnumerator {
    domain: Arc<GridDomain>,
    next: u64,
    total: u64,
}

impl Iterator for FunctionalEnumerator {
    type Item = TabulatedFunctional;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.total {
            return None;
        }
        let mut table = vec![0u8; self.domain.len()];
        decode_table(self.next, self.domain.chain().len() as u64, table.len(), &mut table);
        self.next += 1;
        Some(TabulatedFunctional {
            domain: self.domain.clone(),
            table,
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total - self.next) as usize;
        (left, Some(left))
    }
}

pub fn enumerate_functionals(chain: &GridChain, n: usize, budget: u64) -> Result<FunctionalEnumerator> {
    let total = check_budget(chain, n, budget)?;
    Ok(FunctionalEnumerator {
        domain: Arc::new(GridDomain::new(chain, n)?),
        next: 0,
        total,
    })
}

/// How many comonotonically-maxitive-but-not-monotone tables to list.
const MAX_FINDINGS: usize = 8;

#[derive(Debug, Default, Clone)]
struct Tally {
    total: u64,
    comax: u64,
    monotone: u64,
    both: u64,
    comax_not_monotone: u64,
    monotone_not_comax: u64,
    restricted_violations: u64,
    first_monotone_not_comax: Option<u64>,
    comax_not_monotone_seen: Vec<u64>,
    first_restricted_violation: Option<u64>,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.total += other.total;
        self.comax += other.comax;
        self.monotone += other.monotone;
        self.both += other.both;
        self.comax_not_monotone += other.comax_not_monotone;
        self.monotone_not_comax += other.monotone_not_comax;
        self.restricted_violations += other.restricted_violations;
        // chunks arrive in index order, so the first seen is the minimum
        self.first_monotone_not_comax = self.first_monotone_not_comax.or(other.first_monotone_not_comax);
        self.first_restricted_violation = self.first_restricted_violation.or(other.first_restricted_violation);
        for k in other.comax_not_monotone_seen {
            if self.comax_not_monotone_seen.len() < MAX_FINDINGS {
                self.comax_not_monotone_seen.push(k);
            }
        }
    }
}

/// Classifies every functional on the grid as comonotonically maxitive and/or
/// monotone.
///
/// The report counts comonotonically maxitive functionals that are not
/// monotone (status `finding` when nonzero) and exhibits the first monotone
/// functional that is not comonotonically maxitive, with its violating pair.
/// A comonotonically maxitive functional that decreases along a comonotone
/// ordered pair is a contract failure.
pub fn theorem1_census(chain: &GridChain, n: usize, budget: u64, jobs: usize) -> Result<VerificationReport> {
    let total = check_budget(chain, n, budget)?;
    let domain = Arc::new(GridDomain::new(chain, n)?);
    let m = chain.len() as u64;
    let len = domain.len();

    // ordered pairs that are also comonotone
    let comonotone_ordered: Vec<(usize, usize)> = domain
        .ordered_pairs()
        .iter()
        .copied()
        .filter(|&(i, j)| super::grid::comonotone_witness(domain.code(i), domain.code(j)).is_none())
        .collect();

    let chunk = 4096usize;
    let tallies = crate::par::map_chunks(jobs, total as usize, chunk, |range| {
        let mut tally = Tally::default();
        let mut table = vec![0u8; len];
        for k in range {
            let k = k as u64;
            decode_table(k, m, len, &mut table);
            let comax = domain.maxitivity_violation(&table).is_none();
            let mono = domain.monotonicity_violation(&table).is_none();
            tally.total += 1;
            tally.comax += comax as u64;
            tally.monotone += mono as u64;
            tally.both += (comax && mono) as u64;
            if comax && !mono {
                tally.comax_not_monotone += 1;
                if tally.comax_not_monotone_seen.len() < MAX_FINDINGS {
                    tally.comax_not_monotone_seen.push(k);
                }
            }
            if mono && !comax {
                tally.monotone_not_comax += 1;
                tally.first_monotone_not_comax.get_or_insert(k);
            }
            if comax && comonotone_ordered.iter().any(|&(i, j)| table[i] > table[j]) {
                tally.restricted_violations += 1;
                tally.first_restricted_violation.get_or_insert(k);
            }
        }
        tally
    });
    let mut tally = Tally::default();
    for t in tallies {
        tally.merge(t);
    }

    let mut report = VerificationReport::new("theorem1-census", 0);
    report.count("chain_size", chain.len() as u64);
    report.count("space_size", n as u64);
    report.count("grid_functions", len as u64);
    report.count("comonotone_pairs", domain.comonotone_pairs().len() as u64);
    report.count("total", tally.total);
    report.count("comonotonically_maxitive", tally.comax);
    report.count("monotone", tally.monotone);
    report.count("comonotonically_maxitive_and_monotone", tally.both);
    report.count("comonotonically_maxitive_not_monotone", tally.comax_not_monotone);
    report.count("monotone_not_comonotonically_maxitive", tally.monotone_not_comax);
    report.count("restricted_monotonicity_violations", tally.restricted_violations);

    let tab = |k: u64| {
        let mut table = vec![0u8; len];
        decode_table(k, m, len, &mut table);
        TabulatedFunctional {
            domain: domain.clone(),
            table,
        }
    };
    let pair_json = |f: &TabulatedFunctional, i: usize, j: usize| {
        json!({
            "f": domain.function(i).to_strings(),
            "g": domain.function(j).to_strings(),
            "F(f)": fmt_rational(f.value_at(i)),
            "F(g)": fmt_rational(f.value_at(j)),
        })
    };

    if let Some(k) = tally.first_monotone_not_comax {
        let f = tab(k);
        let (i, j) = domain.maxitivity_violation(f.table()).expect("classified as not maxitive");
        let join = super::grid::join_finite(domain.function(i), domain.function(j))?;
        let mut pair = pair_json(&f, i, j);
        pair["F(f v g)"] = json!(fmt_rational(&f.eval(&join)?));
        report.witnesses.push(json!({
            "kind": "monotone_not_comonotonically_maxitive",
            "table_index": k,
            "table": f.to_json(),
            "pair": pair,
        }));
    } else {
        report.note(
            "no monotone functional fails comonotonic maxitivity on this grid; every comonotone pair here is pointwise ordered or the grid is too coarse to separate the properties",
        );
    }

    for &k in &tally.comax_not_monotone_seen {
        let f = tab(k);
        let (i, j) = domain.monotonicity_violation(f.table()).expect("classified as not monotone");
        report.witnesses.push(json!({
            "kind": "comonotonically_maxitive_not_monotone",
            "table_index": k,
            "table": f.to_json(),
            "pair": pair_json(&f, i, j),
        }));
    }
    if tally.comax_not_monotone > 0 {
        report.status = Status::Finding;
        report.note("comonotonically maxitive functionals that are not monotone exist on this grid");
    } else {
        report.note("every comonotonically maxitive functional on this grid is monotone");
    }

    if let Some(k) = tally.first_restricted_violation {
        let f = tab(k);
        let &(i, j) = comonotone_ordered
            .iter()
            .find(|&&(i, j)| f.table()[i] > f.table()[j])
            .expect("classified as violating");
        report.fail(json!({
            "kind": "comonotone_ordered_pair_decreases",
            "table_index": k,
            "table": f.to_json(),
            "pair": pair_json(&f, i, j),
        }));
    }
    Ok(report)
}
