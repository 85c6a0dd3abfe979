//! Structured exhaustive families of representable functions and the
//! comonotone pairs among them.

use std::collections::BTreeSet;

use super::comonotone::comonotone_omega;
use super::function::OmegaFunction;
use super::point::{sequence_point, OmegaPoint};
use crate::rational::{one, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct FamilyParams {
    pub prefix_max: usize,
    /// Values allowed at `P`, on the prefix, at the first tail point and at the limit.
    pub grid: Vec<Rational>,
}

/// Every canonical function with prefix length `<= prefix_max` whose value at
/// `P`, prefix values, first tail value and limit all lie on the grid.
/// Sorted and duplicate-free.
pub fn structured_family(params: &FamilyParams) -> Vec<OmegaFunction> {
    let mut out = BTreeSet::new();
    let grid = &params.grid;
    for n in 0..=params.prefix_max {
        let gap = one() - sequence_point(n as u64 + 1);
        let mut prefixes: Vec<Vec<Rational>> = vec![Vec::new()];
        for _ in 0..n {
            prefixes = prefixes
                .into_iter()
                .flat_map(|p| {
                    grid.iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(v.clone());
                        q
                    })
                })
                .collect();
        }
        for start in grid {
            for limit in grid {
                let alpha = (limit - start) / &gap;
                let beta = limit - &alpha;
                for v_p in grid {
                    for prefix in &prefixes {
                        if let Ok(f) = OmegaFunction::new(v_p.clone(), prefix.clone(), alpha.clone(), beta.clone()) {
                            out.insert(f);
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Points used by the sign-profile pre-filter.
const PROFILE_INDICES: u64 = 4;

/// Orderings of a function on a few fixed points. Two functions whose
/// profiles disagree somewhere are certainly not comonotone, so the exact
/// decision only runs on pairs that pass.
#[derive(Debug, Clone)]
pub struct SignProfile(Vec<i8>);

impl SignProfile {
    pub fn of(f: &OmegaFunction) -> Self {
        let mut pts = vec![OmegaPoint::P];
        pts.extend((1..=PROFILE_INDICES).map(OmegaPoint::Index));
        pts.push(OmegaPoint::Limit);
        let vals: Vec<Rational> = pts.iter().map(|&x| f.eval(x)).collect();
        let mut signs = Vec::with_capacity(vals.len() * vals.len() / 2);
        for i in 0..vals.len() {
            for j in (i + 1)..vals.len() {
                signs.push(vals[i].cmp(&vals[j]) as i8);
            }
        }
        SignProfile(signs)
    }

    pub fn may_be_comonotone(&self, other: &SignProfile) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a * b >= 0)
    }
}

/// Index pairs `(i, j)`, `i <= j`, of comonotone functions in `family`,
/// restricted to rows `rows`.
pub fn comonotone_pairs_in_rows(
    family: &[OmegaFunction],
    profiles: &[SignProfile],
    rows: std::ops::Range<usize>,
) -> (u64, Vec<(usize, usize)>) {
    let mut considered = 0;
    let mut out = Vec::new();
    for i in rows {
        for j in i..family.len() {
            considered += 1;
            if profiles[i].may_be_comonotone(&profiles[j]) && comonotone_omega(&family[i], &family[j]).is_comonotone() {
                out.push((i, j));
            }
        }
    }
    (considered, out)
}
