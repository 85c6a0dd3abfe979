//! The `T*(X)` property bundle for t-normed integrals over every capacity
//! with values on the grid.

use serde_json::json;

use super::capacity::enumerate_capacities;
use super::functional::{t_star_checks_on, GridDomain, TnormedIntegral};
use super::grid::GridChain;
use crate::error::{LabError, Result};
use crate::report::VerificationReport;
use crate::tnorm::TNorm;

/// For each norm, runs normalization, comonotone maxitivity,
/// `*`-homogeneity and monotonicity on the t-normed integral of every
/// capacity on `n` points whose values lie on the chain.
///
/// A norm under which the chain is not closed (and which therefore cannot be
/// checked exhaustively on it) is skipped with a note.
pub fn integral_properties(chain: &GridChain, n: usize, norms: &[TNorm], jobs: usize) -> Result<VerificationReport> {
    let domain = GridDomain::new(chain, n)?;
    let capacities = enumerate_capacities(n, chain.values())?;
    let mut report = VerificationReport::new("integral-properties", 0);
    report.count("capacities", capacities.len() as u64);
    report.count("grid_functions", domain.len() as u64);
    report.count("comonotone_pairs", domain.comonotone_pairs().len() as u64);

    for &norm in norms {
        let key = norm.name();
        let results = crate::par::map_chunks(jobs, capacities.len(), 16, |range| {
            capacities[range]
                .iter()
                .map(|cap| {
                    let f = TnormedIntegral {
                        capacity: cap.clone(),
                        norm,
                    };
                    t_star_checks_on(&domain, &f, norm).map(|c| (cap.clone(), c))
                })
                .collect::<Vec<_>>()
        });
        let mut passed = [0u64; 4];
        let mut skipped = false;
        for r in results.into_iter().flatten() {
            let (cap, checks) = match r {
                Ok(v) => v,
                Err(LabError::ChainNotClosed { .. }) => {
                    skipped = true;
                    break;
                }
                Err(e) => return Err(e),
            };
            let named = [
                ("normalized", &checks.normalized),
                ("comonotonically_maxitive", &checks.comonotonically_maxitive),
                ("star_homogeneous", &checks.star_homogeneous),
                ("monotone", &checks.monotone),
            ];
            for (i, (label, check)) in named.iter().enumerate() {
                if check.holds {
                    passed[i] += 1;
                } else {
                    report.fail(json!({
                        "norm": key,
                        "property": label,
                        "capacity": cap.to_subset_map(),
                        "violation": check.witness.as_ref().map(|w| w.to_json()),
                    }));
                }
            }
        }
        if skipped {
            report.note(format!("{key}: chain {chain} is not closed under the norm; skipped"));
            report.count(&format!("{key}.skipped"), 1);
            continue;
        }
        report.count(&format!("{key}.normalized"), passed[0]);
        report.count(&format!("{key}.comonotonically_maxitive"), passed[1]);
        report.count(&format!("{key}.star_homogeneous"), passed[2]);
        report.count(&format!("{key}.monotone"), passed[3]);
    }
    Ok(report)
}
