//! Exhaustive-plus-sampled verification that `nu` is comonotonically maxitive
//! but not monotone, with each pair tagged by the case of the argument it
//! exercises.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::family::{comonotone_pairs_in_rows, structured_family, FamilyParams, SignProfile};
use super::function::OmegaFunction;
use super::generate::{generate_comonotone_pair, sample_seed, GeneratorParams};
use super::lattice::{attained_max, join, leq};
use super::membership::{classify_pair, membership, nu_from_flags, MembershipFlags, ProofBranch};
use crate::error::Result;
use crate::par::map_chunks;
use crate::rational::{fmt_rational, rat};
use crate::report::VerificationReport;

pub const REPRESENTABLE_CLASS_NOTE: &str = "functions range over the representable class (finite prefix plus affine tail on the sequence), a proper subset of C(X,[0,1]); results are exact on that class only";

const MAX_WITNESSES: usize = 20;

#[derive(Debug, Clone)]
pub struct Theorem2Params {
    pub seed: u64,
    pub samples: u64,
    pub family: FamilyParams,
    pub generator: GeneratorParams,
    pub jobs: usize,
}

impl Default for Theorem2Params {
    fn default() -> Self {
        Theorem2Params {
            seed: 0,
            samples: 10_000,
            family: FamilyParams {
                prefix_max: 2,
                grid: (0..=4).map(|k| rat(k, 4)).collect(),
            },
            generator: GeneratorParams::default(),
            jobs: 1,
        }
    }
}

#[derive(Debug, Default)]
struct PairTally {
    checked: u64,
    violations: u64,
    step_violations: u64,
    restricted_checks: u64,
    restricted_violations: u64,
    branches: BTreeMap<&'static str, u64>,
    sub_branches: BTreeMap<&'static str, u64>,
    witnesses: Vec<Value>,
}

impl PairTally {
    fn merge(&mut self, other: PairTally) {
        self.checked += other.checked;
        self.violations += other.violations;
        self.step_violations += other.step_violations;
        self.restricted_checks += other.restricted_checks;
        self.restricted_violations += other.restricted_violations;
        for (k, v) in other.branches {
            *self.branches.entry(k).or_default() += v;
        }
        for (k, v) in other.sub_branches {
            *self.sub_branches.entry(k).or_default() += v;
        }
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
    }

    fn witness(&mut self, w: Value) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    /// Checks one comonotone pair.
    fn check(&mut self, source: &str, f: &OmegaFunction, g: &OmegaFunction, mf: MembershipFlags, mg: MembershipFlags) {
        self.checked += 1;
        let h = join(f, g);
        let mh = membership(&h);
        let (nf, ng, nh) = (nu_from_flags(mf), nu_from_flags(mg), nu_from_flags(mh));
        let branch = classify_pair(mf, mg);
        *self.branches.entry(branch.key()).or_default() += 1;

        let pair = || {
            json!({
                "source": source,
                "f": f.to_json(),
                "g": g.to_json(),
                "join": h.to_json(),
                "nu": [fmt_rational(&nf), fmt_rational(&ng), fmt_rational(&nh)],
                "branch": branch.key(),
            })
        };

        if nh != nf.clone().max(ng.clone()) {
            self.violations += 1;
            let mut w = pair();
            w["kind"] = json!("maxitivity");
            self.witness(w);
        }

        if let Some(step) = self.step_failure(branch, f, g, mf, mg, mh) {
            self.step_violations += 1;
            let mut w = pair();
            w["kind"] = json!("proof_step");
            w["step"] = json!(step);
            self.witness(w);
        }

        // a comonotonically maxitive functional is monotone on comonotone pairs
        for (a, b, na, nb) in [(f, g, &nf, &ng), (g, f, &ng, &nf)] {
            if leq(a, b) {
                self.restricted_checks += 1;
                if na > nb {
                    self.restricted_violations += 1;
                    let mut w = pair();
                    w["kind"] = json!("restricted_monotonicity");
                    self.witness(w);
                }
            }
        }
    }

    /// The membership of the join predicted by each case of the argument.
    fn step_failure(
        &mut self,
        branch: ProofBranch,
        f: &OmegaFunction,
        g: &OmegaFunction,
        mf: MembershipFlags,
        mg: MembershipFlags,
        mh: MembershipFlags,
    ) -> Option<&'static str> {
        match branch {
            ProofBranch::BothF2 => (!(mh.in_f1 && mh.in_f2)).then_some("join of two F2 members in G must lie in F1 ∩ F2"),
            ProofBranch::F2F3 => {
                let (a, b) = if mf.in_f2 && mg.in_f3 { (f, g) } else { (g, f) };
                let m = attained_max(b).value;
                if *a.v_p() >= m {
                    *self.sub_branches.entry("f_p_ge_m").or_default() += 1;
                    (!(mh.in_f1 && mh.in_f2)).then_some("f(p) >= max g must put the join in F2")
                } else {
                    *self.sub_branches.entry("f_p_lt_m").or_default() += 1;
                    (!(mh.in_f1 && mh.in_f3)).then_some("f(p) <= max g must put the join in F3")
                }
            }
            ProofBranch::BothF3 => (!(mh.in_f1 && mh.in_f3)).then_some("join of two F3 members in G must lie in F1 ∩ F3"),
            ProofBranch::NotF1 => mh.in_f1.then_some("a join with a member outside F1 must leave F1"),
            ProofBranch::F1MinusF2F3 => (mh.in_f2 || mh.in_f3).then_some("the join must stay outside F2 ∪ F3"),
        }
    }
}

/// Runs the full check:
///
/// 1. the non-monotonicity witness `f_0 <= f_1`, `nu(f_1) = 0 < 1 = nu(f_0)`;
/// 2. `nu(f v g) = max(nu(f), nu(g))` for every comonotone pair of the
///    structured family and for `samples` generated comonotone pairs;
/// 3. every case of the argument is exercised at least once.
pub fn theorem2_suite(params: &Theorem2Params) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("theorem2-counterexample", params.seed);
    report.note(REPRESENTABLE_CLASS_NOTE);

    let f0 = OmegaFunction::make_f(0)?;
    let f1 = OmegaFunction::make_f(1)?;
    let (nu0, nu1) = (nu_from_flags(membership(&f0)), nu_from_flags(membership(&f1)));
    let ordered = leq(&f0, &f1);
    let non_monotone = ordered && nu1 == crate::rational::zero() && nu0 == crate::rational::one();
    report.count("non_monotone_witness", non_monotone as u64);
    let witness = json!({
        "kind": "non_monotonicity",
        "f_0": f0.to_json(),
        "f_1": f1.to_json(),
        "f_0 <= f_1": ordered,
        "nu(f_0)": fmt_rational(&nu0),
        "nu(f_1)": fmt_rational(&nu1),
    });
    if non_monotone {
        report.witnesses.push(witness);
    } else {
        report.fail(witness);
    }

    // structured family
    let family = structured_family(&params.family);
    let profiles: Vec<SignProfile> = family.iter().map(SignProfile::of).collect();
    let flags: Vec<MembershipFlags> = family.iter().map(membership).collect();
    let rows_per_chunk = 64;
    let parts = map_chunks(params.jobs, family.len(), rows_per_chunk, |rows| {
        let (considered, pairs) = comonotone_pairs_in_rows(&family, &profiles, rows);
        let mut tally = PairTally::default();
        for (i, j) in pairs {
            tally.check("structured", &family[i], &family[j], flags[i], flags[j]);
        }
        (considered, tally)
    });
    let mut considered = 0;
    let mut structured = PairTally::default();
    for (c, t) in parts {
        considered += c;
        structured.merge(t);
    }
    report.count("structured.functions", family.len() as u64);
    report.count("structured.pairs_considered", considered);
    report.count("structured.comonotone_pairs", structured.checked);

    // generated pairs
    let gen_parts = map_chunks(params.jobs, params.samples as usize, 256, |range| -> Result<PairTally> {
        let mut tally = PairTally::default();
        for i in range {
            let (f, g) = generate_comonotone_pair(sample_seed(params.seed, i as u64), &params.generator)?;
            let (mf, mg) = (membership(&f), membership(&g));
            tally.check("generated", &f, &g, mf, mg);
        }
        Ok(tally)
    });
    let mut generated = PairTally::default();
    for t in gen_parts {
        generated.merge(t?);
    }
    report.count("generated.comonotone_pairs", generated.checked);

    let mut all = PairTally::default();
    all.merge(structured);
    all.merge(generated);

    report.count("maxitivity.checked", all.checked);
    report.count("maxitivity.violations", all.violations);
    report.count("proof_steps.violations", all.step_violations);
    report.count("restricted_monotonicity.checked", all.restricted_checks);
    report.count("restricted_monotonicity.violations", all.restricted_violations);
    for branch in ProofBranch::ALL {
        let hits = all.branches.get(branch.key()).copied().unwrap_or(0);
        report.count(&format!("branch.{}", branch.key()), hits);
        if hits == 0 {
            report.fail(json!({"kind": "branch_not_exercised", "branch": branch.key()}));
        }
    }
    for (k, v) in &all.sub_branches {
        report.count(&format!("branch.f_in_F2_g_in_F3.{k}"), *v);
    }
    if all.violations + all.step_violations + all.restricted_violations > 0 {
        for w in all.witnesses {
            report.fail(w);
        }
    }
    Ok(report)
}

/// Membership flags and `nu` of a single function, as reported by the CLI.
pub fn describe(f: &OmegaFunction) -> Value {
    let m = membership(f);
    let max = attained_max(f);
    json!({
        "function": f.to_json(),
        "max": {"value": fmt_rational(&max.value), "site": max.site.to_string()},
        "in_F1": m.in_f1,
        "in_F2": m.in_f2,
        "in_F3": m.in_f3,
        "in_G": m.in_g,
        "nu": fmt_rational(&nu_from_flags(m)),
    })
}

