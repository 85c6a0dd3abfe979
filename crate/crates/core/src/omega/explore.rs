//! Search for a normalized, comonotonically maxitive functional that is not
//! monotone, among simple modifications of `nu`.
//!
//! Every candidate that survives is only known to pass the tested pairs; the
//! search never settles the question, so the report is always `inconclusive`.

use serde_json::{json, Value};

use super::comonotone::comonotone_omega;
use super::family::{comonotone_pairs_in_rows, structured_family, FamilyParams, SignProfile};
use super::function::OmegaFunction;
use super::generate::{generate_comonotone_pair, sample_seed, GeneratorParams};
use super::lattice::{join, leq};
use super::membership::membership;
use super::point::OmegaPoint;
use super::suite::REPRESENTABLE_CLASS_NOTE;
use crate::error::Result;
use crate::rational::{fmt_rational, one, zero, Rational};
use crate::report::{Status, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Combinator {
    /// `f(x) ∨ (f(y) if f ∉ G else 0)`
    JoinOutsideG,
    /// `f(x) ∨ (f(y) if f ∈ G else 0)`
    JoinInsideG,
    /// `f(x) ∧ (f(y) if f ∉ G else 1)`
    MeetOutsideG,
    /// `f(x) ∧ (f(y) if f ∈ G else 1)`
    MeetInsideG,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Candidate {
    Nu,
    Eval(OmegaPoint),
    Gated {
        base: OmegaPoint,
        extra: OmegaPoint,
        combinator: Combinator,
    },
}

impl Candidate {
    pub fn label(&self) -> String {
        match self {
            Candidate::Nu => "nu".into(),
            Candidate::Eval(x) => format!("f({x})"),
            Candidate::Gated { base, extra, combinator } => match combinator {
                Combinator::JoinOutsideG => format!("f({base}) v [f not in G]*f({extra})"),
                Combinator::JoinInsideG => format!("f({base}) v [f in G]*f({extra})"),
                Combinator::MeetOutsideG => format!("f({base}) ^ [f not in G]->f({extra})"),
                Combinator::MeetInsideG => format!("f({base}) ^ [f in G]->f({extra})"),
            },
        }
    }

    pub fn eval(&self, f: &OmegaFunction) -> Rational {
        self.eval_with(f, membership(f).in_g)
    }

    fn eval_with(&self, f: &OmegaFunction, in_g: bool) -> Rational {
        match self {
            Candidate::Nu => {
                if in_g {
                    zero()
                } else {
                    one()
                }
            }
            Candidate::Eval(x) => f.eval(*x),
            Candidate::Gated { base, extra, combinator } => {
                let b = f.eval(*base);
                let e = f.eval(*extra);
                match combinator {
                    Combinator::JoinOutsideG => b.max(if in_g { zero() } else { e }),
                    Combinator::JoinInsideG => b.max(if in_g { e } else { zero() }),
                    Combinator::MeetOutsideG => b.min(if in_g { one() } else { e }),
                    Combinator::MeetInsideG => b.min(if in_g { e } else { one() }),
                }
            }
        }
    }
}

/// The default candidate list: `nu`, the point evaluations, and every
/// gated combination of two distinct evaluation points.
pub fn default_candidates() -> Vec<Candidate> {
    let points = [OmegaPoint::P, OmegaPoint::Index(1), OmegaPoint::Index(2), OmegaPoint::Limit];
    let mut out = vec![Candidate::Nu];
    out.extend(points.iter().map(|&x| Candidate::Eval(x)));
    for &base in &points {
        for &extra in &points {
            if base == extra {
                continue;
            }
            for combinator in [
                Combinator::JoinOutsideG,
                Combinator::JoinInsideG,
                Combinator::MeetOutsideG,
                Combinator::MeetInsideG,
            ] {
                out.push(Candidate::Gated { base, extra, combinator });
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct ExploreParams {
    pub seed: u64,
    pub samples: u64,
    pub family: FamilyParams,
    pub generator: GeneratorParams,
}

impl Default for ExploreParams {
    fn default() -> Self {
        ExploreParams {
            seed: 0,
            samples: 1_000,
            family: FamilyParams {
                prefix_max: 1,
                grid: (0..=2).map(|k| crate::rational::rat(k, 2)).collect(),
            },
            generator: GeneratorParams::default(),
        }
    }
}

struct PairData {
    f: OmegaFunction,
    g: OmegaFunction,
    h: OmegaFunction,
    in_g: [bool; 3],
}

fn describe_pair(p: &PairData) -> Value {
    json!({"f": p.f.to_json(), "g": p.g.to_json()})
}

pub fn problem1_exploration(params: &ExploreParams) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("problem1-exploration", params.seed);
    report.status = Status::Inconclusive;
    report.note(REPRESENTABLE_CLASS_NOTE);
    report.note("survival means only that no tested pair refuted the candidate; nothing here answers the open question");

    let family = structured_family(&params.family);
    let profiles: Vec<SignProfile> = family.iter().map(SignProfile::of).collect();
    let (_, pairs) = comonotone_pairs_in_rows(&family, &profiles, 0..family.len());
    let mut comonotone: Vec<PairData> = Vec::with_capacity(pairs.len() + params.samples as usize);
    let pack = |f: &OmegaFunction, g: &OmegaFunction| {
        let h = join(f, g);
        let in_g = [membership(f).in_g, membership(g).in_g, membership(&h).in_g];
        PairData {
            f: f.clone(),
            g: g.clone(),
            h,
            in_g,
        }
    };
    for (i, j) in pairs {
        comonotone.push(pack(&family[i], &family[j]));
    }
    for i in 0..params.samples {
        let (f, g) = generate_comonotone_pair(sample_seed(params.seed, i), &params.generator)?;
        comonotone.push(pack(&f, &g));
    }

    // ordered pairs for the monotonicity probe: the family plus f_0 <= f_1
    let mut ordered: Vec<(OmegaFunction, OmegaFunction, bool, bool)> = Vec::new();
    let flags: Vec<bool> = family.iter().map(|f| membership(f).in_g).collect();
    for i in 0..family.len() {
        for j in 0..family.len() {
            if i != j && leq(&family[i], &family[j]) {
                ordered.push((family[i].clone(), family[j].clone(), flags[i], flags[j]));
            }
        }
    }
    let f0 = OmegaFunction::make_f(0)?;
    let f1 = OmegaFunction::make_f(1)?;
    ordered.push((f0.clone(), f1.clone(), membership(&f0).in_g, membership(&f1).in_g));

    let constants: Vec<OmegaFunction> = params
        .family
        .grid
        .iter()
        .map(|c| OmegaFunction::make_constant(c.clone()))
        .collect::<Result<_>>()?;

    let candidates = default_candidates();
    let (mut not_normalized, mut not_comax, mut monotone, mut surviving) = (0u64, 0u64, 0u64, 0u64);
    for cand in &candidates {
        let label = cand.label();
        if let Some(c) = constants.iter().find(|c| cand.eval(c) != *c.v_p()) {
            not_normalized += 1;
            report.witnesses.push(json!({
                "candidate": label,
                "outcome": "rejected: not normalized",
                "constant": fmt_rational(c.v_p()),
                "value": fmt_rational(&cand.eval(c)),
            }));
            continue;
        }
        let broken = comonotone.iter().find(|p| {
            let a = cand.eval_with(&p.f, p.in_g[0]);
            let b = cand.eval_with(&p.g, p.in_g[1]);
            cand.eval_with(&p.h, p.in_g[2]) != a.max(b)
        });
        if let Some(p) = broken {
            not_comax += 1;
            debug_assert!(comonotone_omega(&p.f, &p.g).is_comonotone());
            report.witnesses.push(json!({
                "candidate": label,
                "outcome": "rejected: not comonotonically maxitive",
                "pair": describe_pair(p),
            }));
            continue;
        }
        let decreasing = ordered
            .iter()
            .find(|(a, b, ga, gb)| cand.eval_with(a, *ga) > cand.eval_with(b, *gb));
        match decreasing {
            None => {
                monotone += 1;
                report.witnesses.push(json!({
                    "candidate": label,
                    "outcome": "monotone on all tested pairs; not a candidate",
                }));
            }
            Some((a, b, _, _)) => {
                surviving += 1;
                report.witnesses.push(json!({
                    "candidate": label,
                    "outcome": "survived: normalized and maxitive on tested comonotone pairs, non-monotone",
                    "f <= g": {"f": a.to_json(), "g": b.to_json()},
                }));
            }
        }
    }

    report.count("candidates", candidates.len() as u64);
    report.count("comonotone_pairs_tested", comonotone.len() as u64);
    report.count("ordered_pairs_tested", ordered.len() as u64);
    report.count("rejected_not_normalized", not_normalized);
    report.count("rejected_not_comonotonically_maxitive", not_comax);
    report.count("monotone_on_tests", monotone);
    report.count("surviving_candidates", surviving);
    if surviving == 0 {
        report.note("none found at this scale");
    } else {
        report.note("surviving candidates are only unrefuted at this scale");
    }
    Ok(report)
}
