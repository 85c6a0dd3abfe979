//! Acceptance criteria, one PASS/FAIL line each. Every criterion is checked
//! against an oracle written here, independent of the library internals.

use std::cmp::Ordering;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use comaxlab::finite::functional::t_star_checks_on;
use comaxlab::finite::{enumerate_capacities, theorem1_census, tnormed_integral, Capacity, GridChain, GridDomain, GridFunction};
use comaxlab::omega::{
    comonotone_omega, generate_comonotone_pair, generate_free_pair, join, leq, make_constant, make_f, nu_eval,
    sample_seed, theorem2_suite, FamilyParams, GeneratorParams, OmegaFunction, OmegaPoint, Theorem2Params,
};
use comaxlab::rational::{fmt_rational, one, rat, zero};
use comaxlab::runner::{run, Subcommand, SuiteConfig};
use comaxlab::tnorm::{check_tnorm_axioms, TNorm};
use comaxlab::{Rational, Status};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn within(elapsed: Duration, limit: Duration) -> bool {
    elapsed <= limit
}

// ---------------------------------------------------------------------------
// truncated oracles on X

/// `P`, `Index(1..=k)`, `Limit`.
fn points(k: u64) -> Vec<OmegaPoint> {
    let mut pts = vec![OmegaPoint::P];
    pts.extend((1..=k).map(OmegaPoint::Index));
    pts.push(OmegaPoint::Limit);
    pts
}

fn values(f: &OmegaFunction, pts: &[OmegaPoint]) -> Vec<Rational> {
    pts.iter().map(|&x| f.eval(x)).collect()
}

/// `f_1` straight from its definition: the identity on the sequence, 1 at `P`.
fn f1_at(x: OmegaPoint) -> Rational {
    match x {
        OmegaPoint::P | OmegaPoint::Limit => one(),
        OmegaPoint::Index(n) => one() - rat(1, n as i64),
    }
}

/// `nu` from values at `pts`. Exact when `pts` reaches one index past every
/// prefix involved: maxima and the comparison with `f_1` are then decided at
/// the listed points because each tail is affine in the coordinate.
fn nu_oracle(pts: &[OmegaPoint], vals: &[Rational]) -> Rational {
    let below_f1 = pts.iter().zip(vals).all(|(&x, v)| *v <= f1_at(x));
    let max = vals.iter().max().unwrap();
    let at_p = &vals[0];
    let in_g = below_f1 && (max <= at_p || *max < one());
    if in_g {
        zero()
    } else {
        one()
    }
}

fn opposite(a: Ordering, b: Ordering) -> bool {
    matches!(
        (a, b),
        (Ordering::Less, Ordering::Greater) | (Ordering::Greater, Ordering::Less)
    )
}

/// First pair of `pts` at which `f` and `g` move in opposite directions.
fn truncated_violation(fv: &[Rational], gv: &[Rational]) -> Option<(usize, usize)> {
    for i in 0..fv.len() {
        for j in (i + 1)..fv.len() {
            if opposite(fv[i].cmp(&fv[j]), gv[i].cmp(&gv[j])) {
                return Some((i, j));
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// criteria

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let f0 = make_f(0).unwrap();
    let f1 = make_f(1).unwrap();
    let ordered = leq(&f0, &f1);
    let (nu0, nu1) = (nu_eval(&f0), nu_eval(&f1));
    let pts = points(4);
    let oracle_ordered = values(&f0, &pts) <= values(&f1, &pts)
        && pts.iter().all(|&x| f0.eval(x) <= f1.eval(x));
    let ok = ordered
        && oracle_ordered
        && nu0 == one()
        && nu1 == zero()
        && nu_oracle(&pts, &values(&f0, &pts)) == one()
        && nu_oracle(&pts, &values(&f1, &pts)) == zero()
        && within(start.elapsed(), Duration::from_secs(1));
    outcome(
        ok,
        format!(
            "f_0 <= f_1: {ordered}, nu(f_0) = {}, nu(f_1) = {} ({:?})",
            fmt_rational(&nu0),
            fmt_rational(&nu1),
            start.elapsed()
        ),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let params = Theorem2Params {
        seed: 0,
        samples: 10_000,
        family: FamilyParams {
            prefix_max: 2,
            grid: (0..=4).map(|k| rat(k, 4)).collect(),
        },
        generator: GeneratorParams::default(),
        jobs: 1,
    };
    let report = theorem2_suite(&params).unwrap();
    let branches = [
        "branch.f_g_in_F2",
        "branch.f_in_F2_g_in_F3",
        "branch.f_g_in_F3",
        "branch.f_not_in_F1",
        "branch.f_in_F1_minus_F2_F3",
    ];
    let all_hit = branches.iter().all(|b| report.get(b) > 0);
    let suite_ok = report.status == Status::Pass
        && report.get("maxitivity.violations") == 0
        && report.get("generated.comonotone_pairs") >= 10_000
        && report.get("structured.comonotone_pairs") > 0
        && all_hit;

    // independent recheck of the generated pairs
    let mut oracle_failures = 0u64;
    for i in 0..params.samples {
        let (f, g) = generate_comonotone_pair(sample_seed(params.seed, i), &params.generator).unwrap();
        let k = (f.prefix_len().max(g.prefix_len()) + 2) as u64;
        let pts = points(k);
        let (fv, gv) = (values(&f, &pts), values(&g, &pts));
        let jv: Vec<Rational> = fv.iter().zip(&gv).map(|(a, b)| a.max(b).clone()).collect();
        let joined = join(&f, &g);
        let lhs = nu_oracle(&pts, &jv);
        let rhs = nu_oracle(&pts, &fv).max(nu_oracle(&pts, &gv));
        if truncated_violation(&fv, &gv).is_some() || values(&joined, &pts) != jv || lhs != rhs || nu_eval(&joined) != lhs {
            oracle_failures += 1;
        }
    }
    let elapsed = start.elapsed();
    let ok = suite_ok && oracle_failures == 0 && within(elapsed, Duration::from_secs(300));
    outcome(
        ok,
        format!(
            "{} comonotone pairs checked, {} maxitivity violations, branches {:?}, oracle failures {oracle_failures} ({elapsed:?})",
            report.get("maxitivity.checked"),
            report.get("maxitivity.violations"),
            branches.iter().map(|b| report.get(b)).collect::<Vec<_>>(),
        ),
    )
}

fn criterion_3() -> Outcome {
    let params = GeneratorParams::default();
    let pts = points(50);
    let samples = 10_000u64;
    let (mut disagreements, mut unconfirmed, mut violations) = (0u64, 0u64, 0u64);
    for i in 0..samples {
        let seed = sample_seed(3, i);
        let (f, g) = if i % 2 == 0 {
            generate_comonotone_pair(seed, &params).unwrap()
        } else {
            generate_free_pair(seed, &params)
        };
        let decision = comonotone_omega(&f, &g);
        let brute = truncated_violation(&values(&f, &pts), &values(&g, &pts));
        if brute.is_some() && decision.is_comonotone() {
            disagreements += 1;
        }
        if let Some((a, b)) = decision.witness() {
            violations += 1;
            let product = (f.eval(a) - f.eval(b)) * (g.eval(a) - g.eval(b));
            if product >= zero() {
                unconfirmed += 1;
            }
        }
    }
    outcome(
        disagreements == 0 && unconfirmed == 0 && violations > 0,
        format!("{samples} pairs, {violations} violations reported, {disagreements} disagreements, {unconfirmed} unconfirmed witnesses"),
    )
}

/// Classifies every functional on `chain^n` from first principles.
fn census_oracle(chain: &[Rational], n: usize) -> (u64, u64, u64, u64) {
    let m = chain.len();
    let fns: Vec<Vec<usize>> = (0..m.pow(n as u32))
        .map(|mut c| {
            let mut v = vec![0; n];
            for slot in v.iter_mut().rev() {
                *slot = c % m;
                c /= m;
            }
            v
        })
        .collect();
    let index = |v: &[usize]| v.iter().fold(0, |acc, &d| acc * m + d);
    let comonotone = |f: &[usize], g: &[usize]| {
        (0..n).all(|a| (0..n).all(|b| !opposite(f[a].cmp(&f[b]), g[a].cmp(&g[b]))))
    };
    let mut pairs = Vec::new();
    let mut ordered = Vec::new();
    for (i, f) in fns.iter().enumerate() {
        for (j, g) in fns.iter().enumerate() {
            if comonotone(f, g) {
                let join: Vec<usize> = f.iter().zip(g).map(|(a, b)| *a.max(b)).collect();
                pairs.push((i, j, index(&join)));
            }
            if f.iter().zip(g).all(|(a, b)| a <= b) {
                ordered.push((i, j));
            }
        }
    }
    let total = m.pow(fns.len() as u32);
    let (mut comax, mut mono, mut comax_not_mono) = (0, 0, 0);
    let mut table = vec![0usize; fns.len()];
    for code in 0..total {
        let mut c = code;
        for slot in table.iter_mut().rev() {
            *slot = c % m;
            c /= m;
        }
        let is_comax = pairs.iter().all(|&(i, j, k)| table[k] == table[i].max(table[j]));
        let is_mono = ordered.iter().all(|&(i, j)| table[i] <= table[j]);
        comax += is_comax as u64;
        mono += is_mono as u64;
        comax_not_mono += (is_comax && !is_mono) as u64;
    }
    (total as u64, comax, mono, comax_not_mono)
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    let mut witness_found = false;
    for (chain, expected_total) in [(GridChain::uniform(1), 16u64), (GridChain::uniform(2), 19_683)] {
        let report = theorem1_census(&chain, 2, 10_000_000, 1).unwrap();
        let (total, comax, mono, comax_not_mono) = census_oracle(chain.values(), 2);
        ok &= total == expected_total
            && report.get("total") == total
            && report.get("comonotonically_maxitive") == comax
            && report.get("monotone") == mono
            && report.get("comonotonically_maxitive_not_monotone") == comax_not_mono
            && report.status != Status::Fail;
        for w in &report.witnesses {
            if w["kind"] != "monotone_not_comonotonically_maxitive" {
                continue;
            }
            // the pair must be comonotone and the join value must break maxitivity
            let parse = |v: &serde_json::Value| -> Vec<Rational> {
                v.as_array()
                    .unwrap()
                    .iter()
                    .map(|s| comaxlab::rational::parse_rational(s.as_str().unwrap()).unwrap())
                    .collect()
            };
            let pair = &w["pair"];
            let (f, g) = (parse(&pair["f"]), parse(&pair["g"]));
            let value = |k: &str| comaxlab::rational::parse_rational(pair[k].as_str().unwrap()).unwrap();
            let comonotone = (0..f.len())
                .all(|a| (0..f.len()).all(|b| !opposite(f[a].cmp(&f[b]), g[a].cmp(&g[b]))));
            if comonotone && value("F(f v g)") != value("F(f)").max(value("F(g)")) {
                witness_found = true;
            }
        }
        parts.push(format!(
            "|chain|={}: total {total}, comax {comax}, monotone {mono}, comax-not-monotone {comax_not_mono}, monotone-not-comax {}",
            chain.len(),
            report.get("monotone_not_comonotonically_maxitive")
        ));
    }
    let elapsed = start.elapsed();
    ok &= witness_found && within(elapsed, Duration::from_secs(60));
    outcome(ok, format!("{}; witness exhibited: {witness_found} ({elapsed:?})", parts.join("; ")))
}

/// Sugeno-type integral under min, written from its threshold definition.
fn min_integral_oracle(cap: &Capacity, f: &GridFunction, chain: &[Rational]) -> Rational {
    chain
        .iter()
        .map(|t| {
            let mask = (0..f.values().len())
                .filter(|&i| f.at(i) >= t)
                .fold(0usize, |m, i| m | (1 << i));
            t.min(cap.get(mask)).clone()
        })
        .max()
        .unwrap()
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let chain = GridChain::uniform(2);
    let (mut capacities, mut failures, mut mismatches) = (0u64, 0u64, 0u64);
    for n in [2usize, 3] {
        let domain = GridDomain::new(&chain, n).unwrap();
        for cap in enumerate_capacities(n, chain.values()).unwrap() {
            capacities += 1;
            for f in domain.functions() {
                if tnormed_integral(&cap, TNorm::Minimum, f).unwrap() != min_integral_oracle(&cap, f, chain.values()) {
                    mismatches += 1;
                }
            }
            let integral = comaxlab::finite::TnormedIntegral {
                capacity: cap.clone(),
                norm: TNorm::Minimum,
            };
            let checks = t_star_checks_on(&domain, &integral, TNorm::Minimum).unwrap();
            if !checks.in_t_star() || !checks.monotone.holds {
                failures += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures == 0 && mismatches == 0 && within(elapsed, Duration::from_secs(60)),
        format!("{capacities} capacities, {failures} failing, {mismatches} integral mismatches ({elapsed:?})"),
    )
}

fn criterion_6() -> Outcome {
    let grid: Vec<Rational> = (0..=16).map(|k| rat(k, 16)).collect();
    let reference = |norm: TNorm, a: &Rational, b: &Rational| -> Rational {
        match norm {
            TNorm::Minimum => a.min(b).clone(),
            TNorm::Product => a * b,
            TNorm::Lukasiewicz => (a + b - one()).max(zero()),
        }
    };
    let mut parts = Vec::new();
    let mut ok = true;
    for norm in TNorm::ALL {
        let report = check_tnorm_axioms(&norm, &grid).unwrap();
        let mut oracle = 0u64;
        for a in &grid {
            if reference(norm, a, &one()) != *a {
                oracle += 1;
            }
            for b in &grid {
                if norm.apply(a, b).unwrap() != reference(norm, a, b)
                    || reference(norm, a, b) != reference(norm, b, a)
                {
                    oracle += 1;
                }
                for c in &grid {
                    let left = reference(norm, &reference(norm, a, b), c);
                    let right = reference(norm, a, &reference(norm, b, c));
                    if left != right || (b <= c && reference(norm, a, b) > reference(norm, a, c)) {
                        oracle += 1;
                    }
                }
            }
        }
        ok &= report.status == Status::Pass && report.get("violations") == 0 && oracle == 0;
        parts.push(format!("{}: {} violations", norm.name(), report.get("violations") + oracle));
    }
    outcome(ok, parts.join(", "))
}

fn criterion_7() -> Outcome {
    let cases = [(rat(0, 1), zero()), (rat(1, 4), one()), (rat(1, 2), one()), (rat(3, 4), one()), (rat(1, 1), one())];
    let pts = points(3);
    let mut ok = true;
    let mut parts = Vec::new();
    for (c, expected) in cases {
        let f = make_constant(c.clone()).unwrap();
        let nu = nu_eval(&f);
        ok &= nu == expected && nu_oracle(&pts, &values(&f, &pts)) == expected;
        parts.push(format!("nu({}) = {}", fmt_rational(&c), fmt_rational(&nu)));
    }
    outcome(ok, parts.join(", "))
}

fn criterion_8() -> Outcome {
    let base = SuiteConfig::default();
    let parallel = SuiteConfig { jobs: 4, ..base.clone() };
    let a = run(Subcommand::VerifyCounterexample, &base, &[]).unwrap().to_json_string();
    let b = run(Subcommand::VerifyCounterexample, &base, &[]).unwrap().to_json_string();
    let c = run(Subcommand::VerifyCounterexample, &parallel, &[]).unwrap().to_json_string();
    outcome(
        a == b && a == c,
        format!("repeat identical: {}, jobs=4 identical: {} ({} bytes)", a == b, a == c, a.len()),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("non-monotonicity of nu, exact", criterion_1),
        ("comonotonic maxitivity of nu, exhaustive + sampled", criterion_2),
        ("comonotonicity decision vs truncated brute force", criterion_3),
        ("finite census on {0,1} and {0,1/2,1}, n=2", criterion_4),
        ("t-normed integrals under min lie in T*", criterion_5),
        ("t-norm axioms on the 17-point grid", criterion_6),
        ("nu on constants", criterion_7),
        ("report determinism across runs and jobs", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = check();
        let tag = if result.ok { "PASS" } else { "FAIL" };
        println!("{tag} criterion {}: {name}: {}", i + 1, result.detail);
        failed += (!result.ok) as usize;
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
