//! The three built-in continuous t-norms and exhaustive axiom checking.

use std::fmt;

use num_traits::Zero;
use serde_json::json;

use crate::error::Result;
use crate::rational::{check_unit, fmt_rational, one, Rational};
use crate::report::VerificationReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TNorm {
    Minimum,
    Product,
    Lukasiewicz,
}

impl TNorm {
    pub const ALL: [TNorm; 3] = [TNorm::Minimum, TNorm::Product, TNorm::Lukasiewicz];

    pub fn name(self) -> &'static str {
        match self {
            TNorm::Minimum => "minimum",
            TNorm::Product => "product",
            TNorm::Lukasiewicz => "lukasiewicz",
        }
    }

    pub fn from_name(name: &str) -> Option<TNorm> {
        TNorm::ALL.into_iter().find(|n| n.name() == name)
    }

    /// `s * t` without domain checks. Callers must pass values in `[0,1]`.
    pub fn apply_unchecked(self, s: &Rational, t: &Rational) -> Rational {
        match self {
            TNorm::Minimum => s.min(t).clone(),
            TNorm::Product => s * t,
            TNorm::Lukasiewicz => {
                let v = s + t - one();
                if v < Rational::zero() {
                    Rational::zero()
                } else {
                    v
                }
            }
        }
    }

    pub fn apply(self, s: &Rational, t: &Rational) -> Result<Rational> {
        check_unit(s, "t-norm left operand")?;
        check_unit(t, "t-norm right operand")?;
        Ok(self.apply_unchecked(s, t))
    }
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn tnorm_apply(norm: TNorm, s: &Rational, t: &Rational) -> Result<Rational> {
    norm.apply(s, t)
}

/// Anything that can be checked against the t-norm axioms: the built-in
/// norms, or an arbitrary binary operation under test.
pub trait BinaryOp {
    fn op_name(&self) -> String;
    fn op(&self, s: &Rational, t: &Rational) -> Rational;
}

impl BinaryOp for TNorm {
    fn op_name(&self) -> String {
        TNorm::name(*self).to_string()
    }

    fn op(&self, s: &Rational, t: &Rational) -> Rational {
        self.apply_unchecked(s, t)
    }
}

/// A named closure wrapped as a candidate operation.
pub struct PseudoNorm<F> {
    pub label: String,
    pub f: F,
}

impl<F: Fn(&Rational, &Rational) -> Rational> BinaryOp for PseudoNorm<F> {
    fn op_name(&self) -> String {
        self.label.clone()
    }

    fn op(&self, s: &Rational, t: &Rational) -> Rational {
        (self.f)(s, t)
    }
}

/// Checks unit, commutativity, monotonicity (pairs and triples as needed) and
/// associativity (triples) on every tuple drawn from `grid`.
///
/// Only the first violation of each axiom is kept as a witness; the counts
/// report every violation.
pub fn check_tnorm_axioms<N: BinaryOp + ?Sized>(norm: &N, grid: &[Rational]) -> Result<VerificationReport> {
    for g in grid {
        check_unit(g, "axiom grid")?;
    }
    let name = norm.op_name();
    let mut report = VerificationReport::new(format!("tnorm-axioms/{name}"), 0);
    let one = one();
    let mut violations = [0u64; 4];
    let mut first: [Option<serde_json::Value>; 4] = [None, None, None, None];
    let labels = ["unit", "commutativity", "monotonicity", "associativity"];

    let mut record = |axiom: usize, witness: serde_json::Value| {
        violations[axiom] += 1;
        if first[axiom].is_none() {
            first[axiom] = Some(witness);
        }
    };

    let mut pairs = 0u64;
    let mut triples = 0u64;
    for s in grid {
        let su = norm.op(s, &one);
        if su != *s {
            record(0, json!({"axiom": "unit", "s": fmt_rational(s), "s*1": fmt_rational(&su)}));
        }
        for t in grid {
            pairs += 1;
            let st = norm.op(s, t);
            let ts = norm.op(t, s);
            if st != ts {
                record(
                    1,
                    json!({"axiom": "commutativity", "s": fmt_rational(s), "t": fmt_rational(t),
                           "s*t": fmt_rational(&st), "t*s": fmt_rational(&ts)}),
                );
            }
            for u in grid {
                triples += 1;
                // s <= t implies s*u <= t*u
                if s <= t {
                    let su = norm.op(s, u);
                    let tu = norm.op(t, u);
                    if su > tu {
                        record(
                            2,
                            json!({"axiom": "monotonicity", "s": fmt_rational(s), "t": fmt_rational(t),
                                   "u": fmt_rational(u)}),
                        );
                    }
                }
                let left = norm.op(&st, u);
                let right = norm.op(s, &norm.op(t, u));
                if left != right {
                    record(
                        3,
                        json!({"axiom": "associativity", "s": fmt_rational(s), "t": fmt_rational(t),
                               "u": fmt_rational(u), "(s*t)*u": fmt_rational(&left),
                               "s*(t*u)": fmt_rational(&right)}),
                    );
                }
            }
        }
    }

    report.count("grid_points", grid.len() as u64);
    report.count("pairs", pairs);
    report.count("triples", triples);
    let mut total = 0;
    for (i, label) in labels.iter().enumerate() {
        report.count(&format!("violations.{label}"), violations[i]);
        total += violations[i];
    }
    report.count("violations", total);
    for w in first.into_iter().flatten() {
        report.fail(w);
    }
    Ok(report)
}

/// `{k/m : 0 <= k <= m}`.
pub fn uniform_grid(m: u32) -> Vec<Rational> {
    (0..=m).map(|k| crate::rational::rat(k as i64, m as i64)).collect()
}
