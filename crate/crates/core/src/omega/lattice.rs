//! Order, attained maximum and the lattice operations on representable
//! functions. All decisions are exact.

use num_traits::{One, ToPrimitive};

use super::function::OmegaFunction;
use super::point::{sequence_point, OmegaPoint};
use crate::rational::{floor_int, Rational};

/// Guard against a crossing point so close to 1 that the merged prefix
/// would be absurdly long.
const MAX_PREFIX: usize = 10_000_000;

/// Pointwise `f <= g` on all of `X`.
pub fn leq(f: &OmegaFunction, g: &OmegaFunction) -> bool {
    if f.v_p() > g.v_p() {
        return false;
    }
    let m = f.prefix_len().max(g.prefix_len());
    let (fp, gp) = (f.extended_prefix(m), g.extended_prefix(m));
    if fp.iter().zip(&gp).any(|(a, b)| a > b) {
        return false;
    }
    // g - f is affine on the tail; nonnegative on [a_{m+1}, 1] iff at both ends
    let start = sequence_point(m as u64 + 1);
    f.tail_at(&start) <= g.tail_at(&start) && f.v_lim() <= g.v_lim()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttainedMax {
    pub value: Rational,
    pub site: OmegaPoint,
}

/// `max_{x in X} f(x)` and the first site attaining it in the order
/// `P`, `Index(1)`, `Index(2)`, ..., `Limit`.
pub fn attained_max(f: &OmegaFunction) -> AttainedMax {
    // an affine tail peaks at its first point or at the limit
    let last = f.prefix_len() as u64 + 1;
    let candidates = std::iter::once(OmegaPoint::P)
        .chain((1..=last).map(OmegaPoint::Index))
        .chain(std::iter::once(OmegaPoint::Limit));
    let mut best: Option<AttainedMax> = None;
    for site in candidates {
        let value = f.eval(site);
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(AttainedMax { value, site });
        }
    }
    best.expect("candidate list is never empty")
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Envelope {
    Upper,
    Lower,
}

fn combine(f: &OmegaFunction, g: &OmegaFunction, side: Envelope) -> OmegaFunction {
    let pick = |a: &Rational, b: &Rational| match side {
        Envelope::Upper => a.max(b).clone(),
        Envelope::Lower => a.min(b).clone(),
    };
    let mut m = f.prefix_len().max(g.prefix_len());

    let (alpha, beta) = if f.alpha() == g.alpha() {
        let winner = if (f.beta() >= g.beta()) == (side == Envelope::Upper) { f } else { g };
        (winner.alpha().clone(), winner.beta().clone())
    } else {
        // the two tails cross once, at t* = (beta_g - beta_f) / (alpha_f - alpha_g)
        let crossing = (g.beta() - f.beta()) / (f.alpha() - g.alpha());
        if crossing < Rational::one() {
            // every a_n <= t* goes into the prefix: n <= 1/(1 - t*)
            let bound = floor_int(&(Rational::one() / (Rational::one() - &crossing)));
            let bound = bound.to_usize().unwrap_or(0);
            assert!(bound <= MAX_PREFIX, "tail crossing too close to 1 ({crossing})");
            m = m.max(bound);
        }
        let (lf, lg) = (f.v_lim(), g.v_lim());
        let f_wins = if lf != lg {
            (lf > lg) == (side == Envelope::Upper)
        } else {
            // equal limits: just left of 1 the smaller slope is higher
            (f.alpha() < g.alpha()) == (side == Envelope::Upper)
        };
        let winner = if f_wins { f } else { g };
        (winner.alpha().clone(), winner.beta().clone())
    };

    let prefix = f
        .extended_prefix(m)
        .iter()
        .zip(g.extended_prefix(m).iter())
        .map(|(a, b)| pick(a, b))
        .collect();
    OmegaFunction::from_parts(pick(f.v_p(), g.v_p()), prefix, alpha, beta)
}

/// Pointwise maximum.
pub fn join(f: &OmegaFunction, g: &OmegaFunction) -> OmegaFunction {
    combine(f, g, Envelope::Upper)
}

/// Pointwise minimum.
pub fn meet(f: &OmegaFunction, g: &OmegaFunction) -> OmegaFunction {
    combine(f, g, Envelope::Lower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::function::{make_constant, make_f};
    use crate::rational::{int, rat};

    fn points(k: u64) -> Vec<OmegaPoint> {
        let mut v = vec![OmegaPoint::P];
        v.extend((1..=k).map(OmegaPoint::Index));
        v.push(OmegaPoint::Limit);
        v
    }

    #[test]
    fn leq_examples() {
        let (f0, f1) = (make_f(0).unwrap(), make_f(1).unwrap());
        assert!(leq(&f0, &f1));
        assert!(!leq(&f1, &f0));
        assert!(!leq(&make_constant(rat(1, 2)).unwrap(), &f1));
        assert!(leq(&f1, &f1));
    }

    #[test]
    fn leq_detects_tail_crossing() {
        // t versus 1/2 + 0*t: crosses at a_2
        let a = OmegaFunction::new(int(0), vec![], int(1), int(0)).unwrap();
        let b = OmegaFunction::new(int(0), vec![], int(0), rat(1, 2)).unwrap();
        assert!(!leq(&a, &b));
        assert!(!leq(&b, &a));
    }

    #[test]
    fn attained_max_examples() {
        let m = attained_max(&make_f(1).unwrap());
        assert_eq!((m.value, m.site), (int(1), OmegaPoint::P));
        let m = attained_max(&make_f(0).unwrap());
        assert_eq!((m.value, m.site), (int(1), OmegaPoint::Limit));
        let m = attained_max(&make_constant(rat(1, 3)).unwrap());
        assert_eq!((m.value, m.site), (rat(1, 3), OmegaPoint::P));
        // decreasing tail peaks right after the prefix
        let f = OmegaFunction::new(int(0), vec![int(0)], rat(-1, 2), rat(3, 4)).unwrap();
        let m = attained_max(&f);
        assert_eq!((m.value, m.site), (rat(1, 2), OmegaPoint::Index(2)));
    }

    #[test]
    fn join_examples() {
        let (f0, f1) = (make_f(0).unwrap(), make_f(1).unwrap());
        assert_eq!(join(&f0, &f1), f1);
        assert_eq!(meet(&f0, &f1), f0);
        assert_eq!(join(&f1, &f1), f1);

        let a = OmegaFunction::new(int(0), vec![], int(1), int(0)).unwrap();
        let b = OmegaFunction::new(int(0), vec![], int(0), rat(1, 2)).unwrap();
        let j = join(&a, &b);
        assert_eq!((j.alpha(), j.beta()), (&int(1), &int(0)));
        for x in points(10) {
            assert_eq!(j.eval(x), a.eval(x).max(b.eval(x)), "{x}");
        }
        let mt = meet(&a, &b);
        for x in points(10) {
            assert_eq!(mt.eval(x), a.eval(x).min(b.eval(x)), "{x}");
        }
    }

    #[test]
    fn join_with_equal_limits_uses_slope() {
        // 1 - t/2 ... limit 1/2; and constant 1/2
        let a = OmegaFunction::new(int(0), vec![], rat(-1, 2), int(1)).unwrap();
        let b = make_constant(rat(1, 2)).unwrap();
        let j = join(&a, &b);
        assert_eq!((j.alpha(), j.beta()), (a.alpha(), a.beta()));
        let m = meet(&a, &b);
        assert_eq!(m.alpha(), &int(0));
        for x in points(10) {
            assert_eq!(j.eval(x), a.eval(x).max(b.eval(x)));
            assert_eq!(m.eval(x), a.eval(x).min(b.eval(x)));
        }
    }
}
