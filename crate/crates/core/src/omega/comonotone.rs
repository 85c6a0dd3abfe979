//! Exact comonotonicity on the infinite space `X`.
//!
//! Points split into a finite part (`P`, the prefix indices, `Limit`) and the
//! tail `{Index(n) : n > N}`. Finite pairs are checked directly. On the tail
//! both functions are affine in `t = 1 - 1/n`, so tail pairs reduce to the
//! sign of the slope product, and tail-versus-fixed-point pairs reduce to the
//! sign of a product of two affine factors, decided by locating the factor
//! roots and asking whether some `a_n` lies strictly inside the region where
//! the product is negative.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::function::OmegaFunction;
use super::point::OmegaPoint;
use crate::rational::{floor_int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comonotonicity {
    Comonotone,
    /// `(f(x1) - f(x2)) * (g(x1) - g(x2)) < 0`.
    Violated(OmegaPoint, OmegaPoint),
}

impl Comonotonicity {
    pub fn is_comonotone(self) -> bool {
        matches!(self, Comonotonicity::Comonotone)
    }

    pub fn witness(self) -> Option<(OmegaPoint, OmegaPoint)> {
        match self {
            Comonotonicity::Comonotone => None,
            Comonotonicity::Violated(a, b) => Some((a, b)),
        }
    }
}

/// `(f(x1) - f(x2)) * (g(x1) - g(x2))`.
pub fn pair_product(f: &OmegaFunction, g: &OmegaFunction, x1: OmegaPoint, x2: OmegaPoint) -> Rational {
    (f.eval(x1) - f.eval(x2)) * (g.eval(x1) - g.eval(x2))
}

/// Decides comonotonicity over every pair of points of `X`.
pub fn comonotone_omega(f: &OmegaFunction, g: &OmegaFunction) -> Comonotonicity {
    let m = f.prefix_len().max(g.prefix_len());
    let mut fixed = Vec::with_capacity(m + 2);
    fixed.push(OmegaPoint::P);
    fixed.extend((1..=m as u64).map(OmegaPoint::Index));
    fixed.push(OmegaPoint::Limit);
    let fv: Vec<Rational> = fixed.iter().map(|&x| f.eval(x)).collect();
    let gv: Vec<Rational> = fixed.iter().map(|&x| g.eval(x)).collect();

    for i in 0..fixed.len() {
        for j in (i + 1)..fixed.len() {
            if opposite(&fv[i], &fv[j], &gv[i], &gv[j]) {
                return Comonotonicity::Violated(fixed[i], fixed[j]);
            }
        }
    }

    // tail x tail: alpha_f * alpha_g * (a_n - a_k)^2
    if f.alpha().signum() * g.alpha().signum() < Rational::zero() {
        let n = m as u64 + 1;
        return Comonotonicity::Violated(OmegaPoint::Index(n), OmegaPoint::Index(n + 1));
    }

    for (k, &x0) in fixed.iter().enumerate() {
        let u = Affine {
            slope: f.alpha().clone(),
            offset: f.beta() - &fv[k],
        };
        let w = Affine {
            slope: g.alpha().clone(),
            offset: g.beta() - &gv[k],
        };
        let mut best: Option<BigInt> = None;
        for piece in [u.positive().meet(&w.negative()), u.negative().meet(&w.positive())] {
            if let Some(n) = first_sequence_index_in(&piece, m) {
                if best.as_ref().is_none_or(|b| n < *b) {
                    best = Some(n);
                }
            }
        }
        if let Some(n) = best {
            let n = n.to_u64().expect("witness index fits in u64");
            return Comonotonicity::Violated(x0, OmegaPoint::Index(n));
        }
    }
    Comonotonicity::Comonotone
}

fn opposite(f1: &Rational, f2: &Rational, g1: &Rational, g2: &Rational) -> bool {
    let df = f1.cmp(f2);
    let dg = g1.cmp(g2);
    df != std::cmp::Ordering::Equal && dg != std::cmp::Ordering::Equal && df != dg
}

/// `slope * t + offset`.
struct Affine {
    slope: Rational,
    offset: Rational,
}

/// Open interval `(lo, hi)`; `None` is an infinite end.
#[derive(Debug, Clone, PartialEq)]
struct Interval {
    lo: Option<Rational>,
    hi: Option<Rational>,
    empty: bool,
}

impl Interval {
    fn everything() -> Self {
        Interval {
            lo: None,
            hi: None,
            empty: false,
        }
    }

    fn nothing() -> Self {
        Interval {
            lo: None,
            hi: None,
            empty: true,
        }
    }

    fn meet(&self, other: &Interval) -> Interval {
        if self.empty || other.empty {
            return Interval::nothing();
        }
        let lo = match (&self.lo, &other.lo) {
            (Some(a), Some(b)) => Some(a.max(b).clone()),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        let hi = match (&self.hi, &other.hi) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        let empty = matches!((&lo, &hi), (Some(l), Some(h)) if l >= h);
        Interval { lo, hi, empty }
    }
}

impl Affine {
    fn root(&self) -> Rational {
        -(&self.offset / &self.slope)
    }

    fn positive(&self) -> Interval {
        if self.slope.is_zero() {
            return if self.offset.is_positive() {
                Interval::everything()
            } else {
                Interval::nothing()
            };
        }
        let r = Some(self.root());
        if self.slope.is_positive() {
            Interval {
                lo: r,
                hi: None,
                empty: false,
            }
        } else {
            Interval {
                lo: None,
                hi: r,
                empty: false,
            }
        }
    }

    fn negative(&self) -> Interval {
        Affine {
            slope: -&self.slope,
            offset: -&self.offset,
        }
        .positive()
    }
}

/// Smallest `n > m` with `1 - 1/n` strictly inside the interval.
fn first_sequence_index_in(iv: &Interval, m: usize) -> Option<BigInt> {
    if iv.empty {
        return None;
    }
    let one = Rational::one();
    let past_prefix = BigInt::from(m as u64 + 1);
    // a_n > lo  <=>  n > 1/(1 - lo)   (lo < 1)
    let n = match &iv.lo {
        None => past_prefix,
        Some(lo) if *lo >= one => return None,
        Some(lo) => (floor_int(&(&one / (&one - lo))) + BigInt::one()).max(past_prefix),
    };
    // a_n < hi  <=>  n < 1/(1 - hi)   (hi < 1); every a_n < 1
    match &iv.hi {
        Some(hi) if *hi < one => {
            let bound = &one / (&one - hi);
            (Rational::from_integer(n.clone()) < bound).then_some(n)
        }
        _ => Some(n),
    }
}
