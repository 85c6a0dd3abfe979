//! Seeded generation of representable functions and of comonotone pairs.
//!
//! Comonotone pairs are built as `f = phi ∘ h`, `g = psi ∘ h` with `phi`,
//! `psi` nondecreasing piecewise-linear maps of `[0,1]`. Composing an affine
//! tail with a piecewise-linear map is again piecewise affine with finitely
//! many rational breakpoints, so after extending the prefix past the last
//! breakpoint the result is representable.

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::comonotone::comonotone_omega;
use super::function::OmegaFunction;
use super::point::sequence_point;
use crate::error::{LabError, Result};
use crate::rational::{check_unit, floor_int, one, rat, zero, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorParams {
    /// Longest prefix of the base function `h`.
    pub prefix_max: usize,
    /// Denominators of random values are drawn from `1..=max_denominator`.
    pub max_denominator: i64,
    /// Interior breakpoints of each random monotone map.
    pub breakpoints: usize,
}

impl Default for GeneratorParams {
    fn default() -> Self {
        GeneratorParams {
            prefix_max: 2,
            max_denominator: 8,
            breakpoints: 2,
        }
    }
}

/// Per-sample seed, so sample `i` does not depend on how samples are sharded.
pub fn sample_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn unit_rational(rng: &mut ChaCha8Rng, params: &GeneratorParams) -> Rational {
    let q = rng.gen_range(1..=params.max_denominator.max(1));
    rat(rng.gen_range(0..=q), q)
}

/// A random representable function: random `vP` and prefix, and a tail fixed
/// by random values at its first point and at the limit.
pub fn random_function(rng: &mut ChaCha8Rng, params: &GeneratorParams) -> OmegaFunction {
    let n = rng.gen_range(0..=params.prefix_max);
    let v_p = unit_rational(rng, params);
    let prefix = (0..n).map(|_| unit_rational(rng, params)).collect();
    let start = unit_rational(rng, params);
    let limit = unit_rational(rng, params);
    // alpha * a_{n+1} + beta = start, alpha + beta = limit
    let gap = one() - sequence_point(n as u64 + 1);
    let alpha = (&limit - &start) / gap;
    let beta = &limit - &alpha;
    OmegaFunction::new(v_p, prefix, alpha, beta).expect("endpoints in [0,1] keep the tail in range")
}

/// A continuous nondecreasing piecewise-linear map `[0,1] -> [0,1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MonotoneMap {
    knots: Vec<(Rational, Rational)>,
}

impl MonotoneMap {
    /// Knots must start at `x = 0`, end at `x = 1`, have strictly increasing
    /// `x` and nondecreasing `y` in `[0,1]`.
    pub fn new(knots: Vec<(Rational, Rational)>) -> Result<Self> {
        let bad = |m: &str| Err(LabError::InvalidFunction(format!("monotone map: {m}")));
        if knots.len() < 2 || knots[0].0 != zero() || knots[knots.len() - 1].0 != one() {
            return bad("knots must span x = 0 .. 1");
        }
        for (x, y) in &knots {
            check_unit(x, "knot x")?;
            check_unit(y, "knot y")?;
        }
        for w in knots.windows(2) {
            if w[0].0 >= w[1].0 {
                return bad("knot x values must increase strictly");
            }
            if w[0].1 > w[1].1 {
                return bad("knot y values must not decrease");
            }
        }
        Ok(MonotoneMap { knots })
    }

    pub fn identity() -> Self {
        MonotoneMap {
            knots: vec![(zero(), zero()), (one(), one())],
        }
    }

    pub fn constant(c: Rational) -> Result<Self> {
        MonotoneMap::new(vec![(zero(), c.clone()), (one(), c)])
    }

    pub fn random(rng: &mut ChaCha8Rng, params: &GeneratorParams) -> Self {
        let mut xs: Vec<Rational> = (0..params.breakpoints)
            .map(|_| unit_rational(rng, params))
            .filter(|x| *x > zero() && *x < one())
            .collect();
        xs.push(zero());
        xs.push(one());
        xs.sort();
        xs.dedup();
        let mut ys: Vec<Rational> = (0..xs.len()).map(|_| unit_rational(rng, params)).collect();
        ys.sort();
        MonotoneMap {
            knots: xs.into_iter().zip(ys).collect(),
        }
    }

    fn segment(&self, s: &Rational) -> usize {
        // last segment whose left knot is <= s
        let i = self.knots.partition_point(|(x, _)| x <= s);
        i.clamp(1, self.knots.len() - 1) - 1
    }

    /// `(slope, intercept)` of the linear piece on segment `i`.
    fn piece(&self, i: usize) -> (Rational, Rational) {
        let (x0, y0) = &self.knots[i];
        let (x1, y1) = &self.knots[i + 1];
        let slope = (y1 - y0) / (x1 - x0);
        let intercept = y0 - &slope * x0;
        (slope, intercept)
    }

    pub fn apply(&self, s: &Rational) -> Rational {
        let (slope, intercept) = self.piece(self.segment(s));
        slope * s + intercept
    }

    /// `self ∘ h` as a representable function.
    pub fn compose(&self, h: &OmegaFunction) -> OmegaFunction {
        let mut m = h.prefix_len();
        let (alpha, beta) = if h.alpha().is_zero() {
            (zero(), self.apply(h.beta()))
        } else {
            // h crosses knot x at t = (x - beta) / alpha; put every a_n <= t in the prefix
            for (x, _) in &self.knots {
                let t = (x - h.beta()) / h.alpha();
                if t < one() {
                    let bound = floor_int(&(one() / (one() - t))).to_usize().unwrap_or(0);
                    m = m.max(bound);
                }
            }
            let probe = h.tail_value(m as u64 + 1);
            let (slope, intercept) = self.piece(self.segment(&probe));
            (&slope * h.alpha(), &slope * h.beta() + intercept)
        };
        let prefix = h.extended_prefix(m).iter().map(|v| self.apply(v)).collect();
        OmegaFunction::from_parts(self.apply(h.v_p()), prefix, alpha, beta)
    }
}

/// `(phi ∘ h, psi ∘ h)`, validated with the exact comonotonicity decision.
pub fn comonotone_pair_from(
    h: &OmegaFunction,
    phi: &MonotoneMap,
    psi: &MonotoneMap,
) -> Result<(OmegaFunction, OmegaFunction)> {
    let f = phi.compose(h);
    let g = psi.compose(h);
    if let Some((a, b)) = comonotone_omega(&f, &g).witness() {
        return Err(LabError::GeneratorInvariant(format!(
            "h={h}, phi={phi:?}, psi={psi:?} gave f={f}, g={g} violating at ({a}, {b})"
        )));
    }
    Ok((f, g))
}

/// Deterministic per seed.
pub fn generate_comonotone_pair(seed: u64, params: &GeneratorParams) -> Result<(OmegaFunction, OmegaFunction)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = random_function(&mut rng, params);
    let phi = MonotoneMap::random(&mut rng, params);
    let psi = match rng.gen_range(0..10) {
        0 => MonotoneMap::identity(),
        1 => MonotoneMap::constant(unit_rational(&mut rng, params))?,
        _ => MonotoneMap::random(&mut rng, params),
    };
    comonotone_pair_from(&h, &phi, &psi)
}

/// Two independent random functions (comonotone or not), deterministic per seed.
pub fn generate_free_pair(seed: u64, params: &GeneratorParams) -> (OmegaFunction, OmegaFunction) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (random_function(&mut rng, params), random_function(&mut rng, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::omega::point::OmegaPoint;
    use crate::rational::int;

    fn sample_points(f: &OmegaFunction) -> Vec<OmegaPoint> {
        let mut v = vec![OmegaPoint::P, OmegaPoint::Limit];
        v.extend((1..=f.prefix_len() as u64 + 30).map(OmegaPoint::Index));
        v
    }

    #[test]
    fn identity_gives_h_twice() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let h = random_function(&mut rng, &GeneratorParams::default());
        let id = MonotoneMap::identity();
        let (f, g) = comonotone_pair_from(&h, &id, &id).unwrap();
        assert_eq!(f, h);
        assert_eq!(g, h);
    }

    #[test]
    fn constant_map_gives_constant() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let h = random_function(&mut rng, &GeneratorParams::default());
        let (_, g) =
            comonotone_pair_from(&h, &MonotoneMap::identity(), &MonotoneMap::constant(rat(2, 7)).unwrap()).unwrap();
        assert_eq!(g, OmegaFunction::make_constant(rat(2, 7)).unwrap());
    }

    #[test]
    fn composition_is_pointwise() {
        let params = GeneratorParams {
            prefix_max: 3,
            max_denominator: 12,
            breakpoints: 4,
        };
        for seed in 0..200 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h = random_function(&mut rng, &params);
            let phi = MonotoneMap::random(&mut rng, &params);
            let f = phi.compose(&h);
            for x in sample_points(&f) {
                assert_eq!(f.eval(x), phi.apply(&h.eval(x)), "seed {seed} at {x}");
            }
        }
    }

    #[test]
    fn seeded_pairs_are_comonotone_and_reproducible() {
        let params = GeneratorParams::default();
        for i in 0..300 {
            let seed = sample_seed(11, i);
            let a = generate_comonotone_pair(seed, &params).unwrap();
            let b = generate_comonotone_pair(seed, &params).unwrap();
            assert_eq!(a, b);
            assert!(comonotone_omega(&a.0, &a.1).is_comonotone());
        }
    }

    #[test]
    fn map_validation() {
        assert!(MonotoneMap::new(vec![(int(0), int(1)), (int(1), int(0))]).is_err());
        assert!(MonotoneMap::new(vec![(int(0), int(0)), (rat(1, 2), int(0))]).is_err());
        let m = MonotoneMap::new(vec![(int(0), int(0)), (rat(1, 2), rat(1, 4)), (int(1), int(1))]).unwrap();
        assert_eq!(m.apply(&rat(1, 4)), rat(1, 8));
        assert_eq!(m.apply(&rat(3, 4)), rat(5, 8));
        assert_eq!(m.apply(&int(1)), int(1));
    }
}
