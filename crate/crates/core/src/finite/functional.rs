//! Functionals on `[0,1]^n` and exhaustive property checks over a grid.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::capacity::Capacity;
use super::grid::{comonotone_witness, GridChain, GridFunction};
use crate::error::{LabError, Result};
use crate::rational::{fmt_rational, one, rat, zero, Rational};
use crate::tnorm::TNorm;

/// Largest grid domain (`|chain|^n` functions) the checkers will build.
pub const MAX_DOMAIN: usize = 1 << 16;

pub trait Functional {
    fn eval(&self, f: &GridFunction) -> Result<Rational>;

    fn label(&self) -> String {
        "functional".to_string()
    }
}

impl<T: Functional + ?Sized> Functional for &T {
    fn eval(&self, f: &GridFunction) -> Result<Rational> {
        (**self).eval(f)
    }

    fn label(&self) -> String {
        (**self).label()
    }
}

/// `f -> f(i)`.
#[derive(Debug, Clone, Copy)]
pub struct Evaluation(pub usize);

impl Functional for Evaluation {
    fn eval(&self, f: &GridFunction) -> Result<Rational> {
        f.values().get(self.0).cloned().ok_or(LabError::LengthMismatch {
            left: self.0 + 1,
            right: f.len(),
        })
    }

    fn label(&self) -> String {
        format!("eval[{}]", self.0)
    }
}

#[derive(Debug, Clone)]
pub struct ConstantFunctional(pub Rational);

impl Functional for ConstantFunctional {
    fn eval(&self, _f: &GridFunction) -> Result<Rational> {
        Ok(self.0.clone())
    }

    fn label(&self) -> String {
        format!("const[{}]", self.0)
    }
}

/// Wraps a closure as a functional.
pub struct FnFunctional<F> {
    pub label: String,
    pub f: F,
}

impl<F> FnFunctional<F>
where
    F: Fn(&GridFunction) -> Rational,
{
    pub fn new(label: impl Into<String>, f: F) -> Self {
        FnFunctional { label: label.into(), f }
    }
}

impl<F> Functional for FnFunctional<F>
where
    F: Fn(&GridFunction) -> Rational,
{
    fn eval(&self, f: &GridFunction) -> Result<Rational> {
        Ok((self.f)(f))
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

/// `max_t t * mu({i : f(i) >= t})`, with `t` ranging over the values of `f`
/// together with 0 and 1. With the minimum norm this is the Sugeno integral.
pub fn tnormed_integral(cap: &Capacity, norm: TNorm, f: &GridFunction) -> Result<Rational> {
    if cap.n() != f.len() {
        return Err(LabError::LengthMismatch {
            left: cap.n(),
            right: f.len(),
        });
    }
    let mut best = zero();
    let one = one();
    for t in f.values().iter().chain(std::iter::once(&one)) {
        let mask = f
            .values()
            .iter()
            .enumerate()
            .filter(|(_, v)| *v >= t)
            .fold(0usize, |m, (i, _)| m | 1 << i);
        let v = norm.apply_unchecked(t, cap.get(mask));
        if v > best {
            best = v;
        }
    }
    Ok(best)
}

#[derive(Debug, Clone)]
pub struct TnormedIntegral {
    pub capacity: Capacity,
    pub norm: TNorm,
}

impl Functional for TnormedIntegral {
    fn eval(&self, f: &GridFunction) -> Result<Rational> {
        tnormed_integral(&self.capacity, self.norm, f)
    }

    fn label(&self) -> String {
        format!("tnormed-integral[{}]", self.norm)
    }
}

/// Every grid function over a chain and `n` points, in lexicographic order
/// (coordinate 0 most significant), with the pair lists the checkers need.
#[derive(Debug, Clone)]
pub struct GridDomain {
    chain: GridChain,
    n: usize,
    codes: Vec<Vec<u8>>,
    functions: Vec<GridFunction>,
    lookup: HashMap<Vec<u8>, usize>,
    /// `(i, j, join)` with `i < j`, `f_i`, `f_j` comonotone.
    comonotone_pairs: Vec<(usize, usize, usize)>,
    /// `(i, j)` with `i != j` and `f_i <= f_j` pointwise.
    ordered_pairs: Vec<(usize, usize)>,
}

impl GridDomain {
    pub fn new(chain: &GridChain, n: usize) -> Result<Self> {
        let m = chain.len();
        if n == 0 {
            return Err(LabError::InvalidFunction("space must have at least one point".into()));
        }
        if m > u8::MAX as usize {
            return Err(LabError::InvalidChain("chains longer than 255 values are not supported".into()));
        }
        let size = (m as u128).checked_pow(n as u32).filter(|&s| s <= MAX_DOMAIN as u128).ok_or_else(|| {
            LabError::InvalidFunction(format!("grid domain {m}^{n} exceeds {MAX_DOMAIN} functions"))
        })? as usize;

        let mut codes = Vec::with_capacity(size);
        for k in 0..size {
            let mut code = vec![0u8; n];
            let mut rest = k;
            for slot in code.iter_mut().rev() {
                *slot = (rest % m) as u8;
                rest /= m;
            }
            codes.push(code);
        }
        let functions = codes
            .iter()
            .map(|c| GridFunction::new_unchecked(c.iter().map(|&i| chain.values()[i as usize].clone()).collect()))
            .collect();
        let lookup: HashMap<Vec<u8>, usize> = codes.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();

        let mut comonotone_pairs = Vec::new();
        let mut ordered_pairs = Vec::new();
        for i in 0..size {
            for j in 0..size {
                if i == j {
                    continue;
                }
                let (a, b) = (&codes[i], &codes[j]);
                if a.iter().zip(b).all(|(x, y)| x <= y) {
                    ordered_pairs.push((i, j));
                }
                if i < j && comonotone_witness(a, b).is_none() {
                    let join: Vec<u8> = a.iter().zip(b).map(|(x, y)| *x.max(y)).collect();
                    comonotone_pairs.push((i, j, lookup[&join]));
                }
            }
        }
        Ok(GridDomain {
            chain: chain.clone(),
            n,
            codes,
            functions,
            lookup,
            comonotone_pairs,
            ordered_pairs,
        })
    }

    pub fn chain(&self) -> &GridChain {
        &self.chain
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn functions(&self) -> &[GridFunction] {
        &self.functions
    }

    pub fn function(&self, i: usize) -> &GridFunction {
        &self.functions[i]
    }

    pub fn comonotone_pairs(&self) -> &[(usize, usize, usize)] {
        &self.comonotone_pairs
    }

    pub fn ordered_pairs(&self) -> &[(usize, usize)] {
        &self.ordered_pairs
    }

    /// Position of a grid function in the enumeration, if it lies on the grid.
    pub fn index_of(&self, f: &GridFunction) -> Option<usize> {
        if f.len() != self.n {
            return None;
        }
        let code: Option<Vec<u8>> = f.values().iter().map(|v| self.chain.index_of(v).map(|i| i as u8)).collect();
        self.lookup.get(&code?).copied()
    }

    pub fn code(&self, i: usize) -> &[u8] {
        &self.codes[i]
    }

    /// Index of the constant function at chain position `c`.
    pub fn constant_index(&self, c: usize) -> usize {
        self.lookup[&vec![c as u8; self.n]]
    }

    pub fn tabulate<F: Functional + ?Sized>(&self, functional: &F) -> Result<Vec<Rational>> {
        self.functions.iter().map(|f| functional.eval(f)).collect()
    }

    /// First comonotone pair `(i, j)` where `F(f_i v f_j) != max(F(f_i), F(f_j))`.
    pub fn maxitivity_violation<T: Ord>(&self, table: &[T]) -> Option<(usize, usize)> {
        self.comonotone_pairs
            .iter()
            .find(|&&(i, j, k)| table[k] != *std::cmp::max(&table[i], &table[j]))
            .map(|&(i, j, _)| (i, j))
    }

    /// First `(i, j)` with `f_i <= f_j` and `F(f_i) > F(f_j)`.
    pub fn monotonicity_violation<T: Ord>(&self, table: &[T]) -> Option<(usize, usize)> {
        self.ordered_pairs.iter().find(|&&(i, j)| table[i] > table[j]).copied()
    }
}

/// A failed property check: the functions involved and the two sides that differ.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub property: &'static str,
    pub functions: Vec<GridFunction>,
    pub scalar: Option<Rational>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl Violation {
    pub fn to_json(&self) -> Value {
        json!({
            "property": self.property,
            "functions": self.functions.iter().map(|f| f.to_strings()).collect::<Vec<_>>(),
            "scalar": self.scalar.as_ref().map(fmt_rational),
            "lhs": fmt_rational(&self.lhs),
            "rhs": fmt_rational(&self.rhs),
        })
    }
}

/// Outcome of an exhaustive check: holds, or the first violation found.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<Violation>,
    pub cases: u64,
}

impl Check {
    fn from(cases: u64, witness: Option<Violation>) -> Self {
        Check {
            holds: witness.is_none(),
            witness,
            cases,
        }
    }
}

/// `F(c_X) = c` for every `c` in the chain.
pub fn is_normalized<F: Functional + ?Sized>(functional: &F, chain: &GridChain, n: usize) -> Result<Check> {
    let mut cases = 0;
    for c in chain.values() {
        cases += 1;
        let cx = GridFunction::constant(c.clone(), n)?;
        let v = functional.eval(&cx)?;
        if v != *c {
            return Ok(Check::from(
                cases,
                Some(Violation {
                    property: "normalized",
                    functions: vec![cx],
                    scalar: Some(c.clone()),
                    lhs: v,
                    rhs: c.clone(),
                }),
            ));
        }
    }
    Ok(Check::from(cases, None))
}

pub fn is_comonotonically_maxitive<F: Functional + ?Sized>(
    functional: &F,
    chain: &GridChain,
    n: usize,
) -> Result<Check> {
    let domain = GridDomain::new(chain, n)?;
    comonotonically_maxitive_on(&domain, functional)
}

pub fn comonotonically_maxitive_on<F: Functional + ?Sized>(domain: &GridDomain, functional: &F) -> Result<Check> {
    let table = domain.tabulate(functional)?;
    let witness = domain.maxitivity_violation(&table).map(|(i, j)| {
        let k = domain.comonotone_pairs().iter().find(|p| p.0 == i && p.1 == j).unwrap().2;
        Violation {
            property: "comonotonically maxitive",
            functions: vec![domain.function(i).clone(), domain.function(j).clone()],
            scalar: None,
            lhs: table[k].clone(),
            rhs: table[i].clone().max(table[j].clone()),
        }
    });
    Ok(Check::from(domain.comonotone_pairs().len() as u64, witness))
}

/// `F(f v g) = max(F(f), F(g))` over all pairs, comonotone or not.
pub fn is_maxitive<F: Functional + ?Sized>(functional: &F, chain: &GridChain, n: usize) -> Result<Check> {
    let domain = GridDomain::new(chain, n)?;
    let table = domain.tabulate(functional)?;
    let mut cases = 0;
    for i in 0..domain.len() {
        for j in (i + 1)..domain.len() {
            cases += 1;
            let join = super::grid::join_finite(domain.function(i), domain.function(j))?;
            let k = domain.index_of(&join).expect("grid is join-closed");
            let rhs = table[i].clone().max(table[j].clone());
            if table[k] != rhs {
                return Ok(Check::from(
                    cases,
                    Some(Violation {
                        property: "maxitive",
                        functions: vec![domain.function(i).clone(), domain.function(j).clone()],
                        scalar: None,
                        lhs: table[k].clone(),
                        rhs,
                    }),
                ));
            }
        }
    }
    Ok(Check::from(cases, None))
}

pub fn is_monotone<F: Functional + ?Sized>(functional: &F, chain: &GridChain, n: usize) -> Result<Check> {
    let domain = GridDomain::new(chain, n)?;
    monotone_on(&domain, functional)
}

pub fn monotone_on<F: Functional + ?Sized>(domain: &GridDomain, functional: &F) -> Result<Check> {
    let table = domain.tabulate(functional)?;
    let witness = domain.monotonicity_violation(&table).map(|(i, j)| Violation {
        property: "monotone",
        functions: vec![domain.function(i).clone(), domain.function(j).clone()],
        scalar: None,
        lhs: table[i].clone(),
        rhs: table[j].clone(),
    });
    Ok(Check::from(domain.ordered_pairs().len() as u64, witness))
}

/// Extra random `(c, phi)` draws used for the product norm, whose products
/// leave every finite chain.
pub const PRODUCT_SAMPLES: usize = 256;
const PRODUCT_SAMPLE_SEED: u64 = 0x5eed_0fc0_ffee;

/// `F(c_X * phi) = c * F(phi)`.
///
/// Minimum and Lukasiewicz require the chain to be closed under the norm and
/// are checked over every `(c, phi)` on the grid. Product additionally draws
/// [`PRODUCT_SAMPLES`] seeded rational pairs off the grid.
pub fn is_star_homogeneous<F: Functional + ?Sized>(
    functional: &F,
    norm: TNorm,
    chain: &GridChain,
    n: usize,
) -> Result<Check> {
    let domain = GridDomain::new(chain, n)?;
    star_homogeneous_on(&domain, functional, norm)
}

pub fn star_homogeneous_on<F: Functional + ?Sized>(domain: &GridDomain, functional: &F, norm: TNorm) -> Result<Check> {
    let chain = domain.chain();
    if norm != TNorm::Product {
        for s in chain.values() {
            for t in chain.values() {
                let p = norm.apply_unchecked(s, t);
                if !chain.contains(&p) {
                    return Err(LabError::ChainNotClosed {
                        norm: norm.name(),
                        left: fmt_rational(s),
                        right: fmt_rational(t),
                        product: fmt_rational(&p),
                    });
                }
            }
        }
    }
    let mut cases = 0;
    let mut check_one = |c: &Rational, phi: &GridFunction| -> Result<Option<Violation>> {
        cases += 1;
        let scaled = GridFunction::new_unchecked(phi.values().iter().map(|v| norm.apply_unchecked(c, v)).collect());
        let lhs = functional.eval(&scaled)?;
        let rhs = norm.apply_unchecked(c, &functional.eval(phi)?);
        Ok((lhs != rhs).then(|| Violation {
            property: "star-homogeneous",
            functions: vec![phi.clone()],
            scalar: Some(c.clone()),
            lhs,
            rhs,
        }))
    };
    for c in chain.values() {
        for phi in domain.functions() {
            if let Some(v) = check_one(c, phi)? {
                return Ok(Check::from(cases, Some(v)));
            }
        }
    }
    if norm == TNorm::Product {
        let mut rng = ChaCha8Rng::seed_from_u64(PRODUCT_SAMPLE_SEED);
        let draw = |rng: &mut ChaCha8Rng| {
            let q: i64 = rng.gen_range(1..=12);
            rat(rng.gen_range(0..=q), q)
        };
        for _ in 0..PRODUCT_SAMPLES {
            let c = draw(&mut rng);
            let phi = GridFunction::new_unchecked((0..domain.n()).map(|_| draw(&mut rng)).collect());
            if let Some(v) = check_one(&c, &phi)? {
                return Ok(Check::from(cases, Some(v)));
            }
        }
    }
    Ok(Check::from(cases, None))
}

/// Membership bundle for `T*(X)`: normalized, comonotonically maxitive and
/// `*`-homogeneous. Monotonicity is reported alongside but is not part of
/// the conjunction.
#[derive(Debug, Clone)]
pub struct TStarChecks {
    pub normalized: Check,
    pub comonotonically_maxitive: Check,
    pub star_homogeneous: Check,
    pub monotone: Check,
}

impl TStarChecks {
    pub fn in_t_star(&self) -> bool {
        self.normalized.holds && self.comonotonically_maxitive.holds && self.star_homogeneous.holds
    }
}

pub fn t_star_checks_on<F: Functional + ?Sized>(domain: &GridDomain, functional: &F, norm: TNorm) -> Result<TStarChecks> {
    Ok(TStarChecks {
        normalized: is_normalized(functional, domain.chain(), domain.n())?,
        comonotonically_maxitive: comonotonically_maxitive_on(domain, functional)?,
        star_homogeneous: star_homogeneous_on(domain, functional, norm)?,
        monotone: monotone_on(domain, functional)?,
    })
}

pub fn is_in_t_star<F: Functional + ?Sized>(functional: &F, norm: TNorm, chain: &GridChain, n: usize) -> Result<bool> {
    let domain = GridDomain::new(chain, n)?;
    Ok(t_star_checks_on(&domain, functional, norm)?.in_t_star())
}
