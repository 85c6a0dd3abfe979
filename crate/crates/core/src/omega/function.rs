use std::fmt;

use serde::{Deserialize, Serialize};

use super::point::{sequence_point, OmegaPoint};
use crate::error::{LabError, Result};
use crate::rational::{check_unit, fmt_rational, one, zero, Rational};

/// A continuous `[0,1]`-valued function on `X` with a finite prefix and an
/// affine tail.
///
/// Values: `v_p` at `P`, `prefix[n-1]` at `Index(n)` for `n <= N`, and
/// `alpha * (1 - 1/n) + beta` at `Index(n)` for `n > N`. Continuity at 1
/// forces the value `alpha + beta` at `Limit`.
///
/// Values are kept in canonical form: `N` is minimal, i.e. the last prefix
/// entry never agrees with the tail rule. Two canonical functions are equal
/// exactly when they agree at every point of `X`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaFunction {
    v_p: Rational,
    prefix: Vec<Rational>,
    alpha: Rational,
    beta: Rational,
}

impl OmegaFunction {
    /// Validates ranges and canonicalizes.
    pub fn new(v_p: Rational, prefix: Vec<Rational>, alpha: Rational, beta: Rational) -> Result<Self> {
        check_unit(&v_p, "vP")?;
        for (i, v) in prefix.iter().enumerate() {
            check_unit(v, &format!("prefix[{i}]"))?;
        }
        let f = OmegaFunction {
            v_p,
            prefix,
            alpha,
            beta,
        };
        let first_tail = f.tail_value(f.prefix.len() as u64 + 1);
        check_unit(&first_tail, &format!("tail at Index({})", f.prefix.len() + 1))?;
        check_unit(&f.v_lim(), "tail limit alpha+beta")?;
        Ok(f.canonical())
    }

    /// As [`OmegaFunction::new`], also checking a supplied limit value
    /// against the continuity constraint `v_lim = alpha + beta`.
    pub fn with_limit(
        v_p: Rational,
        prefix: Vec<Rational>,
        alpha: Rational,
        beta: Rational,
        v_lim: &Rational,
    ) -> Result<Self> {
        if *v_lim != &alpha + &beta {
            return Err(LabError::InvalidFunction(format!(
                "continuity violated: vLim={} but alpha+beta={}",
                fmt_rational(v_lim),
                fmt_rational(&(&alpha + &beta))
            )));
        }
        OmegaFunction::new(v_p, prefix, alpha, beta)
    }

    /// Internal constructor for values already known to be in range.
    pub(crate) fn from_parts(v_p: Rational, prefix: Vec<Rational>, alpha: Rational, beta: Rational) -> Self {
        let f = OmegaFunction {
            v_p,
            prefix,
            alpha,
            beta,
        };
        debug_assert!(f.validate().is_ok(), "out-of-range parts: {f}");
        f.canonical()
    }

    fn validate(&self) -> Result<()> {
        OmegaFunction::new(self.v_p.clone(), self.prefix.clone(), self.alpha.clone(), self.beta.clone()).map(|_| ())
    }

    fn canonical(mut self) -> Self {
        while let Some(last) = self.prefix.last() {
            let n = self.prefix.len() as u64;
            if *last == self.tail_value(n) {
                self.prefix.pop();
            } else {
                break;
            }
        }
        self
    }

    pub fn v_p(&self) -> &Rational {
        &self.v_p
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn v_lim(&self) -> Rational {
        &self.alpha + &self.beta
    }

    /// The tail rule `alpha * (1 - 1/n) + beta`, whether or not `n` is past the prefix.
    pub fn tail_value(&self, n: u64) -> Rational {
        &self.alpha * sequence_point(n) + &self.beta
    }

    /// The tail rule at an arbitrary real `t`.
    pub fn tail_at(&self, t: &Rational) -> Rational {
        &self.alpha * t + &self.beta
    }

    pub fn eval(&self, x: OmegaPoint) -> Rational {
        match x {
            OmegaPoint::P => self.v_p.clone(),
            OmegaPoint::Index(n) if n >= 1 && n as usize <= self.prefix.len() => self.prefix[n as usize - 1].clone(),
            OmegaPoint::Index(n) => self.tail_value(n),
            OmegaPoint::Limit => self.v_lim(),
        }
    }

    /// Values at `Index(1..=m)`, `m >= N`.
    pub fn extended_prefix(&self, m: usize) -> Vec<Rational> {
        let mut out = self.prefix.clone();
        for n in self.prefix.len() + 1..=m {
            out.push(self.tail_value(n as u64));
        }
        out
    }

    pub fn make_constant(c: Rational) -> Result<Self> {
        check_unit(&c, "constant")?;
        Ok(OmegaFunction {
            v_p: c.clone(),
            prefix: Vec::new(),
            alpha: zero(),
            beta: c,
        })
    }

    /// `f_t` with `f_t(p) = t` and `f_t(a) = a` on the sequence and its limit.
    pub fn make_f(t: u8) -> Result<Self> {
        let v_p = match t {
            0 => zero(),
            1 => one(),
            _ => {
                return Err(LabError::InvalidFunction(format!("f_t is defined for t in {{0,1}}, got {t}")));
            }
        };
        Ok(OmegaFunction {
            v_p,
            prefix: Vec::new(),
            alpha: one(),
            beta: zero(),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(OmegaJson::from(self)).expect("serializable")
    }
}

impl fmt::Display for OmegaFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix: Vec<String> = self.prefix.iter().map(fmt_rational).collect();
        write!(
            f,
            "{{vP={}, prefix=[{}], tail={}*t+{}}}",
            self.v_p,
            prefix.join(","),
            self.alpha,
            self.beta
        )
    }
}

pub fn make_constant(c: Rational) -> Result<OmegaFunction> {
    OmegaFunction::make_constant(c)
}

pub fn make_f(t: u8) -> Result<OmegaFunction> {
    OmegaFunction::make_f(t)
}

pub fn eval(f: &OmegaFunction, x: OmegaPoint) -> Rational {
    f.eval(x)
}

/// Wire form: `{"vP":"1/2","prefix":["0"],"alpha":"0","beta":"1/2"}`, with an
/// optional `"vLim"` on input that must equal `alpha + beta`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OmegaJson {
    #[serde(rename = "vP", with = "crate::rational::serde_str")]
    pub v_p: Rational,
    #[serde(with = "crate::rational::serde_str_vec", default)]
    pub prefix: Vec<Rational>,
    #[serde(with = "crate::rational::serde_str")]
    pub alpha: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub beta: Rational,
    #[serde(rename = "vLim", skip_serializing, default, deserialize_with = "opt_rational::deserialize")]
    pub v_lim: Option<Rational>,
}

mod opt_rational {
    use serde::{Deserialize, Deserializer};

    use crate::rational::{parse_rational, Rational};

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let raw = Option::<String>::deserialize(d)?;
        raw.map(|s| parse_rational(&s).map_err(serde::de::Error::custom)).transpose()
    }
}

impl From<&OmegaFunction> for OmegaJson {
    fn from(f: &OmegaFunction) -> Self {
        OmegaJson {
            v_p: f.v_p.clone(),
            prefix: f.prefix.clone(),
            alpha: f.alpha.clone(),
            beta: f.beta.clone(),
            v_lim: None,
        }
    }
}

impl TryFrom<OmegaJson> for OmegaFunction {
    type Error = LabError;

    fn try_from(j: OmegaJson) -> Result<Self> {
        match j.v_lim {
            Some(v_lim) => OmegaFunction::with_limit(j.v_p, j.prefix, j.alpha, j.beta, &v_lim),
            None => OmegaFunction::new(j.v_p, j.prefix, j.alpha, j.beta),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn f_t_values() {
        let f1 = make_f(1).unwrap();
        let f0 = make_f(0).unwrap();
        assert_eq!(f1.eval(OmegaPoint::Index(2)), rat(1, 2));
        assert_eq!(f1.eval(OmegaPoint::Index(3)), rat(2, 3));
        assert_eq!(f1.eval(OmegaPoint::Limit), int(1));
        assert_eq!(f1.eval(OmegaPoint::P), int(1));
        assert_eq!(f0.eval(OmegaPoint::P), int(0));
        assert!(make_f(2).is_err());
    }

    #[test]
    fn constant_everywhere() {
        let c = make_constant(rat(1, 3)).unwrap();
        for x in [OmegaPoint::P, OmegaPoint::Index(1), OmegaPoint::Index(99), OmegaPoint::Limit] {
            assert_eq!(c.eval(x), rat(1, 3));
        }
        assert!(make_constant(rat(4, 3)).is_err());
    }

    #[test]
    fn prefix_then_tail() {
        let f = OmegaFunction::new(int(1), vec![int(0)], int(0), rat(1, 2)).unwrap();
        assert_eq!(f.eval(OmegaPoint::Index(1)), int(0));
        assert_eq!(f.eval(OmegaPoint::Index(5)), rat(1, 2));
        assert_eq!(f.prefix_len(), 1);
    }

    #[test]
    fn canonicalizes_trailing_entries() {
        // prefix entries agree with t -> t at a_1 = 0, a_2 = 1/2
        let f = OmegaFunction::new(int(1), vec![int(0), rat(1, 2)], int(1), int(0)).unwrap();
        assert_eq!(f, make_f(1).unwrap());
        // a matching entry before a non-matching one stays
        let g = OmegaFunction::new(int(1), vec![int(0), rat(1, 3)], int(1), int(0)).unwrap();
        assert_eq!(g.prefix_len(), 2);
    }

    #[test]
    fn range_checks() {
        assert!(OmegaFunction::new(rat(3, 2), vec![], int(0), int(0)).is_err());
        assert!(OmegaFunction::new(int(0), vec![rat(-1, 2)], int(0), int(0)).is_err());
        // tail starts at -1 at a_1 = 0
        assert!(OmegaFunction::new(int(0), vec![], int(2), int(-1)).is_err());
        // past the prefix the tail is in range: 2*(1/2) - 1 = 0
        assert!(OmegaFunction::new(int(0), vec![int(0)], int(2), int(-1)).is_ok());
        // limit above 1
        assert!(OmegaFunction::new(int(0), vec![], int(1), rat(1, 2)).is_err());
    }

    #[test]
    fn continuity_check() {
        assert!(OmegaFunction::with_limit(int(1), vec![], int(1), int(0), &int(1)).is_ok());
        assert!(OmegaFunction::with_limit(int(1), vec![], int(1), int(0), &rat(1, 2)).is_err());
    }

    #[test]
    fn json_shape() {
        let f = OmegaFunction::new(rat(1, 2), vec![int(0)], int(0), rat(1, 2)).unwrap();
        let s = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(s, r#"{"alpha":"0","beta":"1/2","prefix":["0"],"vP":"1/2"}"#);
        let back: OmegaJson = serde_json::from_str(&s).unwrap();
        assert_eq!(OmegaFunction::try_from(back).unwrap(), f);
    }
}
