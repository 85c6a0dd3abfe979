//! JSON input documents: parsing with per-field diagnostics.
//!
//! * grid function: `{"values": ["1/2", "3/4"]}`
//! * capacity: `{"n": 2, "mu": {"": "0", "0": "1/2", "1": "1/2", "01": "1"}}`
//! * representable function on `X`:
//!   `{"vP": "1/2", "prefix": ["0", "1/2"], "alpha": "0", "beta": "1/2"}`,
//!   optionally with `"vLim"`, which must equal `alpha + beta`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::finite::{Capacity, GridFunction};
use crate::omega::{OmegaFunction, OmegaPoint};
use crate::rational::{fmt_rational, in_unit_interval, parse_rational, Rational};

/// One problem with an input, located by JSON path (`$.prefix[1]`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        f.write_str(&lines.join("\n"))
    }
}

impl std::error::Error for Diagnostics {}

fn diag(path: impl Into<String>, message: impl Into<String>) -> Diagnostic {
    Diagnostic {
        path: path.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ParsedInput {
    Grid(GridFunction),
    Capacity(Capacity),
    Omega(OmegaFunction),
}

impl ParsedInput {
    pub fn kind(&self) -> &'static str {
        match self {
            ParsedInput::Grid(_) => "grid_function",
            ParsedInput::Capacity(_) => "capacity",
            ParsedInput::Omega(_) => "omega_function",
        }
    }

    /// Canonical form, in the same schema as the input.
    pub fn to_json(&self) -> Value {
        match self {
            ParsedInput::Grid(f) => json!({"values": f.to_strings()}),
            ParsedInput::Capacity(c) => json!({"n": c.n(), "mu": c.to_subset_map()}),
            ParsedInput::Omega(f) => f.to_json(),
        }
    }
}

fn rational_at(v: Option<&Value>, path: &str, out: &mut Vec<Diagnostic>) -> Option<Rational> {
    match v {
        None => {
            out.push(diag(path, "missing"));
            None
        }
        Some(Value::String(s)) => match parse_rational(s) {
            Ok(r) => Some(r),
            Err(_) => {
                out.push(diag(path, format!("not a rational \"p/q\": {s:?}")));
                None
            }
        },
        Some(other) => {
            out.push(diag(path, format!("expected a \"p/q\" string, got {other}")));
            None
        }
    }
}

fn unit_at(v: Option<&Value>, path: &str, out: &mut Vec<Diagnostic>) -> Option<Rational> {
    let r = rational_at(v, path, out)?;
    if in_unit_interval(&r) {
        Some(r)
    } else {
        out.push(diag(path, format!("value {} outside [0,1]", fmt_rational(&r))));
        None
    }
}

fn unknown_keys(obj: &Map<String, Value>, allowed: &[&str], out: &mut Vec<Diagnostic>) {
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            out.push(diag(format!("$.{k}"), "unknown field"));
        }
    }
}

fn finish<T>(value: Option<T>, mut out: Vec<Diagnostic>) -> Result<T, Diagnostics> {
    match value {
        Some(v) if out.is_empty() => Ok(v),
        _ => {
            if out.is_empty() {
                out.push(diag("$", "invalid document"));
            }
            Err(Diagnostics(out))
        }
    }
}

pub fn parse_grid_function(v: &Value) -> Result<GridFunction, Diagnostics> {
    let mut out = Vec::new();
    let Some(obj) = v.as_object() else {
        return Err(Diagnostics(vec![diag("$", "expected an object")]));
    };
    unknown_keys(obj, &["values"], &mut out);
    let values = match obj.get("values") {
        Some(Value::Array(items)) => {
            let parsed: Vec<Option<Rational>> = items
                .iter()
                .enumerate()
                .map(|(i, x)| unit_at(Some(x), &format!("$.values[{i}]"), &mut out))
                .collect();
            parsed.into_iter().collect::<Option<Vec<_>>>()
        }
        Some(_) => {
            out.push(diag("$.values", "expected an array"));
            None
        }
        None => {
            out.push(diag("$.values", "missing"));
            None
        }
    };
    let f = values.and_then(|vals| GridFunction::new(vals).ok());
    finish(f, out)
}

pub fn parse_capacity(v: &Value) -> Result<Capacity, Diagnostics> {
    let mut out = Vec::new();
    let Some(obj) = v.as_object() else {
        return Err(Diagnostics(vec![diag("$", "expected an object")]));
    };
    unknown_keys(obj, &["n", "mu"], &mut out);
    let n = match obj.get("n").and_then(Value::as_u64) {
        Some(n) if (1..=10).contains(&n) => Some(n as usize),
        Some(n) => {
            out.push(diag("$.n", format!("space size {n} outside 1..=10")));
            None
        }
        None => {
            out.push(diag("$.n", "missing or not a positive integer"));
            None
        }
    };
    let mu = match obj.get("mu") {
        Some(Value::Object(m)) => {
            let mut map = BTreeMap::new();
            let mut ok = true;
            for (k, x) in m {
                match unit_at(Some(x), &format!("$.mu.{k:?}"), &mut out) {
                    Some(r) => {
                        map.insert(k.clone(), r);
                    }
                    None => ok = false,
                }
            }
            ok.then_some(map)
        }
        Some(_) => {
            out.push(diag("$.mu", "expected an object keyed by subset strings"));
            None
        }
        None => {
            out.push(diag("$.mu", "missing"));
            None
        }
    };
    let cap = match (n, mu) {
        (Some(n), Some(mu)) if out.is_empty() => match Capacity::from_subset_map(n, &mu) {
            Ok(c) => Some(c),
            Err(e) => {
                out.push(diag("$.mu", e.to_string()));
                None
            }
        },
        _ => None,
    };
    finish(cap, out)
}

pub fn parse_omega_function(v: &Value) -> Result<OmegaFunction, Diagnostics> {
    let mut out = Vec::new();
    let Some(obj) = v.as_object() else {
        return Err(Diagnostics(vec![diag("$", "expected an object")]));
    };
    unknown_keys(obj, &["vP", "prefix", "alpha", "beta", "vLim"], &mut out);
    let v_p = unit_at(obj.get("vP"), "$.vP", &mut out);
    let prefix = match obj.get("prefix") {
        None => Some(Vec::new()),
        Some(Value::Array(items)) => {
            let parsed: Vec<Option<Rational>> = items
                .iter()
                .enumerate()
                .map(|(i, x)| unit_at(Some(x), &format!("$.prefix[{i}]"), &mut out))
                .collect();
            parsed.into_iter().collect::<Option<Vec<_>>>()
        }
        Some(_) => {
            out.push(diag("$.prefix", "expected an array"));
            None
        }
    };
    let alpha = rational_at(obj.get("alpha"), "$.alpha", &mut out);
    let beta = rational_at(obj.get("beta"), "$.beta", &mut out);
    if let (Some(a), Some(b)) = (&alpha, &beta) {
        let limit = a + b;
        if !in_unit_interval(&limit) {
            out.push(diag(
                "$.alpha",
                format!("tail limit alpha+beta = {} outside [0,1]", fmt_rational(&limit)),
            ));
        }
        if let Some(p) = &prefix {
            let first = OmegaPoint::Index(p.len() as u64 + 1);
            let t = first.coordinate();
            let v = a * &t + b;
            if !in_unit_interval(&v) {
                out.push(diag(
                    "$.beta",
                    format!("tail value {} at {first} outside [0,1]", fmt_rational(&v)),
                ));
            }
        }
        if obj.contains_key("vLim") {
            if let Some(v_lim) = rational_at(obj.get("vLim"), "$.vLim", &mut out) {
                if v_lim != limit {
                    out.push(diag(
                        "$.vLim",
                        format!(
                            "continuity violated: vLim = {} but alpha+beta = {}",
                            fmt_rational(&v_lim),
                            fmt_rational(&limit)
                        ),
                    ));
                }
            }
        }
    }
    let f = match (v_p, prefix, alpha, beta) {
        (Some(v_p), Some(prefix), Some(alpha), Some(beta)) if out.is_empty() => {
            match OmegaFunction::new(v_p, prefix, alpha, beta) {
                Ok(f) => Some(f),
                Err(e) => {
                    out.push(diag("$", e.to_string()));
                    None
                }
            }
        }
        _ => None,
    };
    finish(f, out)
}

/// Detects the schema by its keys and parses.
pub fn parse_input(v: &Value) -> Result<ParsedInput, Diagnostics> {
    let Some(obj) = v.as_object() else {
        return Err(Diagnostics(vec![diag("$", "expected a JSON object")]));
    };
    if obj.contains_key("vP") {
        parse_omega_function(v).map(ParsedInput::Omega)
    } else if obj.contains_key("mu") {
        parse_capacity(v).map(ParsedInput::Capacity)
    } else if obj.contains_key("values") {
        parse_grid_function(v).map(ParsedInput::Grid)
    } else {
        Err(Diagnostics(vec![diag(
            "$",
            "unrecognized document: expected \"vP\" (function on X), \"values\" (grid function) or \"mu\" (capacity)",
        )]))
    }
}

pub fn validate_str(text: &str) -> Result<ParsedInput, Diagnostics> {
    let v: Value = serde_json::from_str(text).map_err(|e| Diagnostics(vec![diag("$", format!("invalid JSON: {e}"))]))?;
    parse_input(&v)
}

/// Reads, parses and checks every invariant of an input file.
pub fn validate(path: &Path) -> Result<ParsedInput, Diagnostics> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Diagnostics(vec![diag("$", format!("cannot read {}: {e}", path.display()))]))?;
    validate_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn rejects_out_of_range_vp() {
        let err = validate_str(r#"{"vP":"3/2","prefix":[],"alpha":"1","beta":"0"}"#).unwrap_err();
        assert_eq!(err.0[0].path, "$.vP");
        assert!(err.0[0].message.contains("outside [0,1]"));
    }

    #[test]
    fn reports_every_bad_field() {
        let err = validate_str(r#"{"vP":"2","prefix":["1/2","-1"],"alpha":"x","beta":"0","extra":1}"#).unwrap_err();
        let paths: Vec<&str> = err.0.iter().map(|d| d.path.as_str()).collect();
        assert!(paths.contains(&"$.vP"));
        assert!(paths.contains(&"$.prefix[1]"));
        assert!(paths.contains(&"$.alpha"));
        assert!(paths.contains(&"$.extra"));
    }

    #[test]
    fn continuity_is_checked() {
        let err = validate_str(r#"{"vP":"1","alpha":"1","beta":"0","vLim":"1/2"}"#).unwrap_err();
        assert_eq!(err.0[0].path, "$.vLim");
        assert!(validate_str(r#"{"vP":"1","alpha":"1","beta":"0","vLim":"1"}"#).is_ok());
    }

    #[test]
    fn f1_is_canonical() {
        let parsed = validate_str(r#"{"vP":"1","prefix":["0","1/2"],"alpha":"1","beta":"0"}"#).unwrap();
        match parsed {
            ParsedInput::Omega(f) => {
                assert_eq!(f.prefix_len(), 0);
                assert_eq!(f, OmegaFunction::make_f(1).unwrap());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn capacity_monotonicity_rejected() {
        let err = validate_str(r#"{"n":2,"mu":{"":"0","0":"1","1":"0","01":"1"},"extra":0}"#).unwrap_err();
        assert!(err.to_string().contains("extra"));
        let err = validate_str(r#"{"n":3,"mu":{"":"0","0":"1/2","1":"0","2":"0","01":"1/4","02":"1/2","12":"0","012":"1"}}"#)
            .unwrap_err();
        assert!(err.to_string().contains("monotonicity"), "{err}");
        let ok = validate_str(r#"{"n":2,"mu":{"":"0","0":"1/2","1":"1/2","01":"1"}}"#).unwrap();
        match ok {
            ParsedInput::Capacity(c) => assert_eq!(c.get(1), &rat(1, 2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn grid_function() {
        match validate_str(r#"{"values":["1/2","3/4"]}"#).unwrap() {
            ParsedInput::Grid(f) => assert_eq!(f.values(), &[rat(1, 2), rat(3, 4)]),
            other => panic!("{other:?}"),
        }
        assert!(validate_str(r#"{"values":["5/4"]}"#).is_err());
        assert!(validate_str(r#"{"values":[0.5]}"#).is_err());
    }

    #[test]
    fn unknown_document() {
        assert!(validate_str(r#"{"foo":1}"#).is_err());
        assert!(validate_str("not json").is_err());
    }
}
