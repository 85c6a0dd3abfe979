//! Suite configuration and subcommand dispatch for the command-line tool.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::LabError;
use crate::finite::{comonotone_finite, integral_properties, theorem1_census, GridChain};
use crate::io::{validate, Diagnostics, ParsedInput};
use crate::omega::{
    comonotone_omega, pair_product, problem1_exploration, theorem2_suite, ExploreParams, FamilyParams,
    GeneratorParams, Theorem2Params,
};
use crate::rational::{fmt_rational, parse_rational_list, Rational};
use crate::report::{Status, VerificationReport};
use crate::tnorm::{check_tnorm_axioms, TNorm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    VerifyCounterexample,
    FiniteCensus,
    IntegralProperties,
    TnormAxioms,
    ComonotoneCheck,
    ExploreProblem1,
    Validate,
}

impl Subcommand {
    pub const ALL: [Subcommand; 7] = [
        Subcommand::VerifyCounterexample,
        Subcommand::FiniteCensus,
        Subcommand::IntegralProperties,
        Subcommand::TnormAxioms,
        Subcommand::ComonotoneCheck,
        Subcommand::ExploreProblem1,
        Subcommand::Validate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::VerifyCounterexample => "verify-counterexample",
            Subcommand::FiniteCensus => "finite-census",
            Subcommand::IntegralProperties => "integral-properties",
            Subcommand::TnormAxioms => "tnorm-axioms",
            Subcommand::ComonotoneCheck => "comonotone-check",
            Subcommand::ExploreProblem1 => "explore-problem1",
            Subcommand::Validate => "validate",
        }
    }
}

impl FromStr for Subcommand {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Subcommand::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown subcommand {s:?}"))
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: u64,
    pub prefix_max: usize,
    pub grid: GridChain,
    pub n: usize,
    pub budget: u64,
    pub jobs: usize,
    pub output_path: Option<PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            samples: 10_000,
            prefix_max: 2,
            grid: GridChain::uniform(2),
            n: 2,
            budget: 10_000_000,
            jobs: 1,
            output_path: None,
        }
    }
}

/// The settings that determine report contents. `jobs` and the output path
/// only affect how and where a suite runs, so they are not echoed.
#[derive(Serialize)]
struct ConfigEcho {
    seed: u64,
    samples: u64,
    prefix_max: usize,
    grid: Vec<String>,
    n: usize,
    budget: u64,
}

impl SuiteConfig {
    pub fn parse_grid(s: &str) -> Result<GridChain, RunError> {
        let values = parse_rational_list(s).map_err(|e| RunError::Usage(format!("--grid: {e}")))?;
        GridChain::new(values).map_err(|e| RunError::Usage(format!("--grid: {e}")))
    }

    pub fn echo(&self) -> Value {
        serde_json::to_value(ConfigEcho {
            seed: self.seed,
            samples: self.samples,
            prefix_max: self.prefix_max,
            grid: self.grid.values().iter().map(fmt_rational).collect(),
            n: self.n,
            budget: self.budget,
        })
        .expect("serializable")
    }

    fn check(&self) -> Result<(), RunError> {
        let positive = [
            ("--samples", self.samples as usize),
            ("--prefix-max", self.prefix_max),
            ("--n", self.n),
            ("--budget", self.budget as usize),
            ("--jobs", self.jobs),
        ];
        for (flag, v) in positive {
            if v == 0 {
                return Err(RunError::Usage(format!("{flag} must be positive")));
            }
        }
        Ok(())
    }
}

#[derive(Debug)]
pub enum RunError {
    /// Malformed flags or arguments.
    Usage(String),
    /// An input file failed validation.
    Input { path: PathBuf, diagnostics: Diagnostics },
    /// The exhaustive enumeration would exceed the budget.
    Budget { count: String, budget: u64 },
    Lab(LabError),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Usage(m) => write!(f, "usage: {m}"),
            RunError::Input { path, diagnostics } => {
                for d in &diagnostics.0 {
                    writeln!(f, "{}: {d}", path.display())?;
                }
                Ok(())
            }
            RunError::Budget { count, budget } => {
                write!(f, "enumeration budget exceeded: {count} functionals > budget {budget}")
            }
            RunError::Lab(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<LabError> for RunError {
    fn from(e: LabError) -> Self {
        match e {
            LabError::BudgetExceeded { count, budget } => RunError::Budget { count, budget },
            other => RunError::Lab(other),
        }
    }
}

impl RunError {
    /// Every error is an input or configuration problem.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

/// Exit code for a finished report: 1 on any failure, 0 otherwise.
pub fn exit_code(report: &VerificationReport) -> i32 {
    if report.status == Status::Fail {
        1
    } else {
        0
    }
}

pub fn run(cmd: Subcommand, config: &SuiteConfig, inputs: &[PathBuf]) -> Result<VerificationReport, RunError> {
    config.check()?;
    if !inputs.is_empty() && !matches!(cmd, Subcommand::ComonotoneCheck | Subcommand::Validate) {
        return Err(RunError::Usage(format!("{cmd} takes no input files")));
    }
    let family = FamilyParams {
        prefix_max: config.prefix_max,
        grid: config.grid.values().to_vec(),
    };
    let generator = GeneratorParams {
        prefix_max: config.prefix_max,
        ..GeneratorParams::default()
    };
    let mut report = match cmd {
        Subcommand::VerifyCounterexample => theorem2_suite(&Theorem2Params {
            seed: config.seed,
            samples: config.samples,
            family,
            generator,
            jobs: config.jobs,
        })?,
        Subcommand::FiniteCensus => theorem1_census(&config.grid, config.n, config.budget, config.jobs)?,
        Subcommand::IntegralProperties => integral_properties(&config.grid, config.n, &TNorm::ALL, config.jobs)?,
        Subcommand::TnormAxioms => {
            let parts = TNorm::ALL
                .iter()
                .map(|n| check_tnorm_axioms(n, config.grid.values()))
                .collect::<Result<Vec<_>, _>>()?;
            VerificationReport::bundle("tnorm-axioms", 0, parts)
        }
        Subcommand::ComonotoneCheck => comonotone_check(inputs)?,
        Subcommand::ExploreProblem1 => problem1_exploration(&ExploreParams {
            seed: config.seed,
            samples: config.samples,
            family,
            generator,
        })?,
        Subcommand::Validate => validate_files(inputs)?,
    };
    report.seed = config.seed;
    report.config_echo = config.echo();
    Ok(report)
}

fn load_all(inputs: &[PathBuf]) -> Result<Vec<ParsedInput>, RunError> {
    inputs
        .iter()
        .map(|p| {
            validate(p).map_err(|diagnostics| RunError::Input {
                path: p.clone(),
                diagnostics,
            })
        })
        .collect()
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn validate_files(inputs: &[PathBuf]) -> Result<VerificationReport, RunError> {
    if inputs.is_empty() {
        return Err(RunError::Usage("validate needs at least one input file".into()));
    }
    let parsed = load_all(inputs)?;
    let mut report = VerificationReport::new("validate", 0);
    report.count("files", parsed.len() as u64);
    for (p, doc) in inputs.iter().zip(&parsed) {
        report.witnesses.push(json!({
            "file": display(p),
            "kind": doc.kind(),
            "canonical": doc.to_json(),
        }));
    }
    Ok(report)
}

/// Pairwise comonotonicity over the input files, which must all be
/// functions on `X` or all grid functions of one length.
fn comonotone_check(inputs: &[PathBuf]) -> Result<VerificationReport, RunError> {
    if inputs.len() < 2 {
        return Err(RunError::Usage("comonotone-check needs at least two input files".into()));
    }
    let parsed = load_all(inputs)?;
    let mut report = VerificationReport::new("comonotone-check", 0);
    let mut pairs = 0u64;
    let mut violations = 0u64;
    for i in 0..parsed.len() {
        for j in (i + 1)..parsed.len() {
            pairs += 1;
            let files = json!([display(&inputs[i]), display(&inputs[j])]);
            match (&parsed[i], &parsed[j]) {
                (ParsedInput::Omega(f), ParsedInput::Omega(g)) => {
                    if let Some((a, b)) = comonotone_omega(f, g).witness() {
                        violations += 1;
                        let product: Rational = pair_product(f, g, a, b);
                        report.witnesses.push(json!({
                            "files": files,
                            "comonotone": false,
                            "points": [a.to_string(), b.to_string()],
                            "product": fmt_rational(&product),
                        }));
                    }
                }
                (ParsedInput::Grid(f), ParsedInput::Grid(g)) => {
                    let ok = comonotone_finite(f, g).map_err(RunError::from)?;
                    if !ok {
                        violations += 1;
                        let (a, b) = crate::finite::grid::comonotone_witness(f.values(), g.values())
                            .expect("non-comonotone pair has a witness");
                        let product = (f.at(a) - f.at(b)) * (g.at(a) - g.at(b));
                        report.witnesses.push(json!({
                            "files": files,
                            "comonotone": false,
                            "points": [a, b],
                            "product": fmt_rational(&product),
                        }));
                    }
                }
                (a, b) => {
                    return Err(RunError::Usage(format!(
                        "cannot compare a {} with a {}",
                        a.kind(),
                        b.kind()
                    )));
                }
            }
        }
    }
    report.count("pairs", pairs);
    report.count("not_comonotone", violations);
    if violations > 0 {
        report.status = Status::Finding;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subcommand_names_round_trip() {
        for c in Subcommand::ALL {
            assert_eq!(c.name().parse::<Subcommand>().unwrap(), c);
        }
        assert!("bogus".parse::<Subcommand>().is_err());
    }

    #[test]
    fn echo_leaves_out_jobs() {
        let mut a = SuiteConfig::default();
        let mut b = SuiteConfig::default();
        a.jobs = 1;
        b.jobs = 4;
        b.output_path = Some("x.json".into());
        assert_eq!(a.echo(), b.echo());
        assert!(a.echo().get("jobs").is_none());
    }

    #[test]
    fn census_budget_refusal() {
        let cfg = SuiteConfig {
            n: 3,
            budget: 1_000_000,
            ..SuiteConfig::default()
        };
        match run(Subcommand::FiniteCensus, &cfg, &[]) {
            Err(RunError::Budget { count, .. }) => assert_eq!(count, "7625597484987"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_grid_flag() {
        assert!(SuiteConfig::parse_grid("0,1/2").is_err());
        assert!(SuiteConfig::parse_grid("0,x,1").is_err());
        assert_eq!(SuiteConfig::parse_grid("0,1/4,1/2,3/4,1").unwrap().len(), 5);
    }

    #[test]
    fn tnorm_axioms_default_grid() {
        let r = run(Subcommand::TnormAxioms, &SuiteConfig::default(), &[]).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.get("tnorm-axioms/product.violations"), 0);
    }
}
