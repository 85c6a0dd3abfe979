//! Exact-arithmetic laboratory for comonotonically maxitive functionals.
//!
//! * [`tnorm`]: the minimum, product and Łukasiewicz t-norms and axiom checks.
//! * [`finite`]: functionals on `[0,1]^n` restricted to a finite grid,
//!   t-normed integrals, and exhaustive property checks and censuses.
//! * [`omega`]: the compactum `{2} ∪ {1 - 1/n} ∪ {1}`, representable
//!   functions on it, and the indicator functional `nu`.
//! * [`runner`]: suite configuration, JSON input validation and dispatch used
//!   by the command-line tool.

pub mod error;
pub mod finite;
pub mod io;
pub mod omega;
pub mod par;
pub mod rational;
pub mod report;
pub mod runner;
pub mod tnorm;

pub use error::{LabError, Result};
pub use rational::Rational;
pub use report::{Status, VerificationReport};
pub use tnorm::TNorm;
