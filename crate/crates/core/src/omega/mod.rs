//! The compactum `X = {2} ∪ {1 - 1/n : n >= 1} ∪ {1}`, representable
//! functions on it, and the indicator functional `nu` that is comonotonically
//! maxitive without being monotone.

pub mod comonotone;
pub mod explore;
pub mod family;
pub mod function;
pub mod generate;
pub mod lattice;
pub mod membership;
pub mod point;
pub mod suite;

pub use comonotone::{comonotone_omega, pair_product, Comonotonicity};
pub use explore::{problem1_exploration, Candidate, ExploreParams};
pub use family::{structured_family, FamilyParams};
pub use function::{eval, make_constant, make_f, OmegaFunction, OmegaJson};
pub use generate::{generate_comonotone_pair, generate_free_pair, sample_seed, GeneratorParams, MonotoneMap};
pub use lattice::{attained_max, join, leq, meet, AttainedMax};
pub use membership::{classify_pair, membership, nu_eval, MembershipFlags, ProofBranch};
pub use point::OmegaPoint;
pub use suite::{theorem2_suite, Theorem2Params};
