//! The finite-space model: grid functions, capacities, t-normed integrals and
//! exhaustive checks of the `T*(X)` axioms.

pub mod capacity;
pub mod census;
pub mod functional;
pub mod grid;
pub mod properties;

pub use capacity::{enumerate_capacities, Capacity};
pub use census::{enumerate_functionals, functional_count, theorem1_census, TabulatedFunctional};
pub use functional::{
    is_comonotonically_maxitive, is_in_t_star, is_maxitive, is_monotone, is_normalized, is_star_homogeneous,
    tnormed_integral, Check, ConstantFunctional, Evaluation, FnFunctional, Functional, GridDomain, TStarChecks,
    TnormedIntegral, Violation,
};
pub use grid::{comonotone_finite, join_finite, meet_finite, GridChain, GridFunction};
pub use properties::integral_properties;
