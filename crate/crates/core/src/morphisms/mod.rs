//! Push-forward, pull-back and boundary restriction operators.
//!
//! Every operator is the linear extension of a table on generators. Formula
//! outputs that name a conventionally-zero or non-existent generator of the
//! target are dropped.

mod coincident;
mod forgetful;
mod irreducible;
mod nodal;
mod reduction;

pub use coincident::CoincidentBoundaryMap;
pub use forgetful::ForgetfulMap;
pub use irreducible::IrreducibleBoundaryMap;
pub use nodal::{NodalBoundaryMap, PairClass};
pub use reduction::{full_reduction_pullback, full_reduction_pushforward, ReductionMap};
