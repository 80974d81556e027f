//! Exact calculus of tautological divisor classes on moduli spaces of
//! weighted pointed stable curves.

pub mod class;
pub mod consistency;
pub mod error;
pub mod expr;
pub mod generator;
pub mod grid;
pub mod lcm;
pub mod marks;
pub mod morphisms;
pub mod rational;
pub mod relative;
pub mod report;
pub mod space;
pub mod suite;

pub use class::{classes_equal, normal_form, DivisorClass, RelationSet};
pub use error::{Error, Result};
pub use generator::Generator;
pub use marks::Marks;
pub use rational::Rational;
pub use report::{Check, Difference, VerificationReport};
pub use space::{make_space, ModuliSpace, WeightDatum};
