use thiserror::Error;

use crate::marks::Marks;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("weight a_{index} = {value} is outside (0, 1]")]
    WeightOutOfRange { index: usize, value: Rational },

    #[error("unstable space: 2g - 2 + sum(a_i) = {value} is not > 0 (g = {genus})")]
    Unstable { genus: u32, value: Rational },

    #[error("too many markings: {0} (at most 63 are supported)")]
    TooManyMarkings(usize),

    #[error("marking index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("genus part {part} is outside 0..={genus}")]
    GenusOutOfRange { part: u32, genus: u32 },

    #[error("boundary stratum D({part};{marks}) does not exist: weight {weight} of its genus-0 side is not > 1")]
    AbsentStratum {
        part: u32,
        marks: Marks,
        weight: Rational,
    },

    #[error("boundary stratum D({part};{marks}) vanishes by convention (genus-0 side with at most one marking)")]
    ZeroStratum { part: u32, marks: Marks },

    #[error("coincident-section divisor Dsec({i},{j}) needs w <= 1 and i != j (w = {weight})")]
    HeavySections {
        i: usize,
        j: usize,
        weight: Rational,
    },

    #[error("D_irr needs genus >= 1")]
    NoIrreducibleBoundary,

    #[error("generator {0} is not in canonical form for this space")]
    NonCanonical(String),

    #[error("class lives on {found}, expected {expected}")]
    SpaceMismatch { expected: String, found: String },

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("chi pull-back undefined on individual nodal generators: the nodal part must be a multiple of D_nod")]
    OutsideDomain,

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
