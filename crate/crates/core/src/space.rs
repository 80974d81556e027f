//! Weight data and the moduli spaces they define.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::marks::{Marks, MAX_MARKINGS};
use crate::rational::{format_rational_list, int, Rational};

/// An ordered list of marking weights, each in `(0, 1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightDatum(Arc<[Rational]>);

impl WeightDatum {
    pub fn new(weights: Vec<Rational>) -> Result<WeightDatum> {
        if weights.len() > MAX_MARKINGS {
            return Err(Error::TooManyMarkings(weights.len()));
        }
        for (k, a) in weights.iter().enumerate() {
            if !a.is_positive_weight() {
                return Err(Error::WeightOutOfRange {
                    index: k + 1,
                    value: a.clone(),
                });
            }
        }
        Ok(WeightDatum(weights.into()))
    }

    /// `(1, ..., 1)` with `n` entries.
    pub fn ones(n: usize) -> WeightDatum {
        WeightDatum(vec![Rational::one(); n].into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    /// Weight of the 1-based marking `i`.
    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i - 1]
    }

    /// `w_I`, the total weight of a subset.
    pub fn total(&self, marks: Marks) -> Rational {
        marks
            .iter()
            .fold(Rational::zero(), |acc, i| acc + self.get(i))
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, a| acc + a)
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &WeightDatum) -> bool {
        self.len() == other.len() && self.0.iter().zip(other.0.iter()).all(|(a, b)| a >= b)
    }
}

trait WeightRange {
    fn is_positive_weight(&self) -> bool;
}

impl WeightRange for Rational {
    fn is_positive_weight(&self) -> bool {
        *self > Rational::zero() && *self <= Rational::one()
    }
}

impl fmt::Debug for WeightDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", format_rational_list(&self.0))
    }
}

/// The moduli space of genus-`g` curves with weighted markings.
///
/// Cloning is cheap; the weight list is shared.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuliSpace {
    genus: u32,
    weights: WeightDatum,
}

/// Validates `2g - 2 + sum(a_i) > 0` and the weight range.
pub fn make_space(genus: u32, weights: Vec<Rational>) -> Result<ModuliSpace> {
    ModuliSpace::new(genus, WeightDatum::new(weights)?)
}

impl ModuliSpace {
    pub fn new(genus: u32, weights: WeightDatum) -> Result<ModuliSpace> {
        let slope = int(2 * genus as i64 - 2) + weights.sum();
        if slope <= Rational::zero() {
            return Err(Error::Unstable {
                genus,
                value: slope,
            });
        }
        Ok(ModuliSpace { genus, weights })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &WeightDatum {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Rational {
        self.weights.get(i)
    }

    /// `w_I`.
    pub fn w(&self, marks: Marks) -> Rational {
        self.weights.total(marks)
    }

    pub fn all_marks(&self) -> Marks {
        Marks::full(self.n())
    }

    /// The same genus with every weight set to one.
    pub fn unweighted(&self) -> ModuliSpace {
        ModuliSpace {
            genus: self.genus,
            weights: WeightDatum::ones(self.n()),
        }
    }

    pub fn is_unweighted(&self) -> bool {
        self.weights.as_slice().iter().all(One::is_one)
    }

    /// Same genus, extra markings appended at the end.
    pub fn with_appended(&self, extra: &[Rational]) -> Result<ModuliSpace> {
        let mut w = self.weights.as_slice().to_vec();
        w.extend_from_slice(extra);
        make_space(self.genus, w)
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            Err(Error::IndexOutOfRange {
                index: i,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    pub fn check_marks(&self, marks: Marks) -> Result<()> {
        match marks.max() {
            Some(m) if m > self.n() => Err(Error::IndexOutOfRange {
                index: m,
                n: self.n(),
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ModuliSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "M(g={}; {})",
            self.genus,
            format_rational_list(self.weights.as_slice())
        )
    }
}

impl fmt::Debug for ModuliSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
