//! Push-forward of degree-two expressions along the universal curve.
//!
//! A [`RelativeExpression`] is a combination `c * omega + sum_i s_i * sigma_i`
//! of the relative dualizing class and the universal sections. The product
//! of two of them pushes forward to a divisor class by
//!
//! | monomial                | push-forward                              |
//! |-------------------------|-------------------------------------------|
//! | `omega * omega`         | `kappa`                                   |
//! | `omega * sigma_i`       | `psi_i`                                   |
//! | `sigma_i * sigma_i`     | `-psi_i`                                  |
//! | `sigma_i * sigma_j`     | `D_{i=j}` if `w_{i,j} <= 1`, else `0`     |

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::class::DivisorClass;
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::rational::Rational;
use crate::space::ModuliSpace;

#[derive(Clone, PartialEq, Eq)]
pub struct RelativeExpression {
    space: ModuliSpace,
    omega: Rational,
    sections: BTreeMap<usize, Rational>,
}

impl RelativeExpression {
    pub fn zero(space: &ModuliSpace) -> RelativeExpression {
        RelativeExpression {
            space: space.clone(),
            omega: Rational::zero(),
            sections: BTreeMap::new(),
        }
    }

    pub fn omega(space: &ModuliSpace) -> RelativeExpression {
        let mut e = RelativeExpression::zero(space);
        e.omega = Rational::one();
        e
    }

    pub fn section(space: &ModuliSpace, i: usize) -> Result<RelativeExpression> {
        RelativeExpression::zero(space).plus_section(i, Rational::one())
    }

    /// `self + coeff * sigma_i`.
    pub fn plus_section(mut self, i: usize, coeff: Rational) -> Result<RelativeExpression> {
        self.space.check_index(i)?;
        let slot = self.sections.entry(i).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.sections.remove(&i);
        }
        Ok(self)
    }

    /// `self + coeff * omega`.
    pub fn plus_omega(mut self, coeff: Rational) -> RelativeExpression {
        self.omega += coeff;
        self
    }

    /// `omega + sum_i a_i sigma_i`, the log canonical class of the fibres.
    pub fn weighted_log_canonical(space: &ModuliSpace) -> RelativeExpression {
        let mut e = RelativeExpression::omega(space);
        for i in 1..=space.n() {
            e.sections.insert(i, space.weight(i).clone());
        }
        e
    }

    /// `2 omega + sum_i sigma_i`.
    pub fn doubled_unweighted(space: &ModuliSpace) -> RelativeExpression {
        let mut e = RelativeExpression::zero(space);
        e.omega = Rational::from_integer(2.into());
        for i in 1..=space.n() {
            e.sections.insert(i, Rational::one());
        }
        e
    }

    pub fn space(&self) -> &ModuliSpace {
        &self.space
    }

    pub fn omega_coeff(&self) -> &Rational {
        &self.omega
    }

    pub fn section_coeff(&self, i: usize) -> Rational {
        self.sections
            .get(&i)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn terms(&self) -> impl Iterator<Item = (Option<usize>, &Rational)> {
        std::iter::once((None, &self.omega))
            .chain(self.sections.iter().map(|(i, c)| (Some(*i), c)))
            .filter(|(_, c)| !c.is_zero())
    }
}

impl Add for &RelativeExpression {
    type Output = RelativeExpression;
    fn add(self, rhs: &RelativeExpression) -> RelativeExpression {
        assert!(self.space == rhs.space, "expressions on different spaces");
        let mut out = self.clone();
        out.omega += &rhs.omega;
        for (i, c) in &rhs.sections {
            out = out
                .plus_section(*i, c.clone())
                .expect("index checked on rhs");
        }
        out
    }
}

impl Mul<&RelativeExpression> for &Rational {
    type Output = RelativeExpression;
    fn mul(self, rhs: &RelativeExpression) -> RelativeExpression {
        let mut out = RelativeExpression::zero(&rhs.space);
        out.omega = self * &rhs.omega;
        for (i, c) in &rhs.sections {
            if !(self * c).is_zero() {
                out.sections.insert(*i, self * c);
            }
        }
        out
    }
}

impl fmt::Display for RelativeExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(i, c)| match i {
                None => format!("{c}*omega"),
                Some(i) => format!("{c}*sigma({i})"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for RelativeExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.space, self)
    }
}

/// `pi_*` of a single degree-two monomial; `None` stands for omega.
fn push_monomial(
    space: &ModuliSpace,
    a: Option<usize>,
    b: Option<usize>,
) -> Option<(Generator, Rational)> {
    let one = Rational::one();
    match (a, b) {
        (None, None) => Some((Generator::Kappa, one)),
        (None, Some(i)) | (Some(i), None) => Some((Generator::Psi(i), one)),
        (Some(i), Some(j)) if i == j => Some((Generator::Psi(i), -one)),
        (Some(i), Some(j)) => space.sec_divisor(i, j).map(|d| (d, one)),
    }
}

/// `pi_*(e1 * e2)`, expanded bilinearly.
pub fn push_quadratic(e1: &RelativeExpression, e2: &RelativeExpression) -> Result<DivisorClass> {
    if e1.space != e2.space {
        return Err(Error::SpaceMismatch {
            expected: e1.space.to_string(),
            found: e2.space.to_string(),
        });
    }
    let mut out = DivisorClass::zero(&e1.space);
    for (a, ca) in e1.terms() {
        for (b, cb) in e2.terms() {
            if let Some((g, k)) = push_monomial(&e1.space, a, b) {
                out.add_term(g, k * ca * cb);
            }
        }
    }
    Ok(out)
}

/// `pi_*(e * sigma_p)`.
pub fn push_against_section(e: &RelativeExpression, p: usize) -> Result<DivisorClass> {
    push_quadratic(e, &RelativeExpression::section(&e.space, p)?)
}
