//! Restriction to a nodal boundary divisor `D(i;I) = M(i, A_I + {1}) x M(g-i, A_{I^c} + {1})`.
//!
//! Markings of `I` (resp. `I^c`) keep their relative order and become
//! `1..=|I|` on the left factor (resp. `1..=|I^c|` on the right). The node
//! branch is appended last with weight one: `p = |I| + 1`, `q = |I^c| + 1`.

use std::collections::BTreeSet;
use std::fmt;

use crate::class::{normal_form, DivisorClass};
use crate::error::{Error, Result};
use crate::generator::{normalize_nodal_index, Generator};
use crate::marks::{Marks, Renumbering};
use crate::rational::{int, one};
use crate::space::ModuliSpace;

/// `pi_1^*(left) + pi_2^*(right)` on a product of two moduli spaces.
#[derive(Clone, PartialEq, Eq)]
pub struct PairClass {
    pub left: DivisorClass,
    pub right: DivisorClass,
}

impl PairClass {
    pub fn zero(left: &ModuliSpace, right: &ModuliSpace) -> PairClass {
        PairClass {
            left: DivisorClass::zero(left),
            right: DivisorClass::zero(right),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.left.is_zero() && self.right.is_zero()
    }

    pub fn checked_sub(&self, other: &PairClass) -> Result<PairClass> {
        Ok(PairClass {
            left: self.left.checked_sub(&other.left)?,
            right: self.right.checked_sub(&other.right)?,
        })
    }

    /// Mumford normal form on each factor.
    pub fn normal_form(&self) -> PairClass {
        PairClass {
            left: normal_form(&self.left),
            right: normal_form(&self.right),
        }
    }
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pi1^*({}) + pi2^*({})", self.left, self.right)
    }
}

impl fmt::Debug for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} | {:?}", self.left, self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodalBoundaryMap {
    ambient: ModuliSpace,
    part: u32,
    marks: Marks,
    /// canonical name of the stratum
    stratum: Generator,
    left: ModuliSpace,
    right: ModuliSpace,
    left_index: Renumbering,
    right_index: Renumbering,
}

impl NodalBoundaryMap {
    /// The inclusion of `D(part; marks)`, oriented so that the left factor is
    /// the genus-`part` component carrying `marks`.
    pub fn new(ambient: &ModuliSpace, part: u32, marks: Marks) -> Result<NodalBoundaryMap> {
        let stratum = normalize_nodal_index(ambient, part, marks)?
            .ok_or(Error::ZeroStratum { part, marks })?;
        let comp = marks.complement(ambient.n());
        let factor = |genus: u32, side: Marks| {
            let mut w: Vec<_> = side.iter().map(|i| ambient.weight(i).clone()).collect();
            w.push(one());
            crate::space::make_space(genus, w)
        };
        Ok(NodalBoundaryMap {
            ambient: ambient.clone(),
            part,
            marks,
            stratum,
            left: factor(part, marks)?,
            right: factor(ambient.genus() - part, comp)?,
            left_index: Renumbering::of(marks),
            right_index: Renumbering::of(comp),
        })
    }

    pub fn ambient(&self) -> &ModuliSpace {
        &self.ambient
    }

    pub fn left(&self) -> &ModuliSpace {
        &self.left
    }

    pub fn right(&self) -> &ModuliSpace {
        &self.right
    }

    pub fn part(&self) -> u32 {
        self.part
    }

    pub fn marks(&self) -> Marks {
        self.marks
    }

    pub fn stratum(&self) -> Generator {
        self.stratum
    }

    pub fn left_renumbering(&self) -> &Renumbering {
        &self.left_index
    }

    pub fn right_renumbering(&self) -> &Renumbering {
        &self.right_index
    }

    /// Node branch on the left factor.
    pub fn p(&self) -> usize {
        self.left.n()
    }

    /// Node branch on the right factor.
    pub fn q(&self) -> usize {
        self.right.n()
    }

    fn restrict_generator(&self, gen: &Generator) -> PairClass {
        let mut out = PairClass::zero(&self.left, &self.right);
        let (p, q) = (self.p(), self.q());
        match *gen {
            Generator::Kappa => {
                out.left.add_one(Generator::Kappa);
                out.left.add_one(Generator::Psi(p));
                out.right.add_one(Generator::Kappa);
                out.right.add_one(Generator::Psi(q));
            }
            Generator::Lambda => {
                out.left.add_one(Generator::Lambda);
                out.right.add_one(Generator::Lambda);
            }
            Generator::Psi(j) => match self.left_index.new_index(j) {
                Some(k) => out.left.add_one(Generator::Psi(k)),
                None => out
                    .right
                    .add_one(Generator::Psi(self.right_index.new_index(j).unwrap())),
            },
            Generator::Dirr => {
                if self.left.genus() >= 1 {
                    out.left.add_one(Generator::Dirr);
                }
                if self.right.genus() >= 1 {
                    out.right.add_one(Generator::Dirr);
                }
            }
            Generator::Nodal { part, marks } if *gen == self.stratum => {
                out.left.add_term(Generator::Psi(p), int(-1));
                out.right.add_term(Generator::Psi(q), int(-1));
                // a second node of the same type (two unmarked tails)
                self.restrict_other_nodal(&mut out, part, marks);
            }
            Generator::Nodal { part, marks } => self.restrict_other_nodal(&mut out, part, marks),
            Generator::Sec(j, k) => {
                let (lj, lk) = (self.left_index.new_index(j), self.left_index.new_index(k));
                match (lj, lk) {
                    (Some(a), Some(b)) => out.left.add_one(Generator::Sec(a, b)),
                    (None, None) => {
                        let a = self.right_index.new_index(j).unwrap();
                        let b = self.right_index.new_index(k).unwrap();
                        out.right.add_one(Generator::Sec(a, b));
                    }
                    _ => {}
                }
            }
        }
        out
    }

    /// `D(j;J) != D(i;I)`: every factor divisor lying over `D(j;J)`, found by
    /// testing containment for both names `(j, J)` and `(g-j, J^c)`. A factor
    /// divisor reached through both names is counted once.
    fn restrict_other_nodal(&self, out: &mut PairClass, part: u32, marks: Marks) {
        let g = self.ambient.genus();
        let comp_i = self.marks.complement(self.ambient.n());
        let (i, gi) = (self.part, g - self.part);
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for (j, m) in [
            (part, marks),
            (g - part, marks.complement(self.ambient.n())),
        ] {
            if j <= i && m.is_subset(self.marks) {
                left.extend(self.left.nodal_divisor(j, self.left_index.map_set(m)));
            }
            if j <= gi && m.is_subset(comp_i) {
                right.extend(self.right.nodal_divisor(j, self.right_index.map_set(m)));
            }
        }
        left.into_iter().for_each(|d| out.left.add_one(d));
        right.into_iter().for_each(|d| out.right.add_one(d));
    }

    pub fn pullback(&self, c: &DivisorClass) -> Result<PairClass> {
        c.ensure_on(&self.ambient)?;
        let mut out = PairClass::zero(&self.left, &self.right);
        for (g, k) in c.iter() {
            let img = self.restrict_generator(g);
            out.left.add_scaled(&img.left, k);
            out.right.add_scaled(&img.right, k);
        }
        Ok(out)
    }
}
