//! Tautological divisor generators and their canonical form.
//!
//! A nodal boundary divisor has two names, `D(j;I)` and `D(g-j;I^c)`. The
//! canonical one has the smaller genus part; on a tie it is the name whose
//! marking set contains marking 1 (for `n = 0` the two names coincide).

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::marks::Marks;
use crate::space::ModuliSpace;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Generator {
    Kappa,
    Lambda,
    /// `psi_i`, 1-based.
    Psi(usize),
    Dirr,
    /// `D(part; marks)`: a genus-`part` component carrying exactly `marks`,
    /// glued at one node to the rest of the curve.
    Nodal {
        part: u32,
        marks: Marks,
    },
    /// `D_{i=j}` with `i < j`.
    Sec(usize, usize),
}

impl Generator {
    pub fn nodal(part: u32, marks: Marks) -> Generator {
        Generator::Nodal { part, marks }
    }

    pub fn is_nodal(&self) -> bool {
        matches!(self, Generator::Nodal { .. })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Kappa => f.write_str("kappa"),
            Generator::Lambda => f.write_str("lambda"),
            Generator::Psi(i) => write!(f, "psi({i})"),
            Generator::Dirr => f.write_str("Dirr"),
            Generator::Nodal { part, marks } => write!(f, "D({part};{marks})"),
            Generator::Sec(i, j) => write!(f, "Dsec({i},{j})"),
        }
    }
}

/// Canonical nodal representative of `{(part, marks), (g - part, marks^c)}`,
/// `None` when the class is zero by convention (a genus-0 side with at most
/// one marking).
///
/// A genus-0 side whose weight is `<= 1` while carrying two or more markings
/// is not a stratum of this space at all and is an error.
pub fn normalize_nodal_index(
    space: &ModuliSpace,
    part: u32,
    marks: Marks,
) -> Result<Option<Generator>> {
    let g = space.genus();
    if part > g {
        return Err(Error::GenusOutOfRange { part, genus: g });
    }
    space.check_marks(marks)?;
    let n = space.n();
    let other = g - part;
    let comp = marks.complement(n);
    if (part == 0 && marks.len() <= 1) || (other == 0 && comp.len() <= 1) {
        return Ok(None);
    }
    for (p, m) in [(part, marks), (other, comp)] {
        if p == 0 {
            let weight = space.w(m);
            if weight <= One::one() {
                return Err(Error::AbsentStratum {
                    part: p,
                    marks: m,
                    weight,
                });
            }
        }
    }
    let keep = match part.cmp(&other) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => n == 0 || marks.contains(1),
    };
    Ok(Some(if keep {
        Generator::nodal(part, marks)
    } else {
        Generator::nodal(other, comp)
    }))
}

impl ModuliSpace {
    /// Nodal divisor named by a formula: `None` if the name is out of genus
    /// range, zero by convention, or not a stratum of this space.
    pub fn nodal_divisor(&self, part: u32, marks: Marks) -> Option<Generator> {
        if marks.max().is_some_and(|m| m > self.n()) {
            return None;
        }
        normalize_nodal_index(self, part, marks).ok().flatten()
    }

    /// Strict constructor for `D_{i=j}`.
    pub fn sec(&self, i: usize, j: usize) -> Result<Generator> {
        self.check_index(i)?;
        self.check_index(j)?;
        let weight = self.w(Marks::pair(i, j));
        if i == j || weight > One::one() {
            return Err(Error::HeavySections { i, j, weight });
        }
        Ok(Generator::Sec(i.min(j), i.max(j)))
    }

    /// `D_{i=j}` named by a formula: `None` if the sections cannot meet.
    pub fn sec_divisor(&self, i: usize, j: usize) -> Option<Generator> {
        self.sec(i, j).ok()
    }

    pub fn psi(&self, i: usize) -> Result<Generator> {
        self.check_index(i)?;
        Ok(Generator::Psi(i))
    }

    /// Checks that `gen` is a canonical generator of this space.
    pub fn validate(&self, gen: &Generator) -> Result<()> {
        match *gen {
            Generator::Kappa | Generator::Lambda => Ok(()),
            Generator::Psi(i) => self.check_index(i),
            Generator::Dirr => {
                if self.genus() >= 1 {
                    Ok(())
                } else {
                    Err(Error::NoIrreducibleBoundary)
                }
            }
            Generator::Nodal { part, marks } => match normalize_nodal_index(self, part, marks)? {
                Some(canonical) if canonical == *gen => Ok(()),
                Some(_) => Err(Error::NonCanonical(gen.to_string())),
                None => Err(Error::ZeroStratum { part, marks }),
            },
            Generator::Sec(i, j) => {
                if i >= j {
                    return Err(Error::NonCanonical(gen.to_string()));
                }
                self.sec(i, j).map(|_| ())
            }
        }
    }

    /// Canonical nodal divisors `D(j;I)`, sorted.
    pub fn nodal_generators(&self) -> Vec<Generator> {
        let mut out = BTreeSet::new();
        for part in 0..=self.genus() {
            for marks in Marks::all_subsets(self.n()) {
                if let Some(gen) = self.nodal_divisor(part, marks) {
                    out.insert(gen);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Valid `D_{i=j}`, sorted.
    pub fn sec_generators(&self) -> Vec<Generator> {
        let n = self.n();
        (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .filter_map(|(i, j)| self.sec_divisor(i, j))
            .collect()
    }
}

/// Every generator of the space: kappa, lambda, the psi classes, D_irr when
/// `g >= 1`, the canonical nodal divisors and the coincident-section divisors.
pub fn enumerate_generators(space: &ModuliSpace) -> Vec<Generator> {
    let mut out = vec![Generator::Kappa, Generator::Lambda];
    out.extend((1..=space.n()).map(Generator::Psi));
    if space.genus() >= 1 {
        out.push(Generator::Dirr);
    }
    out.extend(space.nodal_generators());
    out.extend(space.sec_generators());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::space::make_space;

    fn marks(ix: &[usize]) -> Marks {
        ix.iter().copied().collect()
    }

    #[test]
    fn symmetry_flip_to_smaller_genus() {
        let s = make_space(2, vec![int(1), int(1)]).unwrap();
        assert_eq!(
            normalize_nodal_index(&s, 2, Marks::EMPTY).unwrap(),
            Some(Generator::nodal(0, marks(&[1, 2])))
        );
    }

    #[test]
    fn single_marking_tail_is_zero() {
        let s = make_space(3, vec![int(1); 5]).unwrap();
        assert_eq!(normalize_nodal_index(&s, 0, marks(&[5])).unwrap(), None);
        assert_eq!(normalize_nodal_index(&s, 0, Marks::EMPTY).unwrap(), None);
        assert_eq!(
            normalize_nodal_index(&s, 3, marks(&[1, 2, 3, 4])).unwrap(),
            None
        );
    }

    #[test]
    fn light_tail_is_absent() {
        let s = make_space(1, vec![rat(1, 2), rat(1, 2)]).unwrap();
        let err = normalize_nodal_index(&s, 0, marks(&[1, 2])).unwrap_err();
        assert!(matches!(err, Error::AbsentStratum { part: 0, .. }));
        // the mirrored name fails the same way
        assert!(normalize_nodal_index(&s, 1, Marks::EMPTY).is_err());
    }

    #[test]
    fn out_of_range() {
        let s = make_space(1, vec![int(1), int(1)]).unwrap();
        assert!(matches!(
            normalize_nodal_index(&s, 2, Marks::EMPTY),
            Err(Error::GenusOutOfRange { .. })
        ));
        assert!(matches!(
            normalize_nodal_index(&s, 0, marks(&[1, 3])),
            Err(Error::IndexOutOfRange { index: 3, n: 2 })
        ));
    }

    #[test]
    fn tie_prefers_set_with_marking_one() {
        let s = make_space(2, vec![int(1), int(1), int(1)]).unwrap();
        assert_eq!(
            normalize_nodal_index(&s, 1, marks(&[2, 3])).unwrap(),
            Some(Generator::nodal(1, marks(&[1])))
        );
        let s = make_space(2, vec![]).unwrap();
        assert_eq!(
            normalize_nodal_index(&s, 1, Marks::EMPTY).unwrap(),
            Some(Generator::nodal(1, Marks::EMPTY))
        );
    }

    #[test]
    fn genus_zero_both_sides_heavy() {
        let s = make_space(0, vec![int(1); 4]).unwrap();
        let gens = s.nodal_generators();
        // {1,2}|{3,4}, {1,3}|{2,4}, {1,4}|{2,3}
        assert_eq!(
            gens,
            vec![
                Generator::nodal(0, marks(&[1, 2])),
                Generator::nodal(0, marks(&[1, 3])),
                Generator::nodal(0, marks(&[1, 4])),
            ]
        );
        assert_eq!(
            normalize_nodal_index(&s, 0, marks(&[3, 4])).unwrap(),
            Some(Generator::nodal(0, marks(&[1, 2])))
        );
    }

    // Independent oracle: list every (j, I) by hand from the validity rules.
    #[test]
    fn enumeration_matches_hand_lists() {
        use Generator::*;
        let s = make_space(1, vec![int(1), int(1)]).unwrap();
        assert_eq!(
            enumerate_generators(&s),
            vec![
                Kappa,
                Lambda,
                Psi(1),
                Psi(2),
                Dirr,
                Generator::nodal(0, marks(&[1, 2]))
            ]
        );
        let s = make_space(1, vec![rat(1, 2), rat(1, 2)]).unwrap();
        assert_eq!(
            enumerate_generators(&s),
            vec![Kappa, Lambda, Psi(1), Psi(2), Dirr, Sec(1, 2)]
        );
        let s = make_space(2, vec![]).unwrap();
        assert_eq!(
            enumerate_generators(&s),
            vec![Kappa, Lambda, Dirr, Generator::nodal(1, Marks::EMPTY)]
        );
        let s = make_space(1, vec![int(1)]).unwrap();
        assert_eq!(enumerate_generators(&s), vec![Kappa, Lambda, Psi(1), Dirr]);
    }

    #[test]
    fn validation() {
        let s = make_space(1, vec![rat(1, 2), rat(1, 2), int(1)]).unwrap();
        assert!(s.validate(&Generator::Sec(1, 2)).is_ok());
        assert!(s.validate(&Generator::Sec(2, 1)).is_err());
        assert!(s.validate(&Generator::Sec(1, 3)).is_err());
        assert!(s.validate(&Generator::Psi(4)).is_err());
        assert!(s.validate(&Generator::nodal(1, marks(&[1, 2]))).is_err());
        assert!(s.validate(&Generator::nodal(0, marks(&[1, 3]))).is_ok());
        let g0 = make_space(0, vec![int(1); 3]).unwrap();
        assert_eq!(
            g0.validate(&Generator::Dirr),
            Err(Error::NoIrreducibleBoundary)
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(Generator::Psi(3).to_string(), "psi(3)");
        assert_eq!(
            Generator::nodal(1, marks(&[1, 3])).to_string(),
            "D(1;{1,3})"
        );
        assert_eq!(Generator::Sec(1, 2).to_string(), "Dsec(1,2)");
    }
}
