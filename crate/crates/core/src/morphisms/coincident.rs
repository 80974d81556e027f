//! Replacing morphism `chi_I : M(g, A') -> M(g, A)` onto the locus where the
//! markings of `I` coincide.
//!
//! `A'` keeps the markings outside `I` in order and appends one marking `p`
//! of weight `w_I`.

use num_traits::One;

use crate::class::DivisorClass;
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::marks::{Marks, Renumbering};
use crate::rational::Rational;
use crate::space::{make_space, ModuliSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoincidentBoundaryMap {
    ambient: ModuliSpace,
    marks: Marks,
    source: ModuliSpace,
    kept: Renumbering,
}

impl CoincidentBoundaryMap {
    pub fn new(ambient: &ModuliSpace, marks: Marks) -> Result<CoincidentBoundaryMap> {
        ambient.check_marks(marks)?;
        if marks.len() < 2 {
            return Err(Error::InvalidMorphism(format!(
                "replacing morphism needs |I| >= 2, got I = {marks}"
            )));
        }
        let w = ambient.w(marks);
        if w > Rational::one() {
            return Err(Error::InvalidMorphism(format!(
                "replacing morphism needs w_I <= 1, got w_{marks} = {w}"
            )));
        }
        let kept_set = marks.complement(ambient.n());
        let mut weights: Vec<Rational> =
            kept_set.iter().map(|i| ambient.weight(i).clone()).collect();
        weights.push(w);
        Ok(CoincidentBoundaryMap {
            ambient: ambient.clone(),
            marks,
            source: make_space(ambient.genus(), weights)?,
            kept: Renumbering::of(kept_set),
        })
    }

    pub fn ambient(&self) -> &ModuliSpace {
        &self.ambient
    }

    /// `M(g, A')`.
    pub fn source(&self) -> &ModuliSpace {
        &self.source
    }

    pub fn marks(&self) -> Marks {
        self.marks
    }

    /// Index of the replacement marking on the source.
    pub fn p(&self) -> usize {
        self.source.n()
    }

    /// Renumbering of the markings outside `I`.
    pub fn renumbering(&self) -> &Renumbering {
        &self.kept
    }

    fn image_index(&self, i: usize) -> usize {
        self.kept.new_index(i).unwrap_or_else(|| self.p())
    }

    /// Pull-back on the partial domain: kappa, lambda, psi, D_irr, the
    /// coincident-section divisors, and multiples of the full sum of nodal
    /// divisors `D(j;J)`, which maps to the corresponding sum on the source.
    pub fn pullback(&self, c: &DivisorClass) -> Result<DivisorClass> {
        c.ensure_on(&self.ambient)?;
        let nodal: Vec<_> = c.iter().filter(|(g, _)| g.is_nodal()).collect();
        let mut nodal_coeff = None;
        if !nodal.is_empty() {
            let all = self.ambient.nodal_generators();
            let uniform = nodal.iter().all(|(_, k)| *k == nodal[0].1);
            if nodal.len() != all.len() || !uniform {
                return Err(Error::OutsideDomain);
            }
            nodal_coeff = Some(nodal[0].1.clone());
        }

        let src = &self.source;
        let p = self.p();
        let mut out = DivisorClass::zero(src);
        if let Some(k) = nodal_coeff {
            for g in src.nodal_generators() {
                out.add_term(g, k.clone());
            }
        }
        for (gen, k) in c.iter() {
            match *gen {
                Generator::Kappa | Generator::Lambda | Generator::Dirr => {
                    out.add_term(*gen, k.clone())
                }
                Generator::Psi(i) => out.add_term(Generator::Psi(self.image_index(i)), k.clone()),
                Generator::Nodal { .. } => {}
                Generator::Sec(i, j) => match (self.marks.contains(i), self.marks.contains(j)) {
                    (false, false) => out.add_term(
                        Generator::Sec(self.image_index(i), self.image_index(j)),
                        k.clone(),
                    ),
                    (true, true) => out.add_term(Generator::Psi(p), -k.clone()),
                    _ => {
                        let other = if self.marks.contains(i) { j } else { i };
                        // the outside section must be able to meet the merged point
                        if let Some(d) = src.sec_divisor(self.image_index(other), p) {
                            out.add_term(d, k.clone());
                        }
                    }
                },
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::{d_nod, mumford_kappa};
    use crate::rational::{int, rat};

    fn gen(space: &ModuliSpace, g: Generator) -> DivisorClass {
        DivisorClass::generator(space, g).unwrap()
    }

    fn thirds() -> ModuliSpace {
        make_space(1, vec![rat(1, 3), rat(1, 3), rat(1, 3)]).unwrap()
    }

    #[test]
    fn replaced_space() {
        let s = make_space(2, vec![rat(1, 4), int(1), rat(1, 2), rat(1, 4)]).unwrap();
        let chi = CoincidentBoundaryMap::new(&s, [1, 4].into_iter().collect()).unwrap();
        assert_eq!(chi.source().to_string(), "M(g=2; 1,1/2,1/2)");
        assert_eq!(chi.p(), 3);
        assert_eq!(chi.renumbering().new_index(3), Some(2));
    }

    #[test]
    fn table() {
        let s = thirds();
        let chi = CoincidentBoundaryMap::new(&s, Marks::pair(1, 2)).unwrap();
        let src = chi.source().clone();
        assert_eq!(
            chi.pullback(&gen(&s, Generator::Kappa)).unwrap(),
            gen(&src, Generator::Kappa)
        );
        assert_eq!(
            chi.pullback(&gen(&s, Generator::Sec(1, 2)))
                .unwrap()
                .to_string(),
            "-psi(2)"
        );
        assert_eq!(
            chi.pullback(&gen(&s, Generator::Sec(1, 3)))
                .unwrap()
                .to_string(),
            "Dsec(1,2)"
        );
        assert_eq!(
            chi.pullback(&gen(&s, Generator::Psi(2)))
                .unwrap()
                .to_string(),
            "psi(2)"
        );
        assert_eq!(
            chi.pullback(&gen(&s, Generator::Psi(3)))
                .unwrap()
                .to_string(),
            "psi(1)"
        );
    }

    #[test]
    fn aggregate_nodal_part() {
        let s = make_space(2, vec![rat(1, 2), rat(1, 2), int(1)]).unwrap();
        let chi = CoincidentBoundaryMap::new(&s, Marks::pair(1, 2)).unwrap();
        assert_eq!(chi.pullback(&d_nod(&s)).unwrap(), d_nod(chi.source()));
        // kappa and its Mumford form agree after restriction
        let a = chi.pullback(&gen(&s, Generator::Kappa)).unwrap();
        let b = chi.pullback(&mumford_kappa(&s)).unwrap();
        assert_eq!(b, mumford_kappa(chi.source()));
        assert!(crate::class::classes_equal(&a, &b).unwrap());
        let one_nodal = gen(&s, s.nodal_generators()[0]);
        assert_eq!(chi.pullback(&one_nodal).unwrap_err(), Error::OutsideDomain);
    }

    #[test]
    fn outside_section_too_heavy() {
        let s = make_space(1, vec![rat(1, 2), rat(1, 4), rat(1, 4)]).unwrap();
        let chi = CoincidentBoundaryMap::new(&s, Marks::pair(2, 3)).unwrap();
        // a_1 + w_I = 1 still meets
        assert_eq!(
            chi.pullback(&gen(&s, Generator::Sec(1, 2)))
                .unwrap()
                .to_string(),
            "Dsec(1,2)"
        );
        let s = make_space(1, vec![rat(3, 4), rat(1, 4), rat(1, 4)]).unwrap();
        let chi = CoincidentBoundaryMap::new(&s, Marks::pair(2, 3)).unwrap();
        assert!(chi
            .pullback(&gen(&s, Generator::Sec(1, 2)))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn rejects_heavy_or_small_sets() {
        let s = make_space(1, vec![rat(2, 3), rat(2, 3)]).unwrap();
        assert!(matches!(
            CoincidentBoundaryMap::new(&s, Marks::pair(1, 2)),
            Err(Error::InvalidMorphism(_))
        ));
        assert!(CoincidentBoundaryMap::new(&thirds(), Marks::singleton(1)).is_err());
        assert!(CoincidentBoundaryMap::new(&thirds(), Marks::pair(1, 4)).is_err());
    }
}
