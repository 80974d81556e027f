//! Gluing map `M(g-1, A + {1, 1}) -> M(g, A)` onto `D_irr`.
//!
//! The glued branches are the two appended markings, `p = n + 1` and `q = n + 2`.

use std::collections::BTreeSet;

use crate::class::DivisorClass;
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::marks::Marks;
use crate::rational::{int, one};
use crate::space::{make_space, ModuliSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleBoundaryMap {
    ambient: ModuliSpace,
    source: ModuliSpace,
}

impl IrreducibleBoundaryMap {
    pub fn new(ambient: &ModuliSpace) -> Result<IrreducibleBoundaryMap> {
        if ambient.genus() == 0 {
            return Err(Error::NoIrreducibleBoundary);
        }
        let mut w = ambient.weights().as_slice().to_vec();
        w.extend([one(), one()]);
        Ok(IrreducibleBoundaryMap {
            ambient: ambient.clone(),
            source: make_space(ambient.genus() - 1, w)?,
        })
    }

    pub fn ambient(&self) -> &ModuliSpace {
        &self.ambient
    }

    /// `M(g-1, A + {1, 1})`.
    pub fn source(&self) -> &ModuliSpace {
        &self.source
    }

    pub fn p(&self) -> usize {
        self.ambient.n() + 1
    }

    pub fn q(&self) -> usize {
        self.ambient.n() + 2
    }

    /// Source divisors `D(i;I)` with `p in I`, `q not in I`, one per divisor.
    fn separating(&self) -> BTreeSet<Generator> {
        let src = &self.source;
        let (p, q) = (self.p(), self.q());
        let mut out = BTreeSet::new();
        for part in 0..=src.genus() {
            for m in Marks::all_subsets(src.n()) {
                if m.contains(p) && !m.contains(q) {
                    out.extend(src.nodal_divisor(part, m));
                }
            }
        }
        out
    }

    fn pull_generator(&self, gen: &Generator) -> DivisorClass {
        let src = &self.source;
        let (p, q) = (self.p(), self.q());
        let mut out = DivisorClass::zero(src);
        match *gen {
            Generator::Kappa => {
                out.add_one(Generator::Kappa);
                out.add_one(Generator::Psi(p));
                out.add_one(Generator::Psi(q));
            }
            Generator::Lambda | Generator::Psi(_) | Generator::Sec(..) => out.add_one(*gen),
            Generator::Nodal { part, marks } => {
                // the self-node sits on one side or the other; both names can
                // coincide when n = 0 and g = 2 * part, and then count once
                let mut images = BTreeSet::new();
                images.extend(src.nodal_divisor(part, marks));
                if part >= 1 {
                    images.extend(src.nodal_divisor(part - 1, marks.insert(p).insert(q)));
                }
                images.into_iter().for_each(|d| out.add_one(d));
            }
            Generator::Dirr => {
                if src.genus() >= 1 {
                    out.add_one(Generator::Dirr);
                }
                out.add_term(Generator::Psi(p), int(-1));
                out.add_term(Generator::Psi(q), int(-1));
                for d in self.separating() {
                    out.add_one(d);
                }
            }
        }
        out
    }

    pub fn pullback(&self, c: &DivisorClass) -> Result<DivisorClass> {
        c.ensure_on(&self.ambient)?;
        Ok(c.map_linear(&self.source, |g| self.pull_generator(g)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::{classes_equal, mumford_kappa};
    use crate::rational::rat;

    fn gen(space: &ModuliSpace, g: Generator) -> DivisorClass {
        DivisorClass::generator(space, g).unwrap()
    }

    #[test]
    fn fixed_generators() {
        let s = make_space(2, vec![rat(1, 2), rat(1, 2)]).unwrap();
        let xi = IrreducibleBoundaryMap::new(&s).unwrap();
        assert_eq!(xi.source().to_string(), "M(g=1; 1/2,1/2,1,1)");
        for g in [Generator::Lambda, Generator::Psi(2), Generator::Sec(1, 2)] {
            assert_eq!(xi.pullback(&gen(&s, g)).unwrap(), gen(xi.source(), g));
        }
        assert_eq!(
            xi.pullback(&gen(&s, Generator::Kappa)).unwrap().to_string(),
            "kappa + psi(3) + psi(4)"
        );
    }

    #[test]
    fn nodal_splits_into_two() {
        let s = make_space(2, vec![int(1)]).unwrap();
        let xi = IrreducibleBoundaryMap::new(&s).unwrap();
        // D(1;{1}) = D(1;{}); the self-node goes on either genus-1 half
        let d = gen(&s, Generator::nodal(1, Marks::singleton(1)));
        assert_eq!(
            xi.pullback(&d).unwrap().to_string(),
            "D(0;{1,2,3}) + D(0;{2,3})"
        );
    }

    #[test]
    fn genus_one_dirr() {
        let s = make_space(1, vec![rat(1, 2)]).unwrap();
        let xi = IrreducibleBoundaryMap::new(&s).unwrap();
        // source M(0; 1/2, 1, 1): genus-0 divisors need both sides heavy, and
        // with three markings of total weight 5/2 no split works
        let r = xi.pullback(&gen(&s, Generator::Dirr)).unwrap();
        assert_eq!(r.to_string(), "-psi(2) - psi(3)");
        r.validate().unwrap();
    }

    #[test]
    fn rejects_genus_zero() {
        let s = make_space(0, vec![int(1); 3]).unwrap();
        assert_eq!(
            IrreducibleBoundaryMap::new(&s).unwrap_err(),
            Error::NoIrreducibleBoundary
        );
    }

    #[test]
    fn respects_mumford() {
        for (g, w) in [
            (2, vec![]),
            (4, vec![]),
            (2, vec![rat(1, 2), rat(1, 3), int(1)]),
            (3, vec![int(1), rat(1, 4)]),
        ] {
            let s = make_space(g, w).unwrap();
            let xi = IrreducibleBoundaryMap::new(&s).unwrap();
            let a = xi.pullback(&gen(&s, Generator::Kappa)).unwrap();
            let b = xi.pullback(&mumford_kappa(&s)).unwrap();
            assert!(classes_equal(&a, &b).unwrap(), "{s}");
        }
    }
}
