//! Forgetful morphism `M(g, A + {a_p}) -> M(g, A)` dropping the last marking.

use num_traits::One;

use crate::class::DivisorClass;
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::marks::Marks;
use crate::rational::int;
use crate::space::{make_space, ModuliSpace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForgetfulMap {
    source: ModuliSpace,
    target: ModuliSpace,
}

impl ForgetfulMap {
    /// Forgets the last marking `p` of `source`.
    pub fn new(source: &ModuliSpace) -> Result<ForgetfulMap> {
        let n = source.n();
        if n == 0 {
            return Err(Error::InvalidMorphism(
                "forgetful map needs at least one marking".into(),
            ));
        }
        let kept = source.weights().as_slice()[..n - 1].to_vec();
        let target = make_space(source.genus(), kept).map_err(|e| {
            Error::InvalidMorphism(format!("forgetting the last marking of {source}: {e}"))
        })?;
        Ok(ForgetfulMap {
            source: source.clone(),
            target,
        })
    }

    /// Adds a marking of weight `a_p` to `target`.
    pub fn adding(target: &ModuliSpace, a_p: crate::rational::Rational) -> Result<ForgetfulMap> {
        ForgetfulMap::new(&target.with_appended(&[a_p])?)
    }

    pub fn source(&self) -> &ModuliSpace {
        &self.source
    }

    pub fn target(&self) -> &ModuliSpace {
        &self.target
    }

    /// Index of the forgotten marking on the source.
    pub fn forgotten(&self) -> usize {
        self.source.n()
    }

    fn pull_generator(&self, gen: &Generator) -> DivisorClass {
        let src = &self.source;
        let p = self.forgotten();
        let heavy_with_p = |i: usize| src.w(Marks::pair(i, p)) > One::one();
        let mut out = DivisorClass::zero(src);
        match *gen {
            Generator::Kappa => {
                out.add_one(Generator::Kappa);
                for i in (1..p).filter(|&i| heavy_with_p(i)) {
                    out.add_one(
                        src.nodal_divisor(0, Marks::pair(i, p))
                            .expect("heavy pair tail"),
                    );
                }
            }
            Generator::Lambda => out.add_one(Generator::Lambda),
            Generator::Psi(i) => {
                out.add_one(Generator::Psi(i));
                if heavy_with_p(i) {
                    let tail = src
                        .nodal_divisor(0, Marks::pair(i, p))
                        .expect("heavy pair tail");
                    out.add_term(tail, int(-1));
                }
            }
            Generator::Nodal { part, marks } => {
                // the forgotten point lies on either side of the node
                for m in [marks, marks.insert(p)] {
                    out.add_one(src.nodal_divisor(part, m).expect("lifted stratum exists"));
                }
            }
            Generator::Dirr => out.add_one(Generator::Dirr),
            Generator::Sec(j, k) => {
                out.add_one(Generator::Sec(j, k));
                let triple = Marks::pair(j, k).insert(p);
                if src.w(triple) > One::one() {
                    out.add_one(src.nodal_divisor(0, triple).expect("heavy triple tail"));
                }
            }
        }
        out
    }

    pub fn pullback(&self, c: &DivisorClass) -> Result<DivisorClass> {
        c.ensure_on(&self.target)?;
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
    fn psi_split_on_pair_weight() {
        let heavy =
            ForgetfulMap::adding(&make_space(2, vec![rat(3, 4)]).unwrap(), rat(1, 2)).unwrap();
        let t = heavy.target().clone();
        assert_eq!(
            heavy
                .pullback(&gen(&t, Generator::Psi(1)))
                .unwrap()
                .to_string(),
            "psi(1) - D(0;{1,2})"
        );
        let light =
            ForgetfulMap::adding(&make_space(2, vec![rat(1, 2)]).unwrap(), rat(1, 2)).unwrap();
        let t = light.target().clone();
        assert_eq!(
            light
                .pullback(&gen(&t, Generator::Psi(1)))
                .unwrap()
                .to_string(),
            "psi(1)"
        );
    }

    #[test]
    fn nodal_pulls_back_to_both_sides() {
        let t = make_space(2, vec![int(1), int(1)]).unwrap();
        let f = ForgetfulMap::adding(&t, rat(1, 3)).unwrap();
        let d = gen(&t, Generator::nodal(1, Marks::singleton(1)));
        assert_eq!(f.pullback(&d).unwrap().to_string(), "D(1;{1}) + D(1;{1,3})");
        let tail = gen(&t, Generator::nodal(0, Marks::pair(1, 2)));
        assert_eq!(
            f.pullback(&tail).unwrap().to_string(),
            "D(0;{1,2}) + D(0;{1,2,3})"
        );
    }

    #[test]
    fn sec_gains_tail_when_triple_is_heavy() {
        let t = make_space(1, vec![rat(1, 2), rat(1, 2)]).unwrap();
        let f = ForgetfulMap::adding(&t, rat(1, 4)).unwrap();
        assert_eq!(
            f.pullback(&gen(&t, Generator::Sec(1, 2)))
                .unwrap()
                .to_string(),
            "D(0;{1,2,3}) + Dsec(1,2)"
        );
        let g = ForgetfulMap::adding(
            &make_space(1, vec![rat(1, 4), rat(1, 4)]).unwrap(),
            rat(1, 4),
        )
        .unwrap();
        let t = g.target().clone();
        assert_eq!(
            g.pullback(&gen(&t, Generator::Sec(1, 2)))
                .unwrap()
                .to_string(),
            "Dsec(1,2)"
        );
    }

    #[test]
    fn errors() {
        assert!(ForgetfulMap::new(&make_space(2, vec![]).unwrap()).is_err());
        // M(1; 1) -> M(1; ) is unstable
        assert!(ForgetfulMap::new(&make_space(1, vec![int(1)]).unwrap()).is_err());
    }

    // With every weight 1 the new divisors of the source are exactly the
    // D(0;{i,p}), so Mumford's relation is preserved.
    #[test]
    fn respects_mumford_when_unweighted() {
        let t = make_space(1, vec![int(1), int(1), int(1)]).unwrap();
        let f = ForgetfulMap::adding(&t, int(1)).unwrap();
        let a = f.pullback(&gen(&t, Generator::Kappa)).unwrap();
        let b = f.pullback(&mumford_kappa(&t)).unwrap();
        assert!(classes_equal(&a, &b).unwrap());
    }
}
