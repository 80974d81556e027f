//! Reduction morphisms `M(g, A) -> M(g, B)` for `B <= A` componentwise.

use num_traits::One;

use crate::class::{d_sec, DivisorClass};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::marks::Marks;
use crate::rational::int;
use crate::space::ModuliSpace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionMap {
    source: ModuliSpace,
    target: ModuliSpace,
}

impl ReductionMap {
    pub fn new(source: &ModuliSpace, target: &ModuliSpace) -> Result<ReductionMap> {
        let map = ReductionMap::formal(source, target)?;
        if !source.weights().dominates(target.weights()) {
            return Err(Error::InvalidMorphism(format!(
                "reduction needs target weights <= source weights componentwise ({source} -> {target})"
            )));
        }
        Ok(map)
    }

    /// The formula tables between two spaces of the same genus and number of
    /// markings, without requiring the weights to decrease. Used where the
    /// tables are evaluated symbolically with no morphism behind them.
    pub fn formal(source: &ModuliSpace, target: &ModuliSpace) -> Result<ReductionMap> {
        if source.genus() != target.genus() || source.n() != target.n() {
            return Err(Error::InvalidMorphism(format!(
                "reduction needs equal genus and marking count ({source} -> {target})"
            )));
        }
        Ok(ReductionMap {
            source: source.clone(),
            target: target.clone(),
        })
    }

    pub fn source(&self) -> &ModuliSpace {
        &self.source
    }

    pub fn target(&self) -> &ModuliSpace {
        &self.target
    }

    /// Pairs `{j, k}` that are heavy on the source and light on the target.
    fn newly_light_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.source.n();
        (1..=n)
            .flat_map(move |j| (j + 1..=n).map(move |k| (j, k)))
            .filter(|&(j, k)| {
                let m = Marks::pair(j, k);
                self.source.w(m) > One::one() && self.target.w(m) <= One::one()
            })
    }

    /// Subsets `I` with `|I| >= 2`, `w^B_I <= 1` and `w^A_I > 1`.
    fn contracted_tails(&self) -> impl Iterator<Item = Marks> + '_ {
        Marks::all_subsets(self.source.n()).filter(|&m| {
            m.len() >= 2 && self.target.w(m) <= One::one() && self.source.w(m) > One::one()
        })
    }

    fn push_generator(&self, gen: &Generator) -> DivisorClass {
        let tgt = &self.target;
        let mut out = DivisorClass::zero(tgt);
        match *gen {
            Generator::Kappa => {
                out.add_one(Generator::Kappa);
                for (j, k) in self.newly_light_pairs() {
                    out.add_term(Generator::Sec(j, k), int(-1));
                }
            }
            Generator::Lambda => out.add_one(Generator::Lambda),
            Generator::Psi(i) => {
                out.add_one(Generator::Psi(i));
                for (j, k) in self.newly_light_pairs() {
                    if j == i || k == i {
                        out.add_one(Generator::Sec(j, k));
                    }
                }
            }
            Generator::Dirr => out.add_one(Generator::Dirr),
            Generator::Nodal { part, marks } => {
                push_nodal(&mut out, tgt, part, marks, |m| tgt.w(m) <= One::one());
            }
            Generator::Sec(j, k) => out.add_one(Generator::Sec(j, k)),
        }
        out
    }

    fn pull_generator(&self, gen: &Generator) -> DivisorClass {
        let src = &self.source;
        let tgt = &self.target;
        let mut out = DivisorClass::zero(src);
        match *gen {
            Generator::Kappa => {
                out.add_one(Generator::Kappa);
                for m in self.contracted_tails() {
                    add_tail(&mut out, src, m, 1);
                }
            }
            Generator::Lambda => out.add_one(Generator::Lambda),
            Generator::Psi(i) => {
                out.add_one(Generator::Psi(i));
                for m in self.contracted_tails().filter(|m| m.contains(i)) {
                    add_tail(&mut out, src, m, -1);
                }
            }
            Generator::Dirr => out.add_one(Generator::Dirr),
            Generator::Nodal { part, marks } => {
                let g = src
                    .nodal_divisor(part, marks)
                    .expect("target stratum exists on the source");
                out.add_one(g);
            }
            Generator::Sec(j, k) => {
                let pair = Marks::pair(j, k);
                if src.w(pair) <= One::one() {
                    out.add_one(Generator::Sec(j, k));
                }
                // D(0;I) only over the tails that exist on the source
                for m in Marks::all_subsets(src.n()) {
                    if pair.is_subset(m) && tgt.w(m) <= One::one() {
                        add_tail(&mut out, src, m, 1);
                    }
                }
            }
        }
        out
    }

    pub fn pushforward(&self, c: &DivisorClass) -> Result<DivisorClass> {
        c.ensure_on(&self.source)?;
        Ok(c.map_linear(&self.target, |g| self.push_generator(g)))
    }

    pub fn pullback(&self, c: &DivisorClass) -> Result<DivisorClass> {
        c.ensure_on(&self.target)?;
        Ok(c.map_linear(&self.source, |g| self.pull_generator(g)))
    }
}

/// Adds `sign * D(0; m)` when that tail is a divisor of `space`.
fn add_tail(out: &mut DivisorClass, space: &ModuliSpace, m: Marks, sign: i64) {
    if let Some(g) = space.nodal_divisor(0, m) {
        out.add_term(g, int(sign));
    }
}

/// Push-forward of a nodal divisor: a genus-0 side `S` that becomes light
/// (`is_light(S)`) is contracted to a point (`|S| >= 3`) or to `D_{j=k}`
/// (`S = {j, k}`); otherwise the divisor survives. Both names of the divisor
/// are inspected.
fn push_nodal<F>(out: &mut DivisorClass, tgt: &ModuliSpace, part: u32, marks: Marks, is_light: F)
where
    F: Fn(Marks) -> bool,
{
    let g = tgt.genus();
    let n = tgt.n();
    let names = [(part, marks), (g - part, marks.complement(n))];
    for (p, side) in names {
        if p == 0 && is_light(side) {
            if side.len() == 2 {
                let mut it = side.iter();
                let (j, k) = (it.next().unwrap(), it.next().unwrap());
                out.add_one(Generator::Sec(j, k));
            }
            return;
        }
    }
    let image = tgt
        .nodal_divisor(part, marks)
        .expect("surviving stratum is a divisor of the target");
    out.add_one(image);
}

/// Push-forward along `M(g, (1,...,1)) -> M(g, A)`, from its own table.
///
/// `target` is `M(g, A)`; `c` must live on `target.unweighted()`.
pub fn full_reduction_pushforward(target: &ModuliSpace, c: &DivisorClass) -> Result<DivisorClass> {
    let source = target.unweighted();
    c.ensure_on(&source)?;
    let dsec = d_sec(target);
    Ok(c.map_linear(target, |gen| {
        let mut out = DivisorClass::zero(target);
        match *gen {
            Generator::Kappa => {
                out.add_one(Generator::Kappa);
                out -= &dsec;
            }
            Generator::Lambda => out.add_one(Generator::Lambda),
            Generator::Psi(i) => {
                out.add_one(Generator::Psi(i));
                for j in (1..=target.n()).filter(|&j| j != i) {
                    if let Some(s) = target.sec_divisor(i, j) {
                        out.add_one(s);
                    }
                }
            }
            Generator::Dirr => out.add_one(Generator::Dirr),
            Generator::Nodal { part, marks } => {
                // D(0;I) with w_I <= 1: zero when |I| >= 3, D_I when |I| = 2
                let g = target.genus();
                let tail = if part == 0 {
                    Some(marks)
                } else if part == g {
                    Some(marks.complement(target.n()))
                } else {
                    None
                };
                let other_tail = (g == 0).then(|| marks.complement(target.n()));
                let light = [tail, other_tail]
                    .into_iter()
                    .flatten()
                    .find(|&m| target.w(m) <= One::one());
                match light {
                    Some(m) if m.len() == 2 => {
                        let ix: Vec<usize> = m.iter().collect();
                        out.add_one(Generator::Sec(ix[0], ix[1]));
                    }
                    Some(_) => {}
                    None => out.add_one(
                        target
                            .nodal_divisor(part, marks)
                            .expect("surviving stratum"),
                    ),
                }
            }
            Generator::Sec(..) => unreachable!("no coincident sections on the unweighted space"),
        }
        out
    }))
}

/// Pull-back along `M(g, (1,...,1)) -> M(g, A)`, from its own table.
///
/// `c` lives on `target = M(g, A)`; the result lives on `target.unweighted()`.
pub fn full_reduction_pullback(target: &ModuliSpace, c: &DivisorClass) -> Result<DivisorClass> {
    c.ensure_on(target)?;
    let source = target.unweighted();
    let light: Vec<Marks> = Marks::all_subsets(target.n())
        .filter(|&m| m.len() >= 2 && target.w(m) <= One::one())
        .collect();
    Ok(c.map_linear(&source, |gen| {
        let mut out = DivisorClass::zero(&source);
        match *gen {
            Generator::Kappa => {
                out.add_one(Generator::Kappa);
                for &m in &light {
                    add_tail(&mut out, &source, m, 1);
                }
            }
            Generator::Lambda => out.add_one(Generator::Lambda),
            Generator::Psi(i) => {
                out.add_one(Generator::Psi(i));
                for &m in light.iter().filter(|m| m.contains(i)) {
                    add_tail(&mut out, &source, m, -1);
                }
            }
            Generator::Nodal { part, marks } => {
                out.add_one(
                    source
                        .nodal_divisor(part, marks)
                        .expect("stratum of M(g,n)"),
                );
            }
            Generator::Dirr => out.add_one(Generator::Dirr),
            Generator::Sec(j, k) => {
                let pair = Marks::pair(j, k);
                for &m in light.iter().filter(|m| pair.is_subset(**m)) {
                    add_tail(&mut out, &source, m, 1);
                }
            }
        }
        out
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::{classes_equal, mumford_kappa};
    use crate::generator::enumerate_generators;
    use crate::rational::rat;
    use crate::space::make_space;

    fn gen(space: &ModuliSpace, g: Generator) -> DivisorClass {
        DivisorClass::generator(space, g).unwrap()
    }

    #[test]
    fn psi_push_to_thirds() {
        let a = make_space(1, vec![int(1); 3]).unwrap();
        let b = make_space(1, vec![rat(1, 3); 3]).unwrap();
        let f = ReductionMap::new(&a, &b).unwrap();
        let img = f.pushforward(&gen(&a, Generator::Psi(1))).unwrap();
        assert_eq!(img.to_string(), "psi(1) + Dsec(1,2) + Dsec(1,3)");
        let img = f.pushforward(&gen(&a, Generator::Kappa)).unwrap();
        assert_eq!(img.to_string(), "kappa - Dsec(1,2) - Dsec(1,3) - Dsec(2,3)");
        let tail = gen(&a, Generator::nodal(0, Marks::full(3)));
        assert!(f.pushforward(&tail).unwrap().is_zero());
        let pair = gen(&a, Generator::nodal(0, Marks::pair(2, 3)));
        assert_eq!(f.pushforward(&pair).unwrap().to_string(), "Dsec(2,3)");
    }

    #[test]
    fn identity_reduction() {
        let a = make_space(2, vec![rat(1, 2), rat(2, 3), int(1)]).unwrap();
        let f = ReductionMap::new(&a, &a).unwrap();
        for g in enumerate_generators(&a) {
            let c = gen(&a, g);
            assert_eq!(f.pushforward(&c).unwrap(), c);
            assert_eq!(f.pullback(&c).unwrap(), c);
        }
    }

    #[test]
    fn pullback_to_halves() {
        let a = make_space(1, vec![int(1), int(1)]).unwrap();
        let b = make_space(1, vec![rat(1, 2), rat(1, 2)]).unwrap();
        let f = ReductionMap::new(&a, &b).unwrap();
        assert_eq!(
            f.pullback(&gen(&b, Generator::Psi(1))).unwrap().to_string(),
            "psi(1) - D(0;{1,2})"
        );
        assert_eq!(
            f.pullback(&gen(&b, Generator::Sec(1, 2)))
                .unwrap()
                .to_string(),
            "D(0;{1,2})"
        );
        assert_eq!(
            f.pullback(&gen(&b, Generator::Lambda)).unwrap().to_string(),
            "lambda"
        );
        assert_eq!(
            f.pullback(&gen(&b, Generator::Kappa)).unwrap().to_string(),
            "kappa + D(0;{1,2})"
        );
    }

    #[test]
    fn rejects_increasing_weights() {
        let a = make_space(1, vec![rat(1, 2)]).unwrap();
        let b = make_space(1, vec![int(1)]).unwrap();
        assert!(ReductionMap::new(&a, &b).is_err());
        assert!(ReductionMap::formal(&a, &b).is_ok());
        let c = make_space(2, vec![int(1)]).unwrap();
        assert!(ReductionMap::formal(&a, &c).is_err());
        let f = ReductionMap::new(&b, &a).unwrap();
        assert!(matches!(
            f.pushforward(&gen(&a, Generator::Kappa)),
            Err(Error::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn full_reduction_tables() {
        let a = make_space(2, vec![rat(1, 4), rat(1, 4), rat(1, 2), int(1)]).unwrap();
        let src = a.unweighted();
        let k = full_reduction_pushforward(&a, &gen(&src, Generator::Kappa)).unwrap();
        assert_eq!(k, &gen(&a, Generator::Kappa) - &d_sec(&a));
        let s = full_reduction_pullback(&a, &gen(&a, Generator::Sec(1, 2))).unwrap();
        assert_eq!(s.to_string(), "D(0;{1,2}) + D(0;{1,2,3})");
        assert!(full_reduction_pushforward(&a, &gen(&a, Generator::Kappa)).is_err());
    }

    // Mumford's relation is preserved by both directions.
    #[test]
    fn respects_mumford() {
        let a = make_space(2, vec![rat(3, 4), rat(1, 2), rat(1, 3), int(1)]).unwrap();
        let b = make_space(2, vec![rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 2)]).unwrap();
        let f = ReductionMap::new(&a, &b).unwrap();
        let push_k = f.pushforward(&gen(&a, Generator::Kappa)).unwrap();
        let push_m = f.pushforward(&mumford_kappa(&a)).unwrap();
        assert!(classes_equal(&push_k, &push_m).unwrap());
        let pull_k = f.pullback(&gen(&b, Generator::Kappa)).unwrap();
        let pull_m = f.pullback(&mumford_kappa(&b)).unwrap();
        assert!(classes_equal(&pull_k, &pull_m).unwrap());
    }
}
