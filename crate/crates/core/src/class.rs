//! Formal rational combinations of generators.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::rational::{int, Rational};
use crate::space::ModuliSpace;

/// A divisor class on a fixed space. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct DivisorClass {
    space: ModuliSpace,
    terms: BTreeMap<Generator, Rational>,
}

impl DivisorClass {
    pub fn zero(space: &ModuliSpace) -> DivisorClass {
        DivisorClass {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// `coeff * gen`, validating `gen` against the space.
    pub fn term(space: &ModuliSpace, gen: Generator, coeff: Rational) -> Result<DivisorClass> {
        space.validate(&gen)?;
        let mut c = DivisorClass::zero(space);
        c.add_term(gen, coeff);
        Ok(c)
    }

    pub fn generator(space: &ModuliSpace, gen: Generator) -> Result<DivisorClass> {
        DivisorClass::term(space, gen, Rational::one())
    }

    /// Builds a class from `(generator, coefficient)` pairs, validating each.
    pub fn from_terms<I>(space: &ModuliSpace, terms: I) -> Result<DivisorClass>
    where
        I: IntoIterator<Item = (Generator, Rational)>,
    {
        let mut c = DivisorClass::zero(space);
        for (gen, coeff) in terms {
            space.validate(&gen)?;
            c.add_term(gen, coeff);
        }
        Ok(c)
    }

    pub fn space(&self) -> &ModuliSpace {
        &self.space
    }

    /// Adds `coeff * gen` without validation. Generators produced by the
    /// formula tables are canonical by construction.
    pub(crate) fn add_term(&mut self, gen: Generator, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(gen) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add_one(&mut self, gen: Generator) {
        self.add_term(gen, Rational::one());
    }

    pub(crate) fn add_scaled(&mut self, other: &DivisorClass, scale: &Rational) {
        debug_assert!(self.space == other.space);
        if scale.is_zero() {
            return;
        }
        for (g, c) in &other.terms {
            self.add_term(*g, c * scale);
        }
    }

    pub fn coeff(&self, gen: &Generator) -> Rational {
        self.terms.get(gen).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Support in canonical generator order.
    pub fn iter(&self) -> impl Iterator<Item = (&Generator, &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, factor: &Rational) -> DivisorClass {
        let mut out = DivisorClass::zero(&self.space);
        out.add_scaled(self, factor);
        out
    }

    pub fn ensure_on(&self, space: &ModuliSpace) -> Result<()> {
        if &self.space == space {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                expected: space.to_string(),
                found: self.space.to_string(),
            })
        }
    }

    /// `self - other`, checking that both live on the same space.
    pub fn checked_sub(&self, other: &DivisorClass) -> Result<DivisorClass> {
        other.ensure_on(&self.space)?;
        Ok(self - other)
    }

    pub fn checked_add(&self, other: &DivisorClass) -> Result<DivisorClass> {
        other.ensure_on(&self.space)?;
        Ok(self + other)
    }

    /// Applies a linear map given on generators.
    pub fn map_linear<F>(&self, target: &ModuliSpace, mut image: F) -> DivisorClass
    where
        F: FnMut(&Generator) -> DivisorClass,
    {
        let mut out = DivisorClass::zero(target);
        for (g, c) in &self.terms {
            let img = image(g);
            debug_assert!(img.space == *target);
            out.add_scaled(&img, c);
        }
        out
    }

    /// Same as [`map_linear`](Self::map_linear) but the generator map may fail.
    pub fn try_map_linear<F>(&self, target: &ModuliSpace, mut image: F) -> Result<DivisorClass>
    where
        F: FnMut(&Generator) -> Result<DivisorClass>,
    {
        let mut out = DivisorClass::zero(target);
        for (g, c) in &self.terms {
            out.add_scaled(&image(g)?, c);
        }
        Ok(out)
    }

    /// Checks every generator in the support against the space.
    pub fn validate(&self) -> Result<()> {
        self.terms.keys().try_for_each(|g| self.space.validate(g))
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $sign:expr) => {
        impl $tr<&DivisorClass> for &DivisorClass {
            type Output = DivisorClass;
            fn $f(self, rhs: &DivisorClass) -> DivisorClass {
                assert!(self.space == rhs.space, "classes on different spaces");
                let mut out = self.clone();
                out.add_scaled(rhs, &int($sign));
                out
            }
        }
        impl $tr for DivisorClass {
            type Output = DivisorClass;
            fn $f(self, rhs: DivisorClass) -> DivisorClass {
                (&self).$f(&rhs)
            }
        }
    };
}

binop!(Add, add, 1);
binop!(Sub, sub, -1);

impl AddAssign<&DivisorClass> for DivisorClass {
    fn add_assign(&mut self, rhs: &DivisorClass) {
        assert!(self.space == rhs.space, "classes on different spaces");
        self.add_scaled(rhs, &Rational::one());
    }
}

impl SubAssign<&DivisorClass> for DivisorClass {
    fn sub_assign(&mut self, rhs: &DivisorClass) {
        assert!(self.space == rhs.space, "classes on different spaces");
        self.add_scaled(rhs, &-Rational::one());
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        self.scale(&-Rational::one())
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        -&self
    }
}

impl Mul<&DivisorClass> for &Rational {
    type Output = DivisorClass;
    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scale(self)
    }
}

impl Mul<DivisorClass> for Rational {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        rhs.scale(&self)
    }
}

/// Renders as a parseable expression, e.g. `12*lambda - Dirr - D(0;{1,2})`.
impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (g, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "{g}")?;
            } else {
                write!(f, "{mag}*{g}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.space, self)
    }
}

/// The aggregate classes `D_nod`, `D_sec` and `psi = sum psi_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Aggregates {
    pub d_nod: DivisorClass,
    pub d_sec: DivisorClass,
    pub psi: DivisorClass,
}

pub fn aggregate_classes(space: &ModuliSpace) -> Aggregates {
    let mut d_nod = DivisorClass::zero(space);
    if space.genus() >= 1 {
        d_nod.add_one(Generator::Dirr);
    }
    for g in space.nodal_generators() {
        d_nod.add_one(g);
    }
    let mut d_sec = DivisorClass::zero(space);
    for g in space.sec_generators() {
        d_sec.add_one(g);
    }
    let mut psi = DivisorClass::zero(space);
    for i in 1..=space.n() {
        psi.add_one(Generator::Psi(i));
    }
    Aggregates { d_nod, d_sec, psi }
}

pub fn d_nod(space: &ModuliSpace) -> DivisorClass {
    aggregate_classes(space).d_nod
}

pub fn d_sec(space: &ModuliSpace) -> DivisorClass {
    aggregate_classes(space).d_sec
}

pub fn psi_total(space: &ModuliSpace) -> DivisorClass {
    aggregate_classes(space).psi
}

/// `kappa` rewritten by Mumford's relation: `12 lambda - D_nod`.
pub fn mumford_kappa(space: &ModuliSpace) -> DivisorClass {
    let mut out = d_nod(space).scale(&int(-1));
    out.add_term(Generator::Lambda, int(12));
    out
}

/// Eliminates kappa through Mumford's relation. Idempotent and linear.
pub fn normal_form(c: &DivisorClass) -> DivisorClass {
    let k = c.coeff(&Generator::Kappa);
    if k.is_zero() {
        return c.clone();
    }
    let mut out = c.clone();
    out.add_term(Generator::Kappa, -k.clone());
    out.add_scaled(&mumford_kappa(&c.space), &k);
    out
}

/// Equality modulo Mumford's relation.
pub fn classes_equal(a: &DivisorClass, b: &DivisorClass) -> Result<bool> {
    Ok(normal_form(&a.checked_sub(b)?).is_zero())
}

/// Extra linear relations registered for one space, kept in reduced echelon
/// form. Each relation is solved for its largest generator.
///
/// None are imposed by default: the formula tables are checked on the free
/// module modulo Mumford's relation only.
#[derive(Clone, Debug)]
pub struct RelationSet {
    space: ModuliSpace,
    /// pivot -> (pivot - relation), i.e. what the pivot rewrites to
    rules: BTreeMap<Generator, DivisorClass>,
}

impl RelationSet {
    pub fn new(space: &ModuliSpace) -> RelationSet {
        RelationSet {
            space: space.clone(),
            rules: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &ModuliSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Declares `rel = 0`. Returns `false` when the relation was already implied.
    pub fn insert(&mut self, rel: &DivisorClass) -> Result<bool> {
        rel.ensure_on(&self.space)?;
        let reduced = self.reduce(&normal_form(rel));
        let Some((&pivot, lead)) = reduced.terms.iter().next_back() else {
            return Ok(false);
        };
        let inv = lead.recip();
        let mut rewrite = reduced.scale(&-inv);
        rewrite.add_term(pivot, Rational::one());
        debug_assert!(rewrite.coeff(&pivot).is_zero());
        for rhs in self.rules.values_mut() {
            let c = rhs.coeff(&pivot);
            if !c.is_zero() {
                rhs.add_term(pivot, -c.clone());
                rhs.add_scaled(&rewrite, &c);
            }
        }
        self.rules.insert(pivot, rewrite);
        Ok(true)
    }

    fn reduce(&self, c: &DivisorClass) -> DivisorClass {
        let mut out = c.clone();
        for (pivot, rhs) in &self.rules {
            let k = out.coeff(pivot);
            if !k.is_zero() {
                out.add_term(*pivot, -k.clone());
                out.add_scaled(rhs, &k);
            }
        }
        out
    }

    /// Mumford normal form followed by reduction modulo the registered relations.
    pub fn normal_form(&self, c: &DivisorClass) -> Result<DivisorClass> {
        c.ensure_on(&self.space)?;
        Ok(self.reduce(&normal_form(c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marks::Marks;
    use crate::rational::rat;
    use crate::space::make_space;

    fn m11() -> ModuliSpace {
        make_space(1, vec![int(1), int(1)]).unwrap()
    }

    #[test]
    fn kappa_normal_form() {
        let s = m11();
        let kappa = DivisorClass::generator(&s, Generator::Kappa).unwrap();
        let nf = normal_form(&kappa);
        assert_eq!(nf.to_string(), "12*lambda - Dirr - D(0;{1,2})");
        assert_eq!(normal_form(&nf), nf);
        let lambda = DivisorClass::generator(&s, Generator::Lambda).unwrap();
        assert_eq!(normal_form(&lambda), lambda);
    }

    #[test]
    fn equality_cases() {
        let s = m11();
        let kappa = DivisorClass::generator(&s, Generator::Kappa).unwrap();
        assert!(classes_equal(&kappa, &mumford_kappa(&s)).unwrap());
        let p1 = DivisorClass::generator(&s, Generator::Psi(1)).unwrap();
        let p2 = DivisorClass::generator(&s, Generator::Psi(2)).unwrap();
        assert!(!classes_equal(&p1, &p2).unwrap());
        let zero_dirr = DivisorClass::term(&s, Generator::Dirr, int(0)).unwrap();
        assert!(classes_equal(&p1, &(&p1 + &zero_dirr)).unwrap());
        assert!(zero_dirr.is_zero());
        let other = make_space(1, vec![int(1)]).unwrap();
        let k1 = DivisorClass::generator(&other, Generator::Kappa).unwrap();
        assert!(matches!(
            classes_equal(&kappa, &k1),
            Err(Error::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn aggregates_small_spaces() {
        let s = make_space(1, vec![rat(1, 2), rat(1, 2)]).unwrap();
        let a = aggregate_classes(&s);
        assert_eq!(a.d_nod.to_string(), "Dirr");
        assert_eq!(a.d_sec.to_string(), "Dsec(1,2)");
        assert_eq!(a.psi.to_string(), "psi(1) + psi(2)");
        let s = make_space(2, vec![]).unwrap();
        let a = aggregate_classes(&s);
        assert!(a.d_sec.is_zero() && a.psi.is_zero());
        assert!(aggregate_classes(&m11()).d_sec.is_zero());
    }

    #[test]
    fn display_signs() {
        let s = m11();
        let c = DivisorClass::from_terms(
            &s,
            [
                (Generator::Psi(1), rat(-3, 2)),
                (Generator::nodal(0, Marks::pair(1, 2)), int(1)),
                (Generator::Kappa, int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(c.to_string(), "-kappa - 3/2*psi(1) + D(0;{1,2})");
        assert_eq!(DivisorClass::zero(&s).to_string(), "0");
    }

    #[test]
    fn relation_set_reduces() {
        let s = m11();
        let mut rels = RelationSet::new(&s);
        let p1 = DivisorClass::generator(&s, Generator::Psi(1)).unwrap();
        let p2 = DivisorClass::generator(&s, Generator::Psi(2)).unwrap();
        assert!(rels.insert(&(&p1 - &p2)).unwrap());
        assert!(!rels.insert(&(&p2 - &p1)).unwrap());
        assert!(rels.normal_form(&(&p1 - &p2)).unwrap().is_zero());
        // lambda = Dirr / 12 on top
        let lam = DivisorClass::generator(&s, Generator::Lambda).unwrap();
        let dirr = DivisorClass::generator(&s, Generator::Dirr).unwrap();
        rels.insert(&(&lam - &dirr.scale(&rat(1, 12)))).unwrap();
        assert_eq!(rels.len(), 2);
        let kappa = DivisorClass::generator(&s, Generator::Kappa).unwrap();
        let nf = rels.normal_form(&kappa).unwrap();
        assert_eq!(nf.coeff(&Generator::Lambda), int(0));
        assert_eq!(nf.coeff(&Generator::Dirr), int(0));
        // 12 lambda - Dirr - D0 = Dirr - Dirr - D0
        assert_eq!(nf.to_string(), "-D(0;{1,2})");
    }
}
