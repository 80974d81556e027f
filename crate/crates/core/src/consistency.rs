//! Consistency checks between the reduction tables, generator by generator.

use crate::class::{normal_form, DivisorClass};
use crate::generator::{enumerate_generators, Generator};
use crate::morphisms::{full_reduction_pullback, full_reduction_pushforward, ReductionMap};
use crate::rational::format_rational_list;
use crate::report::{check, Difference, VerificationReport};
use crate::space::ModuliSpace;
use crate::Result;

fn unit(space: &ModuliSpace, g: Generator) -> DivisorClass {
    DivisorClass::generator(space, g).expect("enumerated generator")
}

/// First generator on which `f` and `h` disagree after normal form, with the
/// raw difference; `None` when they agree everywhere.
fn first_mismatch<F, H>(space: &ModuliSpace, f: F, h: H) -> Option<DivisorClass>
where
    F: Fn(&DivisorClass) -> DivisorClass,
    H: Fn(&DivisorClass) -> DivisorClass,
{
    enumerate_generators(space).into_iter().find_map(|g| {
        let x = unit(space, g);
        let d = f(&x).checked_sub(&h(&x)).expect("same target");
        (!normal_form(&d).is_zero()).then_some(d)
    })
}

fn difference_or_zero(d: Option<DivisorClass>, space: &ModuliSpace) -> Difference {
    let d = d.unwrap_or_else(|| DivisorClass::zero(space));
    Difference::of(&d, &DivisorClass::zero(d.space()))
}

/// The full-reduction tables against the general reduction tables at
/// `(1,...,1) -> A`, on every generator of either side.
pub fn verify_full_reduction(space: &ModuliSpace) -> Result<VerificationReport> {
    let source = space.unweighted();
    let map = ReductionMap::new(&source, space)?;
    let push = first_mismatch(
        &source,
        |c| map.pushforward(c).expect("on source"),
        |c| full_reduction_pushforward(space, c).expect("on source"),
    );
    let pull = first_mismatch(
        space,
        |c| map.pullback(c).expect("on target"),
        |c| full_reduction_pullback(space, c).expect("on target"),
    );
    let checks = vec![
        check("push-forward tables agree", push.is_none()),
        check("pull-back tables agree", pull.is_none()),
    ];
    let diff = match (push, pull) {
        (Some(d), _) => difference_or_zero(Some(d), &source),
        (None, d) => difference_or_zero(d, space),
    };
    Ok(VerificationReport::new(
        "full-reduction",
        None,
        space,
        diff,
        checks,
    ))
}

fn weights_of(space: &ModuliSpace) -> String {
    format_rational_list(space.weights().as_slice())
}

/// `phi_* phi^* = id` on every generator of the target.
pub fn verify_round_trip(source: &ModuliSpace, target: &ModuliSpace) -> Result<VerificationReport> {
    let map = ReductionMap::new(source, target)?;
    let bad = first_mismatch(
        target,
        |c| {
            map.pushforward(&map.pullback(c).expect("on target"))
                .expect("on source")
        },
        |c| c.clone(),
    );
    let checks = vec![check("identity on every generator", bad.is_none())];
    Ok(VerificationReport::new(
        "round-trip",
        Some(format!("from={}", weights_of(source))),
        target,
        difference_or_zero(bad, target),
        checks,
    ))
}

/// Push-forwards and pull-backs compose along `A -> B -> C`.
pub fn verify_functoriality(
    a: &ModuliSpace,
    b: &ModuliSpace,
    c: &ModuliSpace,
) -> Result<VerificationReport> {
    let ab = ReductionMap::new(a, b)?;
    let bc = ReductionMap::new(b, c)?;
    let ac = ReductionMap::new(a, c)?;
    let push = first_mismatch(
        a,
        |x| {
            bc.pushforward(&ab.pushforward(x).expect("on a"))
                .expect("on b")
        },
        |x| ac.pushforward(x).expect("on a"),
    );
    let pull = first_mismatch(
        c,
        |x| ab.pullback(&bc.pullback(x).expect("on c")).expect("on b"),
        |x| ac.pullback(x).expect("on c"),
    );
    let checks = vec![
        check("push-forwards compose", push.is_none()),
        check("pull-backs compose", pull.is_none()),
    ];
    let diff = match (push, pull) {
        (Some(d), _) => difference_or_zero(Some(d), c),
        (None, d) => difference_or_zero(d, a),
    };
    Ok(VerificationReport::new(
        "functoriality",
        Some(format!("via={}; to={}", weights_of(b), weights_of(c))),
        a,
        diff,
        checks,
    ))
}
