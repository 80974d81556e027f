//! Classes attached to the log canonical models of `M(g, n)` and checks of
//! the identities relating them across boundary strata.
//!
//! For a weight datum `A`, `Delta_A = 2 kappa + sum (1 + a_i) psi_i` lives on
//! the unweighted space `M(g, (1,...,1))`; its push-forward along the full
//! reduction to `M(g, A)` is
//!
//! ```text
//! 2 kappa + sum_i (1 + a_i) psi_i + sum_{w_ij <= 1} w_ij D_{i=j}
//! ```

use num_traits::{One, Signed, Zero};

use crate::class::{aggregate_classes, classes_equal, DivisorClass};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::marks::Marks;
use crate::morphisms::{
    full_reduction_pullback, full_reduction_pushforward, CoincidentBoundaryMap,
    IrreducibleBoundaryMap, NodalBoundaryMap, PairClass, ReductionMap,
};
use crate::rational::{int, rat, Rational};
use crate::relative::{push_against_section, push_quadratic, RelativeExpression};
use crate::report::{check, Difference, VerificationReport};
use crate::space::{make_space, ModuliSpace};

/// `13 lambda - 2 D_nod + psi`.
pub fn canonical_class(space: &ModuliSpace) -> DivisorClass {
    let agg = aggregate_classes(space);
    let mut out = agg.psi;
    out.add_scaled(&agg.d_nod, &int(-2));
    out.add_term(Generator::Lambda, int(13));
    out
}

/// `13/12 kappa - 11/12 D_nod + psi`.
pub fn canonical_class_kappa_form(space: &ModuliSpace) -> DivisorClass {
    let agg = aggregate_classes(space);
    let mut out = agg.psi;
    out.add_scaled(&agg.d_nod, &rat(-11, 12));
    out.add_term(Generator::Kappa, rat(13, 12));
    out
}

/// `Delta_A = 2 kappa + sum (1 + a_i) psi_i` on `M(g, (1,...,1))`.
pub fn delta_class(space: &ModuliSpace) -> DivisorClass {
    let mut out = DivisorClass::zero(&space.unweighted());
    out.add_term(Generator::Kappa, int(2));
    for i in 1..=space.n() {
        out.add_term(Generator::Psi(i), Rational::one() + space.weight(i));
    }
    out
}

/// `K + 11 lambda + sum a_i psi_i`, with `K` the canonical class of `M(g, n)`.
pub fn delta_class_canonical_form(space: &ModuliSpace) -> DivisorClass {
    let mut out = canonical_class(&space.unweighted());
    out.add_term(Generator::Lambda, int(11));
    for i in 1..=space.n() {
        out.add_term(Generator::Psi(i), space.weight(i).clone());
    }
    out
}

/// Closed form of `phi_*(Delta_A)` on `M(g, A)`.
pub fn delta_pushforward(space: &ModuliSpace) -> DivisorClass {
    let mut out = DivisorClass::zero(space);
    out.add_term(Generator::Kappa, int(2));
    for i in 1..=space.n() {
        out.add_term(Generator::Psi(i), Rational::one() + space.weight(i));
    }
    for g in space.sec_generators() {
        if let Generator::Sec(i, j) = g {
            out.add_term(g, space.w(Marks::pair(i, j)));
        }
    }
    out
}

/// `phi_*(Delta_A)` through the full-reduction push-forward table.
pub fn delta_pushforward_by_reduction(space: &ModuliSpace) -> DivisorClass {
    full_reduction_pushforward(space, &delta_class(space))
        .expect("Delta lives on the unweighted space")
}

/// `phi_*(Delta_A)` as `pi_*((omega + sum a_i sigma_i) (2 omega + sum sigma_i))`.
pub fn delta_pushforward_by_curve(space: &ModuliSpace) -> DivisorClass {
    push_quadratic(
        &RelativeExpression::weighted_log_canonical(space),
        &RelativeExpression::doubled_unweighted(space),
    )
    .expect("same space")
}

fn raw_equal(a: &DivisorClass, b: &DivisorClass) -> bool {
    a == b
}

fn raw_equal_pairs(a: &PairClass, b: &PairClass) -> bool {
    a == b
}

pub fn verify_canonical(space: &ModuliSpace) -> VerificationReport {
    let a = canonical_class(space);
    let b = canonical_class_kappa_form(space);
    VerificationReport::new("canonical", None, space, Difference::of(&a, &b), vec![])
}

pub fn verify_delta_presentations(space: &ModuliSpace) -> VerificationReport {
    let a = delta_class_canonical_form(space);
    let b = delta_class(space);
    VerificationReport::new(
        "delta-presentations",
        None,
        space,
        Difference::of(&a, &b),
        vec![],
    )
}

/// Closed form against both computed routes, generator by generator.
pub fn verify_delta_routes(space: &ModuliSpace) -> VerificationReport {
    let closed = delta_pushforward(space);
    let by_reduction = delta_pushforward_by_reduction(space);
    let by_curve = delta_pushforward_by_curve(space);
    let no_nodal = closed
        .iter()
        .all(|(g, _)| !g.is_nodal() && *g != Generator::Dirr);
    let checks = vec![
        check(
            "reduction route matches closed form",
            raw_equal(&closed, &by_reduction),
        ),
        check(
            "curve route matches closed form",
            raw_equal(&closed, &by_curve),
        ),
        check("no nodal support", no_nodal),
    ];
    // report whichever route disagrees first
    let other = if closed == by_reduction {
        &by_curve
    } else {
        &by_reduction
    };
    VerificationReport::new(
        "delta-routes",
        None,
        space,
        Difference::of(&closed, other),
        checks,
    )
}

/// `eta^* phi_*(Delta_A) = pi_1^* phi_*(Delta_{A_I}) + pi_2^* phi_*(Delta_{A_I^c})`.
pub fn verify_nodal_restriction(
    space: &ModuliSpace,
    part: u32,
    marks: Marks,
) -> Result<VerificationReport> {
    let eta = NodalBoundaryMap::new(space, part, marks)?;
    let lhs = eta.pullback(&delta_pushforward(space))?;
    let rhs = PairClass {
        left: delta_pushforward(eta.left()),
        right: delta_pushforward(eta.right()),
    };
    let checks = vec![check("raw agreement", raw_equal_pairs(&lhs, &rhs))];
    Ok(VerificationReport::new(
        "nodal",
        Some(format!("{part};{marks}")),
        space,
        Difference::of_pairs(&lhs, &rhs),
        checks,
    ))
}

/// `xi^* phi_*(Delta_A) = phi_*(Delta_{A + {1,1}})` on `M(g-1, A + {1,1})`.
pub fn verify_irr_restriction(space: &ModuliSpace) -> Result<VerificationReport> {
    let xi = IrreducibleBoundaryMap::new(space)?;
    let lhs = xi.pullback(&delta_pushforward(space))?;
    let rhs = delta_pushforward(xi.source());
    let checks = vec![check("raw agreement", raw_equal(&lhs, &rhs))];
    Ok(VerificationReport::new(
        "irr",
        None,
        space,
        Difference::of(&lhs, &rhs),
        checks,
    ))
}

/// `chi_I^* phi_*(Delta_A) = phi_*(Delta_A') + (|I| - 1) pi_*((omega + sum_{J} a_i sigma_i) sigma_p)`,
/// the sum running over every marking of `A'`, the replacement `p` included.
pub fn verify_coincident_restriction(
    space: &ModuliSpace,
    marks: Marks,
) -> Result<VerificationReport> {
    let chi = CoincidentBoundaryMap::new(space, marks)?;
    let src = chi.source();
    let lhs = chi.pullback(&delta_pushforward(space))?;
    let mut rhs = delta_pushforward(src);
    let tail = push_against_section(&RelativeExpression::weighted_log_canonical(src), chi.p())?;
    rhs += &tail.scale(&int(marks.len() as i64 - 1));
    let checks = vec![check("raw agreement", raw_equal(&lhs, &rhs))];
    Ok(VerificationReport::new(
        "coincident",
        Some(marks.to_string()),
        space,
        Difference::of(&lhs, &rhs),
        checks,
    ))
}

/// `(|I| - 2)(1 - w_I)` for every `I` with `|I| >= 2` and `w_I <= 1`.
pub fn exceptional_coefficients(space: &ModuliSpace) -> Vec<(Marks, Rational)> {
    Marks::all_subsets(space.n())
        .filter(|&m| m.len() >= 2 && space.w(m) <= Rational::one())
        .map(|m| (m, int(m.len() as i64 - 2) * (Rational::one() - space.w(m))))
        .collect()
}

/// `Delta_A = phi^* phi_*(Delta_A) + sum_{w_I <= 1} (|I| - 2)(1 - w_I) D(0;I)`
/// on `M(g, (1,...,1))`.
pub fn verify_decomposition(space: &ModuliSpace) -> VerificationReport {
    let unweighted = space.unweighted();
    let lhs = delta_class(space);
    let mut rhs =
        full_reduction_pullback(space, &delta_pushforward(space)).expect("class on target");
    let coeffs = exceptional_coefficients(space);
    for (m, k) in &coeffs {
        if let Some(d) = unweighted.nodal_divisor(0, *m) {
            rhs.add_term(d, k.clone());
        }
    }
    let nonneg = coeffs.iter().all(|(_, k)| !k.is_negative());
    let vanishing = coeffs
        .iter()
        .all(|(m, k)| k.is_zero() == (m.len() == 2 || space.w(*m) == Rational::one()));
    let checks = vec![
        check("raw agreement", raw_equal(&lhs, &rhs)),
        check("exceptional coefficients are nonnegative", nonneg),
        check(
            "exceptional coefficient vanishes iff |I| = 2 or w_I = 1",
            vanishing,
        ),
    ];
    VerificationReport::new(
        "decomposition",
        None,
        space,
        Difference::of(&lhs, &rhs),
        checks,
    )
}

/// Pull-back of `2 kappa + psi` along the reduction `M(g, A) -> M(g, (tau,...,tau))`
/// drops `(|I| - 2) D(0;I)` for each tail with `|I| tau <= 1 < w_I`.
///
/// The target weights may exceed some `a_i`; the tables are applied formally.
pub fn verify_step1(space: &ModuliSpace, tau: &Rational) -> Result<VerificationReport> {
    let n = space.n();
    if !tau.is_positive() || int(n as i64) * tau > Rational::one() {
        return Err(Error::InvalidMorphism(format!(
            "step-1 identity needs 0 < n * tau <= 1, got n = {n}, tau = {tau}"
        )));
    }
    let target = make_space(space.genus(), vec![tau.clone(); n])?;
    let map = ReductionMap::formal(space, &target)?;
    let mut base = aggregate_classes(&target).psi;
    base.add_term(Generator::Kappa, int(2));
    let lhs = map.pullback(&base)?;

    let mut rhs = aggregate_classes(space).psi;
    rhs.add_term(Generator::Kappa, int(2));
    let mut dropped = Vec::new();
    for m in Marks::all_subsets(n) {
        if m.len() >= 2 && target.w(m) <= Rational::one() && space.w(m) > Rational::one() {
            let k = int(m.len() as i64 - 2);
            if let Some(d) = space.nodal_divisor(0, m) {
                rhs.add_term(d, -k.clone());
            }
            dropped.push(k);
        }
    }
    let checks = vec![
        check("raw agreement", raw_equal(&lhs, &rhs)),
        check(
            "dropped coefficients are nonnegative",
            dropped.iter().all(|k| !k.is_negative()),
        ),
    ];
    Ok(VerificationReport::new(
        "step1",
        Some(format!("tau={tau}")),
        space,
        Difference::of(&lhs, &rhs),
        checks,
    ))
}

/// Both presentations of the canonical class, in normal form.
pub fn canonical_presentations_agree(space: &ModuliSpace) -> bool {
    classes_equal(&canonical_class(space), &canonical_class_kappa_form(space)).expect("same space")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(g: u32, w: Vec<Rational>) -> ModuliSpace {
        make_space(g, w).unwrap()
    }

    #[test]
    fn canonical_genus_two() {
        let s = sp(2, vec![]);
        assert_eq!(
            canonical_class(&s).to_string(),
            "13*lambda - 2*Dirr - 2*D(1;{})"
        );
        assert!(verify_canonical(&s).passed);
    }

    #[test]
    fn canonical_genus_one() {
        let s = sp(1, vec![int(1)]);
        assert_eq!(
            canonical_class(&s).to_string(),
            "13*lambda + psi(1) - 2*Dirr"
        );
        assert!(canonical_presentations_agree(&s));
    }

    #[test]
    fn delta_examples() {
        let s = sp(1, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(
            delta_class(&s).to_string(),
            "2*kappa + 3/2*psi(1) + 3/2*psi(2)"
        );
        assert_eq!(
            delta_pushforward(&s).to_string(),
            "2*kappa + 3/2*psi(1) + 3/2*psi(2) + Dsec(1,2)"
        );
        assert_eq!(delta_class(&sp(3, vec![])).to_string(), "2*kappa");
        assert!(verify_delta_presentations(&s).passed);
        let ones = sp(2, vec![int(1); 3]);
        assert_eq!(delta_pushforward(&ones), delta_class(&ones));
    }

    #[test]
    fn three_routes() {
        for s in [
            sp(1, vec![rat(1, 2), rat(1, 2)]),
            sp(2, vec![rat(1, 3), rat(1, 4), rat(5, 6), int(1)]),
            sp(3, vec![]),
        ] {
            let r = verify_delta_routes(&s);
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn nodal_examples() {
        let r =
            verify_nodal_restriction(&sp(2, vec![int(1), int(1)]), 1, Marks::pair(1, 2)).unwrap();
        assert!(r.passed, "{r}");
        let r = verify_nodal_restriction(&sp(1, vec![rat(1, 2); 3]), 0, Marks::full(3)).unwrap();
        assert!(r.passed, "{r}");
        assert!(
            verify_nodal_restriction(&sp(1, vec![rat(1, 2); 3]), 0, Marks::singleton(1)).is_err()
        );
    }

    #[test]
    fn irr_examples() {
        assert!(verify_irr_restriction(&sp(2, vec![])).unwrap().passed);
        assert!(
            verify_irr_restriction(&sp(1, vec![rat(1, 2)]))
                .unwrap()
                .passed
        );
        assert_eq!(
            verify_irr_restriction(&sp(0, vec![int(1); 3])).unwrap_err(),
            Error::NoIrreducibleBoundary
        );
    }

    #[test]
    fn coincident_examples() {
        let r =
            verify_coincident_restriction(&sp(1, vec![rat(1, 3); 3]), Marks::pair(1, 2)).unwrap();
        assert!(r.passed, "{r}");
        let r = verify_coincident_restriction(&sp(1, vec![rat(1, 4); 3]), Marks::full(3)).unwrap();
        assert!(r.passed, "{r}");
        assert!(
            verify_coincident_restriction(&sp(1, vec![rat(2, 3); 2]), Marks::pair(1, 2)).is_err()
        );
    }

    #[test]
    fn decomposition_examples() {
        let s = sp(1, vec![rat(1, 4); 3]);
        let coeffs = exceptional_coefficients(&s);
        let triple = coeffs.iter().find(|(m, _)| m.len() == 3).unwrap();
        assert_eq!(triple.1, rat(1, 4));
        assert!(verify_decomposition(&s).passed);

        let s = sp(1, vec![rat(1, 3); 3]);
        let triple = exceptional_coefficients(&s)
            .into_iter()
            .find(|(m, _)| m.len() == 3)
            .unwrap();
        assert!(triple.1.is_zero());
        assert!(exceptional_coefficients(&s)
            .iter()
            .filter(|(m, _)| m.len() == 2)
            .all(|(_, k)| k.is_zero()));
        assert!(verify_decomposition(&s).passed);
    }

    #[test]
    fn step1_examples() {
        let s = sp(1, vec![int(1); 3]);
        let r = verify_step1(&s, &rat(1, 4)).unwrap();
        assert!(r.passed, "{r}");
        // every I with |I| >= 2 contracts; only I = {1,2,3} has |I| - 2 != 0
        let map = ReductionMap::formal(&s, &sp(1, vec![rat(1, 4); 3])).unwrap();
        let k = map
            .pullback(&DivisorClass::generator(map.target(), Generator::Kappa).unwrap())
            .unwrap();
        assert_eq!(k.len(), 5);

        let s = sp(2, vec![rat(1, 3); 3]);
        let r = verify_step1(&s, &rat(1, 3)).unwrap();
        assert!(r.passed);
        assert!(verify_step1(&s, &rat(1, 2)).is_err());
        assert!(verify_step1(&s, &int(0)).is_err());
    }
}
