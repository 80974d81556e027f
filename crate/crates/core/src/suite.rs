//! Runs named identities over a grid of spaces.

use std::fmt;
use std::str::FromStr;

use num_traits::One;

use crate::consistency::{verify_full_reduction, verify_functoriality, verify_round_trip};
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::grid::GridConfig;
use crate::lcm::{
    verify_canonical, verify_coincident_restriction, verify_decomposition,
    verify_delta_presentations, verify_delta_routes, verify_irr_restriction,
    verify_nodal_restriction, verify_step1,
};
use crate::marks::Marks;
use crate::rational::{rat, Rational};
use crate::report::VerificationReport;
use crate::space::ModuliSpace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Identity {
    Canonical,
    DeltaPresentations,
    DeltaRoutes,
    Nodal,
    Irr,
    Coincident,
    Decomposition,
    Step1,
    FullReduction,
    RoundTrip,
    Functoriality,
}

impl Identity {
    pub const ALL: [Identity; 11] = [
        Identity::Canonical,
        Identity::DeltaPresentations,
        Identity::DeltaRoutes,
        Identity::Nodal,
        Identity::Irr,
        Identity::Coincident,
        Identity::Decomposition,
        Identity::Step1,
        Identity::FullReduction,
        Identity::RoundTrip,
        Identity::Functoriality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Canonical => "canonical",
            Identity::DeltaPresentations => "delta-presentations",
            Identity::DeltaRoutes => "delta-routes",
            Identity::Nodal => "nodal",
            Identity::Irr => "irr",
            Identity::Coincident => "coincident",
            Identity::Decomposition => "decomposition",
            Identity::Step1 => "step1",
            Identity::FullReduction => "full-reduction",
            Identity::RoundTrip => "round-trip",
            Identity::Functoriality => "functoriality",
        }
    }

    /// Checked on single spaces; the others run on seeded maps and chains.
    pub fn is_per_space(self) -> bool {
        !matches!(self, Identity::RoundTrip | Identity::Functoriality)
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Identity> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Identity::ALL.iter().map(|i| i.name()).collect();
                Error::Parse(format!(
                    "unknown identity '{s}' (expected one of: all, {})",
                    names.join(", ")
                ))
            })
    }
}

/// Strata `(j;J)` named canonically, one per nodal divisor.
pub fn nodal_strata(space: &ModuliSpace) -> Vec<(u32, Marks)> {
    space
        .nodal_generators()
        .into_iter()
        .filter_map(|g| match g {
            Generator::Nodal { part, marks } => Some((part, marks)),
            _ => None,
        })
        .collect()
}

/// Subsets `I` with `|I| >= 2` and `w_I <= 1`.
pub fn light_subsets(space: &ModuliSpace) -> Vec<Marks> {
    Marks::all_subsets(space.n())
        .filter(|&m| m.len() >= 2 && space.w(m) <= Rational::one())
        .collect()
}

/// `{1/(2n), 1/n}`, empty when `n = 0`.
pub fn step1_taus(space: &ModuliSpace) -> Vec<Rational> {
    let n = space.n() as i64;
    if n == 0 {
        return vec![];
    }
    vec![rat(1, 2 * n), rat(1, n)]
}

/// Every report of a per-space identity on one space; an identity that does
/// not apply (no `D_irr`, no light subsets, `n = 0`) yields nothing.
pub fn verify_space(identity: Identity, space: &ModuliSpace) -> Result<Vec<VerificationReport>> {
    Ok(match identity {
        Identity::Canonical => vec![verify_canonical(space)],
        Identity::DeltaPresentations => vec![verify_delta_presentations(space)],
        Identity::DeltaRoutes => vec![verify_delta_routes(space)],
        Identity::Nodal => nodal_strata(space)
            .into_iter()
            .map(|(j, m)| verify_nodal_restriction(space, j, m))
            .collect::<Result<_>>()?,
        Identity::Irr if space.genus() == 0 => vec![],
        Identity::Irr => vec![verify_irr_restriction(space)?],
        Identity::Coincident => light_subsets(space)
            .into_iter()
            .map(|m| verify_coincident_restriction(space, m))
            .collect::<Result<_>>()?,
        Identity::Decomposition => vec![verify_decomposition(space)],
        Identity::Step1 => step1_taus(space)
            .iter()
            .map(|t| verify_step1(space, t))
            .collect::<Result<_>>()?,
        Identity::FullReduction => vec![verify_full_reduction(space)?],
        Identity::RoundTrip | Identity::Functoriality => {
            return Err(Error::InvalidMorphism(format!(
                "{identity} runs on reduction maps, not spaces"
            )))
        }
    })
}

/// Reports of `identity` over the grid, ordered by `(g, n)` block and then
/// by space and parameter as generated.
pub fn verify_grid(identity: Identity, cfg: &GridConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for &g in &cfg.genera {
        for &n in &cfg.sizes {
            match identity {
                Identity::RoundTrip => {
                    for (a, b) in cfg.reduction_pairs(g, n) {
                        out.push(verify_round_trip(&a, &b)?);
                    }
                }
                Identity::Functoriality => {
                    for (a, b, c) in cfg.reduction_chains(g, n) {
                        out.push(verify_functoriality(&a, &b, &c)?);
                    }
                }
                _ => {
                    for s in cfg.spaces_for(g, n) {
                        out.extend(verify_space(identity, &s)?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Every identity over the grid, in [`Identity::ALL`] order.
pub fn verify_all(cfg: &GridConfig) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for id in Identity::ALL {
        out.extend(verify_grid(id, cfg)?);
    }
    Ok(out)
}
