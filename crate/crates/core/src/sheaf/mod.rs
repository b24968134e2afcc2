//! The structure presheaf on the trispectrum: section spaces on basic
//! opens, restriction maps, inverse limits over opens, and exhaustive
//! checks of the presheaf and sheaf axioms.

mod check;
mod limit;
mod restriction;
mod section;

use std::collections::BTreeMap;

pub use check::{
    enumerate_covers, verify_cover, verify_presheaf_axioms, verify_sheaf_axioms, verify_sheaf_axioms_with, CoverVerdict,
    FamilyMember, GluingCounterexample, LawCheck, OpenVerdict, PresheafReport, SheafReport, DEFAULT_MAX_COVER_SIZE,
};
pub(crate) use check::Tally;
pub use limit::{InverseLimit, LimitRestriction};
pub use restriction::{
    all_witnesses, find_witness, restriction, Disagreement, Restriction, RestrictionCase, RestrictionWitness, SlotMap,
};
pub use section::{
    meets_odd_points, product_triring, section_space, Component, ComponentRole, Radix, SectionCase, SectionSpace,
};

use crate::error::Result;
use crate::ideal::Triideal;
use crate::radical::trinilradical;
use crate::ring::IndexSet;
use crate::spectrum::{basic_open, trispectrum, Trispectrum};
use crate::triring::{FiniteTriring, Generator};

/// Section spaces for every generator and restrictions for every
/// comparable pair, computed once.
#[derive(Clone, Debug)]
pub struct StructurePresheaf<'a> {
    pub ring: &'a FiniteTriring,
    pub spectrum: Trispectrum,
    pub trinilradical: Triideal,
    /// Generators in ring order, evens first.
    pub generators: Vec<Generator>,
    /// `D(g)` for each generator.
    pub opens: Vec<IndexSet>,
    pub spaces: Vec<SectionSpace>,
    /// Keyed by generator positions `(f, g)` with `D(g) ⊆ D(f)`.
    pub restrictions: BTreeMap<(usize, usize), Restriction>,
}

impl<'a> StructurePresheaf<'a> {
    pub fn new(r: &'a FiniteTriring) -> Result<Self> {
        let spectrum = trispectrum(r);
        let nil = trinilradical(r);
        let generators = r.generators();
        let opens: Vec<IndexSet> = generators
            .iter()
            .map(|&g| basic_open(r, &spectrum, g).map(|b| b.points))
            .collect::<Result<_>>()?;
        let spaces: Vec<SectionSpace> =
            generators.iter().map(|&g| section_space(r, &spectrum, &nil, g)).collect::<Result<_>>()?;
        let mut restrictions = BTreeMap::new();
        for f in 0..generators.len() {
            for g in 0..generators.len() {
                if opens[g].is_subset(&opens[f]) {
                    let rho = restriction(r, &spaces[f], &opens[f], &spaces[g], &opens[g])?;
                    restrictions.insert((f, g), rho);
                }
            }
        }
        Ok(StructurePresheaf { ring: r, spectrum, trinilradical: nil, generators, opens, spaces, restrictions })
    }

    pub fn position(&self, g: Generator) -> Option<usize> {
        self.generators.iter().position(|&h| h == g)
    }

    pub fn space(&self, g: Generator) -> Option<&SectionSpace> {
        self.position(g).map(|k| &self.spaces[k])
    }

    /// `ρ_{f,g}` by generator positions.
    pub fn rho(&self, f: usize, g: usize) -> Option<&Restriction> {
        self.restrictions.get(&(f, g))
    }

    /// Positions of generators with a nonempty basic open inside `u`.
    pub fn lambda(&self, u: &IndexSet) -> Vec<usize> {
        (0..self.generators.len()).filter(|&k| !self.opens[k].is_empty() && self.opens[k].is_subset(u)).collect()
    }

    /// `O(U)` as compatible tuples over `Λ_U`.
    pub fn inverse_limit(&self, u: &IndexSet) -> InverseLimit {
        InverseLimit::new(self, u)
    }
}
