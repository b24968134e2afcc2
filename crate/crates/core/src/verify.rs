//! Aggregated verification of every structural law on one finite triring.
//!
//! Sections run in a fixed order: axioms, identities, primes, radicals,
//! topology, localization, presheaf, sheaf. When the axioms fail the
//! remaining sections are skipped, since none of them is meaningful for a
//! structure that is not a triring.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homomorphism::{kernel, validate_homomorphism, TriringHomomorphism};
use crate::ideal::{enumerate_triideals, intersect, mixed_product, sum_all, Triideal};
use crate::localization::{
    factor_through, localize, localize_at_even, localize_at_odd, localize_at_prime, maximal_triideals_avoiding_image,
    LocalizedTriring, MultiplicativeSubset,
};
use crate::prime::{is_prime_by_components, is_prime_by_definition, is_prime_by_products_in};
use crate::quotient::quotient;
use crate::radical::{radical, trinilradical};
use crate::ring::IndexSet;
use crate::sheaf::{verify_presheaf_axioms, verify_sheaf_axioms_with, LawCheck, StructurePresheaf, Tally};
use crate::spectrum::{basic_open, closed_sets, is_irreducible, trispectrum, Trispectrum};
use crate::triring::{FiniteTriring, Generator};
use crate::validate::{validate_triring, Status};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionVerdict {
    pub name: &'static str,
    pub status: Status,
    pub checks: Vec<LawCheck>,
}

impl SectionVerdict {
    fn from_checks(name: &'static str, checks: Vec<LawCheck>) -> Self {
        let status = if checks.iter().all(|c| c.passed) { Status::Pass } else { Status::Fail };
        SectionVerdict { name, status, checks }
    }

    fn skipped(name: &'static str) -> Self {
        SectionVerdict { name, status: Status::Skipped, checks: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub ring: String,
    pub max_cover_size: usize,
    pub passed: bool,
    pub sections: Vec<SectionVerdict>,
}

impl VerifyReport {
    pub fn section(&self, name: &str) -> Option<&SectionVerdict> {
        self.sections.iter().find(|s| s.name == name)
    }
}

pub const SECTIONS: [&str; 8] =
    ["axioms", "identities", "primes", "radicals", "topology", "localization", "presheaf", "sheaf"];

pub fn verify_all(r: &FiniteTriring, max_cover_size: usize) -> Result<VerifyReport> {
    let axioms = axioms(r);
    let mut sections = vec![axioms];
    if sections[0].status == Status::Pass {
        let spec = trispectrum(r);
        let ideals = enumerate_triideals(r);
        sections.push(SectionVerdict::from_checks("identities", identities(r, &ideals)));
        sections.push(SectionVerdict::from_checks("primes", primes(r, &spec, &ideals)));
        sections.push(SectionVerdict::from_checks("radicals", radicals(r, &spec, &ideals)?));
        sections.push(SectionVerdict::from_checks("topology", topology(r, &spec, &ideals)?));
        sections.push(SectionVerdict::from_checks("localization", localization(r, &spec, &ideals)?));
        let ps = StructurePresheaf::new(r)?;
        sections.push(SectionVerdict::from_checks("presheaf", verify_presheaf_axioms(&ps)?.checks));
        sections.push(SectionVerdict::from_checks("sheaf", sheaf(&ps, max_cover_size)?));
    } else {
        sections.extend(SECTIONS[1..].iter().map(|n| SectionVerdict::skipped(n)));
    }
    let passed = sections.iter().all(|s| s.status == Status::Pass);
    Ok(VerifyReport { ring: r.name().to_string(), max_cover_size, passed, sections })
}

fn axioms(r: &FiniteTriring) -> SectionVerdict {
    let rep = validate_triring(r);
    let checks = rep
        .checks
        .iter()
        .map(|c| LawCheck {
            law: c.id.clone(),
            passed: c.status != Status::Fail,
            checked: usize::from(c.status != Status::Skipped),
            witness: c.witness.as_ref().map(|w| format!("{w:?}")),
        })
        .collect();
    SectionVerdict::from_checks("axioms", checks)
}

fn identities(r: &FiniteTriring, ideals: &[Triideal]) -> Vec<LawCheck> {
    let (e, n0, n1) = (r.even(), r.even_size(), r.odd_size());
    let quads = || (0..n0).cartesian_product(0..n0).cartesian_product((0..n1).cartesian_product(0..n1));
    let mut left = Tally::new("sharp.left_actions");
    let mut right = Tally::new("sharp.right_actions");
    for ((x, y), (a, b)) in quads() {
        let xy = e.mul(x, y);
        left.see(r.sharp(r.left(x, a), r.left(y, b)) == r.left(xy, r.sharp(a, b)), || format!("{:?}", [x, y, a, b]));
        right.see(r.sharp(r.right(a, x), r.right(b, y)) == r.right(r.sharp(a, b), xy), || format!("{:?}", [x, y, a, b]));
    }
    let mut lpow = Tally::new("sharp_power.left_action");
    let mut rpow = Tally::new("sharp_power.right_action");
    for (x, a) in (0..n0).cartesian_product(0..n1) {
        for m in 1..=n1.max(2) {
            let (xm, am) = (e.pow(x, m), r.local_power(a, m));
            lpow.see(r.local_power(r.left(x, a), m) == r.left(xm, am), || format!("x = {x}, α = {a}, m = {m}"));
            rpow.see(r.local_power(r.right(a, x), m) == r.right(am, xm), || format!("x = {x}, α = {a}, m = {m}"));
        }
    }
    let mut valid = Tally::new("quotient.validates");
    let mut parts = Tally::new("quotient.parts_onto");
    let mut ker = Tally::new("quotient.kernel");
    for i in ideals {
        match quotient(r, i) {
            Err(err) => {
                valid.see(false, || format!("{i}: {err}"));
            }
            Ok((q, nu)) => {
                valid.see(validate_triring(&q).passed(), || i.to_string());
                parts.see(nu.is_surjective(&q), || i.to_string());
                ker.see(kernel(r, &q, &nu).map(|k| k == *i).unwrap_or(false), || i.to_string());
            }
        }
    }
    vec![left.done(), right.done(), lpow.done(), rpow.done(), valid.done(), parts.done(), ker.done()]
}

fn primes(r: &FiniteTriring, spec: &Trispectrum, ideals: &[Triideal]) -> Vec<LawCheck> {
    let mut agree = Tally::new("prime.criteria_agree");
    let mut points = Tally::new("prime.spectrum_is_primes");
    let listed: Vec<&Triideal> = spec.points.iter().map(|p| &p.ideal).collect();
    for p in ideals {
        let d = is_prime_by_definition(r, p).prime;
        let m = is_prime_by_products_in(r, p, ideals);
        let c = is_prime_by_components(r, p);
        agree.see(d == m && m == c, || format!("{p}: definition {d}, products {m}, components {c}"));
        points.see(d == listed.contains(&p), || p.to_string());
    }
    vec![agree.done(), points.done()]
}

fn meet(r: &FiniteTriring, family: &[&Triideal]) -> Triideal {
    family.iter().fold(Triideal::full(r), |acc, p| {
        Triideal::new(acc.even.intersection(&p.even), acc.odd.intersection(&p.odd))
    })
}

fn primes_over<'a>(spec: &'a Trispectrum, i: &Triideal) -> Vec<&'a Triideal> {
    spec.points.iter().map(|p| &p.ideal).filter(|p| i.is_subset(p)).collect()
}

fn radicals(r: &FiniteTriring, spec: &Trispectrum, ideals: &[Triideal]) -> Result<Vec<LawCheck>> {
    let mut nil = Tally::new("trinilradical.meet_of_primes");
    let all: Vec<&Triideal> = spec.points.iter().map(|p| &p.ideal).collect();
    let n = trinilradical(r);
    nil.see(meet(r, &all) == n, || format!("trinilradical {n}"));
    let mut meets = Tally::new("radical.meet_of_primes_over");
    let mut contains = Tally::new("radical.contains_ideal");
    for i in ideals.iter().filter(|i| !i.is_full(r)) {
        let rad = radical(r, i)?;
        meets.see(meet(r, &primes_over(spec, i)) == rad, || format!("{i}: radical {rad}"));
        contains.see(i.is_subset(&rad), || i.to_string());
    }
    Ok(vec![nil.done(), meets.done(), contains.done()])
}

fn topology(r: &FiniteTriring, spec: &Trispectrum, ideals: &[Triideal]) -> Result<Vec<LawCheck>> {
    let v = |i: &Triideal| spec.vanishing(i);
    let mut union = Tally::new("vanishing.union_is_meet");
    let mut order = Tally::new("vanishing.order_reverses_radicals");
    let rads = ideals.iter().map(|i| radical(r, i)).collect::<Result<Vec<_>>>()?;
    for (a, i) in ideals.iter().enumerate() {
        for (b, j) in ideals.iter().enumerate() {
            let u = v(i).union(&v(j));
            let meet = v(&intersect(r, i, j)?);
            let prod = v(&mixed_product(r, i, j)?.ideal);
            union.see(u == meet && u == prod, || format!("{i}, {j}"));
            order.see(v(i).is_subset(&v(j)) == rads[b].is_subset(&rads[a]), || format!("{i}, {j}"));
        }
    }
    let mut sums = Tally::new("vanishing.sum_is_intersection");
    for k in 1..=3 {
        for family in ideals.iter().combinations(k) {
            let lhs = family.iter().fold(spec.all(), |acc, i| acc.intersection(&v(i)));
            sums.see(lhs == v(&sum_all(r, family.iter().copied())?), || family.iter().join(", "));
        }
    }
    let mut radv = Tally::new("vanishing.radical");
    let mut basic = Tally::new("open.union_of_basic_opens");
    for (i, rad) in ideals.iter().zip(&rads) {
        radv.see(v(i) == v(rad), || i.to_string());
        let gens = i.even.iter().map(Generator::Even).chain(i.odd.iter().map(Generator::Odd));
        let mut covered = IndexSet::empty();
        for g in gens {
            covered = covered.union(&basic_open(r, spec, g)?.points);
        }
        basic.see(covered == spec.open_of(i), || i.to_string());
    }
    let closed: Vec<IndexSet> = closed_sets(r, spec).into_iter().map(|c| c.points).collect();
    let mut axioms = Tally::new("closed_sets.topology");
    axioms.see(closed.contains(&IndexSet::empty()) && closed.contains(&spec.all()), || "missing ∅ or the whole space".into());
    for (a, b) in closed.iter().tuple_combinations() {
        let ok = closed.contains(&a.union(b)) && closed.contains(&a.intersection(b));
        axioms.see(ok, || format!("{a:?}, {b:?}"));
    }
    let mut irr = Tally::new("irreducible.criteria_agree");
    for i in ideals {
        let rep = is_irreducible(r, spec, i)?;
        irr.see(rep.topological == rep.algebraic, || format!("{i}: topological {}, algebraic {}", rep.topological, rep.algebraic));
    }
    Ok(vec![union.done(), sums.done(), radv.done(), order.done(), basic.done(), axioms.done(), irr.done()])
}

/// Every localization the triring admits, labelled, with its kind.
fn localizations(r: &FiniteTriring, spec: &Trispectrum) -> Result<Vec<(String, LocalizedTriring)>> {
    let mut out = vec![
        ("units".to_string(), localize(r, &MultiplicativeSubset::units(r))?),
        ("minimal".to_string(), localize(r, &MultiplicativeSubset::minimal(r))?),
    ];
    for k in spec.odd_points.iter() {
        out.push((format!("prime {}", spec.points[k].ideal), localize_at_prime(r, &spec.points[k].ideal)?));
    }
    for f0 in 0..r.even_size() {
        match localize_at_even(r, spec, f0) {
            Ok(l) => out.push((format!("even {f0}"), l)),
            Err(Error::EmptyOddIntersection { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    for f1 in 0..r.odd_size() {
        match localize_at_odd(r, f1) {
            Ok(l) => out.push((format!("odd {f1}"), l)),
            Err(Error::Trinilpotent { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

fn localization(r: &FiniteTriring, spec: &Trispectrum, ideals: &[Triideal]) -> Result<Vec<LawCheck>> {
    let mut equiv = Tally::new("fraction.equivalence");
    let mut valid = Tally::new("localization.validates");
    let mut inverted = Tally::new("localization.denominators_invertible");
    let mut iso = Tally::new("localization.units_and_minimal_isomorphic");
    let mut local = Tally::new("localization.at_prime_is_local");
    let mut itself = Tally::new("factor_through.canonical");
    let mut via_units = Tally::new("factor_through.through_units");
    let mut via_quot = Tally::new("factor_through.quotient_maps");
    if r.has_zero_odd_part() {
        return Ok([equiv, valid, inverted, iso, local, itself, via_units, via_quot].map(Tally::done).to_vec());
    }
    let locs = localizations(r, spec)?;
    let quotients = ideals.iter().map(|i| quotient(r, i)).collect::<Result<Vec<_>>>()?;
    let units = &locs[0].1;
    for (label, l) in &locs {
        let t = &l.triring;
        equiv.see(l.even.equivalence.holds() && l.odd.equivalence.holds(), || label.clone());
        valid.see(validate_triring(t).passed() && validate_homomorphism(r, t, &l.canonical)?.passed(), || label.clone());
        let ok = l.subset.even.iter().all(|s| t.even().is_unit(l.canonical.even[s]))
            && l.subset.odd.iter().all(|s| t.odd().is_unit(l.canonical.odd[s]));
        inverted.see(ok, || label.clone());
        if label == "units" || label == "minimal" {
            iso.see(l.canonical.is_bijective(t), || label.clone());
        }
        if label.starts_with("prime") {
            local.see(maximal_triideals_avoiding_image(l).len() == 1, || label.clone());
        }
        let f = factor_through(r, l, t, &l.canonical)?;
        itself.see(f.reproduces && f.unique && f.map == TriringHomomorphism::identity(t), || label.clone());
        let f = factor_through(r, units, t, &l.canonical)?;
        via_units.see(f.reproduces && f.unique, || label.clone());
        for ((q, nu), i) in quotients.iter().zip(ideals) {
            match factor_through(r, l, q, nu) {
                Ok(f) => via_quot.see(f.reproduces && f.unique, || format!("{label} into R/{i}")),
                Err(Error::NotInverted { .. }) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok([equiv, valid, inverted, iso, local, itself, via_units, via_quot].map(Tally::done).to_vec())
}

fn sheaf(ps: &StructurePresheaf, max_cover_size: usize) -> Result<Vec<LawCheck>> {
    let rep = verify_sheaf_axioms_with(ps, max_cover_size)?;
    let mut identity = Tally::new("sheaf.identity");
    let mut gluing = Tally::new("sheaf.gluing");
    for open in &rep.basic_opens {
        for c in &open.covers {
            let describe = || serde_json::to_string(&(open.generator, c)).expect("verdict serializes");
            identity.see(c.identity_axiom, describe);
            gluing.see(c.gluing_axiom, describe);
        }
    }
    Ok(vec![identity.done(), gluing.done()])
}
