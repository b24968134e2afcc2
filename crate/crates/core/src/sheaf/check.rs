//! Exhaustive checks of the presheaf and sheaf axioms.

use std::collections::HashSet;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homomorphism::{validate_homomorphism, TriringHomomorphism};
use crate::ring::IndexSet;
use crate::spectrum::open_sets;
use crate::triring::{Generator, TriringElement};

use super::limit::{InverseLimit, LimitRestriction};
use super::section::SectionCase;
use super::StructurePresheaf;

pub const DEFAULT_MAX_COVER_SIZE: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub passed: bool,
    /// Number of instances examined.
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresheafReport {
    pub ring: String,
    pub passed: bool,
    pub checks: Vec<LawCheck>,
}

impl PresheafReport {
    pub fn check(&self, law: &str) -> Option<&LawCheck> {
        self.checks.iter().find(|c| c.law == law)
    }
}

pub(crate) struct Tally {
    law: &'static str,
    checked: usize,
    witness: Option<String>,
}

impl Tally {
    pub(crate) fn new(law: &'static str) -> Self {
        Tally { law, checked: 0, witness: None }
    }

    pub(crate) fn see(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    pub(crate) fn done(self) -> LawCheck {
        LawCheck { law: self.law.into(), passed: self.witness.is_none(), checked: self.checked, witness: self.witness }
    }
}

/// Identity and composition of restrictions between basic opens and
/// between arbitrary opens through inverse limits, together with the
/// supporting facts the construction relies on.
pub fn verify_presheaf_axioms(ps: &StructurePresheaf) -> Result<PresheafReport> {
    let r = ps.ring;
    let gens = &ps.generators;
    let n = gens.len();
    let mut checks = Vec::new();

    let mut t = Tally::new("restriction.identity");
    for f in 0..n {
        let rho = ps.rho(f, f).expect("every open contains itself");
        t.see(rho.map == TriringHomomorphism::identity(&ps.spaces[f].triring), || gens[f].to_string());
    }
    checks.push(t.done());

    let mut t = Tally::new("restriction.composition");
    for (&(f, g), fg) in &ps.restrictions {
        for h in 0..n {
            if let (Some(gh), Some(fh)) = (ps.rho(g, h), ps.rho(f, h)) {
                t.see(fh.map == gh.map.after(&fg.map), || format!("({}, {}, {})", gens[f], gens[g], gens[h]));
            }
        }
    }
    checks.push(t.done());

    let mut t = Tally::new("restriction.homomorphism");
    for (&(f, g), rho) in &ps.restrictions {
        let rep = validate_homomorphism(&ps.spaces[f].triring, &ps.spaces[g].triring, &rho.map)?;
        t.see(rep.passed(), || {
            let c = rep.failures().next().expect("failure");
            format!("({}, {}): {} at {:?}", gens[f], gens[g], c.id, c.witness)
        });
    }
    checks.push(t.done());

    let mut t = Tally::new("restriction.witness_independence");
    for (&(f, g), rho) in &ps.restrictions {
        t.see(rho.disagreement.is_none(), || format!("({}, {}): {:?}", gens[f], gens[g], rho.disagreement));
    }
    checks.push(t.done());

    let mut t = Tally::new("restriction.witness_identity");
    for (&(f, g), rho) in &ps.restrictions {
        if let Some(w) = rho.witness {
            t.see(w.holds(r, gens[f], gens[g]), || format!("({}, {})", gens[f], gens[g]));
        }
    }
    checks.push(t.done());

    let mut t = Tally::new("odd_source_even_target.nilpotent");
    for f1 in (0..n).filter(|&k| !gens[k].is_even()) {
        for g0 in (0..n).filter(|&k| gens[k].is_even()) {
            if ps.opens[g0].is_subset(&ps.opens[f1]) {
                t.see(ps.trinilradical.even.contains(gens[g0].index()), || format!("({}, {})", gens[f1], gens[g0]));
            }
        }
    }
    checks.push(t.done());

    let mut t = Tally::new("empty_odd_intersection.criterion");
    for g0 in 0..r.even_size() {
        let spectral = ps.opens[g0].intersection(&ps.spectrum.odd_points).is_empty();
        let algebraic = (0..=r.even_size()).any(|b| r.right(r.local_one(), r.even().pow(g0, b)) == 0);
        t.see(spectral == algebraic, || format!("even:{g0}: spectral {spectral}, algebraic {algebraic}"));
    }
    checks.push(t.done());

    let mut t = Tally::new("basic_open.nonempty_iff_not_trinilpotent");
    for k in 0..n {
        let nil = match gens[k] {
            Generator::Even(x) => ps.trinilradical.even.contains(x),
            Generator::Odd(x) => ps.trinilradical.odd.contains(x),
        };
        t.see(nil == ps.opens[k].is_empty(), || gens[k].to_string());
    }
    checks.push(t.done());

    let mut t = Tally::new("zero.normalization");
    for k in 0..n {
        if ps.spaces[k].case == SectionCase::ZeroSpace {
            t.see(ps.spaces[k].size() == 1, || gens[k].to_string());
        }
    }
    checks.push(t.done());

    let opens = open_sets(r, &ps.spectrum);
    let limits: Vec<InverseLimit> = opens.iter().map(|u| ps.inverse_limit(u)).collect();

    let mut t = Tally::new("limit.subtriring");
    for l in &limits {
        let v = l.subtriring_violation(ps);
        t.see(v.is_none(), || format!("{}: {}", l.open, v.clone().unwrap_or_default()));
    }
    checks.push(t.done());

    let mut t = Tally::new("limit.empty_open_one_element");
    for l in limits.iter().filter(|l| l.open.is_empty()) {
        t.see(l.size() == 1, || format!("|O(∅)| = {}", l.size()));
    }
    checks.push(t.done());

    let mut t = Tally::new("limit.basic_isomorphism");
    for k in (0..n).filter(|&k| !ps.opens[k].is_empty()) {
        let l = ps.inverse_limit(&ps.opens[k]);
        let (pe, po) = l.projection(k).expect("generator lies in its own down-set");
        let s = &ps.spaces[k];
        let bij = |m: &[usize], size: usize| m.len() == size && m.iter().collect::<HashSet<_>>().len() == size;
        t.see(bij(&pe, s.even_size()) && bij(&po, s.odd_size()), || gens[k].to_string());
    }
    checks.push(t.done());

    let restr: Vec<Vec<Option<LimitRestriction>>> = limits
        .iter()
        .map(|u| limits.iter().map(|v| if v.open.is_subset(&u.open) { LimitRestriction::new(u, v) } else { None }).collect())
        .collect();

    let mut t = Tally::new("open.identity");
    for (i, l) in limits.iter().enumerate() {
        let ok = restr[i][i].as_ref().is_some_and(LimitRestriction::is_identity);
        t.see(ok, || l.open.to_string());
    }
    checks.push(t.done());

    let mut t = Tally::new("open.restriction_total");
    let mut p = Tally::new("open.projection");
    for (i, u) in limits.iter().enumerate() {
        for (j, v) in limits.iter().enumerate() {
            if !v.open.is_subset(&u.open) {
                continue;
            }
            let rho = restr[i][j].as_ref();
            t.see(rho.is_some_and(LimitRestriction::is_total), || format!("({}, {})", u.open, v.open));
            let Some(rho) = rho else { continue };
            for &a in &v.lambda {
                let (pue, puo) = u.projection(a).expect("Λ_V ⊆ Λ_U");
                let (pve, pvo) = v.projection(a).expect("member of Λ_V");
                let ok = pue.iter().zip(&rho.even).all(|(x, y)| y.map(|y| pve[y]) == Some(*x))
                    && puo.iter().zip(&rho.odd).all(|(x, y)| y.map(|y| pvo[y]) == Some(*x));
                p.see(ok, || format!("({}, {}) at {}", u.open, v.open, gens[a]));
            }
        }
    }
    checks.push(t.done());
    checks.push(p.done());

    let mut t = Tally::new("open.composition");
    for i in 0..limits.len() {
        for j in 0..limits.len() {
            for k in 0..limits.len() {
                if let (Some(uv), Some(vw), Some(uw)) = (&restr[i][j], &restr[j][k], &restr[i][k]) {
                    t.see(uv.then(vw) == *uw, || {
                        format!("({}, {}, {})", limits[i].open, limits[j].open, limits[k].open)
                    });
                }
            }
        }
    }
    checks.push(t.done());

    let passed = checks.iter().all(|c| c.passed);
    Ok(PresheafReport { ring: r.name().to_string(), passed, checks })
}

/// One section of a family, with its slot decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyMember {
    pub generator: Generator,
    pub section: TriringElement,
    pub even_slots: Vec<usize>,
    pub odd_slots: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingCounterexample {
    /// `"identity"` or `"gluing"`.
    pub axiom: String,
    pub family: Vec<FamilyMember>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CoverVerdict {
    pub cover: Vec<Generator>,
    pub identity_axiom: bool,
    pub gluing_axiom: bool,
    /// Compatible even and odd families visited before the verdict.
    pub families_checked: usize,
    pub counterexample: Option<GluingCounterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OpenVerdict {
    pub generator: Generator,
    pub points: IndexSet,
    pub covers: Vec<CoverVerdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SheafReport {
    pub ring: String,
    pub max_cover_size: usize,
    pub passed: bool,
    pub basic_opens: Vec<OpenVerdict>,
}

impl SheafReport {
    pub fn failures(&self) -> impl Iterator<Item = (&OpenVerdict, &CoverVerdict)> {
        self.basic_opens
            .iter()
            .flat_map(|o| o.covers.iter().map(move |c| (o, c)))
            .filter(|(_, c)| !(c.identity_axiom && c.gluing_axiom))
    }
}

/// Irredundant covers of `D(f)` by nonempty basic opens with distinct
/// point sets, at most `max` members. Each point set is represented by its
/// least generator. Ordered by size, then by member positions.
pub fn enumerate_covers(ps: &StructurePresheaf, f: usize, max: usize) -> Vec<Vec<usize>> {
    let target = &ps.opens[f];
    if target.is_empty() {
        return Vec::new();
    }
    let mut seen = HashSet::new();
    let candidates: Vec<usize> = (0..ps.generators.len())
        .filter(|&g| !ps.opens[g].is_empty() && ps.opens[g].is_subset(target) && seen.insert(ps.opens[g].clone()))
        .collect();
    let union = |members: &mut dyn Iterator<Item = &usize>| {
        members.fold(IndexSet::empty(), |acc, &g| acc.union(&ps.opens[g]))
    };
    let mut out = Vec::new();
    for size in 1..=max.min(candidates.len()) {
        for combo in candidates.iter().copied().combinations(size) {
            if union(&mut combo.iter()) != *target {
                continue;
            }
            let irredundant = (0..combo.len()).all(|skip| {
                union(&mut combo.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, g)| g)) != *target
            });
            if irredundant {
                out.push(combo);
            }
        }
    }
    out
}

#[derive(Clone, Copy)]
enum Part {
    Even,
    Odd,
}

fn part_map(m: &TriringHomomorphism, part: Part) -> &[usize] {
    match part {
        Part::Even => &m.even,
        Part::Odd => &m.odd,
    }
}

/// Least compatible family (lexicographic in member sections) that is not
/// the image of a section over `D(f)`, for one parity. Also returns how
/// many compatible families were visited.
fn first_unglued(ps: &StructurePresheaf, f: usize, cover: &[usize], part: Part) -> (Option<Vec<usize>>, usize) {
    let size = |g: usize| match part {
        Part::Even => ps.spaces[g].even_size(),
        Part::Odd => ps.spaces[g].odd_size(),
    };
    let image: HashSet<Vec<usize>> = (0..size(f))
        .map(|s| cover.iter().map(|&g| part_map(&ps.rho(f, g).expect("member inside D(f)").map, part)[s]).collect())
        .collect();
    // Shared refinements of each pair of members.
    let shared: Vec<Vec<Vec<usize>>> = cover
        .iter()
        .map(|&a| {
            cover
                .iter()
                .map(|&b| {
                    let both = ps.opens[a].intersection(&ps.opens[b]);
                    (0..ps.generators.len()).filter(|&h| !ps.opens[h].is_empty() && ps.opens[h].is_subset(&both)).collect()
                })
                .collect()
        })
        .collect();
    let mut values = Vec::with_capacity(cover.len());
    let mut visited = 0;
    #[allow(clippy::too_many_arguments)]
    fn descend(
        values: &mut Vec<usize>,
        cover: &[usize],
        shared: &[Vec<Vec<usize>>],
        image: &HashSet<Vec<usize>>,
        visited: &mut usize,
        size: &dyn Fn(usize) -> usize,
        ps: &StructurePresheaf,
        part: Part,
    ) -> bool {
        let rho = |a: usize, h: usize| part_map(&ps.rho(a, h).expect("refinement").map, part);
        let i = values.len();
        if i == cover.len() {
            *visited += 1;
            return !image.contains(values.as_slice());
        }
        for x in 0..size(cover[i]) {
            let ok = (0..i).all(|j| shared[j][i].iter().all(|&h| rho(cover[j], h)[values[j]] == rho(cover[i], h)[x]));
            if ok {
                values.push(x);
                if descend(values, cover, shared, image, visited, size, ps, part) {
                    return true;
                }
                values.pop();
            }
        }
        false
    }
    let found = descend(&mut values, cover, &shared, &image, &mut visited, &size, ps, part);
    (found.then_some(values), visited)
}

fn member(ps: &StructurePresheaf, g: usize, section: TriringElement) -> FamilyMember {
    let s = &ps.spaces[g];
    FamilyMember {
        generator: ps.generators[g],
        section,
        even_slots: s.even_radix.split(section.even),
        odd_slots: s.odd_radix.split(section.odd),
    }
}

/// Both sheaf axioms for `D(f)` and the given cover, by generator
/// positions. The cover must consist of basic opens inside `D(f)` whose
/// union is `D(f)`; redundant members are allowed.
pub fn verify_cover(ps: &StructurePresheaf, f: usize, cover: &[usize]) -> Result<CoverVerdict> {
    let target = &ps.opens[f];
    for &g in cover {
        if !ps.opens[g].is_subset(target) {
            return Err(Error::ContainmentViolation { f: ps.generators[f].to_string(), g: ps.generators[g].to_string() });
        }
    }
    let covered = cover.iter().fold(IndexSet::empty(), |acc, &g| acc.union(&ps.opens[g]));
    if let Some(p) = target.iter().find(|&p| !covered.contains(p)) {
        return Err(Error::NotACover { point: p });
    }
    let space = &ps.spaces[f];
    let maps: Vec<&TriringHomomorphism> = cover.iter().map(|&g| &ps.rho(f, g).expect("inside").map).collect();

    // A nonzero section restricting to zero on every member.
    let identity_fail = (1..space.size()).map(|s| space.triring.element(s)).find(|x| {
        maps.iter().all(|m| m.even[x.even] == 0 && m.odd[x.odd] == 0)
    });
    let mut counterexample =
        identity_fail.map(|x| GluingCounterexample { axiom: "identity".into(), family: vec![member(ps, f, x)] });

    let (even_bad, ve) = first_unglued(ps, f, cover, Part::Even);
    let (odd_bad, vo) = first_unglued(ps, f, cover, Part::Odd);
    let gluing = even_bad.is_none() && odd_bad.is_none();
    if counterexample.is_none() && !gluing {
        // Failing families of one parity, the other parity zero; the
        // lexicographically smaller one in flat section indices.
        let flat = |tuple: &[usize], part: Part| -> Vec<TriringElement> {
            tuple
                .iter()
                .map(|&x| match part {
                    Part::Even => TriringElement::new(x, 0),
                    Part::Odd => TriringElement::new(0, x),
                })
                .collect()
        };
        let key = |fam: &[TriringElement]| -> Vec<usize> {
            fam.iter().zip(cover).map(|(x, &g)| ps.spaces[g].triring.index_of(*x)).collect()
        };
        let family = [even_bad.map(|t| flat(&t, Part::Even)), odd_bad.map(|t| flat(&t, Part::Odd))]
            .into_iter()
            .flatten()
            .min_by_key(|fam| key(fam))
            .expect("some parity fails");
        counterexample = Some(GluingCounterexample {
            axiom: "gluing".into(),
            family: family.iter().zip(cover).map(|(&x, &g)| member(ps, g, x)).collect(),
        });
    }
    Ok(CoverVerdict {
        cover: cover.iter().map(|&g| ps.generators[g]).collect(),
        identity_axiom: identity_fail.is_none(),
        gluing_axiom: gluing,
        families_checked: ve + vo,
        counterexample,
    })
}

/// Both axioms for every nonempty basic open and each of its irredundant
/// basic covers.
pub fn verify_sheaf_axioms_with(ps: &StructurePresheaf, max_cover_size: usize) -> Result<SheafReport> {
    let mut basic_opens = Vec::new();
    for f in (0..ps.generators.len()).filter(|&f| !ps.opens[f].is_empty()) {
        let covers = enumerate_covers(ps, f, max_cover_size)
            .iter()
            .map(|c| verify_cover(ps, f, c))
            .collect::<Result<Vec<_>>>()?;
        basic_opens.push(OpenVerdict { generator: ps.generators[f], points: ps.opens[f].clone(), covers });
    }
    let passed = basic_opens.iter().all(|o| o.covers.iter().all(|c| c.identity_axiom && c.gluing_axiom));
    Ok(SheafReport { ring: ps.ring.name().to_string(), max_cover_size, passed, basic_opens })
}

pub fn verify_sheaf_axioms(ps: &StructurePresheaf) -> Result<SheafReport> {
    verify_sheaf_axioms_with(ps, DEFAULT_MAX_COVER_SIZE)
}
