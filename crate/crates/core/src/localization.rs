//! Localization at multiplicative subsets, and the three standard kinds:
//! at a prime, at an even element, at an odd element.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fraction::{induced, FractionRing};
use crate::homomorphism::{validate_homomorphism, TriringHomomorphism};
use crate::ideal::{enumerate_triideals, ensure_triideal, Triideal};
use crate::ring::{FiniteCommutativeRing, IndexSet};
use crate::spectrum::Trispectrum;
use crate::triring::FiniteTriring;
use crate::validate::{first_fail1, first_fail2, validate_triring, AxiomLayer, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicativeSubset {
    pub even: IndexSet,
    pub odd: IndexSet,
}

impl MultiplicativeSubset {
    pub fn new(even: IndexSet, odd: IndexSet) -> Self {
        MultiplicativeSubset { even, odd }
    }

    pub fn units(r: &FiniteTriring) -> Self {
        MultiplicativeSubset::new(
            (0..r.even_size()).filter(|&x| r.even().is_unit(x)).collect(),
            (0..r.odd_size()).filter(|&x| r.odd().is_unit(x)).collect(),
        )
    }

    pub fn minimal(r: &FiniteTriring) -> Self {
        MultiplicativeSubset::new(IndexSet::singleton(r.even().one()), IndexSet::singleton(r.local_one()))
    }
}

/// Witnesses are element indices in the order the clause names them.
pub fn validate_multiplicative_subset(r: &FiniteTriring, s: &MultiplicativeSubset) -> ValidationReport {
    let layer = AxiomLayer::MultiplicativeSubset;
    let mut rep = ValidationReport::new(format!("multiplicative subset of {}", r.name()));
    let (s0, s1) = (s.even.as_slice(), s.odd.as_slice());
    let fits = s0.iter().all(|&x| x < r.even_size()) && s1.iter().all(|&x| x < r.odd_size());
    rep.record(layer, "mult.in_range", (!fits).then(Vec::new));
    if !fits {
        return rep;
    }
    let zero = if s.even.contains(0) {
        Some(vec![0, 0])
    } else if s.odd.contains(0) {
        Some(vec![1, 0])
    } else {
        None
    };
    rep.record(layer, "mult.zero_excluded", zero);
    rep.record(layer, "mult.one", first_fail1(1, |_| s.even.contains(r.even().one())));
    rep.record(layer, "mult.local_one", first_fail1(1, |_| s.odd.contains(r.local_one())));
    let w2 = |a: &[usize], b: &[usize], ok: &dyn Fn(usize, usize) -> bool| {
        first_fail2(a.len(), b.len(), |i, j| ok(a[i], b[j])).map(|w| vec![a[w[0]], b[w[1]]])
    };
    rep.record(layer, "mult.even_closed", w2(s0, s0, &|x, y| s.even.contains(r.even().mul(x, y))));
    rep.record(layer, "mult.left_closed", w2(s0, s1, &|x, a| s.odd.contains(r.left(x, a))));
    rep.record(layer, "mult.right_closed", w2(s1, s0, &|a, x| s.odd.contains(r.right(a, x))));
    rep.record(layer, "mult.sharp_closed", w2(s1, s1, &|a, b| s.odd.contains(r.sharp(a, b))));
    let sym = s0.iter().find_map(|&x| {
        let lhs: IndexSet = s1.iter().map(|&a| r.left(x, a)).collect();
        let rhs: IndexSet = s1.iter().map(|&a| r.right(a, x)).collect();
        lhs.as_slice()
            .iter()
            .chain(rhs.as_slice())
            .copied()
            .find(|&y| lhs.contains(y) != rhs.contains(y))
            .map(|y| vec![x, y])
    });
    rep.record(layer, "mult.symmetric", sym);
    rep
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LocalizationReport {
    pub class_count: usize,
    pub even_classes: usize,
    pub odd_classes: usize,
    pub canonical_hom_bijective: bool,
}

/// `S⁻¹R` as a finite triring of class pairs, with the canonical map.
#[derive(Clone, Debug)]
pub struct LocalizedTriring {
    pub triring: FiniteTriring,
    pub subset: MultiplicativeSubset,
    pub even: FractionRing,
    pub odd: FractionRing,
    pub canonical: TriringHomomorphism,
}

impl LocalizedTriring {
    pub fn report(&self) -> LocalizationReport {
        LocalizationReport {
            class_count: self.triring.size(),
            even_classes: self.triring.even_size(),
            odd_classes: self.triring.odd_size(),
            canonical_hom_bijective: self.canonical.is_bijective(&self.triring),
        }
    }

    /// Class of the fraction pair `(a0/s0, a1/s1)` as a triring element.
    pub fn class_of(&self, a0: usize, s0: usize, a1: usize, s1: usize) -> Option<crate::TriringElement> {
        Some(crate::TriringElement::new(self.even.class(a0, s0)?, self.odd.class(a1, s1)?))
    }
}

fn first_failure(rep: &ValidationReport) -> Error {
    let f = rep.failures().next().expect("report has a failure");
    Error::NotMultiplicative { clause: f.id.clone(), witness: f.witness.clone().unwrap_or_default() }
}

pub fn localize(r: &FiniteTriring, s: &MultiplicativeSubset) -> Result<LocalizedTriring> {
    localize_named(r, s, format!("S^-1 {}", r.name()))
}

fn localize_named(r: &FiniteTriring, s: &MultiplicativeSubset, name: String) -> Result<LocalizedTriring> {
    let rep = validate_multiplicative_subset(r, s);
    if !rep.passed() {
        return Err(first_failure(&rep));
    }
    let even = FractionRing::new(r.even(), &s.even)?;
    let odd = FractionRing::new(r.odd(), &s.odd)?;
    let em: Vec<Vec<_>> = (0..even.size()).map(|c| even.members(c).to_vec()).collect();
    let om: Vec<Vec<_>> = (0..odd.size()).map(|c| odd.members(c).to_vec()).collect();
    let oc = |a: usize, d: usize| odd.class(a, d).expect("closure keeps denominators in S1");
    let left = induced(&em, &om, "left action on fractions", |(a0, s0), (b1, t1)| {
        oc(r.left(a0, b1), r.left(s0, t1))
    })?;
    let right = induced(&om, &em, "right action on fractions", |(a1, s1), (b0, t0)| {
        oc(r.right(a1, b0), r.right(s1, t0))
    })?;
    let triring = FiniteTriring::new(name, even.ring.clone(), odd.ring.clone(), left, right)?;
    let valid = validate_triring(&triring);
    if !valid.passed() {
        let f = valid.failures().next().expect("failure");
        return Err(Error::Invalid(format!("localization fails {} at {:?}", f.id, f.witness)));
    }
    let canonical = TriringHomomorphism::new(
        (0..r.even_size()).map(|a| even.embed(a, r.even().one())).collect(),
        (0..r.odd_size()).map(|a| oc(a, r.local_one())).collect(),
    );
    let loc = LocalizedTriring { triring, subset: s.clone(), even, odd, canonical };
    if let Some(w) = product_formula_witness(r, &loc) {
        return Err(Error::IllDefined { operation: "fraction product".into(), witness: w });
    }
    let hom = validate_homomorphism(r, &loc.triring, &loc.canonical)?;
    if !hom.passed() {
        return Err(Error::Invalid(format!("canonical map is not a homomorphism:\n{hom}")));
    }
    Ok(loc)
}

/// Checks the displayed product formula
/// `(a0/s0, a1/s1)(b0/t0, b1/t1) = (a0b0/s0t0, ((a0b1)♯(s1t0) + (s0t1)♯(a1b0)) / ((s0t1)♯(s1t0)))`
/// on every representative quadruple against the assembled product.
pub fn product_formula_witness(r: &FiniteTriring, loc: &LocalizedTriring) -> Option<Vec<usize>> {
    let (e, o) = (r.even(), r.odd());
    let l = &loc.triring;
    for x in l.elements() {
        for y in l.elements() {
            let expected = l.mul_unchecked(x, y);
            for &(a0, s0) in loc.even.members(x.even) {
                for &(a1, s1) in loc.odd.members(x.odd) {
                    for &(b0, t0) in loc.even.members(y.even) {
                        for &(b1, t1) in loc.odd.members(y.odd) {
                            let ev = loc.even.class(e.mul(a0, b0), e.mul(s0, t0));
                            let num = o.add(
                                r.sharp(r.left(a0, b1), r.right(s1, t0)),
                                r.sharp(r.left(s0, t1), r.right(a1, b0)),
                            );
                            let den = r.sharp(r.left(s0, t1), r.right(s1, t0));
                            let od = loc.odd.class(num, den);
                            if ev != Some(expected.even) || od != Some(expected.odd) {
                                return Some(vec![a0, s0, a1, s1, b0, t0, b1, t1]);
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// Type 1: `S = (R0 \ P0) ∪ (R1 \ P1)`, defined when `P1 ≠ R1`.
pub fn localize_at_prime(r: &FiniteTriring, p: &Triideal) -> Result<LocalizedTriring> {
    ensure_triideal(r, p)?;
    if p.contains_odd_part(r) {
        return Err(Error::EvenPrimeLocalization);
    }
    let s = MultiplicativeSubset::new(p.even.complement(r.even_size()), p.odd.complement(r.odd_size()));
    localize_named(r, &s, format!("{}_{}", r.name(), p))
}

/// `T0 = {f0^n}`, `T1 = {z1·f0^n : z1 ∉ P1 for every odd P in D(f0)}`.
pub fn type2_subset(r: &FiniteTriring, spec: &Trispectrum, f0: usize) -> Result<MultiplicativeSubset> {
    r.check(crate::TriringElement::new(f0, 0))?;
    let odd_points: Vec<usize> = spec
        .odd_points
        .iter()
        .filter(|&k| !spec.points[k].ideal.even.contains(f0))
        .collect();
    if odd_points.is_empty() {
        return Err(Error::EmptyOddIntersection { f0 });
    }
    let t0 = r.even().powers(f0);
    let z: Vec<usize> =
        (0..r.odd_size()).filter(|&z| odd_points.iter().all(|&k| !spec.points[k].ideal.odd.contains(z))).collect();
    let t1: IndexSet = z.iter().flat_map(|&z| t0.iter().map(move |p| (z, p))).map(|(z, p)| r.right(z, p)).collect();
    Ok(MultiplicativeSubset::new(t0, t1))
}

/// Type 2: localization at an even element whose basic open meets the odd
/// trispectrum.
pub fn localize_at_even(r: &FiniteTriring, spec: &Trispectrum, f0: usize) -> Result<LocalizedTriring> {
    let s = type2_subset(r, spec, f0)?;
    localize_named(r, &s, format!("{}_(even {f0})", r.name()))
}

/// Type 3: `S0 = {1}`, `S1 = {f1^♯m}`; `f1` must not be `♯`-nilpotent.
pub fn localize_at_odd(r: &FiniteTriring, f1: usize) -> Result<LocalizedTriring> {
    r.check(crate::TriringElement::new(0, f1))?;
    if r.odd().nilpotency_index(f1).is_some() {
        return Err(Error::Trinilpotent { f1 });
    }
    let s = MultiplicativeSubset::new(IndexSet::singleton(r.even().one()), r.odd().powers(f1));
    localize_named(r, &s, format!("{}_(odd {f1})", r.name()))
}

/// Maximal triideals of the localization missing `i(S)` entirely.
pub fn maximal_triideals_avoiding_image(loc: &LocalizedTriring) -> Vec<Triideal> {
    let img0: IndexSet = loc.subset.even.iter().map(|s| loc.canonical.even[s]).collect();
    let img1: IndexSet = loc.subset.odd.iter().map(|s| loc.canonical.odd[s]).collect();
    let avoiding: Vec<Triideal> = enumerate_triideals(&loc.triring)
        .into_iter()
        .filter(|j| j.even.intersection(&img0).is_empty() && j.odd.intersection(&img1).is_empty())
        .collect();
    avoiding
        .iter()
        .filter(|j| !avoiding.iter().any(|k| k != *j && j.is_subset(k)))
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Uniqueness {
    /// Every homomorphism out of the localization was enumerated.
    Exhaustive { homomorphisms: usize, factoring: usize },
    /// Each class is `i(a)·i(s)⁻¹`, so any factorization agrees with the
    /// constructed one on every class.
    GeneratorDetermination,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Factorization {
    pub map: TriringHomomorphism,
    pub reproduces: bool,
    pub unique: bool,
    pub uniqueness: Uniqueness,
}

/// Targets up to this many elements get an exhaustive uniqueness check.
pub const EXHAUSTIVE_TARGET_LIMIT: usize = 32;

/// The unique `ψ̄` with `ψ = ψ̄ ∘ i` for a homomorphism `ψ: R → T`
/// inverting `S`.
pub fn factor_through(
    r: &FiniteTriring,
    loc: &LocalizedTriring,
    target: &FiniteTriring,
    psi: &TriringHomomorphism,
) -> Result<Factorization> {
    let rep = validate_homomorphism(r, target, psi)?;
    if !rep.passed() {
        return Err(Error::Invalid(format!("not a homomorphism:\n{rep}")));
    }
    let (te, to) = (target.even(), target.odd());
    for s in loc.subset.even.iter() {
        if !te.is_unit(psi.even[s]) {
            return Err(Error::NotInverted { part: "even", element: s });
        }
    }
    for s in loc.subset.odd.iter() {
        if !to.is_unit(psi.odd[s]) {
            return Err(Error::NotInverted { part: "odd", element: s });
        }
    }
    let bar = |fr: &FractionRing, ring: &FiniteCommutativeRing, m: &[usize], part: &str| -> Result<Vec<usize>> {
        (0..fr.size())
            .map(|c| {
                let value = |(a, s): (usize, usize)| ring.mul(m[a], ring.inverse(m[s]).expect("checked unit"));
                let v = value(fr.representative(c));
                match fr.members(c).iter().find(|&&p| value(p) != v) {
                    None => Ok(v),
                    Some(&(a, s)) => Err(Error::IllDefined { operation: format!("{part} factor map"), witness: vec![c, a, s] }),
                }
            })
            .collect()
    };
    let map = TriringHomomorphism::new(bar(&loc.even, te, &psi.even, "even")?, bar(&loc.odd, to, &psi.odd, "odd")?);
    let hom = validate_homomorphism(&loc.triring, target, &map)?;
    if !hom.passed() {
        return Err(Error::Invalid(format!("induced map is not a homomorphism:\n{hom}")));
    }
    let reproduces = map.after(&loc.canonical) == *psi;
    let (unique, uniqueness) = if target.size() <= EXHAUSTIVE_TARGET_LIMIT {
        let all = enumerate_homomorphisms(&loc.triring, target);
        let factoring: Vec<&TriringHomomorphism> = all.iter().filter(|h| h.after(&loc.canonical) == *psi).collect();
        let unique = factoring.len() == 1 && *factoring[0] == map;
        (unique, Uniqueness::Exhaustive { homomorphisms: all.len(), factoring: factoring.len() })
    } else {
        (true, Uniqueness::GeneratorDetermination)
    };
    Ok(Factorization { map, reproduces, unique, uniqueness })
}

/// Every triring homomorphism `src → tgt`, found by backtracking with
/// forward propagation through the operation tables.
pub fn enumerate_homomorphisms(src: &FiniteTriring, tgt: &FiniteTriring) -> Vec<TriringHomomorphism> {
    let mut evens = Vec::new();
    let mut m0 = vec![None; src.even_size()];
    let ok = assign(&mut m0, 0, 0, &|m| propagate_even(src, tgt, m))
        && assign(&mut m0, src.even().one(), tgt.even().one(), &|m| propagate_even(src, tgt, m));
    if ok {
        search(&mut m0, tgt.even_size(), &|m| propagate_even(src, tgt, m), &mut evens);
    }
    let mut out = Vec::new();
    for phi0 in evens {
        let mut m1 = vec![None; src.odd_size()];
        let prop = |m: &mut Vec<Option<usize>>| propagate_odd(src, tgt, &phi0, m);
        let ok = assign(&mut m1, 0, 0, &prop) && assign(&mut m1, src.local_one(), tgt.local_one(), &prop);
        if !ok {
            continue;
        }
        let mut odds = Vec::new();
        search(&mut m1, tgt.odd_size(), &prop, &mut odds);
        for phi1 in odds {
            out.push(TriringHomomorphism::new(phi0.clone(), phi1));
        }
    }
    out.sort_by(|a, b| (&a.even, &a.odd).cmp(&(&b.even, &b.odd)));
    out
}

type Prop<'a> = dyn Fn(&mut Vec<Option<usize>>) -> bool + 'a;

fn assign(m: &mut Vec<Option<usize>>, x: usize, v: usize, prop: &Prop) -> bool {
    match m[x] {
        Some(w) => w == v,
        None => {
            m[x] = Some(v);
            prop(m)
        }
    }
}

fn search(m: &mut Vec<Option<usize>>, range: usize, prop: &Prop, out: &mut Vec<Vec<usize>>) {
    match m.iter().position(Option::is_none) {
        None => out.push(m.iter().map(|v| v.expect("complete")).collect()),
        Some(x) => {
            for v in 0..range {
                let mut trial = m.clone();
                if assign(&mut trial, x, v, prop) {
                    search(&mut trial, range, prop, out);
                }
            }
        }
    }
}

/// Closes a partial map under a list of binary relations
/// `f(op_src(x, y)) = op_tgt(f(x), f(y))`; false on contradiction.
fn close_binary(m: &mut [Option<usize>], ops: &[(&dyn Fn(usize, usize) -> usize, &dyn Fn(usize, usize) -> usize)]) -> bool {
    loop {
        let mut changed = false;
        let assigned: Vec<(usize, usize)> = m.iter().enumerate().filter_map(|(x, v)| v.map(|v| (x, v))).collect();
        for &(x, vx) in &assigned {
            for &(y, vy) in &assigned {
                for (s_op, t_op) in ops {
                    let z = s_op(x, y);
                    let vz = t_op(vx, vy);
                    match m[z] {
                        Some(w) if w != vz => return false,
                        Some(_) => {}
                        None => {
                            m[z] = Some(vz);
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn propagate_even(src: &FiniteTriring, tgt: &FiniteTriring, m: &mut Vec<Option<usize>>) -> bool {
    let (se, te) = (src.even(), tgt.even());
    close_binary(m, &[(&|x, y| se.add(x, y), &|a, b| te.add(a, b)), (&|x, y| se.mul(x, y), &|a, b| te.mul(a, b))])
}

fn propagate_odd(src: &FiniteTriring, tgt: &FiniteTriring, phi0: &[usize], m: &mut Vec<Option<usize>>) -> bool {
    let (so, to) = (src.odd(), tgt.odd());
    if !close_binary(m, &[(&|x, y| so.add(x, y), &|a, b| to.add(a, b)), (&|x, y| so.mul(x, y), &|a, b| to.mul(a, b))]) {
        return false;
    }
    // Actions by the already fixed even map.
    loop {
        let mut changed = false;
        for a in 0..src.odd_size() {
            let Some(va) = m[a] else { continue };
            for x in 0..src.even_size() {
                for (z, vz) in [
                    (src.left(x, a), tgt.left(phi0[x], va)),
                    (src.right(a, x), tgt.right(va, phi0[x])),
                ] {
                    match m[z] {
                        Some(w) if w != vz => return false,
                        Some(_) => {}
                        None => {
                            m[z] = Some(vz);
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            return true;
        }
        if !close_binary(m, &[(&|x, y| so.add(x, y), &|a, b| to.add(a, b)), (&|x, y| so.mul(x, y), &|a, b| to.mul(a, b))]) {
            return false;
        }
    }
}
