//! Witnesses and restriction maps between section spaces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fraction::FractionRing;
use crate::homomorphism::TriringHomomorphism;
use crate::triring::{FiniteTriring, Generator};

use super::section::{Component, SectionCase, SectionSpace};

/// Data realizing `D(g) ⊆ D(f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RestrictionWitness {
    /// `g0^u = r0·f0`
    EvenEven { u: usize, r0: usize },
    /// `g1^♯v = r1·f0`
    EvenOdd { v: usize, r1: usize },
    /// `g1^♯θ = t1♯f1`
    OddOdd { theta: usize, t1: usize },
}

impl RestrictionWitness {
    pub fn exponent(&self) -> usize {
        match *self {
            RestrictionWitness::EvenEven { u, .. } => u,
            RestrictionWitness::EvenOdd { v, .. } => v,
            RestrictionWitness::OddOdd { theta, .. } => theta,
        }
    }

    pub fn cofactor(&self) -> usize {
        match *self {
            RestrictionWitness::EvenEven { r0, .. } => r0,
            RestrictionWitness::EvenOdd { r1, .. } => r1,
            RestrictionWitness::OddOdd { t1, .. } => t1,
        }
    }

    /// Whether the defining identity holds in `r`.
    pub fn holds(&self, r: &FiniteTriring, f: Generator, g: Generator) -> bool {
        match (*self, f, g) {
            (RestrictionWitness::EvenEven { u, r0 }, Generator::Even(f0), Generator::Even(g0)) => {
                r.even().pow(g0, u) == r.even().mul(r0, f0)
            }
            (RestrictionWitness::EvenOdd { v, r1 }, Generator::Even(f0), Generator::Odd(g1)) => {
                r.local_power(g1, v) == r.right(r1, f0)
            }
            (RestrictionWitness::OddOdd { theta, t1 }, Generator::Odd(f1), Generator::Odd(g1)) => {
                r.local_power(g1, theta) == r.sharp(t1, f1)
            }
            _ => false,
        }
    }
}

/// Every witness with exponent at most the size of the relevant part,
/// ordered by exponent and then cofactor. Powers repeat within that bound,
/// so no smaller exponent is missed.
pub fn all_witnesses(r: &FiniteTriring, f: Generator, g: Generator) -> Vec<RestrictionWitness> {
    let (n0, n1) = (r.even_size(), r.odd_size());
    let mut out = Vec::new();
    match (f, g) {
        (Generator::Even(f0), Generator::Even(g0)) => {
            for u in 1..=n0 {
                let p = r.even().pow(g0, u);
                out.extend((0..n0).filter(|&r0| r.even().mul(r0, f0) == p).map(|r0| RestrictionWitness::EvenEven { u, r0 }));
            }
        }
        (Generator::Even(f0), Generator::Odd(g1)) => {
            for v in 1..=n1 {
                let p = r.local_power(g1, v);
                out.extend((0..n1).filter(|&r1| r.right(r1, f0) == p).map(|r1| RestrictionWitness::EvenOdd { v, r1 }));
            }
        }
        (Generator::Odd(f1), Generator::Odd(g1)) => {
            for theta in 1..=n1 {
                let p = r.local_power(g1, theta);
                out.extend((0..n1).filter(|&t1| r.sharp(t1, f1) == p).map(|t1| RestrictionWitness::OddOdd { theta, t1 }));
            }
        }
        (Generator::Odd(_), Generator::Even(_)) => {}
    }
    out
}

/// Minimal witness for `D(g) ⊆ D(f)`, given the two point sets.
pub fn find_witness(
    r: &FiniteTriring,
    f: (Generator, &crate::IndexSet),
    g: (Generator, &crate::IndexSet),
) -> Result<RestrictionWitness> {
    if !g.1.is_subset(f.1) {
        return Err(Error::ContainmentViolation { f: f.0.to_string(), g: g.0.to_string() });
    }
    if let (Generator::Odd(_), Generator::Even(_)) = (f.0, g.0) {
        return Err(Error::Invalid(format!("no witness is defined from {} to {}", f.0, g.0)));
    }
    all_witnesses(r, f.0, g.0)
        .into_iter()
        .next()
        .ok_or_else(|| Error::Invalid(format!("D({}) ⊆ D({}) but no witness exists", g.0, f.0)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum RestrictionCase {
    /// Target in the trinilradical.
    Zero,
    /// Even to even, both missing the odd points.
    EvenNoOddToEvenNoOdd,
    /// Even to even, only the source meeting the odd points.
    EvenWithOddToEvenNoOdd,
    /// Even to even, both meeting the odd points.
    EvenWithOddToEvenWithOdd,
    /// Even to odd.
    EvenToOdd,
    /// Odd to odd.
    OddToOdd,
}

/// One target slot computed from one source slot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlotMap {
    pub source_slot: usize,
    pub table: Vec<usize>,
}

/// A representative, decomposition and witness on which two evaluations of
/// a slot formula disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub parity: &'static str,
    pub target_slot: usize,
    pub class: usize,
    pub representative: (usize, usize),
    pub witness: Option<RestrictionWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Restriction {
    pub source: Generator,
    pub target: Generator,
    pub case: RestrictionCase,
    pub witness: Option<RestrictionWitness>,
    /// How many witnesses the map was recomputed with.
    pub witnesses_checked: usize,
    pub even_slots: Vec<SlotMap>,
    pub odd_slots: Vec<SlotMap>,
    pub map: TriringHomomorphism,
    /// First failure of independence from representative, exponent
    /// decomposition or witness.
    pub disagreement: Option<Disagreement>,
}

/// Exponents `n ≤ bound` with `step(n) = d`.
fn decompositions(bound: usize, d: usize, step: impl Fn(usize) -> usize) -> Vec<usize> {
    (0..=bound).filter(|&n| step(n) == d).collect()
}

struct SlotBuilder<'a> {
    disagreement: &'a mut Option<Disagreement>,
}

impl SlotBuilder<'_> {
    /// Builds a slot table. `eval(a, d)` yields, for the representative
    /// `a/d`, every value of the formula over all decompositions and
    /// witnesses, tagged with the witness used.
    fn build(
        &mut self,
        parity: &'static str,
        target_slot: usize,
        source_slot: usize,
        src: &FractionRing,
        eval: impl Fn(usize, usize) -> Vec<(Option<RestrictionWitness>, Option<usize>)>,
    ) -> SlotMap {
        let mut table = Vec::with_capacity(src.size());
        for c in 0..src.size() {
            let mut value = None;
            for &(a, d) in src.members(c) {
                let vals = eval(a, d);
                if vals.is_empty() && self.disagreement.is_none() {
                    *self.disagreement = Some(Disagreement { parity, target_slot, class: c, representative: (a, d), witness: None });
                }
                for (w, v) in vals {
                    let ok = match (value, v) {
                        (_, None) => false,
                        (None, Some(x)) => {
                            value = Some(x);
                            true
                        }
                        (Some(x), Some(y)) => x == y,
                    };
                    if !ok && self.disagreement.is_none() {
                        *self.disagreement = Some(Disagreement { parity, target_slot, class: c, representative: (a, d), witness: w });
                    }
                }
            }
            table.push(value.unwrap_or(0));
        }
        SlotMap { source_slot, table }
    }
}

fn comp(s: &SectionSpace, k: usize) -> &Component {
    &s.components[k]
}

fn odd_frac(s: &SectionSpace, k: usize) -> &FractionRing {
    comp(s, k).odd.as_ref().expect("localized slot has an odd part")
}

fn assemble(src: &SectionSpace, tgt: &SectionSpace, even: &[SlotMap], odd: &[SlotMap]) -> TriringHomomorphism {
    let run = |n: usize, sr: &super::section::Radix, tr: &super::section::Radix, slots: &[SlotMap]| {
        (0..n)
            .map(|x| {
                let s = sr.split(x);
                let t: Vec<usize> = slots.iter().map(|m| m.table[s[m.source_slot]]).collect();
                tr.join(&t)
            })
            .collect()
    };
    let e = if even.is_empty() { vec![0; src.even_size()] } else { run(src.even_size(), &src.even_radix, &tgt.even_radix, even) };
    let o = if odd.is_empty() { vec![0; src.odd_size()] } else { run(src.odd_size(), &src.odd_radix, &tgt.odd_radix, odd) };
    TriringHomomorphism::new(e, o)
}

/// `ρ_{f,g}: O(D(f)) → O(D(g))` for `D(g) ⊆ D(f)`, given as point sets.
/// The map is computed from the minimal witness and recomputed with every
/// representative, exponent decomposition and witness.
pub fn restriction(
    r: &FiniteTriring,
    src: &SectionSpace,
    src_points: &crate::IndexSet,
    tgt: &SectionSpace,
    tgt_points: &crate::IndexSet,
) -> Result<Restriction> {
    let (f, g) = (src.generator, tgt.generator);
    if !tgt_points.is_subset(src_points) {
        return Err(Error::ContainmentViolation { f: f.to_string(), g: g.to_string() });
    }
    use SectionCase::*;
    let case = match (src.case, tgt.case) {
        (_, ZeroSpace) => RestrictionCase::Zero,
        (EvenNoOdd, EvenNoOdd) => RestrictionCase::EvenNoOddToEvenNoOdd,
        (EvenWithOdd, EvenNoOdd) => RestrictionCase::EvenWithOddToEvenNoOdd,
        (EvenWithOdd, EvenWithOdd) => RestrictionCase::EvenWithOddToEvenWithOdd,
        (EvenWithOdd, OddCase) => RestrictionCase::EvenToOdd,
        (OddCase, OddCase) => RestrictionCase::OddToOdd,
        (s, t) => {
            return Err(Error::Invalid(format!(
                "no restriction pattern from {s:?} at {f} to {t:?} at {g} with D({g}) ⊆ D({f})"
            )))
        }
    };
    let witnesses = if case == RestrictionCase::Zero { Vec::new() } else { all_witnesses(r, f, g) };
    if case != RestrictionCase::Zero && witnesses.is_empty() {
        return Err(Error::Invalid(format!("D({g}) ⊆ D({f}) but no witness exists")));
    }
    let (e, o) = (r.even(), r.odd());
    let (n0, n1) = (r.even_size(), r.odd_size());
    let one_sharp = r.local_one();
    let mut disagreement = None;
    let mut b = SlotBuilder { disagreement: &mut disagreement };

    // a0/f0^n ↦ a0·r0^n / g0^{nu}
    let even_fraction = |b: &mut SlotBuilder, slot: usize, f0: usize, g0: usize| {
        let tf = &comp(tgt, slot).even;
        b.build("even", slot, 0, &comp(src, 0).even, |a0, d| {
            let mut out = Vec::new();
            for n in decompositions(n0, d, |n| e.pow(f0, n)) {
                for w in &witnesses {
                    let RestrictionWitness::EvenEven { u, r0 } = *w else { continue };
                    out.push((Some(*w), tf.class(e.mul(a0, e.pow(r0, n)), e.pow(g0, n * u))));
                }
            }
            out
        })
    };
    // b0 ↦ b0 between slots whose even denominators are {1}
    let identity = |b: &mut SlotBuilder, tslot: usize, sslot: usize| {
        let tf = &comp(tgt, tslot).even;
        b.build("even", tslot, sslot, &comp(src, sslot).even, |a, d| vec![(None, tf.class(a, d))])
    };

    let (even_slots, odd_slots) = match (case, f, g) {
        (RestrictionCase::Zero, _, _) => (vec![], vec![]),
        (RestrictionCase::EvenNoOddToEvenNoOdd | RestrictionCase::EvenWithOddToEvenNoOdd, Generator::Even(f0), Generator::Even(g0)) => {
            (vec![even_fraction(&mut b, 0, f0, g0), identity(&mut b, 1, 1)], vec![])
        }
        (RestrictionCase::EvenWithOddToEvenWithOdd, Generator::Even(f0), Generator::Even(g0)) => {
            let evens = vec![even_fraction(&mut b, 0, f0, g0), identity(&mut b, 1, 1)];
            // a1/(z1·f0^m) ↦ a1·r0^m / (z1·g0^{mu})
            let ta = odd_frac(tgt, 0);
            let sa = odd_frac(src, 0);
            // Companions z1 lie outside every odd prime of D(f0), a set closed
            // under the right action of f0, so they exhaust the denominators.
            let zs: Vec<usize> = sa.denominators.iter().collect();
            let a_odd = b.build("odd", 0, 0, sa, |a1, d| {
                let mut out = Vec::new();
                for &z1 in &zs {
                    for m in decompositions(n0, d, |m| r.right(z1, e.pow(f0, m))) {
                        for w in &witnesses {
                            let RestrictionWitness::EvenEven { u, r0 } = *w else { continue };
                            out.push((Some(*w), ta.class(r.right(a1, e.pow(r0, m)), r.right(z1, e.pow(g0, m * u)))));
                        }
                    }
                }
                out
            });
            // b1/(1♯·f0^k) ↦ b1·r0^k / (1♯·g0^{ku})
            let tb = odd_frac(tgt, 1);
            let b_odd = b.build("odd", 1, 1, odd_frac(src, 1), |b1, d| {
                let mut out = Vec::new();
                for k in decompositions(n0, d, |k| r.right(one_sharp, e.pow(f0, k))) {
                    for w in &witnesses {
                        let RestrictionWitness::EvenEven { u, r0 } = *w else { continue };
                        out.push((Some(*w), tb.class(r.right(b1, e.pow(r0, k)), r.right(one_sharp, e.pow(g0, k * u)))));
                    }
                }
                out
            });
            (evens, vec![a_odd, b_odd])
        }
        (RestrictionCase::EvenToOdd, Generator::Even(f0), Generator::Odd(g1)) => {
            let evens = vec![identity(&mut b, 0, 1)];
            // b1/(1♯·f0^k) ↦ (b1 ♯ r1^♯k) / g1^♯kv
            let tl = odd_frac(tgt, 0);
            let l_odd = b.build("odd", 0, 1, odd_frac(src, 1), |b1, d| {
                let mut out = Vec::new();
                for k in decompositions(n0, d, |k| r.right(one_sharp, e.pow(f0, k))) {
                    for w in &witnesses {
                        let RestrictionWitness::EvenOdd { v, r1 } = *w else { continue };
                        out.push((Some(*w), tl.class(o.mul(b1, o.pow(r1, k)), o.pow(g1, k * v))));
                    }
                }
                out
            });
            (evens, vec![l_odd])
        }
        (RestrictionCase::OddToOdd, Generator::Odd(f1), Generator::Odd(g1)) => {
            let evens = vec![identity(&mut b, 0, 0)];
            // b1/f1^♯n ↦ (b1 ♯ t1^♯n) / g1^♯θn
            let tl = odd_frac(tgt, 0);
            let l_odd = b.build("odd", 0, 0, odd_frac(src, 0), |b1, d| {
                let mut out = Vec::new();
                for n in decompositions(n1, d, |n| o.pow(f1, n)) {
                    for w in &witnesses {
                        let RestrictionWitness::OddOdd { theta, t1 } = *w else { continue };
                        out.push((Some(*w), tl.class(o.mul(b1, o.pow(t1, n)), o.pow(g1, theta * n))));
                    }
                }
                out
            });
            (evens, vec![l_odd])
        }
        _ => unreachable!("case follows from the generator parities"),
    };
    let map = assemble(src, tgt, &even_slots, &odd_slots);
    Ok(Restriction {
        source: f,
        target: g,
        case,
        witness: witnesses.first().copied(),
        witnesses_checked: witnesses.len(),
        even_slots,
        odd_slots,
        map,
        disagreement,
    })
}
