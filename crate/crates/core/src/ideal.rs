//! Triideals: graded two-sided ideals whose odd part is a `♯`-ideal.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{additive_closure, close_under_sums, IndexSet};
use crate::triring::FiniteTriring;

/// A pair `(I0, I1)` of index sets. Ordering compares `I0` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triideal {
    pub even: IndexSet,
    pub odd: IndexSet,
}

impl fmt::Display for Triideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.even, self.odd)
    }
}

impl Triideal {
    pub fn new(even: IndexSet, odd: IndexSet) -> Self {
        Triideal { even, odd }
    }

    pub fn zero() -> Self {
        Triideal::new(IndexSet::singleton(0), IndexSet::singleton(0))
    }

    pub fn full(r: &FiniteTriring) -> Self {
        Triideal::new(IndexSet::full(r.even_size()), IndexSet::full(r.odd_size()))
    }

    pub fn is_full(&self, r: &FiniteTriring) -> bool {
        self.even.len() == r.even_size() && self.odd.len() == r.odd_size()
    }

    /// `I1 = R1`
    pub fn contains_odd_part(&self, r: &FiniteTriring) -> bool {
        self.odd.len() == r.odd_size()
    }

    pub fn is_subset(&self, other: &Triideal) -> bool {
        self.even.is_subset(&other.even) && self.odd.is_subset(&other.odd)
    }

    pub fn contains(&self, x: crate::TriringElement) -> bool {
        self.even.contains(x.even) && self.odd.contains(x.odd)
    }
}

fn check_fits(r: &FiniteTriring, i: &Triideal) -> Result<()> {
    let fits = i.even.iter().all(|x| x < r.even_size()) && i.odd.iter().all(|x| x < r.odd_size());
    if fits {
        Ok(())
    } else {
        Err(Error::ForeignIdeal { even_size: r.even_size(), odd_size: r.odd_size() })
    }
}

/// Checks each clause of the triideal definition, returning the first
/// violated one.
pub fn triideal_violation(r: &FiniteTriring, i: &Triideal) -> Option<String> {
    if check_fits(r, i).is_err() {
        return Some("index out of range".into());
    }
    let (e, o) = (r.even(), r.odd());
    let (i0, i1) = (&i.even, &i.odd);
    if !i0.contains(0) || !i1.contains(0) {
        return Some("missing zero".into());
    }
    for a in i0.iter() {
        for b in i0.iter() {
            if !i0.contains(e.add(a, b)) {
                return Some(format!("I0 not closed under addition at ({a},{b})"));
            }
        }
        if let Some(x) = (0..e.size()).find(|&x| !i0.contains(e.mul(x, a))) {
            return Some(format!("R0·I0 not in I0 at ({x},{a})"));
        }
        if let Some(al) = (0..o.size()).find(|&al| !i1.contains(r.right(al, a)) || !i1.contains(r.left(a, al))) {
            return Some(format!("R1·I0 + I0·R1 not in I1 at ({al},{a})"));
        }
    }
    for a in i1.iter() {
        for b in i1.iter() {
            if !i1.contains(o.add(a, b)) {
                return Some(format!("I1 not closed under addition at ({a},{b})"));
            }
        }
        if let Some(al) = (0..o.size()).find(|&al| !i1.contains(o.mul(al, a))) {
            return Some(format!("R1♯I1 not in I1 at ({al},{a})"));
        }
        if let Some(x) = (0..e.size()).find(|&x| !i1.contains(r.left(x, a)) || !i1.contains(r.right(a, x))) {
            return Some(format!("R0·I1 + I1·R0 not in I1 at ({x},{a})"));
        }
    }
    None
}

pub fn is_triideal(r: &FiniteTriring, i: &Triideal) -> bool {
    triideal_violation(r, i).is_none()
}

pub fn ensure_triideal(r: &FiniteTriring, i: &Triideal) -> Result<()> {
    check_fits(r, i)?;
    match triideal_violation(r, i) {
        None => Ok(()),
        Some(reason) => Err(Error::NotTriideal { reason }),
    }
}

fn check_even(r: &FiniteTriring, x0: usize) -> Result<()> {
    r.check(crate::TriringElement::new(x0, 0))
}

fn check_odd(r: &FiniteTriring, x1: usize) -> Result<()> {
    r.check(crate::TriringElement::new(0, x1))
}

/// `R·x0 = R0x0 ⊕ R1x0`, closed under addition.
pub fn principal_even(r: &FiniteTriring, x0: usize) -> Result<Triideal> {
    check_even(r, x0)?;
    let even = r.even().span((0..r.even_size()).map(|y| r.even().mul(y, x0)));
    let odd = r.odd().span((0..r.odd_size()).map(|a| r.right(a, x0)));
    Ok(Triideal::new(even, odd))
}

/// `R1♯x1`, with zero even part.
pub fn principal_odd(r: &FiniteTriring, x1: usize) -> Result<Triideal> {
    check_odd(r, x1)?;
    let odd = r.odd().span((0..r.odd_size()).map(|a| r.sharp(a, x1)));
    Ok(Triideal::new(IndexSet::singleton(0), odd))
}

/// The triideal generated by a homogeneous element.
pub fn principal(r: &FiniteTriring, g: crate::Generator) -> Result<Triideal> {
    match g {
        crate::Generator::Even(x) => principal_even(r, x),
        crate::Generator::Odd(x) => principal_odd(r, x),
    }
}

pub fn sum(r: &FiniteTriring, a: &Triideal, b: &Triideal) -> Result<Triideal> {
    check_fits(r, a)?;
    check_fits(r, b)?;
    Ok(Triideal::new(
        r.even().span(a.even.iter().chain(b.even.iter())),
        r.odd().span(a.odd.iter().chain(b.odd.iter())),
    ))
}

pub fn sum_all<'a>(r: &FiniteTriring, family: impl IntoIterator<Item = &'a Triideal>) -> Result<Triideal> {
    let mut acc = Triideal::zero();
    for i in family {
        acc = sum(r, &acc, i)?;
    }
    Ok(acc)
}

pub fn intersect(r: &FiniteTriring, a: &Triideal, b: &Triideal) -> Result<Triideal> {
    check_fits(r, a)?;
    check_fits(r, b)?;
    Ok(Triideal::new(a.even.intersection(&b.even), a.odd.intersection(&b.odd)))
}

/// The mixed product together with the raw set products it is spanned by.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MixedProduct {
    pub ideal: Triideal,
    pub raw_even: IndexSet,
    pub raw_odd: IndexSet,
    /// Whether the raw products were already additively closed.
    pub raw_closed: bool,
}

/// `(span I0J0, span I1♯J1)`.
pub fn mixed_product(r: &FiniteTriring, a: &Triideal, b: &Triideal) -> Result<MixedProduct> {
    check_fits(r, a)?;
    check_fits(r, b)?;
    let raw_even: IndexSet =
        a.even.iter().flat_map(|x| b.even.iter().map(move |y| (x, y))).map(|(x, y)| r.even().mul(x, y)).collect();
    let raw_odd: IndexSet =
        a.odd.iter().flat_map(|x| b.odd.iter().map(move |y| (x, y))).map(|(x, y)| r.sharp(x, y)).collect();
    let ideal = Triideal::new(r.even().span(raw_even.iter()), r.odd().span(raw_odd.iter()));
    let raw_closed = ideal.even == raw_even && ideal.odd == raw_odd;
    Ok(MixedProduct { ideal, raw_even, raw_odd, raw_closed })
}

/// Smallest action-stable `♯`-ideal of `R1` containing `gens`.
pub fn odd_closure(r: &FiniteTriring, gens: impl IntoIterator<Item = usize>) -> IndexSet {
    let (o, n0, n1) = (r.odd(), r.even_size(), r.odd_size());
    let mut set = additive_closure(n1, |a, b| o.add(a, b), gens);
    loop {
        let mut next: Vec<usize> = set.as_slice().to_vec();
        for a in set.iter() {
            next.extend((0..n1).map(|b| o.mul(b, a)));
            next.extend((0..n0).flat_map(|x| [r.left(x, a), r.right(a, x)]));
        }
        let grown = additive_closure(n1, |a, b| o.add(a, b), next);
        if grown == set {
            return set;
        }
        set = grown;
    }
}

/// All action-stable `♯`-ideals of the odd part.
pub fn odd_ideals(r: &FiniteTriring) -> Vec<IndexSet> {
    let principal: Vec<IndexSet> = (0..r.odd_size()).map(|a| odd_closure(r, [a])).collect();
    close_under_sums(r.odd(), &principal)
}

/// Every triideal, sorted. Even ideals × action-stable odd ideals, filtered
/// by `R1·I0 + I0·R1 ⊆ I1`.
pub fn enumerate_triideals(r: &FiniteTriring) -> Vec<Triideal> {
    let evens = r.even().ideals();
    let odds = odd_ideals(r);
    let mut out = Vec::new();
    for i0 in &evens {
        for i1 in &odds {
            let ok = i0.iter().all(|x| (0..r.odd_size()).all(|a| i1.contains(r.left(x, a)) && i1.contains(r.right(a, x))));
            if ok {
                out.push(Triideal::new(i0.clone(), i1.clone()));
            }
        }
    }
    out.sort();
    out
}

/// Reference enumeration: every pair of additive subgroups, filtered by the
/// full definition. Exponential in the carrier, meant for small rings.
pub fn enumerate_triideals_naive(r: &FiniteTriring) -> Vec<Triideal> {
    let subgroups = |ring: &crate::FiniteCommutativeRing| -> Vec<IndexSet> {
        let mut found = BTreeSet::new();
        let mut work = vec![IndexSet::singleton(0)];
        found.insert(IndexSet::singleton(0));
        while let Some(s) = work.pop() {
            for x in 0..ring.size() {
                if !s.contains(x) {
                    let t = ring.span(s.iter().chain([x]));
                    if found.insert(t.clone()) {
                        work.push(t);
                    }
                }
            }
        }
        found.into_iter().collect()
    };
    let evens = subgroups(r.even());
    let odds = subgroups(r.odd());
    let mut out: Vec<Triideal> = evens
        .iter()
        .flat_map(|a| odds.iter().map(move |b| Triideal::new(a.clone(), b.clone())))
        .filter(|i| is_triideal(r, i))
        .collect();
    out.sort();
    out
}
