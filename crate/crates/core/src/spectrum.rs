//! The trispectrum and its Zariski-type topology.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{enumerate_triideals, ensure_triideal, principal, sum_all, Triideal};
use crate::prime::{is_prime_by_definition, PrimeParity};
use crate::radical::radical;
use crate::ring::IndexSet;
use crate::triring::{FiniteTriring, Generator};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimePoint {
    pub ideal: Triideal,
    pub parity: PrimeParity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Trispectrum {
    pub points: Vec<PrimePoint>,
    pub even_points: IndexSet,
    pub odd_points: IndexSet,
}

/// All prime triideals: even points first, each group in triideal order.
pub fn trispectrum(r: &FiniteTriring) -> Trispectrum {
    let mut points: Vec<PrimePoint> = enumerate_triideals(r)
        .into_iter()
        .filter_map(|i| {
            let rep = is_prime_by_definition(r, &i);
            rep.prime.then_some(PrimePoint { ideal: i, parity: rep.parity })
        })
        .collect();
    points.sort_by(|a, b| (a.parity, &a.ideal).cmp(&(b.parity, &b.ideal)));
    let even_points = (0..points.len()).filter(|&k| points[k].parity == PrimeParity::Even).collect();
    let odd_points = (0..points.len()).filter(|&k| points[k].parity == PrimeParity::Odd).collect();
    Trispectrum { points, even_points, odd_points }
}

impl Trispectrum {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn all(&self) -> IndexSet {
        IndexSet::full(self.points.len())
    }

    /// `V(I)`: points containing `I`.
    pub fn vanishing(&self, i: &Triideal) -> IndexSet {
        (0..self.points.len()).filter(|&k| i.is_subset(&self.points[k].ideal)).collect()
    }

    /// `D(I)`: points not containing `I`.
    pub fn open_of(&self, i: &Triideal) -> IndexSet {
        self.vanishing(i).complement(self.points.len())
    }

    pub fn label(&self, k: usize) -> String {
        let p = &self.points[k];
        let tag = match p.parity {
            PrimeParity::Even => "E",
            PrimeParity::Odd => "O",
        };
        format!("{tag}{k}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClosedSet {
    pub points: IndexSet,
    pub generating_ideal: Option<Triideal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OpenSet {
    pub points: IndexSet,
    pub generating_ideal: Option<Triideal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BasicOpen {
    pub generator: Generator,
    pub points: IndexSet,
}

pub fn vanishing_set(r: &FiniteTriring, spec: &Trispectrum, i: &Triideal) -> Result<ClosedSet> {
    ensure_triideal(r, i)?;
    Ok(ClosedSet { points: spec.vanishing(i), generating_ideal: Some(i.clone()) })
}

pub fn open_of_ideal(r: &FiniteTriring, spec: &Trispectrum, i: &Triideal) -> Result<OpenSet> {
    ensure_triideal(r, i)?;
    Ok(OpenSet { points: spec.open_of(i), generating_ideal: Some(i.clone()) })
}

/// `D(x0) = D(R·x0)` and `D(x1) = D(R1♯x1)`.
pub fn basic_open(r: &FiniteTriring, spec: &Trispectrum, g: Generator) -> Result<BasicOpen> {
    let i = principal(r, g)?;
    Ok(BasicOpen { generator: g, points: spec.open_of(&i) })
}

pub fn basic_opens(r: &FiniteTriring, spec: &Trispectrum) -> Vec<BasicOpen> {
    r.generators().into_iter().map(|g| basic_open(r, spec, g).expect("generator in range")).collect()
}

/// Distinct closed sets `V(I)` over all triideals, each with its least
/// generating triideal, sorted by point set.
pub fn closed_sets(r: &FiniteTriring, spec: &Trispectrum) -> Vec<ClosedSet> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for i in enumerate_triideals(r) {
        let pts = spec.vanishing(&i);
        if seen.insert(pts.clone()) {
            out.push(ClosedSet { points: pts, generating_ideal: Some(i) });
        }
    }
    out.sort_by(|a, b| a.points.cmp(&b.points));
    out
}

pub fn open_sets(r: &FiniteTriring, spec: &Trispectrum) -> Vec<IndexSet> {
    let mut v: Vec<IndexSet> = closed_sets(r, spec).iter().map(|c| c.points.complement(spec.len())).collect();
    v.sort();
    v
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrreducibilityReport {
    pub topological: bool,
    pub algebraic: bool,
    pub irreducible: bool,
}

/// Irreducibility of `V(I)` two ways: no decomposition into two proper
/// closed subsets, and `√I` prime. The empty set is not irreducible.
pub fn is_irreducible(r: &FiniteTriring, spec: &Trispectrum, i: &Triideal) -> Result<IrreducibilityReport> {
    let f = spec.vanishing(i);
    let closed: Vec<IndexSet> = closed_sets(r, spec).into_iter().map(|c| c.points).collect();
    let proper: Vec<&IndexSet> = closed.iter().filter(|c| c.is_subset(&f) && **c != f).collect();
    let decomposable = proper.iter().any(|a| proper.iter().any(|b| a.union(b) == f));
    let topological = !f.is_empty() && !decomposable;
    let rad = radical(r, i)?;
    let algebraic = is_prime_by_definition(r, &rad).prime;
    Ok(IrreducibilityReport { topological, algebraic, irreducible: topological })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverTarget {
    Full,
    Odd,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Subcover {
    /// Indices into the given family.
    pub indices: Vec<usize>,
    /// One element per chosen member, from its even part summing to `1`
    /// (full target) or from its odd part summing to `1♯` (odd target).
    pub certificate: Option<Vec<usize>>,
}

/// A minimal-cardinality subfamily of `cover` whose opens still cover the
/// target, ties broken lexicographically.
pub fn finite_subcover(
    r: &FiniteTriring,
    spec: &Trispectrum,
    target: CoverTarget,
    cover: &[Triideal],
) -> Result<Subcover> {
    for i in cover {
        ensure_triideal(r, i)?;
    }
    let goal = match target {
        CoverTarget::Full => spec.all(),
        CoverTarget::Odd => spec.odd_points.clone(),
    };
    let opens: Vec<IndexSet> = cover.iter().map(|i| spec.open_of(i)).collect();
    let union = opens.iter().fold(IndexSet::empty(), |acc, o| acc.union(o));
    if let Some(point) = goal.iter().find(|&p| !union.contains(p)) {
        return Err(Error::NotACover { point });
    }
    for k in 0..=cover.len() {
        for combo in (0..cover.len()).combinations(k) {
            let u = combo.iter().fold(IndexSet::empty(), |acc, &c| acc.union(&opens[c]));
            if goal.is_subset(&u) {
                let members: Vec<&Triideal> = combo.iter().map(|&c| &cover[c]).collect();
                let certificate = certificate(r, target, &members);
                return Ok(Subcover { indices: combo, certificate });
            }
        }
    }
    unreachable!("the whole family covers the target")
}

/// Finds `x_k` in the chosen components with `Σ x_k = 1` (or `1♯`).
fn certificate(r: &FiniteTriring, target: CoverTarget, members: &[&Triideal]) -> Option<Vec<usize>> {
    let (ring, goal) = match target {
        CoverTarget::Full => (r.even(), r.even().one()),
        CoverTarget::Odd => (r.odd(), r.odd().one()),
    };
    let parts: Vec<&IndexSet> = members
        .iter()
        .map(|m| match target {
            CoverTarget::Full => &m.even,
            CoverTarget::Odd => &m.odd,
        })
        .collect();
    // Layered reachability with back-pointers.
    let n = ring.size();
    let mut layers: Vec<Vec<Option<(usize, usize)>>> = Vec::new();
    let mut reach = vec![false; n];
    reach[0] = true;
    for part in &parts {
        let mut next = vec![None; n];
        for s in (0..n).filter(|&s| reach[s]) {
            for x in part.iter() {
                let t = ring.add(s, x);
                if next[t].is_none() {
                    next[t] = Some((s, x));
                }
            }
        }
        reach = next.iter().map(Option::is_some).collect();
        layers.push(next);
    }
    if parts.is_empty() || !reach[goal] {
        return None;
    }
    let mut picks = vec![0; parts.len()];
    let mut cur = goal;
    for k in (0..parts.len()).rev() {
        let (prev, x) = layers[k][cur].expect("reachable");
        picks[k] = x;
        cur = prev;
    }
    Some(picks)
}

/// Edges `P → Q` whenever `P ⊊ Q`.
pub fn specialization_order(spec: &Trispectrum) -> Vec<(usize, usize)> {
    let n = spec.len();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| a != b && spec.points[a].ideal.is_subset(&spec.points[b].ideal))
        .collect()
}

pub fn specialization_dot(r: &FiniteTriring, spec: &Trispectrum) -> String {
    let mut out = format!("digraph \"{}\" {{\n", r.name().replace('"', "'"));
    for (k, p) in spec.points.iter().enumerate() {
        out.push_str(&format!("  {} [label=\"{} {}\"];\n", spec.label(k), spec.label(k), p.ideal));
    }
    for (a, b) in specialization_order(spec) {
        out.push_str(&format!("  {} -> {};\n", spec.label(a), spec.label(b)));
    }
    out.push_str("}\n");
    out
}

/// `Σ I_k` for a family, as used by the intersection identity.
pub fn sum_family(r: &FiniteTriring, family: &[&Triideal]) -> Result<Triideal> {
    sum_all(r, family.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec())
    }

    #[test]
    fn te63_spectrum_and_basic_opens() {
        let r = FiniteTriring::te(6, 3).unwrap();
        let spec = trispectrum(&r);
        assert_eq!(spec.len(), 3);
        assert_eq!(spec.points[0].ideal, Triideal::new(set(&[0, 2, 4]), IndexSet::full(3)));
        assert_eq!(spec.points[1].ideal, Triideal::new(set(&[0, 3]), IndexSet::full(3)));
        assert_eq!(spec.points[2].ideal, Triideal::new(set(&[0, 3]), set(&[0])));
        let d = |g| basic_open(&r, &spec, g).unwrap().points;
        assert_eq!(d(Generator::Even(2)), set(&[1, 2]));
        assert_eq!(d(Generator::Even(3)), set(&[0]));
        assert_eq!(d(Generator::Odd(1)), set(&[2]));
        assert_eq!(d(Generator::Even(5)), set(&[0, 1, 2]));
    }

    #[test]
    fn te63_minimal_subcover_picks_unit() {
        let r = FiniteTriring::te(6, 3).unwrap();
        let spec = trispectrum(&r);
        let cover: Vec<Triideal> = [2, 3, 5].iter().map(|&x| principal(&r, Generator::Even(x)).unwrap()).collect();
        let sub = finite_subcover(&r, &spec, CoverTarget::Full, &cover).unwrap();
        assert_eq!(sub.indices, vec![2]);
        let two: Vec<Triideal> = cover[..2].to_vec();
        let sub = finite_subcover(&r, &spec, CoverTarget::Full, &two).unwrap();
        assert_eq!(sub.indices, vec![0, 1]);
        let cert = sub.certificate.unwrap();
        assert_eq!((cert[0] + cert[1]) % 6, 1);
        assert!(matches!(
            finite_subcover(&r, &spec, CoverTarget::Full, &cover[..1]),
            Err(Error::NotACover { point: 0 })
        ));
    }

    #[test]
    fn specialization_edges() {
        let r = FiniteTriring::te(6, 3).unwrap();
        let spec = trispectrum(&r);
        assert_eq!(specialization_order(&spec), vec![(2, 1)]);
        assert!(specialization_dot(&r, &spec).contains("O2 -> E1"));
    }
}
