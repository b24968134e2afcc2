//! Ordinary localization `S⁻¹A` of a finite commutative ring, by brute
//! force over the pairs `A × S`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{FiniteCommutativeRing, IndexSet};

/// A fraction `a/s` as `(numerator, denominator)` element indices.
pub type Fraction = (usize, usize);

/// Square boolean relation stored as bit rows.
#[derive(Clone, Debug)]
pub(crate) struct BitRelation {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitRelation {
    pub(crate) fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitRelation { n, words, bits: vec![0; n * words] }
    }

    pub(crate) fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub(crate) fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// First `(i, j, k)` with `i~j`, `j~k` and not `i~k`.
    pub(crate) fn transitivity_witness(&self) -> Option<(usize, usize, usize)> {
        for i in 0..self.n {
            for j in (0..self.n).filter(|&j| self.get(i, j)) {
                let (ri, rj) = (self.row(i), self.row(j));
                if rj.iter().zip(ri).any(|(b, a)| b & !a != 0) {
                    let k = (0..self.n).find(|&k| self.get(j, k) && !self.get(i, k)).expect("bit differs");
                    return Some((i, j, k));
                }
            }
        }
        None
    }

    pub(crate) fn reflexivity_witness(&self) -> Option<usize> {
        (0..self.n).find(|&i| !self.get(i, i))
    }

    pub(crate) fn symmetry_witness(&self) -> Option<(usize, usize)> {
        (0..self.n).flat_map(|i| (0..self.n).map(move |j| (i, j))).find(|&(i, j)| self.get(i, j) && !self.get(j, i))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceCheck {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
}

impl EquivalenceCheck {
    pub fn holds(&self) -> bool {
        self.reflexive && self.symmetric && self.transitive
    }
}

/// Classes of `A × S` under `(a,s) ~ (b,t) ⇔ u(at − bs) = 0` for some
/// `u ∈ S`. Classes are numbered by least representative `(a, s)`, so the
/// zero class is 0.
#[derive(Clone, Debug)]
pub struct FractionRing {
    pub ring: FiniteCommutativeRing,
    pub denominators: IndexSet,
    pub equivalence: EquivalenceCheck,
    /// Class of pair number `a·|S| + position(s)`.
    class_of_pair: Vec<usize>,
    members: Vec<Vec<Fraction>>,
    position: Vec<Option<usize>>,
}

impl FractionRing {
    /// `s` must contain `1` and be closed under products.
    pub fn new(base: &FiniteCommutativeRing, s: &IndexSet) -> Result<Self> {
        let n = base.size();
        let ns = s.len();
        let dens: Vec<usize> = s.iter().collect();
        let mut position = vec![None; n];
        for (k, &d) in dens.iter().enumerate() {
            position[d] = Some(k);
        }
        let pairs: Vec<Fraction> = (0..n).flat_map(|a| dens.iter().map(move |&d| (a, d))).collect();
        let related = |(a, s1): Fraction, (b, t): Fraction| {
            let diff = base.sub(base.mul(a, t), base.mul(b, s1));
            dens.iter().any(|&u| base.mul(u, diff) == 0)
        };
        let mut rel = BitRelation::new(pairs.len());
        for (i, &p) in pairs.iter().enumerate() {
            for (j, &q) in pairs.iter().enumerate() {
                if related(p, q) {
                    rel.set(i, j);
                }
            }
        }
        let equivalence = EquivalenceCheck {
            reflexive: rel.reflexivity_witness().is_none(),
            symmetric: rel.symmetry_witness().is_none(),
            transitive: rel.transitivity_witness().is_none(),
        };
        if !equivalence.holds() {
            let w = rel
                .transitivity_witness()
                .map(|(i, j, k)| vec![i, j, k])
                .or_else(|| rel.symmetry_witness().map(|(i, j)| vec![i, j]))
                .or_else(|| rel.reflexivity_witness().map(|i| vec![i]))
                .unwrap_or_default();
            return Err(Error::IllDefined { operation: "fraction equivalence".into(), witness: w });
        }
        let mut class_of_pair = vec![usize::MAX; pairs.len()];
        let mut members: Vec<Vec<Fraction>> = Vec::new();
        for i in 0..pairs.len() {
            if class_of_pair[i] != usize::MAX {
                continue;
            }
            let c = members.len();
            let mut m = Vec::new();
            for j in (0..pairs.len()).filter(|&j| rel.get(i, j)) {
                class_of_pair[j] = c;
                m.push(pairs[j]);
            }
            members.push(m);
        }
        let class = |(a, d): Fraction| class_of_pair[a * ns + position[d].expect("denominator in S")];
        let add = induced(&members, &members, "fraction addition", |(a, s1), (b, t)| {
            class((base.add(base.mul(a, t), base.mul(s1, b)), base.mul(s1, t)))
        })?;
        let mul = induced(&members, &members, "fraction product", |(a, s1), (b, t)| {
            class((base.mul(a, b), base.mul(s1, t)))
        })?;
        let one = class((base.one(), base.one()));
        let ring = FiniteCommutativeRing::from_tables(add, mul, one)?;
        Ok(FractionRing { ring, denominators: s.clone(), equivalence, class_of_pair, members, position })
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Class of `a/s`; `None` if `s ∉ S`.
    pub fn class(&self, a: usize, s: usize) -> Option<usize> {
        let pos = (*self.position.get(s)?)?;
        Some(self.class_of_pair[a * self.denominators.len() + pos])
    }

    /// Every representative of a class, in lexicographic order.
    pub fn members(&self, class: usize) -> &[Fraction] {
        &self.members[class]
    }

    /// Least representative.
    pub fn representative(&self, class: usize) -> Fraction {
        self.members[class][0]
    }

    /// `a ↦ a/1`
    pub fn embed(&self, a: usize, one: usize) -> usize {
        self.class(a, one).expect("1 is a denominator")
    }
}

/// Table of a binary operation on classes, checked on every pair of
/// representatives.
pub(crate) fn induced(
    left: &[Vec<Fraction>],
    right: &[Vec<Fraction>],
    operation: &str,
    f: impl Fn(Fraction, Fraction) -> usize,
) -> Result<Vec<Vec<usize>>> {
    let mut table = Vec::with_capacity(left.len());
    for (ci, ri) in left.iter().enumerate() {
        let mut row = Vec::with_capacity(right.len());
        for (cj, rj) in right.iter().enumerate() {
            let value = f(ri[0], rj[0]);
            for &p in ri {
                for &q in rj {
                    if f(p, q) != value {
                        return Err(Error::IllDefined {
                            operation: operation.into(),
                            witness: vec![ci, cj, p.0, p.1, q.0, q.1],
                        });
                    }
                }
            }
            row.push(value);
        }
        table.push(row);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z6_at_powers_of_two_is_z3() {
        let z6 = FiniteCommutativeRing::zmod(6);
        let f = FractionRing::new(&z6, &z6.powers(2)).unwrap();
        assert_eq!(f.size(), 3);
        assert_eq!(f.class(3, 1), Some(0));
        assert_eq!(f.representative(0), (0, 1));
    }

    #[test]
    fn units_change_nothing() {
        let z4 = FiniteCommutativeRing::zmod(4);
        let f = FractionRing::new(&z4, &IndexSet::new(vec![1, 3])).unwrap();
        assert_eq!(f.size(), 4);
        assert!(f.equivalence.holds());
    }

    #[test]
    fn nilpotent_denominator_kills_everything() {
        let z4 = FiniteCommutativeRing::zmod(4);
        let f = FractionRing::new(&z4, &IndexSet::new(vec![0, 1, 2])).unwrap();
        assert_eq!(f.size(), 1);
    }
}
