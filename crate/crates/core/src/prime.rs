//! Primality of triideals by definition, by mixed products, and by
//! components.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{enumerate_triideals, mixed_product, Triideal};
use crate::ring::IndexSet;
use crate::triring::FiniteTriring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeParity {
    Even,
    Odd,
}

/// Which implication of the definition failed, and where.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum PrimeWitness {
    /// `P = R`
    Improper,
    /// Clause number 1..=4 (`x0y0`, `x0y1`, `x1y0`, `x1♯y1`) and the pair.
    Clause { clause: u8, id: &'static str, pair: (usize, usize) },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimalityReport {
    pub prime: bool,
    pub parity: PrimeParity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<PrimeWitness>,
}

pub fn parity_of(r: &FiniteTriring, p: &Triideal) -> PrimeParity {
    if p.contains_odd_part(r) {
        PrimeParity::Even
    } else {
        PrimeParity::Odd
    }
}

/// The four implications checked over all pairs in lexicographic order.
pub fn is_prime_by_definition(r: &FiniteTriring, p: &Triideal) -> PrimalityReport {
    let parity = parity_of(r, p);
    let fail = |w| PrimalityReport { prime: false, parity, witness: Some(w) };
    if p.is_full(r) {
        return fail(PrimeWitness::Improper);
    }
    let (n0, n1) = (r.even_size(), r.odd_size());
    let (p0, p1) = (&p.even, &p.odd);
    let clauses: [(u8, &'static str, usize, usize, &dyn Fn(usize, usize) -> bool); 4] = [
        (1, "x0y0", n0, n0, &|x, y| !p0.contains(r.even().mul(x, y)) || p0.contains(x) || p0.contains(y)),
        (2, "x0y1", n0, n1, &|x, y| !p1.contains(r.left(x, y)) || p0.contains(x) || p1.contains(y)),
        (3, "x1y0", n1, n0, &|x, y| !p1.contains(r.right(x, y)) || p1.contains(x) || p0.contains(y)),
        (4, "x1#y1", n1, n1, &|x, y| !p1.contains(r.sharp(x, y)) || p1.contains(x) || p1.contains(y)),
    ];
    for (clause, id, a, b, ok) in clauses {
        for x in 0..a {
            for y in 0..b {
                if !ok(x, y) {
                    return fail(PrimeWitness::Clause { clause, id, pair: (x, y) });
                }
            }
        }
    }
    PrimalityReport { prime: true, parity, witness: None }
}

/// A pair of triideals whose mixed product lies in `P` with neither factor
/// inside `P`.
pub fn product_witness(r: &FiniteTriring, p: &Triideal, all: &[Triideal]) -> Option<(usize, usize)> {
    for (i, a) in all.iter().enumerate() {
        if a.is_subset(p) {
            continue;
        }
        for (j, b) in all.iter().enumerate() {
            if b.is_subset(p) {
                continue;
            }
            let m = mixed_product(r, a, b).expect("enumerated triideals fit the ring");
            if m.ideal.is_subset(p) {
                return Some((i, j));
            }
        }
    }
    None
}

/// `P ≠ R` and `I ♯· J ⊆ P ⇒ I ⊆ P or J ⊆ P` over the given triideal list.
pub fn is_prime_by_products_in(r: &FiniteTriring, p: &Triideal, all: &[Triideal]) -> bool {
    !p.is_full(r) && product_witness(r, p, all).is_none()
}

pub fn is_prime_by_products(r: &FiniteTriring, p: &Triideal) -> bool {
    is_prime_by_products_in(r, p, &enumerate_triideals(r))
}

/// Faithfulness of the odd quotient `R1/P1` as a left and a right
/// `R0/P0`-module: `x0·R1 ⊆ P1 ⇒ x0 ∈ P0`, and likewise on the right.
pub fn odd_quotient_is_faithful(r: &FiniteTriring, p: &Triideal) -> bool {
    (0..r.even_size()).all(|x| {
        if p.even.contains(x) {
            return true;
        }
        let left_kills = (0..r.odd_size()).all(|a| p.odd.contains(r.left(x, a)));
        let right_kills = (0..r.odd_size()).all(|a| p.odd.contains(r.right(a, x)));
        !left_kills && !right_kills
    })
}

/// Even case: `P1 = R1` and `P0` prime. Odd case: `P0` prime, `P1`
/// `♯`-prime, and `R1/P1` faithful on both sides over `R0/P0`.
pub fn is_prime_by_components(r: &FiniteTriring, p: &Triideal) -> bool {
    if !r.even().is_prime_ideal(&p.even) {
        return false;
    }
    match parity_of(r, p) {
        PrimeParity::Even => true,
        PrimeParity::Odd => r.odd().is_prime_ideal(&p.odd) && odd_quotient_is_faithful(r, p),
    }
}

/// Given a `♯`-prime `P1`, the largest ideal `P0` of `R0` with
/// `R1·P0 ⊆ P1`. The sum of all such ideals is computed and asserted to
/// be one of them.
pub fn extend_odd_prime(r: &FiniteTriring, p1: &IndexSet) -> Result<Triideal> {
    if r.has_zero_odd_part() {
        return Err(Error::ZeroOddPart);
    }
    if !r.odd().is_ideal(p1) || !r.odd().is_prime_ideal(p1) {
        return Err(Error::NotSharpPrime(p1.clone()));
    }
    let omega: Vec<IndexSet> = r
        .even()
        .ideals()
        .into_iter()
        .filter(|i0| i0.iter().all(|x| (0..r.odd_size()).all(|a| p1.contains(r.right(a, x)))))
        .collect();
    let top = r.even().span(omega.iter().flat_map(|i| i.iter()));
    let in_omega = omega.contains(&top);
    if !in_omega || !omega.iter().all(|i| i.is_subset(&top)) {
        return Err(Error::NoMaximum(format!("sum of ideals killing R1 into {p1} is {top}")));
    }
    Ok(Triideal::new(top, p1.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec())
    }

    #[test]
    fn te44_zero_is_not_prime() {
        let r = FiniteTriring::te(4, 4).unwrap();
        let rep = is_prime_by_definition(&r, &Triideal::zero());
        assert_eq!(rep.witness, Some(PrimeWitness::Clause { clause: 1, id: "x0y0", pair: (2, 2) }));
        let full = Triideal::full(&r);
        assert_eq!(is_prime_by_definition(&r, &full).witness, Some(PrimeWitness::Improper));
    }

    #[test]
    fn te44_odd_prime_by_all_three() {
        let r = FiniteTriring::te(4, 4).unwrap();
        let p = Triideal::new(set(&[0, 2]), set(&[0, 2]));
        assert!(is_prime_by_definition(&r, &p).prime);
        assert!(is_prime_by_products(&r, &p));
        assert!(is_prime_by_components(&r, &p));
        assert!(!is_prime_by_products(&r, &Triideal::new(set(&[0]), set(&[0, 2]))));
    }

    #[test]
    fn extension_of_odd_primes() {
        let r = FiniteTriring::te(4, 4).unwrap();
        assert_eq!(extend_odd_prime(&r, &set(&[0, 2])).unwrap(), Triideal::new(set(&[0, 2]), set(&[0, 2])));
        let r = FiniteTriring::te(6, 3).unwrap();
        assert_eq!(extend_odd_prime(&r, &set(&[0])).unwrap().even, set(&[0, 3]));
        assert!(matches!(extend_odd_prime(&r, &IndexSet::full(3)), Err(Error::NotSharpPrime(_))));
    }
}
