//! Trinilpotent elements, the trinilradical and radicals of triideals.

use serde::Serialize;

use crate::error::Result;
use crate::ideal::{ensure_triideal, Triideal};
use crate::ring::IndexSet;
use crate::triring::{FiniteTriring, TriringElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NilWitness {
    pub element: TriringElement,
    pub even_exponent: usize,
    pub odd_exponent: usize,
}

/// Smallest `m, n ≥ 1` with `x0^m = 0` and `x1^♯n = 0`.
pub fn is_trinilpotent(r: &FiniteTriring, x: TriringElement) -> Option<NilWitness> {
    let m = r.even().nilpotency_index(x.even)?;
    let n = r.odd().nilpotency_index(x.odd)?;
    Some(NilWitness { element: x, even_exponent: m, odd_exponent: n })
}

pub fn trinilradical(r: &FiniteTriring) -> Triideal {
    Triideal::new(r.even().nilradical(), r.odd().nilradical())
}

/// `{x0 : x0^m ∈ I0} ⊕ {x1 : x1^♯n ∈ I1}` for some `m, n ≥ 1`.
pub fn radical(r: &FiniteTriring, i: &Triideal) -> Result<Triideal> {
    ensure_triideal(r, i)?;
    Ok(Triideal::new(r.even().radical_of(&i.even), r.odd().radical_of(&i.odd)))
}

/// Nilpotent elements of the ring `(R, +, ·)`, as flat indices. Computed
/// from full-ring powers, independently of the component rings.
pub fn ordinary_nilradical(r: &FiniteTriring) -> IndexSet {
    r.elements()
        .filter(|&x| {
            let mut acc = x;
            (0..=r.size()).any(|_| {
                let zero = acc == r.zero();
                acc = r.mul_unchecked(acc, x);
                zero
            })
        })
        .map(|x| r.index_of(x))
        .collect()
}

/// Flat indices of the elements of a triideal.
pub fn flat_members(r: &FiniteTriring, i: &Triideal) -> IndexSet {
    i.even
        .iter()
        .flat_map(|a| i.odd.iter().map(move |b| TriringElement::new(a, b)))
        .map(|x| r.index_of(x))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn te44_nil_witness() {
        let r = FiniteTriring::te(4, 4).unwrap();
        let w = is_trinilpotent(&r, TriringElement::new(2, 2)).unwrap();
        assert_eq!((w.even_exponent, w.odd_exponent), (2, 2));
        let w = is_trinilpotent(&r, r.zero()).unwrap();
        assert_eq!((w.even_exponent, w.odd_exponent), (1, 1));
        let r = FiniteTriring::te(6, 3).unwrap();
        assert!(is_trinilpotent(&r, TriringElement::new(2, 1)).is_none());
    }

    #[test]
    fn ordinary_nilradical_contains_odd_part() {
        let r = FiniteTriring::te(6, 3).unwrap();
        let nil = ordinary_nilradical(&r);
        assert_eq!(nil, IndexSet::new(vec![0, 1, 2]));
    }
}
