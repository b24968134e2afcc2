//! Quotients by triideals.

use crate::error::Result;
use crate::homomorphism::TriringHomomorphism;
use crate::ideal::{ensure_triideal, Triideal};
use crate::ring::{FiniteCommutativeRing, IndexSet};
use crate::triring::FiniteTriring;

/// Coset labels for `ring / sub`: each element's coset index, cosets
/// numbered by least representative.
fn cosets(ring: &FiniteCommutativeRing, sub: &IndexSet) -> (Vec<usize>, Vec<usize>) {
    let n = ring.size();
    let mut label = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if label[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for s in sub.iter() {
            label[ring.add(x, s)] = c;
        }
    }
    (label, reps)
}

/// `R/I` with the natural map `ν`.
pub fn quotient(r: &FiniteTriring, i: &Triideal) -> Result<(FiniteTriring, TriringHomomorphism)> {
    ensure_triideal(r, i)?;
    let (l0, reps0) = cosets(r.even(), &i.even);
    let (l1, reps1) = cosets(r.odd(), &i.odd);
    let table = |reps_a: &[usize], reps_b: &[usize], labels: &[usize], f: &dyn Fn(usize, usize) -> usize| {
        reps_a.iter().map(|&a| reps_b.iter().map(|&b| labels[f(a, b)]).collect()).collect::<Vec<Vec<usize>>>()
    };
    let (e, o) = (r.even(), r.odd());
    let even = FiniteCommutativeRing::from_tables(
        table(&reps0, &reps0, &l0, &|a, b| e.add(a, b)),
        table(&reps0, &reps0, &l0, &|a, b| e.mul(a, b)),
        l0[e.one()],
    )?;
    let odd = FiniteCommutativeRing::from_tables(
        table(&reps1, &reps1, &l1, &|a, b| o.add(a, b)),
        table(&reps1, &reps1, &l1, &|a, b| o.mul(a, b)),
        l1[o.one()],
    )?;
    let left = table(&reps0, &reps1, &l1, &|x, a| r.left(x, a));
    let right = table(&reps1, &reps0, &l1, &|a, x| r.right(a, x));
    let q = FiniteTriring::new(format!("{}/{}", r.name(), i), even, odd, left, right)?;
    Ok((q, TriringHomomorphism::new(l0, l1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homomorphism::{kernel, validate_homomorphism};
    use crate::validate::validate_triring;

    #[test]
    fn te44_mod_two() {
        let r = FiniteTriring::te(4, 4).unwrap();
        let i = Triideal::new(IndexSet::new(vec![0, 2]), IndexSet::new(vec![0, 2]));
        let (q, nu) = quotient(&r, &i).unwrap();
        assert_eq!((q.even_size(), q.odd_size()), (2, 2));
        assert!(validate_triring(&q).passed());
        assert!(validate_homomorphism(&r, &q, &nu).unwrap().passed());
        assert_eq!(kernel(&r, &q, &nu).unwrap(), i);
        let (one, _) = quotient(&r, &Triideal::full(&r)).unwrap();
        assert_eq!(one.size(), 1);
    }
}
