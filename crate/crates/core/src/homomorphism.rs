//! Triring homomorphisms as pairs of index maps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{ensure_triideal, is_triideal, Triideal};
use crate::ring::IndexSet;
use crate::triring::FiniteTriring;
use crate::validate::{first_fail1, first_fail2, AxiomLayer, ValidationReport};

/// `φ = (φ0, φ1)`; source and target are passed alongside, since the maps
/// only make sense relative to a pair of carriers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TriringHomomorphism {
    pub even: Vec<usize>,
    pub odd: Vec<usize>,
}

impl TriringHomomorphism {
    pub fn new(even: Vec<usize>, odd: Vec<usize>) -> Self {
        TriringHomomorphism { even, odd }
    }

    pub fn identity(r: &FiniteTriring) -> Self {
        TriringHomomorphism::new((0..r.even_size()).collect(), (0..r.odd_size()).collect())
    }

    /// `self ∘ first`
    pub fn after(&self, first: &TriringHomomorphism) -> TriringHomomorphism {
        TriringHomomorphism::new(
            first.even.iter().map(|&x| self.even[x]).collect(),
            first.odd.iter().map(|&x| self.odd[x]).collect(),
        )
    }

    pub fn is_bijective(&self, target: &FiniteTriring) -> bool {
        let bij = |m: &[usize], n: usize| m.len() == n && IndexSet::new(m.to_vec()).len() == n;
        bij(&self.even, target.even_size()) && bij(&self.odd, target.odd_size())
    }

    pub fn is_surjective(&self, target: &FiniteTriring) -> bool {
        IndexSet::new(self.even.clone()).len() == target.even_size()
            && IndexSet::new(self.odd.clone()).len() == target.odd_size()
    }

    /// Inverse of a bijection.
    pub fn inverse(&self) -> TriringHomomorphism {
        let inv = |m: &[usize]| {
            let mut out = vec![0; m.len()];
            for (x, &y) in m.iter().enumerate() {
                out[y] = x;
            }
            out
        };
        TriringHomomorphism::new(inv(&self.even), inv(&self.odd))
    }
}

fn check_shape(src: &FiniteTriring, tgt: &FiniteTriring, phi: &TriringHomomorphism) -> Result<()> {
    if phi.even.len() != src.even_size() || phi.odd.len() != src.odd_size() {
        return Err(Error::CarrierMismatch(format!(
            "maps have sizes ({}, {}) but the source parts have sizes ({}, {})",
            phi.even.len(),
            phi.odd.len(),
            src.even_size(),
            src.odd_size()
        )));
    }
    if phi.even.iter().any(|&y| y >= tgt.even_size()) || phi.odd.iter().any(|&y| y >= tgt.odd_size()) {
        return Err(Error::CarrierMismatch("map values leave the target carrier".into()));
    }
    Ok(())
}

/// Checks each clause of the homomorphism definition on homogeneous
/// elements; together with additivity these give the clauses for all
/// elements. Parity preservation holds by construction of the split maps.
pub fn validate_homomorphism(
    src: &FiniteTriring,
    tgt: &FiniteTriring,
    phi: &TriringHomomorphism,
) -> Result<ValidationReport> {
    check_shape(src, tgt, phi)?;
    let (n0, n1) = (src.even_size(), src.odd_size());
    let (f0, f1) = (&phi.even, &phi.odd);
    let (se, so, te, to) = (src.even(), src.odd(), tgt.even(), tgt.odd());
    let layer = AxiomLayer::Homomorphism;
    let mut rep = ValidationReport::new(format!("{} -> {}", src.name(), tgt.name()));
    rep.record(layer, "hom.even.additive", first_fail2(n0, n0, |a, b| f0[se.add(a, b)] == te.add(f0[a], f0[b])));
    rep.record(layer, "hom.odd.additive", first_fail2(n1, n1, |a, b| f1[so.add(a, b)] == to.add(f1[a], f1[b])));
    rep.record(layer, "hom.even.multiplicative", first_fail2(n0, n0, |a, b| f0[se.mul(a, b)] == te.mul(f0[a], f0[b])));
    rep.record(layer, "hom.left", first_fail2(n0, n1, |x, a| f1[src.left(x, a)] == tgt.left(f0[x], f1[a])));
    rep.record(layer, "hom.right", first_fail2(n1, n0, |a, x| f1[src.right(a, x)] == tgt.right(f1[a], f0[x])));
    rep.record(layer, "hom.sharp", first_fail2(n1, n1, |a, b| f1[so.mul(a, b)] == to.mul(f1[a], f1[b])));
    rep.record(layer, "hom.unit", first_fail1(1, |_| f0[se.one()] == te.one()));
    rep.record(layer, "hom.local_unit", first_fail1(1, |_| f1[so.one()] == to.one()));
    Ok(rep)
}

pub fn kernel(src: &FiniteTriring, tgt: &FiniteTriring, phi: &TriringHomomorphism) -> Result<Triideal> {
    check_shape(src, tgt, phi)?;
    Ok(Triideal::new(
        (0..src.even_size()).filter(|&x| phi.even[x] == 0).collect(),
        (0..src.odd_size()).filter(|&x| phi.odd[x] == 0).collect(),
    ))
}

/// A graded subset `(A0, A1)` of a triring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subtriring {
    pub even: IndexSet,
    pub odd: IndexSet,
}

pub fn image(src: &FiniteTriring, tgt: &FiniteTriring, phi: &TriringHomomorphism) -> Result<Subtriring> {
    check_shape(src, tgt, phi)?;
    Ok(Subtriring { even: phi.even.iter().copied().collect(), odd: phi.odd.iter().copied().collect() })
}

/// `1 ∈ A`, `A` an additive subgroup closed under the ring product, and
/// `A1` a subring of `(R1, +, ♯)`.
pub fn is_subtriring(r: &FiniteTriring, s: &Subtriring) -> bool {
    let (e, o) = (r.even(), r.odd());
    let (a0, a1) = (&s.even, &s.odd);
    let closed0 = a0.iter().all(|x| {
        a0.iter().all(|y| a0.contains(e.add(x, y)) && a0.contains(e.mul(x, y))) && a0.contains(e.neg(x))
    });
    let closed1 = a1.iter().all(|x| {
        a1.iter().all(|y| a1.contains(o.add(x, y)) && a1.contains(o.mul(x, y))) && a1.contains(o.neg(x))
    });
    let mixed = a0.iter().all(|x| a1.iter().all(|a| a1.contains(r.left(x, a)) && a1.contains(r.right(a, x))));
    a0.contains(e.one()) && a1.contains(o.one()) && closed0 && closed1 && mixed
}

/// `Ψ(I) = φ(I)` for surjective `φ` and `I ⊇ ker φ`.
pub fn pushforward_triideal(
    src: &FiniteTriring,
    tgt: &FiniteTriring,
    phi: &TriringHomomorphism,
    i: &Triideal,
) -> Result<Triideal> {
    check_shape(src, tgt, phi)?;
    ensure_triideal(src, i)?;
    if !phi.is_surjective(tgt) {
        return Err(Error::NotSurjective(format!("{} -> {}", src.name(), tgt.name())));
    }
    if !kernel(src, tgt, phi)?.is_subset(i) {
        return Err(Error::KernelNotContained);
    }
    let out = Triideal::new(
        i.even.iter().map(|x| phi.even[x]).collect(),
        i.odd.iter().map(|x| phi.odd[x]).collect(),
    );
    debug_assert!(is_triideal(tgt, &out));
    Ok(out)
}

/// `Ψ⁻¹(J) = φ⁻¹(J)`.
pub fn pullback_triideal(
    src: &FiniteTriring,
    tgt: &FiniteTriring,
    phi: &TriringHomomorphism,
    j: &Triideal,
) -> Result<Triideal> {
    check_shape(src, tgt, phi)?;
    ensure_triideal(tgt, j)?;
    Ok(Triideal::new(
        (0..src.even_size()).filter(|&x| j.even.contains(phi.even[x])).collect(),
        (0..src.odd_size()).filter(|&x| j.odd.contains(phi.odd[x])).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swapping_units_of_z4_is_not_multiplicative() {
        let r = FiniteTriring::te(4, 4).unwrap();
        let phi = TriringHomomorphism::new(vec![0, 3, 2, 1], vec![0, 1, 2, 3]);
        let rep = validate_homomorphism(&r, &r, &phi).unwrap();
        assert!(!rep.passed());
        assert!(validate_homomorphism(&r, &r, &TriringHomomorphism::identity(&r)).unwrap().passed());
        assert_eq!(kernel(&r, &r, &TriringHomomorphism::identity(&r)).unwrap(), Triideal::zero());
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let r = FiniteTriring::te(4, 4).unwrap();
        let phi = TriringHomomorphism::new(vec![0, 1], vec![0, 1, 2, 3]);
        assert!(matches!(validate_homomorphism(&r, &r, &phi), Err(Error::CarrierMismatch(_))));
    }
}
