//! Section spaces on basic opens.

use serde::Serialize;

use crate::error::Result;
use crate::fraction::FractionRing;
use crate::localization::{localize_at_even, localize_at_odd};
use crate::ring::{FiniteCommutativeRing, IndexSet};
use crate::spectrum::Trispectrum;
use crate::triring::{FiniteTriring, Generator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SectionCase {
    /// Generator in the trinilradical.
    ZeroSpace,
    /// Even generator whose basic open misses every odd point.
    EvenNoOdd,
    /// Even generator whose basic open meets the odd points.
    EvenWithOdd,
    /// Odd generator outside the trinilradical.
    OddCase,
}

/// What a slot of a section space holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ComponentRole {
    /// `(R0)_f0`, with zero odd part.
    EvenFractions,
    /// `R0` itself, with zero odd part.
    Base,
    /// `R♯_f0`, localization at an even element.
    AtEven,
    /// `R♯_(1♯f0)`, localization at the odd element `1♯·f0`.
    AtLocalOne,
    /// `R♯_f1`, localization at an odd element.
    AtOdd,
}

/// One factor of a section space, with the fraction data needed to
/// evaluate restriction formulas on representatives.
#[derive(Clone, Debug)]
pub struct Component {
    pub role: ComponentRole,
    pub even: FractionRing,
    /// `None` for the zero odd part.
    pub odd: Option<FractionRing>,
    pub triring: FiniteTriring,
}

/// Mixed-radix coordinates; the first slot is most significant, so index
/// order agrees with lexicographic order on slot tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radix {
    sizes: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl Radix {
    pub fn new(sizes: Vec<usize>) -> Self {
        let mut strides = vec![1; sizes.len()];
        for k in (0..sizes.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * sizes[k + 1];
        }
        let total = sizes.iter().product();
        Radix { sizes, strides, total }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn split(&self, index: usize) -> Vec<usize> {
        self.strides.iter().zip(&self.sizes).map(|(s, n)| index / s % n).collect()
    }

    pub fn join(&self, slots: &[usize]) -> usize {
        slots.iter().zip(&self.strides).map(|(x, s)| x * s).sum()
    }
}

/// `O(D(f))`: the product of its components, with componentwise
/// operations.
#[derive(Clone, Debug)]
pub struct SectionSpace {
    pub generator: Generator,
    pub case: SectionCase,
    pub components: Vec<Component>,
    pub triring: FiniteTriring,
    pub even_radix: Radix,
    pub odd_radix: Radix,
}

impl SectionSpace {
    pub fn even_size(&self) -> usize {
        self.triring.even_size()
    }

    pub fn odd_size(&self) -> usize {
        self.triring.odd_size()
    }

    pub fn size(&self) -> usize {
        self.triring.size()
    }

    /// Component sizes `(even, odd)` in slot order.
    pub fn component_sizes(&self) -> Vec<(usize, usize)> {
        self.components.iter().map(|c| (c.triring.even_size(), c.triring.odd_size())).collect()
    }
}

fn zero_odd(name: String, even: FiniteCommutativeRing) -> Result<FiniteTriring> {
    let n0 = even.size();
    FiniteTriring::new(name, even, FiniteCommutativeRing::zmod(1), vec![vec![0]; n0], vec![vec![0; n0]])
}

/// Product of trirings; the empty product is the one-element triring.
pub fn product_triring(name: &str, factors: &[&FiniteTriring]) -> Result<(FiniteTriring, Radix, Radix)> {
    let er = Radix::new(factors.iter().map(|t| t.even_size()).collect());
    let or = Radix::new(factors.iter().map(|t| t.odd_size()).collect());
    let (n0, n1) = (er.total(), or.total());
    let es: Vec<Vec<usize>> = (0..n0).map(|x| er.split(x)).collect();
    let os: Vec<Vec<usize>> = (0..n1).map(|x| or.split(x)).collect();
    let table = |a: &[Vec<usize>], b: &[Vec<usize>], out: &Radix, f: &dyn Fn(usize, usize, usize) -> usize| {
        a.iter()
            .map(|x| {
                b.iter()
                    .map(|y| {
                        let slots: Vec<usize> = (0..factors.len()).map(|k| f(k, x[k], y[k])).collect();
                        out.join(&slots)
                    })
                    .collect()
            })
            .collect::<Vec<Vec<usize>>>()
    };
    let even = FiniteCommutativeRing::from_tables(
        table(&es, &es, &er, &|k, x, y| factors[k].even().add(x, y)),
        table(&es, &es, &er, &|k, x, y| factors[k].even().mul(x, y)),
        er.join(&factors.iter().map(|t| t.even().one()).collect::<Vec<_>>()),
    )?;
    let odd = FiniteCommutativeRing::from_tables(
        table(&os, &os, &or, &|k, x, y| factors[k].odd().add(x, y)),
        table(&os, &os, &or, &|k, x, y| factors[k].odd().mul(x, y)),
        or.join(&factors.iter().map(|t| t.local_one()).collect::<Vec<_>>()),
    )?;
    let left = table(&es, &os, &or, &|k, x, a| factors[k].left(x, a));
    let right = table(&os, &es, &or, &|k, a, x| factors[k].right(a, x));
    Ok((FiniteTriring::new(name, even, odd, left, right)?, er, or))
}

/// Whether `D(f0)` meets the odd points.
pub fn meets_odd_points(spec: &Trispectrum, f0: usize) -> bool {
    spec.odd_points.iter().any(|k| !spec.points[k].ideal.even.contains(f0))
}

/// Builds `O(D(g))`. `nil` is the trinilradical, which decides the zero
/// case.
pub fn section_space(
    r: &FiniteTriring,
    spec: &Trispectrum,
    nil: &crate::Triideal,
    g: Generator,
) -> Result<SectionSpace> {
    r.check(r.generator_element(g))?;
    let one0 = IndexSet::singleton(r.even().one());
    let base = |r: &FiniteTriring| -> Result<Component> {
        let even = FractionRing::new(r.even(), &one0)?;
        let triring = zero_odd(format!("{}_0", r.name()), even.ring.clone())?;
        Ok(Component { role: ComponentRole::Base, even, odd: None, triring })
    };
    let localized = |role, loc: crate::localization::LocalizedTriring| Component {
        role,
        even: loc.even,
        odd: Some(loc.odd),
        triring: loc.triring,
    };
    let (case, components) = match g {
        Generator::Even(f0) if nil.even.contains(f0) => (SectionCase::ZeroSpace, vec![]),
        Generator::Odd(f1) if nil.odd.contains(f1) => (SectionCase::ZeroSpace, vec![]),
        Generator::Even(f0) if meets_odd_points(spec, f0) => {
            let a = localize_at_even(r, spec, f0)?;
            let b = localize_at_odd(r, r.right(r.local_one(), f0))?;
            (
                SectionCase::EvenWithOdd,
                vec![localized(ComponentRole::AtEven, a), localized(ComponentRole::AtLocalOne, b)],
            )
        }
        Generator::Even(f0) => {
            let even = FractionRing::new(r.even(), &r.even().powers(f0))?;
            let triring = zero_odd(format!("{}_0,{f0}", r.name()), even.ring.clone())?;
            let frac = Component { role: ComponentRole::EvenFractions, even, odd: None, triring };
            (SectionCase::EvenNoOdd, vec![frac, base(r)?])
        }
        Generator::Odd(f1) => (SectionCase::OddCase, vec![localized(ComponentRole::AtOdd, localize_at_odd(r, f1)?)]),
    };
    let factors: Vec<&FiniteTriring> = components.iter().map(|c| &c.triring).collect();
    let (triring, even_radix, odd_radix) = product_triring(&format!("O(D({g}))"), &factors)?;
    Ok(SectionSpace { generator: g, case, components, triring, even_radix, odd_radix })
}
