//! Inverse limits of section spaces over the basic opens inside an open.

use std::collections::HashMap;

use serde::Serialize;

use crate::ring::IndexSet;

use super::StructurePresheaf;

/// `lim O(D(f_α))` over `Λ_U`. Since every restriction splits into even
/// and odd maps, the limit is the product of its even tuples and its odd
/// tuples. Tuples list one section index per member of `lambda`, and are
/// sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InverseLimit {
    pub open: IndexSet,
    /// Generator positions, ascending.
    pub lambda: Vec<usize>,
    pub even: Vec<Vec<usize>>,
    pub odd: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Part {
    Even,
    Odd,
}

fn compatible_tuples(ps: &StructurePresheaf, lambda: &[usize], part: Part) -> Vec<Vec<usize>> {
    // Larger opens first, so that most values are forced by an earlier one.
    let mut order: Vec<usize> = (0..lambda.len()).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(ps.opens[lambda[k]].len()));
    let size = |g: usize| match part {
        Part::Even => ps.spaces[g].even_size(),
        Part::Odd => ps.spaces[g].odd_size(),
    };
    let apply = |f: usize, g: usize, x: usize| -> usize {
        let rho = &ps.rho(f, g).expect("comparable pair").map;
        match part {
            Part::Even => rho.even[x],
            Part::Odd => rho.odd[x],
        }
    };
    let mut out = Vec::new();
    let mut values = vec![usize::MAX; lambda.len()];
    fn descend(
        depth: usize,
        order: &[usize],
        lambda: &[usize],
        values: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        ps: &StructurePresheaf,
        size: &dyn Fn(usize) -> usize,
        apply: &dyn Fn(usize, usize, usize) -> usize,
    ) {
        if depth == order.len() {
            out.push(values.clone());
            return;
        }
        let k = order[depth];
        let g = lambda[k];
        let forced = order[..depth]
            .iter()
            .find(|&&j| ps.opens[g].is_subset(&ps.opens[lambda[j]]))
            .map(|&j| apply(lambda[j], g, values[j]));
        let candidates: Vec<usize> = match forced {
            Some(x) => vec![x],
            None => (0..size(g)).collect(),
        };
        for x in candidates {
            let consistent = order[..depth].iter().all(|&j| {
                let h = lambda[j];
                let down = !ps.opens[g].is_subset(&ps.opens[h]) || apply(h, g, values[j]) == x;
                let up = !ps.opens[h].is_subset(&ps.opens[g]) || apply(g, h, x) == values[j];
                down && up
            });
            if consistent {
                values[k] = x;
                descend(depth + 1, order, lambda, values, out, ps, size, apply);
            }
        }
        values[k] = usize::MAX;
    }
    descend(0, &order, lambda, &mut values, &mut out, ps, &size, &apply);
    out.sort();
    out
}

impl InverseLimit {
    pub fn new(ps: &StructurePresheaf, u: &IndexSet) -> Self {
        let lambda = ps.lambda(u);
        let even = compatible_tuples(ps, &lambda, Part::Even);
        let odd = compatible_tuples(ps, &lambda, Part::Odd);
        InverseLimit { open: u.clone(), lambda, even, odd }
    }

    pub fn even_size(&self) -> usize {
        self.even.len()
    }

    pub fn odd_size(&self) -> usize {
        self.odd.len()
    }

    pub fn size(&self) -> usize {
        self.even.len() * self.odd.len()
    }

    fn slot(&self, g: usize) -> Option<usize> {
        self.lambda.iter().position(|&h| h == g)
    }

    /// `p^U_α` as index maps on the even and odd tuples.
    pub fn projection(&self, g: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let k = self.slot(g)?;
        Some((self.even.iter().map(|t| t[k]).collect(), self.odd.iter().map(|t| t[k]).collect()))
    }

    /// The componentwise operations keep the tuples compatible and the
    /// identities lie in the limit. Returns the first failing operation.
    pub fn subtriring_violation(&self, ps: &StructurePresheaf) -> Option<String> {
        let ei: HashMap<&[usize], usize> = self.even.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
        let oi: HashMap<&[usize], usize> = self.odd.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
        let sp = |k: usize| &ps.spaces[self.lambda[k]].triring;
        let n = self.lambda.len();
        let one: Vec<usize> = (0..n).map(|k| sp(k).even().one()).collect();
        let local_one: Vec<usize> = (0..n).map(|k| sp(k).local_one()).collect();
        if !ei.contains_key(one.as_slice()) {
            return Some("one".into());
        }
        if !oi.contains_key(local_one.as_slice()) {
            return Some("local one".into());
        }
        let zip = |x: &[usize], y: &[usize], f: &dyn Fn(usize, usize, usize) -> usize| -> Vec<usize> {
            (0..n).map(|k| f(k, x[k], y[k])).collect()
        };
        for x in &self.even {
            for y in &self.even {
                if !ei.contains_key(zip(x, y, &|k, a, b| sp(k).even().add(a, b)).as_slice()) {
                    return Some("even sum".into());
                }
                if !ei.contains_key(zip(x, y, &|k, a, b| sp(k).even().mul(a, b)).as_slice()) {
                    return Some("even product".into());
                }
            }
            for a in &self.odd {
                if !oi.contains_key(zip(x, a, &|k, p, q| sp(k).left(p, q)).as_slice()) {
                    return Some("left action".into());
                }
                if !oi.contains_key(zip(a, x, &|k, q, p| sp(k).right(q, p)).as_slice()) {
                    return Some("right action".into());
                }
            }
        }
        for a in &self.odd {
            for b in &self.odd {
                if !oi.contains_key(zip(a, b, &|k, p, q| sp(k).odd().add(p, q)).as_slice()) {
                    return Some("odd sum".into());
                }
                if !oi.contains_key(zip(a, b, &|k, p, q| sp(k).sharp(p, q)).as_slice()) {
                    return Some("local product".into());
                }
            }
        }
        None
    }
}

/// `ρ_{U,V}` between inverse limits: forgetting the coordinates outside
/// `Λ_V`. `None` entries mark tuples whose image is not in `O(V)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitRestriction {
    pub even: Vec<Option<usize>>,
    pub odd: Vec<Option<usize>>,
}

impl LimitRestriction {
    pub fn new(u: &InverseLimit, v: &InverseLimit) -> Option<Self> {
        let keep: Vec<usize> = v.lambda.iter().map(|g| u.slot(*g)).collect::<Option<_>>()?;
        let restrict = |tuples: &[Vec<usize>], target: &[Vec<usize>]| -> Vec<Option<usize>> {
            let index: HashMap<&[usize], usize> = target.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
            tuples
                .iter()
                .map(|t| {
                    let img: Vec<usize> = keep.iter().map(|&k| t[k]).collect();
                    index.get(img.as_slice()).copied()
                })
                .collect()
        };
        Some(LimitRestriction { even: restrict(&u.even, &v.even), odd: restrict(&u.odd, &v.odd) })
    }

    pub fn is_total(&self) -> bool {
        self.even.iter().chain(&self.odd).all(Option::is_some)
    }

    pub fn is_identity(&self) -> bool {
        self.even.iter().enumerate().all(|(i, x)| *x == Some(i)) && self.odd.iter().enumerate().all(|(i, x)| *x == Some(i))
    }

    /// `other ∘ self`
    pub fn then(&self, other: &LimitRestriction) -> LimitRestriction {
        let go = |a: &[Option<usize>], b: &[Option<usize>]| a.iter().map(|x| x.and_then(|i| b[i])).collect();
        LimitRestriction { even: go(&self.even, &other.even), odd: go(&self.odd, &other.odd) }
    }
}
