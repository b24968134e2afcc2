//! Table-driven finite commutative rings and index subsets of their carriers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::TableError;

/// A sorted, duplicate-free set of carrier indices.
///
/// Ordering is lexicographic on the sorted member list, which is the
/// canonical order used for every report this crate emits.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        IndexSet(members)
    }

    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// `{0, 1, ..., n - 1}`
    pub fn full(n: usize) -> Self {
        IndexSet((0..n).collect())
    }

    pub fn singleton(x: usize) -> Self {
        IndexSet(vec![x])
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        IndexSet(
            mask.iter()
                .enumerate()
                .filter_map(|(i, &m)| m.then_some(i))
                .collect(),
        )
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &x in &self.0 {
            m[x] = true;
        }
        m
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        IndexSet(self.0.iter().copied().filter(|&x| other.contains(x)).collect())
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        IndexSet::new(v)
    }

    /// Members of `0..n` not in `self`.
    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet((0..n).filter(|&x| !self.contains(x)).collect())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for IndexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        IndexSet::new(iter.into_iter().collect())
    }
}

/// A finite ring given by addition and multiplication tables over the
/// carrier `0..size`. Index 0 is the additive zero.
///
/// The same structure carries the odd part of a triring, where `mul` is the
/// local product and `one` the local identity.
///
/// Construction only checks that the tables are well formed; the ring laws
/// are checked by [`crate::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCommutativeRing {
    size: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    one: usize,
    neg: Vec<Option<usize>>,
}

fn flatten(name: &'static str, rows: Vec<Vec<usize>>, nrows: usize, ncols: usize, range: usize) -> Result<Vec<usize>, TableError> {
    if rows.len() != nrows {
        return Err(TableError::Shape { table: name, expected_rows: nrows, rows: rows.len() });
    }
    let mut out = Vec::with_capacity(nrows * ncols);
    for (r, row) in rows.into_iter().enumerate() {
        if row.len() != ncols {
            return Err(TableError::RowLength { table: name, row: r, expected: ncols, found: row.len() });
        }
        for (c, v) in row.into_iter().enumerate() {
            if v >= range {
                return Err(TableError::OutOfRange { table: name, row: r, col: c, value: v, bound: range });
            }
            out.push(v);
        }
    }
    Ok(out)
}

pub(crate) fn flatten_table(
    name: &'static str,
    rows: Vec<Vec<usize>>,
    nrows: usize,
    ncols: usize,
    range: usize,
) -> Result<Vec<usize>, TableError> {
    flatten(name, rows, nrows, ncols, range)
}

pub(crate) fn unflatten(flat: &[usize], ncols: usize) -> Vec<Vec<usize>> {
    if ncols == 0 {
        return Vec::new();
    }
    flat.chunks(ncols).map(|c| c.to_vec()).collect()
}

impl FiniteCommutativeRing {
    /// Builds a ring from square tables; `add_name`/`mul_name` label errors.
    pub fn from_named_tables(
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        one: usize,
        add_name: &'static str,
        mul_name: &'static str,
        one_name: &'static str,
    ) -> Result<Self, TableError> {
        let size = add.len();
        if size == 0 {
            return Err(TableError::Empty { table: add_name });
        }
        let add = flatten(add_name, add, size, size, size)?;
        let mul = flatten(mul_name, mul, size, size, size)?;
        if one >= size {
            return Err(TableError::ElementOutOfRange { what: one_name, value: one, bound: size });
        }
        Ok(Self::from_flat(size, add, mul, one))
    }

    pub fn from_tables(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>, one: usize) -> Result<Self, TableError> {
        Self::from_named_tables(add, mul, one, "add", "mul", "one")
    }

    pub(crate) fn from_flat(size: usize, add: Vec<usize>, mul: Vec<usize>, one: usize) -> Self {
        let neg = (0..size)
            .map(|x| (0..size).find(|&y| add[x * size + y] == 0))
            .collect();
        FiniteCommutativeRing { size, add, mul, one, neg }
    }

    /// `Z/n` with the usual residues as indices.
    pub fn zmod(n: usize) -> Self {
        assert!(n > 0, "Z/0 is not finite");
        let add = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let mul = (0..n * n).map(|i| (i / n) * (i % n) % n).collect();
        Self::from_flat(n, add, mul, 1 % n)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    /// Additive inverse. Panics if the addition table has no inverse for `a`,
    /// which cannot happen for a validated ring.
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a].expect("additive inverse exists in a validated ring")
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `a^k` with `a^0 = one`.
    pub fn pow(&self, a: usize, k: usize) -> usize {
        let mut acc = self.one;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn add_rows(&self) -> Vec<Vec<usize>> {
        unflatten(&self.add, self.size)
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        unflatten(&self.mul, self.size)
    }

    /// The additive subgroup generated by `gens`.
    pub fn span<I: IntoIterator<Item = usize>>(&self, gens: I) -> IndexSet {
        additive_closure(self.size, |a, b| self.add(a, b), gens)
    }

    /// The ideal generated by `gens`.
    pub fn ideal_generated<I: IntoIterator<Item = usize>>(&self, gens: I) -> IndexSet {
        let gens: Vec<usize> = gens.into_iter().collect();
        let products = gens
            .iter()
            .flat_map(|&g| (0..self.size).map(move |r| (r, g)))
            .map(|(r, g)| self.mul(r, g));
        self.span(products)
    }

    pub fn is_ideal(&self, set: &IndexSet) -> bool {
        set.contains(0)
            && set.iter().all(|a| set.iter().all(|b| set.contains(self.add(a, b))))
            && set.iter().all(|a| (0..self.size).all(|r| set.contains(self.mul(r, a))))
    }

    /// Every ideal, sorted. Each ideal is a finite sum of principal ideals,
    /// so closing `{0}` under "add one more generator" reaches all of them.
    pub fn ideals(&self) -> Vec<IndexSet> {
        let principal: Vec<IndexSet> = (0..self.size).map(|x| self.ideal_generated([x])).collect();
        close_under_sums(self, &principal)
    }

    pub fn is_prime_ideal(&self, set: &IndexSet) -> bool {
        if set.contains(self.one) {
            return false;
        }
        (0..self.size).all(|a| {
            set.contains(a)
                || (0..self.size).all(|b| set.contains(b) || !set.contains(self.mul(a, b)))
        })
    }

    pub fn prime_ideals(&self) -> Vec<IndexSet> {
        self.ideals().into_iter().filter(|i| self.is_prime_ideal(i)).collect()
    }

    /// Smallest `k >= 1` with `a^k = 0`, if any.
    pub fn nilpotency_index(&self, a: usize) -> Option<usize> {
        let mut acc = a;
        for k in 1..=self.size.max(1) {
            if acc == 0 {
                return Some(k);
            }
            acc = self.mul(acc, a);
        }
        None
    }

    pub fn nilradical(&self) -> IndexSet {
        (0..self.size).filter(|&a| self.nilpotency_index(a).is_some()).collect()
    }

    /// Elements some positive power of which lies in `ideal`.
    pub fn radical_of(&self, ideal: &IndexSet) -> IndexSet {
        (0..self.size)
            .filter(|&a| {
                let mut acc = a;
                (0..=self.size).any(|_| {
                    let hit = ideal.contains(acc);
                    acc = self.mul(acc, a);
                    hit
                })
            })
            .collect()
    }

    pub fn inverse(&self, a: usize) -> Option<usize> {
        (0..self.size).find(|&b| self.mul(a, b) == self.one)
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.inverse(a).is_some()
    }

    /// `{a^k : k >= 0}`.
    pub fn powers(&self, a: usize) -> IndexSet {
        let mut seen = vec![false; self.size];
        let mut acc = self.one;
        while !seen[acc] {
            seen[acc] = true;
            acc = self.mul(acc, a);
        }
        IndexSet::from_mask(&seen)
    }

    /// All `k` in `0..=bound` with `a^k = target`.
    pub fn exponents_reaching(&self, a: usize, target: usize, bound: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut acc = self.one;
        for k in 0..=bound {
            if acc == target {
                out.push(k);
            }
            acc = self.mul(acc, a);
        }
        out
    }
}

pub(crate) fn additive_closure<F, I>(size: usize, add: F, gens: I) -> IndexSet
where
    F: Fn(usize, usize) -> usize,
    I: IntoIterator<Item = usize>,
{
    let mut gen_mask = vec![false; size];
    for g in gens {
        gen_mask[g] = true;
    }
    let gens: Vec<usize> = (0..size).filter(|&g| gen_mask[g] && g != 0).collect();
    let mut member = vec![false; size];
    member[0] = true;
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        for &g in &gens {
            let y = add(x, g);
            if !member[y] {
                member[y] = true;
                stack.push(y);
            }
        }
    }
    IndexSet::from_mask(&member)
}

pub(crate) fn close_under_sums(ring: &FiniteCommutativeRing, principal: &[IndexSet]) -> Vec<IndexSet> {
    use std::collections::BTreeSet;
    let zero = IndexSet::singleton(0);
    let mut found: BTreeSet<IndexSet> = BTreeSet::new();
    found.insert(zero.clone());
    let mut work = vec![zero];
    while let Some(ideal) = work.pop() {
        for x in 0..ring.size() {
            if ideal.contains(x) {
                continue;
            }
            let sum = ring.span(ideal.iter().chain(principal[x].iter()));
            if found.insert(sum.clone()) {
                work.push(sum);
            }
        }
    }
    found.into_iter().collect()
}
