//! Finite trirings given by operation tables.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Parity, Result};
use crate::ring::{flatten_table, unflatten, FiniteCommutativeRing};

/// The odd part `(R1, +, ♯)` has the same shape as a commutative ring; its
/// `mul` is the local product and its `one` the local identity.
pub type OddPartRing = FiniteCommutativeRing;

/// A homogeneous-component pair `x = x0 + x1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TriringElement {
    pub even: usize,
    pub odd: usize,
}

impl TriringElement {
    pub fn new(even: usize, odd: usize) -> Self {
        TriringElement { even, odd }
    }
}

/// A parity-tagged homogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "parity", content = "element", rename_all = "lowercase")]
pub enum Generator {
    Even(usize),
    Odd(usize),
}

impl Generator {
    pub fn index(&self) -> usize {
        match *self {
            Generator::Even(x) | Generator::Odd(x) => x,
        }
    }

    pub fn is_even(&self) -> bool {
        matches!(self, Generator::Even(_))
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Even(x) => write!(f, "even:{x}"),
            Generator::Odd(x) => write!(f, "odd:{x}"),
        }
    }
}

/// Plain row-form tables. This is the editable and serializable view of a
/// triring; [`FiniteTriring::from_tables`] checks shapes and ranges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriringTables {
    pub name: String,
    pub even_add: Vec<Vec<usize>>,
    pub even_mul: Vec<Vec<usize>>,
    pub one: usize,
    pub odd_add: Vec<Vec<usize>>,
    pub odd_sharp: Vec<Vec<usize>>,
    pub local_one: usize,
    /// `left[x0][α] = x0·α`
    pub left: Vec<Vec<usize>>,
    /// `right[α][x0] = α·x0`
    pub right: Vec<Vec<usize>>,
}

/// `R = R0 ⊕ R1` with the trivial-extension product
/// `(x0, x1)(y0, y1) = (x0y0, x0·y1 + x1·y0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteTriring {
    name: String,
    even: FiniteCommutativeRing,
    odd: OddPartRing,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl FiniteTriring {
    pub fn new(
        name: impl Into<String>,
        even: FiniteCommutativeRing,
        odd: OddPartRing,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let (n0, n1) = (even.size(), odd.size());
        let left = flatten_table("left", left, n0, n1, n1)?;
        let right = flatten_table("right", right, n1, n0, n1)?;
        Ok(FiniteTriring { name: name.into(), even, odd, left, right })
    }

    pub fn from_tables(t: TriringTables) -> Result<Self> {
        let even = FiniteCommutativeRing::from_named_tables(t.even_add, t.even_mul, t.one, "even.add", "even.mul", "one")?;
        let odd = FiniteCommutativeRing::from_named_tables(
            t.odd_add,
            t.odd_sharp,
            t.local_one,
            "odd.add",
            "odd.sharp",
            "localOne",
        )?;
        Self::new(t.name, even, odd, t.left, t.right)
    }

    pub fn tables(&self) -> TriringTables {
        TriringTables {
            name: self.name.clone(),
            even_add: self.even.add_rows(),
            even_mul: self.even.mul_rows(),
            one: self.even.one(),
            odd_add: self.odd.add_rows(),
            odd_sharp: self.odd.mul_rows(),
            local_one: self.odd.one(),
            left: unflatten(&self.left, self.odd.size()),
            right: unflatten(&self.right, self.even.size()),
        }
    }

    /// `TE(n, m)`: even part `Z/n`, odd part `Z/m` with `♯` the product mod
    /// `m`, both actions by reduction mod `m`. Requires `m | n`.
    pub fn te(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 || n % m != 0 {
            return Err(Error::InvalidBuiltin(format!("TE({n},{m}) requires m dividing n")));
        }
        let even = FiniteCommutativeRing::zmod(n);
        let odd = FiniteCommutativeRing::zmod(m);
        let left = (0..n).map(|x| (0..m).map(|a| x * a % m).collect()).collect();
        let right = (0..m).map(|a| (0..n).map(|x| a * x % m).collect()).collect();
        Self::new(format!("TE({n},{m})"), even, odd, left, right)
    }

    /// Triquaternions with coefficients in `F_p`, `p ≡ 3 (mod 4)` prime.
    ///
    /// Even index `a + b·p` is `a + bi`; odd index `c + d·p` is `cj + dk`.
    pub fn tq_modp(p: usize) -> Result<Self> {
        let is_prime = p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if !is_prime || p % 4 != 3 {
            return Err(Error::InvalidBuiltin(format!("TQ-modp({p}) requires a prime p = 3 mod 4")));
        }
        let n = p * p;
        let split = |x: usize| (x % p, x / p);
        let join = |a: i64, b: i64| {
            let r = |v: i64| v.rem_euclid(p as i64) as usize;
            r(a) + r(b) * p
        };
        let table = |f: &dyn Fn(i64, i64, i64, i64) -> usize| -> Vec<Vec<usize>> {
            (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| {
                            let (a, b) = split(x);
                            let (c, d) = split(y);
                            f(a as i64, b as i64, c as i64, d as i64)
                        })
                        .collect()
                })
                .collect()
        };
        let add = table(&|a, b, c, d| join(a + c, b + d));
        let cmul = table(&|a, b, c, d| join(a * c - b * d, a * d + b * c));
        // (cj + dk)(a + bi) = (ac + bd)j + (ad - bc)k
        let right = table(&|c, d, a, b| join(a * c + b * d, a * d - b * c));
        let even = FiniteCommutativeRing::from_tables(add.clone(), cmul.clone(), 1)?;
        let odd = FiniteCommutativeRing::from_tables(add, cmul.clone(), 1)?;
        Self::new(format!("TQ-modp({p})"), even, odd, cmul, right)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn even(&self) -> &FiniteCommutativeRing {
        &self.even
    }

    pub fn odd(&self) -> &OddPartRing {
        &self.odd
    }

    pub fn even_size(&self) -> usize {
        self.even.size()
    }

    pub fn odd_size(&self) -> usize {
        self.odd.size()
    }

    /// Size of the whole carrier `R0 × R1`.
    pub fn size(&self) -> usize {
        self.even.size() * self.odd.size()
    }

    pub fn has_zero_odd_part(&self) -> bool {
        self.odd.size() == 1
    }

    pub fn one(&self) -> TriringElement {
        TriringElement::new(self.even.one(), 0)
    }

    pub fn local_one(&self) -> usize {
        self.odd.one()
    }

    pub fn zero(&self) -> TriringElement {
        TriringElement::new(0, 0)
    }

    /// Flat index `even · |R1| + odd`.
    pub fn index_of(&self, x: TriringElement) -> usize {
        x.even * self.odd.size() + x.odd
    }

    pub fn element(&self, index: usize) -> TriringElement {
        TriringElement::new(index / self.odd.size(), index % self.odd.size())
    }

    pub fn elements(&self) -> impl Iterator<Item = TriringElement> + '_ {
        (0..self.size()).map(|i| self.element(i))
    }

    pub fn check(&self, x: TriringElement) -> Result<()> {
        if x.even < self.even.size() && x.odd < self.odd.size() {
            Ok(())
        } else {
            Err(Error::ForeignElement {
                even: x.even,
                odd: x.odd,
                even_size: self.even.size(),
                odd_size: self.odd.size(),
            })
        }
    }

    /// `x0·α`
    pub fn left(&self, x0: usize, alpha: usize) -> usize {
        self.left[x0 * self.odd.size() + alpha]
    }

    /// `α·x0`
    pub fn right(&self, alpha: usize, x0: usize) -> usize {
        self.right[alpha * self.even.size() + x0]
    }

    pub fn sharp(&self, alpha: usize, beta: usize) -> usize {
        self.odd.mul(alpha, beta)
    }

    pub fn add_unchecked(&self, x: TriringElement, y: TriringElement) -> TriringElement {
        TriringElement::new(self.even.add(x.even, y.even), self.odd.add(x.odd, y.odd))
    }

    pub fn mul_unchecked(&self, x: TriringElement, y: TriringElement) -> TriringElement {
        let odd = self.odd.add(self.left(x.even, y.odd), self.right(x.odd, y.even));
        TriringElement::new(self.even.mul(x.even, y.even), odd)
    }

    pub fn add(&self, x: TriringElement, y: TriringElement) -> Result<TriringElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add_unchecked(x, y))
    }

    pub fn neg(&self, x: TriringElement) -> TriringElement {
        TriringElement::new(self.even.neg(x.even), self.odd.neg(x.odd))
    }

    /// Trivial-extension product.
    pub fn mul(&self, x: TriringElement, y: TriringElement) -> Result<TriringElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    /// `α ♯ β` for odd elements given as full elements; a nonzero even
    /// component is a parity error.
    pub fn sharp_elements(&self, x: TriringElement, y: TriringElement) -> Result<TriringElement> {
        self.check(x)?;
        self.check(y)?;
        for e in [x, y] {
            if e.even != 0 {
                return Err(Error::Parity { expected: Parity::Odd, found: Parity::Even });
            }
        }
        Ok(TriringElement::new(0, self.sharp(x.odd, y.odd)))
    }

    /// `α^♯n`, with `α^♯0 = 1♯`.
    pub fn local_power(&self, alpha: usize, n: usize) -> usize {
        self.odd.pow(alpha, n)
    }

    /// `x^k` in the full ring, `x^0 = 1`.
    pub fn power(&self, x: TriringElement, k: usize) -> TriringElement {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul_unchecked(acc, x);
        }
        acc
    }

    /// Product of a homogeneous element with a full element.
    pub fn generator_element(&self, g: Generator) -> TriringElement {
        match g {
            Generator::Even(x) => TriringElement::new(x, 0),
            Generator::Odd(x) => TriringElement::new(0, x),
        }
    }

    pub fn generators(&self) -> Vec<Generator> {
        (0..self.even.size())
            .map(Generator::Even)
            .chain((0..self.odd.size()).map(Generator::Odd))
            .collect()
    }
}
