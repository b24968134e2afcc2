//! Exact triquaternions over the rationals. Only element arithmetic and
//! axiom checking are supported here; the carrier is infinite.

use std::fmt;

use num::{BigInt, BigRational, Integer, One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Parity, Result};
use crate::triring::TriringElement;
use crate::validate::{first_fail1, first_fail2, first_fail3, skip_from, AxiomLayer, ValidationReport};

/// `a + bi + cj + dk`, with `a + bi` even and `cj + dk` odd.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactTriquaternion {
    pub a: BigRational,
    pub b: BigRational,
    pub c: BigRational,
    pub d: BigRational,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl ExactTriquaternion {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        ExactTriquaternion { a, b, c, d }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(q(a), q(b), q(c), q(d))
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0, 0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }

    pub fn i() -> Self {
        Self::from_ints(0, 1, 0, 0)
    }

    pub fn j() -> Self {
        Self::from_ints(0, 0, 1, 0)
    }

    pub fn k() -> Self {
        Self::from_ints(0, 0, 0, 1)
    }

    pub fn is_even(&self) -> bool {
        self.c.is_zero() && self.d.is_zero()
    }

    pub fn is_odd(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.a, -&self.b, -&self.c, -&self.d)
    }

    /// Trivial-extension product; odd times odd vanishes.
    pub fn mul(&self, o: &Self) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&o.a, &o.b, &o.c, &o.d);
        // (a + bi)(gj + hk) + (cj + dk)(e + fi)
        let j = (a * g - b * h) + (e * c + f * d);
        let k = (a * h + b * g) + (e * d - f * c);
        Self::new(a * e - b * f, a * f + b * e, j, k)
    }

    /// Local product of two odd elements.
    pub fn sharp(&self, o: &Self) -> Result<Self> {
        for x in [self, o] {
            if !x.is_odd() {
                return Err(Error::Parity { expected: Parity::Odd, found: Parity::Even });
            }
        }
        let (c, d, g, h) = (&self.c, &self.d, &o.c, &o.d);
        Ok(Self::new(q(0), q(0), c * g - d * h, c * h + d * g))
    }

    /// Coefficients reduced into `F_p`, as an element of the mod-`p`
    /// triquaternion triring. `None` if a denominator is divisible by `p`.
    pub fn reduce_mod(&self, p: usize) -> Option<TriringElement> {
        let pb = BigInt::from(p);
        let red = |x: &BigRational| -> Option<usize> {
            let den = x.denom().mod_floor(&pb);
            if den.is_zero() {
                return None;
            }
            let inv = den.modpow(&(&pb - BigInt::from(2)), &pb);
            (x.numer().mod_floor(&pb) * inv).mod_floor(&pb).to_usize()
        };
        Some(TriringElement::new(red(&self.a)? + red(&self.b)? * p, red(&self.c)? + red(&self.d)? * p))
    }
}

impl fmt::Display for ExactTriquaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.a, self.b, self.c, self.d)
    }
}

/// Coordinates in a basis.
pub type Coords = Vec<BigRational>;

/// A triring over `Q` given by structure constants on bases of the even
/// and odd parts. Witnesses index the concatenated basis, even first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalTriring {
    pub name: String,
    pub even_dim: usize,
    pub odd_dim: usize,
    /// `even_mul[p][q]` in even coordinates.
    pub even_mul: Vec<Vec<Coords>>,
    /// `sharp[p][q]` in odd coordinates.
    pub sharp: Vec<Vec<Coords>>,
    /// `left[p][q] = e_p · o_q` in odd coordinates.
    pub left: Vec<Vec<Coords>>,
    /// `right[p][q] = o_p · e_q` in odd coordinates.
    pub right: Vec<Vec<Coords>>,
    pub one: Coords,
    pub local_one: Coords,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalSummary {
    pub name: String,
    #[serde(rename = "evenDim")]
    pub even_dim: usize,
    #[serde(rename = "oddDim")]
    pub odd_dim: usize,
}

fn coords(v: &[i64]) -> Coords {
    v.iter().map(|&x| q(x)).collect()
}

impl RationalTriring {
    /// Basis `1, i | j, k`.
    pub fn triquaternions() -> Self {
        let basis_even = [ExactTriquaternion::one(), ExactTriquaternion::i()];
        let basis_odd = [ExactTriquaternion::j(), ExactTriquaternion::k()];
        let ev = |x: &ExactTriquaternion| vec![x.a.clone(), x.b.clone()];
        let od = |x: &ExactTriquaternion| vec![x.c.clone(), x.d.clone()];
        let table = |xs: &[ExactTriquaternion], ys: &[ExactTriquaternion], f: &dyn Fn(&ExactTriquaternion, &ExactTriquaternion) -> Coords| {
            xs.iter().map(|x| ys.iter().map(|y| f(x, y)).collect()).collect()
        };
        RationalTriring {
            name: "TQ-rational".into(),
            even_dim: 2,
            odd_dim: 2,
            even_mul: table(&basis_even, &basis_even, &|x, y| ev(&x.mul(y))),
            sharp: table(&basis_odd, &basis_odd, &|x, y| od(&x.sharp(y).expect("odd basis"))),
            left: table(&basis_even, &basis_odd, &|x, y| od(&x.mul(y))),
            right: table(&basis_odd, &basis_even, &|x, y| od(&x.mul(y))),
            one: coords(&[1, 0]),
            local_one: coords(&[1, 0]),
        }
    }

    pub fn summary(&self) -> RationalSummary {
        RationalSummary { name: self.name.clone(), even_dim: self.even_dim, odd_dim: self.odd_dim }
    }

    fn bilinear(t: &[Vec<Coords>], x: &Coords, y: &Coords, out_dim: usize) -> Coords {
        let mut out = vec![q(0); out_dim];
        for (p, xp) in x.iter().enumerate() {
            if xp.is_zero() {
                continue;
            }
            for (r, yr) in y.iter().enumerate() {
                if yr.is_zero() {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(&t[p][r]) {
                    *o += xp * yr * c;
                }
            }
        }
        out
    }

    pub fn even_product(&self, x: &Coords, y: &Coords) -> Coords {
        Self::bilinear(&self.even_mul, x, y, self.even_dim)
    }

    pub fn sharp_product(&self, x: &Coords, y: &Coords) -> Coords {
        Self::bilinear(&self.sharp, x, y, self.odd_dim)
    }

    pub fn left_action(&self, x: &Coords, a: &Coords) -> Coords {
        Self::bilinear(&self.left, x, a, self.odd_dim)
    }

    pub fn right_action(&self, a: &Coords, x: &Coords) -> Coords {
        Self::bilinear(&self.right, a, x, self.odd_dim)
    }

    fn unit(dim: usize, p: usize) -> Coords {
        (0..dim).map(|k| if k == p { q(1) } else { q(0) }).collect()
    }

    /// Deterministic sample of even elements for the set-equality clause:
    /// all coordinate vectors with entries in `{-2, -1, 0, 1, 2, 1/2}`.
    fn even_sample(&self) -> Vec<Coords> {
        let vals: Vec<BigRational> = vec![q(-2), q(-1), q(0), q(1), q(2), BigRational::new(BigInt::one(), BigInt::from(2))];
        let mut out: Vec<Coords> = vec![Vec::new()];
        for _ in 0..self.even_dim {
            out = out.into_iter().flat_map(|v| vals.iter().map(move |c| [v.clone(), vec![c.clone()]].concat())).collect();
        }
        out
    }

    /// Checks the laws on basis elements, which suffices for bilinear
    /// structure constants. Group laws and distributivity hold for any
    /// structure constants and are recorded as passing. The set equality
    /// `R1·x0 = x0·R1` is checked as equality of the images of the two
    /// linear maps on a deterministic sample of `x0`.
    pub fn validate(&self) -> ValidationReport {
        let mut rep = ValidationReport::new(&self.name);
        let (n0, n1) = (self.even_dim, self.odd_dim);
        let e = |p| Self::unit(n0, p);
        let o = |p| Self::unit(n1, p);
        for id in ["even.add.associative", "even.add.commutative", "even.add.identity", "even.add.inverse"]
            .into_iter()
            .chain(["odd.add.associative", "odd.add.commutative", "odd.add.identity", "odd.add.inverse"])
        {
            rep.record(AxiomLayer::Group, id, None);
        }
        let layer = AxiomLayer::Ring;
        let em = |x: &Coords, y: &Coords| self.even_product(x, y);
        let sm = |x: &Coords, y: &Coords| self.sharp_product(x, y);
        rep.record(layer, "even.mul.associative", first_fail3(n0, n0, n0, |a, b, c| {
            em(&em(&e(a), &e(b)), &e(c)) == em(&e(a), &em(&e(b), &e(c)))
        }));
        rep.record(layer, "even.mul.commutative", first_fail2(n0, n0, |a, b| em(&e(a), &e(b)) == em(&e(b), &e(a))));
        rep.record(layer, "even.mul.distributive", None);
        rep.record(layer, "even.mul.identity", first_fail1(n0, |a| em(&self.one, &e(a)) == e(a) && em(&e(a), &self.one) == e(a)));
        let sh = |v: Vec<usize>| v.into_iter().map(|x| x + n0).collect::<Vec<_>>();
        rep.record(layer, "odd.sharp.associative", first_fail3(n1, n1, n1, |a, b, c| {
            sm(&sm(&o(a), &o(b)), &o(c)) == sm(&o(a), &sm(&o(b), &o(c)))
        }).map(sh));
        rep.record(layer, "odd.sharp.commutative", first_fail2(n1, n1, |a, b| sm(&o(a), &o(b)) == sm(&o(b), &o(a))).map(sh));
        rep.record(layer, "odd.sharp.distributive", None);
        rep.record(layer, "odd.sharp.identity", first_fail1(n1, |a| {
            sm(&self.local_one, &o(a)) == o(a) && sm(&o(a), &self.local_one) == o(a)
        }).map(sh));
        if rep.failures().next().is_some() {
            skip_from(&mut rep, AxiomLayer::Bimodule);
            return rep;
        }
        let layer = AxiomLayer::Bimodule;
        let l = |x: &Coords, a: &Coords| self.left_action(x, a);
        let r = |a: &Coords, x: &Coords| self.right_action(a, x);
        let eoo = |v: Vec<usize>| vec![v[0], v[1] + n0, v[2] + n0];
        for id in ["left.additive_in_module", "left.additive_in_ring", "right.additive_in_module", "right.additive_in_ring"] {
            rep.record(layer, id, None);
        }
        rep.record(layer, "left.associative", first_fail3(n0, n0, n1, |x, y, a| {
            l(&em(&e(x), &e(y)), &o(a)) == l(&e(x), &l(&e(y), &o(a)))
        }).map(|v| vec![v[0], v[1], v[2] + n0]));
        rep.record(layer, "left.unital", first_fail1(n1, |a| l(&self.one, &o(a)) == o(a)).map(sh));
        rep.record(layer, "right.associative", first_fail3(n1, n0, n0, |a, x, y| {
            r(&o(a), &em(&e(x), &e(y))) == r(&r(&o(a), &e(x)), &e(y))
        }).map(|v| vec![v[0] + n0, v[1], v[2]]));
        rep.record(layer, "right.unital", first_fail1(n1, |a| r(&o(a), &self.one) == o(a)).map(sh));
        rep.record(layer, "middle.associative", first_fail3(n0, n1, n0, |x, a, y| {
            r(&l(&e(x), &o(a)), &e(y)) == l(&e(x), &r(&o(a), &e(y)))
        }).map(|v| vec![v[0], v[1] + n0, v[2]]));
        if rep.failures().next().is_some() {
            skip_from(&mut rep, AxiomLayer::Triassociativity);
            return rep;
        }
        let layer = AxiomLayer::Triassociativity;
        rep.record(layer, "triassoc.left", first_fail3(n0, n1, n1, |x, a, b| {
            l(&e(x), &sm(&o(a), &o(b))) == sm(&l(&e(x), &o(a)), &o(b))
        }).map(eoo));
        rep.record(layer, "triassoc.right", first_fail3(n1, n1, n0, |a, b, x| {
            r(&sm(&o(a), &o(b)), &e(x)) == sm(&o(a), &r(&o(b), &e(x)))
        }).map(|v| vec![v[0] + n0, v[1] + n0, v[2]]));
        if rep.failures().next().is_some() {
            skip_from(&mut rep, AxiomLayer::ActionSymmetry);
            return rep;
        }
        let sample = self.even_sample();
        let bad = sample.iter().position(|x| {
            let lm: Vec<Coords> = (0..n1).map(|a| l(x, &o(a))).collect();
            let rm: Vec<Coords> = (0..n1).map(|a| r(&o(a), x)).collect();
            let both: Vec<Coords> = lm.iter().chain(&rm).cloned().collect();
            let (rl, rr, rb) = (rank(&lm), rank(&rm), rank(&both));
            !(rl == rb && rr == rb)
        });
        rep.record(AxiomLayer::ActionSymmetry, "action.symmetry", bad.map(|k| vec![k]));
        rep
    }
}

/// Rank of a list of row vectors by exact elimination.
fn rank(rows: &[Coords]) -> usize {
    let mut m: Vec<Coords> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                let row_r = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row_r) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    r
}
