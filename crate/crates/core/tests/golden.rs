//! Golden structural facts of the trivial extensions `TE(n,m)`, each
//! compared against an oracle written here directly in modular arithmetic.

use trispec::ideal::{enumerate_triideals, enumerate_triideals_naive};
use trispec::localization::{localize_at_odd, localize_at_prime};
use trispec::radical::trinilradical;
use trispec::spectrum::trispectrum;
use trispec::{FiniteTriring, IndexSet, Triideal};

fn members(mask: u32, n: usize) -> Vec<usize> {
    (0..n).filter(|&x| mask >> x & 1 == 1).collect()
}

/// Triideals of `Z/n ⊕ Z/m` straight from the definition: additive
/// subgroups, two-sided ideals of the trivial extension, `♯`-ideal.
fn oracle_triideals(n: usize, m: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let subgroup = |s: &[usize], k: usize| s.contains(&0) && s.iter().all(|a| s.iter().all(|b| s.contains(&((a + b) % k))));
    let mut out = Vec::new();
    for e in 1u32..(1 << n) {
        let i0 = members(e, n);
        if !subgroup(&i0, n) || !(0..n).all(|x| i0.iter().all(|a| i0.contains(&(x * a % n)))) {
            continue;
        }
        for o in 1u32..(1 << m) {
            let i1 = members(o, m);
            let ok = subgroup(&i1, m)
                && (0..n).all(|x| i1.iter().all(|a| i1.contains(&(x * a % m))))
                && i0.iter().all(|a| (0..m).all(|al| i1.contains(&(a * al % m))))
                && (0..m).all(|b| i1.iter().all(|a| i1.contains(&(a * b % m))));
            if ok {
                out.push((i0.clone(), i1));
            }
        }
    }
    out
}

fn oracle_is_prime(n: usize, m: usize, (p0, p1): &(Vec<usize>, Vec<usize>)) -> bool {
    if p0.len() == n && p1.len() == m {
        return false;
    }
    let (in0, in1) = (|x: usize| p0.contains(&x), |x: usize| p1.contains(&x));
    (0..n).all(|x| (0..n).all(|y| !in0(x * y % n) || in0(x) || in0(y)))
        && (0..n).all(|x| (0..m).all(|a| !in1(x * a % m) || in0(x) || in1(a)))
        && (0..m).all(|a| (0..m).all(|b| !in1(a * b % m) || in1(a) || in1(b)))
}

fn as_triideal((a, b): &(Vec<usize>, Vec<usize>)) -> Triideal {
    Triideal::new(IndexSet::new(a.clone()), IndexSet::new(b.clone()))
}

const TE: [(usize, usize); 7] = [(2, 2), (4, 4), (4, 2), (6, 3), (8, 4), (4, 1), (6, 1)];

#[test]
fn triideals_match_the_definition() {
    for (n, m) in TE {
        let r = FiniteTriring::te(n, m).unwrap();
        let mut oracle: Vec<Triideal> = oracle_triideals(n, m).iter().map(as_triideal).collect();
        oracle.sort();
        let mut fast = enumerate_triideals(&r);
        fast.sort();
        assert_eq!(fast, oracle, "TE({n},{m})");
        assert_eq!(enumerate_triideals_naive(&r), oracle, "TE({n},{m})");
    }
}

#[test]
fn spectra_match_the_definition() {
    for (n, m) in TE {
        let r = FiniteTriring::te(n, m).unwrap();
        let primes: Vec<_> = oracle_triideals(n, m).into_iter().filter(|p| oracle_is_prime(n, m, p)).collect();
        let even = primes.iter().filter(|p| p.1.len() == m).count();
        let spec = trispectrum(&r);
        assert_eq!((spec.even_points.len(), spec.odd_points.len()), (even, primes.len() - even), "TE({n},{m})");
        let mut listed: Vec<Triideal> = spec.points.iter().map(|p| p.ideal.clone()).collect();
        listed.sort();
        let mut expected: Vec<Triideal> = primes.iter().map(as_triideal).collect();
        expected.sort();
        assert_eq!(listed, expected);
    }
    assert_eq!(trispectrum(&FiniteTriring::te(4, 4).unwrap()).len(), 2);
    let s = trispectrum(&FiniteTriring::te(6, 3).unwrap());
    assert_eq!((s.len(), s.even_points.len(), s.odd_points.len()), (3, 2, 1));
}

#[test]
fn trinilradicals_match_nilpotent_residues() {
    for (n, m) in TE {
        let r = FiniteTriring::te(n, m).unwrap();
        let nil = |k: usize| -> Vec<usize> { (0..k).filter(|&x| (1..=k).any(|e| x.pow(e as u32) % k == 0)).collect() };
        let expected = Triideal::new(IndexSet::new(nil(n)), IndexSet::new(nil(m)));
        assert_eq!(trinilradical(&r), expected, "TE({n},{m})");
    }
    let t44 = trinilradical(&FiniteTriring::te(4, 4).unwrap());
    assert_eq!(t44, Triideal::new(IndexSet::new(vec![0, 2]), IndexSet::new(vec![0, 2])));
}

/// Number of classes of `Z/k × S` under `(a,s) ~ (b,t) ⇔ ∃u ∈ S, u(at − bs) = 0`,
/// by union-find over every related pair.
fn oracle_classes(k: usize, s: &[usize]) -> usize {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| s.iter().map(move |&d| (a, d))).collect();
    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let root = find(p, p[x]);
            p[x] = root;
        }
        p[x]
    }
    for i in 0..pairs.len() {
        for j in 0..pairs.len() {
            let ((a, s1), (b, t)) = (pairs[i], pairs[j]);
            let diff = (a * t + k * k - b * s1 % k) % k;
            if s.iter().any(|u| u * diff % k == 0) {
                let (x, y) = (find(&mut parent, i), find(&mut parent, j));
                parent[x] = y;
            }
        }
    }
    (0..pairs.len()).filter(|&i| find(&mut parent, i) == i).count()
}

#[test]
fn localization_class_counts() {
    let r = FiniteTriring::te(4, 4).unwrap();
    let p = Triideal::new(IndexSet::new(vec![0, 2]), IndexSet::new(vec![0, 2]));
    let expected = oracle_classes(4, &[1, 3]) * oracle_classes(4, &[1, 3]);
    assert_eq!(expected, 16);
    assert_eq!(localize_at_prime(&r, &p).unwrap().triring.size(), expected);

    let r = FiniteTriring::te(6, 3).unwrap();
    let p = Triideal::new(IndexSet::new(vec![0, 3]), IndexSet::new(vec![0]));
    let expected = oracle_classes(6, &[1, 2, 4, 5]) * oracle_classes(3, &[1, 2]);
    assert_eq!(expected, 9);
    assert_eq!(localize_at_prime(&r, &p).unwrap().triring.size(), expected);

    let expected = oracle_classes(6, &[1]) * oracle_classes(3, &[1, 2]);
    assert_eq!(expected, 18);
    let l = localize_at_odd(&r, 2).unwrap();
    assert_eq!((l.triring.size(), l.triring.even_size()), (expected, 6));
}
