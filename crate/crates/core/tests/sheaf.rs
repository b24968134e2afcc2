use trispec::sheaf::{
    find_witness, enumerate_covers, verify_cover, verify_presheaf_axioms, verify_sheaf_axioms, RestrictionWitness,
    SectionCase, StructurePresheaf,
};
use trispec::{FiniteTriring, Generator, TriringElement};

fn pos(ps: &StructurePresheaf, g: Generator) -> usize {
    ps.position(g).unwrap()
}

#[test]
fn section_space_cases() {
    let r = FiniteTriring::te(4, 4).unwrap();
    let ps = StructurePresheaf::new(&r).unwrap();
    let s = ps.space(Generator::Even(1)).unwrap();
    assert_eq!(s.case, SectionCase::EvenWithOdd);
    assert_eq!(s.components.iter().map(|c| c.triring.size()).collect::<Vec<_>>(), vec![16, 16]);
    let z = ps.space(Generator::Even(2)).unwrap();
    assert_eq!((z.case, z.size()), (SectionCase::ZeroSpace, 1));

    let r = FiniteTriring::te(6, 3).unwrap();
    let ps = StructurePresheaf::new(&r).unwrap();
    let s = ps.space(Generator::Odd(2)).unwrap();
    assert_eq!((s.case, s.size()), (SectionCase::OddCase, 18));
    assert_eq!(ps.space(Generator::Even(3)).unwrap().case, SectionCase::EvenNoOdd);
}

#[test]
fn witnesses() {
    let r = FiniteTriring::te(4, 4).unwrap();
    let ps = StructurePresheaf::new(&r).unwrap();
    let (f, g) = (pos(&ps, Generator::Even(1)), pos(&ps, Generator::Odd(1)));
    let w = find_witness(&r, (Generator::Even(1), &ps.opens[f]), (Generator::Odd(1), &ps.opens[g])).unwrap();
    assert_eq!(w, RestrictionWitness::EvenOdd { v: 1, r1: 1 });
    assert!(find_witness(&r, (Generator::Odd(1), &ps.opens[g]), (Generator::Even(1), &ps.opens[f])).is_err());

    let r = FiniteTriring::te(6, 3).unwrap();
    let ps = StructurePresheaf::new(&r).unwrap();
    let (f, g) = (pos(&ps, Generator::Even(5)), pos(&ps, Generator::Even(2)));
    let w = find_witness(&r, (Generator::Even(5), &ps.opens[f]), (Generator::Even(2), &ps.opens[g])).unwrap();
    assert_eq!(w, RestrictionWitness::EvenEven { u: 1, r0: 4 });
    let same = find_witness(&r, (Generator::Even(5), &ps.opens[f]), (Generator::Even(5), &ps.opens[f])).unwrap();
    assert_eq!((same.exponent(), same.cofactor()), (1, 1));
}

#[test]
fn restriction_to_local_one_forgets_the_fraction() {
    let r = FiniteTriring::te(4, 4).unwrap();
    let ps = StructurePresheaf::new(&r).unwrap();
    let (f, g) = (pos(&ps, Generator::Even(1)), pos(&ps, Generator::Odd(1)));
    let (src, tgt) = (&ps.spaces[f], &ps.spaces[g]);
    let rho = ps.rho(f, g).unwrap();
    let b = &src.components[1];
    let l = &tgt.components[0];
    let bo = b.odd.as_ref().unwrap();
    let lo = l.odd.as_ref().unwrap();
    for b0 in 0..4 {
        for b1 in 0..4 {
            let x = TriringElement::new(
                src.even_radix.join(&[0, b.even.class(b0, 1).unwrap()]),
                src.odd_radix.join(&[0, bo.class(b1, 1).unwrap()]),
            );
            let y = TriringElement::new(rho.map.even[x.even], rho.map.odd[x.odd]);
            assert_eq!(y, TriringElement::new(l.even.class(b0, 1).unwrap(), lo.class(b1, 1).unwrap()));
        }
    }
}

#[test]
fn presheaf_laws_on_small_rings() {
    for (n, m) in [(4, 4), (6, 3), (4, 2), (8, 4), (2, 2), (4, 1), (6, 1)] {
        let r = FiniteTriring::te(n, m).unwrap();
        let ps = StructurePresheaf::new(&r).unwrap();
        let rep = verify_presheaf_axioms(&ps).unwrap();
        assert!(rep.passed, "{}: {:#?}", r.name(), rep.checks.iter().filter(|c| !c.passed).collect::<Vec<_>>());
    }
}

#[test]
fn sheaf_axioms() {
    let r = FiniteTriring::te(4, 4).unwrap();
    let ps = StructurePresheaf::new(&r).unwrap();
    assert!(verify_sheaf_axioms(&ps).unwrap().passed);
    let (f, g) = (pos(&ps, Generator::Even(1)), pos(&ps, Generator::Odd(1)));
    let v = verify_cover(&ps, f, &[f, g]).unwrap();
    assert!(v.identity_axiom && v.gluing_axiom);

    let r = FiniteTriring::te(6, 3).unwrap();
    let ps = StructurePresheaf::new(&r).unwrap();
    let one = pos(&ps, Generator::Even(1));
    let covers = enumerate_covers(&ps, one, 4);
    let split = vec![pos(&ps, Generator::Even(2)), pos(&ps, Generator::Even(3))];
    assert!(covers.contains(&split));
    let v = verify_cover(&ps, one, &split).unwrap();
    println!("{}", serde_json::to_string_pretty(&v).unwrap());
    assert!(v.identity_axiom);
}

fn apply(ps: &StructurePresheaf, from: usize, to: usize, x: TriringElement) -> TriringElement {
    let m = &ps.rho(from, to).unwrap().map;
    TriringElement::new(m.even[x.even], m.odd[x.odd])
}

/// Identity and gluing for one cover by direct search over every family.
/// `None` when the family space is too large to search.
fn naive_cover(ps: &StructurePresheaf, f: usize, cover: &[usize]) -> Option<(bool, bool)> {
    let total: usize = cover.iter().map(|&c| ps.spaces[c].size()).product();
    if total > 1 << 20 {
        return None;
    }
    let globals: Vec<Vec<TriringElement>> = ps.spaces[f]
        .triring
        .elements()
        .map(|s| cover.iter().map(|&c| apply(ps, f, c, s)).collect())
        .collect();
    let identity = globals.iter().collect::<std::collections::HashSet<_>>().len() == globals.len();
    let basic: Vec<usize> = (0..ps.opens.len()).filter(|&w| !ps.opens[w].is_empty()).collect();
    let mut family = vec![0usize; cover.len()];
    let mut gluing = true;
    loop {
        let secs: Vec<TriringElement> = cover.iter().zip(&family).map(|(&c, &k)| ps.spaces[c].triring.element(k)).collect();
        let compatible = (0..cover.len()).all(|i| {
            (i + 1..cover.len()).all(|j| {
                let meet = ps.opens[cover[i]].intersection(&ps.opens[cover[j]]);
                basic.iter().filter(|&&w| ps.opens[w].is_subset(&meet)).all(|&w| {
                    apply(ps, cover[i], w, secs[i]) == apply(ps, cover[j], w, secs[j])
                })
            })
        });
        if compatible && !globals.contains(&secs) {
            gluing = false;
        }
        let mut k = 0;
        while k < cover.len() {
            family[k] += 1;
            if family[k] < ps.spaces[cover[k]].size() {
                break;
            }
            family[k] = 0;
            k += 1;
        }
        if k == cover.len() {
            break;
        }
    }
    Some((identity, gluing))
}

#[test]
fn cover_verdicts_match_direct_search() {
    let mut searched = 0;
    for (n, m) in [(4, 4), (6, 3), (4, 2), (8, 4), (2, 2), (6, 1)] {
        let r = FiniteTriring::te(n, m).unwrap();
        let ps = StructurePresheaf::new(&r).unwrap();
        for f in (0..ps.opens.len()).filter(|&f| !ps.opens[f].is_empty()) {
            for cover in enumerate_covers(&ps, f, 4) {
                let Some(expected) = naive_cover(&ps, f, &cover) else { continue };
                let v = verify_cover(&ps, f, &cover).unwrap();
                assert_eq!((v.identity_axiom, v.gluing_axiom), expected, "{} D({f}) {cover:?}", r.name());
                searched += 1;
            }
        }
    }
    assert!(searched > 20, "{searched}");
}
