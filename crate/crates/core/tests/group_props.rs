use p2q::aut::brute_aut;
use p2q::catalog::{self, GroupSpec, Mode};
use p2q::group::{
    center, cyclic, derived_subgroup, direct_product, element_orders, find_isomorphism,
    is_isomorphic, is_normal, is_subgroup, sylow, AssocCheck, FiniteGroup, Group,
};
use proptest::prelude::*;

fn small_specs() -> Vec<GroupSpec> {
    catalog::specs_up_to(200, Mode::Complete)
}

fn r_part(n: usize, r: usize) -> usize {
    let mut m = n;
    let mut part = 1;
    while m.is_multiple_of(r) {
        m /= r;
        part *= r;
    }
    part
}

fn assert_group_laws(g: &FiniteGroup) {
    let rebuilt = FiniteGroup::from_fn(g.order(), g.identity(), AssocCheck::Full, |a, b| {
        g.mul(a, b)
    });
    assert!(rebuilt.is_ok(), "{:?}", rebuilt.err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn catalog_builds_are_groups(i in 0usize..1000) {
        let specs = small_specs();
        let spec = specs[i % specs.len()];
        let g = catalog::build(&spec).unwrap();
        assert_group_laws(&g);
        prop_assert_eq!(g.order() as u64, spec.order());
    }

    #[test]
    fn products_of_cyclics_are_groups(a in 1usize..30, b in 1usize..30) {
        let g = direct_product(&cyclic(a).unwrap(), &cyclic(b).unwrap()).unwrap();
        assert_group_laws(&g);
        let cyc = cyclic(a * b).unwrap();
        prop_assert_eq!(is_isomorphic(&g, &cyc), p2q::arith::gcd(a as u64, b as u64) == 1);
    }

    #[test]
    fn sylow_has_exact_prime_power_order(i in 0usize..1000) {
        let specs = small_specs();
        let spec = specs[i % specs.len()];
        let g = catalog::build(&spec).unwrap();
        for r in [spec.p, spec.q] {
            let s = sylow(&g, r).unwrap();
            prop_assert_eq!(s.len(), r_part(g.order(), r as usize));
            prop_assert!(is_subgroup(&g, &s));
        }
    }

    #[test]
    fn some_sylow_subgroup_is_normal(i in 0usize..1000) {
        let specs = small_specs();
        let spec = specs[i % specs.len()];
        let g = catalog::build(&spec).unwrap();
        let sp = sylow(&g, spec.p).unwrap();
        let sq = sylow(&g, spec.q).unwrap();
        prop_assert!(is_normal(&g, &sp) || is_normal(&g, &sq));
    }

    #[test]
    fn center_and_derived_are_subgroups(i in 0usize..1000) {
        let specs = small_specs();
        let spec = specs[i % specs.len()];
        let g = catalog::build(&spec).unwrap();
        prop_assert!(is_subgroup(&g, &center(&g)));
        prop_assert!(is_subgroup(&g, &derived_subgroup(&g)));
        prop_assert!(is_normal(&g, &derived_subgroup(&g)));
    }

    #[test]
    fn isomorphism_is_reflexive_and_symmetric(i in 0usize..1000, j in 0usize..1000) {
        let specs = small_specs();
        let (s1, s2) = (specs[i % specs.len()], specs[j % specs.len()]);
        let (g1, g2) = (catalog::build(&s1).unwrap(), catalog::build(&s2).unwrap());
        let w = find_isomorphism(&g1, &g1).expect("reflexive");
        prop_assert!(w.is_automorphism(&g1, &g1));
        let f = find_isomorphism(&g1, &g2);
        let b = find_isomorphism(&g2, &g1);
        prop_assert_eq!(f.is_some(), b.is_some());
        if let Some(f) = f {
            prop_assert!(f.is_automorphism(&g1, &g2));
        }
    }
}

#[test]
fn automorphisms_preserve_characteristic_data() {
    for spec in catalog::specs_up_to(60, Mode::Complete) {
        let g = catalog::build(&spec).unwrap();
        let orders = element_orders(&g);
        let mut z = center(&g);
        let mut d = derived_subgroup(&g);
        z.sort_unstable();
        d.sort_unstable();
        let aut = brute_aut(&g).unwrap();
        for img in aut.iter() {
            for x in 0..g.order() {
                assert_eq!(orders[x], orders[img[x] as usize], "{spec}");
            }
            for set in [&z, &d] {
                let mut mapped: Vec<usize> = set.iter().map(|&x| img[x] as usize).collect();
                mapped.sort_unstable();
                assert_eq!(&mapped, set, "{spec}");
            }
        }
    }
}

#[test]
fn cyclic_element_counts() {
    let c9 = cyclic(9).unwrap();
    let orders = element_orders(&c9);
    assert_eq!(orders.iter().filter(|&&o| o == 9).count(), 6);
    assert_eq!(cyclic(1).unwrap().order(), 1);
    let c6 = cyclic(6).unwrap();
    assert!((0..6).all(|x| c6.pow(x, 6) == c6.identity()));
}
