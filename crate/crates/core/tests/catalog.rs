mod common;

use p2q::arith::primes_up_to;
use p2q::catalog::{self, canonical_s, CatalogError, GroupSpec, Mode};
use p2q::group::{cyclic, is_isomorphic, is_normal, sylow};

fn prime_pairs(max_order: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for p in primes_up_to(max_order) {
        for q in primes_up_to(max_order) {
            if p != q && p * p * q <= max_order {
                out.push((p, q));
            }
        }
    }
    out
}

#[test]
fn enumerate_matches_exhaustive_construction() {
    for (p, q) in prime_pairs(200) {
        let reps = common::all_groups_of_order(p, q);
        let specs = catalog::enumerate(p, q, Mode::Complete).unwrap();
        assert_eq!(reps.len(), specs.len(), "p={p} q={q}");
        let builds: Vec<_> = specs.iter().map(|s| catalog::build(s).unwrap()).collect();
        for r in &reps {
            let hits = builds.iter().filter(|b| is_isomorphic(*b, r)).count();
            assert_eq!(hits, 1, "p={p} q={q}");
        }
    }
}

#[test]
fn classify_inverts_build() {
    for spec in catalog::specs_up_to(700, Mode::Complete) {
        let g = catalog::build(&spec).unwrap();
        assert_eq!(catalog::classify(&g).unwrap(), spec);
    }
}

#[test]
fn classify_sees_through_relabelling() {
    // Conjugating the table by a permutation must not change the answer.
    for spec in [
        GroupSpec::type8(11, 5, 2),
        GroupSpec::new(10, 2, 3),
        GroupSpec::new(9, 7, 3),
        GroupSpec::new(2, 3, 7),
    ] {
        let g = catalog::build(&spec).unwrap();
        let n = g.order();
        let perm: Vec<usize> = (0..n).map(|i| (i * 7 + 3) % n).collect();
        let perm = if p2q::arith::gcd(7, n as u64) == 1 {
            perm
        } else {
            (0..n).rev().collect()
        };
        let mut inv = vec![0; n];
        for (i, &x) in perm.iter().enumerate() {
            inv[x] = i;
        }
        use p2q::group::{FiniteGroup, Group};
        let h = FiniteGroup::from_fn(n, perm[g.identity()], Default::default(), |a, b| {
            perm[g.mul(inv[a], inv[b])]
        })
        .unwrap();
        assert_eq!(catalog::classify(&h).unwrap(), spec);
    }
}

#[test]
fn distinct_specs_are_not_isomorphic() {
    for (p, q) in prime_pairs(700) {
        let specs = catalog::enumerate(p, q, Mode::Complete).unwrap();
        let builds: Vec<_> = specs.iter().map(|s| catalog::build(s).unwrap()).collect();
        for i in 0..builds.len() {
            for j in i + 1..builds.len() {
                assert!(
                    !is_isomorphic(&builds[i], &builds[j]),
                    "{} vs {}",
                    specs[i],
                    specs[j]
                );
            }
        }
    }
}

#[test]
fn type8_class_count() {
    for p in primes_up_to(400) {
        for q in primes_up_to(p - 1) {
            let n = catalog::enumerate(p, q, Mode::StrictPaper)
                .unwrap()
                .iter()
                .filter(|s| s.ty == 8)
                .count() as u64;
            let want = if q > 3 && (p - 1) % q == 0 {
                (q - 3) / 2
            } else {
                0
            };
            assert_eq!(n, want, "p={p} q={q}");
        }
    }
}

#[test]
fn type8_parameter_inverse_gives_same_group() {
    let a = catalog::build(&GroupSpec::type8(11, 5, 2)).unwrap();
    let b = catalog::build(&GroupSpec::type8(11, 5, 3)).unwrap();
    assert!(is_isomorphic(&a, &b));
    assert_eq!(canonical_s(3, 5).unwrap(), 2);
    assert!(GroupSpec::type8(11, 5, 3).validate(Mode::Complete).is_ok());
    assert!(!GroupSpec::type8(11, 5, 3).is_canonical());
    // s = ±1 are types 7 and 9
    assert!(GroupSpec::type8(11, 5, 1).validate(Mode::Complete).is_err());
    assert!(GroupSpec::type8(11, 5, 4).validate(Mode::Complete).is_err());
}

#[test]
fn every_build_has_a_normal_sylow() {
    for spec in catalog::specs_up_to(700, Mode::Complete) {
        let g = catalog::build(&spec).unwrap();
        let sp = sylow(&g, spec.p).unwrap();
        let sq = sylow(&g, spec.q).unwrap();
        assert!(is_normal(&g, &sp) || is_normal(&g, &sq), "{spec}");
    }
}

#[test]
fn enumerate_examples() {
    let types = |p, q, m| -> Vec<u8> {
        catalog::enumerate(p, q, m)
            .unwrap()
            .iter()
            .map(|s| s.ty)
            .collect()
    };
    assert_eq!(types(2, 3, Mode::StrictPaper), [1, 2, 5, 10, 11]);
    assert_eq!(types(2, 5, Mode::StrictPaper), [1, 2, 3, 5, 11]);
    assert_eq!(types(5, 3, Mode::StrictPaper), [1, 5, 10]);
    assert_eq!(types(7, 3, Mode::StrictPaper), [1, 4, 5, 6, 7, 9]);
    assert_eq!(types(11, 5, Mode::StrictPaper), [1, 4, 5, 6, 7, 8, 9]);
    assert_eq!(types(5, 7, Mode::StrictPaper), [1, 5]);
    assert_eq!(types(3, 2, Mode::StrictPaper), [1, 4, 5, 6]);
    assert_eq!(types(3, 2, Mode::Complete), [1, 4, 5, 6, 7]);
    assert!(matches!(
        catalog::enumerate(4, 3, Mode::Complete),
        Err(CatalogError::NotPrime(4))
    ));
    assert!(catalog::enumerate(3, 3, Mode::Complete).is_err());
}

#[test]
fn type1_is_cyclic() {
    for (p, q) in [(2, 3), (3, 5), (5, 2), (7, 3)] {
        let g = catalog::build(&GroupSpec::new(1, p, q)).unwrap();
        assert!(is_isomorphic(&g, &cyclic((p * p * q) as usize).unwrap()));
    }
}

#[test]
fn conditions_are_enforced() {
    assert!(catalog::build(&GroupSpec::new(7, 5, 3)).is_err());
    assert!(catalog::build(&GroupSpec::new(3, 2, 7)).is_err());
    assert!(catalog::build(&GroupSpec::new(10, 5, 3)).is_ok());
    assert!(catalog::build(&GroupSpec::new(10, 7, 3)).is_err());
    assert!(GroupSpec::new(7, 3, 2).validate(Mode::StrictPaper).is_err());
    assert!(GroupSpec::new(7, 3, 2).validate(Mode::Complete).is_ok());
    assert!(catalog::build(&GroupSpec::new(12, 3, 2)).is_err());
}

#[test]
fn spec_json_round_trip() {
    for spec in catalog::specs_up_to(300, Mode::Complete) {
        let text = serde_json::to_string(&spec).unwrap();
        let back: GroupSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
    }
    let s: GroupSpec = serde_json::from_str(r#"{"type": 8, "p": 11, "q": 5, "s": 2}"#).unwrap();
    assert_eq!(s, GroupSpec::type8(11, 5, 2));
}
