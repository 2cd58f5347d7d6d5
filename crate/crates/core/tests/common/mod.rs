#![allow(dead_code)]

use std::collections::BTreeMap;

use p2q::aut::brute_aut;
use p2q::group::{
    center, cyclic, derived_subgroup, direct_product, homomorphisms, is_isomorphic, order_census,
    semidirect, ActionSpec, FiniteGroup, Group,
};

type Invariant = (BTreeMap<u32, usize>, usize, usize);

fn invariant(g: &FiniteGroup) -> Invariant {
    (order_census(g), center(g).len(), derived_subgroup(g).len())
}

/// Every `N ⋊ C` over all homomorphisms `C -> Aut(N)`, for abelian `C`.
fn semidirect_family(n: &FiniteGroup, c: &FiniteGroup) -> Vec<FiniteGroup> {
    let aut = brute_aut(n).unwrap();
    let table = aut.cayley().unwrap();
    homomorphisms(c, &table)
        .into_iter()
        .map(|hom| {
            let maps = (0..c.order())
                .map(|k| aut.element(hom.apply(k)).to_vec())
                .collect();
            let act = ActionSpec::new(n, c, maps).unwrap();
            semidirect(n, c, &act).unwrap()
        })
        .collect()
}

/// Isomorphism-class representatives of every group of order `p²q`, built
/// from all actions between a normal Sylow subgroup and a complement.
pub fn all_groups_of_order(p: u64, q: u64) -> Vec<FiniteGroup> {
    let (p, q) = (p as usize, q as usize);
    let cq = cyclic(q).unwrap();
    let cp = cyclic(p).unwrap();
    let sylow_p = [cyclic(p * p).unwrap(), direct_product(&cp, &cp).unwrap()];
    let mut all = Vec::new();
    for s in &sylow_p {
        all.extend(semidirect_family(&cq, s));
        all.extend(semidirect_family(s, &cq));
    }
    let mut reps: Vec<(Invariant, FiniteGroup)> = Vec::new();
    for g in all {
        let inv = invariant(&g);
        let known = reps.iter().any(|(i, r)| *i == inv && is_isomorphic(r, &g));
        if !known {
            reps.push((inv, g));
        }
    }
    reps.into_iter().map(|(_, g)| g).collect()
}
