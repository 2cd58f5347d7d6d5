use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Group, GroupError};

/// Groups up to this order get the exhaustive greedy generator search;
/// larger ones sample candidates.
const EXHAUSTIVE_GENERATOR_SEARCH: usize = 1024;
const SAMPLED_CANDIDATES: usize = 48;
const SHRINK_ATTEMPTS: usize = 200;

pub fn element_order<G: Group + ?Sized>(g: &G, x: usize) -> usize {
    let e = g.identity();
    let mut k = 1;
    let mut cur = x;
    while cur != e {
        cur = g.mul(cur, x);
        k += 1;
    }
    k
}

pub fn element_orders<G: Group + ?Sized>(g: &G) -> Vec<u32> {
    let n = g.order();
    let e = g.identity();
    let mut orders = vec![0u32; n];
    orders[e] = 1;
    let mut cycle = Vec::new();
    for x in 0..n {
        if orders[x] != 0 {
            continue;
        }
        cycle.clear();
        let mut cur = x;
        while cur != e {
            cycle.push(cur);
            cur = g.mul(cur, x);
        }
        let m = cycle.len() + 1;
        // x^j has order m / gcd(j, m).
        for (j, &y) in cycle.iter().enumerate() {
            if orders[y] == 0 {
                orders[y] = (m / crate::arith::gcd((j + 1) as u64, m as u64) as usize) as u32;
            }
        }
    }
    orders
}

/// Number of elements of each order.
pub fn order_census<G: Group + ?Sized>(g: &G) -> BTreeMap<u32, usize> {
    let mut census = BTreeMap::new();
    for o in element_orders(g) {
        *census.entry(o).or_insert(0) += 1;
    }
    census
}

/// Membership mask of `⟨gens⟩`, or `None` once it exceeds `limit` elements.
pub(crate) fn closure_mask<G: Group + ?Sized>(
    g: &G,
    gens: &[usize],
    limit: usize,
) -> Option<(Vec<bool>, usize)> {
    let n = g.order();
    let mut mask = vec![false; n];
    let e = g.identity();
    mask[e] = true;
    let mut size = 1;
    let mut stack = vec![e];
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !mask[y] {
                mask[y] = true;
                size += 1;
                if size > limit {
                    return None;
                }
                stack.push(y);
            }
        }
    }
    Some((mask, size))
}

/// The subgroup generated by `gens`, as a sorted list of element indices.
pub fn closure<G: Group + ?Sized>(g: &G, gens: &[usize]) -> Vec<usize> {
    let (mask, _) = closure_mask(g, gens, usize::MAX).expect("unbounded");
    mask_to_vec(&mask)
}

fn mask_to_vec(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(i, &m)| m.then_some(i))
        .collect()
}

/// A small generating set, ordered by descending element order.
///
/// Greedy: repeatedly add the element whose adjunction grows the generated
/// subgroup the most. Greedy can be fooled (an eigenvector picked first may
/// force a third generator), so the result is then shrunk by trying random
/// tuples one shorter.
pub fn generating_set<G: Group + ?Sized>(g: &G) -> Vec<usize> {
    let n = g.order();
    if n == 1 {
        return Vec::new();
    }
    let orders = element_orders(g);
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e37_79b9 ^ n as u64);
    let mut gens: Vec<usize> = Vec::new();
    let mut current = vec![false; n];
    current[g.identity()] = true;
    let mut current_size = 1;
    while current_size < n {
        let candidates: Vec<usize> = if n <= EXHAUSTIVE_GENERATOR_SEARCH {
            (0..n).filter(|&x| !current[x]).collect()
        } else {
            let mut picks = Vec::with_capacity(SAMPLED_CANDIDATES);
            while picks.len() < SAMPLED_CANDIDATES {
                let x = rng.gen_range(0..n);
                if !current[x] {
                    picks.push(x);
                }
            }
            picks
        };
        let mut best: Option<(usize, u32, usize, Vec<bool>)> = None;
        let mut trial = gens.clone();
        trial.push(0);
        for x in candidates {
            let size_and_mask = if gens.is_empty() {
                (orders[x] as usize, None)
            } else {
                *trial.last_mut().unwrap() = x;
                let (mask, size) = closure_mask(g, &trial, usize::MAX).unwrap();
                (size, Some(mask))
            };
            let (size, mask) = size_and_mask;
            let better = match &best {
                None => true,
                Some((bs, bo, _, _)) => (size, orders[x]) > (*bs, *bo),
            };
            if better {
                let mask = mask.unwrap_or_default();
                best = Some((size, orders[x], x, mask));
                if size == n {
                    break;
                }
            }
        }
        let (size, _, x, mask) = best.expect("some candidate exists");
        gens.push(x);
        current = if mask.is_empty() {
            closure_mask(g, &gens, usize::MAX).unwrap().0
        } else {
            mask
        };
        current_size = size;
    }

    while gens.len() > 1 {
        let m = gens.len() - 1;
        let found = (0..SHRINK_ATTEMPTS).find_map(|_| {
            let trial: Vec<usize> = (0..m).map(|_| rng.gen_range(0..n)).collect();
            closure_mask(g, &trial, usize::MAX)
                .filter(|(_, size)| *size == n)
                .map(|_| trial)
        });
        match found {
            Some(t) => gens = t,
            None => break,
        }
    }
    gens.sort_by_key(|&x| (std::cmp::Reverse(orders[x]), x));
    gens
}

pub fn commutator<G: Group + ?Sized>(g: &G, a: usize, b: usize) -> usize {
    let ab = g.mul(a, b);
    let ba = g.mul(b, a);
    g.mul(g.inv(ba), ab)
}

pub fn is_abelian<G: Group + ?Sized>(g: &G) -> bool {
    let gens = generating_set(g);
    gens.iter()
        .all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

/// `{z : zg = gz for all g}`, sorted.
pub fn center<G: Group + ?Sized>(g: &G) -> Vec<usize> {
    let gens = generating_set(g);
    centralizer_of(g, &gens)
}

/// Elements commuting with every element of `set`.
pub fn centralizer_of<G: Group + ?Sized>(g: &G, set: &[usize]) -> Vec<usize> {
    (0..g.order())
        .filter(|&z| set.iter().all(|&s| g.mul(z, s) == g.mul(s, z)))
        .collect()
}

pub fn is_subgroup<G: Group + ?Sized>(g: &G, set: &[usize]) -> bool {
    let mut mask = vec![false; g.order()];
    for &x in set {
        mask[x] = true;
    }
    mask[g.identity()]
        && set
            .iter()
            .all(|&a| mask[g.inv(a)] && set.iter().all(|&b| mask[g.mul(a, b)]))
}

/// Whether the subgroup `set` is invariant under conjugation.
pub fn is_normal<G: Group + ?Sized>(g: &G, set: &[usize]) -> bool {
    let gens = generating_set(g);
    let mut mask = vec![false; g.order()];
    for &x in set {
        mask[x] = true;
    }
    set.iter()
        .all(|&x| gens.iter().all(|&t| mask[g.mul(g.mul(g.inv(t), x), t)]))
}

/// The commutator subgroup, as the normal closure of the commutators of a
/// generating set.
pub fn derived_subgroup<G: Group + ?Sized>(g: &G) -> Vec<usize> {
    let gens = generating_set(g);
    let mut sub_gens: Vec<usize> = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let c = commutator(g, a, b);
            if c != g.identity() {
                sub_gens.push(c);
            }
        }
    }
    let (mut mask, _) = closure_mask(g, &sub_gens, usize::MAX).unwrap();
    loop {
        let members = mask_to_vec(&mask);
        let outside = members.iter().find_map(|&x| {
            gens.iter()
                .map(|&t| g.mul(g.mul(g.inv(t), x), t))
                .find(|&y| !mask[y])
        });
        match outside {
            Some(y) => {
                sub_gens.push(y);
                mask = closure_mask(g, &sub_gens, usize::MAX).unwrap().0;
            }
            None => return members,
        }
    }
}

/// A Sylow `r`-subgroup, grown deterministically by scanning elements in
/// index order and adjoining each `r`-element that keeps the subgroup an
/// `r`-group. A single pass suffices: a non-Sylow `r`-subgroup always has
/// an `r`-element in its normalizer that can be adjoined.
pub fn sylow<G: Group + ?Sized>(g: &G, r: u64) -> Result<Vec<usize>, GroupError> {
    let n = g.order();
    if r < 2 || !(n as u64).is_multiple_of(r) {
        return Err(GroupError::PrimeNotDividing { r, order: n });
    }
    let mut target = 1usize;
    let mut rest = n as u64;
    while rest.is_multiple_of(r) {
        rest /= r;
        target *= r as usize;
    }
    let is_r_power = |mut s: usize| {
        while s.is_multiple_of(r as usize) {
            s /= r as usize;
        }
        s == 1
    };
    let orders = element_orders(g);
    let mut gens: Vec<usize> = Vec::new();
    let mut mask = vec![false; n];
    mask[g.identity()] = true;
    let mut size = 1;
    for x in 0..n {
        if size == target {
            break;
        }
        if mask[x] || !is_r_power(orders[x] as usize) {
            continue;
        }
        gens.push(x);
        match closure_mask(g, &gens, target) {
            Some((m, s)) if is_r_power(s) => {
                mask = m;
                size = s;
            }
            _ => {
                gens.pop();
            }
        }
    }
    debug_assert_eq!(size, target);
    Ok(mask_to_vec(&mask))
}

/// Conjugacy classes, found as orbits under conjugation by a generating set.
#[derive(Debug, Clone)]
pub struct ClassData {
    /// Class index of each element.
    pub class_of: Vec<u32>,
    pub sizes: Vec<usize>,
    /// Smallest element index in each class.
    pub reps: Vec<usize>,
}

impl ClassData {
    pub fn class_size_of(&self, x: usize) -> usize {
        self.sizes[self.class_of[x] as usize]
    }
}

pub fn conjugacy_classes<G: Group + ?Sized>(g: &G) -> ClassData {
    let gens = generating_set(g);
    conjugacy_classes_with(g, &gens)
}

pub(crate) fn conjugacy_classes_with<G: Group + ?Sized>(g: &G, gens: &[usize]) -> ClassData {
    let n = g.order();
    let gen_pairs: Vec<(usize, usize)> = gens.iter().map(|&t| (t, g.inv(t))).collect();
    let mut class_of = vec![u32::MAX; n];
    let mut sizes = Vec::new();
    let mut reps = Vec::new();
    let mut stack = Vec::new();
    for x in 0..n {
        if class_of[x] != u32::MAX {
            continue;
        }
        let id = sizes.len() as u32;
        class_of[x] = id;
        let mut size = 1;
        stack.push(x);
        while let Some(y) = stack.pop() {
            for &(t, ti) in &gen_pairs {
                let z = g.mul(g.mul(ti, y), t);
                if class_of[z] == u32::MAX {
                    class_of[z] = id;
                    size += 1;
                    stack.push(z);
                }
            }
        }
        sizes.push(size);
        reps.push(x);
    }
    ClassData {
        class_of,
        sizes,
        reps,
    }
}
