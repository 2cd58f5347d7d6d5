//! Backtracking search for structure-preserving maps.
//!
//! A map is fixed by the images of a generating set `g_0, …, g_{m-1}` of the
//! source. Images are chosen one generator at a time; after each choice the
//! partial map is extended breadth-first over `⟨g_0, …, g_i⟩` using
//! `f(x g_j) = f(x) f(g_j)`, failing on the first clash. Candidate images are
//! bucketed by element order and conjugacy-class size; for isomorphism tests
//! the first generator only needs one representative per class, since
//! composing with an inner automorphism of the target moves its image
//! anywhere in its class.

use std::collections::BTreeMap;

use super::algo::{conjugacy_classes_with, element_orders, generating_set, ClassData};
use super::{Group, Morphism};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MapSearchStats {
    /// Complete maps reported to the visitor.
    pub found: u64,
    /// Partial extensions attempted.
    pub extensions: u64,
}

struct Extender<'a, A: Group + ?Sized, B: Group + ?Sized> {
    a: &'a A,
    b: &'a B,
    gens: Vec<usize>,
    images: Vec<usize>,
    injective: bool,
    map: Vec<u32>,
    map_epoch: Vec<u32>,
    used_epoch: Vec<u32>,
    epoch: u32,
    queue: Vec<usize>,
    stats: MapSearchStats,
}

impl<'a, A: Group + ?Sized, B: Group + ?Sized> Extender<'a, A, B> {
    fn new(a: &'a A, b: &'a B, gens: Vec<usize>, injective: bool) -> Self {
        let m = gens.len();
        Extender {
            a,
            b,
            gens,
            images: vec![0; m],
            injective,
            map: vec![0; a.order()],
            map_epoch: vec![0; a.order()],
            used_epoch: vec![0; b.order()],
            epoch: 0,
            queue: Vec::with_capacity(a.order()),
            stats: MapSearchStats::default(),
        }
    }

    fn next_epoch(&mut self) -> u32 {
        if self.epoch == u32::MAX {
            self.map_epoch.iter_mut().for_each(|e| *e = 0);
            self.used_epoch.iter_mut().for_each(|e| *e = 0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.epoch
    }

    /// Extends `g_j ↦ images[j]` (`j ≤ depth`) over the generated subgroup.
    fn extend(&mut self, depth: usize) -> bool {
        self.stats.extensions += 1;
        let ep = self.next_epoch();
        let (ea, eb) = (self.a.identity(), self.b.identity());
        self.map[ea] = eb as u32;
        self.map_epoch[ea] = ep;
        self.used_epoch[eb] = ep;
        self.queue.clear();
        self.queue.push(ea);
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            let fx = self.map[x] as usize;
            for j in 0..=depth {
                let y = self.a.mul(x, self.gens[j]);
                let fy = self.b.mul(fx, self.images[j]);
                if self.map_epoch[y] == ep {
                    if self.map[y] as usize != fy {
                        return false;
                    }
                } else {
                    if self.injective {
                        if self.used_epoch[fy] == ep {
                            return false;
                        }
                        self.used_epoch[fy] = ep;
                    }
                    self.map_epoch[y] = ep;
                    self.map[y] = fy as u32;
                    self.queue.push(y);
                }
            }
        }
        true
    }

    /// Depth-first over candidate images. `visit` returns `false` to stop.
    fn run(
        &mut self,
        candidates: &[Vec<usize>],
        pair_ok: &dyn Fn(usize, &[usize], usize) -> bool,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if self.gens.is_empty() {
            let single = vec![self.b.identity() as u32; self.a.order()];
            self.stats.found += 1;
            return visit(&single);
        }
        self.dfs(0, candidates, pair_ok, visit)
    }

    fn dfs(
        &mut self,
        depth: usize,
        candidates: &[Vec<usize>],
        pair_ok: &dyn Fn(usize, &[usize], usize) -> bool,
        visit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        let last = depth + 1 == self.gens.len();
        for &c in &candidates[depth] {
            if !pair_ok(depth, &self.images[..depth], c) {
                continue;
            }
            self.images[depth] = c;
            if !self.extend(depth) {
                continue;
            }
            if last {
                if self.queue.len() != self.a.order() {
                    continue;
                }
                self.stats.found += 1;
                if !visit(&self.map) {
                    return false;
                }
            } else if !self.dfs(depth + 1, candidates, pair_ok, visit) {
                return false;
            }
        }
        true
    }
}

struct Profile {
    gens: Vec<usize>,
    orders: Vec<u32>,
    classes: ClassData,
}

impl Profile {
    fn of<G: Group + ?Sized>(g: &G) -> Self {
        let gens = generating_set(g);
        let orders = element_orders(g);
        let classes = conjugacy_classes_with(g, &gens);
        Profile {
            gens,
            orders,
            classes,
        }
    }

    fn key(&self, x: usize) -> (u32, usize) {
        (self.orders[x], self.classes.class_size_of(x))
    }

    fn census(&self) -> BTreeMap<(u32, usize), usize> {
        let mut c = BTreeMap::new();
        for x in 0..self.orders.len() {
            *c.entry(self.key(x)).or_insert(0) += 1;
        }
        c
    }

    fn bucket(&self, key: (u32, usize)) -> Vec<usize> {
        (0..self.orders.len())
            .filter(|&x| self.key(x) == key)
            .collect()
    }
}

/// An isomorphism `a -> b`, if one exists.
pub fn find_isomorphism<A: Group + ?Sized, B: Group + ?Sized>(a: &A, b: &B) -> Option<Morphism> {
    if a.order() != b.order() {
        return None;
    }
    let pa = Profile::of(a);
    let pb = Profile::of(b);
    if pa.census() != pb.census() {
        return None;
    }
    let m = pa.gens.len();
    let mut candidates: Vec<Vec<usize>> = pa.gens.iter().map(|&g| pb.bucket(pa.key(g))).collect();
    if m > 0 {
        let k0 = pa.key(pa.gens[0]);
        candidates[0] = pb
            .classes
            .reps
            .iter()
            .copied()
            .filter(|&r| pb.key(r) == k0)
            .collect();
    }
    // order(g_j g_i) must equal order(f(g_j) f(g_i)).
    let pair_orders: Vec<Vec<u32>> = (0..m)
        .map(|i| {
            (0..i)
                .map(|j| pa.orders[a.mul(pa.gens[j], pa.gens[i])])
                .collect()
        })
        .collect();
    let pair_ok = |depth: usize, chosen: &[usize], c: usize| {
        chosen
            .iter()
            .enumerate()
            .all(|(j, &img)| pb.orders[b.mul(img, c)] == pair_orders[depth][j])
    };
    let mut ext = Extender::new(a, b, pa.gens.clone(), true);
    let mut result = None;
    ext.run(&candidates, &pair_ok, &mut |map| {
        result = Some(map.to_vec());
        false
    });
    result.map(Morphism::from_images_unchecked)
}

pub fn is_isomorphic<A: Group + ?Sized, B: Group + ?Sized>(a: &A, b: &B) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Enumerates every automorphism of `g`, passing full image arrays to
/// `visit` in a deterministic order. Returns the generators whose images
/// determine each automorphism, and search statistics.
pub fn all_automorphisms<G: Group + ?Sized>(
    g: &G,
    mut visit: impl FnMut(&[u32]),
) -> (Vec<usize>, MapSearchStats) {
    let p = Profile::of(g);
    let m = p.gens.len();
    let candidates: Vec<Vec<usize>> = p.gens.iter().map(|&x| p.bucket(p.key(x))).collect();
    let pair_orders: Vec<Vec<u32>> = (0..m)
        .map(|i| {
            (0..i)
                .map(|j| p.orders[g.mul(p.gens[j], p.gens[i])])
                .collect()
        })
        .collect();
    let pair_ok = |depth: usize, chosen: &[usize], c: usize| {
        chosen
            .iter()
            .enumerate()
            .all(|(j, &img)| p.orders[g.mul(img, c)] == pair_orders[depth][j])
    };
    let mut ext = Extender::new(g, g, p.gens.clone(), true);
    ext.run(&candidates, &pair_ok, &mut |map| {
        visit(map);
        true
    });
    (p.gens, ext.stats)
}

/// Every homomorphism `a -> b`.
pub fn homomorphisms<A: Group + ?Sized, B: Group + ?Sized>(a: &A, b: &B) -> Vec<Morphism> {
    let gens = generating_set(a);
    let orders_a = element_orders(a);
    let orders_b = element_orders(b);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            (0..b.order())
                .filter(|&y| orders_a[x].is_multiple_of(orders_b[y]))
                .collect()
        })
        .collect();
    let mut ext = Extender::new(a, b, gens, false);
    let mut out = Vec::new();
    ext.run(&candidates, &|_, _, _| true, &mut |map| {
        out.push(Morphism::from_images_unchecked(map.to_vec()));
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, FiniteGroup};

    fn s3() -> FiniteGroup {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        FiniteGroup::from_fn(6, 0, Default::default(), |a, b| {
            let (pa, pb) = (perms[a], perms[b]);
            idx([pb[pa[0]], pb[pa[1]], pb[pa[2]]])
        })
        .unwrap()
    }

    #[test]
    fn small_isomorphisms() {
        let c6 = cyclic(6).unwrap();
        let c2c3 = direct_product(&cyclic(2).unwrap(), &cyclic(3).unwrap()).unwrap();
        let iso = find_isomorphism(&c6, &c2c3).unwrap();
        assert!(iso.is_automorphism(&c6, &c2c3));
        assert!(!is_isomorphic(&c6, &s3()));
        assert!(is_isomorphic(&s3(), &s3()));
        let c4 = cyclic(4).unwrap();
        let v4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert!(!is_isomorphic(&c4, &v4));
    }

    #[test]
    fn automorphism_counts() {
        for (n, phi) in [(1, 1), (2, 1), (7, 6), (9, 6), (12, 4), (15, 8)] {
            let c = cyclic(n).unwrap();
            let mut count = 0;
            all_automorphisms(&c, |_| count += 1);
            assert_eq!(count, phi, "Aut(C_{n})");
        }
        let mut count = 0;
        all_automorphisms(&s3(), |_| count += 1);
        assert_eq!(count, 6);
        let v4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
        let mut count = 0;
        all_automorphisms(&v4, |_| count += 1);
        assert_eq!(count, 6);
    }

    #[test]
    fn hom_counts() {
        // |Hom(C_m, C_n)| = gcd(m, n).
        for (m, n) in [(4, 6), (3, 5), (6, 9), (1, 4)] {
            let homs = homomorphisms(&cyclic(m).unwrap(), &cyclic(n).unwrap());
            assert_eq!(homs.len() as u64, crate::arith::gcd(m as u64, n as u64));
        }
        // Hom(S3, C2): trivial and sign.
        assert_eq!(homomorphisms(&s3(), &cyclic(2).unwrap()).len(), 2);
    }
}
