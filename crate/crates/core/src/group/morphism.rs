use serde::{Deserialize, Serialize};

use super::{generating_set, FiniteGroup, Group, GroupError};

/// A map between two groups, stored as the image of every source element.
///
/// The groups themselves are not owned; checks take them as arguments.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Morphism {
    images: Vec<u32>,
}

impl Morphism {
    /// Validates that `images` defines a homomorphism `source -> target`.
    pub fn new<A: Group + ?Sized, B: Group + ?Sized>(
        source: &A,
        target: &B,
        images: Vec<u32>,
    ) -> Result<Self, GroupError> {
        let m = Morphism { images };
        m.check_homomorphism(source, target)?;
        Ok(m)
    }

    /// Validates that `images` is an automorphism of `g`.
    pub fn automorphism<G: Group + ?Sized>(g: &G, images: Vec<u32>) -> Result<Self, GroupError> {
        let m = Morphism::new(g, g, images)?;
        if !m.is_bijective(g.order()) {
            return Err(GroupError::NotBijective);
        }
        Ok(m)
    }

    pub fn from_images_unchecked(images: Vec<u32>) -> Self {
        Morphism { images }
    }

    pub fn identity<G: Group + ?Sized>(g: &G) -> Self {
        Morphism {
            images: (0..g.order() as u32).collect(),
        }
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn into_images(self) -> Vec<u32> {
        self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `self` followed by `other`: `x ↦ other(self(x))`.
    pub fn then(&self, other: &Morphism) -> Morphism {
        Morphism {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let n = self.images.len();
        let mut inv = vec![u32::MAX; n];
        for (x, &y) in self.images.iter().enumerate() {
            let slot = inv.get_mut(y as usize)?;
            if *slot != u32::MAX {
                return None;
            }
            *slot = x as u32;
        }
        Some(Morphism { images: inv })
    }

    pub fn is_bijective(&self, target_order: usize) -> bool {
        if self.images.len() != target_order {
            return false;
        }
        let mut seen = vec![false; target_order];
        for &y in &self.images {
            let y = y as usize;
            if y >= target_order || seen[y] {
                return false;
            }
            seen[y] = true;
        }
        true
    }

    /// Exhaustive check of `f(xy) = f(x) f(y)` over all pairs.
    pub fn check_homomorphism<A: Group + ?Sized, B: Group + ?Sized>(
        &self,
        source: &A,
        target: &B,
    ) -> Result<(), GroupError> {
        let n = source.order();
        if self.images.len() != n {
            return Err(GroupError::MapLength {
                expected: n,
                found: self.images.len(),
            });
        }
        if let Some(&bad) = self.images.iter().find(|&&y| y as usize >= target.order()) {
            return Err(GroupError::OutOfRange {
                row: 0,
                col: 0,
                value: bad as usize,
            });
        }
        for x in 0..n {
            let fx = self.apply(x);
            for y in 0..n {
                if self.apply(source.mul(x, y)) != target.mul(fx, self.apply(y)) {
                    return Err(GroupError::NotHomomorphism(x, y));
                }
            }
        }
        Ok(())
    }

    /// Homomorphism check against a generating set of the source:
    /// `f(x g) = f(x) f(g)` for all `x` and each generator `g` suffices.
    pub fn check_homomorphism_on<A: Group + ?Sized, B: Group + ?Sized>(
        &self,
        source: &A,
        target: &B,
        source_gens: &[usize],
    ) -> Result<(), GroupError> {
        if self.images.len() != source.order() {
            return Err(GroupError::MapLength {
                expected: source.order(),
                found: self.images.len(),
            });
        }
        for x in 0..source.order() {
            let fx = self.apply(x);
            for &g in source_gens {
                if self.apply(source.mul(x, g)) != target.mul(fx, self.apply(g)) {
                    return Err(GroupError::NotHomomorphism(x, g));
                }
            }
        }
        Ok(())
    }

    pub fn is_automorphism<A: Group + ?Sized, B: Group + ?Sized>(
        &self,
        source: &A,
        target: &B,
    ) -> bool {
        source.order() == target.order()
            && self.is_bijective(target.order())
            && self.check_homomorphism(source, target).is_ok()
    }
}

/// An action of `K` on `H` by automorphisms: one permutation of `H` per
/// element of `K`, with `α_{k1 k2} = α_{k1} ∘ α_{k2}` and `α_e = id`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSpec {
    acted_order: usize,
    actor_order: usize,
    /// `maps[k * |H| + h] = α_k(h)`.
    maps: Vec<u32>,
}

impl ActionSpec {
    /// Validates that every `maps[k]` is an automorphism of `h` and that
    /// `k ↦ maps[k]` is a homomorphism `K -> Aut(H)`.
    pub fn new(h: &FiniteGroup, k: &FiniteGroup, maps: Vec<Vec<u32>>) -> Result<Self, GroupError> {
        if maps.len() != k.order() {
            return Err(GroupError::MapLength {
                expected: k.order(),
                found: maps.len(),
            });
        }
        let h_gens = generating_set(h);
        for m in &maps {
            let m = Morphism { images: m.clone() };
            if !m.is_bijective(h.order()) {
                return Err(GroupError::NotBijective);
            }
            m.check_homomorphism_on(h, h, &h_gens)?;
        }
        let nh = h.order();
        let flat: Vec<u32> = maps.into_iter().flatten().collect();
        let act = ActionSpec {
            acted_order: nh,
            actor_order: k.order(),
            maps: flat,
        };
        for x in 0..nh {
            if act.apply(k.identity(), x) != x {
                return Err(GroupError::ActionNotHomomorphism(
                    k.identity(),
                    k.identity(),
                ));
            }
        }
        let k_gens = generating_set(k);
        for k1 in 0..k.order() {
            for &k2 in &k_gens {
                let k12 = k.mul(k1, k2);
                for x in 0..nh {
                    if act.apply(k12, x) != act.apply(k1, act.apply(k2, x)) {
                        return Err(GroupError::ActionNotHomomorphism(k1, k2));
                    }
                }
            }
        }
        Ok(act)
    }

    pub fn trivial(h: &FiniteGroup, k: &FiniteGroup) -> Self {
        let nh = h.order();
        ActionSpec {
            acted_order: nh,
            actor_order: k.order(),
            maps: (0..k.order()).flat_map(|_| 0..nh as u32).collect(),
        }
    }

    /// Extends generator images `k_i ↦ α_i` to the whole of `K`, then
    /// validates. Fails if the images violate a relation of `K`.
    pub fn from_generators(
        h: &FiniteGroup,
        k: &FiniteGroup,
        gens: &[(usize, Vec<u32>)],
    ) -> Result<Self, GroupError> {
        let nh = h.order();
        let mut maps: Vec<Option<Vec<u32>>> = vec![None; k.order()];
        maps[k.identity()] = Some((0..nh as u32).collect());
        let mut queue = vec![k.identity()];
        while let Some(x) = queue.pop() {
            for (g, alpha) in gens {
                let y = k.mul(x, *g);
                let ax = maps[x].as_ref().expect("visited");
                let composed: Vec<u32> = (0..nh).map(|i| ax[alpha[i] as usize]).collect();
                match &maps[y] {
                    Some(existing) if *existing != composed => {
                        return Err(GroupError::ActionNotHomomorphism(x, *g));
                    }
                    Some(_) => {}
                    None => {
                        maps[y] = Some(composed);
                        queue.push(y);
                    }
                }
            }
        }
        let maps: Option<Vec<Vec<u32>>> = maps.into_iter().collect();
        let maps = maps.ok_or_else(|| {
            GroupError::Invalid("action generators do not generate the acting group".into())
        })?;
        ActionSpec::new(h, k, maps)
    }

    #[inline]
    pub fn apply(&self, k: usize, h: usize) -> usize {
        self.maps[k * self.acted_order + h] as usize
    }

    pub fn map_of(&self, k: usize) -> Morphism {
        Morphism {
            images: self.maps[k * self.acted_order..(k + 1) * self.acted_order].to_vec(),
        }
    }

    pub fn acted_order(&self) -> usize {
        self.acted_order
    }

    pub fn actor_order(&self) -> usize {
        self.actor_order
    }

    /// Elements of `K` acting trivially.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.actor_order)
            .filter(|&k| (0..self.acted_order).all(|h| self.apply(k, h) == h))
            .collect()
    }
}
