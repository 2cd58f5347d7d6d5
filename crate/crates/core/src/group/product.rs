//! Direct and semidirect products multiplied on demand instead of through a
//! Cayley table, for groups too large to tabulate (the predicted
//! automorphism groups reach order ~10^5).

use std::sync::Arc;

use super::{generating_set, Group, GroupError};

pub type SharedGroup = Arc<dyn Group + Send + Sync>;

/// `H ⋊ K` with the same indexing and product rule as
/// [`semidirect`](super::semidirect): index `h * |K| + k`,
/// `(h1, k1)(h2, k2) = (h1 · α_{k1}(h2), k1 k2)`.
pub struct LazyProduct {
    h: SharedGroup,
    k: SharedGroup,
    /// `action[k * |H| + h] = α_k(h)`; `None` for a direct product.
    action: Option<Vec<u32>>,
}

impl LazyProduct {
    pub fn direct(h: SharedGroup, k: SharedGroup) -> Self {
        LazyProduct { h, k, action: None }
    }

    /// Tabulates `alpha(k, h) = α_k(h)` and checks it is an action by
    /// automorphisms, using generating sets of both factors.
    pub fn semidirect(
        h: SharedGroup,
        k: SharedGroup,
        alpha: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        let (nh, nk) = (h.order(), k.order());
        let mut action = Vec::with_capacity(nh * nk);
        for kk in 0..nk {
            for hh in 0..nh {
                action.push(alpha(kk, hh) as u32);
            }
        }
        let p = LazyProduct {
            h: h.clone(),
            k: k.clone(),
            action: Some(action),
        };
        let h_gens = generating_set(&*h);
        let k_gens = generating_set(&*k);
        let mut seen = vec![0usize; nh];
        for kk in 0..nk {
            for x in 0..nh {
                let y = p.act(kk, x);
                if y >= nh || seen[y] == kk + 1 {
                    return Err(GroupError::NotBijective);
                }
                seen[y] = kk + 1;
                for &g in &h_gens {
                    if p.act(kk, h.mul(x, g)) != h.mul(y, p.act(kk, g)) {
                        return Err(GroupError::NotHomomorphism(x, g));
                    }
                }
                for &g in &k_gens {
                    if p.act(k.mul(kk, g), x) != p.act(kk, p.act(g, x)) {
                        return Err(GroupError::ActionNotHomomorphism(kk, g));
                    }
                }
            }
        }
        if (0..nh).any(|x| p.act(k.identity(), x) != x) {
            return Err(GroupError::ActionNotHomomorphism(
                k.identity(),
                k.identity(),
            ));
        }
        Ok(p)
    }

    #[inline]
    fn act(&self, k: usize, h: usize) -> usize {
        match &self.action {
            Some(a) => a[k * self.h.order() + h] as usize,
            None => h,
        }
    }

    #[inline]
    pub fn element(&self, h: usize, k: usize) -> usize {
        h * self.k.order() + k
    }

    #[inline]
    pub fn pair(&self, x: usize) -> (usize, usize) {
        (x / self.k.order(), x % self.k.order())
    }

    pub fn normal_factor(&self) -> &SharedGroup {
        &self.h
    }

    pub fn complement(&self) -> &SharedGroup {
        &self.k
    }
}

impl Group for LazyProduct {
    fn order(&self) -> usize {
        self.h.order() * self.k.order()
    }

    fn identity(&self) -> usize {
        self.element(self.h.identity(), self.k.identity())
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        let (h1, k1) = self.pair(a);
        let (h2, k2) = self.pair(b);
        self.element(self.h.mul(h1, self.act(k1, h2)), self.k.mul(k1, k2))
    }

    fn inv(&self, a: usize) -> usize {
        // (h, k)^{-1} = (α_{k^{-1}}(h^{-1}), k^{-1})
        let (h, k) = self.pair(a);
        let ki = self.k.inv(k);
        self.element(self.act(ki, self.h.inv(h)), ki)
    }
}
