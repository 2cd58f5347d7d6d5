//! Automorphisms of `G = H ⋊ K` that leave `H` invariant, written as
//! lower-triangular matrices `[[a, 0], [b, d]]`: `a ∈ Aut(H)`, `d ∈ Aut(K)`
//! and a crossed map `b: K → H`, acting by `h·k ↦ a(h)·b(k)·d(k)`.
//!
//! With `α_k(h) = k h k⁻¹` such a triple defines an automorphism iff
//!
//! * `b(xy) = b(x) · α_{d(x)}(b(y))` (crossed law), and
//! * `a(α_k(h)) = b(k) · α_{d(k)}(a(h)) · b(k)⁻¹` (compatibility; for
//!   abelian `H` this is `a ∘ α_k = α_{d(k)} ∘ a`).
//!
//! Direct products `H × K` get the full `[[a, c], [b, d]]` form instead.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gl2p::{vector_index, MatrixGL2};
use crate::group::{
    all_automorphisms, center, element_order, generating_set, homomorphisms, is_abelian,
    ActionSpec, FiniteGroup, Group, GroupError, Morphism,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixFormError {
    #[error("automorphism moves H: element {element} of H maps outside H, to {image}")]
    NotInvariant { element: usize, image: usize },
    #[error("induced map is not a homomorphism: f({x}·{y}) = {lhs} but f({x})·f({y}) = {rhs}")]
    NotHomomorphism {
        x: usize,
        y: usize,
        lhs: usize,
        rhs: usize,
    },
    #[error("induced map is not bijective")]
    NotBijective,
    #[error("crossed law fails at x = {x}, y = {y}")]
    CrossedLaw { x: usize, y: usize },
    #[error("a and d are incompatible at h = {h}, k = {k}")]
    Compatibility { h: usize, k: usize },
    #[error("Y fixes the non-identity element {0}, so b is not determined by b0")]
    FixedPoint(usize),
    #[error("b0 does not extend: b(z^n) = {0} is not the identity")]
    NotWellDefined(usize),
    #[error("K is not cyclic")]
    NotCyclic,
    #[error("not of direct matrix form: {0}")]
    NotDecomposable(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// `G = H ⋊ K` together with its factors, in H-major indexing:
/// element `h * |K| + k` is the product `h·k`.
#[derive(Debug, Clone)]
pub struct SemidirectContext {
    h: FiniteGroup,
    k: FiniteGroup,
    action: ActionSpec,
    g: FiniteGroup,
    h_gens: Vec<usize>,
    k_gens: Vec<usize>,
    g_gens: Vec<usize>,
}

impl SemidirectContext {
    /// `g` must be `semidirect(&h, &k, &action)`.
    pub fn new(h: FiniteGroup, k: FiniteGroup, action: ActionSpec, g: FiniteGroup) -> Self {
        debug_assert_eq!(g.order(), h.order() * k.order());
        SemidirectContext {
            h_gens: generating_set(&h),
            k_gens: generating_set(&k),
            g_gens: generating_set(&g),
            h,
            k,
            action,
            g,
        }
    }

    pub fn h(&self) -> &FiniteGroup {
        &self.h
    }

    pub fn k(&self) -> &FiniteGroup {
        &self.k
    }

    pub fn action(&self) -> &ActionSpec {
        &self.action
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.g
    }

    pub fn into_group(self) -> FiniteGroup {
        self.g
    }

    #[inline]
    pub fn element(&self, h: usize, k: usize) -> usize {
        h * self.k.order() + k
    }

    #[inline]
    pub fn pair(&self, x: usize) -> (usize, usize) {
        (x / self.k.order(), x % self.k.order())
    }

    /// A generator of `K` when it is cyclic.
    pub fn k_generator(&self) -> Option<usize> {
        let n = self.k.order();
        (0..n).find(|&x| element_order(&self.k, x) == n)
    }
}

/// `(a, b, d)` with `a ∈ Aut(H)`, `b: K → H`, `d ∈ Aut(K)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangularAut {
    pub a: Morphism,
    pub d: Morphism,
    pub b: Vec<u32>,
}

impl TriangularAut {
    pub fn identity(ctx: &SemidirectContext) -> Self {
        TriangularAut {
            a: Morphism::identity(ctx.h()),
            d: Morphism::identity(ctx.k()),
            b: vec![ctx.h().identity() as u32; ctx.k().order()],
        }
    }

    #[inline]
    pub fn b_of(&self, k: usize) -> usize {
        self.b[k] as usize
    }

    /// Checks the crossed law over all pairs and compatibility over all of
    /// `H` and a generating set of `K`.
    pub fn validate(&self, ctx: &SemidirectContext) -> Result<(), MatrixFormError> {
        let (h, k) = (ctx.h(), ctx.k());
        let is_aut = |m: &Morphism, g: &FiniteGroup, gens: &[usize]| {
            m.is_bijective(g.order()) && m.check_homomorphism_on(g, g, gens).is_ok()
        };
        if !is_aut(&self.a, h, &ctx.h_gens)
            || !is_aut(&self.d, k, &ctx.k_gens)
            || self.b.len() != k.order()
        {
            return Err(MatrixFormError::NotBijective);
        }
        for x in 0..k.order() {
            let dx = self.d.apply(x);
            for y in 0..k.order() {
                let lhs = self.b_of(k.mul(x, y));
                let rhs = h.mul(self.b_of(x), ctx.action().apply(dx, self.b_of(y)));
                if lhs != rhs {
                    return Err(MatrixFormError::CrossedLaw { x, y });
                }
            }
        }
        for &kk in &ctx.k_gens {
            let bk = self.b_of(kk);
            let bki = h.inv(bk);
            let dk = self.d.apply(kk);
            for hh in 0..h.order() {
                let lhs = self.a.apply(ctx.action().apply(kk, hh));
                let rhs = h.mul(h.mul(bk, ctx.action().apply(dk, self.a.apply(hh))), bki);
                if lhs != rhs {
                    return Err(MatrixFormError::Compatibility { h: hh, k: kk });
                }
            }
        }
        Ok(())
    }

    /// `self` followed by `other`, computed on the components:
    /// `a = a1;a2`, `d = d1;d2`, `b(k) = a2(b1(k)) · b2(d1(k))`.
    pub fn then(&self, other: &TriangularAut, ctx: &SemidirectContext) -> TriangularAut {
        let h = ctx.h();
        let b = (0..ctx.k().order())
            .map(|k| {
                let x = other.a.apply(self.b_of(k));
                h.mul(x, other.b_of(self.d.apply(k))) as u32
            })
            .collect();
        TriangularAut {
            a: self.a.then(&other.a),
            d: self.d.then(&other.d),
            b,
        }
    }
}

/// The images of `h·k ↦ a(h)·b(k)·d(k)`, unchecked.
fn induced_images(ctx: &SemidirectContext, t: &TriangularAut) -> Vec<u32> {
    let (h, k) = (ctx.h(), ctx.k());
    let mut images = vec![0u32; ctx.group().order()];
    for hh in 0..h.order() {
        let ah = t.a.apply(hh);
        for kk in 0..k.order() {
            let x = ctx.element(h.mul(ah, t.b_of(kk)), t.d.apply(kk));
            images[ctx.element(hh, kk)] = x as u32;
        }
    }
    images
}

/// The automorphism of `G` induced by a triple, checked to be one.
pub fn triangular_to_aut(
    ctx: &SemidirectContext,
    t: &TriangularAut,
) -> Result<Morphism, MatrixFormError> {
    let g = ctx.group();
    if t.a.len() != ctx.h().order() || t.d.len() != ctx.k().order() || t.b.len() != ctx.k().order()
    {
        return Err(GroupError::MapLength {
            expected: ctx.h().order(),
            found: t.a.len(),
        }
        .into());
    }
    let m = Morphism::from_images_unchecked(induced_images(ctx, t));
    if !m.is_bijective(g.order()) {
        return Err(MatrixFormError::NotBijective);
    }
    for x in 0..g.order() {
        let fx = m.apply(x);
        for &y in &ctx.g_gens {
            let lhs = m.apply(g.mul(x, y));
            let rhs = g.mul(fx, m.apply(y));
            if lhs != rhs {
                return Err(MatrixFormError::NotHomomorphism { x, y, lhs, rhs });
            }
        }
    }
    Ok(m)
}

/// The triple of an automorphism with `φ(H) = H`: `a` is the restriction
/// to `H`; writing `φ(k) = b(k)·d(k)` in `H·K` gives `b` and `d`.
pub fn decompose_aut(
    ctx: &SemidirectContext,
    phi: &Morphism,
) -> Result<TriangularAut, MatrixFormError> {
    let (h, k) = (ctx.h(), ctx.k());
    let (eh, ek) = (h.identity(), k.identity());
    let mut a = Vec::with_capacity(h.order());
    for hh in 0..h.order() {
        let x = ctx.element(hh, ek);
        let (ph, pk) = ctx.pair(phi.apply(x));
        if pk != ek {
            return Err(MatrixFormError::NotInvariant {
                element: x,
                image: phi.apply(x),
            });
        }
        a.push(ph as u32);
    }
    let mut b = Vec::with_capacity(k.order());
    let mut d = Vec::with_capacity(k.order());
    for kk in 0..k.order() {
        let (ph, pk) = ctx.pair(phi.apply(ctx.element(eh, kk)));
        b.push(ph as u32);
        d.push(pk as u32);
    }
    Ok(TriangularAut {
        a: Morphism::from_images_unchecked(a),
        d: Morphism::from_images_unchecked(d),
        b,
    })
}

/// The unique crossed map with `b(z) = b0`, for `K = ⟨z⟩` and
/// `Y = α_{d(z)}` fixing only the identity:
/// `b(z^j) = b0 · Y(b0) · … · Y^{j-1}(b0)`.
pub fn b_from_b0(
    ctx: &SemidirectContext,
    b0: usize,
    d: &Morphism,
) -> Result<Vec<u32>, MatrixFormError> {
    let z = ctx.k_generator().ok_or(MatrixFormError::NotCyclic)?;
    let y = d.apply(z);
    let h = ctx.h();
    if let Some(fixed) =
        (0..h.order()).find(|&x| x != h.identity() && ctx.action().apply(y, x) == x)
    {
        return Err(MatrixFormError::FixedPoint(fixed));
    }
    crossed_from_generator(ctx, z, y, b0)
}

/// Runs the recursion `b(z^{j+1}) = b(z^j) · Y^j(b0)` around the cycle of
/// `z` and checks that it closes up.
fn crossed_from_generator(
    ctx: &SemidirectContext,
    z: usize,
    dz: usize,
    b0: usize,
) -> Result<Vec<u32>, MatrixFormError> {
    let (h, k) = (ctx.h(), ctx.k());
    let n = k.order();
    let mut b = vec![0u32; n];
    let mut zj = k.identity();
    let mut cur = h.identity();
    let mut term = b0;
    for _ in 0..n {
        b[zj] = cur as u32;
        cur = h.mul(cur, term);
        term = ctx.action().apply(dz, term);
        zj = k.mul(zj, z);
    }
    if cur != h.identity() {
        return Err(MatrixFormError::NotWellDefined(cur));
    }
    Ok(b)
}

/// `1 + Y + … + Y^{q-1} = 0` as a matrix over `F_p`.
pub fn geometric_sum_is_zero(y: &MatrixGL2, q: u64) -> bool {
    let p = y.p();
    let mut sum = [0u64; 4];
    let mut pow = MatrixGL2::identity(p);
    for _ in 0..q {
        for (s, e) in sum.iter_mut().zip(pow.entries()) {
            *s = (*s + e) % p;
        }
        pow = pow.mul(y);
    }
    sum == [0; 4]
}

/// The same identity for an automorphism `y` of an abelian group `h`:
/// `x · y(x) · … · y^{q-1}(x)` is the identity for every `x`.
pub fn geometric_sum_is_zero_on(h: &FiniteGroup, y: &Morphism, q: u64) -> bool {
    (0..h.order()).all(|x| {
        let mut acc = h.identity();
        let mut term = x;
        for _ in 0..q {
            acc = h.mul(acc, term);
            term = y.apply(term);
        }
        acc == h.identity()
    })
}

/// Visits every valid triple, in order of `(a, d, b0)`. `K` must be cyclic.
pub fn for_each_triangular(
    ctx: &SemidirectContext,
    mut visit: impl FnMut(&TriangularAut),
) -> Result<(), MatrixFormError> {
    let z = ctx.k_generator().ok_or(MatrixFormError::NotCyclic)?;
    let (h, k) = (ctx.h(), ctx.k());
    let abelian = is_abelian(h);
    let mut aut_h = Vec::new();
    all_automorphisms(h, |m| aut_h.push(m.to_vec()));
    let mut aut_k = Vec::new();
    all_automorphisms(k, |m| aut_k.push(m.to_vec()));
    for a in &aut_h {
        for d in &aut_k {
            let dz = d[z] as usize;
            if abelian
                && (0..h.order()).any(|x| {
                    a[ctx.action().apply(z, x)] as usize != ctx.action().apply(dz, a[x] as usize)
                })
            {
                continue;
            }
            for b0 in 0..h.order() {
                let Ok(b) = crossed_from_generator(ctx, z, dz, b0) else {
                    continue;
                };
                let t = TriangularAut {
                    a: Morphism::from_images_unchecked(a.clone()),
                    d: Morphism::from_images_unchecked(d.clone()),
                    b,
                };
                if abelian || t.validate(ctx).is_ok() {
                    visit(&t);
                }
            }
        }
    }
    Ok(())
}

pub fn count_triangular(ctx: &SemidirectContext) -> Result<u64, MatrixFormError> {
    let mut n = 0;
    for_each_triangular(ctx, |_| n += 1)?;
    Ok(n)
}

/// `{d ∈ Aut(K) : k⁻¹ d(k) acts trivially on H for all k}`.
pub fn s_subgroup(ctx: &SemidirectContext) -> Vec<Morphism> {
    let k = ctx.k();
    let kernel = ctx.action().kernel();
    let mut in_kernel = vec![false; k.order()];
    for x in kernel {
        in_kernel[x] = true;
    }
    let mut out = Vec::new();
    all_automorphisms(k, |d| {
        if (0..k.order()).all(|x| in_kernel[k.mul(k.inv(x), d[x] as usize)]) {
            out.push(Morphism::from_images_unchecked(d.to_vec()));
        }
    });
    out
}

/// Matrix of an automorphism of `C_p × C_p` (in `a·p + b` indexing)
/// acting on column vectors.
pub fn matrix_of(p: u64, a: &Morphism) -> Result<MatrixGL2, MatrixFormError> {
    let c1 = crate::gl2p::index_vector(p, a.apply(vector_index(p, [1, 0])));
    let c2 = crate::gl2p::index_vector(p, a.apply(vector_index(p, [0, 1])));
    let m = MatrixGL2::new(p, [c1[0], c2[0], c1[1], c2[1]])
        .map_err(|e| MatrixFormError::NotDecomposable(e.to_string()))?;
    if m.permutation() != a.images() {
        return Err(MatrixFormError::NotDecomposable("map is not linear".into()));
    }
    Ok(m)
}

/// `[[a, c], [b, d]]` for `G = H × K`: `h ↦ (a(h), c(h))`, `k ↦ (b(k), d(k))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectAutMatrix {
    pub a: Morphism,
    pub b: Vec<u32>,
    pub c: Vec<u32>,
    pub d: Morphism,
}

/// Reads off the four components of an automorphism of `H × K` (H-major
/// indexing) and checks each has the required shape. Only meaningful when
/// `H` and `K` share no direct factor, which the caller asserts.
pub fn direct_aut_matrix(
    phi: &Morphism,
    h: &FiniteGroup,
    k: &FiniteGroup,
) -> Result<DirectAutMatrix, MatrixFormError> {
    let nk = k.order();
    let el = |x: usize, y: usize| x * nk + y;
    let (eh, ek) = (h.identity(), k.identity());
    let (mut a, mut c) = (Vec::new(), Vec::new());
    for x in 0..h.order() {
        let img = phi.apply(el(x, ek));
        a.push((img / nk) as u32);
        c.push((img % nk) as u32);
    }
    let (mut b, mut d) = (Vec::new(), Vec::new());
    for y in 0..nk {
        let img = phi.apply(el(eh, y));
        b.push((img / nk) as u32);
        d.push((img % nk) as u32);
    }
    let a = Morphism::from_images_unchecked(a);
    let d = Morphism::from_images_unchecked(d);
    let bad = |what: &str| MatrixFormError::NotDecomposable(what.to_string());
    if !a.is_automorphism(h, h) {
        return Err(bad("a is not an automorphism of H"));
    }
    if !d.is_automorphism(k, k) {
        return Err(bad("d is not an automorphism of K"));
    }
    let zh = center(h);
    let zk = center(k);
    let bm = Morphism::from_images_unchecked(b.clone());
    let cm = Morphism::from_images_unchecked(c.clone());
    if bm.check_homomorphism(k, h).is_err()
        || b.iter().any(|x| zh.binary_search(&(*x as usize)).is_err())
    {
        return Err(bad("b is not a homomorphism K -> Z(H)"));
    }
    if cm.check_homomorphism(h, k).is_err()
        || c.iter().any(|x| zk.binary_search(&(*x as usize)).is_err())
    {
        return Err(bad("c is not a homomorphism H -> Z(K)"));
    }
    Ok(DirectAutMatrix { a, b, c, d })
}

/// `h·k ↦ (a(h) b(k), c(h) d(k))`.
pub fn direct_to_aut(m: &DirectAutMatrix, h: &FiniteGroup, k: &FiniteGroup) -> Morphism {
    let nk = k.order();
    let mut images = vec![0u32; h.order() * nk];
    for x in 0..h.order() {
        for y in 0..nk {
            let hh = h.mul(m.a.apply(x), m.b[y] as usize);
            let kk = k.mul(m.c[x] as usize, m.d.apply(y));
            images[x * nk + y] = (hh * nk + kk) as u32;
        }
    }
    Morphism::from_images_unchecked(images)
}

/// `|Aut H| · |Aut K| · |Hom(K, Z(H))| · |Hom(H, Z(K))|`, which is
/// `|Aut(H × K)|` when the factors share no direct factor.
pub fn count_direct_quadruples(h: &FiniteGroup, k: &FiniteGroup) -> u64 {
    let count_aut = |g: &FiniteGroup| {
        let mut n = 0u64;
        all_automorphisms(g, |_| n += 1);
        n
    };
    let homs_into_center = |src: &FiniteGroup, dst: &FiniteGroup| {
        let z = center(dst);
        homomorphisms(src, dst)
            .iter()
            .filter(|m| {
                m.images()
                    .iter()
                    .all(|x| z.binary_search(&(*x as usize)).is_ok())
            })
            .count() as u64
    };
    count_aut(h) * count_aut(k) * homs_into_center(k, h) * homs_into_center(h, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{semidirect_context, GroupSpec};
    use crate::group::cyclic;

    #[test]
    fn identity_round_trip() {
        let ctx = semidirect_context(&GroupSpec::new(4, 3, 2)).unwrap();
        let t = TriangularAut::identity(&ctx);
        let m = triangular_to_aut(&ctx, &t).unwrap();
        assert_eq!(m, Morphism::identity(ctx.group()));
        assert_eq!(decompose_aut(&ctx, &m).unwrap(), t);
    }

    #[test]
    fn squaring_on_c9_commutes_with_inversion() {
        // Type 4 at (3, 2) is the dihedral group of order 18; a: x -> 2x
        // commutes with x -> -x.
        let ctx = semidirect_context(&GroupSpec::new(4, 3, 2)).unwrap();
        let a =
            Morphism::automorphism(ctx.h(), (0..9).map(|x| (2 * x % 9) as u32).collect()).unwrap();
        let t = TriangularAut {
            a,
            ..TriangularAut::identity(&ctx)
        };
        assert!(t.validate(&ctx).is_ok());
        assert!(triangular_to_aut(&ctx, &t).is_ok());
    }

    #[test]
    fn incompatible_triple_is_reported() {
        // Type 2 at (2, 5): a = identity but d an automorphism of C_4 that
        // does not preserve the action kernel would violate compatibility.
        let ctx = semidirect_context(&GroupSpec::new(2, 2, 5)).unwrap();
        let a =
            Morphism::automorphism(ctx.h(), (0..5).map(|x| (2 * x % 5) as u32).collect()).unwrap();
        let bad_b: Vec<u32> = (0..4).map(|k| if k == 0 { 0 } else { 1 }).collect();
        let t = TriangularAut {
            a,
            b: bad_b,
            ..TriangularAut::identity(&ctx)
        };
        assert!(t.validate(&ctx).is_err());
        assert!(triangular_to_aut(&ctx, &t).is_err());
    }

    #[test]
    fn geometric_sums() {
        let y = MatrixGL2::scalar(11, 3).unwrap();
        assert!(geometric_sum_is_zero(&y, 5));
        assert!(!geometric_sum_is_zero(&MatrixGL2::identity(11), 5));
        // Multiplication by 4 on C_5 has order 2 (type 2 at p = 2, q = 5).
        let c5 = cyclic(5).unwrap();
        let y = Morphism::automorphism(&c5, (0..5).map(|x| (4 * x % 5) as u32).collect()).unwrap();
        assert!(geometric_sum_is_zero_on(&c5, &y, 2));
    }

    #[test]
    fn b0_identity_gives_trivial_b() {
        let ctx = semidirect_context(&GroupSpec::new(7, 7, 3)).unwrap();
        let d = Morphism::identity(ctx.k());
        let b = b_from_b0(&ctx, ctx.h().identity(), &d).unwrap();
        assert!(b.iter().all(|&x| x as usize == ctx.h().identity()));
        let b = b_from_b0(&ctx, 10, &d).unwrap();
        let t = TriangularAut {
            b,
            ..TriangularAut::identity(&ctx)
        };
        assert!(triangular_to_aut(&ctx, &t).is_ok());
    }

    #[test]
    fn fixed_points_rejected() {
        let h = cyclic(7).unwrap();
        let k = cyclic(3).unwrap();
        let act = ActionSpec::trivial(&h, &k);
        let g = crate::group::semidirect(&h, &k, &act).unwrap();
        let ctx = SemidirectContext::new(h, k, act, g);
        let d = Morphism::identity(ctx.k());
        assert_eq!(b_from_b0(&ctx, 1, &d), Err(MatrixFormError::FixedPoint(1)));
    }

    #[test]
    fn direct_counts() {
        let c3 = cyclic(3).unwrap();
        let c4 = cyclic(4).unwrap();
        assert_eq!(count_direct_quadruples(&c3, &c4), 4);
    }

    #[test]
    fn s_subgroup_of_type_2() {
        let ctx = semidirect_context(&GroupSpec::new(2, 3, 7)).unwrap();
        let s = s_subgroup(&ctx);
        assert_eq!(s.len(), 3);
        // Generated by x -> x^{1+p}.
        assert!(s.iter().any(|d| d.apply(1) == 4));
        let ctx = semidirect_context(&GroupSpec::new(3, 2, 5)).unwrap();
        assert_eq!(s_subgroup(&ctx).len(), 1);
    }
}
