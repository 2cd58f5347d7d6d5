//! Automorphism groups by exhaustive search, the automorphism groups
//! predicted by the classification table, and their comparison.
//!
//! Automorphism groups here reach order ~10^5, far past what a Cayley table
//! can hold, so both sides are [`Group`]s multiplied on demand: an
//! [`AutGroup`] composes stored image arrays, and the predicted groups are
//! [`LazyProduct`]s of small tables and matrix groups.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, inv_mod};
use crate::catalog::{self, CatalogError, GroupSpec};
use crate::gl2p::{self, Gl2Group, MatrixGL2};
use crate::group::product::{LazyProduct, SharedGroup};
use crate::group::{
    all_automorphisms, cyclic, direct_product, find_isomorphism, semidirect, ActionSpec,
    FiniteGroup, Group, GroupError, Morphism,
};

#[derive(Debug, Error)]
pub enum AutError {
    #[error("resource bound exceeded: {what} is {value}, limit {limit}")]
    ResourceBound {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Size limits for the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest group whose automorphisms are listed in full.
    pub max_group_order: usize,
    /// Largest group whose automorphisms are only counted.
    pub max_count_order: usize,
    /// Largest automorphism group kept as an element list.
    pub max_materialize: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_group_order: 1000,
            max_count_order: 6000,
            max_materialize: 100_000,
        }
    }
}

impl Bounds {
    pub fn with_max_order(max: usize) -> Self {
        Bounds {
            max_group_order: max,
            max_count_order: max.max(6000),
            ..Bounds::default()
        }
    }
}

/// `Aut(G)` as a group: element `i` is the `i`-th automorphism found, and
/// the product `a·b` is "`a` then `b`".
pub struct AutGroup {
    base_order: usize,
    gens: Vec<usize>,
    /// `images[i * n .. (i + 1) * n]` is automorphism `i`.
    images: Vec<u32>,
    index: HashMap<u128, u32>,
    identity: usize,
}

impl AutGroup {
    fn key_of(&self, img: &[u32]) -> u128 {
        let n = self.base_order as u128;
        self.gens
            .iter()
            .fold(0u128, |acc, &g| acc * n + img[g] as u128)
    }

    pub fn base_order(&self) -> usize {
        self.base_order
    }

    /// Elements of `G` whose images determine an automorphism.
    pub fn determining_set(&self) -> &[usize] {
        &self.gens
    }

    pub fn element(&self, i: usize) -> &[u32] {
        &self.images[i * self.base_order..(i + 1) * self.base_order]
    }

    pub fn morphism(&self, i: usize) -> Morphism {
        Morphism::from_images_unchecked(self.element(i).to_vec())
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        self.images.chunks_exact(self.base_order)
    }

    /// Index of a stored automorphism.
    pub fn index_of(&self, img: &[u32]) -> Option<usize> {
        self.index.get(&self.key_of(img)).map(|&i| i as usize)
    }

    /// The Cayley table under composition, when small enough to tabulate.
    pub fn cayley(&self) -> Result<FiniteGroup, GroupError> {
        FiniteGroup::tabulate(self)
    }
}

impl Group for AutGroup {
    fn order(&self) -> usize {
        self.index.len()
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let (ea, eb) = (self.element(a), self.element(b));
        let n = self.base_order as u128;
        let key = self
            .gens
            .iter()
            .fold(0u128, |acc, &g| acc * n + eb[ea[g] as usize] as u128);
        self.index[&key] as usize
    }

    fn inv(&self, a: usize) -> usize {
        let ea = self.element(a);
        let mut inv = vec![0u32; self.base_order];
        for (x, &y) in ea.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        self.index[&self.key_of(&inv)] as usize
    }
}

/// Number of automorphisms, without storing them.
pub fn count_aut(g: &FiniteGroup, bounds: &Bounds) -> Result<u64, AutError> {
    if g.order() > bounds.max_count_order {
        return Err(AutError::ResourceBound {
            what: "group order for counting",
            value: g.order() as u64,
            limit: bounds.max_count_order as u64,
        });
    }
    let (_, stats) = all_automorphisms(g, |_| {});
    Ok(stats.found)
}

/// Every automorphism of `g`, by backtracking over images of a generating
/// set with pruning on element orders and class sizes.
pub fn brute_aut(g: &FiniteGroup) -> Result<AutGroup, AutError> {
    brute_aut_with(g, &Bounds::default())
}

pub fn brute_aut_with(g: &FiniteGroup, bounds: &Bounds) -> Result<AutGroup, AutError> {
    let n = g.order();
    if n > bounds.max_group_order {
        return Err(AutError::ResourceBound {
            what: "group order",
            value: n as u64,
            limit: bounds.max_group_order as u64,
        });
    }
    let mut images = Vec::new();
    let mut count = 0u64;
    let mut overflow = false;
    let (gens, _) = all_automorphisms(g, |m| {
        count += 1;
        if count <= bounds.max_materialize {
            images.extend_from_slice(m);
        } else {
            overflow = true;
        }
    });
    if overflow {
        return Err(AutError::ResourceBound {
            what: "automorphism count",
            value: count,
            limit: bounds.max_materialize,
        });
    }
    let mut aut = AutGroup {
        base_order: n,
        gens,
        images,
        index: HashMap::with_capacity(count as usize),
        identity: 0,
    };
    for i in 0..count as usize {
        let key = aut.key_of(aut.element(i));
        aut.index.insert(key, i as u32);
    }
    let id: Vec<u32> = (0..n as u32).collect();
    aut.identity = aut.index_of(&id).expect("identity is an automorphism");
    Ok(aut)
}

/// The multiplicative group mod `n` as a table, with the residues in
/// ascending order (index 0 is `1`).
pub fn units_group(n: u64) -> (FiniteGroup, Vec<u64>) {
    let units: Vec<u64> = (1..n.max(2)).filter(|&u| gcd(u, n) == 1).collect();
    let units = if n == 1 { vec![0] } else { units };
    let pos: HashMap<u64, usize> = units.iter().enumerate().map(|(i, &u)| (u, i)).collect();
    let g = FiniteGroup::from_fn(units.len(), 0, Default::default(), |a, b| {
        pos[&(units[a] * units[b] % n.max(1))]
    })
    .expect("units form a group");
    (g, units)
}

/// `C_n ⋊ Aut(C_n)` with `u` acting as `x ↦ u x`.
pub fn hol_cyclic(n: u64) -> Result<LazyProduct, GroupError> {
    let c = cyclic(n as usize)?;
    let (u, units) = units_group(n);
    LazyProduct::semidirect(Arc::new(c), Arc::new(u), move |k, h| {
        (units[k] * h as u64 % n) as usize
    })
}

/// `G ⋊ Aut(G)` with the natural action, as a Cayley table.
pub fn holomorph(c: &FiniteGroup) -> Result<FiniteGroup, AutError> {
    let aut = brute_aut(c)?;
    let hol_order = (c.order() * aut.order()) as u64;
    let limit = crate::group::MAX_ORDER as u64;
    if hol_order > limit {
        return Err(AutError::ResourceBound {
            what: "holomorph order",
            value: hol_order,
            limit,
        });
    }
    let a = aut.cayley()?;
    // Composition "x then y" gives a right action; act by inverses on the
    // left-action side so that k ↦ α_k is a homomorphism.
    let maps: Vec<Vec<u32>> = (0..a.order())
        .map(|k| {
            let ki = aut.inv(k);
            aut.element(ki).to_vec()
        })
        .collect();
    let act = ActionSpec::new(c, &a, maps)?;
    Ok(semidirect(c, &a, &act)?)
}

/// `F_p^2 ⋊ GL(2, p)`.
pub fn hol_elementary(p: u64) -> Result<LazyProduct, GroupError> {
    let e = elementary(p)?;
    let gl = Arc::new(Gl2Group::new(p));
    let gl2 = gl.clone();
    LazyProduct::semidirect(Arc::new(e), gl, move |m, v| gl2.matrix(m).apply_index(v))
}

fn elementary(p: u64) -> Result<FiniteGroup, GroupError> {
    let c = cyclic(p as usize)?;
    direct_product(&c, &c)
}

fn shared<G: Group + Send + Sync + 'static>(g: G) -> SharedGroup {
    Arc::new(g)
}

fn cyc(n: u64) -> Result<SharedGroup, GroupError> {
    Ok(shared(cyclic(n as usize)?))
}

fn direct(a: SharedGroup, b: SharedGroup) -> SharedGroup {
    shared(LazyProduct::direct(a, b))
}

/// `|Aut(G)|` according to the table.
pub fn predicted_order(spec: &GroupSpec) -> u64 {
    let (p, q) = (spec.p, spec.q);
    let hol = |n: u64| n * crate::arith::euler_phi(n);
    let gl2 = (p * p - 1) * (p * p - p);
    match spec.ty {
        1 => p * (p - 1) * (q - 1),
        2 => p * hol(q),
        3 => hol(q),
        4 => hol(p * p),
        5 => gl2 * (q - 1),
        6 => (p - 1) * hol(p),
        7 => p * p * gl2,
        8 => hol(p) * hol(p),
        9 => 2 * hol(p) * hol(p),
        10 => 2 * (p * p - 1) * p * p,
        11 => hol(p) * hol(q),
        _ => 0,
    }
}

/// `(F_p^2 ⋊ diagonal torus) ⋊ C_2`: the `C_2` is the involution pairing
/// `z ↦ z⁻¹` with the coordinate swap, acting on translations by the
/// antidiagonal `M = -S·Z⁻¹` for `Z = diag(ζ, ζ⁻¹)` and on the torus by
/// swapping the diagonal entries.
fn type9_aut(p: u64, q: u64) -> Result<SharedGroup, AutError> {
    let e = Arc::new(elementary(p)?);
    let (u, units) = units_group(p);
    let nu = u.order();
    let torus = Arc::new(direct_product(&u, &u)?);
    let units_t = units.clone();
    let diag = move |t: usize, v: usize| {
        let (i, j) = (t / nu, t % nu);
        let [x, y] = gl2p::index_vector(p, v);
        gl2p::vector_index(p, [units_t[i] * x % p, units_t[j] * y % p])
    };
    let n = Arc::new(LazyProduct::semidirect(e, torus.clone(), diag)?);
    let z = catalog::zeta(p, q).expect("q | p - 1");
    let zi = inv_mod(z, p).expect("unit");
    let m = MatrixGL2::from_signed(p, [0, -(z as i64), -(zi as i64), 0]).expect("invertible");
    let nt = torus.order();
    let n2 = n.clone();
    let swap = move |c: usize, x: usize| {
        if c == 0 {
            return x;
        }
        let (v, t) = (x / nt, x % nt);
        let (i, j) = (t / nu, t % nu);
        n2.element(m.apply_index(v), j * nu + i)
    };
    Ok(shared(LazyProduct::semidirect(n, cyc(2)?, swap)?))
}

/// `F_p^2 ⋊ (C_{p^2-1} ⋊ C_2)`: the cyclic factor is the centralizer of
/// the Singer element, the `C_2` acts on it by `g ↦ g^p` and on `F_p^2` by
/// the coordinate swap.
fn type10_aut(p: u64, q: u64) -> Result<SharedGroup, AutError> {
    let z = gl2p::singer_element(p, q).map_err(|e| GroupError::Invalid(e.to_string()))?;
    let gen = gl2p::centralizer_generator(&z).map_err(|e| GroupError::Invalid(e.to_string()))?;
    let s = MatrixGL2::swap(p);
    let n = p * p - 1;
    let c = cyclic(n as usize)?;
    let c2 = cyclic(2)?;
    let frob = ActionSpec::from_generators(
        &c,
        &c2,
        &[(1, (0..n).map(|j| (j * p % n) as u32).collect())],
    )?;
    let gamma = semidirect(&c, &c2, &frob)?;
    // (j, ε) ↦ G^j S^ε
    let mats: Vec<MatrixGL2> = (0..gamma.order())
        .map(|x| {
            let (j, eps) = (x / 2, x % 2);
            let m = gen.pow(j as u64);
            if eps == 1 {
                m.mul(&s)
            } else {
                m
            }
        })
        .collect();
    let e = Arc::new(elementary(p)?);
    Ok(shared(LazyProduct::semidirect(
        e,
        Arc::new(gamma),
        move |g, v| mats[g].apply_index(v),
    )?))
}

/// The automorphism group named by the table, as an abstract group.
///
/// For the `q = 2` scalar class this is `Hol(C_p × C_p)`, as for type 7.
pub fn predicted_aut(spec: &GroupSpec) -> Result<SharedGroup, AutError> {
    spec.validate(catalog::Mode::Complete)?;
    let (p, q) = (spec.p, spec.q);
    let hol = |n: u64| -> Result<SharedGroup, AutError> { Ok(shared(hol_cyclic(n)?)) };
    let g: SharedGroup = match spec.ty {
        1 => direct(direct(cyc(p)?, cyc(p - 1)?), cyc(q - 1)?),
        2 => direct(cyc(p)?, hol(q)?),
        3 => hol(q)?,
        4 => hol(p * p)?,
        5 => direct(shared(Gl2Group::new(p)), cyc(q - 1)?),
        6 => direct(cyc(p - 1)?, hol(p)?),
        7 => shared(hol_elementary(p)?),
        8 => direct(hol(p)?, hol(p)?),
        9 => type9_aut(p, q)?,
        10 => type10_aut(p, q)?,
        11 => direct(hol(p)?, hol(q)?),
        _ => unreachable!("validated"),
    };
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Order,
    Isomorphism,
}

/// Outcome of comparing the exhaustive automorphism group with the table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub spec: GroupSpec,
    pub brute_order: u64,
    pub predicted_order: u64,
    pub level: Level,
    pub pass: bool,
    /// Set for the `q = 2` scalar class, which is outside the table.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub extension: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

pub fn verify_table_row(spec: &GroupSpec, level: Level) -> Result<VerifyReport, AutError> {
    verify_table_row_with(spec, level, &Bounds::default())
}

/// A mismatch gives a failing report, not an error; errors are reserved for
/// invalid specs and exceeded bounds.
pub fn verify_table_row_with(
    spec: &GroupSpec,
    level: Level,
    bounds: &Bounds,
) -> Result<VerifyReport, AutError> {
    let start = Instant::now();
    spec.validate(catalog::Mode::Complete)?;
    let g = catalog::build(spec)?;
    let predicted = predicted_aut(spec)?;
    let predicted_order = predicted.order() as u64;
    debug_assert_eq!(predicted_order, self::predicted_order(spec));
    let (brute_order, pass, witness) = match level {
        Level::Order => {
            let n = count_aut(&g, bounds)?;
            let ok = n == predicted_order;
            (n, ok, (!ok).then(|| "orders differ".to_string()))
        }
        Level::Isomorphism => {
            let aut = brute_aut_with(&g, bounds)?;
            let n = aut.order() as u64;
            if n != predicted_order {
                (n, false, Some("orders differ".to_string()))
            } else if find_isomorphism(&aut, &*predicted).is_some() {
                (n, true, None)
            } else {
                (
                    n,
                    false,
                    Some("equal orders but not isomorphic".to_string()),
                )
            }
        }
    };
    Ok(VerifyReport {
        spec: *spec,
        brute_order,
        predicted_order,
        level,
        pass,
        extension: spec.is_extension(),
        witness,
        millis: Some(start.elapsed().as_millis() as u64),
    })
}
