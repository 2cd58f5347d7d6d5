//! The eleven families of groups of order `p^2 q`, their builders, the
//! enumeration of isomorphism classes for given primes, and the inverse
//! classifier.
//!
//! Every builder produces a semidirect or direct product in the H-major
//! indexing of [`semidirect`](crate::group::semidirect), so the factors can
//! be recovered with [`semidirect_context`] and [`direct_factors`].

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{
    discrete_log, inv_mod, is_prime, least_primitive_root, least_unit_of_order, pow_mod, split_p2q,
};
use crate::gl2p::{self, MatrixGL2};
use crate::group::{
    cyclic, direct_product, element_orders, is_abelian, is_normal, semidirect_checked, sylow,
    ActionSpec, AssocCheck, FiniteGroup, Group, GroupError,
};
use crate::matrix_form::SemidirectContext;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("p and q must be distinct primes, got p = q = {0}")]
    EqualPrimes(u64),
    #[error("unknown type {0}, expected 1..=11")]
    UnknownType(u8),
    #[error("type {ty} needs {condition}, which fails for p = {p}, q = {q}")]
    Condition {
        ty: u8,
        p: u64,
        q: u64,
        condition: &'static str,
    },
    #[error("type 7 with q = 2 is only admitted in complete mode")]
    StrictExtension,
    #[error("parameter s: {0}")]
    BadParameter(String),
    #[error("group order {0} is not of the form p^2 q")]
    NotP2Q(usize),
    #[error("group has no normal Sylow subgroup")]
    NoNormalSylow,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Whether the `q = 2` scalar row is admitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Exactly the rows of the classification table.
    StrictPaper,
    /// Also `(C_p × C_p) ⋊ C_2` with the inversion action, which the table
    /// omits but which is a further class of order `2p^2`.
    #[default]
    Complete,
}

/// One row of the classification table, plus `s` for type 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupSpec {
    #[serde(rename = "type")]
    pub ty: u8,
    pub p: u64,
    pub q: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<u64>,
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "type {} (p={}, q={}", self.ty, self.p, self.q)?;
        if let Some(s) = self.s {
            write!(f, ", s={s}")?;
        }
        write!(f, ")")
    }
}

/// Static description of a table row.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TypeRow {
    #[serde(rename = "type")]
    pub ty: u8,
    pub condition: &'static str,
    pub group: &'static str,
    pub aut: &'static str,
}

pub const TABLE: [TypeRow; 11] = [
    TypeRow {
        ty: 1,
        condition: "",
        group: "C_{p^2} x C_q",
        aut: "C_p x C_{p-1} x C_{q-1}",
    },
    TypeRow {
        ty: 2,
        condition: "p | q-1",
        group: "C_{p^2} |x_p C_q",
        aut: "C_p x Hol(C_q)",
    },
    TypeRow {
        ty: 3,
        condition: "p^2 | q-1",
        group: "C_{p^2} |x_1 C_q",
        aut: "Hol(C_q)",
    },
    TypeRow {
        ty: 4,
        condition: "q | p-1",
        group: "C_{p^2} x| C_q",
        aut: "Hol(C_{p^2})",
    },
    TypeRow {
        ty: 5,
        condition: "",
        group: "C_p x C_p x C_q",
        aut: "GL(2,p) x C_{q-1}",
    },
    TypeRow {
        ty: 6,
        condition: "q | p-1",
        group: "C_p x (C_p x| C_q)",
        aut: "C_{p-1} x Hol(C_p)",
    },
    TypeRow {
        ty: 7,
        condition: "2 < q | p-1",
        group: "(C_p x C_p) x|_S C_q",
        aut: "Hol(C_p x C_p)",
    },
    TypeRow {
        ty: 8,
        condition: "3 < q | p-1",
        group: "(C_p x C_p) x|_D0 C_q",
        aut: "Hol(C_p) x Hol(C_p)",
    },
    TypeRow {
        ty: 9,
        condition: "2 < q | p-1",
        group: "(C_p x C_p) x|_D1 C_q",
        aut: "C_2 |x (Hol(C_p) x Hol(C_p))",
    },
    TypeRow {
        ty: 10,
        condition: "2 < q | p+1",
        group: "(C_p x C_p) x|_C C_q",
        aut: "(C_2 |x C_{p^2-1}) |x (C_p x C_p)",
    },
    TypeRow {
        ty: 11,
        condition: "p | q-1",
        group: "C_p x (C_p |x C_q)",
        aut: "Hol(C_p) x Hol(C_q)",
    },
];

impl GroupSpec {
    pub fn new(ty: u8, p: u64, q: u64) -> Self {
        GroupSpec { ty, p, q, s: None }
    }

    pub fn type8(p: u64, q: u64, s: u64) -> Self {
        GroupSpec {
            ty: 8,
            p,
            q,
            s: Some(s),
        }
    }

    pub fn order(&self) -> u64 {
        self.p * self.p * self.q
    }

    /// The scalar row with `q = 2`, outside the table.
    pub fn is_extension(&self) -> bool {
        self.ty == 7 && self.q == 2
    }

    pub fn row(&self) -> Option<&'static TypeRow> {
        TABLE.get(self.ty.wrapping_sub(1) as usize)
    }

    /// Checks primality, the row condition, and the type-8 parameter.
    pub fn validate(&self, mode: Mode) -> Result<(), CatalogError> {
        let (p, q, ty) = (self.p, self.q, self.ty);
        for r in [p, q] {
            if !is_prime(r) {
                return Err(CatalogError::NotPrime(r));
            }
        }
        if p == q {
            return Err(CatalogError::EqualPrimes(p));
        }
        if !(1..=11).contains(&ty) {
            return Err(CatalogError::UnknownType(ty));
        }
        let fail = |condition| {
            Err(CatalogError::Condition {
                ty,
                p,
                q,
                condition,
            })
        };
        let ok = match ty {
            1 | 5 => true,
            2 | 11 => (q - 1) % p == 0,
            3 => (q - 1) % (p * p) == 0,
            4 | 6 => (p - 1) % q == 0,
            7 => {
                if q == 2 {
                    if mode == Mode::StrictPaper {
                        return Err(CatalogError::StrictExtension);
                    }
                    true
                } else {
                    (p - 1) % q == 0
                }
            }
            8 => q > 3 && (p - 1) % q == 0,
            9 => q > 2 && (p - 1) % q == 0,
            10 => q > 2 && (p + 1) % q == 0,
            _ => unreachable!(),
        };
        if !ok {
            return fail(TABLE[ty as usize - 1].condition);
        }
        match (ty, self.s) {
            (8, None) => Err(CatalogError::BadParameter("type 8 requires s".into())),
            (8, Some(s)) => canonical_s(s, q).map(|_| ()),
            (_, Some(_)) => Err(CatalogError::BadParameter(format!(
                "s is only meaningful for type 8, not type {ty}"
            ))),
            _ => Ok(()),
        }
    }

    /// Whether `s` (if any) is the canonical representative of its class.
    pub fn is_canonical(&self) -> bool {
        match (self.ty, self.s) {
            (8, Some(s)) => canonical_s(s, self.q).is_ok_and(|c| c == s),
            _ => true,
        }
    }

    /// Replaces a type-8 parameter by its canonical representative.
    pub fn canonicalized(mut self) -> Result<Self, CatalogError> {
        if let (8, Some(s)) = (self.ty, self.s) {
            self.s = Some(canonical_s(s, self.q)?);
        }
        Ok(self)
    }
}

/// `min(s, s^{-1} mod q)`; `s` and `s^{-1}` give isomorphic type-8 groups.
pub fn canonical_s(s: u64, q: u64) -> Result<u64, CatalogError> {
    if !is_prime(q) {
        return Err(CatalogError::NotPrime(q));
    }
    let s = s % q;
    if s == 0 || s == 1 || s == q - 1 {
        return Err(CatalogError::BadParameter(format!(
            "s = {s} mod {q} is excluded (must avoid 0, 1, -1)"
        )));
    }
    let si = inv_mod(s, q).expect("q prime");
    Ok(s.min(si))
}

/// The fixed element `ζ` of order `q` mod `p`.
pub fn zeta(p: u64, q: u64) -> Option<u64> {
    gl2p::canonical_zeta(p, q)
}

/// An element of order `r` (a prime power dividing `m - 1`) mod the prime `m`:
/// the corresponding power of the least primitive root.
fn unit_of_order(r: u64, m: u64) -> u64 {
    pow_mod(least_primitive_root(m), (m - 1) / r, m)
}

fn mult_action(n: usize, u: u64) -> Vec<u32> {
    (0..n).map(|x| ((x as u64 * u) % n as u64) as u32).collect()
}

fn elementary(p: u64) -> Result<FiniteGroup, GroupError> {
    let c = cyclic(p as usize)?;
    direct_product(&c, &c)
}

/// The matrix by which the generator `1` of `C_q` acts, for types 6–10.
pub fn action_matrix(spec: &GroupSpec) -> Option<MatrixGL2> {
    let (p, q) = (spec.p, spec.q);
    let m = match spec.ty {
        6 => MatrixGL2::diag(p, 1, zeta(p, q)?),
        7 => MatrixGL2::scalar(p, zeta(p, q)?),
        8 => {
            let z = zeta(p, q)?;
            MatrixGL2::diag(p, z, pow_mod(z, spec.s?, p))
        }
        9 => {
            let z = zeta(p, q)?;
            MatrixGL2::diag(p, z, inv_mod(z, p)?)
        }
        10 => gl2p::singer_element(p, q),
        _ => return None,
    };
    m.ok()
}

/// `H ⋊ K` with the normal Sylow subgroup as `H`, for types 2, 3, 4 and 7–10.
pub fn semidirect_context(spec: &GroupSpec) -> Result<SemidirectContext, CatalogError> {
    semidirect_context_with(spec, AssocCheck::Auto)
}

pub fn semidirect_context_with(
    spec: &GroupSpec,
    check: AssocCheck,
) -> Result<SemidirectContext, CatalogError> {
    spec.validate(Mode::Complete)?;
    let (p, q) = (spec.p, spec.q);
    let (h, k, gen_image) = match spec.ty {
        2 | 3 => {
            let r = if spec.ty == 2 { p } else { p * p };
            let h = cyclic(q as usize)?;
            let k = cyclic((p * p) as usize)?;
            let w = unit_of_order(r, q);
            (h, k, mult_action(q as usize, w))
        }
        4 => {
            let n = p * p;
            let u = least_unit_of_order(q, n).expect("q | p - 1 gives units of order q");
            (
                cyclic(n as usize)?,
                cyclic(q as usize)?,
                mult_action(n as usize, u),
            )
        }
        7..=10 => {
            let m = action_matrix(spec).expect("validated");
            (elementary(p)?, cyclic(q as usize)?, m.permutation())
        }
        ty => {
            return Err(CatalogError::BadParameter(format!(
                "type {ty} is not built as a semidirect product over its Sylow p-subgroup"
            )))
        }
    };
    let action = ActionSpec::from_generators(&h, &k, &[(1, gen_image)])?;
    let g = semidirect_checked(&h, &k, &action, check)?;
    Ok(SemidirectContext::new(h, k, action, g))
}

/// The factors `(H, K)` of the direct decompositions of types 1, 5, 6, 11,
/// with `G = H × K`. Neither pair shares a direct factor.
pub fn direct_factors(spec: &GroupSpec) -> Result<(FiniteGroup, FiniteGroup), CatalogError> {
    spec.validate(Mode::Complete)?;
    let (p, q) = (spec.p, spec.q);
    let cp = || cyclic(p as usize);
    let cq = || cyclic(q as usize);
    Ok(match spec.ty {
        1 => (cyclic((p * p) as usize)?, cq()?),
        5 => (elementary(p)?, cq()?),
        6 => {
            let z = zeta(p, q).expect("validated");
            let (h, k) = (cp()?, cq()?);
            let act = ActionSpec::from_generators(&h, &k, &[(1, mult_action(p as usize, z))])?;
            (cp()?, crate::group::semidirect(&h, &k, &act)?)
        }
        11 => {
            let w = unit_of_order(p, q);
            let (h, k) = (cq()?, cp()?);
            let act = ActionSpec::from_generators(&h, &k, &[(1, mult_action(q as usize, w))])?;
            (cp()?, crate::group::semidirect(&h, &k, &act)?)
        }
        ty => {
            return Err(CatalogError::BadParameter(format!(
                "type {ty} is not a direct product"
            )))
        }
    })
}

pub fn build(spec: &GroupSpec) -> Result<FiniteGroup, CatalogError> {
    build_with(spec, AssocCheck::Auto)
}

/// Builds the group of a spec validated in complete mode.
pub fn build_with(spec: &GroupSpec, check: AssocCheck) -> Result<FiniteGroup, CatalogError> {
    spec.validate(Mode::Complete)?;
    match spec.ty {
        1 | 5 | 6 | 11 => {
            let (h, k) = direct_factors(spec)?;
            let act = ActionSpec::trivial(&h, &k);
            Ok(semidirect_checked(&h, &k, &act, check)?)
        }
        _ => Ok(semidirect_context_with(spec, check)?.into_group()),
    }
}

/// One spec per isomorphism class of order `p^2 q`, ascending by type and
/// then by `s`.
pub fn enumerate(p: u64, q: u64, mode: Mode) -> Result<Vec<GroupSpec>, CatalogError> {
    for r in [p, q] {
        if !is_prime(r) {
            return Err(CatalogError::NotPrime(r));
        }
    }
    if p == q {
        return Err(CatalogError::EqualPrimes(p));
    }
    let mut out = Vec::new();
    for ty in 1..=11u8 {
        if ty == 8 {
            if q > 3 && (p - 1).is_multiple_of(q) {
                for s in 2..q - 1 {
                    if canonical_s(s, q)? == s {
                        out.push(GroupSpec::type8(p, q, s));
                    }
                }
            }
            continue;
        }
        let spec = GroupSpec::new(ty, p, q);
        if spec.validate(mode).is_ok() {
            out.push(spec);
        }
    }
    Ok(out)
}

/// Every spec of order at most `max_order`, sorted by `(p, q, type, s)`.
pub fn specs_up_to(max_order: u64, mode: Mode) -> Vec<GroupSpec> {
    let primes = crate::arith::primes_up_to(max_order / 2);
    let mut out = Vec::new();
    for &p in &primes {
        for &q in &primes {
            if p != q && p * p * q <= max_order {
                out.extend(enumerate(p, q, mode).expect("distinct primes"));
            }
        }
    }
    out.sort_by_key(|s| (s.p, s.q, s.ty, s.s));
    out
}

/// Coordinates of an elementary abelian `p`-subgroup `P` of `g` with respect
/// to a basis `e1, e2`: `coord[x] = (a, b)` with `x = e1^a e2^b`.
struct Basis {
    e: [usize; 2],
    coord: Vec<Option<[u64; 2]>>,
}

impl Basis {
    fn of(g: &FiniteGroup, sub: &[usize], p: u64) -> Self {
        let id = g.identity();
        let e1 = *sub.iter().find(|&&x| x != id).expect("nontrivial");
        let span1: Vec<usize> = (0..p).map(|a| g.pow(e1, a)).collect();
        let e2 = *sub.iter().find(|x| !span1.contains(x)).expect("rank 2");
        let mut coord = vec![None; g.order()];
        for a in 0..p {
            for b in 0..p {
                coord[g.mul(g.pow(e1, a), g.pow(e2, b))] = Some([a, b]);
            }
        }
        Basis { e: [e1, e2], coord }
    }

    /// Matrix of `x ↦ f(x)` on `P`, columns being images of the basis.
    fn matrix(&self, p: u64, f: impl Fn(usize) -> usize) -> MatrixGL2 {
        let c1 = self.coord[f(self.e[0])].expect("P is invariant");
        let c2 = self.coord[f(self.e[1])].expect("P is invariant");
        MatrixGL2::new(p, [c1[0], c2[0], c1[1], c2[1]]).expect("automorphism of P")
    }
}

/// The spec of the class containing `g`.
///
/// A group of the `q = 2` scalar class is reported as type 7 with `q = 2`;
/// [`GroupSpec::is_extension`] tells it apart from the table rows.
pub fn classify(g: &FiniteGroup) -> Result<GroupSpec, CatalogError> {
    let n = g.order();
    let (p, q) = split_p2q(n as u64).ok_or(CatalogError::NotP2Q(n))?;
    let orders = element_orders(g);
    let pp = (p * p) as u32;
    let p_cyclic = orders.iter().any(|&o| o % pp == 0);
    if is_abelian(g) {
        return Ok(GroupSpec::new(if p_cyclic { 1 } else { 5 }, p, q));
    }
    let sp = sylow(g, p)?;
    let sq = sylow(g, q)?;
    if is_normal(g, &sq) && !is_normal(g, &sp) {
        if !p_cyclic {
            return Ok(GroupSpec::new(11, p, q));
        }
        let z = crate::group::center(g).len();
        return Ok(GroupSpec::new(if z == 1 { 3 } else { 2 }, p, q));
    }
    if !is_normal(g, &sp) {
        return Err(CatalogError::NoNormalSylow);
    }
    if p_cyclic {
        return Ok(GroupSpec::new(4, p, q));
    }
    let y = *sq
        .iter()
        .find(|&&x| orders[x] as u64 == q)
        .expect("Sylow q");
    let yi = g.inv(y);
    let basis = Basis::of(g, &sp, p);
    let m = basis.matrix(p, |x| g.mul(g.mul(y, x), yi));
    if m.is_scalar() {
        return Ok(GroupSpec::new(7, p, q));
    }
    let [l, mu] = gl2p::eigenvalues(&m);
    if !l.in_prime_field() {
        return Ok(GroupSpec::new(10, p, q));
    }
    if l.u == 1 || mu.u == 1 {
        return Ok(GroupSpec::new(6, p, q));
    }
    if l.u * mu.u % p == 1 {
        return Ok(GroupSpec::new(9, p, q));
    }
    // Eigenvalues ζ^i, ζ^j; replacing y by y^{1/i} makes them ζ, ζ^{j/i}.
    let z = zeta(p, q).expect("q | p - 1 in the split case");
    let i = discrete_log(z, l.u, p).expect("eigenvalue of order q");
    let j = discrete_log(z, mu.u, p).expect("eigenvalue of order q");
    let s = j * inv_mod(i, q).expect("i is a unit") % q;
    Ok(GroupSpec::type8(p, q, canonical_s(s, q)?))
}
