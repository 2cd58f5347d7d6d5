//! 2×2 matrices over `F_p`, the quadratic extension `F_{p^2}`, and the
//! matrices acting on `C_p × C_p` in the catalog.
//!
//! Vectors of `F_p^2` are identified with elements of
//! `direct_product(cyclic(p), cyclic(p))` by `(a, b) ↔ a·p + b`, and a matrix
//! acts on column vectors.

mod field;
mod group;

pub use field::{Fp2, Fp2Element};
pub use group::Gl2Group;

use std::fmt;

use thiserror::Error;

use crate::arith::{is_prime, mult_order};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gl2Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix is singular mod {0}")]
    Singular(u64),
    #[error("q = {q} does not divide p + 1 = {}", p + 1)]
    QNotDividingPPlusOne { p: u64, q: u64 },
    #[error(
        "q = 2 has no order-q element with irreducible characteristic polynomial of determinant 1"
    )]
    QTooSmall,
    #[error("characteristic polynomial is reducible over F_{0}")]
    Reducible(u64),
}

/// An invertible matrix `[[a, b], [c, d]]` over `F_p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixGL2 {
    p: u64,
    m: [u64; 4],
}

impl fmt::Debug for MatrixGL2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[[{a}, {b}], [{c}, {d}]] mod {}", self.p)
    }
}

impl fmt::Display for MatrixGL2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.m;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

/// Reduces a possibly negative integer mod `p`.
pub fn residue(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

impl MatrixGL2 {
    /// Row-major entries, reduced mod `p`.
    pub fn new(p: u64, entries: [u64; 4]) -> Result<Self, Gl2Error> {
        if !is_prime(p) {
            return Err(Gl2Error::NotPrime(p));
        }
        let m = MatrixGL2 {
            p,
            m: entries.map(|x| x % p),
        };
        if m.det() == 0 {
            return Err(Gl2Error::Singular(p));
        }
        Ok(m)
    }

    /// Entries given as signed integers, e.g. `[0, 1, -1, t]`.
    pub fn from_signed(p: u64, entries: [i64; 4]) -> Result<Self, Gl2Error> {
        Self::new(p, entries.map(|x| residue(x, p)))
    }

    pub fn identity(p: u64) -> Self {
        MatrixGL2 { p, m: [1, 0, 0, 1] }
    }

    pub fn scalar(p: u64, c: u64) -> Result<Self, Gl2Error> {
        Self::new(p, [c, 0, 0, c])
    }

    pub fn diag(p: u64, x: u64, y: u64) -> Result<Self, Gl2Error> {
        Self::new(p, [x, 0, 0, y])
    }

    /// The coordinate swap `[[0, 1], [1, 0]]`.
    pub fn swap(p: u64) -> Self {
        MatrixGL2 { p, m: [0, 1, 1, 0] }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn entries(&self) -> [u64; 4] {
        self.m
    }

    pub fn det(&self) -> u64 {
        let [a, b, c, d] = self.m;
        let p = self.p;
        (a * d % p + p - b * c % p) % p
    }

    pub fn trace(&self) -> u64 {
        (self.m[0] + self.m[3]) % self.p
    }

    pub fn is_scalar(&self) -> bool {
        self.m[1] == 0 && self.m[2] == 0 && self.m[0] == self.m[3]
    }

    pub fn mul(&self, o: &MatrixGL2) -> MatrixGL2 {
        debug_assert_eq!(self.p, o.p);
        let p = self.p;
        let [a, b, c, d] = self.m;
        let [e, f, g, h] = o.m;
        MatrixGL2 {
            p,
            m: [
                (a * e + b * g) % p,
                (a * f + b * h) % p,
                (c * e + d * g) % p,
                (c * f + d * h) % p,
            ],
        }
    }

    pub fn inv(&self) -> MatrixGL2 {
        let p = self.p;
        let [a, b, c, d] = self.m;
        let di = crate::arith::inv_mod(self.det(), p).expect("invertible");
        let neg = |x: u64| (p - x) % p;
        MatrixGL2 {
            p,
            m: [d * di % p, neg(b) * di % p, neg(c) * di % p, a * di % p],
        }
    }

    pub fn pow(&self, mut e: u64) -> MatrixGL2 {
        let mut acc = MatrixGL2::identity(self.p);
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `x ↦ M x` on column vectors.
    pub fn apply(&self, v: [u64; 2]) -> [u64; 2] {
        let p = self.p;
        let [a, b, c, d] = self.m;
        [(a * v[0] + b * v[1]) % p, (c * v[0] + d * v[1]) % p]
    }

    /// Action on `C_p × C_p` in the `a·p + b` indexing.
    pub fn apply_index(&self, x: usize) -> usize {
        vector_index(self.p, self.apply(index_vector(self.p, x)))
    }

    /// Permutation of `C_p × C_p` induced by the matrix.
    pub fn permutation(&self) -> Vec<u32> {
        (0..(self.p * self.p) as usize)
            .map(|x| self.apply_index(x) as u32)
            .collect()
    }
}

pub fn index_vector(p: u64, x: usize) -> [u64; 2] {
    [x as u64 / p, x as u64 % p]
}

pub fn vector_index(p: u64, v: [u64; 2]) -> usize {
    (v[0] * p + v[1]) as usize
}

/// Least `k ≥ 1` with `Z^k = I`.
pub fn mat_order(z: &MatrixGL2) -> u64 {
    let id = MatrixGL2::identity(z.p);
    let mut k = 1;
    let mut acc = *z;
    while acc != id {
        acc = acc.mul(z);
        k += 1;
    }
    k
}

/// `sqrt(x)` in `F_p` by search, if `x` is a square.
fn sqrt_mod(x: u64, p: u64) -> Option<u64> {
    (0..p).find(|&s| s * s % p == x % p)
}

/// Roots of `X^2 - tr·X + det` in `F_{p^2}`, with multiplicity. When the
/// polynomial is irreducible over `F_p` the roots are Frobenius conjugates.
pub fn eigenvalues(z: &MatrixGL2) -> [Fp2Element; 2] {
    let p = z.p;
    let f = Fp2::new(p).expect("prime");
    let (t, d) = (z.trace(), z.det());
    if p == 2 {
        let roots: Vec<u64> = (0..2).filter(|&x| (x * x + t * x + d) % 2 == 0).collect();
        return match roots.as_slice() {
            [r] => [f.from_fp(*r), f.from_fp(*r)],
            [r, s] => [f.from_fp(*r), f.from_fp(*s)],
            // X^2 + X + 1, roots ω and ω + 1.
            _ => [f.elem(0, 1), f.elem(1, 1)],
        };
    }
    let inv2 = p.div_ceil(2);
    let disc = (t * t % p + 4 * (p - d)) % p;
    let half_t = f.from_fp(t * inv2 % p);
    match sqrt_mod(disc, p) {
        Some(s) => {
            let s = f.from_fp(s * inv2 % p);
            [half_t + s, half_t - s]
        }
        None => {
            // disc = r·c^2, so sqrt(disc) = c·ω.
            let r = f.nonresidue().expect("odd p");
            let ri = crate::arith::inv_mod(r, p).expect("unit");
            let c = sqrt_mod(disc * ri % p, p).expect("disc/r is a square");
            let s = f.elem(0, c * inv2 % p);
            [half_t + s, half_t - s]
        }
    }
}

/// Whether the characteristic polynomial has no root in `F_p`.
pub fn is_irreducible(z: &MatrixGL2) -> bool {
    !eigenvalues(z)[0].in_prime_field()
}

/// The canonical element of order `q` in `F_{p^2}^×`: `g^((p^2-1)/q)` for
/// the lexicographically least generator `g`.
pub fn canonical_lambda(p: u64, q: u64) -> Result<Fp2Element, Gl2Error> {
    if !is_prime(p) {
        return Err(Gl2Error::NotPrime(p));
    }
    if !is_prime(q) {
        return Err(Gl2Error::NotPrime(q));
    }
    if !(p + 1).is_multiple_of(q) {
        return Err(Gl2Error::QNotDividingPPlusOne { p, q });
    }
    let f = Fp2::new(p).expect("prime");
    Ok(f.least_generator().pow((p * p - 1) / q))
}

/// `[[0, 1], [-1, t]]` with `t = λ + λ^p` for the canonical `λ` of order `q`.
///
/// Needs `q | p + 1` and `q > 2`: for `q = 2` the only element of order 2
/// in the norm-one torus is `-1`, which lies in `F_p`.
pub fn singer_element(p: u64, q: u64) -> Result<MatrixGL2, Gl2Error> {
    let lambda = canonical_lambda(p, q)?;
    if q == 2 {
        return Err(Gl2Error::QTooSmall);
    }
    let t = lambda + lambda.frobenius();
    debug_assert!(t.in_prime_field());
    let z = MatrixGL2::from_signed(p, [0, 1, -1, t.u as i64])?;
    debug_assert_eq!(mat_order(&z), q);
    Ok(z)
}

/// The matrices `uI + vZ ≠ 0`, which form the centralizer of an irreducible
/// `Z` in `GL(2, p)`. Ordered by `(u, v)`.
pub fn centralizer_in_gl2(z: &MatrixGL2) -> Result<Vec<MatrixGL2>, Gl2Error> {
    if !is_irreducible(z) {
        return Err(Gl2Error::Reducible(z.p));
    }
    let p = z.p;
    let [a, b, c, d] = z.m;
    let mut out = Vec::with_capacity((p * p - 1) as usize);
    for u in 0..p {
        for v in 0..p {
            if u == 0 && v == 0 {
                continue;
            }
            let m = MatrixGL2::new(p, [u + v * a, v * b, v * c, u + v * d])
                .expect("uI + vZ is invertible for irreducible Z");
            out.push(m);
        }
    }
    Ok(out)
}

/// Whether `S^{-1} g S = g^p` for all `g` centralizing the irreducible `Z`.
pub fn frobenius_conjugation_check(z: &MatrixGL2, s: &MatrixGL2) -> bool {
    let Ok(cent) = centralizer_in_gl2(z) else {
        return false;
    };
    let si = s.inv();
    cent.iter().all(|g| si.mul(g).mul(s) == g.pow(z.p))
}

/// A generator of the (cyclic) centralizer of an irreducible `Z`.
pub fn centralizer_generator(z: &MatrixGL2) -> Result<MatrixGL2, Gl2Error> {
    let n = z.p * z.p - 1;
    Ok(centralizer_in_gl2(z)?
        .into_iter()
        .find(|m| mat_order(m) == n)
        .expect("centralizer of an irreducible matrix is cyclic"))
}

/// `ζ = g^((p-1)/q)` for the least primitive root `g` mod `p`.
pub fn canonical_zeta(p: u64, q: u64) -> Option<u64> {
    if !is_prime(p) || !(p - 1).is_multiple_of(q) {
        return None;
    }
    let g = crate::arith::least_primitive_root(p);
    let z = crate::arith::pow_mod(g, (p - 1) / q, p);
    debug_assert_eq!(mult_order(z, p), Some(q));
    Some(z)
}
