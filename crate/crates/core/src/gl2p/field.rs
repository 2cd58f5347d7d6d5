use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{is_prime, pow_mod};

/// The field with `p^2` elements, presented as `F_p[ω]`.
///
/// For odd `p`, `ω^2 = r` with `r` the least quadratic non-residue mod `p`.
/// For `p = 2` there is no non-residue and `ω^2 = ω + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp2 {
    p: u64,
    nonres: u64,
}

/// `u + v·ω` in a fixed [`Fp2`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2Element {
    field: Fp2,
    pub u: u64,
    pub v: u64,
}

impl fmt::Debug for Fp2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}w (mod {})", self.u, self.v, self.field.p)
    }
}

impl Fp2 {
    pub fn new(p: u64) -> Option<Self> {
        if !is_prime(p) {
            return None;
        }
        if p == 2 {
            return Some(Fp2 { p, nonres: 0 });
        }
        let nonres = (2..p)
            .find(|&r| pow_mod(r, (p - 1) / 2, p) == p - 1)
            .expect("odd primes have non-residues");
        Some(Fp2 { p, nonres })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// The constant `r` with `ω^2 = r` (odd `p` only).
    pub fn nonresidue(&self) -> Option<u64> {
        (self.p != 2).then_some(self.nonres)
    }

    pub fn elem(&self, u: u64, v: u64) -> Fp2Element {
        Fp2Element {
            field: *self,
            u: u % self.p,
            v: v % self.p,
        }
    }

    pub fn from_fp(&self, u: u64) -> Fp2Element {
        self.elem(u, 0)
    }

    pub fn zero(&self) -> Fp2Element {
        self.elem(0, 0)
    }

    pub fn one(&self) -> Fp2Element {
        self.elem(1, 0)
    }

    /// All nonzero elements in `(u, v)` lexicographic order.
    pub fn units(&self) -> impl Iterator<Item = Fp2Element> + '_ {
        (0..self.p)
            .flat_map(move |u| (0..self.p).map(move |v| self.elem(u, v)))
            .filter(|x| !x.is_zero())
    }

    /// The lexicographically least generator of the multiplicative group.
    pub fn least_generator(&self) -> Fp2Element {
        let n = self.p * self.p - 1;
        self.units()
            .find(|x| x.mult_order() == n)
            .expect("F_{p^2}^* is cyclic")
    }
}

impl Fp2Element {
    pub fn field(&self) -> Fp2 {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.u == 0 && self.v == 0
    }

    /// Whether the element lies in the prime field.
    pub fn in_prime_field(&self) -> bool {
        self.v == 0
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut acc = self.field.one();
        let mut base = self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = self.field.p;
        Some(self.pow(p * p - 2))
    }

    /// `x ↦ x^p`, the generator of `Gal(F_{p^2}/F_p)`.
    pub fn frobenius(self) -> Self {
        let p = self.field.p;
        if p == 2 {
            // ω^2 = ω + 1
            self.field.elem(self.u + self.v, self.v)
        } else {
            // ω^p = ω · r^{(p-1)/2} = -ω
            self.field.elem(self.u, p - self.v)
        }
    }

    /// Multiplicative order; panics on zero.
    pub fn mult_order(&self) -> u64 {
        assert!(!self.is_zero(), "zero has no multiplicative order");
        let n = self.field.p * self.field.p - 1;
        let mut ord = n;
        for (r, _) in crate::arith::factorize(n) {
            while ord.is_multiple_of(r) && self.pow(ord / r) == self.field.one() {
                ord /= r;
            }
        }
        ord
    }
}

impl Add for Fp2Element {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.field, o.field);
        self.field.elem(self.u + o.u, self.v + o.v)
    }
}

impl Neg for Fp2Element {
    type Output = Self;
    fn neg(self) -> Self {
        let p = self.field.p;
        self.field.elem(p - self.u, p - self.v)
    }
}

impl Sub for Fp2Element {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for Fp2Element {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.field, o.field);
        let p = self.field.p;
        let uu = self.u * o.u % p;
        let vv = self.v * o.v % p;
        let cross = (self.u * o.v + self.v * o.u) % p;
        if p == 2 {
            self.field.elem(uu + vv, cross + vv)
        } else {
            self.field.elem(uu + self.field.nonres * vv, cross)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for p in [2u64, 3, 5, 7] {
            let f = Fp2::new(p).unwrap();
            let all: Vec<_> = (0..p).flat_map(|u| (0..p).map(move |v| (u, v))).collect();
            for &(a, b) in &all {
                let x = f.elem(a, b);
                if !x.is_zero() {
                    assert_eq!(x * x.inv().unwrap(), f.one());
                }
                assert_eq!(x.frobenius().frobenius(), x);
                for &(c, d) in &all {
                    let y = f.elem(c, d);
                    assert_eq!(x * y, y * x);
                    // Frobenius is a ring homomorphism.
                    assert_eq!((x * y).frobenius(), x.frobenius() * y.frobenius());
                    assert_eq!((x + y).frobenius(), x.frobenius() + y.frobenius());
                    assert_eq!(x.pow(p), x.frobenius());
                }
            }
            let g = f.least_generator();
            assert_eq!(g.mult_order(), p * p - 1);
        }
    }

    #[test]
    fn presentation_constants() {
        assert_eq!(Fp2::new(3).unwrap().nonresidue(), Some(2));
        assert_eq!(Fp2::new(7).unwrap().nonresidue(), Some(3));
        assert_eq!(Fp2::new(2).unwrap().nonresidue(), None);
        assert!(Fp2::new(9).is_none());
    }
}
