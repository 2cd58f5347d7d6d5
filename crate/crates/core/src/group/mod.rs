//! Finite groups as Cayley tables, morphisms between them, and the
//! structural queries the rest of the crate is built on.
//!
//! Elements are always identified with indices `0..order`. The [`Group`]
//! trait is the minimal interface (identity, product, inverse) shared by
//! Cayley tables and by the lazily multiplied groups in [`product`], which
//! stand in for groups too large to tabulate.

mod algo;
mod cayley;
mod iso;
mod morphism;
pub mod product;

pub use algo::{
    center, centralizer_of, closure, commutator, conjugacy_classes, derived_subgroup,
    element_order, element_orders, generating_set, is_abelian, is_normal, is_subgroup,
    order_census, sylow, ClassData,
};
pub use cayley::{
    cyclic, direct_product, semidirect, semidirect_checked, AssocCheck, CayleyJson, FiniteGroup,
    MAX_ORDER,
};
pub use iso::{all_automorphisms, find_isomorphism, homomorphisms, is_isomorphic, MapSearchStats};
pub use morphism::{ActionSpec, Morphism};

use std::rc::Rc;
use std::sync::Arc;

use thiserror::Error;

/// A finite group whose elements are the indices `0..order()`.
pub trait Group {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;

    fn inv(&self, a: usize) -> usize {
        let e = self.identity();
        let mut prev = e;
        let mut cur = a;
        while cur != e {
            prev = cur;
            cur = self.mul(cur, a);
        }
        prev
    }

    fn pow(&self, a: usize, mut exp: u64) -> usize {
        let mut acc = self.identity();
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }
}

macro_rules! forward_group {
    ($($ptr:ty),*) => {$(
        impl<G: Group + ?Sized> Group for $ptr {
            fn order(&self) -> usize { (**self).order() }
            fn identity(&self) -> usize { (**self).identity() }
            fn mul(&self, a: usize, b: usize) -> usize { (**self).mul(a, b) }
            fn inv(&self, a: usize) -> usize { (**self).inv(a) }
        }
    )*};
}
forward_group!(&G, Box<G>, Rc<G>, Arc<G>);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("group order {0} exceeds the supported maximum {1}")]
    TooLarge(usize, usize),
    #[error("table has wrong shape: expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("entry {value} at ({row}, {col}) is out of range")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("identity {0} is not a two-sided identity")]
    BadIdentity(usize),
    #[error("table is not a Latin square: row or column {0} repeats an element")]
    NotLatin(usize),
    #[error("associativity fails: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("map is not a homomorphism: f({0}*{1}) != f({0})*f({1})")]
    NotHomomorphism(usize, usize),
    #[error("map has {found} images, expected {expected}")]
    MapLength { expected: usize, found: usize },
    #[error("map is not a bijection")]
    NotBijective,
    #[error("action is not a homomorphism into Aut(H) at actor elements ({0}, {1})")]
    ActionNotHomomorphism(usize, usize),
    #[error("prime {r} does not divide the group order {order}")]
    PrimeNotDividing { r: u64, order: usize },
    #[error("{0}")]
    Invalid(String),
}
