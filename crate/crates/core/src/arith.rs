//! Small number-theoretic helpers over machine integers.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Prime factors of `n` with multiplicity, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Multiplicative order of `a` modulo `m`; `None` when `a` is not a unit.
pub fn mult_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let phi = euler_phi(m);
    let mut ord = phi;
    for (r, _) in factorize(phi) {
        while ord.is_multiple_of(r) && pow_mod(a, ord / r, m) == 1 {
            ord /= r;
        }
    }
    Some(ord)
}

/// Least primitive root modulo a prime `p`.
pub fn least_primitive_root(p: u64) -> u64 {
    debug_assert!(is_prime(p));
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| mult_order(g, p) == Some(p - 1))
        .expect("every prime has a primitive root")
}

/// `Some((p, q))` when `n = p^2 q` with `p != q` prime.
pub fn split_p2q(n: u64) -> Option<(u64, u64)> {
    match factorize(n).as_slice() {
        [(a, 2), (b, 1)] => Some((*a, *b)),
        [(a, 1), (b, 2)] => Some((*b, *a)),
        _ => None,
    }
}

/// Smallest `u` in `2..n` with multiplicative order exactly `k` mod `n`.
pub fn least_unit_of_order(k: u64, n: u64) -> Option<u64> {
    (2..n).find(|&u| mult_order(u, n) == Some(k))
}

/// Discrete logarithm of `x` to base `g` modulo `m`, by scanning powers.
pub fn discrete_log(g: u64, x: u64, m: u64) -> Option<u64> {
    let ord = mult_order(g, m)?;
    let mut acc = 1 % m;
    for e in 0..ord {
        if acc == x % m {
            return Some(e);
        }
        acc = acc * g % m;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_phi() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(48), 16);
    }

    #[test]
    fn orders_and_roots() {
        assert_eq!(mult_order(2, 7), Some(3));
        assert_eq!(mult_order(3, 7), Some(6));
        assert_eq!(mult_order(7, 14), None);
        assert_eq!(least_primitive_root(7), 3);
        assert_eq!(least_primitive_root(11), 2);
        assert_eq!(least_primitive_root(41), 6);
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(discrete_log(3, 2, 7), Some(2));
    }

    #[test]
    fn p2q_split() {
        assert_eq!(split_p2q(12), Some((2, 3)));
        assert_eq!(split_p2q(18), Some((3, 2)));
        assert_eq!(split_p2q(147), Some((7, 3)));
        assert_eq!(split_p2q(8), None);
        assert_eq!(split_p2q(30), None);
        assert_eq!(split_p2q(36), None);
    }
}
