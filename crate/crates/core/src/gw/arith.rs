//! Small number-theory helpers: squarefree parts, trial-division factoring,
//! quadratic residuosity modulo a prime.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub fn factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    if let Some(small) = n.to_u64() {
        let mut m = small;
        let mut d = 2u64;
        while d.saturating_mul(d) <= m {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            if e > 0 {
                out.push((BigUint::from(d), e));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if m > 1 {
            out.push((BigUint::from(m), 1));
        }
        return out;
    }
    let mut m = n.clone();
    let mut d = BigUint::from(2u32);
    while &d * &d <= m {
        let mut e = 0;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += 1u32;
    }
    if m > BigUint::one() {
        out.push((m, 1));
    }
    out
}

/// The squarefree integer in the same square class as `n` (sign kept).
pub fn squarefree_part(n: &BigInt) -> BigInt {
    assert!(!n.is_zero(), "squarefree part of zero");
    let mut acc = BigUint::one();
    for (p, e) in factor(n.magnitude()) {
        if e % 2 == 1 {
            acc *= p;
        }
    }
    BigInt::from_biguint(n.sign(), acc)
}

/// Product of two squarefree integers, reduced to its squarefree part.
pub fn squarefree_product(a: &BigInt, b: &BigInt) -> BigInt {
    let g = a.gcd(b);
    (a * b) / (&g * &g)
}

pub fn mod_u64(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

pub fn pow_mod(base: u64, mut e: u64, p: u64) -> u64 {
    let m = p as u128;
    let mut acc: u128 = 1;
    let mut b = base as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc as u64
}

/// Whether the nonzero residue `a` is a square modulo the odd prime `p`.
pub fn is_square_mod(a: u64, p: u64) -> bool {
    debug_assert!(!a.is_multiple_of(p));
    if p == 2 {
        return true;
    }
    pow_mod(a, (p - 1) / 2, p) == 1
}

pub fn smallest_nonsquare(p: u64) -> u64 {
    (2..p)
        .find(|&a| !is_square_mod(a, p))
        .expect("odd prime has a non-square")
}

pub fn sign_of(n: &BigInt) -> i32 {
    match n.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_part(&BigInt::from(4)), BigInt::from(1));
        assert_eq!(squarefree_part(&BigInt::from(-72)), BigInt::from(-2));
        assert_eq!(squarefree_part(&BigInt::from(45)), BigInt::from(5));
        assert_eq!(
            squarefree_product(&BigInt::from(6), &BigInt::from(-2)),
            BigInt::from(-3)
        );
        assert_eq!(
            squarefree_product(&BigInt::from(3), &BigInt::from(3)),
            BigInt::from(1)
        );
    }

    #[test]
    fn primes_and_residues() {
        assert!(is_prime(2) && is_prime(5) && is_prime(101));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(0));
        assert!(is_square_mod(4, 5) && !is_square_mod(2, 5));
        assert_eq!(smallest_nonsquare(7), 3);
        assert_eq!(smallest_nonsquare(5), 2);
        let f = factor(&BigUint::from(360u32));
        assert_eq!(
            f,
            vec![
                (BigUint::from(2u32), 3),
                (BigUint::from(3u32), 2),
                (BigUint::from(5u32), 1)
            ]
        );
    }
}
