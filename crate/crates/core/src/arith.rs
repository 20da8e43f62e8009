//! Exact integer primitives: the odd prime `p`, checked powers, and the
//! two indexing functions `j_kt` and `x_ak` everything else is built on.
//!
//! All counting results use [`Count`] (arbitrary precision); structural
//! coordinates use `u64` with overflow detection.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Exact non-negative counter. Never produced by floating point.
pub type Count = BigUint;

/// An odd prime, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddPrime(u64);

impl OddPrime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        Ok(OddPrime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// (p - 1) / 2, the threshold used by the descent conventions.
    pub fn half(self) -> u64 {
        (self.0 - 1) / 2
    }
}

impl std::fmt::Display for OddPrime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn is_prime(n: u64) -> bool {
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

/// `base^exp` in u64, failing loudly on overflow.
pub fn pow_checked(base: u64, exp: u64, ctx: &'static str) -> Result<u64> {
    let exp = u32::try_from(exp).map_err(|_| Error::Overflow(ctx))?;
    base.checked_pow(exp).ok_or(Error::Overflow(ctx))
}

/// `base^exp` as an exact big integer.
pub fn big_pow(base: u64, exp: u64) -> Count {
    BigUint::from(base).pow(u32::try_from(exp).expect("exponent fits u32"))
}

/// Sum of the geometric series 1 + p + ... + p^(k-1); zero when k = 0.
pub fn geom_sum(p: OddPrime, k: u64) -> Result<u64> {
    let pk = pow_checked(p.get(), k, "geom_sum")?;
    Ok((pk - 1) / (p.get() - 1))
}

/// t * (1 + p + ... + p^(k-1)) for 0 <= t <= p-1 and k >= 1.
pub fn j_kt(p: OddPrime, k: u64, t: u64) -> Result<u64> {
    if k < 1 {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            max: u64::MAX,
        });
    }
    if t > p.get() - 1 {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            max: p.get() - 1,
        });
    }
    geom_sum(p, k)?
        .checked_mul(t)
        .ok_or(Error::Overflow("j_kt"))
}

/// p^k * (a*p - (a+1)) for a >= 1, k >= 0.
pub fn x_ak(p: OddPrime, a: u64, k: u64) -> Result<u64> {
    if a < 1 {
        return Err(Error::OutOfRange {
            what: "a",
            value: a,
            max: u64::MAX,
        });
    }
    let pk = pow_checked(p.get(), k, "x_ak")?;
    let inner = a
        .checked_mul(p.get())
        .and_then(|ap| ap.checked_sub(a + 1))
        .ok_or(Error::Overflow("x_ak"))?;
    pk.checked_mul(inner).ok_or(Error::Overflow("x_ak"))
}

/// Base-p digits of `n`, least significant first, padded to `len`.
pub fn base_p_digits(n: u64, p: u64, len: usize) -> Vec<u64> {
    let mut digits = Vec::with_capacity(len);
    let mut n = n;
    for _ in 0..len {
        digits.push(n % p);
        n /= p;
    }
    debug_assert_eq!(n, 0, "value does not fit in {len} base-{p} digits");
    digits
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> OddPrime {
        OddPrime::new(v).unwrap()
    }

    #[test]
    fn odd_prime_validation() {
        assert!(OddPrime::new(3).is_ok());
        assert!(OddPrime::new(5).is_ok());
        assert!(OddPrime::new(61).is_ok());
        assert_eq!(OddPrime::new(2), Err(Error::NotOddPrime(2)));
        assert_eq!(OddPrime::new(4), Err(Error::NotOddPrime(4)));
        assert_eq!(OddPrime::new(9), Err(Error::NotOddPrime(9)));
        assert_eq!(OddPrime::new(1), Err(Error::NotOddPrime(1)));
    }

    #[test]
    fn geom_sum_values() {
        assert_eq!(geom_sum(p(5), 0).unwrap(), 0);
        assert_eq!(geom_sum(p(5), 2).unwrap(), 6);
        assert_eq!(geom_sum(p(3), 3).unwrap(), 13);
    }

    #[test]
    fn j_kt_values() {
        assert_eq!(j_kt(p(5), 2, 0).unwrap(), 0);
        assert_eq!(j_kt(p(5), 2, 2).unwrap(), 12);
        assert_eq!(j_kt(p(3), 1, 1).unwrap(), 1);
        assert!(j_kt(p(5), 2, 5).is_err());
        assert!(j_kt(p(5), 0, 1).is_err());
    }

    #[test]
    fn x_ak_values() {
        assert_eq!(x_ak(p(5), 6, 2).unwrap(), 575);
        assert_eq!(x_ak(p(5), 3, 2).unwrap(), 275);
        assert_eq!(x_ak(p(3), 1, 0).unwrap(), 1);
        assert!(x_ak(p(3), 0, 0).is_err());
    }

    #[test]
    fn digits_round_trip() {
        let d = base_p_digits(9, 5, 2);
        assert_eq!(d, vec![4, 1]);
        let back: u64 = d.iter().rev().fold(0, |acc, &x| acc * 5 + x);
        assert_eq!(back, 9);
    }

    #[test]
    fn overflow_is_detected() {
        assert!(matches!(x_ak(p(61), 2, 40), Err(Error::Overflow(_))));
        assert!(matches!(pow_checked(7, 60, "t"), Err(Error::Overflow(_))));
    }
}
