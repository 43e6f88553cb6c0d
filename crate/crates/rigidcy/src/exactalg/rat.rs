//! Big rationals and the handful of elementary number-theoretic helpers the rest
//! of the crate leans on.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

/// Arbitrary-precision rational number.
pub type Rat = BigRational;

/// Integer as a `Rat`.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Fraction `num/den` as a `Rat`. Panics on zero denominator.
pub fn qq(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn to_i64(r: &Rat) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    let n = r.numer();
    i64::try_from(n.clone()).ok()
}

/// p-adic valuation of a nonzero rational.
pub fn vp(r: &Rat, p: u64) -> i64 {
    assert!(!r.is_zero(), "valuation of zero");
    assert!(p >= 2);
    fn vp_int(n: &BigInt, p: &BigInt) -> i64 {
        let mut n = n.clone();
        let mut v = 0;
        loop {
            let (q, rem) = num::Integer::div_rem(&n, p);
            if rem.is_zero() {
                n = q;
                v += 1;
            } else {
                return v;
            }
        }
    }
    let p = BigInt::from(p);
    vp_int(r.numer(), &p) - vp_int(r.denom(), &p)
}

/// Generalised binomial coefficient C(x, m) = x(x-1)…(x-m+1)/m! for rational x.
pub fn binom(x: &Rat, m: usize) -> Rat {
    let mut acc = Rat::one();
    for k in 0..m {
        acc *= (x - rat(k as i64)) / rat(k as i64 + 1);
    }
    acc
}

/// Trial-division factorisation. Fine for the conductor-sized inputs we feed it.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// All positive divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let prev = out.clone();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            out.extend(prev.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(vp(&qq(12, 5), 2), 2);
        assert_eq!(vp(&qq(12, 5), 5), -1);
        assert_eq!(vp(&qq(12, 5), 7), 0);
    }

    #[test]
    fn binom_rational_argument() {
        // C(-1/2, 2) = (-1/2)(-3/2)/2 = 3/8
        assert_eq!(binom(&qq(-1, 2), 2), qq(3, 8));
        assert_eq!(binom(&rat(5), 2), rat(10));
        assert_eq!(binom(&rat(1), 3), rat(0));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
    }
}
