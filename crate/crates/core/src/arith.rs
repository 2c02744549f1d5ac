//! Small integer helpers: primality by trial division, prime powers, binomials.

/// Upper limit for prime searches; trial division stays instant below it.
pub const PRIME_SEARCH_CAP: u64 = 1 << 40;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `≥ x`, or `None` beyond [`PRIME_SEARCH_CAP`].
pub fn next_prime(x: f64) -> Option<u64> {
    if !x.is_finite() || x > PRIME_SEARCH_CAP as f64 {
        return None;
    }
    let mut n = x.ceil().max(2.0) as u64;
    while n <= PRIME_SEARCH_CAP {
        if is_prime(n) {
            return Some(n);
        }
        n += 1;
    }
    None
}

/// Smallest prime `p ≥ lo` (integer form of [`next_prime`]).
pub fn next_prime_from(lo: u64) -> Option<u64> {
    next_prime(lo as f64)
}

/// `Some((p, e))` when `q = p^e` with `p` prime and `e ≥ 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p <= q / p {
        if q.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p > q / p {
        return Some((q, 1));
    }
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

pub fn is_odd_prime_power(q: u64) -> bool {
    q % 2 == 1 && prime_power(q).is_some()
}

/// Integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    let n = u128::from(n);
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r as u64
}

pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = isqrt(n);
    (u128::from(r) * u128::from(r) == u128::from(n)).then_some(r)
}

/// `binom(n, k)`, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert_eq!(next_prime(14.0), Some(17));
        assert_eq!(next_prime(7.0), Some(7));
        assert_eq!(next_prime(0.5), Some(2));
        assert_eq!(next_prime(f64::NAN), None);
        assert!(is_prime(97) && !is_prime(91) && !is_prime(1));
    }

    #[test]
    fn prime_powers() {
        assert!(is_odd_prime_power(9));
        assert!(!is_odd_prime_power(15));
        assert!(!is_odd_prime_power(8));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn binomials_and_roots() {
        assert_eq!(binomial(3, 1), Some(3));
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(2, 3), Some(0));
        assert_eq!(exact_sqrt(49), Some(7));
        assert_eq!(exact_sqrt(50), None);
        assert_eq!(isqrt(u64::MAX), 4294967295);
    }
}
