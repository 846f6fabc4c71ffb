//! Small integer helpers.

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

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    while n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}

/// `Some(k)` when `n = p^k`.
pub fn log_p(mut n: u64, p: u64) -> Option<u32> {
    let mut k = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        k += 1;
    }
    Some(k)
}

/// Precondition error unless `p` divides `order`.
pub(crate) fn require_divides(order: u64, p: u64) -> crate::Result<()> {
    if !order.is_multiple_of(p) {
        return Err(crate::Error::Precondition(format!("{p} does not divide the group order {order}")));
    }
    Ok(())
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert!(is_prime(13) && !is_prime(1) && !is_prime(91));
        assert_eq!(prime_divisors(5616), vec![2, 3, 13]);
        assert_eq!(p_part(216, 3), 27);
        assert_eq!(log_p(32, 2), Some(5));
        assert_eq!(log_p(24, 2), None);
        assert_eq!(pow_mod(3, 4, 7), 4);
    }
}
