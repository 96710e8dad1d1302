//! Small arithmetic helpers shared across modules.

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Exact log base p: returns k with p^k == n, if any.
pub fn log_exact(p: u64, n: u64) -> Option<u32> {
    if p < 2 || n == 0 {
        return None;
    }
    let mut k = 0;
    let mut cur = 1u64;
    while cur < n {
        cur = cur.checked_mul(p)?;
        k += 1;
    }
    (cur == n).then_some(k)
}

/// Multiplicative inverse mod a prime p.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(lcm(4, 6), 12);
        assert!(is_prime(7));
        assert!(!is_prime(9));
        assert_eq!(log_exact(3, 27), Some(3));
        assert_eq!(log_exact(3, 26), None);
        assert_eq!(inv_mod(3, 7), 5);
    }
}
