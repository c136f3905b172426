//! Small integer helpers shared by the set modules.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// All units of Z/nZ in ascending order. For n = 1 this is `[0]`.
pub fn units(n: usize) -> Vec<usize> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&u| gcd(u as u64, n as u64) == 1).collect()
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inverse(a: usize, n: usize) -> Option<usize> {
    if n == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % n as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(n as i128) as usize)
}

pub fn reduce(x: i64, n: usize) -> usize {
    x.rem_euclid(n as i64) as usize
}

/// Floor of the square root.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Smallest prime ≥ `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut m = n.max(2);
    while !is_prime(m) {
        m += 1;
    }
    m
}

pub fn primes_up_to(max: u64) -> Vec<u64> {
    (2..=max).filter(|&p| is_prime(p)).collect()
}

pub fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_round_trip() {
        for n in 2..40usize {
            for u in units(n) {
                let inv = mod_inverse(u, n).unwrap();
                assert_eq!(u * inv % n, 1);
            }
            assert_eq!(mod_inverse(0, n), None);
        }
    }

    #[test]
    fn small_primes() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(next_prime(24), 29);
        assert_eq!(isqrt(35), 5);
        assert_eq!(isqrt(36), 6);
        assert_eq!(ceil_log2(13), 4);
        assert_eq!(ceil_log2(16), 4);
        assert_eq!(ceil_log2(17), 5);
    }
}
