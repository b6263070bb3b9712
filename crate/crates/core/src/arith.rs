//! Small integer helpers: factorization, primes, p-parts.

/// Prime factorization by trial division, as `(prime, exponent)` pairs in
/// increasing prime order.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn primes_dividing(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n > 1 && factor(n) == vec![(n, 1)]
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n.is_multiple_of(p) {
        n /= p;
        part *= p;
    }
    part
}

/// True when every prime factor of `n` lies in `pi`.
pub fn is_pi_number(n: u64, pi: &[u64]) -> bool {
    primes_dividing(n).iter().all(|p| pi.contains(p))
}

/// All primes `≤ n` (sieve of Eratosthenes).
pub fn primes_upto(n: usize) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2;
    while p * p <= n {
        if sieve[p] {
            let mut q = p * p;
            while q <= n {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &is_p)| is_p.then_some(i as u64))
        .collect()
}

/// Exponent of `p` in `n!` (Legendre's formula).
pub fn factorial_valuation(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut q = p;
    while q <= n {
        total += n / q;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break,
        }
    }
    total
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factoring() {
        assert_eq!(factor(1), vec![]);
        assert_eq!(factor(24), vec![(2, 3), (3, 1)]);
        assert_eq!(factor(97), vec![(97, 1)]);
        assert_eq!(p_part(720, 2), 16);
        assert_eq!(p_part(720, 7), 1);
    }

    #[test]
    fn pi_numbers() {
        assert!(is_pi_number(24, &[2, 3]));
        assert!(!is_pi_number(30, &[2, 3]));
        assert!(is_pi_number(1, &[]));
    }

    #[test]
    fn prime_counting() {
        assert_eq!(primes_upto(16).len(), 6); // 2 3 5 7 11 13
        assert_eq!(primes_upto(1), Vec::<u64>::new());
        assert_eq!(primes_upto(2), vec![2]);
    }

    #[test]
    fn legendre() {
        assert_eq!(factorial_valuation(4, 2), 3);
        assert_eq!(factorial_valuation(9, 3), 4);
        assert_eq!(factorial_valuation(16, 2), 15);
        assert_eq!(factorial_valuation(6, 5), 1);
    }
}
