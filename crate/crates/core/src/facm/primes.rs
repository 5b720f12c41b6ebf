//! Primality and factoring for 64-bit integers.

/// Witnesses that make Miller–Rabin deterministic far beyond `u64::MAX`.
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's variant of Pollard's rho. Returns a nontrivial factor of the
/// composite `n`, or `None` once `budget` iterations are spent.
fn pollard_brent(n: u64, budget: &mut u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
        let mut x = y;
        let mut ys = y;
        const BATCH: u64 = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                let steps = BATCH.min(r - k);
                for _ in 0..steps {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                *budget = budget.checked_sub(steps)?;
                g = gcd(q, n);
                k += steps;
            }
            r *= 2;
        }
        if g == n {
            // Batched product overshot; step one at a time.
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                *budget = budget.checked_sub(1)?;
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

/// Distinct prime factors of `n` in ascending order, or `None` if the rho
/// iteration budget runs out first.
pub fn distinct_prime_factors(mut n: u64, rho_budget: u64) -> Option<Vec<u64>> {
    let mut out = Vec::new();
    for &p in &SMALL_PRIMES {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
    }
    let mut budget = rho_budget;
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            out.push(m);
            continue;
        }
        let d = pollard_brent(m, &mut budget)?;
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    out.dedup();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn agrees_with_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime(n), trial_is_prime(n), "n = {n}");
        }
    }

    #[test]
    fn large_known_values() {
        assert!(is_prime(1_000_000_007));
        assert!(is_prime(18_446_744_073_709_551_557));
        // Strong pseudoprime to several small bases.
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(3_825_123_056_546_413_051));
    }

    #[test]
    fn factors_multiply_back() {
        for n in [
            2u64,
            12,
            1018,
            1_000_002,
            600_851_475_143,
            999_999_000_001 * 3,
        ] {
            let f = distinct_prime_factors(n, u64::MAX).unwrap();
            let mut m = n;
            for &p in &f {
                assert!(is_prime(p));
                while m % p == 0 {
                    m /= p;
                }
            }
            assert_eq!(m, 1, "n = {n}");
        }
    }

    #[test]
    fn semiprime_of_large_primes() {
        let (p, q) = (4_294_967_291u64, 4_294_967_279u64);
        assert_eq!(distinct_prime_factors(p * q, u64::MAX).unwrap(), vec![q, p]);
    }
}
