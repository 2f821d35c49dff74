//! Small-integer arithmetic: gcd, primality, factorization and divisor sums.

use num_complex::Complex64;

pub fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    gcd(a as i128, b as i128) as i64
}

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g >= 0.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut p = 5i64;
    while p * p <= n {
        if n % p == 0 || n % (p + 2) == 0 {
            return false;
        }
        p += 6;
    }
    true
}

/// Prime factorization as (prime, exponent) pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
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

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// Divisor power sum sigma_s(n) = sum_{d | n} d^s for complex s.
pub fn sigma_complex(n: u64, s: Complex64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for (p, e) in factorize(n) {
        // 1 + p^s + ... + p^{es}
        let ps = Complex64::new(p as f64, 0.0).powc(s);
        let mut term = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(1.0, 0.0);
        for _ in 0..e {
            term *= ps;
            sum += term;
        }
        acc *= sum;
    }
    acc
}

/// Integer divisor power sum sigma_k(n).
pub fn sigma_int(n: u64, k: u32) -> f64 {
    let mut acc = 1.0;
    for (p, e) in factorize(n) {
        let pk = (p as f64).powi(k as i32);
        let mut term = 1.0;
        let mut sum = 1.0;
        for _ in 0..e {
            term *= pk;
            sum += term;
        }
        acc *= sum;
    }
    acc
}

/// Primes up to and including `limit`.
pub fn primes_up_to(limit: usize) -> Vec<i64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; limit + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= limit {
        if sieve[i] {
            let mut j = i * i;
            while j <= limit {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &p)| p.then_some(k as i64))
        .collect()
}

/// Integer square root (floor).
pub fn isqrt(n: i128) -> i128 {
    if n <= 0 {
        return 0;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}
