//! Primality, prime generation and factorization of the moderate-size
//! integers that show up in the constructions.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

/// Deterministic Miller–Rabin; the first twelve prime bases are exact for
/// every 64-bit input.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES[..12] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin on big integers with the first thirteen prime bases. Exact
/// below 3.3·10²⁴, a strong probable-prime test beyond.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime(small);
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'bases: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// All primes `p < bound`, ascending.
pub fn primes_below(bound: u64) -> Vec<u64> {
    (2..bound).filter(|&p| is_prime(p)).collect()
}

/// The `count` smallest primes not in `excluded`, ascending.
pub fn primes_outside(excluded: &[u64], count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut p = 1;
    while out.len() < count {
        p = next_prime(p);
        if !excluded.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn rho_u64(n: u64, seed: u64) -> Option<u64> {
    // Brent's variant with batched gcds.
    let f = |x: u64| (mul_mod(x, x, n) + seed) % n;
    let (mut y, mut r, mut q) = (2u64, 1usize, 1u64);
    let (mut x, mut g, mut ys) = (0u64, 1u64, 0u64);
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..(128.min(r - k)) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += 128;
        }
        r *= 2;
        if r > 1 << 26 {
            return None;
        }
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn rho_big(n: &BigUint, seed: u64) -> Option<BigUint> {
    let c = BigUint::from(seed);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut x = BigUint::from(2u32);
    let mut y = x.clone();
    let mut g = BigUint::one();
    let mut steps = 0u64;
    while g.is_one() {
        x = f(&x);
        y = f(&f(&y));
        let diff = if x > y { &x - &y } else { &y - &x };
        g = diff.gcd(n);
        steps += 1;
        if steps > 1 << 24 {
            return None;
        }
    }
    (&g != n).then_some(g)
}

fn split_factor(n: &BigUint) -> BigUint {
    for seed in 1u64.. {
        let found = match n.to_u64() {
            Some(small) => rho_u64(small, seed).map(BigUint::from),
            None => rho_big(n, seed),
        };
        if let Some(d) = found {
            return d;
        }
    }
    unreachable!()
}

/// Prime factorization of `n > 0` as ascending `(prime, multiplicity)` pairs.
/// Trial division by small primes, then Pollard rho on the remaining cofactor.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "factorize(0)");
    let mut rest = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut p = 2u64;
    while p < 1000 {
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            out.push((BigUint::from(p), e));
        }
        p = next_prime(p);
    }
    let mut stack = vec![rest];
    let mut large: Vec<BigUint> = Vec::new();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime_big(&m) {
            large.push(m);
            continue;
        }
        let d = split_factor(&m);
        let other = &m / &d;
        stack.push(d);
        stack.push(other);
    }
    large.sort();
    for q in large {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// Distinct prime divisors of `n > 0`.
pub fn prime_divisors(n: &BigUint) -> Vec<BigUint> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}
