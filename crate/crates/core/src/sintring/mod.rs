//! Exact arithmetic in the ring of S-integers and its unit group.
//!
//! An [`SInteger`] stores a sign, one exponent per prime of its [`PrimeSet`]
//! and a positive cofactor coprime to every prime of the set. Zero has its
//! own representation (sign zero, zero exponents, cofactor one).

mod crt;
mod primes;

pub use crt::{crt_solve, CrtSolution};
pub use primes::{
    factorize, is_prime, is_prime_big, next_prime, prime_divisors, primes_below, primes_outside,
};

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite, strictly ascending set of primes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PrimeSet(Vec<u64>);

impl PrimeSet {
    pub fn new(primes: Vec<u64>) -> Result<Self> {
        if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::NotPrime(bad));
        }
        if primes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::PrimesNotAscending);
        }
        Ok(PrimeSet(primes))
    }

    /// Sorts and deduplicates before validating.
    pub fn from_unsorted(primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut v: Vec<u64> = primes.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self::new(v)
    }

    pub fn empty() -> Self {
        PrimeSet(Vec::new())
    }

    pub fn primes(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn largest(&self) -> Option<u64> {
        self.0.last().copied()
    }

    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        v.dedup();
        PrimeSet(v)
    }

    /// `self ∪ {p}` for a prime `p`.
    pub fn with(&self, p: u64) -> Result<PrimeSet> {
        Ok(self.union(&PrimeSet::new(vec![p])?))
    }
}

impl TryFrom<Vec<u64>> for PrimeSet {
    type Error = Error;
    fn try_from(v: Vec<u64>) -> Result<Self> {
        PrimeSet::new(v)
    }
}

impl From<PrimeSet> for Vec<u64> {
    fn from(s: PrimeSet) -> Self {
        s.0
    }
}

impl FromStr for PrimeSet {
    type Err = Error;

    /// Comma-separated ascending list, e.g. `"2,3,7"`. The empty string is
    /// the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PrimeSet::empty());
        }
        let primes = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Parse(format!("prime {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PrimeSet::new(primes)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Splits `|n|` into its S-part and the cofactor coprime to S.
///
/// Panics on `n = 0`.
pub fn split_s_part(n: &BigInt, primes: &PrimeSet) -> (BigUint, BigUint) {
    let (exps, cofactor) = s_valuations(n.magnitude(), primes);
    let s_part = primes
        .primes()
        .iter()
        .zip(&exps)
        .fold(BigUint::one(), |acc, (&p, &e)| acc * BigUint::from(p).pow(e));
    (s_part, cofactor)
}

fn s_valuations(n: &BigUint, primes: &PrimeSet) -> (Vec<u32>, BigUint) {
    assert!(!n.is_zero(), "S-part of zero is undefined");
    let mut rest = n.clone();
    let exps = primes
        .primes()
        .iter()
        .map(|&p| {
            let mut e = 0;
            loop {
                let (q, r) = rest.div_rem(&BigUint::from(p));
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            e
        })
        .collect();
    (exps, rest)
}

fn prime_power(p: u64, e: u64) -> BigUint {
    BigUint::from(p).pow(e as u32)
}

/// Element of the ring of S-integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SInteger {
    primes: PrimeSet,
    sign: Sign,
    exponents: Vec<i64>,
    cofactor: BigUint,
}

impl SInteger {
    pub fn zero(primes: &PrimeSet) -> Self {
        SInteger {
            primes: primes.clone(),
            sign: Sign::NoSign,
            exponents: vec![0; primes.len()],
            cofactor: BigUint::one(),
        }
    }

    pub fn one(primes: &PrimeSet) -> Self {
        Self::from_integer(&BigInt::one(), primes)
    }

    /// `n · ∏ p^{shift_p}` in normalized form.
    fn normalize(primes: &PrimeSet, n: BigInt, mut shift: Vec<i64>) -> Self {
        if n.is_zero() {
            return Self::zero(primes);
        }
        let (vals, cofactor) = s_valuations(n.magnitude(), primes);
        for (s, v) in shift.iter_mut().zip(vals) {
            *s += v as i64;
        }
        SInteger {
            primes: primes.clone(),
            sign: n.sign(),
            exponents: shift,
            cofactor,
        }
    }

    pub fn from_integer(n: &BigInt, primes: &PrimeSet) -> Self {
        Self::normalize(primes, n.clone(), vec![0; primes.len()])
    }

    pub fn from_i64(n: i64, primes: &PrimeSet) -> Self {
        Self::from_integer(&BigInt::from(n), primes)
    }

    /// Canonical injection of `numerator / denominator` into Z_S.
    pub fn from_rational(numerator: &BigInt, denominator: &BigInt, primes: &PrimeSet) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if numerator.is_zero() {
            return Ok(Self::zero(primes));
        }
        let g = numerator.gcd(denominator);
        let num = numerator / &g;
        let den = denominator / &g;
        let (den_vals, den_rest) = s_valuations(den.magnitude(), primes);
        if !den_rest.is_one() {
            return Err(Error::DenominatorNotSOnly);
        }
        let num = if den.is_negative() { -num } else { num };
        let shift = den_vals.iter().map(|&v| -(v as i64)).collect();
        Ok(Self::normalize(primes, num, shift))
    }

    /// Builds `sign · ∏ p^{e_p}` directly from an exponent vector.
    pub fn unit(primes: &PrimeSet, negative: bool, exponents: Vec<i64>) -> Self {
        assert_eq!(exponents.len(), primes.len());
        SInteger {
            primes: primes.clone(),
            sign: if negative { Sign::Minus } else { Sign::Plus },
            exponents,
            cofactor: BigUint::one(),
        }
    }

    /// Parses `"n"` or `"n/d"`.
    pub fn parse(text: &str, primes: &PrimeSet) -> Result<Self> {
        let text = text.trim();
        let parse_int = |t: &str| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("integer {t:?}: {e}")))
        };
        match text.split_once('/') {
            Some((n, d)) => Self::from_rational(&parse_int(n)?, &parse_int(d)?, primes),
            None => Ok(Self::from_integer(&parse_int(text)?, primes)),
        }
    }

    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self.sign {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn exponent_of(&self, p: u64) -> Option<i64> {
        let i = self.primes.0.binary_search(&p).ok()?;
        Some(self.exponents[i])
    }

    pub fn cofactor(&self) -> &BigUint {
        &self.cofactor
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::NoSign
    }

    /// Membership in the unit group: nonzero with trivial cofactor.
    pub fn is_s_unit(&self) -> bool {
        !self.is_zero() && self.cofactor.is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.exponents.iter().all(|&e| e >= 0)
    }

    /// Reduced `(numerator, denominator)` with positive denominator.
    pub fn to_fraction(&self) -> (BigInt, BigUint) {
        if self.is_zero() {
            return (BigInt::zero(), BigUint::one());
        }
        let mut num = self.cofactor.clone();
        let mut den = BigUint::one();
        for (&p, &e) in self.primes.0.iter().zip(&self.exponents) {
            match e.cmp(&0) {
                Ordering::Greater => num *= prime_power(p, e as u64),
                Ordering::Less => den *= prime_power(p, e.unsigned_abs()),
                Ordering::Equal => {}
            }
        }
        (BigInt::from_biguint(self.sign, num), den)
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        let (n, d) = self.to_fraction();
        d.is_one().then_some(n)
    }

    pub fn to_ratio(&self) -> BigRational {
        let (n, d) = self.to_fraction();
        BigRational::new(n, BigInt::from(d))
    }

    /// Same value over a different prime set; fails when the denominator
    /// does not fit the new set.
    pub fn with_primes(&self, primes: &PrimeSet) -> Result<Self> {
        let (n, d) = self.to_fraction();
        Self::from_rational(&n, &BigInt::from(d), primes)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.primes != other.primes {
            return Err(Error::PrimeSetMismatch);
        }
        Ok(())
    }

    /// Signed integer `sign · cofactor · ∏ p^{e_p - base_p}`; requires
    /// `e_p ≥ base_p`.
    fn scaled_integer(&self, base: &[i64]) -> BigInt {
        let mut mag = self.cofactor.clone();
        for ((&p, &e), &b) in self.primes.0.iter().zip(&self.exponents).zip(base) {
            debug_assert!(e >= b);
            mag *= prime_power(p, (e - b) as u64);
        }
        BigInt::from_biguint(self.sign, mag)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        // factor out the common S-power, add the remaining integers
        let base: Vec<i64> = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(&a, &b)| a.min(b))
            .collect();
        let sum = self.scaled_integer(&base) + other.scaled_integer(&base);
        Ok(Self::normalize(&self.primes, sum, base))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.primes));
        }
        let sign = if self.sign == other.sign { Sign::Plus } else { Sign::Minus };
        Ok(SInteger {
            primes: self.primes.clone(),
            sign,
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
            cofactor: &self.cofactor * &other.cofactor,
        })
    }

    /// Multiplicative inverse, defined exactly for S-units.
    pub fn inverse(&self) -> Option<Self> {
        self.is_s_unit().then(|| SInteger {
            primes: self.primes.clone(),
            sign: self.sign,
            exponents: self.exponents.iter().map(|e| -e).collect(),
            cofactor: BigUint::one(),
        })
    }

    /// Compares absolute values.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        let (an, ad) = self.to_fraction();
        let (bn, bd) = other.to_fraction();
        (an.magnitude() * &bd).cmp(&(bn.magnitude() * &ad))
    }
}

impl std::ops::Neg for &SInteger {
    type Output = SInteger;
    fn neg(self) -> SInteger {
        let mut out = self.clone();
        out.sign = -out.sign;
        out
    }
}

impl std::ops::Neg for SInteger {
    type Output = SInteger;
    fn neg(mut self) -> SInteger {
        self.sign = -self.sign;
        self
    }
}

impl Ord for SInteger {
    /// Orders by value; ties (equal values over different sets) fall back to
    /// the prime sets.
    fn cmp(&self, other: &Self) -> Ordering {
        let (an, ad) = self.to_fraction();
        let (bn, bd) = other.to_fraction();
        (an * BigInt::from(bd))
            .cmp(&(bn * BigInt::from(ad)))
            .then_with(|| self.primes.cmp(&other.primes))
    }
}

impl PartialOrd for SInteger {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.to_fraction();
        if d.is_one() {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

/// Every S-unit `±∏ p^{e_p}` with `|e_p| ≤ max_exponent`, ordered by
/// absolute value, positive before negative.
pub fn s_units_by_height(primes: &PrimeSet, max_exponent: u32) -> Vec<SInteger> {
    units_in_box(primes, -(max_exponent as i64), max_exponent as i64)
}

/// The integral part of [`s_units_by_height`]: exponents in `0..=max_exponent`.
pub fn integer_s_units_by_height(primes: &PrimeSet, max_exponent: u32) -> Vec<SInteger> {
    units_in_box(primes, 0, max_exponent as i64)
}

/// Lazy form of [`integer_s_units_by_height`]: `1, -1, p, -p, ...` in
/// ascending absolute value. Nothing beyond what is consumed is generated,
/// so large prime sets and exponent bounds are cheap.
pub fn integer_units_ascending(primes: &PrimeSet, max_exponent: u32) -> IntegerUnits {
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((BigUint::one(), vec![0i64; primes.len()])));
    IntegerUnits {
        primes: primes.clone(),
        max_exponent: max_exponent as i64,
        heap,
        pending: None,
    }
}

pub struct IntegerUnits {
    primes: PrimeSet,
    max_exponent: i64,
    heap: BinaryHeap<Reverse<(BigUint, Vec<i64>)>>,
    pending: Option<SInteger>,
}

impl Iterator for IntegerUnits {
    type Item = SInteger;

    fn next(&mut self) -> Option<SInteger> {
        if let Some(neg) = self.pending.take() {
            return Some(neg);
        }
        let Reverse((value, exps)) = self.heap.pop()?;
        // each product is generated once: only extend by primes at or after
        // the last prime already present
        let last = exps.iter().rposition(|&e| e > 0).unwrap_or(0);
        for (i, &p) in self.primes.primes().iter().enumerate().skip(last) {
            if exps[i] < self.max_exponent {
                let mut next = exps.clone();
                next[i] += 1;
                self.heap.push(Reverse((&value * p, next)));
            }
        }
        self.pending = Some(SInteger::unit(&self.primes, true, exps.clone()));
        Some(SInteger::unit(&self.primes, false, exps))
    }
}

fn units_in_box(primes: &PrimeSet, lo: i64, hi: i64) -> Vec<SInteger> {
    let k = primes.len();
    let mut vectors: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..k {
        vectors = vectors
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    // exponent vectors come out in lexicographic order already
    let mut keyed: Vec<(BigUint, BigUint, Vec<i64>)> = vectors
        .into_iter()
        .map(|v| {
            let mut num = BigUint::one();
            let mut den = BigUint::one();
            for (&p, &e) in primes.primes().iter().zip(&v) {
                if e >= 0 {
                    num *= prime_power(p, e as u64);
                } else {
                    den *= prime_power(p, e.unsigned_abs());
                }
            }
            (num, den, v)
        })
        .collect();
    keyed.sort_by(|a, b| (&a.0 * &b.1).cmp(&(&b.0 * &a.1)).then_with(|| a.2.cmp(&b.2)));
    keyed
        .into_iter()
        .flat_map(|(_, _, v)| {
            [
                SInteger::unit(primes, false, v.clone()),
                SInteger::unit(primes, true, v),
            ]
        })
        .collect()
}
