//! S-unit equations by bounded search, zero subsums of cycle labels, and
//! the explicit bounds quoted from the literature.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sintring::{s_units_by_height, PrimeSet, SInteger};

/// Largest number of candidate tuples `solve_bounded` will scan.
const SCAN_LIMIT: u128 = 50_000_000;

/// `a_1 x_1 + ... + a_n x_n = 1` in S-units `x_i` whose exponents all lie
/// in `[-exponent_bound, exponent_bound]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitEquation {
    coefficients: Vec<BigRational>,
    primes: PrimeSet,
    exponent_bound: u32,
}

impl UnitEquation {
    pub fn new(coefficients: Vec<BigRational>, primes: PrimeSet, exponent_bound: u32) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::ArityUnsupported(coefficients.len()));
        }
        if coefficients.iter().any(Zero::is_zero) {
            return Err(Error::ZeroCoefficient);
        }
        Ok(UnitEquation {
            coefficients,
            primes,
            exponent_bound,
        })
    }

    /// `x_1 + ... + x_n = 1`.
    pub fn all_ones(arity: usize, primes: PrimeSet, exponent_bound: u32) -> Result<Self> {
        Self::new(vec![BigRational::one(); arity], primes, exponent_bound)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }

    pub fn exponent_bound(&self) -> u32 {
        self.exponent_bound
    }

    pub fn arity(&self) -> usize {
        self.coefficients.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSolution {
    pub values: Vec<SInteger>,
    /// Some non-empty subsum `Σ_{i∈I} a_i x_i` vanishes.
    pub degenerate: bool,
}

impl Serialize for UnitSolution {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let values: Vec<String> = self.values.iter().map(SInteger::to_string).collect();
        let mut st = s.serialize_struct("UnitSolution", 2)?;
        st.serialize_field("values", &values)?;
        st.serialize_field("degenerate", &self.degenerate)?;
        st.end()
    }
}

/// Every solution with all exponents in the bound, for two or three
/// unknowns. The first `n - 1` unknowns run over units in height order
/// (lexicographically); the last is solved for and kept when it is a unit
/// within the bound.
pub fn solve_bounded(eq: &UnitEquation) -> Result<Vec<UnitSolution>> {
    let n = eq.arity();
    if !(2..=3).contains(&n) {
        return Err(Error::ArityUnsupported(n));
    }
    let units = s_units_by_height(&eq.primes, eq.exponent_bound);
    let space = (units.len() as u128).pow(n as u32 - 1);
    if space > SCAN_LIMIT {
        return Err(Error::BadParameters(format!(
            "{space} candidate tuples exceed the scan limit"
        )));
    }
    let ratios: Vec<BigRational> = units.iter().map(SInteger::to_ratio).collect();
    let bound = i64::from(eq.exponent_bound);
    let a = &eq.coefficients;
    let last = &a[n - 1];

    let mut out = Vec::new();
    let mut idx = vec![0usize; n - 1];
    'outer: loop {
        let partial: BigRational = idx
            .iter()
            .zip(a)
            .map(|(&i, c)| c * &ratios[i])
            .fold(BigRational::zero(), |acc, t| acc + t);
        let rest = (BigRational::one() - partial) / last;
        if !rest.is_zero() {
            if let Ok(x) = SInteger::from_rational(rest.numer(), rest.denom(), &eq.primes) {
                if x.is_s_unit() && x.exponents().iter().all(|e| e.abs() <= bound) {
                    let mut values: Vec<SInteger> = idx.iter().map(|&i| units[i].clone()).collect();
                    let mut terms: Vec<BigRational> = idx.iter().zip(a).map(|(&i, c)| c * &ratios[i]).collect();
                    terms.push(last * &rest);
                    values.push(x);
                    out.push(UnitSolution {
                        values,
                        degenerate: has_zero_subsum(&terms, false),
                    });
                }
            }
        }
        for pos in (0..n - 1).rev() {
            idx[pos] += 1;
            if idx[pos] < units.len() {
                continue 'outer;
            }
            idx[pos] = 0;
        }
        break;
    }
    Ok(out)
}

/// Whether some non-empty subset of `terms` sums to zero; with
/// `proper_only`, the full set is excluded.
fn has_zero_subsum(terms: &[BigRational], proper_only: bool) -> bool {
    // clear denominators, then walk subsets in Gray-code order
    let lcm = terms
        .iter()
        .fold(BigInt::one(), |acc, t| num_integer::Integer::lcm(&acc, t.denom()));
    let ints: Vec<BigInt> = terms.iter().map(|t| (t * BigRational::from(lcm.clone())).to_integer()).collect();
    let n = ints.len();
    let full = (1u64 << n) - 1;
    let mut sum = BigInt::zero();
    let mut mask = 0u64;
    for step in 1..=full {
        let bit = step.trailing_zeros() as usize;
        mask ^= 1 << bit;
        if mask >> bit & 1 == 1 {
            sum += &ints[bit];
        } else {
            sum -= &ints[bit];
        }
        if sum.is_zero() && !(proper_only && mask == full) {
            return true;
        }
    }
    false
}

/// Whether S-units `u` with `1 - u` also a unit exist, i.e. whether
/// `2 ∈ S`. With only odd primes every unit is a ratio of odd integers,
/// and `x + y = 1` would make an even number odd.
pub fn has_exceptional_units(primes: &PrimeSet) -> bool {
    primes.contains(2)
}

/// Whether the labels of a closed cycle have no vanishing proper non-empty
/// subsum. Two labels `u, -u` count as nondegenerate: their only proper
/// subsums are single units.
pub fn check_nondegenerate(labels: &[SInteger]) -> Result<bool> {
    if labels.len() > 24 {
        return Err(Error::TooLong(labels.len()));
    }
    let terms: Vec<BigRational> = labels.iter().map(SInteger::to_ratio).collect();
    let total = terms.iter().fold(BigRational::zero(), |acc, t| acc + t);
    if !total.is_zero() {
        return Err(Error::LabelsDoNotSumToZero);
    }
    if labels.len() <= 2 {
        return Ok(true);
    }
    Ok(!has_zero_subsum(&terms, true))
}

/// The explicit bounds, named after their source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Bound {
    /// Solutions of `ax + by = 1`: `3·7^{2s+3}`.
    EvertseA,
    /// Nondegenerate solutions in `n` unknowns:
    /// `(8n)^{4n⁴(ns+n+1)}`.
    AmorosoViadaB,
    /// Order beyond which the complement has at most two components, one
    /// of them a single vertex: `3·2^{16(s+2)}`.
    GyoryC,
    /// Exceptional equivalence classes of `k`-sets:
    /// `(k·5^{162(3s+4)})^{4(k-1)}`.
    ExceptionalClasses,
    /// Order beyond which complements with three components, or two of
    /// order at least two, are impossible: `3·2^{16(s+1)}`.
    ComplementThreshold,
    /// Values `c` (up to units) with `x + y = c` having more than two
    /// solutions: `24^{324(3s+4)}`.
    SumValues,
    /// Classes of `k`-sets whose complement splits into parts of orders at
    /// least three and two, `k ≥ 5`: `(k·5^{648(3s+4)})^{k-1}`.
    TwoComponentClasses,
}

impl Bound {
    pub const ALL: [Bound; 7] = [
        Bound::EvertseA,
        Bound::AmorosoViadaB,
        Bound::GyoryC,
        Bound::ExceptionalClasses,
        Bound::ComplementThreshold,
        Bound::SumValues,
        Bound::TwoComponentClasses,
    ];

    /// Short tag accepted by [`FromStr`] alongside the variant name.
    pub fn tag(self) -> &'static str {
        match self {
            Bound::EvertseA => "EvertseA",
            Bound::AmorosoViadaB => "AmorosoViadaB",
            Bound::GyoryC => "GyoryC",
            Bound::ExceptionalClasses => "Thm5.4",
            Bound::ComplementThreshold => "Thm3.6",
            Bound::SumValues => "Lemma5.3",
            Bound::TwoComponentClasses => "Lemma5.1",
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Bound {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Bound::ALL
            .into_iter()
            .find(|b| b.tag().eq_ignore_ascii_case(s) || format!("{b:?}").eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownBound(s.to_string()))
    }
}

/// Parameters of a bound: `s = |S|`, plus the number of unknowns `n` or
/// the set size `k` where the formula needs one.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BoundParams {
    pub s: u64,
    pub n: Option<u64>,
    pub k: Option<u64>,
}

impl BoundParams {
    pub fn with_s(s: u64) -> Self {
        BoundParams { s, n: None, k: None }
    }
}

/// Results longer than this many bits are refused.
const MAX_BITS: f64 = 64_000_000.0;

fn pow(base: u64, exp: u64) -> Result<BigUint> {
    let bits = exp as f64 * (base as f64).log2();
    if bits > MAX_BITS {
        return Err(Error::BadParameters(format!("{base}^{exp} is too large to evaluate")));
    }
    let exp = u32::try_from(exp).map_err(|_| Error::BadParameters("exponent overflow".into()))?;
    Ok(BigUint::from(base).pow(exp))
}

fn big_pow(base: BigUint, exp: u64) -> Result<BigUint> {
    let bits = exp as f64 * base.bits() as f64;
    if bits > MAX_BITS {
        return Err(Error::BadParameters("bound is too large to evaluate".into()));
    }
    let exp = u32::try_from(exp).map_err(|_| Error::BadParameters("exponent overflow".into()))?;
    Ok(base.pow(exp))
}

fn required(v: Option<u64>, name: &str, min: u64) -> Result<u64> {
    match v {
        Some(x) if x >= min => Ok(x),
        Some(x) => Err(Error::BadParameters(format!("{name} = {x} is below {min}"))),
        None => Err(Error::BadParameters(format!("{name} is required"))),
    }
}

/// Exact value of `bound`.
pub fn evaluate_bound(bound: Bound, params: &BoundParams) -> Result<BigUint> {
    let s = params.s;
    if s < 1 {
        return Err(Error::BadParameters("|S| must be at least 1".into()));
    }
    let three = BigUint::from(3u32);
    match bound {
        Bound::EvertseA => Ok(three * pow(7, 2 * s + 3)?),
        Bound::AmorosoViadaB => {
            let n = required(params.n, "n", 2)?;
            pow(8 * n, 4 * n.pow(4) * (n * s + n + 1))
        }
        Bound::GyoryC => Ok(three * pow(2, 16 * (s + 2))?),
        Bound::ComplementThreshold => Ok(three * pow(2, 16 * (s + 1))?),
        Bound::SumValues => pow(24, 324 * (3 * s + 4)),
        Bound::ExceptionalClasses => {
            let k = required(params.k, "k", 3)?;
            let base = BigUint::from(k) * pow(5, 162 * (3 * s + 4))?;
            big_pow(base, 4 * (k - 1))
        }
        Bound::TwoComponentClasses => {
            let k = required(params.k, "k", 5)?;
            let base = BigUint::from(k) * pow(5, 648 * (3 * s + 4))?;
            big_pow(base, k - 1)
        }
    }
}

/// Bounded solution count of `x + y = 1` next to the general bound on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub primes: Vec<u64>,
    pub exponent_bound: u32,
    pub count: usize,
    #[serde(serialize_with = "as_string")]
    pub bound: BigUint,
    pub within: bool,
}

fn as_string<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Counts solutions of `x + y = 1` with exponents up to `exponent_bound`
/// and compares with `3·7^{2|S|+3}`. Limited to `|S| ≤ 3`, bound ≤ 12.
pub fn count_solutions_vs_bound(primes: &PrimeSet, exponent_bound: u32) -> Result<BoundReport> {
    if primes.is_empty() || primes.len() > 3 || exponent_bound > 12 {
        return Err(Error::BadParameters("needs 1 ≤ |S| ≤ 3 and bound ≤ 12".into()));
    }
    let eq = UnitEquation::all_ones(2, primes.clone(), exponent_bound)?;
    let count = solve_bounded(&eq)?.len();
    let bound = evaluate_bound(Bound::EvertseA, &BoundParams::with_s(primes.len() as u64))?;
    Ok(BoundReport {
        primes: primes.primes().to_vec(),
        exponent_bound,
        within: BigUint::from(count) <= bound,
        count,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn s(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.to_vec()).unwrap()
    }

    fn pairs(sols: &[UnitSolution]) -> BTreeSet<(String, String)> {
        sols.iter()
            .map(|x| (x.values[0].to_string(), x.values[1].to_string()))
            .collect()
    }

    // independent scan: x over the box, y = 1 - x tested by trial division
    fn oracle_pairs(primes: &[u64], bound: i64) -> BTreeSet<(String, String)> {
        let ps = s(primes);
        let mut out = BTreeSet::new();
        let mut exps = vec![-bound; primes.len()];
        loop {
            let mut num = BigInt::one();
            let mut den = BigInt::one();
            for (&p, &e) in primes.iter().zip(&exps) {
                if e >= 0 {
                    num *= BigInt::from(p).pow(e as u32);
                } else {
                    den *= BigInt::from(p).pow((-e) as u32);
                }
            }
            for sign in [1, -1] {
                let x = BigRational::new(&num * sign, den.clone());
                let y = BigRational::one() - &x;
                if y.is_zero() {
                    continue;
                }
                let mut ok = true;
                for part in [y.numer().clone(), y.denom().clone()] {
                    let mut m = if part < BigInt::zero() { -part } else { part };
                    for &p in primes {
                        let mut c = 0;
                        while (&m % p).is_zero() {
                            m /= p;
                            c += 1;
                        }
                        if c > bound {
                            ok = false;
                        }
                    }
                    ok &= m.is_one();
                }
                if ok {
                    let xs = SInteger::from_rational(x.numer(), x.denom(), &ps).unwrap();
                    let ys = SInteger::from_rational(y.numer(), y.denom(), &ps).unwrap();
                    out.insert((xs.to_string(), ys.to_string()));
                }
            }
            let mut i = 0;
            loop {
                if i == exps.len() {
                    return out;
                }
                exps[i] += 1;
                if exps[i] <= bound {
                    break;
                }
                exps[i] = -bound;
                i += 1;
            }
        }
    }

    #[test]
    fn x_plus_y_over_two() {
        let eq = UnitEquation::all_ones(2, s(&[2]), 8).unwrap();
        let sols = solve_bounded(&eq).unwrap();
        let expected: BTreeSet<(String, String)> = [("2", "-1"), ("-1", "2"), ("1/2", "1/2")]
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        assert_eq!(pairs(&sols), expected);
        assert!(sols.iter().all(|x| !x.degenerate));
    }

    #[test]
    fn odd_primes_have_no_solutions() {
        for b in [1, 4, 8] {
            let eq = UnitEquation::all_ones(2, s(&[3, 5]), b).unwrap();
            assert!(solve_bounded(&eq).unwrap().is_empty());
        }
    }

    #[test]
    fn two_three_matches_oracle() {
        let eq = UnitEquation::all_ones(2, s(&[2, 3]), 4).unwrap();
        let got = pairs(&solve_bounded(&eq).unwrap());
        assert_eq!(got, oracle_pairs(&[2, 3], 4));
        for (a, b) in [("3", "-2"), ("4", "-3"), ("9", "-8"), ("1/3", "2/3"), ("3/4", "1/4"), ("-1/8", "9/8")] {
            assert!(got.contains(&(a.to_string(), b.to_string())));
            assert!(got.contains(&(b.to_string(), a.to_string())));
        }
    }

    #[test]
    fn three_unknowns_flag_degeneracy() {
        let eq = UnitEquation::all_ones(3, s(&[2]), 2).unwrap();
        let sols = solve_bounded(&eq).unwrap();
        // 1 + 1 - 1 = 1 has the vanishing subsum 1 - 1
        let deg = sols
            .iter()
            .find(|x| x.values.iter().map(|v| v.to_string()).collect::<Vec<_>>() == ["1", "1", "-1"])
            .unwrap();
        assert!(deg.degenerate);
        let nondeg = sols
            .iter()
            .find(|x| x.values.iter().map(|v| v.to_string()).collect::<Vec<_>>() == ["1/2", "1/4", "1/4"])
            .unwrap();
        assert!(!nondeg.degenerate);
        for sol in &sols {
            let sum = sol.values.iter().map(SInteger::to_ratio).fold(BigRational::zero(), |a, b| a + b);
            assert!(sum.is_one());
        }
    }

    #[test]
    fn arity_and_coefficient_errors() {
        assert_eq!(
            UnitEquation::all_ones(1, s(&[2]), 2),
            Err(Error::ArityUnsupported(1))
        );
        let eq = UnitEquation::all_ones(4, s(&[2]), 1).unwrap();
        assert_eq!(solve_bounded(&eq), Err(Error::ArityUnsupported(4)));
        assert_eq!(
            UnitEquation::new(vec![BigRational::one(), BigRational::zero()], s(&[2]), 2),
            Err(Error::ZeroCoefficient)
        );
    }

    #[test]
    fn exceptional_units() {
        assert!(!has_exceptional_units(&s(&[3, 5, 7])));
        assert!(has_exceptional_units(&s(&[2])));
        assert!(has_exceptional_units(&s(&[2, 3])));
    }

    #[test]
    fn nondegenerate_cycles() {
        let p = s(&[2, 3]);
        let l = |v: &[i64]| v.iter().map(|&x| SInteger::from_i64(x, &p)).collect::<Vec<_>>();
        assert_eq!(check_nondegenerate(&l(&[1, 2, -3])), Ok(true));
        assert_eq!(check_nondegenerate(&l(&[1, -1, 2, -2])), Ok(false));
        assert_eq!(check_nondegenerate(&l(&[4, -4])), Ok(true));
        assert_eq!(check_nondegenerate(&l(&[1, 2])), Err(Error::LabelsDoNotSumToZero));
        assert_eq!(check_nondegenerate(&l(&[1; 25])), Err(Error::TooLong(25)));
    }

    #[test]
    fn bound_values() {
        let one = BoundParams::with_s(1);
        assert_eq!(evaluate_bound(Bound::EvertseA, &one).unwrap(), BigUint::from(50421u32));
        assert_eq!(
            evaluate_bound(Bound::GyoryC, &one).unwrap(),
            BigUint::from(844424930131968u64)
        );
        assert_eq!(
            evaluate_bound(Bound::ComplementThreshold, &one).unwrap(),
            BigUint::from(12884901888u64)
        );
        assert_eq!(
            evaluate_bound(Bound::SumValues, &one).unwrap(),
            BigUint::from(24u32).pow(324 * 7)
        );
        let k5 = BoundParams { s: 1, n: None, k: Some(5) };
        assert_eq!(
            evaluate_bound(Bound::TwoComponentClasses, &k5).unwrap(),
            (BigUint::from(5u32) * BigUint::from(5u32).pow(648 * 7)).pow(4)
        );
        assert_eq!(
            evaluate_bound(Bound::ExceptionalClasses, &BoundParams { s: 1, n: None, k: Some(3) }).unwrap(),
            (BigUint::from(3u32) * BigUint::from(5u32).pow(162 * 7)).pow(8)
        );
        let n2 = BoundParams { s: 1, n: Some(2), k: None };
        assert_eq!(
            evaluate_bound(Bound::AmorosoViadaB, &n2).unwrap(),
            BigUint::from(16u32).pow(4 * 16 * 5)
        );
    }

    #[test]
    fn bound_errors() {
        assert!(matches!("Thm9.9".parse::<Bound>(), Err(Error::UnknownBound(_))));
        assert_eq!("thm3.6".parse::<Bound>(), Ok(Bound::ComplementThreshold));
        assert_eq!("GyoryC".parse::<Bound>(), Ok(Bound::GyoryC));
        assert_eq!("SumValues".parse::<Bound>(), Ok(Bound::SumValues));
        assert!(matches!(
            evaluate_bound(Bound::EvertseA, &BoundParams::with_s(0)),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(
            evaluate_bound(Bound::TwoComponentClasses, &BoundParams { s: 1, n: None, k: Some(4) }),
            Err(Error::BadParameters(_))
        ));
        assert!(matches!(
            evaluate_bound(Bound::AmorosoViadaB, &BoundParams::with_s(1)),
            Err(Error::BadParameters(_))
        ));
    }

    #[test]
    fn counts_stay_below_evertse() {
        let r = count_solutions_vs_bound(&s(&[2]), 10).unwrap();
        assert_eq!((r.count, r.bound.clone(), r.within), (3, BigUint::from(50421u32), true));
        assert_eq!(count_solutions_vs_bound(&s(&[3]), 10).unwrap().count, 0);
        let r = count_solutions_vs_bound(&s(&[2, 3]), 6).unwrap();
        assert!(r.within);
        assert_eq!(r.bound, BigUint::from(2470629u32));
        assert_eq!(r.count, oracle_pairs(&[2, 3], 6).len());
    }
}
