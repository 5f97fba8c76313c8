//! Adding isolated and pendant vertices, forests, and gluing components.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::{integer_points, is_integer_unit, target_of, verified};
use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::graphcore::{Graph, VertexMap};
use crate::sintring::{
    crt_solve, integer_units_ascending, next_prime, primes_outside, PrimeSet, SInteger,
};
use crate::unitgraph::Representation;

/// A new point adjacent to nothing: with `q_i` the `|A|` smallest primes
/// outside S, the least solution of `x ≡ a_i (mod q_i)` not already in `A`.
pub fn add_isolated(rep: &Representation) -> Result<SInteger> {
    let points = integer_points(rep)?;
    let x = isolated_value(rep.primes(), &points)?;
    let primes = rep.primes();
    if points.iter().any(|a| is_integer_unit(&(&x - a), primes)) {
        return Err(Error::VerificationFailed("new point is not isolated".into()));
    }
    Ok(SInteger::from_integer(&x, primes))
}

fn isolated_value(primes: &PrimeSet, points: &[BigInt]) -> Result<BigInt> {
    let qs = primes_outside(primes.primes(), points.len());
    let system: Vec<(BigInt, BigInt)> = points
        .iter()
        .zip(&qs)
        .map(|(a, &q)| (a.clone(), BigInt::from(q)))
        .collect();
    let solution = crt_solve(&system)?;
    let taken: BTreeSet<&BigInt> = points.iter().collect();
    Ok((0..)
        .map(|i| solution.nth(i))
        .find(|x| !taken.contains(x))
        .expect("solutions are unbounded"))
}

/// A new point adjacent to `anchor` only: `a_anchor + u` for the first
/// integer unit `u` (ascending absolute value, positive first) with `u ∉ D`
/// and `d - u` a non-unit for every `d ∈ D = {±(a_i - a_j)}`.
pub fn add_pendant(
    rep: &Representation,
    anchor: usize,
    budget: &SearchBudget,
) -> Result<SInteger> {
    let points = integer_points(rep)?;
    if anchor >= points.len() {
        return Err(Error::InvalidAnchor(anchor));
    }
    let primes = rep.primes();
    let x = pendant_value(primes, &points, anchor, budget)?;
    for (i, a) in points.iter().enumerate() {
        if is_integer_unit(&(&x - a), primes) != (i == anchor) {
            return Err(Error::VerificationFailed(format!(
                "pendant point {x} has the wrong neighbourhood"
            )));
        }
    }
    Ok(SInteger::from_integer(&x, primes))
}

fn pendant_value(
    primes: &PrimeSet,
    points: &[BigInt],
    anchor: usize,
    budget: &SearchBudget,
) -> Result<BigInt> {
    let mut diffs = BTreeSet::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = &points[i] - &points[j];
            diffs.insert(-&d);
            diffs.insert(d);
        }
    }
    for u in integer_units_ascending(primes, budget.max_exponent) {
        let u = u.to_integer().expect("integer unit");
        if diffs.contains(&u) {
            continue;
        }
        if diffs.iter().all(|d| !is_integer_unit(&(d - &u), primes)) {
            return Ok(&points[anchor] + u);
        }
    }
    Err(Error::SearchBudgetExceeded(format!(
        "no pendant unit with exponents up to {}",
        budget.max_exponent
    )))
}

/// Builds each tree by pendant extensions from its least vertex; the root
/// of every later tree is an isolated point for everything placed so far.
/// Point `k` is vertex `k`.
pub fn represent_forest(
    g: &Graph,
    primes: &PrimeSet,
    budget: &SearchBudget,
) -> Result<Representation> {
    if !g.is_forest() {
        return Err(Error::NotAForest);
    }
    let n = g.order();
    let mut values: Vec<Option<BigInt>> = vec![None; n];
    let mut placed: Vec<BigInt> = Vec::with_capacity(n);
    let mut index_of = vec![usize::MAX; n];
    for component in g.components() {
        let root = component[0];
        let root_value = if placed.is_empty() {
            BigInt::from(0)
        } else {
            isolated_value(primes, &placed)?
        };
        index_of[root] = placed.len();
        placed.push(root_value.clone());
        values[root] = Some(root_value);
        let order = g.bfs_order(root);
        for &v in &order[1..] {
            let parent = g
                .neighbors(v)
                .find(|&w| values[w].is_some())
                .expect("bfs places a neighbour first");
            let value = pendant_value(primes, &placed, index_of[parent], budget)?;
            index_of[v] = placed.len();
            placed.push(value.clone());
            values[v] = Some(value);
        }
    }
    let points: Vec<BigInt> = values.into_iter().map(|v| v.expect("all placed")).collect();
    verified(primes, &points, g, VertexMap::identity(n))
}

/// Shifts the first set by `t = m·q` (`q` the least prime outside S,
/// `m = 1, 2, ...`) until it is disjoint from the second set with no unit
/// difference across, then returns the shifted first set followed by the
/// second. The target is the disjoint union of the two targets.
pub fn glue_components(
    rep1: &Representation,
    rep2: &Representation,
    budget: &SearchBudget,
) -> Result<Representation> {
    if rep1.primes() != rep2.primes() {
        return Err(Error::PrimeSetMismatch);
    }
    let primes = rep1.primes();
    let a1 = integer_points(rep1)?;
    let a2 = integer_points(rep2)?;
    let q = BigInt::from(least_prime_outside(primes));
    let shift = (1..=budget.max_shifts)
        .map(|m| &q * BigInt::from(m))
        .find(|t| {
            a1.iter().all(|x| {
                let moved = x + t;
                a2.iter()
                    .all(|y| moved != *y && !is_integer_unit(&(&moved - y), primes))
            })
        })
        .ok_or_else(|| {
            Error::SearchBudgetExceeded(format!("no separating shift among {}", budget.max_shifts))
        })?;
    let mut points: Vec<BigInt> = a1.iter().map(|x| x + &shift).collect();
    points.extend(a2.iter().cloned());

    let (g1, m1) = target_of(rep1);
    let (g2, m2) = target_of(rep2);
    let n1 = g1.order();
    let map: Vec<usize> = m1
        .as_slice()
        .iter()
        .copied()
        .chain(m2.as_slice().iter().map(|v| v + n1))
        .collect();
    verified(primes, &points, &g1.disjoint_union(&g2), VertexMap::new(map)?)
}

fn least_prime_outside(primes: &PrimeSet) -> u64 {
    let mut p = next_prime(1);
    while primes.contains(p) {
        p = next_prime(p);
    }
    p
}

/// Whether appending `x` to `points` leaves the old graph untouched.
#[cfg(test)]
fn keeps_old_graph(primes: &PrimeSet, points: &[SInteger], x: &SInteger) -> bool {
    use crate::unitgraph::build_graph;
    let before = build_graph(primes, points).unwrap();
    let mut all = points.to_vec();
    all.push(x.clone());
    let after = build_graph(primes, &all).unwrap();
    before == after.induced_subgraph(&(0..points.len()).collect::<Vec<_>>())
}
