//! A prime set and point set for an arbitrary graph, built one vertex at a
//! time with congruence conditions.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::verified;
use crate::error::{Error, Result};
use crate::graphcore::{Graph, VertexMap};
use crate::sintring::{crt_solve, next_prime, prime_divisors, primes_below, PrimeSet};
use crate::unitgraph::Representation;

/// Finds `(S, A)` with `G_S(A) ≅ G`.
///
/// With `n' = max(|G|, 3)` the construction starts from `S = {p < n'}` and
/// `A = [0]`. The `k`-th new point `a` satisfies `a ≡ a_t (mod q_t)` for
/// every earlier vertex `t` it must not be joined to, with fresh primes
/// `q_t`, and `a ≢ a_i (mod d)` for the prime `d` keeping each existing
/// non-edge a non-unit difference. The primes of `a - a_i` for the wanted
/// neighbours `i` are then added to S.
///
/// Each non-edge keeps one such witness prime for the rest of the
/// construction; only witness primes enter the avoidance conditions.
///
/// `variant > 0` returns a representation over a different prime set:
/// a vertex of positive degree is built last, and its congruence system
/// gains `a ≡ a_i (mod p)` for a neighbour `i` and the `variant`-th prime
/// `p` outside the `variant = 0` set and the other moduli, which forces `p`
/// into S. Edgeless graphs instead get the `variant`-th prime that divides
/// no difference added to S.
pub fn represent_any(g: &Graph, variant: u32) -> Result<Representation> {
    let n = g.order();
    let mut order: Vec<usize> = (0..n).collect();
    if variant == 0 {
        return build(g, &order, None)?.into_representation(g, &order);
    }
    if g.edge_count() == 0 {
        let base = build(g, &order, None)?;
        return edgeless_variant(g, base, variant);
    }
    let last = (0..n).rev().find(|&v| g.degree(v) > 0).expect("graph has an edge");
    order.retain(|&v| v != last);
    order.push(last);
    let base = build(g, &order, None)?;
    let extra = Extra {
        variant,
        exclude: base.primes.clone(),
    };
    build(g, &order, Some(&extra))?.into_representation(g, &order)
}

struct Extra {
    variant: u32,
    exclude: BTreeSet<u64>,
}

struct Construction {
    primes: BTreeSet<u64>,
    points: Vec<BigInt>,
}

impl Construction {
    fn into_representation(self, g: &Graph, order: &[usize]) -> Result<Representation> {
        let primes = PrimeSet::new(self.primes.into_iter().collect())?;
        verified(&primes, &self.points, g, VertexMap::new(order.to_vec())?)
    }
}

fn build(g: &Graph, order: &[usize], extra: Option<&Extra>) -> Result<Construction> {
    let n = g.order();
    let n_prime = n.max(3) as u64;
    let mut primes: BTreeSet<u64> = primes_below(n_prime).into_iter().collect();
    let mut points: Vec<BigInt> = Vec::with_capacity(n);
    // non-adjacent point pairs and the prime keeping their difference a non-unit
    let mut witness: BTreeMap<(usize, usize), u64> = BTreeMap::new();

    for (k, &v) in order.iter().enumerate() {
        if k == 0 {
            points.push(BigInt::zero());
            continue;
        }
        let non_neighbours: Vec<usize> = (0..k).filter(|&i| !g.has_edge(order[i], v)).collect();
        let avoid: BTreeSet<u64> = witness.values().copied().collect();
        for &d in &avoid {
            assert!(d as usize > k, "witness prime {d} too small at step {k}");
        }
        let diffs: Vec<BigInt> = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .map(|(i, j)| &points[i] - &points[j])
            .collect();

        let mut moduli: BTreeSet<u64> = avoid.clone();
        let mut system: Vec<(BigInt, BigInt)> = Vec::new();
        for &d in &avoid {
            system.push((avoiding_residue(&points, d), BigInt::from(d)));
        }
        let mut fresh = Vec::with_capacity(non_neighbours.len());
        let mut q = 1;
        for &t in &non_neighbours {
            q = next_prime(q);
            while primes.contains(&q) || moduli.contains(&q) || divides_any(q, &diffs) {
                q = next_prime(q);
            }
            moduli.insert(q);
            fresh.push((t, q));
            system.push((points[t].clone(), BigInt::from(q)));
        }
        if let Some(extra) = extra.filter(|_| k + 1 == n) {
            let anchor = (0..k).find(|&i| g.has_edge(order[i], v)).expect("positive degree");
            let mut p = 1;
            let mut seen = 0;
            loop {
                p = next_prime(p);
                if extra.exclude.contains(&p) || primes.contains(&p) || moduli.contains(&p) {
                    continue;
                }
                seen += 1;
                if seen == extra.variant {
                    break;
                }
            }
            system.push((points[anchor].clone(), BigInt::from(p)));
        }

        let solution = crt_solve(&system)?;
        let a = (0..)
            .map(|i| solution.nth(i))
            .find(|x| !points.contains(x))
            .expect("solutions are unbounded");
        for &(t, q) in &fresh {
            witness.insert((t, k), q);
        }
        for i in (0..k).filter(|i| !non_neighbours.contains(i)) {
            let diff = (&a - &points[i]).magnitude().clone();
            for p in prime_divisors(&diff) {
                primes.insert(p.to_u64().ok_or_else(|| {
                    Error::VerificationFailed(format!("prime factor {p} exceeds 64 bits"))
                })?);
            }
        }
        points.push(a);
    }
    Ok(Construction { primes, points })
}

/// Smallest `x ≥ 0` with `x ≢ a_i (mod d)` for every point.
fn avoiding_residue(points: &[BigInt], d: u64) -> BigInt {
    let modulus = BigInt::from(d);
    let used: BTreeSet<BigInt> = points.iter().map(|a| a.mod_floor(&modulus)).collect();
    (0..d)
        .map(BigInt::from)
        .find(|x| !used.contains(x))
        .expect("fewer points than residues")
}

fn divides_any(q: u64, diffs: &[BigInt]) -> bool {
    let q = BigInt::from(q);
    diffs.iter().any(|d| d.is_multiple_of(&q))
}

fn edgeless_variant(g: &Graph, base: Construction, variant: u32) -> Result<Representation> {
    let diffs: Vec<BigInt> = base
        .points
        .iter()
        .enumerate()
        .flat_map(|(i, a)| base.points[i + 1..].iter().map(move |b| a - b))
        .collect();
    let mut p = 1;
    let mut seen = 0;
    while seen < variant {
        p = next_prime(p);
        if !base.primes.contains(&p) && !divides_any(p, &diffs) {
            seen += 1;
        }
    }
    let mut primes = base.primes;
    primes.insert(p);
    Construction {
        primes,
        points: base.points,
    }
    .into_representation(g, &(0..g.order()).collect::<Vec<_>>())
}
