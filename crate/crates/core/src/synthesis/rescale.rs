//! Moving a representation over `{p}` to an arbitrary prime set by
//! replacing its edge labels with rapidly growing units.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::target_of;
use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::graphcore::Graph;
use crate::sintring::{PrimeSet, SInteger};
use crate::unitgraph::{build_graph, Representation};

/// Edge labels of a representation: the label of edge `(i, j)` with `i < j`
/// is `a_j - a_i`, and traversing it backwards negates it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLabeling {
    edges: Vec<(usize, usize)>,
    labels: Vec<SInteger>,
}

impl EdgeLabeling {
    pub fn from_representation(rep: &Representation) -> Result<Self> {
        let g = rep.graph();
        let edges = g.edges();
        let pts = rep.points();
        let labels = edges
            .iter()
            .map(|&(i, j)| pts[j].checked_sub(&pts[i]))
            .collect::<Result<Vec<_>>>()?;
        Ok(EdgeLabeling { edges, labels })
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> &[SInteger] {
        &self.labels
    }

    /// Label of the edge traversed from `i` to `j`.
    pub fn label(&self, i: usize, j: usize) -> Option<SInteger> {
        let key = (i.min(j), i.max(j));
        let k = self.edges.binary_search(&key).ok()?;
        Some(if i < j {
            self.labels[k].clone()
        } else {
            -&self.labels[k]
        })
    }
}

/// Labels of a representation over a single prime, each written as
/// `sign · p^m`, with `m` replaced by its rank among the occurring exponents.
struct RankedLabels {
    graph: Graph,
    /// per edge of `graph.edges()`: (negative, rank)
    ranked: Vec<(bool, usize)>,
    distinct: usize,
}

fn ranked_labels(rep0: &Representation) -> Result<RankedLabels> {
    let labeling = EdgeLabeling::from_representation(rep0)?;
    let exps: Vec<i64> = labeling.labels.iter().map(|l| l.exponents()[0]).collect();
    let distinct: Vec<i64> = exps.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let ranked = labeling
        .labels
        .iter()
        .zip(&exps)
        .map(|(l, e)| (l.signum() < 0, distinct.binary_search(e).expect("present")))
        .collect();
    Ok(RankedLabels {
        graph: rep0.graph(),
        ranked,
        distinct: distinct.len(),
    })
}

fn check_single_prime(rep0: &Representation) -> Result<u64> {
    match rep0.primes().primes() {
        [p] => Ok(*p),
        _ => Err(Error::NotSinglePrime(rep0.primes().to_string())),
    }
}

/// Relabels with the given units `w_1, ..., w_k`: the `i`-th smallest label
/// magnitude of `rep0` becomes `w_i`, signs are kept, and point values are
/// summed along a breadth-first tree from point 0 (which becomes 0).
/// Fails with `VerificationFailed` unless labels agree around every cycle,
/// the values are distinct and the new graph has exactly the old edges.
pub fn rescale_with_profile(
    rep0: &Representation,
    primes: &PrimeSet,
    w: &[SInteger],
) -> Result<Representation> {
    check_single_prime(rep0)?;
    let labels = ranked_labels(rep0)?;
    apply_profile(rep0, &labels, primes, w)
}

fn apply_profile(
    rep0: &Representation,
    labels: &RankedLabels,
    primes: &PrimeSet,
    w: &[SInteger],
) -> Result<Representation> {
    if w.len() != labels.distinct {
        return Err(Error::BadParameters(format!(
            "{} units given for {} label magnitudes",
            w.len(),
            labels.distinct
        )));
    }
    if w.iter().any(|u| u.primes() != primes || !u.is_s_unit()) {
        return Err(Error::BadParameters("profile entries must be units over the target set".into()));
    }
    let g = &labels.graph;
    let edges = g.edges();
    let step = |i: usize, j: usize| -> SInteger {
        let k = edges.binary_search(&(i.min(j), i.max(j))).expect("edge");
        let (negative, rank) = labels.ranked[k];
        let forward = if negative { -&w[rank] } else { w[rank].clone() };
        if i < j {
            forward
        } else {
            -forward
        }
    };

    let n = g.order();
    let mut values: Vec<Option<SInteger>> = vec![None; n];
    values[0] = Some(SInteger::zero(primes));
    for v in g.bfs_order(0) {
        let base = values[v].clone().expect("visited in bfs order");
        for u in g.neighbors(v) {
            if values[u].is_none() {
                values[u] = Some(base.checked_add(&step(v, u))?);
            }
        }
    }
    let values: Vec<SInteger> = values
        .into_iter()
        .map(|v| v.ok_or(Error::NotConnected))
        .collect::<Result<_>>()?;

    for &(i, j) in &edges {
        if values[j].checked_sub(&values[i])? != step(i, j) {
            return Err(Error::VerificationFailed(format!(
                "relabelled edge ({i}, {j}) does not close up"
            )));
        }
    }
    let mut sorted = values.clone();
    sorted.sort();
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        return Err(Error::VerificationFailed("relabelled values collide".into()));
    }
    let rescaled = build_graph(primes, &values)?;
    if &rescaled != g {
        let extra = rescaled
            .edges()
            .into_iter()
            .find(|&(i, j)| !g.has_edge(i, j))
            .map(|(i, j)| format!("unexpected edge ({i}, {j})"))
            .unwrap_or_else(|| "edge set changed".into());
        return Err(Error::VerificationFailed(extra));
    }
    let (target, map) = target_of(rep0);
    Representation::new(primes.clone(), values)?.with_target(target, map)
}

/// Rescales a connected representation with a cycle over `{p}`,
/// `p > 2·#edges`, to the prime set `primes`.
///
/// With `q` the largest prime of `primes` and `g_0` the least gap with
/// `q^{g_0} > 2·#edges`, profile `r` uses `w_i = q^{(i-1)(g_0 + r)}`, so
/// `2·#edges·|w_i| < |w_{i+1}|`. Profiles are tried for `r = 0, 1, ...`
/// and each result is verified; `variant` skips that many verified
/// profiles, so distinct variants use distinct profiles.
pub fn rescale_representation(
    rep0: &Representation,
    primes: &PrimeSet,
    variant: u32,
    budget: &SearchBudget,
) -> Result<Representation> {
    let p = check_single_prime(rep0)?;
    let g = rep0.graph();
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    if g.is_forest() {
        return Err(Error::NoCycle);
    }
    let edges = g.edge_count();
    if p <= 2 * edges as u64 {
        return Err(Error::PTooSmall { p, edges });
    }
    let q = primes
        .largest()
        .ok_or_else(|| Error::BadParameters("target prime set is empty".into()))?;
    let q_index = primes.primes().len() - 1;
    let threshold = BigUint::from(2 * edges);
    let mut g0 = 1u32;
    while BigUint::from(q).pow(g0) <= threshold {
        g0 += 1;
    }

    let labels = ranked_labels(rep0)?;
    let mut verified_count = 0;
    for r in 0..budget.max_profiles {
        let gap = i64::from(g0 + r);
        let w: Vec<SInteger> = (0..labels.distinct as i64)
            .map(|i| {
                let mut exps = vec![0; primes.len()];
                exps[q_index] = i * gap;
                SInteger::unit(primes, false, exps)
            })
            .collect();
        match apply_profile(rep0, &labels, primes, &w) {
            Ok(rep) => {
                if verified_count == variant {
                    return Ok(rep);
                }
                verified_count += 1;
            }
            Err(Error::VerificationFailed(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SearchBudgetExceeded(format!(
        "{} rescaling profiles tried",
        budget.max_profiles
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unitgraph::canonicalize;
    use num_bigint::BigInt;

    fn s(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.to_vec()).unwrap()
    }

    fn c4_over_11() -> Representation {
        let pts: Vec<BigInt> = [0, 1, 12, 11].iter().map(|&x| BigInt::from(x)).collect();
        Representation::from_integers(s(&[11]), &pts).unwrap()
    }

    fn units(primes: &PrimeSet, v: &[i64]) -> Vec<SInteger> {
        v.iter().map(|&x| SInteger::from_i64(x, primes)).collect()
    }

    #[test]
    fn worked_profile_and_adversarial_profile() {
        let s23 = s(&[2, 3]);
        let rep = rescale_with_profile(&c4_over_11(), &s23, &units(&s23, &[1, 16])).unwrap();
        let ints: Vec<i64> = rep
            .integer_points()
            .unwrap()
            .iter()
            .map(|x| x.try_into().unwrap())
            .collect();
        assert_eq!(ints, [0, 1, 17, 16]);
        assert_eq!(rep.graph(), c4_over_11().graph());

        let bad = rescale_with_profile(&c4_over_11(), &s23, &units(&s23, &[1, 9]));
        assert!(matches!(bad, Err(Error::VerificationFailed(_))));
    }

    #[test]
    fn variants_are_inequivalent() {
        let s23 = s(&[2, 3]);
        let b = SearchBudget::default();
        let forms: Vec<Vec<SInteger>> = (0..3)
            .map(|v| {
                let r = rescale_representation(&c4_over_11(), &s23, v, &b).unwrap();
                assert_eq!(r.graph(), c4_over_11().graph());
                canonicalize(&s23, r.points()).unwrap()
            })
            .collect();
        assert_ne!(forms[0], forms[1]);
        assert_ne!(forms[0], forms[2]);
        assert_ne!(forms[1], forms[2]);
    }

    #[test]
    fn preconditions() {
        let b = SearchBudget::default();
        let s23 = s(&[2, 3]);
        let path = Representation::from_integers(s(&[11]), &[0, 1].map(BigInt::from)).unwrap();
        assert_eq!(rescale_representation(&path, &s23, 0, &b), Err(Error::NoCycle));
        let two = Representation::from_integers(s(&[2, 3]), &[0, 1].map(BigInt::from)).unwrap();
        assert!(matches!(
            rescale_representation(&two, &s23, 0, &b),
            Err(Error::NotSinglePrime(_))
        ));
        let c4_small = Representation::from_integers(s(&[5]), &[0, 1, 6, 5].map(BigInt::from)).unwrap();
        assert_eq!(
            rescale_representation(&c4_small, &s23, 0, &b),
            Err(Error::PTooSmall { p: 5, edges: 4 })
        );
        let apart = Representation::from_integers(s(&[11]), &[0, 5].map(BigInt::from)).unwrap();
        assert_eq!(rescale_representation(&apart, &s23, 0, &b), Err(Error::NotConnected));
    }

    #[test]
    fn labeling_orientation() {
        let lab = EdgeLabeling::from_representation(&c4_over_11()).unwrap();
        assert_eq!(lab.edges(), &[(0, 1), (0, 3), (1, 2), (2, 3)]);
        assert_eq!(lab.label(0, 3).unwrap().to_string(), "11");
        assert_eq!(lab.label(3, 0).unwrap().to_string(), "-11");
        assert_eq!(lab.label(0, 2), None);
    }
}
