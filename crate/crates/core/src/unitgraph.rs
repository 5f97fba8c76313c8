//! The graph `G_S(A)` of a finite point set and S-equivalence of point sets.
//!
//! Two sets are S-equivalent when one is `u·A + b` for an S-unit `u` and an
//! S-integer `b`; equivalent sets have isomorphic graphs. Equivalence is
//! decided through a canonical representative rather than a search for
//! `(u, b)`: write `u = ±s` with `s` a positive S-unit. Translating the
//! minimum to zero absorbs `b`, dividing by the common S-part absorbs `s`,
//! and taking the smaller of the normalized set and its reflection absorbs
//! the sign.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphcore::{Graph, VertexMap};
use crate::sintring::{PrimeSet, SInteger};

/// Point set `A` over `S`, optionally tied to a target graph: point `k`
/// corresponds to vertex `map[k]` of `target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RepresentationJson", into = "RepresentationJson")]
pub struct Representation {
    primes: PrimeSet,
    points: Vec<SInteger>,
    target: Option<(Graph, VertexMap)>,
}

#[derive(Serialize, Deserialize)]
struct RepresentationJson {
    primes: PrimeSet,
    points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    graph: Option<Graph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    map: Option<VertexMap>,
}

impl TryFrom<RepresentationJson> for Representation {
    type Error = Error;
    fn try_from(j: RepresentationJson) -> Result<Self> {
        let points = j
            .points
            .iter()
            .map(|p| SInteger::parse(p, &j.primes))
            .collect::<Result<Vec<_>>>()?;
        let rep = Representation::new(j.primes, points)?;
        match (j.graph, j.map) {
            (Some(g), map) => {
                let map = map.unwrap_or_else(|| VertexMap::identity(g.order()));
                rep.with_target(g, map)
            }
            (None, None) => Ok(rep),
            (None, Some(_)) => Err(Error::Parse("`map` given without `graph`".into())),
        }
    }
}

impl From<Representation> for RepresentationJson {
    fn from(r: Representation) -> Self {
        let (graph, map) = match r.target {
            Some((g, m)) => (Some(g), Some(m)),
            None => (None, None),
        };
        RepresentationJson {
            points: r.points.iter().map(SInteger::to_string).collect(),
            primes: r.primes,
            graph,
            map,
        }
    }
}

impl Representation {
    pub fn new(primes: PrimeSet, points: Vec<SInteger>) -> Result<Self> {
        check_points(&primes, &points)?;
        Ok(Representation {
            primes,
            points,
            target: None,
        })
    }

    /// Integer points over `primes`.
    pub fn from_integers(primes: PrimeSet, points: &[num_bigint::BigInt]) -> Result<Self> {
        let pts = points
            .iter()
            .map(|a| SInteger::from_integer(a, &primes))
            .collect();
        Self::new(primes, pts)
    }

    /// Attaches a target graph, checking that `map` is an isomorphism from
    /// `G_S(points)` onto it.
    pub fn with_target(mut self, target: Graph, map: VertexMap) -> Result<Self> {
        let own = self.graph();
        if !map.is_isomorphism(&own, &target) {
            return Err(Error::VerificationFailed(
                "map is not an isomorphism onto the target graph".into(),
            ));
        }
        self.target = Some((target, map));
        Ok(self)
    }

    pub fn primes(&self) -> &PrimeSet {
        &self.primes
    }

    pub fn points(&self) -> &[SInteger] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn target(&self) -> Option<&Graph> {
        self.target.as_ref().map(|t| &t.0)
    }

    pub fn map(&self) -> Option<&VertexMap> {
        self.target.as_ref().map(|t| &t.1)
    }

    /// `G_S(points)`, vertex `k` being point `k`.
    pub fn graph(&self) -> Graph {
        build_graph(&self.primes, &self.points).expect("points validated on construction")
    }

    /// Points as integers, if they all are.
    pub fn integer_points(&self) -> Option<Vec<num_bigint::BigInt>> {
        self.points.iter().map(SInteger::to_integer).collect()
    }

    /// Re-checks the target isomorphism, if any.
    pub fn verify(&self) -> Result<()> {
        if let Some((g, m)) = &self.target {
            if !m.is_isomorphism(&self.graph(), g) {
                return Err(Error::VerificationFailed("target isomorphism broken".into()));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("representation serializes")
    }
}

fn check_points(primes: &PrimeSet, points: &[SInteger]) -> Result<()> {
    if points.iter().any(|p| p.primes() != primes) {
        return Err(Error::PrimeSetMismatch);
    }
    let mut sorted: Vec<&SInteger> = points.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePoints);
    }
    Ok(())
}

/// `G_S(A)`: vertex `k` is `A[k]`, and `{i, j}` is an edge exactly when
/// `A[i] - A[j]` is an S-unit.
pub fn build_graph(primes: &PrimeSet, points: &[SInteger]) -> Result<Graph> {
    check_points(primes, points)?;
    let mut g = Graph::new(points.len());
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            if points[i].checked_sub(&points[j])?.is_s_unit() {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Sorted, minimum moved to 0, common S-part divided out. The result is a
/// list of non-negative integers.
fn normalize(primes: &PrimeSet, set: &[SInteger]) -> Result<Vec<SInteger>> {
    let mut xs = set.to_vec();
    xs.sort();
    let min = xs[0].clone();
    let shifted = xs
        .iter()
        .map(|x| x.checked_sub(&min))
        .collect::<Result<Vec<_>>>()?;
    let mut content: Option<Vec<i64>> = None;
    for x in shifted.iter().filter(|x| !x.is_zero()) {
        content = Some(match content {
            None => x.exponents().to_vec(),
            Some(c) => c.iter().zip(x.exponents()).map(|(a, &b)| (*a).min(b)).collect(),
        });
    }
    let Some(content) = content else {
        return Ok(shifted);
    };
    let scale = SInteger::unit(primes, false, content.iter().map(|e| -e).collect());
    shifted.iter().map(|x| x.checked_mul(&scale)).collect()
}

/// Canonical representative of the S-equivalence class of the set `A`.
/// Duplicates in the input are ignored.
pub fn canonicalize(primes: &PrimeSet, set: &[SInteger]) -> Result<Vec<SInteger>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    if set.iter().any(|p| p.primes() != primes) {
        return Err(Error::PrimeSetMismatch);
    }
    let mut xs = set.to_vec();
    xs.sort();
    xs.dedup();
    let forward = normalize(primes, &xs)?;
    let reflected: Vec<SInteger> = xs.iter().map(|x| -x).collect();
    let backward = normalize(primes, &reflected)?;
    Ok(forward.min(backward))
}

/// Whether `a = u·b + t` for some S-unit `u` and S-integer `t`.
pub fn are_equivalent(primes: &PrimeSet, a: &[SInteger], b: &[SInteger]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    if a.is_empty() {
        return Ok(true);
    }
    Ok(canonicalize(primes, a)? == canonicalize(primes, b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphcore::{complete, is_isomorphic, path};
    use num_bigint::BigInt;

    fn s(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.to_vec()).unwrap()
    }

    fn pts(primes: &PrimeSet, v: &[i64]) -> Vec<SInteger> {
        v.iter().map(|&x| SInteger::from_i64(x, primes)).collect()
    }

    fn strs(v: &[SInteger]) -> Vec<String> {
        v.iter().map(SInteger::to_string).collect()
    }

    #[test]
    fn build_graph_examples() {
        let s23 = s(&[2, 3]);
        assert_eq!(build_graph(&s23, &pts(&s23, &[0, 1, 3])).unwrap(), complete(3).unwrap());
        let s2 = s(&[2]);
        assert_eq!(
            build_graph(&s2, &pts(&s2, &[0, 1, 3])).unwrap(),
            Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
        );
        assert_eq!(
            build_graph(&s2, &pts(&s2, &[0, 1, 0])),
            Err(Error::DuplicatePoints)
        );
    }

    #[test]
    fn odd_prime_sets_give_triangle_free_graphs() {
        let s3 = s(&[3]);
        let a = pts(&s3, &(0..30).collect::<Vec<_>>());
        assert!(!build_graph(&s3, &a).unwrap().has_triangle());
    }

    #[test]
    fn canonical_examples() {
        let s2 = s(&[2]);
        assert_eq!(strs(&canonicalize(&s2, &pts(&s2, &[3, 5, 9])).unwrap()), ["0", "1", "3"]);
        assert_eq!(strs(&canonicalize(&s2, &pts(&s2, &[6, 10, 12])).unwrap()), ["0", "1", "3"]);
        assert_eq!(strs(&canonicalize(&s2, &pts(&s2, &[17])).unwrap()), ["0"]);
        assert_eq!(canonicalize(&s2, &[]), Err(Error::EmptySet));
    }

    #[test]
    fn canonical_handles_fractions() {
        let s23 = s(&[2, 3]);
        let a: Vec<SInteger> = ["1/6", "1/2", "7/6"]
            .iter()
            .map(|t| SInteger::parse(t, &s23).unwrap())
            .collect();
        // shift to {0, 1/3, 1}, scale by 3 gives {0, 1, 3}
        assert_eq!(strs(&canonicalize(&s23, &a).unwrap()), ["0", "1", "3"]);
    }

    #[test]
    fn equivalence_examples() {
        let s2 = s(&[2]);
        assert!(!are_equivalent(&s2, &pts(&s2, &[0, 1]), &pts(&s2, &[0, 1, 2])).unwrap());
        assert!(!are_equivalent(&s2, &pts(&s2, &[0, 1, 3]), &pts(&s2, &[0, 1, 4])).unwrap());
        assert!(are_equivalent(&s2, &pts(&s2, &[3, 5, 9]), &pts(&s2, &[6, 10, 12])).unwrap());
    }

    // brute force over u = ±2^e, |e| ≤ 8 and integer shifts: does u·A + b = B?
    fn brute_equivalent(a: &[i64], b: &[i64]) -> bool {
        let s2 = s(&[2]);
        let target: std::collections::BTreeSet<SInteger> = pts(&s2, b).into_iter().collect();
        let a = pts(&s2, a);
        for e in -8i64..=8 {
            for neg in [false, true] {
                let u = SInteger::unit(&s2, neg, vec![e]);
                let scaled: Vec<SInteger> = a.iter().map(|x| x.checked_mul(&u).unwrap()).collect();
                // b is forced by matching minima
                let min_scaled = scaled.iter().min().unwrap().clone();
                let min_target = target.iter().next().unwrap().clone();
                let shift = min_target.checked_sub(&min_scaled).unwrap();
                let image: std::collections::BTreeSet<SInteger> =
                    scaled.iter().map(|x| x.checked_add(&shift).unwrap()).collect();
                if image == target {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn canonical_form_agrees_with_brute_force_search() {
        let s2 = s(&[2]);
        let sets: Vec<Vec<i64>> = vec![
            vec![0, 1, 3],
            vec![0, 1, 4],
            vec![0, 2, 3],
            vec![3, 5, 9],
            vec![6, 10, 12],
            vec![-4, 0, 8],
            vec![0, 4, 6],
            vec![0, 3, 4],
            vec![1, 2, 7],
        ];
        for a in &sets {
            for b in &sets {
                let canon = are_equivalent(&s2, &pts(&s2, a), &pts(&s2, b)).unwrap();
                assert_eq!(canon, brute_equivalent(a, b), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn representation_json_round_trip() {
        let s2 = s(&[2]);
        let rep = Representation::new(s2.clone(), pts(&s2, &[0, 1, 3]))
            .unwrap()
            .with_target(path(3).unwrap(), VertexMap::identity(3))
            .unwrap();
        let json = rep.to_json();
        assert_eq!(
            json,
            r#"{"primes":[2],"points":["0","1","3"],"graph":{"n":3,"edges":[[0,1],[1,2]]},"map":[0,1,2]}"#
        );
        let back: Representation = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);

        let bad = r#"{"primes":[2],"points":["0","1","3"],"graph":{"n":3,"edges":[[0,1],[0,2]]}}"#;
        assert!(serde_json::from_str::<Representation>(bad).is_err());
        let remapped = r#"{"primes":[2],"points":["0","1","3"],"graph":{"n":3,"edges":[[0,1],[0,2]]},"map":[1,0,2]}"#;
        let r: Representation = serde_json::from_str(remapped).unwrap();
        assert!(is_isomorphic(&r.graph(), r.target().unwrap()).is_some());
        assert_eq!(
            Representation::from_integers(s2, &[BigInt::from(2), BigInt::from(2)]),
            Err(Error::DuplicatePoints)
        );
    }
}
