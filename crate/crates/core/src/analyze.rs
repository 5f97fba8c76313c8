//! Representability verdicts for a graph and a prime set, and a
//! brute-force search over small integer windows to check them against.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::graphcore::{h_graph, is_induced_subgraph, is_isomorphic, triangle_graph, Graph};
use crate::sintring::{PrimeSet, SInteger};
use crate::synthesis::hypercube_embed;
use crate::unitgraph::{build_graph, canonicalize, Representation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    RepresentableAllS,
    InfinitelyRepresentable,
    FinitelyRepresentable,
    NotRepresentable,
    Conditional,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("plain enum");
        f.write_str(s.as_str().expect("string"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub citations: Vec<String>,
    pub notes: String,
}

impl Verdict {
    fn new(status: Status, citations: &[&str], notes: impl Into<String>) -> Self {
        Verdict {
            status,
            citations: citations.iter().map(|c| c.to_string()).collect(),
            notes: notes.into(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }
}

/// Whether `g` embeds as an induced subgraph of a hypercube, tested per
/// component (a disjoint union of such graphs embeds too, with two extra
/// coordinates keeping the pieces apart).
fn is_cubical(g: &Graph) -> bool {
    g.components().iter().all(|comp| {
        let sub = g.induced_subgraph(comp);
        let dim = comp.len().saturating_sub(1).min(16);
        matches!(hypercube_embed(&sub, dim), Ok(Some(_)))
    })
}

/// Sides of `g` when it is a complete bipartite graph with both sides
/// non-empty.
fn complete_bipartite_sides(g: &Graph) -> Option<(usize, usize)> {
    if !g.is_connected() || g.order() < 2 {
        return None;
    }
    let colors = g.two_coloring()?;
    let m = colors.iter().filter(|&&c| c == 0).count();
    let n = g.order() - m;
    (g.edge_count() == m * n).then_some((m.max(n), m.min(n)))
}

/// Large-order obstructions, evaluated exactly. `order` is `|G|`,
/// `complement_parts` the orders of the components of the complement and
/// `bipartite_sides` the sides when `G = K_{m,n}`. Separate from
/// [`classify`] so the branch can be exercised with fabricated orders far
/// beyond anything that can be materialized.
pub fn size_obstruction(
    order: &BigUint,
    complement_parts: &[BigUint],
    bipartite_sides: Option<(BigUint, BigUint)>,
    primes: &PrimeSet,
) -> Option<Verdict> {
    let s = primes.len();
    let two = BigUint::from(2u32);
    let split = complement_parts.len() >= 3
        || (complement_parts.len() == 2 && complement_parts.iter().all(|c| c >= &two));
    let threshold = BigUint::from(3u32) << (16 * (s + 1));
    if split && order > &threshold {
        return Some(Verdict::new(
            Status::NotRepresentable,
            &["Thm 5.5"],
            format!(
                "complement splits and |G| > 3·2^{} = {threshold}; the threshold depends on |S| \
                 although the statement says 'with any S', so it is applied for this S only",
                16 * (s + 1)
            ),
        ));
    }
    if let Some((m, n)) = bipartite_sides {
        let star = BigUint::from(3u32) << (16 * (s + 2));
        if m > BigUint::one() && n > BigUint::one() && &m + &n > star {
            return Some(Verdict::new(
                Status::NotRepresentable,
                &["Thm 3.6"],
                format!("K_{{{m},{n}}} with m + n > 3·2^{} = {star}", 16 * (s + 2)),
            ));
        }
    }
    None
}

/// Classification by a fixed ladder of tests, strongest conclusion first:
///
/// 1. forest, or every component an induced hypercube subgraph:
///    representable with every S (infinitely so when `|G| ≥ 3`);
/// 2. `2 ∉ S` and an odd cycle: not representable, since every unit is odd
///    and adjacent points differ in parity;
/// 3. `|G| ≥ 3`, `G` and `G^Δ` connected: finitely representable;
/// 4. `|G| ≥ 3`, `G` and `H(G)` connected: finitely representable;
/// 5. `C_5` or `K_{m,n}` with `m > n > 1` or `m = n ≥ 3`: finitely;
/// 6. the large-order obstructions of [`size_obstruction`];
/// 7. `|G| ≥ 3` and not doubly connected: representable with S implies
///    infinitely representable with S;
/// 8. unknown.
pub fn classify(g: &Graph, primes: &PrimeSet) -> Verdict {
    let n = g.order();
    let big = n >= 3;

    if g.is_forest() || is_cubical(g) {
        let base = if g.is_forest() { "Thm 3" } else { "Thm 8.1" };
        let what = if g.is_forest() { "forest" } else { "cubical" };
        return if big {
            Verdict::new(
                Status::RepresentableAllS,
                &[base, "Cor 4.2"],
                format!("{what}; infinitely representable with every S"),
            )
        } else {
            Verdict::new(Status::RepresentableAllS, &[base], what)
        };
    }

    if !primes.contains(2) && !g.is_bipartite() {
        return if g.has_triangle() {
            Verdict::new(
                Status::NotRepresentable,
                &["Exceptional units"],
                "contains a triangle and S has only odd primes, so no exceptional units exist",
            )
        } else {
            Verdict::new(
                Status::NotRepresentable,
                &["Ruzsa ii"],
                "contains an odd cycle and S has only odd primes, so induced cycles have even length",
            )
        };
    }

    if big && g.is_connected() {
        let tri = triangle_graph(g);
        if tri.graph.is_connected() {
            return Verdict::new(
                Status::FinitelyRepresentable,
                &["Thm 5.1"],
                "G and its triangle graph are connected; finitely representable with every S",
            );
        }
        if h_graph(g).graph.is_connected() {
            return Verdict::new(
                Status::FinitelyRepresentable,
                &["Thm 5.2"],
                "G and H(G) are connected; finitely representable with every S",
            );
        }
    }

    let sides = complete_bipartite_sides(g);
    let is_c5 = n == 5 && g.edge_count() == 5 && g.is_connected() && g.degree_sequence().iter().all(|&d| d == 2);
    let special_bipartite = matches!(sides, Some((m, k)) if (m > k && k > 1) || (m == k && k >= 3));
    if is_c5 || special_bipartite {
        return Verdict::new(
            Status::FinitelyRepresentable,
            &["Thm 3.5"],
            "C_5 or K_{m,n} with m > n > 1 or m = n ≥ 3; finitely representable with every S",
        );
    }

    let complement_parts: Vec<BigUint> = g
        .complement()
        .components()
        .iter()
        .map(|c| BigUint::from(c.len()))
        .collect();
    let big_sides = sides.map(|(a, b)| (BigUint::from(a), BigUint::from(b)));
    if let Some(v) = size_obstruction(&BigUint::from(n), &complement_parts, big_sides, primes) {
        return v;
    }

    if big && !g.is_doubly_connected() {
        return Verdict::new(
            Status::Conditional,
            &["Thm 4.3"],
            "at most simply connected: if representable with S then infinitely representable with S",
        );
    }

    Verdict::new(Status::Unknown, &[], "no criterion applies")
}

/// Walks the subsets of `{0, ..., limit}` of size `|G|` that contain 0, in
/// lexicographic order, pruning every prefix whose graph is not an induced
/// subgraph of `g`; calls `visit` on each full match and stops when it
/// returns false. A class always has a member containing 0, so no class in
/// the window is missed.
fn scan_window(g: &Graph, primes: &PrimeSet, limit: u64, mut visit: impl FnMut(&[u64]) -> bool) {
    let n = g.order();
    if n == 0 {
        return;
    }
    let unit: Vec<bool> = (0..=limit)
        .map(|d| d > 0 && SInteger::from_i64(d as i64, primes).is_s_unit())
        .collect();
    let mut chosen: Vec<u64> = vec![0];
    let mut edges = Vec::new();

    fn rec(
        g: &Graph,
        limit: u64,
        unit: &[bool],
        chosen: &mut Vec<u64>,
        edges: &mut Vec<(usize, usize)>,
        visit: &mut dyn FnMut(&[u64]) -> bool,
    ) -> bool {
        if chosen.len() == g.order() {
            return visit(chosen);
        }
        let k = chosen.len();
        let start = chosen[k - 1] + 1;
        for x in start..=limit {
            let before = edges.len();
            edges.extend((0..k).filter(|&i| unit[(x - chosen[i]) as usize]).map(|i| (i, k)));
            let partial = Graph::from_edges(k + 1, edges.iter().copied()).expect("valid vertices");
            let mut go_on = true;
            if is_induced_subgraph(&partial, g).is_some() {
                chosen.push(x);
                go_on = rec(g, limit, unit, chosen, edges, visit);
                chosen.pop();
            }
            edges.truncate(before);
            if !go_on {
                return false;
            }
        }
        true
    }

    rec(g, limit, &unit, &mut chosen, &mut edges, &mut visit);
}

fn witness(g: &Graph, primes: &PrimeSet, points: &[u64]) -> Option<Representation> {
    let ints: Vec<BigInt> = points.iter().map(|&x| BigInt::from(x)).collect();
    let rep = Representation::from_integers(primes.clone(), &ints).ok()?;
    let map = is_isomorphic(&rep.graph(), g)?;
    rep.with_target(g.clone(), map).ok()
}

/// First set `A ⊆ {0, ..., range_limit}` in lexicographic order with
/// `G_S(A) ≅ g`, or none in the window.
pub fn brute_force_search(g: &Graph, primes: &PrimeSet, range_limit: u64) -> Option<Representation> {
    let mut found = None;
    scan_window(g, primes, range_limit, |pts| {
        found = witness(g, primes, pts);
        found.is_none()
    });
    found
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub count: usize,
    /// Canonical forms, sorted.
    pub classes: Vec<Vec<SInteger>>,
}

impl Serialize for Census {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let classes: Vec<Vec<String>> = self
            .classes
            .iter()
            .map(|c| c.iter().map(SInteger::to_string).collect())
            .collect();
        let mut st = s.serialize_struct("Census", 2)?;
        st.serialize_field("count", &self.count)?;
        st.serialize_field("classes", &classes)?;
        st.end()
    }
}

/// Equivalence classes of representations of `g` inside
/// `{0, ..., range_limit}`.
pub fn census_equivalence_classes(g: &Graph, primes: &PrimeSet, range_limit: u64) -> Census {
    let mut classes = BTreeSet::new();
    scan_window(g, primes, range_limit, |pts| {
        let values: Vec<SInteger> = pts.iter().map(|&x| SInteger::from_i64(x as i64, primes)).collect();
        let graph = build_graph(primes, &values).expect("distinct points");
        if is_isomorphic(&graph, g).is_some() {
            classes.insert(canonicalize(primes, &values).expect("non-empty"));
        }
        true
    });
    Census {
        count: classes.len(),
        classes: classes.into_iter().collect(),
    }
}
