//! Backtracking isomorphism and induced-subgraph matching for small graphs.

use super::{Graph, VertexMap};

struct Matcher<'a> {
    pattern: &'a Graph,
    target: &'a Graph,
    order: Vec<usize>,
    map: Vec<usize>,
    used: Vec<bool>,
    exact_degrees: bool,
}

impl Matcher<'_> {
    fn extend(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let v = self.order[pos];
        for w in 0..self.target.order() {
            if self.used[w] || !self.degree_ok(v, w) || !self.consistent(pos, v, w) {
                continue;
            }
            self.map[v] = w;
            self.used[w] = true;
            if self.extend(pos + 1) {
                return true;
            }
            self.used[w] = false;
        }
        false
    }

    fn degree_ok(&self, v: usize, w: usize) -> bool {
        let (dv, dw) = (self.pattern.degree(v), self.target.degree(w));
        if self.exact_degrees {
            dv == dw
        } else {
            dv <= dw
        }
    }

    fn consistent(&self, pos: usize, v: usize, w: usize) -> bool {
        self.order[..pos].iter().all(|&u| {
            self.pattern.has_edge(u, v) == self.target.has_edge(self.map[u], w)
        })
    }
}

/// Search order: breadth-first within each component, components by their
/// minimum vertex. Keeps newly placed vertices adjacent to placed ones.
fn search_order(g: &Graph) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut order = Vec::with_capacity(g.order());
    for root in 0..g.order() {
        if !seen[root] {
            for v in g.bfs_order(root) {
                seen[v] = true;
                order.push(v);
            }
        }
    }
    order
}

/// First isomorphism `g → h` in the deterministic search order, if any.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Option<VertexMap> {
    if g.order() != h.order()
        || g.edge_count() != h.edge_count()
        || g.degree_sequence() != h.degree_sequence()
    {
        return None;
    }
    let mut m = Matcher {
        pattern: g,
        target: h,
        order: search_order(g),
        map: vec![usize::MAX; g.order()],
        used: vec![false; h.order()],
        exact_degrees: true,
    };
    m.extend(0)
        .then(|| VertexMap::new(m.map).expect("search builds a bijection"))
}

/// Injective map `small → big` under which `small` is an induced subgraph.
pub fn is_induced_subgraph(small: &Graph, big: &Graph) -> Option<Vec<usize>> {
    if small.order() > big.order() || small.edge_count() > big.edge_count() {
        return None;
    }
    let mut m = Matcher {
        pattern: small,
        target: big,
        order: search_order(small),
        map: vec![usize::MAX; small.order()],
        used: vec![false; big.order()],
        exact_degrees: false,
    };
    m.extend(0).then_some(m.map)
}

#[cfg(test)]
mod tests {
    use super::super::{complete_bipartite, cycle, path, random_graph};
    use super::*;

    fn shuffled(g: &Graph, seed: u64) -> (Graph, VertexMap) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let map = VertexMap::new(perm).unwrap();
        (g.relabel(&map), map)
    }

    #[test]
    fn c4_is_k22() {
        let c4 = cycle(4).unwrap();
        let k22 = complete_bipartite(2, 2).unwrap();
        let w = is_isomorphic(&c4, &k22).unwrap();
        assert!(w.is_isomorphism(&c4, &k22));
    }

    #[test]
    fn c6_vs_two_triangles() {
        let two_k3 = cycle(3).unwrap().disjoint_union(&cycle(3).unwrap());
        assert!(is_isomorphic(&cycle(6).unwrap(), &two_k3).is_none());
    }

    #[test]
    fn permuted_random_graphs() {
        for seed in 0..40 {
            let g = random_graph(7, 0.45, seed).unwrap();
            let (h, _) = shuffled(&g, seed + 1);
            let w = is_isomorphic(&g, &h).expect("permuted copy");
            assert!(w.is_isomorphism(&g, &h));
            // symmetric with inverse witness
            let back = is_isomorphic(&h, &g).unwrap();
            assert!(back.is_isomorphism(&h, &g));
            assert!(w.inverse().is_isomorphism(&h, &g));
        }
    }

    #[test]
    fn same_degrees_different_graphs() {
        // both 3-regular on 6 vertices
        let k33 = complete_bipartite(3, 3).unwrap();
        let prism = Graph::from_edges(
            6,
            [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap();
        assert_eq!(k33.degree_sequence(), prism.degree_sequence());
        assert!(is_isomorphic(&k33, &prism).is_none());
    }

    #[test]
    fn induced_subgraphs() {
        let c5 = cycle(5).unwrap();
        assert!(is_induced_subgraph(&path(4).unwrap(), &c5).is_some());
        // P_5 is a subgraph of C_5 but not an induced one
        assert!(is_induced_subgraph(&path(5).unwrap(), &c5).is_none());
        let c4 = cycle(4).unwrap();
        assert!(is_induced_subgraph(&path(3).unwrap(), &c4).is_some());
        assert!(is_induced_subgraph(&Graph::new(3), &c4).is_none());
    }
}
