//! Triangle graphs and the graph of triangle-connected components.

use std::collections::BTreeSet;

use super::Graph;

/// Triangle graph of `G`: vertex `k` is the `k`-th edge of `G` in
/// lexicographic order; two edges are adjacent when they lie in a common
/// triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleGraph {
    pub graph: Graph,
    pub edges: Vec<(usize, usize)>,
}

impl TriangleGraph {
    pub fn edge_index(&self, i: usize, j: usize) -> Option<usize> {
        let key = (i.min(j), i.max(j));
        self.edges.binary_search(&key).ok()
    }
}

pub fn triangle_graph(g: &Graph) -> TriangleGraph {
    let edges = g.edges();
    let mut tg = Graph::new(edges.len());
    let index = |a: usize, b: usize| edges.binary_search(&(a, b)).expect("edge of g");
    for (a, b, c) in g.triangles() {
        let (ab, ac, bc) = (index(a, b), index(a, c), index(b, c));
        for (x, y) in [(ab, ac), (ab, bc), (ac, bc)] {
            tg.add_edge(x, y).expect("distinct edges");
        }
    }
    TriangleGraph { graph: tg, edges }
}

/// `H(G)` together with the vertex sets of the triangle-connected
/// components it is built on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HGraph {
    pub graph: Graph,
    /// Vertex `k` of `graph` stands for `components[k]`, a sorted vertex set
    /// of `G`.
    pub components: Vec<Vec<usize>>,
}

/// Triangle-connected components are the components of the triangle graph;
/// each carries the union of the endpoints of its edges. An edge lying in
/// no triangle is a component of its own. Two components are adjacent in
/// `H(G)` when they share at least two vertices. Components are listed by
/// their smallest edge index.
pub fn h_graph(g: &Graph) -> HGraph {
    let tg = triangle_graph(g);
    let components: Vec<Vec<usize>> = tg
        .graph
        .components()
        .into_iter()
        .map(|edge_ids| {
            edge_ids
                .iter()
                .flat_map(|&k| {
                    let (a, b) = tg.edges[k];
                    [a, b]
                })
                .collect::<BTreeSet<usize>>()
                .into_iter()
                .collect()
        })
        .collect();
    let mut h = Graph::new(components.len());
    for x in 0..components.len() {
        for y in x + 1..components.len() {
            let shared = components[x]
                .iter()
                .filter(|v| components[y].binary_search(v).is_ok())
                .count();
            if shared >= 2 {
                h.add_edge(x, y).expect("in range");
            }
        }
    }
    HGraph {
        graph: h,
        components,
    }
}
