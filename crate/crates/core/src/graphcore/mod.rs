//! Finite simple undirected graphs with dense vertex indices, and the
//! graph-theoretic notions used by the classification: components,
//! complements, bridges, triangle graphs and their components, bipartiteness
//! and isomorphism.

mod generators;
mod iso;
mod triangle;

pub use generators::{
    complete, complete_bipartite, cycle, edgeless, hypercube, path, random_forest, random_graph,
    star,
};
pub use iso::{is_induced_subgraph, is_isomorphic};
pub use triangle::{h_graph, triangle_graph, HGraph, TriangleGraph};

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;
    fn try_from(g: GraphJson) -> Result<Self> {
        Graph::from_edges(g.n, g.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            n: g.order(),
            edges: g.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    /// Builds a graph from an edge list; repeated edges collapse, loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::new(n);
        for (i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        if i == j || i >= self.order() || j >= self.order() {
            return Err(Error::InvalidEdge(i, j));
        }
        self.adj[i].insert(j);
        self.adj[j].insert(i);
        Ok(())
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) -> bool {
        if i >= self.order() || j >= self.order() {
            return false;
        }
        self.adj[j].remove(&i);
        self.adj[i].remove(&j)
    }

    /// Parses Graph JSON (`{"n": .., "edges": [[i, j], ..]}`) or a plain
    /// edge list with one `i j` pair per line. In the edge-list form a line
    /// holding a single integer fixes the vertex count; otherwise it is one
    /// more than the largest index. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()));
        }
        let mut declared = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let nums = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
            match nums.as_slice() {
                [n] => declared = Some(*n),
                [i, j] => edges.push((*i, *j)),
                _ => return Err(Error::Parse(format!("line {}: expected `i j`", lineno + 1))),
            }
        }
        let inferred = edges.iter().map(|&(i, j)| i.max(j) + 1).max().unwrap_or(0);
        Graph::from_edges(declared.unwrap_or(inferred), edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj.get(i).is_some_and(|s| s.contains(&j))
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order; the position of an
    /// edge in this list is its edge index.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.range(i + 1..).map(move |&j| (i, j)))
            .collect()
    }

    /// Degrees sorted descending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Vertices in breadth-first order from `root`, restricted to its component.
    pub fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut order = vec![root];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        order
    }

    /// Connected components, each sorted, listed by their minimum vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for v in 0..self.order() {
            if seen[v] {
                continue;
            }
            let mut comp = self.bfs_order(v);
            for &w in &comp {
                seen[w] = true;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn complement(&self) -> Graph {
        let n = self.order();
        let mut g = Graph::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if !self.has_edge(i, j) {
                    g.add_edge(i, j).expect("in range");
                }
            }
        }
        g
    }

    /// An edge whose removal disconnects its endpoints.
    pub fn is_bridge(&self, i: usize, j: usize) -> bool {
        let mut h = self.clone();
        if !h.remove_edge(i, j) {
            return false;
        }
        !h.bfs_order(i).contains(&j)
    }

    /// Connected and free of bridges.
    pub fn is_doubly_connected(&self) -> bool {
        self.is_connected() && self.edges().iter().all(|&(i, j)| !self.is_bridge(i, j))
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.order()
    }

    /// Proper 2-coloring, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<u8>> {
        let n = self.order();
        let mut color: Vec<Option<u8>> = vec![None; n];
        for root in 0..n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(0);
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                let c = color[v].expect("colored");
                for w in self.neighbors(v) {
                    match color[w] {
                        None => {
                            color[w] = Some(1 - c);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.expect("colored")).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.two_coloring().is_some()
    }

    /// Triangles `(a, b, c)` with `a < b < c`, lexicographic.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (a, b) in self.edges() {
            for &c in self.adj[b].range(b + 1..) {
                if self.has_edge(a, c) {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    pub fn has_triangle(&self) -> bool {
        self.edges()
            .iter()
            .any(|&(a, b)| self.adj[a].intersection(&self.adj[b]).next().is_some())
    }

    /// Subgraph induced on `vertices`, relabeled `0..len` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::new(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b).expect("in range");
                }
            }
        }
        g
    }

    /// Image of the graph under `map`: vertex `v` becomes `map[v]`.
    pub fn relabel(&self, map: &VertexMap) -> Graph {
        let mut g = Graph::new(self.order());
        for (i, j) in self.edges() {
            g.add_edge(map.apply(i), map.apply(j)).expect("bijection");
        }
        g
    }

    /// `self` on `0..n`, `other` shifted to `n..n+m`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.order();
        let mut g = Graph::new(n + other.order());
        for (i, j) in self.edges() {
            g.add_edge(i, j).expect("in range");
        }
        for (i, j) in other.edges() {
            g.add_edge(n + i, n + j).expect("in range");
        }
        g
    }
}

/// Bijection of `0..n` onto itself.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexMap(Vec<usize>);

impl VertexMap {
    pub fn new(forward: Vec<usize>) -> Result<Self> {
        let n = forward.len();
        let mut hit = vec![false; n];
        for &v in &forward {
            if v >= n || std::mem::replace(&mut hit[v], true) {
                return Err(Error::InvalidVertexMap);
            }
        }
        Ok(VertexMap(forward))
    }

    pub fn identity(n: usize) -> Self {
        VertexMap((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> VertexMap {
        let mut inv = vec![0; self.0.len()];
        for (v, &w) in self.0.iter().enumerate() {
            inv[w] = v;
        }
        VertexMap(inv)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &VertexMap) -> VertexMap {
        VertexMap(self.0.iter().map(|&v| other.apply(v)).collect())
    }

    /// Whether `v ↦ self[v]` maps the edges of `g` exactly onto those of `h`.
    pub fn is_isomorphism(&self, g: &Graph, h: &Graph) -> bool {
        g.order() == self.len()
            && h.order() == self.len()
            && g.edge_count() == h.edge_count()
            && g.edges()
                .iter()
                .all(|&(i, j)| h.has_edge(self.apply(i), self.apply(j)))
    }
}

impl TryFrom<Vec<usize>> for VertexMap {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        VertexMap::new(v)
    }
}

impl From<VertexMap> for Vec<usize> {
    fn from(m: VertexMap) -> Self {
        m.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn components_examples() {
        assert_eq!(Graph::new(3).components(), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(cycle(4).unwrap().components(), vec![vec![0, 1, 2, 3]]);
        assert_eq!(g(3, &[(0, 1)]).components(), vec![vec![0, 1], vec![2]]);
        assert_eq!(
            g(5, &[(3, 1), (0, 4)]).components(),
            vec![vec![0, 4], vec![1, 3], vec![2]]
        );
    }

    #[test]
    fn complement_examples() {
        assert_eq!(complete(4).unwrap().complement(), Graph::new(4));
        assert_eq!(cycle(4).unwrap().complement(), g(4, &[(0, 2), (1, 3)]));
    }

    #[test]
    fn double_connectivity() {
        assert!(cycle(5).unwrap().is_doubly_connected());
        assert!(!path(3).unwrap().is_doubly_connected());
        assert!(!g(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).is_doubly_connected());
        // bowtie: no bridges
        assert!(g(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).is_doubly_connected());
    }

    #[test]
    fn forest_and_bipartite() {
        let p5 = path(5).unwrap();
        assert!(p5.is_forest() && p5.is_bipartite());
        let c5 = cycle(5).unwrap();
        assert!(!c5.is_forest() && !c5.is_bipartite());
        let k23 = complete_bipartite(2, 3).unwrap();
        assert!(!k23.is_forest() && k23.is_bipartite());
        assert!(Graph::new(0).is_forest());
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(Error::InvalidEdge(0, 0)));
        assert_eq!(Graph::from_edges(2, [(0, 2)]), Err(Error::InvalidEdge(0, 2)));
        // duplicates collapse
        assert_eq!(Graph::from_edges(2, [(0, 1), (1, 0)]).unwrap().edge_count(), 1);
    }

    #[test]
    fn parse_formats() {
        let from_json = Graph::parse(r#"{"n": 4, "edges": [[0,1],[1,2]]}"#).unwrap();
        assert_eq!(from_json, g(4, &[(0, 1), (1, 2)]));
        let from_text = Graph::parse("# path plus isolated\n4\n0 1\n1 2\n").unwrap();
        assert_eq!(from_text, from_json);
        assert_eq!(Graph::parse("0 1\n2 1").unwrap().order(), 3);
        assert!(Graph::parse("0 1 2").is_err());
        assert_eq!(from_json.to_json(), r#"{"n":4,"edges":[[0,1],[1,2]]}"#);
    }

    #[test]
    fn vertex_map_checks() {
        assert!(VertexMap::new(vec![1, 0, 2]).is_ok());
        assert_eq!(VertexMap::new(vec![1, 1, 2]), Err(Error::InvalidVertexMap));
        assert_eq!(VertexMap::new(vec![0, 3, 1]), Err(Error::InvalidVertexMap));
        let m = VertexMap::new(vec![2, 0, 1]).unwrap();
        assert_eq!(m.then(&m.inverse()), VertexMap::identity(3));
    }

    #[test]
    fn triangle_listing() {
        let k4 = complete(4).unwrap();
        assert_eq!(
            k4.triangles(),
            vec![(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
        );
        assert!(!cycle(4).unwrap().has_triangle());
    }
}
