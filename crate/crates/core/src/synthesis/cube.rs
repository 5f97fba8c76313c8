//! Hypercube embeddings and their translation to and from representations.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{represent_forest, rescale_representation, target_of, glue_components};
use crate::budget::SearchBudget;
use crate::error::{Error, Result};
use crate::graphcore::{Graph, VertexMap};
use crate::sintring::{next_prime, PrimeSet, SInteger};
use crate::unitgraph::Representation;

/// Vertex `v` sits at the 0/1 word `coords[v]` of length `dim`.
///
/// Embeddings produced here are induced: two vertices are adjacent exactly
/// when their words differ in one coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CubeJson", into = "CubeJson")]
pub struct CubeEmbedding {
    dim: usize,
    coords: Vec<Vec<bool>>,
}

#[derive(Serialize, Deserialize)]
struct CubeJson {
    dim: usize,
    coords: Vec<String>,
}

impl TryFrom<CubeJson> for CubeEmbedding {
    type Error = Error;
    fn try_from(j: CubeJson) -> Result<Self> {
        let coords = j
            .coords
            .iter()
            .map(|w| {
                w.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(Error::Parse(format!("bad cube word {w:?}"))),
                    })
                    .collect()
            })
            .collect::<Result<Vec<Vec<bool>>>>()?;
        CubeEmbedding::new(j.dim, coords)
    }
}

impl From<CubeEmbedding> for CubeJson {
    fn from(e: CubeEmbedding) -> Self {
        CubeJson {
            dim: e.dim,
            coords: (0..e.coords.len()).map(|v| e.word(v)).collect(),
        }
    }
}

impl CubeEmbedding {
    pub fn new(dim: usize, coords: Vec<Vec<bool>>) -> Result<Self> {
        if let Some(w) = coords.iter().find(|w| w.len() != dim) {
            return Err(Error::InvalidEmbedding(format!(
                "word of length {} in dimension {dim}",
                w.len()
            )));
        }
        Ok(CubeEmbedding { dim, coords })
    }

    fn from_words(dim: usize, words: &[u32]) -> Self {
        let coords = words
            .iter()
            .map(|&w| (0..dim).map(|i| w >> i & 1 == 1).collect())
            .collect();
        CubeEmbedding { dim, coords }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[Vec<bool>] {
        &self.coords
    }

    /// Coordinates of `v` as a string, coordinate 1 first.
    pub fn word(&self, v: usize) -> String {
        self.coords[v].iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    fn distance(&self, u: usize, v: usize) -> usize {
        self.coords[u]
            .iter()
            .zip(&self.coords[v])
            .filter(|(a, b)| a != b)
            .count()
    }

    /// Injective, with every edge of `g` a cube edge.
    pub fn maps_edges_to_edges(&self, g: &Graph) -> bool {
        self.coords.len() == g.order()
            && self.coords.iter().collect::<BTreeSet<_>>().len() == g.order()
            && g.edges().iter().all(|&(u, v)| self.distance(u, v) == 1)
    }

    /// Checks that this is an induced embedding of `g`.
    pub fn check(&self, g: &Graph) -> Result<()> {
        if self.coords.len() != g.order() {
            return Err(Error::InvalidEmbedding(format!(
                "{} words for {} vertices",
                self.coords.len(),
                g.order()
            )));
        }
        if !self.maps_edges_to_edges(g) {
            return Err(Error::InvalidEmbedding("not an injective edge map".into()));
        }
        for u in 0..g.order() {
            for v in u + 1..g.order() {
                if !g.has_edge(u, v) && self.distance(u, v) == 1 {
                    return Err(Error::InvalidEmbedding(format!(
                        "non-adjacent vertices {u} and {v} are cube neighbours"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Edge labels in the Havel–Moravek sense: each edge of `g` (in
    /// lexicographic order) gets the coordinate its endpoints differ in.
    pub fn c_valuation(&self, g: &Graph) -> Option<Vec<usize>> {
        g.edges()
            .iter()
            .map(|&(u, v)| {
                let mut diff = (0..self.dim).filter(|&i| self.coords[u][i] != self.coords[v][i]);
                match (diff.next(), diff.next()) {
                    (Some(i), None) => Some(i),
                    _ => None,
                }
            })
            .collect()
    }
}

impl fmt::Display for CubeEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = (0..self.coords.len()).map(|v| self.word(v)).collect();
        write!(f, "Q_{}: [{}]", self.dim, words.join(", "))
    }
}

/// Whether `labels` (one per edge of `g`, lexicographic edge order) is a
/// c-valuation: every label occurs an even number of times on each cycle,
/// and some label occurs an odd number of times on each path.
///
/// Both conditions are read off parity vectors: summing label indicators
/// over GF(2) along paths from a root must be path independent (the cycle
/// condition) and must separate all vertices of a component (the path
/// condition).
pub fn is_c_valuation(g: &Graph, labels: &[usize]) -> bool {
    let edges = g.edges();
    if labels.len() != edges.len() {
        return false;
    }
    let label_of = |u: usize, v: usize| labels[edges.binary_search(&(u.min(v), u.max(v))).expect("edge")];
    let mut parity: Vec<Option<BTreeSet<usize>>> = vec![None; g.order()];
    for component in g.components() {
        parity[component[0]] = Some(BTreeSet::new());
        for v in g.bfs_order(component[0]) {
            let here = parity[v].clone().expect("bfs order");
            for u in g.neighbors(v) {
                let mut next = here.clone();
                let l = label_of(v, u);
                if !next.remove(&l) {
                    next.insert(l);
                }
                match &parity[u] {
                    None => parity[u] = Some(next),
                    Some(existing) if *existing != next => return false,
                    Some(_) => {}
                }
            }
        }
        let distinct: BTreeSet<&BTreeSet<usize>> =
            component.iter().map(|&v| parity[v].as_ref().expect("set")).collect();
        if distinct.len() != component.len() {
            return false;
        }
    }
    true
}

/// Searches for an induced embedding of `g` in `Q_d`, for `d` from
/// `⌈log₂ |G|⌉` up to `max_dimension`.
///
/// Backtracking places vertices in breadth-first order; a vertex with a
/// placed neighbour is one coordinate flip away from it. Coordinates no
/// placed word uses are interchangeable, so only the lowest of them is
/// tried. A connected graph that embeds at all embeds in dimension
/// `|G| - 1` (only coordinates flipped along a spanning tree vary), so the
/// search stops there.
pub fn hypercube_embed(g: &Graph, max_dimension: usize) -> Result<Option<CubeEmbedding>> {
    if max_dimension > 16 {
        return Err(Error::DimensionTooLarge(max_dimension));
    }
    let n = g.order();
    if n == 0 {
        return Ok(Some(CubeEmbedding::from_words(0, &[])));
    }
    if !g.is_bipartite() {
        return Ok(None);
    }
    let min_dim = usize::BITS as usize - (n - 1).leading_zeros() as usize;
    let max_degree = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
    let mut top = max_dimension;
    if g.is_connected() {
        top = top.min(min_dim.max(n - 1));
    }
    for dim in min_dim.max(max_degree)..=top {
        let mut search = CubeSearch::new(g, dim);
        if search.place(0) {
            let words: Vec<u32> = search.words.iter().map(|w| w.expect("placed")).collect();
            return Ok(Some(CubeEmbedding::from_words(dim, &words)));
        }
    }
    Ok(None)
}

struct CubeSearch<'a> {
    g: &'a Graph,
    dim: usize,
    order: Vec<usize>,
    parent: Vec<Option<usize>>,
    words: Vec<Option<u32>>,
    used: BTreeSet<u32>,
}

impl<'a> CubeSearch<'a> {
    fn new(g: &'a Graph, dim: usize) -> Self {
        let n = g.order();
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        for root in 0..n {
            if seen[root] {
                continue;
            }
            for v in g.bfs_order(root) {
                seen[v] = true;
                parent[v] = g.neighbors(v).find(|u| order.contains(u));
                order.push(v);
            }
        }
        CubeSearch {
            g,
            dim,
            order,
            parent,
            words: vec![None; n],
            used: BTreeSet::new(),
        }
    }

    fn support(&self) -> u32 {
        self.used.iter().fold(0, |acc, w| acc | w)
    }

    fn fits(&self, v: usize, w: u32) -> bool {
        !self.used.contains(&w)
            && self.order.iter().all(|&u| match self.words[u] {
                Some(x) => ((x ^ w).count_ones() == 1) == self.g.has_edge(u, v),
                None => true,
            })
    }

    fn candidates(&self, v: usize) -> Vec<u32> {
        let support = self.support();
        let free: Vec<u32> = (0..self.dim as u32).filter(|i| support >> i & 1 == 0).collect();
        match self.parent[v] {
            Some(p) => {
                let base = self.words[p].expect("parent placed");
                (0..self.dim as u32)
                    .filter(|&i| support >> i & 1 == 1 || free.first() == Some(&i))
                    .map(|i| base ^ (1 << i))
                    .collect()
            }
            None if self.used.is_empty() => vec![0],
            None => {
                // free coordinates may only be switched on lowest first
                let full: u32 = if self.dim == 32 { u32::MAX } else { (1 << self.dim) - 1 };
                (0..=full)
                    .filter(|&w| {
                        let extra = w & !support;
                        let k = extra.count_ones() as usize;
                        free.iter().take(k).fold(0u32, |acc, &i| acc | 1 << i) == extra
                    })
                    .collect()
            }
        }
    }

    fn place(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let v = self.order[pos];
        for w in self.candidates(v) {
            if !self.fits(v, w) {
                continue;
            }
            self.words[v] = Some(w);
            self.used.insert(w);
            if self.place(pos + 1) {
                return true;
            }
            self.used.remove(&w);
            self.words[v] = None;
        }
        false
    }
}

/// Values `Σ a_i p^i` (coordinates numbered from 1) for an induced
/// embedding, over `{p}`. Any odd prime works; the target is `g` with the
/// identity map.
pub fn cubical_values(g: &Graph, embedding: &CubeEmbedding, p: u64) -> Result<Representation> {
    embedding.check(g)?;
    let primes = PrimeSet::new(vec![p])?;
    let big_p = BigInt::from(p);
    let points: Vec<BigInt> = embedding
        .coords()
        .iter()
        .map(|word| {
            word.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| big_p.pow(i as u32 + 1))
                .sum()
        })
        .collect();
    super::verified(&primes, &points, g, VertexMap::identity(g.order()))
}

/// A representation of a cubical graph over any prime set.
///
/// First builds values over `{p}`, `p` the smallest prime above
/// `2·#edges` (and at least 3). If `primes` is a different set, forests go
/// to [`represent_forest`]; otherwise each component is rescaled (or built
/// as a tree) and the components are glued.
pub fn cubical_to_representation(
    g: &Graph,
    embedding: &CubeEmbedding,
    primes: &PrimeSet,
    budget: &SearchBudget,
) -> Result<Representation> {
    embedding.check(g)?;
    let p = next_prime((2 * g.edge_count() as u64).max(2));
    let over_p = cubical_values(g, embedding, p)?;
    if primes.primes() == [p] {
        return Ok(over_p);
    }
    if g.is_forest() {
        return represent_forest(g, primes, budget);
    }
    let components = g.components();
    let mut pieces = Vec::with_capacity(components.len());
    for comp in &components {
        let sub = g.induced_subgraph(comp);
        let piece = if sub.is_forest() {
            represent_forest(&sub, primes, budget)?
        } else {
            let pts: Vec<SInteger> = comp.iter().map(|&v| over_p.points()[v].clone()).collect();
            let sub_rep = Representation::new(over_p.primes().clone(), pts)?
                .with_target(sub.clone(), VertexMap::identity(comp.len()))?;
            rescale_representation(&sub_rep, primes, 0, budget)?
        };
        pieces.push(piece);
    }
    let mut glued = pieces.remove(0);
    for piece in &pieces {
        glued = glue_components(&glued, piece, budget)?;
    }
    // vertex j of the glued target is vertex `concat[j]` of g
    let concat: Vec<usize> = components.iter().flatten().copied().collect();
    let (_, map) = target_of(&glued);
    let to_g = VertexMap::new(map.as_slice().iter().map(|&j| concat[j]).collect())?;
    Representation::new(primes.clone(), glued.points().to_vec())?.with_target(g.clone(), to_g)
}

/// Recovers an induced cube embedding from a representation of a connected
/// graph over `{p}` with `p > #edges`.
///
/// With point 0 as origin and edge labels `±p^{m_1}, ..., ±p^{m_r}`, each
/// point is `Σ a_i p^{m_i}` with `|a_i| < p`, read off along a
/// breadth-first tree. Level `a_i` of coordinate `i` becomes a block of
/// `2p` indicator bits, bit `j ∈ [-p, p)` being set when `a_i > j`, so a
/// unit step in `a_i` flips one bit. The dimension is `2pr`.
pub fn cube_from_representation(rep: &Representation) -> Result<CubeEmbedding> {
    let p = match rep.primes().primes() {
        [p] => *p,
        _ => return Err(Error::NotSinglePrime(rep.primes().to_string())),
    };
    let g = rep.graph();
    let n = g.order();
    if n == 0 {
        return CubeEmbedding::new(0, Vec::new());
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let edges = g.edge_count();
    if p <= edges as u64 {
        return Err(Error::PTooSmall { p, edges });
    }
    let pts = rep.points();
    let mut label_exp = std::collections::BTreeMap::new();
    for (i, j) in g.edges() {
        let label = pts[j].checked_sub(&pts[i])?;
        if !label.is_s_unit() {
            return Err(Error::LabelNotPowerOfP(label.to_string()));
        }
        label_exp.insert((i, j), (label.signum(), label.exponents()[0]));
    }
    let levels: Vec<i64> = label_exp
        .values()
        .map(|&(_, m)| m)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let r = levels.len();
    let step = |u: usize, v: usize| -> (usize, i64) {
        let (sign, m) = label_exp[&(u.min(v), u.max(v))];
        let dir = if u < v { i64::from(sign) } else { -i64::from(sign) };
        (levels.binary_search(&m).expect("level"), dir)
    };

    let mut coef: Vec<Option<Vec<i64>>> = vec![None; n];
    coef[0] = Some(vec![0; r]);
    for v in g.bfs_order(0) {
        let here = coef[v].clone().expect("bfs order");
        for u in g.neighbors(v) {
            if coef[u].is_none() {
                let (i, dir) = step(v, u);
                let mut next = here.clone();
                next[i] += dir;
                if next[i].unsigned_abs() >= p {
                    return Err(Error::CoefficientOverflow { coefficient: next[i], p });
                }
                coef[u] = Some(next);
            }
        }
    }
    let coef: Vec<Vec<i64>> = coef.into_iter().map(|c| c.expect("connected")).collect();
    for (i, j) in g.edges() {
        let (level, dir) = step(i, j);
        let ok = (0..r).all(|k| coef[j][k] - coef[i][k] == if k == level { dir } else { 0 });
        if !ok {
            return Err(Error::VerificationFailed(format!(
                "coefficients of edge ({i}, {j}) are not a unit step"
            )));
        }
    }

    let p_us = p as usize;
    let width = 2 * p_us;
    let coords: Vec<Vec<bool>> = coef
        .iter()
        .map(|a| {
            let mut word = vec![false; width * r];
            for (i, &ai) in a.iter().enumerate() {
                for (slot, j) in (-(p as i64)..p as i64).enumerate() {
                    word[i * width + slot] = ai > j;
                }
            }
            word
        })
        .collect();
    let embedding = CubeEmbedding::new(width * r, coords)?;
    embedding
        .check(&g)
        .map_err(|e| Error::VerificationFailed(e.to_string()))?;
    Ok(embedding)
}
