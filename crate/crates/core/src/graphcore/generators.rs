//! Standard graph families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result};

/// `C_n` on `0 - 1 - ... - (n-1) - 0`, `n ≥ 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidOrder(n));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `P_n` on `0 - 1 - ... - (n-1)`, `n ≥ 1`.
pub fn path(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidOrder(n));
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// `K_{m,n}` with sides `0..m` and `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidOrder(m.min(n)));
    }
    Graph::from_edges(m + n, (0..m).flat_map(|i| (m..m + n).map(move |j| (i, j))))
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidOrder(n));
    }
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

pub fn edgeless(n: usize) -> Graph {
    Graph::new(n)
}

/// `K_{1,leaves}` with center 0.
pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("in range")
}

/// `Q_dim`: vertex index is the coordinate word read as a binary number
/// (bit `i` is coordinate `i`); edges join words at Hamming distance one.
pub fn hypercube(dim: usize) -> Result<Graph> {
    if dim > 16 {
        return Err(Error::InvalidOrder(dim));
    }
    let n = 1usize << dim;
    Graph::from_edges(
        n,
        (0..n).flat_map(|v| (0..dim).map(move |i| (v, v ^ (1 << i))).filter(|&(a, b)| a < b)),
    )
}

/// Erdős–Rényi graph; reproducible for a given seed.
pub fn random_graph(n: usize, edge_probability: f64, seed: u64) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidOrder(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(edge_probability.clamp(0.0, 1.0)) {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// Random forest: each vertex `v > 0` either starts a new tree or attaches
/// to a uniformly chosen earlier vertex, then labels are shuffled.
pub fn random_forest(n: usize, seed: u64) -> Result<Graph> {
    if n < 1 {
        return Err(Error::InvalidOrder(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        labels.swap(i, rng.gen_range(0..=i));
    }
    let mut g = Graph::new(n);
    for v in 1..n {
        if rng.gen_bool(0.8) {
            let parent = rng.gen_range(0..v);
            g.add_edge(labels[parent], labels[v])?;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_identities() {
        assert_eq!(hypercube(2).unwrap(), Graph::from_edges(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap());
        assert!(super::super::is_isomorphic(&hypercube(2).unwrap(), &cycle(4).unwrap()).is_some());
        assert_eq!(complete_bipartite(2, 2).unwrap().edge_count(), 4);
        assert_eq!(cycle(3).unwrap(), complete(3).unwrap());
        assert_eq!(hypercube(3).unwrap().edge_count(), 12);
        assert_eq!(star(4).degree(0), 4);
    }

    #[test]
    fn invalid_orders() {
        assert_eq!(cycle(2), Err(Error::InvalidOrder(2)));
        assert_eq!(path(0), Err(Error::InvalidOrder(0)));
        assert!(complete_bipartite(0, 3).is_err());
        assert!(random_graph(0, 0.5, 1).is_err());
    }

    #[test]
    fn random_generators_are_reproducible() {
        assert_eq!(random_graph(8, 0.4, 7).unwrap(), random_graph(8, 0.4, 7).unwrap());
        for seed in 0..50 {
            let f = random_forest(10, seed).unwrap();
            assert!(f.is_forest());
            assert_eq!(f, random_forest(10, seed).unwrap());
        }
    }
}
