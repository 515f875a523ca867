//! Named graphs and graph families.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::error::{Error, Result, MAX_ORDER};

impl Graph {
    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Graph> {
        Ok(Graph::empty(n)?.complement())
    }

    /// Cycle `v0 - v1 - ... - v(n-1) - v0`; needs `n >= 3`.
    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "cycle needs at least 3 vertices, got {n}"
            )));
        }
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Star on `n` vertices with centre 0.
    pub fn star(n: usize) -> Result<Graph> {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Hypercube `Q_d`; vertex labels are the bit strings, adjacent when
    /// they differ in exactly one bit.
    pub fn hypercube(d: usize) -> Result<Graph> {
        if d > 5 {
            return Err(Error::OrderTooLarge(1usize.checked_shl(d as u32).unwrap_or(usize::MAX)));
        }
        let n = 1 << d;
        let mut edges = Vec::new();
        for v in 0..n {
            for b in 0..d {
                let u = v ^ (1 << b);
                if v < u {
                    edges.push((v, u));
                }
            }
        }
        Graph::from_edges(n, &edges)
    }

    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`,
    /// spokes `i - i+5`.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
            edges.push((i, i + 5));
        }
        Graph::from_edges(10, &edges).expect("petersen edges are valid")
    }

    /// `G_{p,q}`: the complete `q`-partite graph with parts of size `p`.
    /// Part `i` occupies vertices `[i*p, (i+1)*p)`.
    pub fn complete_multipartite(p: usize, q: usize) -> Result<Graph> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidParameter(format!(
                "complete multipartite graph needs p >= 1 and q >= 1, got p={p}, q={q}"
            )));
        }
        let n = p.saturating_mul(q);
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if u / p != v / p {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }

    /// Seeded `G(n, 1/2)`.
    ///
    /// The generator is ChaCha8 seeded with `seed_from_u64(seed)`. Edge
    /// coins are the bits of successive `next_u64` outputs, least
    /// significant first, assigned to pairs in graph6 order
    /// `(0,1), (0,2), (1,2), (0,3), ...`. This layout is part of the
    /// reproducibility contract and must not change.
    pub fn random(n: usize, seed: u64) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut word = 0u64;
        let mut left = 0;
        for v in 1..n {
            for u in 0..v {
                if left == 0 {
                    word = rng.next_u64();
                    left = 64;
                }
                if word & 1 == 1 {
                    g.add_edge(u, v)?;
                }
                word >>= 1;
                left -= 1;
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multipartite_examples() {
        assert_eq!(Graph::complete_multipartite(1, 4).unwrap(), Graph::complete(4).unwrap());
        assert_eq!(Graph::complete_multipartite(3, 1).unwrap(), Graph::empty(3).unwrap());
        let g = Graph::complete_multipartite(2, 3).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.degrees(), vec![4; 6]);
        // parts are index blocks
        assert!(!g.has_edge(0, 1) && !g.has_edge(4, 5) && g.has_edge(1, 2));
        assert!(Graph::complete_multipartite(0, 3).is_err());
        assert_eq!(Graph::complete_multipartite(8, 8), Err(Error::OrderTooLarge(64)));
    }

    #[test]
    fn named_graphs() {
        let p = Graph::petersen();
        assert_eq!((p.order(), p.edge_count(), p.regular_degree()), (10, 15, Some(3)));
        let q3 = Graph::hypercube(3).unwrap();
        assert_eq!((q3.order(), q3.edge_count(), q3.regular_degree()), (8, 12, Some(3)));
        assert_eq!(Graph::cycle(5).unwrap().regular_degree(), Some(2));
        assert!(Graph::cycle(2).is_err());
    }

    #[test]
    fn random_graph_is_deterministic() {
        assert_eq!(Graph::random(0, 9).unwrap().order(), 0);
        assert_eq!(Graph::random(5, 1).unwrap(), Graph::random(5, 1).unwrap());
        assert_ne!(Graph::random(30, 1).unwrap(), Graph::random(30, 2).unwrap());
        assert!(Graph::random(63, 0).is_err());
    }

    #[test]
    fn random_graph_edge_density() {
        // Binomial(190, 1/2) per graph; the mean over 1000 graphs has
        // standard deviation sqrt(190/4/1000).
        let total: usize = (0..1000).map(|s| Graph::random(20, s).unwrap().edge_count()).sum();
        let mean = total as f64 / 1000.0;
        let sd = (190.0f64 / 4.0 / 1000.0).sqrt();
        assert!((mean - 95.0).abs() <= 3.0 * sd, "mean edge count {mean}");
    }
}
