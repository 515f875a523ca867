//! Simple undirected graphs on at most 62 vertices, stored as one
//! neighbourhood bitmask per vertex.

mod generators;
mod graph6;
mod vertex_set;

pub use graph6::{parse_graph6, write_graph6};
pub use vertex_set::VertexSet;

use crate::error::{Error, Result, MAX_ORDER};
use crate::gf2::{BitMatrix, BitVector};

/// Bitmask with the low `n` bits set.
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A simple undirected graph. Row `v` of the adjacency is `N(v)`.
///
/// Values are immutable once built; every constructor checks symmetry,
/// absence of loops and the order cap.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from neighbourhood rows, validating them.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        let full = full_mask(n);
        for (v, &row) in adj.iter().enumerate() {
            if row & !full != 0 {
                let bad = (row & !full).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange { vertex: bad, order: n });
            }
            if row >> v & 1 == 1 {
                return Err(Error::SelfLoop(v));
            }
            let mut rest = row;
            while rest != 0 {
                let u = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if adj[u] >> v & 1 == 0 {
                    return Err(Error::Asymmetric(v, u));
                }
            }
        }
        Ok(Self { n, adj })
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    order: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_mask_unchecked(self.adj[v], self.n)
    }

    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        VertexSet::from_mask_unchecked(self.adj[v] | 1 << v, self.n)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, ordered by `v` then `u`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |v| (0..v).filter(move |&u| self.has_edge(u, v)).map(move |u| (u, v)))
    }

    /// Maximum degree Δ.
    pub fn max_degree(&self) -> Result<usize> {
        (0..self.n).map(|v| self.degree(v)).max().ok_or(Error::EmptyGraph)
    }

    /// Minimum degree δ.
    pub fn min_degree(&self) -> Result<usize> {
        (0..self.n).map(|v| self.degree(v)).min().ok_or(Error::EmptyGraph)
    }

    /// `Some(d)` when every vertex has degree `d`; `None` for irregular or
    /// empty graphs.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.max_degree().ok()?;
        (self.min_degree().ok()? == d).then_some(d)
    }

    /// `Odd(C)`: vertices with an odd number of neighbours in `C`,
    /// i.e. the symmetric difference of the open neighbourhoods of `C`.
    pub fn odd_neighborhood(&self, c: VertexSet) -> VertexSet {
        VertexSet::from_mask_unchecked(odd_of_mask(&self.adj, c.mask()), self.n)
    }

    /// `Odd[C]`: the symmetric difference of the closed neighbourhoods.
    pub fn closed_odd_neighborhood(&self, c: VertexSet) -> VertexSet {
        let mut closed = 0u64;
        for v in c.iter() {
            closed ^= self.adj[v] | 1 << v;
        }
        VertexSet::from_mask_unchecked(closed, self.n)
    }

    pub fn is_odd_dominating_set(&self, c: VertexSet) -> bool {
        self.closed_odd_neighborhood(c) == self.vertices()
    }

    pub fn complement(&self) -> Graph {
        let full = full_mask(self.n);
        let adj = (0..self.n).map(|v| !self.adj[v] & full & !(1 << v)).collect();
        Graph { n: self.n, adj }
    }

    /// Block-diagonal union; vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        let shift = self.n;
        let adj = self
            .adj
            .iter()
            .copied()
            .chain(other.adj.iter().map(|&row| row << shift))
            .collect();
        Ok(Graph { n, adj })
    }

    /// `r` disjoint copies of the graph (`r >= 1`).
    pub fn power(&self, r: usize) -> Result<Graph> {
        if r == 0 {
            return Err(Error::InvalidParameter("power requires r >= 1".into()));
        }
        let n = self.n.saturating_mul(r);
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        let mut g = self.clone();
        for _ in 1..r {
            g = g.disjoint_union(self)?;
        }
        Ok(g)
    }

    /// Cut matrix `Γ_B`: rows are the vertices of `V∖B`, columns those of
    /// `B`, both in ascending order; entry `(u, v)` is 1 iff `uv` is an edge.
    pub fn cut_matrix(&self, b: VertexSet) -> BitMatrix {
        let cols: Vec<usize> = b.iter().collect();
        let rows = b
            .complement()
            .iter()
            .map(|u| {
                let mut row = BitVector::zeros(cols.len());
                for (j, &v) in cols.iter().enumerate() {
                    if self.adj[u] >> v & 1 == 1 {
                        row.set(j, true);
                    }
                }
                row
            })
            .collect();
        BitMatrix::from_rows(rows, cols.len()).expect("rows built with matching width")
    }
}

/// XOR of the adjacency rows selected by `mask`.
pub(crate) fn odd_of_mask(adj: &[u64], mask: u64) -> u64 {
    let mut acc = 0;
    let mut rest = mask;
    while rest != 0 {
        acc ^= adj[rest.trailing_zeros() as usize];
        rest &= rest - 1;
    }
    acc
}
