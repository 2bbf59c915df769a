//! Simple undirected graphs on dense vertex labels `0..n`, plus the exact
//! integer metrics built on shortest-path distances.
//!
//! Adjacency is stored as one [`Mask`] bitmask per vertex, so the order is
//! capped at [`MAX_ORDER`]. Everything in this module is integer arithmetic.

mod distance;
pub mod graph6;

pub use distance::{distance_matrix, is_connected, transmission_profile, DistanceMatrix, TransmissionProfile};
pub use graph6::{parse_graph6, to_graph6, Graph6Error};

use std::fmt;

use thiserror::Error;

/// One bit per vertex.
pub type Mask = u128;

/// Largest supported order.
pub const MAX_ORDER: usize = Mask::BITS as usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph order {0} outside supported range 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is not connected")]
    NotConnected,
}

/// A simple undirected graph with vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<Mask>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(n));
        }
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from adjacency bitmasks. Masks must be symmetric and
    /// loop-free; this is checked.
    pub fn from_adjacency(rows: Vec<Mask>) -> Result<Self, GraphError> {
        let n = rows.len();
        let g = Self::empty(n)?;
        let full = g.vertex_mask();
        for (u, &row) in rows.iter().enumerate() {
            if row & !full != 0 {
                return Err(GraphError::VertexOutOfRange {
                    vertex: MAX_ORDER - 1 - row.leading_zeros() as usize,
                    order: n,
                });
            }
            if row >> u & 1 == 1 {
                return Err(GraphError::SelfLoop(u));
            }
        }
        for u in 0..n {
            for v in bits(rows[u]) {
                assert!(rows[v] >> u & 1 == 1, "adjacency rows are not symmetric at ({u}, {v})");
            }
        }
        Ok(Self { n, adj: rows })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Mask with one bit set per vertex.
    #[inline]
    pub fn vertex_mask(&self) -> Mask {
        if self.n == MAX_ORDER {
            Mask::MAX
        } else {
            (1 << self.n) - 1
        }
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, order: self.n })
        } else {
            Ok(())
        }
    }

    /// Adds the edge `{u, v}`; adding an existing edge is a no-op.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> Mask {
        self.adj[v]
    }

    pub fn adjacency_rows(&self) -> &[Mask] {
        &self.adj
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> {
        bits(self.adj[v])
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.adj[u] >> u >> 1).map(move |k| (u, u + 1 + k)))
    }

    /// `Some(r)` when every vertex has degree `r`.
    pub fn regularity(&self) -> Option<usize> {
        let r = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == r).then_some(r)
    }

    pub fn is_tree(&self) -> bool {
        self.size() + 1 == self.n && is_connected(self)
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertex_mask();
        let adj = (0..self.n).map(|v| !self.adj[v] & full & !(1 << v)).collect();
        Graph { n: self.n, adj }
    }

    /// The graph with vertex `v` deleted; later vertices shift down by one.
    pub fn remove_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        self.check_vertex(v)?;
        if self.n == 1 {
            return Err(GraphError::OrderOutOfRange(0));
        }
        let low: Mask = (1 << v) - 1;
        let adj = (0..self.n)
            .filter(|&u| u != v)
            .map(|u| {
                let row = self.adj[u];
                (row & low) | ((row >> 1) & !low)
            })
            .collect();
        Ok(Graph { n: self.n - 1, adj })
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal the order");
        let mut adj: Vec<Mask> = vec![0; self.n];
        for u in 0..self.n {
            for v in bits(self.adj[u]) {
                adj[perm[u]] |= 1 << perm[v];
            }
        }
        Graph { n: self.n, adj }
    }

    /// Disjoint union, with `other`'s vertices shifted past ours.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(GraphError::OrderOutOfRange(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|row| row << self.n));
        Ok(Graph { n, adj })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        f.debug_struct("Graph").field("n", &self.n).field("edges", &edges).finish()
    }
}

/// Iterates over the set bit positions of `mask` in increasing order.
#[inline]
pub fn bits(mask: impl Into<Mask>) -> impl Iterator<Item = usize> {
    let mut mask: Mask = mask.into();
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}
