//! Dense undirected graphs on at most 62 vertices.
//!
//! Row `v` of the adjacency matrix is a `u64` bitset of the neighbours of `v`.
//! Every graph the crate talks about (hosts, constructions, oracle output) is a
//! [`SmallGraph`].

pub(crate) mod canon;
mod graph6;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{canonical_form, canonical_graph, CanonicalLabel};

/// Largest supported order; matches the single-byte graph6 size header.
pub const MAX_VERTICES: usize = 62;

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline]
pub(crate) const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in ascending order.
#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

#[inline]
pub(crate) const fn choose2(n: u64) -> u64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Simple undirected graph with vertices `0..n`.
///
/// The adjacency matrix is kept symmetric with a zero diagonal; every mutating
/// method preserves that.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct SmallGraph {
    n: usize,
    adj: Vec<u64>,
}

impl SmallGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        check_capacity(n)?;
        Ok(Self { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        check_capacity(n)?;
        let all = low_mask(n);
        Ok(Self {
            n,
            adj: (0..n).map(|v| all & !bit(v)).collect(),
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, validating symmetry and the
    /// zero diagonal.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        check_capacity(n)?;
        let mask = low_mask(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::GraphFormat(format!("row {v} has bits beyond n={n}")));
            }
            if row & bit(v) != 0 {
                return Err(Error::GraphFormat(format!("self-loop at vertex {v}")));
            }
            for u in bits(row) {
                if rows[u] & bit(v) == 0 {
                    return Err(Error::GraphFormat(format!("asymmetric at ({v},{u})")));
                }
            }
        }
        Ok(Self { n, adj: rows })
    }

    /// Unchecked constructor for rows already known to be valid.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Self::from_rows(rows.clone()).is_ok());
        Self {
            n: rows.len(),
            adj: rows,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    /// Neighbourhood of `v` as a bitset.
    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Degrees sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        degrees
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.adj[u] & !low_mask(u + 1)).map(move |v| (u, v)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.try_add_edge(u, v).expect("invalid edge");
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexRange {
                    vertex: w,
                    n: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::GraphFormat(format!("self-loop at vertex {u}")));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u] &= !bit(v);
            self.adj[v] &= !bit(u);
        }
    }

    /// Appends `t` vertices adjacent to everything, including each other.
    pub fn add_universal_vertices(&self, t: usize) -> Result<Self> {
        let total = self.n + t;
        check_capacity(total)?;
        let all = low_mask(total);
        let fresh = all & !low_mask(self.n);
        let mut adj: Vec<u64> = self.adj.iter().map(|&r| r | fresh).collect();
        adj.extend((self.n..total).map(|v| all & !bit(v)));
        Ok(Self { n: total, adj })
    }

    /// `self` on vertices `0..n`, `other` shifted to `n..n+m`, no cross edges.
    pub fn disjoint_union(&self, other: &SmallGraph) -> Result<Self> {
        let total = self.n + other.n;
        check_capacity(total)?;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Self { n: total, adj })
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n, "permutation length mismatch");
        let mut adj = vec![0u64; self.n];
        for (v, &pv) in perm.iter().enumerate() {
            adj[pv] = bits(self.adj[v]).fold(0, |acc, u| acc | bit(perm[u]));
        }
        Self { n: self.n, adj }
    }

    /// Subgraph induced by the vertices in `keep`, renumbered in ascending order.
    pub fn induced(&self, keep: u64) -> Self {
        let keep = keep & low_mask(self.n);
        let order: Vec<usize> = bits(keep).collect();
        let adj = order
            .iter()
            .map(|&v| {
                order
                    .iter()
                    .enumerate()
                    .filter(|&(_, &u)| self.adj[v] & bit(u) != 0)
                    .fold(0, |acc, (j, _)| acc | bit(j))
            })
            .collect();
        Self {
            n: order.len(),
            adj,
        }
    }

    pub fn encode_graph6(&self) -> String {
        graph6::encode(self)
    }

    pub fn decode_graph6(text: &str) -> Result<Self> {
        graph6::decode(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::GraphFormat(e.to_string()))
    }

    /// Graphviz DOT text: one line per vertex, then one per edge.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

impl std::fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SmallGraph(n={}, {:?})",
            self.n,
            self.edges().collect::<Vec<_>>()
        )
    }
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(Error::Capacity {
            requested: n,
            max: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

/// Wire form: `{"n": 4, "edges": [[0,1],[1,2]]}` with `u < v`, sorted.
#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl From<SmallGraph> for GraphJson {
    fn from(g: SmallGraph) -> Self {
        GraphJson {
            n: g.n,
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for SmallGraph {
    type Error = Error;

    fn try_from(j: GraphJson) -> Result<Self> {
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        SmallGraph::from_edges(j.n, &edges)
    }
}
