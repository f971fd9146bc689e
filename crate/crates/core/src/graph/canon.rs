//! Exact canonical labelling by partition refinement and individualisation.
//!
//! The search tree is the usual one: refine the ordered partition to an
//! equitable one, individualise each vertex of the first smallest non-trivial
//! cell in turn, recurse. Leaves are discrete partitions, i.e. relabellings,
//! and the canonical graph is the lexicographically largest relabelled
//! adjacency matrix among the leaves.
//!
//! Branches are pruned only through twin transpositions: if `u` and `v` have
//! the same neighbourhood outside `{u, v}`, swapping them is an automorphism
//! that fixes every individualised vertex, so individualising `v` after `u`
//! cannot produce a new leaf. That keeps empty, complete, complete
//! multipartite and "universal set plus independent set" graphs cheap.

use std::fmt;

use serde::{Serialize, Serializer};

use super::{bit, bits, SmallGraph};

/// Isomorphism-class identifier: the graph6 bytes of the canonical relabelling.
///
/// Equal labels mean isomorphic graphs and vice versa; nothing is hashed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalLabel(Vec<u8>);

impl CanonicalLabel {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.0).expect("graph6 is ASCII")
    }

    /// The canonical representative this label encodes.
    pub fn graph(&self) -> SmallGraph {
        SmallGraph::decode_graph6(self.as_str()).expect("label holds valid graph6")
    }
}

impl fmt::Debug for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalLabel({})", self.as_str())
    }
}

impl fmt::Display for CanonicalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CanonicalLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

pub fn canonical_form(g: &SmallGraph) -> CanonicalLabel {
    CanonicalLabel(canonical_graph(g).encode_graph6().into_bytes())
}

/// The canonical relabelling of `g`; isomorphic inputs give identical output.
pub fn canonical_graph(g: &SmallGraph) -> SmallGraph {
    let n = g.n();
    if n <= 1 {
        return g.clone();
    }
    let mut search = Search {
        g,
        twins: twin_masks(g),
        best: None,
    };
    let all = super::low_mask(n);
    search.descend(vec![all]);
    let (_, rows) = search.best.expect("search reaches a leaf");
    SmallGraph::from_rows_unchecked(rows)
}

struct Search<'a> {
    g: &'a SmallGraph,
    twins: Vec<u64>,
    best: Option<(Vec<u64>, Vec<u64>)>,
}

impl Search<'_> {
    fn descend(&mut self, mut cells: Vec<u64>) {
        refine(self.g, &mut cells);
        let target = cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.count_ones() > 1)
            .min_by_key(|(i, c)| (c.count_ones(), *i))
            .map(|(i, _)| i);

        let Some(t) = target else {
            self.offer_leaf(&cells);
            return;
        };

        let cell = cells[t];
        let mut tried = 0u64;
        for v in bits(cell) {
            if self.twins[v] & tried != 0 {
                continue;
            }
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..t]);
            next.push(bit(v));
            next.push(cell & !bit(v));
            next.extend_from_slice(&cells[t + 1..]);
            self.descend(next);
            tried |= bit(v);
        }
    }

    fn offer_leaf(&mut self, cells: &[u64]) {
        let n = self.g.n();
        let mut position = vec![0usize; n];
        for (i, c) in cells.iter().enumerate() {
            position[c.trailing_zeros() as usize] = i;
        }
        let rows: Vec<u64> = cells
            .iter()
            .map(|c| {
                let v = c.trailing_zeros() as usize;
                bits(self.g.neighbors(v)).fold(0, |acc, u| acc | bit(position[u]))
            })
            .collect();
        // compare rows as bit strings read from vertex 0 upwards
        let key: Vec<u64> = rows.iter().map(|r| r.reverse_bits()).collect();
        if self.best.as_ref().is_none_or(|(best, _)| key > *best) {
            self.best = Some((key, rows));
        }
    }
}

/// Splits cells by neighbour counts into each cell until the ordered
/// partition is equitable. Sub-cells are ordered by increasing count, so the
/// result depends only on the graph and the input partition, not on labels.
fn refine(g: &SmallGraph, cells: &mut Vec<u64>) {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter = cells[s];
            let mut next = Vec::with_capacity(cells.len());
            for &cell in cells.iter() {
                if cell.count_ones() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut groups: Vec<(u32, u64)> = Vec::new();
                for v in bits(cell) {
                    let count = (g.neighbors(v) & splitter).count_ones();
                    match groups.iter_mut().find(|(c, _)| *c == count) {
                        Some((_, m)) => *m |= bit(v),
                        None => groups.push((count, bit(v))),
                    }
                }
                if groups.len() > 1 {
                    changed = true;
                    groups.sort_unstable_by_key(|&(c, _)| c);
                }
                next.extend(groups.into_iter().map(|(_, m)| m));
            }
            *cells = next;
            s += 1;
        }
        if !changed {
            break;
        }
    }
}

/// `twins[v]` holds every `u != v` with `N(u) \ {v} == N(v) \ {u}`.
pub(crate) fn twin_masks(g: &SmallGraph) -> Vec<u64> {
    let n = g.n();
    (0..n)
        .map(|v| {
            (0..n)
                .filter(|&u| u != v && g.neighbors(u) & !bit(v) == g.neighbors(v) & !bit(u))
                .fold(0, |acc, u| acc | bit(u))
        })
        .collect()
}
