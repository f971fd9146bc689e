//! Brute-force reference implementations shared by the integration tests.
//! Nothing here uses the library's canonical labelling or fast embedding.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use turan_core::{naive_find_embedding, ForestSpec, SmallGraph};

/// Vertex pairs of `K_n` in a fixed order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

pub fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> SmallGraph {
    let edges: Vec<_> = pairs
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    SmallGraph::from_edges(n, &edges).unwrap()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Isomorphism invariant: the smallest adjacency-row vector over all
/// relabellings.
pub fn brute_key(g: &SmallGraph, perms: &[Vec<usize>]) -> Vec<u64> {
    perms
        .iter()
        .map(|p| g.permuted(p).rows().to_vec())
        .min()
        .unwrap_or_default()
}

/// Iterates all `w`-bit subsets of `0..len` (Gosper's hack).
pub fn subsets_of_weight(len: usize, w: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << len;
    let mut cur = if w == 0 { 0 } else { (1u64 << w) - 1 };
    let mut done = w > len;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur;
        if cur == 0 {
            done = true;
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            cur = (((r ^ cur) >> 2) / c) | r;
            if cur >= limit {
                done = true;
            }
        }
        Some(out)
    })
}

/// `ex(n, F)` and every extremal labelled graph, by scanning edge counts
/// from the top with the naive embedding checker.
pub fn brute_extremal(spec: &ForestSpec, n: usize) -> (u64, Vec<SmallGraph>) {
    let ps = pairs(n);
    for e in (0..=ps.len()).rev() {
        let free: Vec<SmallGraph> = subsets_of_weight(ps.len(), e)
            .map(|m| graph_from_mask(n, &ps, m))
            .filter(|g| naive_find_embedding(g, spec).is_none())
            .collect();
        if !free.is_empty() {
            return (e as u64, free);
        }
    }
    unreachable!("the empty graph is F-free")
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> SmallGraph {
    let mut g = SmallGraph::empty(n).unwrap();
    for (u, v) in pairs(n) {
        if rng.gen_bool(p) {
            g.add_edge(u, v);
        }
    }
    g
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

/// Random forest with at most `max_vertices` vertices in total.
pub fn random_forest<R: Rng>(rng: &mut R, max_vertices: usize) -> ForestSpec {
    let mut parts = Vec::new();
    let mut budget = max_vertices;
    loop {
        let size = rng.gen_range(2..=budget.min(6));
        if rng.gen_bool(0.5) {
            parts.push(format!("P{size}"));
        } else {
            parts.push(format!("S{}", size - 1));
        }
        budget -= size;
        if budget < 2 || rng.gen_bool(0.4) {
            break;
        }
    }
    parts.join("+").parse().unwrap()
}

/// The forests used throughout the checks, one per formula family.
pub const SUITE: &[&str] = &[
    "P4+P2", "P5+P3", "2*P4", "P5+P4+P2", "S3+S2", "2*S3", "3*S2", "P4+S3", "2*P4+S3",
];

pub fn suite() -> Vec<ForestSpec> {
    SUITE.iter().map(|s| s.parse().unwrap()).collect()
}
