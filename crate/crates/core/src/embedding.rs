//! Forest containment: is `F` a (not necessarily induced) subgraph of `G`?
//!
//! [`find_embedding`] is the working checker. Components are placed largest
//! first. Paths are grown by depth-first search; for stars only the centre is
//! chosen during the search, and leaves are assigned at the end by a
//! bipartite matching between leaf slots and unused neighbours of the
//! centres. Candidate vertices that are twins of an already tried candidate
//! are skipped (swapping twins is an automorphism fixing everything placed so
//! far).
//!
//! [`naive_find_embedding`] maps the forest vertex by vertex into `G` over
//! all injective assignments and exists to cross-check the fast one.

use std::fmt;

use serde::Serialize;

use crate::forest::{ForestSpec, TreeComponent, TreeKind};
use crate::graph::{bit, bits, low_mask, SmallGraph};

/// Host vertices realising each forest component, in the spec's canonical
/// component order: the path sequence, or the star centre followed by leaves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    assignments: Vec<Vec<usize>>,
}

impl Embedding {
    pub fn assignments(&self) -> &[Vec<usize>] {
        &self.assignments
    }

    /// Checks the witness against `g` and `spec` from scratch.
    pub fn is_valid(&self, g: &SmallGraph, spec: &ForestSpec) -> bool {
        if self.assignments.len() != spec.component_count() {
            return false;
        }
        let mut seen = 0u64;
        for (comp, verts) in spec.components().iter().zip(&self.assignments) {
            if verts.len() != comp.vertex_count() {
                return false;
            }
            for &v in verts {
                if v >= g.n() || seen & bit(v) != 0 {
                    return false;
                }
                seen |= bit(v);
            }
            let ok = match comp.kind() {
                TreeKind::Path => verts.windows(2).all(|w| g.has_edge(w[0], w[1])),
                TreeKind::Star => verts[1..].iter().all(|&leaf| g.has_edge(verts[0], leaf)),
            };
            if !ok {
                return false;
            }
        }
        true
    }

    pub fn render(&self, spec: &ForestSpec) -> String {
        let mut out = String::new();
        for (comp, verts) in spec.components().iter().zip(&self.assignments) {
            let line = match comp.kind() {
                TreeKind::Path => join(verts, "-"),
                TreeKind::Star => format!("{} -> {{{}}}", verts[0], join(&verts[1..], ",")),
            };
            out.push_str(&format!("{comp}: {line}\n"));
        }
        out
    }
}

fn join(vs: &[usize], sep: &str) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.assignments.iter().map(|a| join(a, "-")).collect();
        write!(f, "[{}]", parts.join(" | "))
    }
}

/// `true` iff `spec ⊆ g`.
pub fn contains(g: &SmallGraph, spec: &ForestSpec) -> bool {
    find_embedding(g, spec).is_some()
}

/// Returns a witness embedding of `spec` in `g`, or `None` if `g` is `F`-free.
/// Deterministic: the same inputs give the same witness.
pub fn find_embedding(g: &SmallGraph, spec: &ForestSpec) -> Option<Embedding> {
    if !passes_prechecks(g, spec) {
        return None;
    }
    let mut order: Vec<usize> = (0..spec.component_count()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(spec.components()[i].vertex_count()));

    let mut search = Search {
        g,
        comps: order.iter().map(|&i| spec.components()[i]).collect(),
        twins: crate::graph::canon::twin_masks(g),
        placed: vec![Vec::new(); order.len()],
        used: 0,
    };
    if !search.place(0) {
        return None;
    }
    let mut assignments = vec![Vec::new(); order.len()];
    for (slot, &orig) in order.iter().enumerate() {
        assignments[orig] = std::mem::take(&mut search.placed[slot]);
    }
    Some(Embedding { assignments })
}

/// Necessary conditions: enough vertices and edges, and enough high-degree
/// vertices to serve as star centres.
fn passes_prechecks(g: &SmallGraph, spec: &ForestSpec) -> bool {
    if spec.total_vertices() > g.n() || spec.total_edges() > g.edge_count() {
        return false;
    }
    let mut needs: Vec<usize> = spec
        .components()
        .iter()
        .filter(|c| c.kind() == TreeKind::Star)
        .map(|c| c.size())
        .collect();
    needs.sort_unstable_by(|a, b| b.cmp(a));
    let degrees = g.degree_sequence();
    needs.iter().zip(&degrees).all(|(need, have)| have >= need)
}

struct Search<'a> {
    g: &'a SmallGraph,
    comps: Vec<TreeComponent>,
    twins: Vec<u64>,
    /// Vertices per component slot; stars hold only their centre until the end.
    placed: Vec<Vec<usize>>,
    used: u64,
}

impl Search<'_> {
    fn free(&self) -> u64 {
        low_mask(self.g.n()) & !self.used
    }

    /// Candidates in ascending order, skipping twins of earlier candidates.
    fn distinct_candidates(&self, candidates: u64) -> Vec<usize> {
        let mut out = Vec::new();
        let mut tried = 0u64;
        for v in bits(candidates) {
            if self.twins[v] & tried == 0 {
                out.push(v);
            }
            tried |= bit(v);
        }
        out
    }

    fn place(&mut self, slot: usize) -> bool {
        if slot == self.comps.len() {
            return self.assign_leaves();
        }
        let comp = self.comps[slot];
        match comp.kind() {
            TreeKind::Path => {
                for start in self.distinct_candidates(self.free()) {
                    self.used |= bit(start);
                    self.placed[slot].push(start);
                    if self.grow_path(slot, comp.size() - 1) {
                        return true;
                    }
                    self.placed[slot].pop();
                    self.used &= !bit(start);
                }
                false
            }
            TreeKind::Star => {
                let d = comp.size();
                let free = self.free();
                let centres = bits(free)
                    .filter(|&c| (self.g.neighbors(c) & free & !bit(c)).count_ones() as usize >= d)
                    .fold(0u64, |acc, c| acc | bit(c));
                for c in self.distinct_candidates(centres) {
                    self.used |= bit(c);
                    self.placed[slot].push(c);
                    if self.place(slot + 1) {
                        return true;
                    }
                    self.placed[slot].pop();
                    self.used &= !bit(c);
                }
                false
            }
        }
    }

    fn grow_path(&mut self, slot: usize, remaining: usize) -> bool {
        if remaining == 0 {
            return self.place(slot + 1);
        }
        let last = *self.placed[slot].last().expect("path has a start");
        let next = self.g.neighbors(last) & self.free();
        for v in self.distinct_candidates(next) {
            self.used |= bit(v);
            self.placed[slot].push(v);
            if self.grow_path(slot, remaining - 1) {
                return true;
            }
            self.placed[slot].pop();
            self.used &= !bit(v);
        }
        false
    }

    /// Gives every star centre its leaves from unused neighbours, all
    /// distinct, via augmenting paths.
    fn assign_leaves(&mut self) -> bool {
        let free = self.free();
        // one entry per leaf slot: (component slot, allowed vertices)
        let slots: Vec<(usize, u64)> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| c.kind() == TreeKind::Star)
            .flat_map(|(i, c)| {
                let allowed = self.g.neighbors(self.placed[i][0]) & free;
                std::iter::repeat_n((i, allowed), c.size())
            })
            .collect();
        if slots.is_empty() {
            return true;
        }
        let mut owner: Vec<Option<usize>> = vec![None; self.g.n()];
        for s in 0..slots.len() {
            let mut visited = 0u64;
            if !augment(s, &slots, &mut owner, &mut visited) {
                return false;
            }
        }
        let mut leaves: Vec<(usize, usize)> = owner
            .iter()
            .enumerate()
            .filter_map(|(v, o)| o.map(|s| (slots[s].0, v)))
            .collect();
        leaves.sort_unstable();
        for (comp, v) in leaves {
            self.placed[comp].push(v);
        }
        true
    }
}

fn augment(
    s: usize,
    slots: &[(usize, u64)],
    owner: &mut [Option<usize>],
    visited: &mut u64,
) -> bool {
    for v in bits(slots[s].1) {
        if *visited & bit(v) != 0 {
            continue;
        }
        *visited |= bit(v);
        match owner[v] {
            None => {
                owner[v] = Some(s);
                return true;
            }
            Some(other) => {
                if augment(other, slots, owner, visited) {
                    owner[v] = Some(s);
                    return true;
                }
            }
        }
    }
    false
}

/// Reference checker: assigns forest vertices one at a time to distinct host
/// vertices, testing each forest edge once both ends are placed. Exponential;
/// meant for forests on at most eight vertices.
pub fn naive_find_embedding(g: &SmallGraph, spec: &ForestSpec) -> Option<Embedding> {
    // forest as an explicit pattern graph
    let mut pattern_edges: Vec<Vec<usize>> = Vec::new();
    let mut ranges = Vec::new();
    for comp in spec.components() {
        let base = pattern_edges.len();
        let m = comp.vertex_count();
        pattern_edges.extend((0..m).map(|_| Vec::new()));
        for j in 1..m {
            let parent = match comp.kind() {
                TreeKind::Path => base + j - 1,
                TreeKind::Star => base,
            };
            // back-edges only: each pattern vertex checks earlier neighbours
            pattern_edges[base + j].push(parent);
        }
        ranges.push(base..base + m);
    }
    let total = pattern_edges.len();
    if total > g.n() {
        return None;
    }
    let mut image = vec![usize::MAX; total];
    if !extend(g, &pattern_edges, &mut image, 0, 0) {
        return None;
    }
    Some(Embedding {
        assignments: ranges.into_iter().map(|r| image[r].to_vec()).collect(),
    })
}

fn extend(
    g: &SmallGraph,
    back: &[Vec<usize>],
    image: &mut [usize],
    next: usize,
    used: u64,
) -> bool {
    if next == back.len() {
        return true;
    }
    for v in 0..g.n() {
        if used & bit(v) != 0 {
            continue;
        }
        if back[next].iter().all(|&p| g.has_edge(image[p], v)) {
            image[next] = v;
            if extend(g, back, image, next + 1, used | bit(v)) {
                return true;
            }
        }
    }
    false
}
