//! Forbidden forests made of paths and stars.
//!
//! Grammar: `term ("+" term)*`, `term = [count "*"] ("P"|"S") size`.
//! `P4` is the path on four vertices, `S3` the star with three leaves.
//!
//! The two trees that are both a path and a star get one canonical spelling:
//! `P3` is stored as `S2`, and `S1` as `P2`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TreeKind {
    Path,
    Star,
}

/// One component of a forest. For a path `size` is the vertex count, for a
/// star it is the number of leaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreeComponent {
    kind: TreeKind,
    size: usize,
}

impl TreeComponent {
    pub fn path(vertices: usize) -> Result<Self> {
        if vertices < 2 {
            return Err(Error::ComponentSize {
                term: format!("P{vertices}"),
                reason: "path order below 2".into(),
            });
        }
        Ok(Self::normalized(TreeKind::Path, vertices))
    }

    pub fn star(leaves: usize) -> Result<Self> {
        if leaves < 1 {
            return Err(Error::ComponentSize {
                term: format!("S{leaves}"),
                reason: "star needs at least one leaf".into(),
            });
        }
        Ok(Self::normalized(TreeKind::Star, leaves))
    }

    fn normalized(kind: TreeKind, size: usize) -> Self {
        match (kind, size) {
            (TreeKind::Path, 3) => Self {
                kind: TreeKind::Star,
                size: 2,
            },
            (TreeKind::Star, 1) => Self {
                kind: TreeKind::Path,
                size: 2,
            },
            _ => Self { kind, size },
        }
    }

    pub fn kind(&self) -> TreeKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn vertex_count(&self) -> usize {
        match self.kind {
            TreeKind::Path => self.size,
            TreeKind::Star => self.size + 1,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_count() - 1
    }

    /// Order of this tree read as a path, if it is one (`S2` is `P3`).
    pub fn as_path(&self) -> Option<usize> {
        match (self.kind, self.size) {
            (TreeKind::Path, v) => Some(v),
            (TreeKind::Star, 2) => Some(3),
            _ => None,
        }
    }

    /// Leaf count of this tree read as a star, if it is one (`P2` is `S1`).
    pub fn as_star(&self) -> Option<usize> {
        match (self.kind, self.size) {
            (TreeKind::Star, d) => Some(d),
            (TreeKind::Path, 2) => Some(1),
            _ => None,
        }
    }

    /// Canonical ordering: paths before stars, larger first.
    fn sort_key(&self) -> (TreeKind, std::cmp::Reverse<usize>) {
        (self.kind, std::cmp::Reverse(self.size))
    }
}

impl fmt::Display for TreeComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            TreeKind::Path => write!(f, "P{}", self.size),
            TreeKind::Star => write!(f, "S{}", self.size),
        }
    }
}

/// A nonempty multiset of path/star components in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ForestSpec {
    components: Vec<TreeComponent>,
}

impl ForestSpec {
    pub fn new(mut components: Vec<TreeComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyForest);
        }
        components.sort_by_key(TreeComponent::sort_key);
        Ok(Self { components })
    }

    pub fn paths(orders: &[usize]) -> Result<Self> {
        Self::new(
            orders
                .iter()
                .map(|&v| TreeComponent::path(v))
                .collect::<Result<_>>()?,
        )
    }

    pub fn stars(leaves: &[usize]) -> Result<Self> {
        Self::new(
            leaves
                .iter()
                .map(|&d| TreeComponent::star(d))
                .collect::<Result<_>>()?,
        )
    }

    pub fn components(&self) -> &[TreeComponent] {
        &self.components
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn total_vertices(&self) -> usize {
        self.components
            .iter()
            .map(TreeComponent::vertex_count)
            .sum()
    }

    pub fn total_edges(&self) -> usize {
        self.components.iter().map(TreeComponent::edge_count).sum()
    }

    /// Path orders `v_1 >= ... >= v_k` when every component is a path.
    pub fn path_orders(&self) -> Option<Vec<usize>> {
        let mut orders = self
            .components
            .iter()
            .map(TreeComponent::as_path)
            .collect::<Option<Vec<_>>>()?;
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Some(orders)
    }

    /// Star leaf counts `d_1 >= ... >= d_k` when every component is a star.
    pub fn star_degrees(&self) -> Option<Vec<usize>> {
        let mut degrees = self
            .components
            .iter()
            .map(TreeComponent::as_star)
            .collect::<Option<Vec<_>>>()?;
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Some(degrees)
    }

    /// `(a, b)` for `a·P4 ∪ b·S3`.
    pub fn order4_counts(&self) -> Option<(usize, usize)> {
        let mut a = 0;
        let mut b = 0;
        for c in &self.components {
            match (c.kind, c.size) {
                (TreeKind::Path, 4) => a += 1,
                (TreeKind::Star, 3) => b += 1,
                _ => return None,
            }
        }
        Some((a, b))
    }

    /// Removes one component (by index in canonical order).
    pub fn without(&self, index: usize) -> Option<Self> {
        if self.components.len() <= 1 || index >= self.components.len() {
            return None;
        }
        let mut rest = self.components.clone();
        rest.remove(index);
        Some(Self { components: rest })
    }

    pub fn classify(&self) -> ForestClass {
        classify(self)
    }
}

impl fmt::Display for ForestSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // A linear forest with a genuine path reads better with `S2` as `P3`.
        let shown: Vec<String> = match self.path_orders() {
            Some(orders) if self.components.iter().any(|c| c.kind == TreeKind::Path) => {
                orders.iter().map(|v| format!("P{v}")).collect()
            }
            _ => self.components.iter().map(|c| c.to_string()).collect(),
        };
        let mut i = 0;
        let mut first = true;
        while i < shown.len() {
            let c = &shown[i];
            let run = shown[i..].iter().take_while(|&x| x == c).count();
            if !first {
                f.write_str("+")?;
            }
            if run > 1 {
                write!(f, "{run}*{c}")?;
            } else {
                write!(f, "{c}")?;
            }
            first = false;
            i += run;
        }
        Ok(())
    }
}

impl FromStr for ForestSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_forest(s)
    }
}

impl Serialize for ForestSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ForestSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_forest(&text).map_err(serde::de::Error::custom)
    }
}

pub fn parse_forest(text: &str) -> Result<ForestSpec> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::EmptyForest);
    }
    let mut components = Vec::new();
    for raw in text.split('+') {
        let term = raw.trim();
        let syntax = |reason: &str| Error::Syntax {
            term: term.to_string(),
            reason: reason.to_string(),
        };
        if term.is_empty() {
            return Err(syntax("empty term"));
        }
        let (count, body) = match term.split_once('*') {
            Some((count, body)) => {
                let count: usize = count
                    .trim()
                    .parse()
                    .map_err(|_| syntax("multiplicity is not a positive integer"))?;
                if count == 0 {
                    return Err(syntax("multiplicity must be at least 1"));
                }
                (count, body.trim())
            }
            None => (1, term),
        };
        let mut chars = body.chars();
        let kind = match chars.next() {
            Some('P') => TreeKind::Path,
            Some('S') => TreeKind::Star,
            _ => return Err(syntax("expected `P` or `S`")),
        };
        let digits = chars.as_str();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax("expected a size after the tree letter"));
        }
        let size: usize = digits.parse().map_err(|_| syntax("size out of range"))?;
        let component = match kind {
            TreeKind::Path => TreeComponent::path(size),
            TreeKind::Star => TreeComponent::star(size),
        }
        .map_err(|e| match e {
            Error::ComponentSize { reason, .. } => Error::ComponentSize {
                term: term.to_string(),
                reason,
            },
            other => other,
        })?;
        components.extend(std::iter::repeat_n(component, count));
    }
    ForestSpec::new(components)
}

/// Which closed form governs a forest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ForestClass {
    /// Linear forest with at least one component other than `P3`.
    LinearGeneral,
    /// `k·P3`, handled by the star-forest formula with every `d_i = 2`.
    AllP3,
    StarForest,
    /// `a·P4 ∪ b·S3` with `a, b >= 1`.
    Order4Mixed,
    Unsupported,
}

pub fn classify(spec: &ForestSpec) -> ForestClass {
    if let Some(orders) = spec.path_orders() {
        return if orders.iter().all(|&v| v == 3) {
            ForestClass::AllP3
        } else {
            ForestClass::LinearGeneral
        };
    }
    if spec.star_degrees().is_some() {
        return ForestClass::StarForest;
    }
    match spec.order4_counts() {
        Some((a, b)) if a >= 1 && b >= 1 => ForestClass::Order4Mixed,
        _ => ForestClass::Unsupported,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn spec(text: &str) -> ForestSpec {
        parse_forest(text).unwrap()
    }

    #[test]
    fn parses_paths_and_multiplicities() {
        let s = spec("P4+P2");
        assert_eq!(
            s.components(),
            &[
                TreeComponent::path(4).unwrap(),
                TreeComponent::path(2).unwrap()
            ]
        );
        let s = spec("2*S3+S2");
        assert_eq!(s.star_degrees().unwrap(), vec![3, 3, 2]);
        assert_eq!(s.component_count(), 3);
        assert_eq!(spec("P2 + P4"), spec("P4+P2"));
    }

    #[test]
    fn size_violations_name_the_term() {
        match parse_forest("P4+P1") {
            Err(Error::ComponentSize { term, reason }) => {
                assert_eq!(term, "P1");
                assert!(reason.contains("below 2"));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_forest("S0"),
            Err(Error::ComponentSize { .. })
        ));
    }

    #[test]
    fn syntax_errors() {
        for bad in ["", "Q4", "P", "P4+", "0*P4", "x*P4", "P4P2", "P-3", "2*"] {
            assert!(parse_forest(bad).is_err(), "{bad:?} should be rejected");
        }
    }

    #[test]
    fn counts() {
        let s = spec("P5+P4+P2");
        assert_eq!(s.total_vertices(), 11);
        assert_eq!(s.total_edges(), 8);
        let s = spec("2*S3");
        assert_eq!(s.total_vertices(), 8);
        assert_eq!(s.total_edges(), 6);
    }

    #[test]
    fn p3_and_s2_are_one_tree() {
        assert_eq!(spec("P3"), spec("S2"));
        assert_eq!(spec("S1"), spec("P2"));
        assert_eq!(spec("P3+P3").to_string(), "2*S2");
        assert_eq!(spec("P5+P3").path_orders().unwrap(), vec![5, 3]);
    }

    #[test]
    fn classification() {
        assert_eq!(spec("P4+P2").classify(), ForestClass::LinearGeneral);
        assert_eq!(spec("P3+P3").classify(), ForestClass::AllP3);
        assert_eq!(spec("3*S2").classify(), ForestClass::AllP3);
        assert_eq!(spec("P4+S3").classify(), ForestClass::Order4Mixed);
        assert_eq!(spec("2*P4+S3").classify(), ForestClass::Order4Mixed);
        assert_eq!(spec("S3+S2").classify(), ForestClass::StarForest);
        assert_eq!(spec("S3+P2").classify(), ForestClass::StarForest);
        assert_eq!(spec("P5+P3").classify(), ForestClass::LinearGeneral);
        assert_eq!(spec("P4+S4").classify(), ForestClass::Unsupported);
        assert_eq!(spec("P5+S3").classify(), ForestClass::Unsupported);
        assert_eq!(spec("2*P4").classify(), ForestClass::LinearGeneral);
    }

    #[test]
    fn printer_groups_runs() {
        assert_eq!(spec("S2+S3+S3").to_string(), "2*S3+S2");
        assert_eq!(spec("P2+P4+P5").to_string(), "P5+P4+P2");
        assert_eq!(spec("S3+P4").to_string(), "P4+S3");
    }

    fn arb_component() -> impl Strategy<Value = TreeComponent> {
        prop_oneof![
            (2usize..12).prop_map(|v| TreeComponent::path(v).unwrap()),
            (1usize..10).prop_map(|d| TreeComponent::star(d).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(parts in prop::collection::vec(arb_component(), 1..7)) {
            let s = ForestSpec::new(parts).unwrap();
            prop_assert_eq!(parse_forest(&s.to_string()).unwrap(), s);
        }

        #[test]
        fn component_order_is_irrelevant(mut parts in prop::collection::vec(arb_component(), 1..7)) {
            let a = ForestSpec::new(parts.clone()).unwrap();
            parts.reverse();
            let b = ForestSpec::new(parts).unwrap();
            prop_assert_eq!(a.classify(), b.classify());
            prop_assert_eq!(a, b);
        }
    }
}
