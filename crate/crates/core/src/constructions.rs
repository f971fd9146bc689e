//! Extremal and lower-bound graph families.
//!
//! Vertex order is fixed: universal vertices first (`0..|U|`), then the
//! remainder in the order described by its [`Remainder`]. Outputs are
//! therefore byte-stable in every serialisation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forest::{ForestClass, ForestSpec};
use crate::formulas::{eg_matching_number, order4_number, star_forest_number};
use crate::graph::{bit, choose2, low_mask, SmallGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `G_F(n)` for a linear forest.
    LinearGf,
    /// `F(n, i)` for `k·P3`: universal set plus a maximum matching.
    P3Forest,
    /// `F(n, i)` for a general star forest.
    StarFni,
    Order4G1,
    Order4G2,
    DisjointCliques,
    MatchingExtremal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Order4Variant {
    /// `b` universal vertices over `K_r ∪ d·K3`.
    G1,
    /// `2a+b-1` universal vertices over an independent set.
    G2,
}

/// What sits beside the universal set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Remainder {
    Empty,
    SingleEdge,
    /// Near-regular graph of the given degree (a maximum matching when 1).
    NearRegular {
        degree: usize,
    },
    /// `triangles` copies of `K3` followed by one `K_clique`, `clique <= 2`.
    TrianglesPlusClique {
        triangles: usize,
        clique: usize,
    },
    /// `count` copies of `K_size` followed by one `K_leftover`.
    Cliques {
        size: usize,
        count: usize,
        leftover: usize,
    },
    /// One clique on the first `order` remainder vertices, rest isolated.
    Clique {
        order: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionDescriptor {
    pub family: Family,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forest: Option<ForestSpec>,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<Order4Variant>,
    pub universal_count: usize,
    pub remainder: Remainder,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub graph: SmallGraph,
    pub descriptor: ConstructionDescriptor,
}

fn regime(msg: impl Into<String>) -> Error {
    Error::Regime(msg.into())
}

/// `u` universal vertices `0..u` joined to `rest` placed at `u..`.
pub(crate) fn universal_prefix(u: usize, rest: &SmallGraph) -> Result<SmallGraph> {
    let n = u + rest.n();
    let mut g = SmallGraph::complete(u)?.disjoint_union(rest)?;
    let others = low_mask(n) & !low_mask(u);
    let mut rows = g.rows().to_vec();
    for (v, row) in rows.iter_mut().enumerate() {
        if v < u {
            *row |= others;
        } else {
            *row |= low_mask(u);
        }
    }
    g = SmallGraph::from_rows_unchecked(rows);
    Ok(g)
}

/// Graph on `m` vertices with every degree `r`, except exactly one vertex of
/// degree `r - 1` when `r·m` is odd; `⌊rm/2⌋` edges either way.
///
/// Circulant on offsets `1..=⌊r/2⌋`; for odd `r` add the antipodal matching
/// (even `m`) or a near-perfect matching along the step-`(m-1)/2` cycle (odd
/// `m`), whose pairs are never circulant edges.
pub fn near_regular(m: usize, r: usize) -> Result<SmallGraph> {
    if r >= m && !(r == 0 && m == 0) {
        return Err(regime(format!("degree {r} needs more than {m} vertices")));
    }
    let mut g = SmallGraph::empty(m)?;
    for offset in 1..=r / 2 {
        for v in 0..m {
            g.add_edge(v, (v + offset) % m);
        }
    }
    if r % 2 == 1 {
        if m.is_multiple_of(2) {
            for v in 0..m / 2 {
                g.add_edge(v, v + m / 2);
            }
        } else {
            let step = (m - 1) / 2;
            let cycle: Vec<usize> = (0..m).map(|j| j * step % m).collect();
            for pair in cycle[..m - 1].chunks(2) {
                g.add_edge(pair[0], pair[1]);
            }
        }
    }
    Ok(g)
}

/// `⌊n/q⌋` copies of `K_q` and one `K_{n mod q}`.
pub fn disjoint_cliques(n: usize, q: usize) -> Result<SmallGraph> {
    if q < 1 || n < 1 {
        return Err(regime("clique order and host order must be positive"));
    }
    let mut g = SmallGraph::empty(n)?;
    let mut start = 0;
    while start < n {
        let end = (start + q).min(n);
        for u in start..end {
            for v in u + 1..end {
                g.add_edge(u, v);
            }
        }
        start = end;
    }
    Ok(g)
}

/// `k-1` universal vertices over `n-k+1` independent vertices.
pub fn matching_extremal(k: usize, n: usize) -> Result<SmallGraph> {
    if k < 1 || n < 2 * k - 1 {
        return Err(regime(format!(
            "need k >= 1 and n >= 2k-1 (k = {k}, n = {n})"
        )));
    }
    universal_prefix(k - 1, &SmallGraph::empty(n - k + 1)?)
}

/// `G_F(n)`: `Σ⌊v_i/2⌋ - 1` universal vertices, plus one edge outside them
/// when every path has odd order.
pub fn linear_extremal(spec: &ForestSpec, n: usize) -> Result<Construction> {
    let class = spec.classify();
    if class != ForestClass::LinearGeneral {
        return Err(Error::Class {
            class,
            hint: "G_F(n) is defined for linear forests with a component other than P3".into(),
        });
    }
    let orders = spec.path_orders().expect("linear class");
    let s: usize = orders.iter().map(|v| v / 2).sum();
    let odd = orders.iter().all(|v| v % 2 == 1);
    let u = s - 1;
    if n < s + usize::from(odd) {
        return Err(regime(format!("n = {n} too small for {spec}")));
    }
    let mut rest = SmallGraph::empty(n - u)?;
    if odd {
        rest.add_edge(0, 1);
    }
    Ok(Construction {
        graph: universal_prefix(u, &rest)?,
        descriptor: ConstructionDescriptor {
            family: Family::LinearGf,
            forest: Some(spec.clone()),
            n,
            index: None,
            variant: None,
            universal_count: u,
            remainder: if odd {
                Remainder::SingleEdge
            } else {
                Remainder::Empty
            },
        },
    })
}

/// `F(n, i)`: `i-1` universal vertices over an `S^i`-free near-regular graph
/// of degree `d_i - 1` on the other `n-i+1` vertices.
pub fn star_extremal(spec: &ForestSpec, n: usize, i: usize) -> Result<Construction> {
    let Some(degrees) = spec.star_degrees() else {
        return Err(Error::Class {
            class: spec.classify(),
            hint: "F(n, i) is defined for star forests".into(),
        });
    };
    if i < 1 || i > degrees.len() {
        return Err(regime(format!("index {i} outside 1..={}", degrees.len())));
    }
    let d = degrees[i - 1];
    if n + 1 < i + d + 1 {
        return Err(regime(format!(
            "n = {n} leaves fewer than d_i + 1 = {} vertices",
            d + 1
        )));
    }
    let rest = near_regular(n - i + 1, d - 1)?;
    let family = if spec.classify() == ForestClass::AllP3 {
        Family::P3Forest
    } else {
        Family::StarFni
    };
    Ok(Construction {
        graph: universal_prefix(i - 1, &rest)?,
        descriptor: ConstructionDescriptor {
            family,
            forest: Some(spec.clone()),
            n,
            index: Some(i),
            variant: None,
            universal_count: i - 1,
            remainder: if d == 1 {
                Remainder::Empty
            } else {
                Remainder::NearRegular { degree: d - 1 }
            },
        },
    })
}

/// Edge count of [`order4_extremal`] without building the graph.
pub fn order4_edge_count(a: u64, b: u64, n: u64, variant: Order4Variant) -> u64 {
    match variant {
        Order4Variant::G1 => {
            let rest = n - b;
            choose2(b) + b * rest + 3 * (rest / 3) + choose2(rest % 3)
        }
        Order4Variant::G2 => {
            let u = 2 * a + b - 1;
            choose2(u) + u * (n - u)
        }
    }
}

pub fn order4_extremal(
    a: usize,
    b: usize,
    n: usize,
    variant: Order4Variant,
) -> Result<Construction> {
    if a < 1 {
        return Err(regime("order-4 constructions need a >= 1"));
    }
    if n < 4 * (a + b) {
        return Err(regime(format!("n = {n} below 4(a+b) = {}", 4 * (a + b))));
    }
    let (u, rest, remainder) = match variant {
        Order4Variant::G1 => {
            let m = n - b;
            let (triangles, clique) = (m / 3, m % 3);
            let rest = disjoint_cliques(m, 3)?;
            (
                b,
                rest,
                Remainder::TrianglesPlusClique { triangles, clique },
            )
        }
        Order4Variant::G2 => {
            let u = 2 * a + b - 1;
            (u, SmallGraph::empty(n - u)?, Remainder::Empty)
        }
    };
    let family = match variant {
        Order4Variant::G1 => Family::Order4G1,
        Order4Variant::G2 => Family::Order4G2,
    };
    let mut components = vec![crate::forest::TreeComponent::path(4)?; a];
    components.extend(std::iter::repeat_n(
        crate::forest::TreeComponent::star(3)?,
        b,
    ));
    Ok(Construction {
        graph: universal_prefix(u, &rest)?,
        descriptor: ConstructionDescriptor {
            family,
            forest: Some(ForestSpec::new(components)?),
            n,
            index: None,
            variant: Some(variant),
            universal_count: u,
            remainder,
        },
    })
}

/// The construction whose edge count is [`crate::formulas::turan_formula`]'s
/// value for `spec` at `n`.
pub fn extremal_construction(spec: &ForestSpec, n: usize) -> Result<Construction> {
    match spec.classify() {
        ForestClass::LinearGeneral => {
            let orders = spec.path_orders().expect("linear");
            if orders.iter().all(|&v| v == 2) {
                let k = orders.len();
                let value = eg_matching_number(k as u64, n as u64)?;
                let universal = choose2(k as u64 - 1) + (k as u64 - 1) * (n - k + 1) as u64;
                let (graph, u, remainder) = if universal == value {
                    (matching_extremal(k, n)?, k - 1, Remainder::Empty)
                } else {
                    let q = 2 * k - 1;
                    let mut g = SmallGraph::empty(n)?;
                    for x in 0..q {
                        for y in x + 1..q {
                            g.add_edge(x, y);
                        }
                    }
                    (g, 0, Remainder::Clique { order: q })
                };
                return Ok(Construction {
                    graph,
                    descriptor: ConstructionDescriptor {
                        family: Family::MatchingExtremal,
                        forest: Some(spec.clone()),
                        n,
                        index: None,
                        variant: None,
                        universal_count: u,
                        remainder,
                    },
                });
            }
            if orders.len() == 1 {
                return Err(regime(format!(
                    "single path {spec}: no closed-form extremal construction"
                )));
            }
            linear_extremal(spec, n)
        }
        ForestClass::AllP3 | ForestClass::StarForest => {
            let eval = star_forest_number(spec, n as u64)?;
            star_extremal(
                spec,
                n,
                eval.argmax_i.expect("star evaluation has an argmax"),
            )
        }
        ForestClass::Order4Mixed => {
            let (a, b) = spec.order4_counts().expect("order-4 class");
            let eval = order4_number(a as u64, b as u64, n as u64)?;
            let variant = eval.order4.expect("mixed order-4 outcome").attained_by[0];
            order4_extremal(a, b, n, variant)
        }
        ForestClass::Unsupported => Err(Error::Unsupported(format!("{spec}"))),
    }
}

/// Independent check of a universal set: every vertex in `mask` is adjacent
/// to all other vertices.
pub fn is_universal_set(g: &SmallGraph, mask: u64) -> bool {
    let all = low_mask(g.n());
    crate::graph::bits(mask).all(|v| g.neighbors(v) == all & !bit(v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forest::parse_forest;
    use crate::formulas::{linear_forest_number, star_term};

    fn spec(text: &str) -> ForestSpec {
        parse_forest(text).unwrap()
    }

    #[test]
    fn linear_examples() {
        let c = linear_extremal(&spec("P4+P2"), 10).unwrap();
        assert_eq!(c.descriptor.universal_count, 2);
        assert_eq!(c.descriptor.remainder, Remainder::Empty);
        assert_eq!(c.graph.edge_count(), 17);
        assert!(is_universal_set(&c.graph, 0b11));

        let c = linear_extremal(&spec("P5+P3"), 12).unwrap();
        assert_eq!(c.descriptor.universal_count, 2);
        assert_eq!(c.descriptor.remainder, Remainder::SingleEdge);
        assert_eq!(c.graph.edge_count(), 22);
        assert!(c.graph.has_edge(2, 3));
    }

    #[test]
    fn linear_matches_formula_everywhere() {
        for text in [
            "P4+P2", "P5+P3", "2*P4", "P5+P4+P2", "P7+P5+P3", "3*P2", "P6+P6",
        ] {
            let s = spec(text);
            for n in s.total_vertices()..=60 {
                let e = linear_forest_number(&s, n as u64).unwrap().value;
                assert_eq!(
                    linear_extremal(&s, n).unwrap().graph.edge_count() as u64,
                    e,
                    "{text} n={n}"
                );
            }
        }
    }

    #[test]
    fn star_examples() {
        let c = star_extremal(&spec("S3+S2"), 10, 2).unwrap();
        assert_eq!(c.descriptor.universal_count, 1);
        assert_eq!(c.graph.edge_count(), 13);
        let rest = c.graph.induced(low_mask(10) & !1);
        assert_eq!(rest.degree_sequence(), [vec![1; 8], vec![0]].concat());

        let c = star_extremal(&spec("S3"), 6, 1).unwrap();
        assert_eq!(c.graph.edge_count(), 6);
        assert_eq!(c.graph.max_degree(), 2);

        let c = star_extremal(&spec("2*S2"), 9, 2).unwrap();
        assert_eq!(c.descriptor.family, Family::P3Forest);
        assert_eq!(c.graph.edge_count(), 12);

        assert!(star_extremal(&spec("S3+S2"), 10, 3).is_err());
        assert!(star_extremal(&spec("P4+P2"), 10, 1).is_err());
        assert!(star_extremal(&spec("S5"), 5, 1).is_err());
    }

    #[test]
    fn star_terms_match_constructions() {
        for text in ["S3+S2", "2*S3", "3*S2", "S5+S3+S1", "S4+S4+S2"] {
            let s = spec(text);
            let degrees = s.star_degrees().unwrap();
            for n in s.total_vertices()..=60 {
                for i in 1..=degrees.len() {
                    let c = star_extremal(&s, n, i).unwrap();
                    assert_eq!(
                        c.graph.edge_count() as u64,
                        star_term(&degrees, i, n as u64)
                    );
                }
            }
        }
    }

    #[test]
    fn near_regular_examples() {
        let c5 = near_regular(5, 2).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert_eq!(c5.degree_sequence(), vec![2; 5]);
        assert_eq!(
            near_regular(4, 3).unwrap(),
            SmallGraph::complete(4).unwrap()
        );
        let g = near_regular(5, 3).unwrap();
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g.degree_sequence(), vec![3, 3, 3, 3, 2]);
        assert!(near_regular(4, 4).is_err());
    }

    #[test]
    fn near_regular_degree_sequences() {
        for m in 1..=40 {
            for r in 0..m {
                let g = near_regular(m, r).unwrap();
                assert_eq!(g.edge_count(), r * m / 2, "m={m} r={r}");
                let mut expected = vec![r; m];
                if (r * m) % 2 == 1 {
                    expected[m - 1] = r - 1;
                }
                assert_eq!(g.degree_sequence(), expected, "m={m} r={r}");
            }
        }
    }

    #[test]
    fn order4_examples() {
        let c = order4_extremal(1, 1, 10, Order4Variant::G1).unwrap();
        assert_eq!(c.descriptor.universal_count, 1);
        assert_eq!(
            c.descriptor.remainder,
            Remainder::TrianglesPlusClique {
                triangles: 3,
                clique: 0
            }
        );
        assert_eq!(c.graph.edge_count(), 18);
        let c = order4_extremal(1, 1, 10, Order4Variant::G2).unwrap();
        assert_eq!(c.descriptor.universal_count, 2);
        assert_eq!(c.graph.edge_count(), 17);
        for a in 1..3 {
            for b in 0..3 {
                for n in 4 * (a + b)..=60 {
                    for v in [Order4Variant::G1, Order4Variant::G2] {
                        let c = order4_extremal(a, b, n, v).unwrap();
                        assert_eq!(
                            c.graph.edge_count() as u64,
                            order4_edge_count(a as u64, b as u64, n as u64, v)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn disjoint_clique_examples() {
        let g = disjoint_cliques(6, 3).unwrap();
        assert_eq!(g.edge_count(), 6);
        let g = disjoint_cliques(7, 3).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.degree(6), 0);
        assert_eq!(
            disjoint_cliques(5, 5).unwrap(),
            SmallGraph::complete(5).unwrap()
        );
        assert!(disjoint_cliques(5, 0).is_err());
    }

    #[test]
    fn matching_examples() {
        let g = matching_extremal(2, 5).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.degree(0), 4);
        assert_eq!(matching_extremal(3, 10).unwrap().edge_count(), 17);
        assert_eq!(matching_extremal(2, 4).unwrap().edge_count(), 3);
        assert!(matching_extremal(3, 4).is_err());
    }

    #[test]
    fn matching_route_picks_the_larger_branch() {
        // 3·P2 on 5 vertices: K5 (10 edges) beats 2 universal (9 edges)
        let c = extremal_construction(&spec("3*P2"), 5).unwrap();
        assert_eq!(c.graph.edge_count(), 10);
        assert_eq!(c.descriptor.remainder, Remainder::Clique { order: 5 });
        let c = extremal_construction(&spec("3*P2"), 9).unwrap();
        assert_eq!(c.graph.edge_count(), 15);
    }

    #[test]
    fn universal_vertices_come_first() {
        let c = linear_extremal(&spec("P5+P4+P2"), 12).unwrap();
        assert!(is_universal_set(&c.graph, low_mask(4)));
        assert_eq!(c.graph.degree(4), 4);
    }
}
