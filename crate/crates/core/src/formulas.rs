//! Closed forms for `ex(n, F)`.
//!
//! Everything here is integer arithmetic. Leading coefficients that are
//! multiples of one half are kept as [`HalfInt`] (doubled integers).

use std::fmt;

use serde::{Serialize, Serializer};

use crate::constructions::{self, Order4Variant};
use crate::embedding::find_embedding;
use crate::error::{Error, Result};
use crate::forest::{ForestClass, ForestSpec};
use crate::graph::{choose2, SmallGraph, MAX_VERTICES};

/// Which result an evaluation comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremTag {
    /// Upper bound `⌊(k-2)n/2⌋` for a single path `P_k`.
    ErdosGallaiPath,
    /// `k` independent edges; exact for every `n >= 2k-1`.
    ErdosGallaiMatching,
    /// Arbitrary linear forest with some component other than `P3`.
    LinearForest,
    /// Star forests, including `k·P3`.
    StarForest,
    /// `k` paths of one common order.
    EqualPaths,
    /// `a·P4 ∪ b·S3`.
    Order4,
}

impl TheoremTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremTag::ErdosGallaiPath => "erdos-gallai-path",
            TheoremTag::ErdosGallaiMatching => "erdos-gallai-matching",
            TheoremTag::LinearForest => "linear-forest",
            TheoremTag::StarForest => "star-forest",
            TheoremTag::EqualPaths => "equal-paths",
            TheoremTag::Order4 => "order-4",
        }
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl Serialize for TheoremTag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// An exact multiple of one half, stored doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub fn from_doubled(doubled: i64) -> Self {
        Self(doubled)
    }

    pub fn doubled(&self) -> i64 {
        self.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which of the two order-4 constructions the theory says is extremal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Order4Verdict {
    UniqueG1,
    G1AndG2,
    UniqueG2,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Order4Outcome {
    pub g1_edges: u64,
    pub g2_edges: u64,
    /// Constructions attaining the maximum, G1 first.
    pub attained_by: Vec<Order4Variant>,
    /// `r` in `n - b = 3d + r`.
    pub residue: u64,
    pub verdict: Order4Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TuranEvaluation {
    pub value: u64,
    pub theorem: TheoremTag,
    /// Smallest maximising index of the star-forest expression (1-based).
    pub argmax_i: Option<usize>,
    /// Every maximising index, ascending.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub maximizers: Vec<usize>,
    /// 1 iff every path component has odd order.
    pub c: u8,
    /// `f_i = i - 1 + (d_i - 1)/2` for star forests.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<HalfInt>>,
    /// The value is proven only for sufficiently large `n`.
    pub asymptotic_caveat: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order4: Option<Order4Outcome>,
}

impl TuranEvaluation {
    fn plain(value: u64, theorem: TheoremTag, asymptotic_caveat: bool) -> Self {
        Self {
            value,
            theorem,
            argmax_i: None,
            maximizers: Vec::new(),
            c: 0,
            f: None,
            asymptotic_caveat,
            order4: None,
        }
    }
}

fn regime(msg: impl Into<String>) -> Error {
    Error::Regime(msg.into())
}

/// `⌊(k-2)n/2⌋`, the Erdős–Gallai upper bound on `ex(n, P_k)`.
pub fn eg_path_bound(k: u64, n: u64) -> Result<u64> {
    if k < 2 {
        return Err(regime(format!("path order {k} below 2")));
    }
    if n < 1 {
        return Err(regime("host order must be positive"));
    }
    Ok((k - 2) * n / 2)
}

/// `ex(n, k·P2) = max{C(k-1,2) + (k-1)(n-k+1), C(2k-1,2)}`.
///
/// The clique branch is `e(K_{2k-1})`; some printings of this formula carry
/// `C(2k-1, k)` there instead, which does not match that construction.
pub fn eg_matching_number(k: u64, n: u64) -> Result<u64> {
    if k < 1 {
        return Err(regime("matching size must be at least 1"));
    }
    if n < 2 * k - 1 {
        return Err(regime(format!("n = {n} below 2k-1 = {}", 2 * k - 1)));
    }
    let universal = choose2(k - 1) + (k - 1) * (n - k + 1);
    let clique = choose2(2 * k - 1);
    Ok(universal.max(clique))
}

/// `Σ ⌊v_i / 2⌋` and the parity constant `c`.
fn linear_parameters(orders: &[usize]) -> (u64, u8) {
    let s = orders.iter().map(|&v| (v / 2) as u64).sum();
    let c = u8::from(orders.iter().all(|&v| v % 2 == 1));
    (s, c)
}

/// `(s-1)(n-s+1) + C(s-1, 2) + c` with `s = Σ⌊v_i/2⌋`.
pub fn linear_forest_number(spec: &ForestSpec, n: u64) -> Result<TuranEvaluation> {
    let class = spec.classify();
    match class {
        ForestClass::LinearGeneral => {}
        ForestClass::AllP3 => {
            return Err(Error::Class {
                class,
                hint: "every component is P3; use star_forest_number".into(),
            })
        }
        _ => {
            return Err(Error::Class {
                class,
                hint: "not a linear forest".into(),
            })
        }
    }
    let orders = spec.path_orders().expect("linear class has path orders");
    if orders.len() == 1 && orders[0] >= 4 {
        return Err(regime(format!(
            "single path P{}: the closed form needs at least two components; \
             only the Erdős–Gallai bound applies",
            orders[0]
        )));
    }
    let (s, c) = linear_parameters(&orders);
    if n < s + u64::from(c) {
        return Err(regime(format!(
            "n = {n} below Σ⌊v_i/2⌋ + c = {}",
            s + u64::from(c)
        )));
    }
    let value = (s - 1) * (n - s + 1) + choose2(s - 1) + u64::from(c);
    Ok(TuranEvaluation {
        c,
        ..TuranEvaluation::plain(value, TheoremTag::LinearForest, true)
    })
}

/// `i`-th term of the star-forest maximum (1-based):
/// `(i-1)(n-i+1) + C(i-1, 2) + ⌊(d_i-1)(n-i+1)/2⌋`.
pub fn star_term(degrees: &[usize], i: usize, n: u64) -> u64 {
    let d = degrees[i - 1] as u64;
    let i = i as u64;
    let rest = n - i + 1;
    (i - 1) * rest + choose2(i - 1) + (d - 1) * rest / 2
}

pub fn star_forest_number(spec: &ForestSpec, n: u64) -> Result<TuranEvaluation> {
    let class = spec.classify();
    let Some(degrees) = spec.star_degrees() else {
        return Err(Error::Class {
            class,
            hint: "not a star forest".into(),
        });
    };
    let total = spec.total_vertices() as u64;
    if n < total {
        return Err(regime(format!("n = {n} below |V(F)| = {total}")));
    }
    let terms: Vec<u64> = (1..=degrees.len())
        .map(|i| star_term(&degrees, i, n))
        .collect();
    let value = *terms.iter().max().expect("nonempty forest");
    let maximizers: Vec<usize> = (1..=terms.len())
        .filter(|&i| terms[i - 1] == value)
        .collect();
    let f = degrees
        .iter()
        .enumerate()
        .map(|(idx, &d)| HalfInt::from_doubled(2 * idx as i64 + d as i64 - 1))
        .collect();
    Ok(TuranEvaluation {
        argmax_i: maximizers.first().copied(),
        maximizers,
        f: Some(f),
        ..TuranEvaluation::plain(value, TheoremTag::StarForest, true)
    })
}

/// `ex(n, k·P_ℓ)` for `ℓ >= 3`.
///
/// With `k = 1` this only evaluates the expression, which is not `ex(n, P_ℓ)`:
/// it gives 10 for `P5` at `n = 10`, where the true value is 13.
pub fn same_order_number(k: u64, order: u64, n: u64) -> Result<TuranEvaluation> {
    if order <= 2 {
        return Err(Error::Class {
            class: ForestClass::LinearGeneral,
            hint: format!("component order {order}; order 2 is the matching formula"),
        });
    }
    if k < 1 {
        return Err(regime("at least one component required"));
    }
    if n < k * order {
        return Err(regime(format!("n = {n} below kℓ = {}", k * order)));
    }
    if order == 3 {
        let rest = n - k + 1;
        let value = choose2(k - 1) + rest * (k - 1) + rest / 2;
        return Ok(TuranEvaluation::plain(value, TheoremTag::EqualPaths, true));
    }
    let s = k * (order / 2);
    let c = u8::from(order % 2 == 1);
    let value = choose2(s - 1) + (s - 1) * (n - s + 1) + u64::from(c);
    Ok(TuranEvaluation {
        c,
        ..TuranEvaluation::plain(value, TheoremTag::EqualPaths, true)
    })
}

/// `ex(n, a·P4 ∪ b·S3)` as the larger of the two order-4 constructions.
pub fn order4_number(a: u64, b: u64, n: u64) -> Result<TuranEvaluation> {
    if a == 0 && b == 0 {
        return Err(Error::EmptyForest);
    }
    if b == 0 {
        return same_order_number(a, 4, n);
    }
    if a == 0 {
        let spec = ForestSpec::stars(&vec![3; b as usize])?;
        return star_forest_number(&spec, n);
    }
    if n < 4 * (a + b) {
        return Err(regime(format!("n = {n} below 4(a+b) = {}", 4 * (a + b))));
    }
    let g1 = constructions::order4_edge_count(a, b, n, Order4Variant::G1);
    let g2 = constructions::order4_edge_count(a, b, n, Order4Variant::G2);
    let value = g1.max(g2);
    let attained_by = [(Order4Variant::G1, g1), (Order4Variant::G2, g2)]
        .into_iter()
        .filter(|&(_, e)| e == value)
        .map(|(v, _)| v)
        .collect();
    // residue taken from n - b, as in the G1 construction itself
    let residue = (n - b) % 3;
    let verdict = match (a, residue) {
        (1, 0) => Order4Verdict::UniqueG1,
        (1, _) => Order4Verdict::G1AndG2,
        _ => Order4Verdict::UniqueG2,
    };
    Ok(TuranEvaluation {
        order4: Some(Order4Outcome {
            g1_edges: g1,
            g2_edges: g2,
            attained_by,
            residue,
            verdict,
        }),
        ..TuranEvaluation::plain(value, TheoremTag::Order4, true)
    })
}

/// Dispatches on [`ForestClass`].
pub fn turan_formula(spec: &ForestSpec, n: u64) -> Result<TuranEvaluation> {
    match spec.classify() {
        ForestClass::LinearGeneral => {
            let orders = spec.path_orders().expect("linear");
            if orders.iter().all(|&v| v == 2) {
                let k = orders.len() as u64;
                let value = eg_matching_number(k, n)?;
                Ok(TuranEvaluation::plain(
                    value,
                    TheoremTag::ErdosGallaiMatching,
                    false,
                ))
            } else {
                linear_forest_number(spec, n)
            }
        }
        ForestClass::AllP3 | ForestClass::StarForest => star_forest_number(spec, n),
        ForestClass::Order4Mixed => {
            let (a, b) = spec.order4_counts().expect("order-4 class");
            order4_number(a as u64, b as u64, n)
        }
        ForestClass::Unsupported => Err(Error::Unsupported(format!(
            "{spec}: mixed path/star forests other than a·P4 ∪ b·S3 have no known closed form"
        ))),
    }
}

/// Non-negative fraction in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let g = gcd(num, den);
        Self {
            num: num / g,
            den: den / g,
        }
    }

    /// `self > other` without leaving integers.
    pub fn exceeds(&self, other: u64) -> bool {
        self.num > other * self.den
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A graph refuting "≥ e(F)+k vertices and average degree > e(F)-1 forces F".
#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub forest: ForestSpec,
    pub e_f: u64,
    pub k: u64,
    pub witness_n: u64,
    pub witness_edges: u64,
    pub witness: SmallGraph,
    pub avg_degree: Ratio,
    pub theorem: TheoremTag,
}

/// Scans `n` from `e(F) + k` to `n_max` (capped at [`MAX_VERTICES`]) for an
/// extremal construction that has average degree above `e(F) - 1` and is
/// certified `F`-free.
pub fn goldberg_counterexample(spec: &ForestSpec, n_max: u64) -> Result<Option<ConjectureReport>> {
    let e_f = spec.total_edges() as u64;
    let k = spec.component_count() as u64;
    let n_max = n_max.min(MAX_VERTICES as u64);
    let threshold = e_f.saturating_sub(1);
    for n in (e_f + k)..=n_max {
        let Ok(eval) = turan_formula(spec, n) else {
            continue;
        };
        let Ok(built) = constructions::extremal_construction(spec, n as usize) else {
            continue;
        };
        let edges = built.graph.edge_count() as u64;
        debug_assert_eq!(edges, eval.value);
        let avg = Ratio::new(2 * edges, n);
        if e_f == 0 || !avg.exceeds(threshold) {
            continue;
        }
        if find_embedding(&built.graph, spec).is_some() {
            return Err(Error::Regime(format!(
                "construction for {spec} at n = {n} contains the forest"
            )));
        }
        return Ok(Some(ConjectureReport {
            forest: spec.clone(),
            e_f,
            k,
            witness_n: n,
            witness_edges: edges,
            witness: built.graph,
            avg_degree: avg,
            theorem: eval.theorem,
        }));
    }
    Ok(None)
}

/// `e(F(n, i))` for every `i`, as `(i, term)`, for cross-checking against
/// [`star_forest_number`].
pub fn star_terms(spec: &ForestSpec, n: u64) -> Option<Vec<(usize, u64)>> {
    let degrees = spec.star_degrees()?;
    Some(
        (1..=degrees.len())
            .map(|i| (i, star_term(&degrees, i, n)))
            .collect(),
    )
}

/// `ex(m, S_d) = ⌊(d-1)m/2⌋`: most edges with maximum degree below `d`
/// (for `m > d`).
pub fn single_star_number(d: u64, m: u64) -> u64 {
    (d - 1) * m / 2
}
