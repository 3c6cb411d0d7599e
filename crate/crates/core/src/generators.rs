//! Seeded instance generators and the pattern library.
//!
//! All randomness comes from [`SplitMix64`] keyed by the spec seed. Edges are
//! visited in canonical `(u, v)` order with `u < v`; each consumes one draw for
//! its orientation (set bit means `v -> u`), and `gnp-oriented` spends one
//! extra draw per pair, before the orientation draw, on presence.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeState, PartiallyOrientedGraph};
use crate::rational::Rational;
use crate::rng::SplitMix64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    OrientGivenGraph,
    GnpOriented,
    Tournament,
    Blowup,
}

impl Model {
    pub const ALL: [Model; 4] = [
        Model::OrientGivenGraph,
        Model::GnpOriented,
        Model::Tournament,
        Model::Blowup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Model::OrientGivenGraph => "orient-given-graph",
            Model::GnpOriented => "gnp-oriented",
            Model::Tournament => "tournament",
            Model::Blowup => "blowup",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Model::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown model `{s}`")))
    }
}

/// Full description of one generated instance.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub model: Model,
    pub n: Option<usize>,
    pub p: Option<Rational>,
    pub m: Option<usize>,
    pub base: Option<PartiallyOrientedGraph>,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(model: Model, seed: u64) -> Self {
        GeneratorSpec {
            model,
            n: None,
            p: None,
            m: None,
            base: None,
            seed,
        }
    }
}

fn edge_state(rng: &mut SplitMix64) -> EdgeState {
    if rng.next_bit() {
        EdgeState::Reverse
    } else {
        EdgeState::Forward
    }
}

/// Orients every edge of an unoriented graph independently and uniformly.
pub fn random_orientation(g: &PartiallyOrientedGraph, seed: u64) -> Result<PartiallyOrientedGraph> {
    if !g.is_unoriented() {
        return Err(Error::InvalidArgument(
            "random orientation expects an unoriented graph".into(),
        ));
    }
    let mut rng = SplitMix64::new(seed);
    let records: Vec<_> = g
        .edges()
        .iter()
        .map(|e| (e.u, e.v, edge_state(&mut rng)))
        .collect();
    PartiallyOrientedGraph::from_edges(g.n(), records)
}

pub fn complete_graph(n: usize) -> PartiallyOrientedGraph {
    let pairs: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    PartiallyOrientedGraph::from_unoriented(n, &pairs).expect("simple by construction")
}

pub fn random_tournament(n: usize, seed: u64) -> PartiallyOrientedGraph {
    random_orientation(&complete_graph(n), seed).expect("complete graph is unoriented")
}

fn probability(p: &Rational) -> Result<(u64, u64)> {
    if p.is_negative() || p > &Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "p must lie in [0, 1], got {p}"
        )));
    }
    let (num, den) = p
        .to_i128_pair()
        .and_then(|(a, b)| Some((u64::try_from(a).ok()?, u64::try_from(b).ok()?)))
        .ok_or(Error::Overflow(
            "p numerator or denominator exceeds 64 bits",
        ))?;
    Ok((num, den))
}

/// Each pair is present with probability `p`, then oriented uniformly.
pub fn gnp_oriented(n: usize, p: &Rational, seed: u64) -> Result<PartiallyOrientedGraph> {
    let (num, den) = probability(p)?;
    let mut rng = SplitMix64::new(seed);
    let mut records = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.bernoulli(num, den) {
                records.push((u, v, edge_state(&mut rng)));
            }
        }
    }
    PartiallyOrientedGraph::from_edges(n, records)
}

/// Vertex `v` becomes clones `v·m .. v·m + m - 1`; each edge becomes a
/// complete `m × m` bundle in the same state.
pub fn blowup(d: &PartiallyOrientedGraph, m: usize) -> Result<PartiallyOrientedGraph> {
    if m == 0 {
        return Err(Error::InvalidArgument(
            "clone count must be at least 1".into(),
        ));
    }
    let n = d
        .n()
        .checked_mul(m)
        .ok_or(Error::Overflow("blow-up vertex count"))?;
    let records: Vec<_> = d
        .edges()
        .iter()
        .flat_map(|e| {
            (0..m).flat_map(move |i| (0..m).map(move |j| (e.u * m + i, e.v * m + j, e.state)))
        })
        .collect();
    PartiallyOrientedGraph::from_edges(n, records)
}

pub fn generate(spec: &GeneratorSpec) -> Result<PartiallyOrientedGraph> {
    let need_n = || {
        spec.n
            .ok_or_else(|| Error::InvalidArgument(format!("model {} needs n", spec.model)))
    };
    let need_base = || {
        spec.base.as_ref().ok_or_else(|| {
            Error::InvalidArgument(format!("model {} needs a base graph", spec.model))
        })
    };
    match spec.model {
        Model::Tournament => Ok(random_tournament(need_n()?, spec.seed)),
        Model::GnpOriented => {
            let p = spec
                .p
                .as_ref()
                .ok_or_else(|| Error::InvalidArgument("model gnp-oriented needs p".into()))?;
            gnp_oriented(need_n()?, p, spec.seed)
        }
        Model::OrientGivenGraph => random_orientation(need_base()?, spec.seed),
        Model::Blowup => {
            let m = spec
                .m
                .ok_or_else(|| Error::InvalidArgument("model blowup needs m".into()))?;
            blowup(need_base()?, m)
        }
    }
}

/// Isomorphism classes of oriented four-cycles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FourCycleType {
    I,
    II,
    III,
    IV,
}

impl FourCycleType {
    pub const ALL: [FourCycleType; 4] = [
        FourCycleType::I,
        FourCycleType::II,
        FourCycleType::III,
        FourCycleType::IV,
    ];

    /// Cyclic, three consecutive, two-and-two, and two sources / two sinks.
    pub fn representative(self) -> PartiallyOrientedGraph {
        let arcs: &[(usize, usize)] = match self {
            FourCycleType::I => &[(0, 1), (1, 2), (2, 3), (3, 0)],
            FourCycleType::II => &[(0, 1), (1, 2), (3, 0), (3, 2)],
            FourCycleType::III => &[(0, 1), (3, 0), (3, 2), (2, 1)],
            FourCycleType::IV => &[(1, 0), (1, 2), (3, 0), (3, 2)],
        };
        PartiallyOrientedGraph::from_arcs(4, arcs).expect("valid representative")
    }

    pub fn classify(h: &PartiallyOrientedGraph) -> Option<FourCycleType> {
        FourCycleType::ALL
            .into_iter()
            .find(|t| isomorphic(h, &t.representative()))
    }
}

impl fmt::Display for FourCycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FourCycleType::I => "I",
            FourCycleType::II => "II",
            FourCycleType::III => "III",
            FourCycleType::IV => "IV",
        };
        f.write_str(s)
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Brute force over all relabelings; meant for pattern-sized graphs.
pub fn isomorphic(g: &PartiallyOrientedGraph, h: &PartiallyOrientedGraph) -> bool {
    g.n() == h.n()
        && g.edge_count() == h.edge_count()
        && g.oriented_edge_count() == h.oriented_edge_count()
        && permutations(g.n())
            .iter()
            .any(|p| g.relabeled(p).is_ok_and(|r| &r == h))
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedPattern {
    pub name: String,
    pub graph: PartiallyOrientedGraph,
    pub four_cycle_type: Option<FourCycleType>,
}

/// Every state assignment to a fixed edge list, named `family/ssss` with one
/// character per edge: `>` along the listed direction, `<` against it, `-`
/// unoriented.
fn all_states(
    family: &str,
    n: usize,
    edges: &[(usize, usize)],
    oriented_only: bool,
) -> Vec<NamedPattern> {
    let choices: &[(char, EdgeState)] = if oriented_only {
        &[('>', EdgeState::Forward), ('<', EdgeState::Reverse)]
    } else {
        &[
            ('>', EdgeState::Forward),
            ('<', EdgeState::Reverse),
            ('-', EdgeState::Unoriented),
        ]
    };
    let total = choices.len().pow(edges.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut name = format!("{family}/");
            let mut records = Vec::with_capacity(edges.len());
            for &(u, v) in edges {
                let (c, state) = choices[code % choices.len()];
                code /= choices.len();
                name.push(c);
                records.push((u, v, state));
            }
            let graph = PartiallyOrientedGraph::from_edges(n, records).expect("simple pattern");
            let four_cycle_type = if family == "c4" && graph.is_oriented() {
                FourCycleType::classify(&graph)
            } else {
                None
            };
            NamedPattern {
                name,
                graph,
                four_cycle_type,
            }
        })
        .collect()
}

const C4_EDGES: [(usize, usize); 4] = [(0, 1), (1, 2), (2, 3), (3, 0)];
const TRIANGLE_EDGES: [(usize, usize); 3] = [(0, 1), (1, 2), (2, 0)];
const PATH_EDGES: [(usize, usize); 2] = [(0, 1), (1, 2)];
const EDGE_EDGES: [(usize, usize); 1] = [(0, 1)];

#[derive(Debug, Clone, PartialEq)]
pub struct PatternLibrary {
    /// The sixteen orientations of the four-cycle, each with its type.
    pub four_cycles: Vec<NamedPattern>,
    pub unoriented_four_cycle: NamedPattern,
    pub triangles: Vec<NamedPattern>,
    pub edge: NamedPattern,
    pub arc: NamedPattern,
}

impl PatternLibrary {
    pub fn of_type(&self, t: FourCycleType) -> impl Iterator<Item = &NamedPattern> {
        self.four_cycles
            .iter()
            .filter(move |p| p.four_cycle_type == Some(t))
    }

    pub fn type_sizes(&self) -> [usize; 4] {
        FourCycleType::ALL.map(|t| self.of_type(t).count())
    }

    /// Share of each type among all orientations.
    pub fn proportions(&self) -> [Rational; 4] {
        let total = self.four_cycles.len() as i64;
        self.type_sizes().map(|s| Rational::new(s as i64, total))
    }
}

pub fn pattern_library() -> PatternLibrary {
    let mut edge = all_states("edge", 2, &EDGE_EDGES, false);
    PatternLibrary {
        four_cycles: all_states("c4", 4, &C4_EDGES, true),
        unoriented_four_cycle: all_states("c4", 4, &C4_EDGES, false)
            .into_iter()
            .find(|p| p.graph.is_unoriented())
            .expect("all-unoriented assignment"),
        triangles: all_states("triangle", 3, &TRIANGLE_EDGES, true),
        arc: edge.remove(0),
        edge: edge.pop().expect("unoriented edge"),
    }
}

/// Every partial orientation of the four-cycle, triangle, two-edge path and
/// single edge.
pub fn default_patterns() -> Vec<NamedPattern> {
    let mut out = all_states("c4", 4, &C4_EDGES, false);
    out.extend(all_states("triangle", 3, &TRIANGLE_EDGES, false));
    out.extend(all_states("path", 3, &PATH_EDGES, false));
    out.extend(all_states("edge", 2, &EDGE_EDGES, false));
    out
}
