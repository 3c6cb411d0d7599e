//! Partially oriented graphs: data model, `poag 1` text format, joint degrees
//! and subset edge counts.
//!
//! Vertices are `0..n`. Each edge is stored once with canonical endpoints
//! `u < v` and an [`EdgeState`] saying whether it is the arc `u -> v`, the arc
//! `v -> u`, or unoriented. Graphs are immutable once built.

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on `n` for the dense joint-degree tables.
pub const JOINT_DEGREE_CAP: usize = 4096;

/// Orientation state of a canonical edge record `(u, v)` with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeState {
    /// Arc `u -> v`.
    Forward,
    /// Arc `v -> u`.
    Reverse,
    Unoriented,
}

impl EdgeState {
    pub fn is_oriented(self) -> bool {
        self != EdgeState::Unoriented
    }

    /// The state describing the same edge when its endpoints are swapped.
    pub fn flipped(self) -> Self {
        match self {
            EdgeState::Forward => EdgeState::Reverse,
            EdgeState::Reverse => EdgeState::Forward,
            EdgeState::Unoriented => EdgeState::Unoriented,
        }
    }
}

/// A canonical edge record (`u < v`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub state: EdgeState,
}

impl Edge {
    /// `(tail, head)` when the edge is an arc.
    pub fn arc(&self) -> Option<(usize, usize)> {
        match self.state {
            EdgeState::Forward => Some((self.u, self.v)),
            EdgeState::Reverse => Some((self.v, self.u)),
            EdgeState::Unoriented => None,
        }
    }
}

/// How a neighbour `y` relates to a vertex `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Link {
    /// Arc `x -> y`, so `y` is in the out-neighbourhood of `x`.
    Out,
    /// Arc `y -> x`.
    In,
    /// Unoriented edge `xy`.
    Plain,
}

impl Link {
    /// The link seen from the other endpoint.
    pub fn reversed(self) -> Self {
        match self {
            Link::Out => Link::In,
            Link::In => Link::Out,
            Link::Plain => Link::Plain,
        }
    }
}

/// Out (`+`) or in (`-`) side of a neighbourhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    fn link(self) -> Link {
        match self {
            Sign::Plus => Link::Out,
            Sign::Minus => Link::In,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartiallyOrientedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(usize, Link)>>,
    oriented: usize,
}

impl PartiallyOrientedGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
            oriented: 0,
        }
    }

    /// Build a graph from `(x, y, state)` records, where `state` is read
    /// relative to the pair as given (`Forward` means `x -> y`). Endpoints are
    /// canonicalized so the smaller index comes first.
    pub fn from_edges<I>(n: usize, records: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, EdgeState)>,
    {
        let mut edges = Vec::new();
        for (x, y, state) in records {
            edges.push(canonical(n, x, y, state)?);
        }
        Self::from_canonical(n, edges)
    }

    /// Fully oriented graph from a list of arcs `tail -> head`.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges(n, arcs.iter().map(|&(x, y)| (x, y, EdgeState::Forward)))
    }

    /// Unoriented graph from a list of edges.
    pub fn from_unoriented(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::from_edges(n, edges.iter().map(|&(x, y)| (x, y, EdgeState::Unoriented)))
    }

    fn from_canonical(n: usize, mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort_unstable();
        if let Some(w) = edges
            .windows(2)
            .find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v))
        {
            return Err(Error::DuplicateEdge {
                line: None,
                u: w[0].u,
                v: w[0].v,
            });
        }
        let mut adj = vec![Vec::new(); n];
        let mut oriented = 0;
        for e in &edges {
            let link = match e.state {
                EdgeState::Forward => Link::Out,
                EdgeState::Reverse => Link::In,
                EdgeState::Unoriented => Link::Plain,
            };
            oriented += usize::from(e.state.is_oriented());
            adj[e.u].push((e.v, link));
            adj[e.v].push((e.u, link.reversed()));
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(y, _)| y);
        }
        Ok(Self {
            n,
            edges,
            adj,
            oriented,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges, oriented or not.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of arcs.
    pub fn oriented_edge_count(&self) -> usize {
        self.oriented
    }

    pub fn is_oriented(&self) -> bool {
        self.oriented == self.edges.len()
    }

    pub fn is_unoriented(&self) -> bool {
        self.oriented == 0
    }

    pub(crate) fn require_oriented(&self) -> Result<()> {
        if self.is_oriented() {
            Ok(())
        } else {
            Err(Error::NotFullyOriented {
                unoriented: self.edges.len() - self.oriented,
            })
        }
    }

    /// Edge records in canonical `(u, v)` order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Iterator over arcs as `(tail, head)`.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().filter_map(Edge::arc)
    }

    /// Neighbours of `x` sorted by index, with their relation to `x`.
    pub fn neighbors(&self, x: usize) -> &[(usize, Link)] {
        &self.adj[x]
    }

    /// Out- (`Plus`) or in- (`Minus`) neighbourhood of `x`.
    pub fn signed_neighbors(&self, x: usize, sign: Sign) -> impl Iterator<Item = usize> + '_ {
        let want = sign.link();
        self.adj[x]
            .iter()
            .filter(move |&&(_, l)| l == want)
            .map(|&(y, _)| y)
    }

    pub fn degree(&self, x: usize) -> usize {
        self.adj[x].len()
    }

    pub fn out_degree(&self, x: usize) -> usize {
        self.signed_neighbors(x, Sign::Plus).count()
    }

    pub fn in_degree(&self, x: usize) -> usize {
        self.signed_neighbors(x, Sign::Minus).count()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Relation of `y` to `x`, if they are adjacent.
    pub fn link(&self, x: usize, y: usize) -> Option<Link> {
        let list = &self.adj[x];
        list.binary_search_by_key(&y, |&(z, _)| z)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn has_arc(&self, x: usize, y: usize) -> bool {
        self.link(x, y) == Some(Link::Out)
    }

    /// Whether `xy` is an edge of the underlying graph.
    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.link(x, y).is_some()
    }

    /// The underlying graph: same edges, all unoriented.
    pub fn underlying(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                state: EdgeState::Unoriented,
                ..*e
            })
            .collect();
        Self::from_canonical(self.n, edges).expect("edge set already validated")
    }

    /// Every arc reversed; unoriented edges untouched.
    pub fn reversed(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                state: e.state.flipped(),
                ..*e
            })
            .collect();
        Self::from_canonical(self.n, edges).expect("edge set already validated")
    }

    /// Relabel vertex `x` as `perm[x]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "permutation has length {}, expected {}",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
        }
        Self::from_edges(
            self.n,
            self.edges.iter().map(|e| (perm[e.u], perm[e.v], e.state)),
        )
    }

    /// Parse `poag 1` text.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut header = false;
        let mut edges = Vec::new();
        let mut lines_of = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            let malformed = |message: String| Error::Parse { line, message };
            if !header {
                if tokens != ["poag", "1"] {
                    return Err(malformed(format!(
                        "expected header `poag 1`, found `{}`",
                        content.trim()
                    )));
                }
                header = true;
                continue;
            }
            match tokens.as_slice() {
                ["n", count] if n.is_none() => {
                    n = Some(
                        count
                            .parse()
                            .map_err(|_| malformed(format!("invalid vertex count `{count}`")))?,
                    );
                }
                ["n", _] => return Err(malformed("repeated `n` line".into())),
                [kind @ ("a" | "u"), x, y] => {
                    let Some(n) = n else {
                        return Err(malformed("edge before `n` line".into()));
                    };
                    let x: usize = x
                        .parse()
                        .map_err(|_| malformed(format!("invalid vertex `{x}`")))?;
                    let y: usize = y
                        .parse()
                        .map_err(|_| malformed(format!("invalid vertex `{y}`")))?;
                    let state = if *kind == "a" {
                        EdgeState::Forward
                    } else {
                        EdgeState::Unoriented
                    };
                    edges.push(canonical(n, x, y, state).map_err(|e| e.with_line(line))?);
                    lines_of.push(line);
                }
                _ => return Err(malformed(format!("unrecognized line `{}`", content.trim()))),
            }
        }
        let last = text.lines().count().max(1);
        if !header {
            return Err(Error::Parse {
                line: last,
                message: "missing header `poag 1`".into(),
            });
        }
        let Some(n) = n else {
            return Err(Error::Parse {
                line: last,
                message: "missing `n` line".into(),
            });
        };
        // Report duplicates against the later of the two lines.
        let mut first_line = std::collections::HashMap::with_capacity(edges.len());
        for (e, &line) in edges.iter().zip(&lines_of) {
            if first_line.insert((e.u, e.v), line).is_some() {
                return Err(Error::DuplicateEdge {
                    line: Some(line),
                    u: e.u,
                    v: e.v,
                });
            }
        }
        Self::from_canonical(n, edges)
    }

    pub fn load<R: Read>(mut reader: R) -> Result<Self> {
        let mut text = String::new();
        reader.read_to_string(&mut text).map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    pub fn load_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::Parse {
            line: 0,
            message: format!("{}: {e}", path.display()),
        })?;
        Self::load(std::io::BufReader::new(file))
    }

    /// Serialize to `poag 1` text, edges in canonical order.
    pub fn save(&self) -> String {
        let mut out = String::with_capacity(16 + 12 * self.edges.len());
        out.push_str("poag 1\n");
        let _ = writeln!(out, "n {}", self.n);
        for e in &self.edges {
            let _ = match e.state {
                EdgeState::Forward => writeln!(out, "a {} {}", e.u, e.v),
                EdgeState::Reverse => writeln!(out, "a {} {}", e.v, e.u),
                EdgeState::Unoriented => writeln!(out, "u {} {}", e.u, e.v),
            };
        }
        out
    }
}

fn canonical(n: usize, x: usize, y: usize, state: EdgeState) -> Result<Edge> {
    for vertex in [x, y] {
        if vertex >= n {
            return Err(Error::VertexOutOfRange {
                line: None,
                vertex,
                n,
            });
        }
    }
    if x == y {
        return Err(Error::SelfLoop {
            line: None,
            vertex: x,
        });
    }
    Ok(if x < y {
        Edge { u: x, v: y, state }
    } else {
        Edge {
            u: y,
            v: x,
            state: state.flipped(),
        }
    })
}

/// Dense joint-degree tables `d^{στ}(x, y) = |Γ^σ(x) ∩ Γ^τ(y)|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JointDegreeTable {
    n: usize,
    // Indexed by `sign_index(σ, τ)`: ++, +-, -+, --.
    tables: [Vec<u32>; 4],
}

fn sign_index(sigma: Sign, tau: Sign) -> usize {
    match (sigma, tau) {
        (Sign::Plus, Sign::Plus) => 0,
        (Sign::Plus, Sign::Minus) => 1,
        (Sign::Minus, Sign::Plus) => 2,
        (Sign::Minus, Sign::Minus) => 3,
    }
}

impl JointDegreeTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, sigma: Sign, tau: Sign, x: usize, y: usize) -> u32 {
        self.tables[sign_index(sigma, tau)][x * self.n + y]
    }

    pub fn pp(&self, x: usize, y: usize) -> u32 {
        self.get(Sign::Plus, Sign::Plus, x, y)
    }

    pub fn pm(&self, x: usize, y: usize) -> u32 {
        self.get(Sign::Plus, Sign::Minus, x, y)
    }

    pub fn mp(&self, x: usize, y: usize) -> u32 {
        self.get(Sign::Minus, Sign::Plus, x, y)
    }

    pub fn mm(&self, x: usize, y: usize) -> u32 {
        self.get(Sign::Minus, Sign::Minus, x, y)
    }

    /// `d^{++} + d^{--}`: common neighbours seen the same way from both.
    pub fn a(&self, x: usize, y: usize) -> u32 {
        self.pp(x, y) + self.mm(x, y)
    }

    /// `d^{+-} + d^{-+}`: common neighbours seen oppositely.
    pub fn b(&self, x: usize, y: usize) -> u32 {
        self.pm(x, y) + self.mp(x, y)
    }
}

/// Build the joint-degree tables of a fully oriented graph with the default
/// size cap.
pub fn joint_degree_table(g: &PartiallyOrientedGraph) -> Result<JointDegreeTable> {
    joint_degree_table_capped(g, Some(JOINT_DEGREE_CAP))
}

/// As [`joint_degree_table`], with an explicit cap (`None` lifts it).
///
/// Every vertex `z` contributes one count per ordered pair `(x, y)` of its
/// neighbours, so the cost is `Σ_z d(z)²`.
pub fn joint_degree_table_capped(
    g: &PartiallyOrientedGraph,
    cap: Option<usize>,
) -> Result<JointDegreeTable> {
    g.require_oriented()?;
    let n = g.n();
    if let Some(limit) = cap {
        if n > limit {
            return Err(Error::SizeCap {
                what: "joint-degree tables",
                n,
                limit,
            });
        }
    }
    let mut tables: [Vec<u32>; 4] = std::array::from_fn(|_| vec![0u32; n * n]);
    for z in 0..n {
        let nbrs = g.neighbors(z);
        for &(x, lx) in nbrs {
            // z ∈ Γ⁺(x) iff the arc is x -> z, i.e. x is an in-neighbour of z.
            let sigma = if lx == Link::In {
                Sign::Plus
            } else {
                Sign::Minus
            };
            for &(y, ly) in nbrs {
                let tau = if ly == Link::In {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                tables[sign_index(sigma, tau)][x * n + y] += 1;
            }
        }
    }
    Ok(JointDegreeTable { n, tables })
}

/// A pair of (possibly overlapping) vertex subsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "SubsetPairRepr", try_from = "SubsetPairRepr")]
pub struct VertexSubsetPair {
    a: Vec<bool>,
    b: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct SubsetPairRepr {
    n: usize,
    a: Vec<usize>,
    b: Vec<usize>,
}

impl From<VertexSubsetPair> for SubsetPairRepr {
    fn from(p: VertexSubsetPair) -> Self {
        SubsetPairRepr {
            n: p.n(),
            a: p.a_indices(),
            b: p.b_indices(),
        }
    }
}

impl TryFrom<SubsetPairRepr> for VertexSubsetPair {
    type Error = Error;

    fn try_from(r: SubsetPairRepr) -> Result<Self> {
        VertexSubsetPair::from_indices(r.n, &r.a, &r.b)
    }
}

impl VertexSubsetPair {
    pub fn empty(n: usize) -> Self {
        Self {
            a: vec![false; n],
            b: vec![false; n],
        }
    }

    pub fn from_masks(a: Vec<bool>, b: Vec<bool>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::InvalidArgument(format!(
                "mask lengths differ ({} vs {})",
                a.len(),
                b.len()
            )));
        }
        Ok(Self { a, b })
    }

    pub fn from_indices(n: usize, a: &[usize], b: &[usize]) -> Result<Self> {
        let mut pair = Self::empty(n);
        for (mask, idx) in [(&mut pair.a, a), (&mut pair.b, b)] {
            for &x in idx {
                if x >= n {
                    return Err(Error::VertexOutOfRange {
                        line: None,
                        vertex: x,
                        n,
                    });
                }
                mask[x] = true;
            }
        }
        Ok(pair)
    }

    /// Bit `i` of each word selects vertex `i`.
    pub fn from_bits(n: usize, a: u64, b: u64) -> Self {
        let bits = |w: u64| (0..n).map(|i| i < 64 && w >> i & 1 == 1).collect();
        Self {
            a: bits(a),
            b: bits(b),
        }
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[bool] {
        &self.a
    }

    pub fn b(&self) -> &[bool] {
        &self.b
    }

    pub fn a_indices(&self) -> Vec<usize> {
        indices(&self.a)
    }

    pub fn b_indices(&self) -> Vec<usize> {
        indices(&self.b)
    }

    /// The pair with the roles of `A` and `B` exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

fn indices(mask: &[bool]) -> Vec<usize> {
    mask.iter()
        .enumerate()
        .filter_map(|(i, &m)| m.then_some(i))
        .collect()
}

/// `e(A,B)`, `e⃗(A,B)` and `e⃗(B,A)` for a subset pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EdgeCounts {
    /// Ordered pairs `(x, y) ∈ A × B` joined by an edge of the underlying
    /// graph; an edge inside `A ∩ B` counts twice.
    pub between: u64,
    /// Arcs with tail in `A` and head in `B`.
    pub forward: u64,
    /// Arcs with tail in `B` and head in `A`.
    pub backward: u64,
}

pub fn edge_counts_between(g: &PartiallyOrientedGraph, pair: &VertexSubsetPair) -> EdgeCounts {
    let (a, b) = (pair.a(), pair.b());
    assert_eq!(a.len(), g.n(), "subset masks must have length n");
    let mut counts = EdgeCounts::default();
    for e in g.edges() {
        counts.between += u64::from(a[e.u] && b[e.v]) + u64::from(a[e.v] && b[e.u]);
        if let Some((t, h)) = e.arc() {
            counts.forward += u64::from(a[t] && b[h]);
            counts.backward += u64::from(b[t] && a[h]);
        }
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tt3() -> PartiallyOrientedGraph {
        PartiallyOrientedGraph::from_arcs(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    fn c4() -> PartiallyOrientedGraph {
        PartiallyOrientedGraph::from_arcs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn parses_single_arc() {
        let g = PartiallyOrientedGraph::parse("poag 1\nn 2\na 0 1").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
        assert!(g.has_arc(0, 1));
        assert!(!g.has_arc(1, 0));
    }

    #[test]
    fn parses_directed_four_cycle_with_reverse_canonicalization() {
        let g = PartiallyOrientedGraph::parse("poag 1\nn 4\na 0 1\na 1 2\na 2 3\na 3 0").unwrap();
        assert_eq!(g, c4());
        let last = &g.edges()[1];
        assert_eq!((last.u, last.v, last.state), (0, 3, EdgeState::Reverse));
        assert!(g.has_arc(3, 0));
    }

    #[test]
    fn rejects_duplicate_with_line() {
        let err = PartiallyOrientedGraph::parse("poag 1\nn 3\na 0 1\na 0 1").unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateEdge {
                line: Some(4),
                u: 0,
                v: 1
            }
        );
        // An opposite arc over the same pair is still the same pair.
        let err = PartiallyOrientedGraph::parse("poag 1\nn 3\na 0 1\n\na 1 0").unwrap_err();
        assert_eq!(err.line(), Some(5));
    }

    #[test]
    fn rejects_bad_lines() {
        let cases = [
            ("n 2\na 0 1", 1),
            ("poag 1\nn 2\na 0 0", 3),
            ("poag 1\nn 2\na 0 2", 3),
            ("poag 1\nn 2\nx 0 1", 3),
            ("poag 1\na 0 1", 2),
            ("poag 1\nn two", 2),
            ("poag 1\nn 2\na 0", 3),
        ];
        for (text, line) in cases {
            let err = PartiallyOrientedGraph::parse(text).unwrap_err();
            assert_eq!(err.line(), Some(line), "{text:?} -> {err}");
        }
        assert!(matches!(
            PartiallyOrientedGraph::parse("poag 1\nn 2\na 1 1").unwrap_err(),
            Error::SelfLoop { vertex: 1, .. }
        ));
        assert!(matches!(
            PartiallyOrientedGraph::parse("poag 1\nn 2\nu 0 5").unwrap_err(),
            Error::VertexOutOfRange {
                vertex: 5,
                n: 2,
                ..
            }
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = PartiallyOrientedGraph::parse(
            "# header comment\n\npoag 1  # version\nn 3\n# edges\nu 2 0\na 2 1 # arc\n",
        )
        .unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.oriented_edge_count(), 1);
        assert!(g.has_edge(0, 2) && g.has_edge(2, 0));
        assert!(g.has_arc(2, 1));
    }

    #[test]
    fn save_is_canonical() {
        let g = PartiallyOrientedGraph::parse("poag 1\nn 4\nu 3 1\na 3 0\na 0 1").unwrap();
        assert_eq!(g.save(), "poag 1\nn 4\na 0 1\na 3 0\nu 1 3\n");
        assert_eq!(PartiallyOrientedGraph::parse(&g.save()).unwrap(), g);
    }

    #[test]
    fn underlying_forgets_orientation() {
        let u = tt3().underlying();
        assert!(u.is_unoriented());
        assert_eq!(u.edge_count(), 3);
        assert_eq!(u.underlying(), u);
        let single = PartiallyOrientedGraph::from_arcs(2, &[(0, 1)]).unwrap();
        assert_eq!(
            single.underlying(),
            PartiallyOrientedGraph::from_unoriented(2, &[(0, 1)]).unwrap()
        );
        assert_eq!(
            c4().underlying(),
            PartiallyOrientedGraph::from_unoriented(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
        );
    }

    #[test]
    fn joint_degrees_of_transitive_triangle() {
        let t = joint_degree_table(&tt3()).unwrap();
        assert_eq!(t.pp(0, 1), 1);
        assert_eq!(t.mm(1, 2), 1);
        assert_eq!(t.pp(0, 0), 2);
        assert_eq!(t.pm(0, 2), 1);
        assert_eq!(t.a(0, 1), 1);
        assert_eq!(t.b(0, 2), 1);
        let empty = joint_degree_table(&PartiallyOrientedGraph::empty(3)).unwrap();
        assert!((0..3).all(|x| (0..3).all(|y| empty.a(x, y) + empty.b(x, y) == 0)));
    }

    #[test]
    fn joint_degrees_require_orientation() {
        let g = PartiallyOrientedGraph::from_unoriented(2, &[(0, 1)]).unwrap();
        assert_eq!(
            joint_degree_table(&g).unwrap_err(),
            Error::NotFullyOriented { unoriented: 1 }
        );
        let big = PartiallyOrientedGraph::empty(10);
        assert!(matches!(
            joint_degree_table_capped(&big, Some(8)),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn subset_edge_counts() {
        let pair = VertexSubsetPair::from_indices(3, &[0, 1], &[1, 2]).unwrap();
        let c = edge_counts_between(&tt3(), &pair);
        assert_eq!((c.forward, c.backward), (3, 0));
        assert_eq!(c.between, 3);

        let pair = VertexSubsetPair::from_indices(4, &[0, 1], &[1, 2]).unwrap();
        let c = edge_counts_between(&c4(), &pair);
        assert_eq!((c.forward, c.backward), (2, 0));

        let pair = VertexSubsetPair::from_indices(4, &[], &[0, 1, 2, 3]).unwrap();
        assert_eq!(edge_counts_between(&c4(), &pair), EdgeCounts::default());
    }

    #[test]
    fn overlap_counts_ordered_pairs() {
        let g = PartiallyOrientedGraph::from_arcs(2, &[(0, 1)]).unwrap();
        let all = VertexSubsetPair::from_indices(2, &[0, 1], &[0, 1]).unwrap();
        let c = edge_counts_between(&g, &all);
        assert_eq!(
            c,
            EdgeCounts {
                between: 2,
                forward: 1,
                backward: 1
            }
        );
    }

    #[test]
    fn subset_pair_serde() {
        let p = VertexSubsetPair::from_indices(5, &[0, 3], &[4]).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"{"n":5,"a":[0,3],"b":[4]}"#);
        assert_eq!(serde_json::from_str::<VertexSubsetPair>(&json).unwrap(), p);
        assert_eq!(VertexSubsetPair::from_bits(5, 0b1001, 0b10000), p);
    }
}
