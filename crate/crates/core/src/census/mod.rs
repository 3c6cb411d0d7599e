//! Four-cycle census of an oriented graph.
//!
//! Every homomorphic four-cycle `x1 x2 x3 x4` is determined by its opposite
//! pair `(x1, x3)` and one common neighbour of that pair on each side, so all
//! four orientation-type counts reduce to sums over ordered pairs `(x, x')`
//! (diagonal included) of products of joint degrees:
//!
//! | count    | pair sum                                   |
//! |----------|--------------------------------------------|
//! | `hom_I`  | `2 Σ d+- d-+`                              |
//! | `hom_II` | `2 Σ a b`, `a = d++ + d--`, `b = d+- + d-+` |
//! | `hom_III`| `4 Σ d++ d--` = `2 Σ (d+-)² + (d-+)²`       |
//! | `hom_IV` | `Σ (d++)² + (d--)²`                        |
//! | `hom_C4` | `Σ (a + b)²`                               |
//!
//! Joint-degree rows are built one source vertex at a time, so memory stays
//! linear in `n` and the outer loop runs in parallel.

mod hom;

pub use hom::{
    hom_count, hom_count_limited, hom_deviation, pattern_hom_count, HOM_MAX_PATTERN,
    HOM_STATE_LIMIT,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeState, Link, PartiallyOrientedGraph};
use crate::rational::decimal;

/// Homomorphic four-cycle counts by orientation type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct FourCycleCensus {
    #[serde(with = "decimal")]
    pub hom_i: i64,
    #[serde(with = "decimal")]
    pub hom_ii: i64,
    #[serde(with = "decimal")]
    pub hom_iii: i64,
    #[serde(with = "decimal")]
    pub hom_iv: i64,
    #[serde(with = "decimal")]
    pub hom_c4: i64,
}

impl FourCycleCensus {
    pub fn as_tuple(&self) -> (i64, i64, i64, i64, i64) {
        (
            self.hom_i,
            self.hom_ii,
            self.hom_iii,
            self.hom_iv,
            self.hom_c4,
        )
    }

    /// `hom_C4 - 2 hom_II`, the signed quadruple sum expressed through the census.
    pub fn quadruple_sum(&self) -> i64 {
        self.hom_c4 - 2 * self.hom_ii
    }
}

/// The raw pair sums behind the census, with both forms of the Type III count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PairSums {
    /// `Σ d+- d-+`
    pub pm_mp: i128,
    /// `Σ a b`
    pub a_b: i128,
    /// `Σ d++ d--`
    pub pp_mm: i128,
    /// `Σ (d+-)² + (d-+)²`
    pub pm2_mp2: i128,
    /// `Σ (d++)² + (d--)²`
    pub pp2_mm2: i128,
    /// `Σ (a + b)²`
    pub ab_sq: i128,
}

impl std::ops::Add for PairSums {
    type Output = PairSums;
    fn add(self, o: PairSums) -> PairSums {
        PairSums {
            pm_mp: self.pm_mp + o.pm_mp,
            a_b: self.a_b + o.a_b,
            pp_mm: self.pp_mm + o.pp_mm,
            pm2_mp2: self.pm2_mp2 + o.pm2_mp2,
            pp2_mm2: self.pp2_mm2 + o.pp2_mm2,
            ab_sq: self.ab_sq + o.ab_sq,
        }
    }
}

impl PairSums {
    /// Type III count via `d++ d--`.
    pub fn hom_iii_same_side(&self) -> i128 {
        4 * self.pp_mm
    }

    /// Type III count via squared mixed joint degrees.
    pub fn hom_iii_mixed(&self) -> i128 {
        2 * self.pm2_mp2
    }
}

/// Joint-degree rows `d^{στ}(x, ·)` for one source vertex `x`.
struct JointRows {
    // ++, +-, -+, --
    rows: [Vec<u32>; 4],
    touched: Vec<usize>,
}

impl JointRows {
    fn new(n: usize) -> Self {
        Self {
            rows: std::array::from_fn(|_| vec![0; n]),
            touched: Vec::new(),
        }
    }

    fn fill(&mut self, g: &PartiallyOrientedGraph, x: usize) {
        for &y in &self.touched {
            for r in &mut self.rows {
                r[y] = 0;
            }
        }
        self.touched.clear();
        for &(z, lz) in g.neighbors(x) {
            // σ = + when z ∈ Γ⁺(x).
            let s = usize::from(lz != Link::Out);
            for &(y, ly) in g.neighbors(z) {
                // z ∈ Γ⁺(y) iff y -> z, i.e. y is an in-neighbour of z.
                let t = usize::from(ly != Link::In);
                if self.rows.iter().all(|r| r[y] == 0) {
                    self.touched.push(y);
                }
                self.rows[2 * s + t][y] += 1;
            }
        }
    }

    fn get(&self, y: usize) -> [i128; 4] {
        std::array::from_fn(|i| i128::from(self.rows[i][y]))
    }
}

fn for_each_row<T, F>(g: &PartiallyOrientedGraph, per_row: F) -> T
where
    T: Send + Default + std::ops::Add<Output = T>,
    F: Fn(&JointRows) -> T + Sync,
{
    let n = g.n();
    (0..n)
        .into_par_iter()
        .fold(
            || (JointRows::new(n), T::default()),
            |(mut rows, acc), x| {
                rows.fill(g, x);
                let v = per_row(&rows);
                (rows, acc + v)
            },
        )
        .map(|(_, acc)| acc)
        .reduce(T::default, |a, b| a + b)
}

/// All census pair sums of a fully oriented graph.
pub fn pair_sums(g: &PartiallyOrientedGraph) -> Result<PairSums> {
    g.require_oriented()?;
    Ok(for_each_row(g, |rows| {
        let mut s = PairSums::default();
        for &y in &rows.touched {
            let [pp, pm, mp, mm] = rows.get(y);
            let (a, b) = (pp + mm, pm + mp);
            s.pm_mp += pm * mp;
            s.a_b += a * b;
            s.pp_mm += pp * mm;
            s.pm2_mp2 += pm * pm + mp * mp;
            s.pp2_mm2 += pp * pp + mm * mm;
            s.ab_sq += (a + b) * (a + b);
        }
        s
    }))
}

fn to_i64(v: i128) -> Result<i64> {
    i64::try_from(v).map_err(|_| Error::Overflow("four-cycle census"))
}

/// Closed-form four-cycle census. Counts are bounded by `n⁴`, so any graph
/// with `n ≤ 50 000` fits the 63-bit range.
pub fn four_cycle_census(g: &PartiallyOrientedGraph) -> Result<FourCycleCensus> {
    census_from_sums(&pair_sums(g)?)
}

pub fn census_from_sums(s: &PairSums) -> Result<FourCycleCensus> {
    Ok(FourCycleCensus {
        hom_i: to_i64(2 * s.pm_mp)?,
        hom_ii: to_i64(2 * s.a_b)?,
        hom_iii: to_i64(s.hom_iii_same_side())?,
        hom_iv: to_i64(s.pp2_mm2)?,
        hom_c4: to_i64(s.ab_sq)?,
    })
}

/// Which part of a neighbourhood a cycle vertex must lie in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Out,
    In,
    Any,
}

impl Side {
    /// Sign indices (0 = +, 1 = -) covered by this side.
    fn signs(self) -> &'static [usize] {
        match self {
            Side::Out => &[0],
            Side::In => &[1],
            Side::Any => &[0, 1],
        }
    }
}

/// Side of `from` on which `to` must lie for an edge of the given state, where
/// `state` is read along the pair `(from, to)`.
fn side(state: EdgeState) -> Side {
    match state {
        EdgeState::Forward => Side::Out,
        EdgeState::Reverse => Side::In,
        EdgeState::Unoriented => Side::Any,
    }
}

/// Homomorphism count of the four-cycle `0-1-2-3-0` with edge states
/// `states[i]` read along `(i, i+1 mod 4)`, into a fully oriented graph.
pub fn four_cycle_hom(g: &PartiallyOrientedGraph, states: [EdgeState; 4]) -> Result<i64> {
    g.require_oriented()?;
    // x1 ∈ S(x0) ∩ T(x2) and x3 ∈ S'(x0) ∩ T'(x2).
    let x1_from_x0 = side(states[0]);
    let x1_from_x2 = side(states[1].flipped());
    let x3_from_x2 = side(states[2]);
    let x3_from_x0 = side(states[3].flipped());
    let count = |rows: &JointRows, y: usize, s: Side, t: Side| -> i128 {
        let d = rows.get(y);
        s.signs()
            .iter()
            .flat_map(|&i| t.signs().iter().map(move |&j| d[2 * i + j]))
            .sum()
    };
    let total: i128 = for_each_row(g, |rows| {
        rows.touched
            .iter()
            .map(|&y| {
                count(rows, y, x1_from_x0, x1_from_x2) * count(rows, y, x3_from_x0, x3_from_x2)
            })
            .sum::<i128>()
    });
    i64::try_from(total).map_err(|_| Error::Overflow("four-cycle homomorphism count"))
}

/// If `h` is a four-cycle, its edge states along a cyclic order starting at
/// vertex 0, together with that order.
pub fn as_four_cycle(h: &PartiallyOrientedGraph) -> Option<([EdgeState; 4], [usize; 4])> {
    if h.n() != 4 || h.edge_count() != 4 || (0..4).any(|x| h.degree(x) != 2) {
        return None;
    }
    let mut order = [0usize; 4];
    let mut prev = usize::MAX;
    for i in 1..4 {
        let cur = order[i - 1];
        let next = h
            .neighbors(cur)
            .iter()
            .map(|&(y, _)| y)
            .find(|&y| y != prev && y != 0)?;
        prev = cur;
        order[i] = next;
    }
    if !h.has_edge(order[3], 0) {
        return None;
    }
    let states = std::array::from_fn(|i| {
        let (x, y) = (order[i], order[(i + 1) % 4]);
        match h.link(x, y).expect("cycle edge") {
            Link::Out => EdgeState::Forward,
            Link::In => EdgeState::Reverse,
            Link::Plain => EdgeState::Unoriented,
        }
    });
    Some((states, order))
}

/// Sizes of the quadruple set `C` and its sign classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SignCensus {
    #[serde(with = "decimal")]
    pub c_total: i64,
    #[serde(with = "decimal")]
    pub c_plus: i64,
    #[serde(with = "decimal")]
    pub c_minus: i64,
}

impl SignCensus {
    pub fn signed_total(&self) -> i64 {
        self.c_plus - self.c_minus
    }
}

/// Count quadruples `(x, x', y, y')` with all four skew-adjacency entries
/// `M_xy, M_xy', M_x'y, M_x'y'` nonzero, split by the sign of their product.
///
/// Works directly on bit rows of the skew adjacency matrix: for each ordered
/// row pair, `p` columns agree in sign and `q` disagree, contributing
/// `p² + q²` positive and `2pq` negative quadruples.
pub fn sign_census(g: &PartiallyOrientedGraph) -> Result<SignCensus> {
    g.require_oriented()?;
    let n = g.n();
    let words = n.div_ceil(64);
    let mut pos = vec![0u64; n * words];
    let mut neg = vec![0u64; n * words];
    for (t, h) in g.arcs() {
        pos[t * words + h / 64] |= 1 << (h % 64);
        neg[h * words + t / 64] |= 1 << (t % 64);
    }
    fn row(m: &[u64], x: usize, words: usize) -> &[u64] {
        &m[x * words..(x + 1) * words]
    }
    let and_count = |a: &[u64], b: &[u64]| -> i128 {
        a.iter()
            .zip(b)
            .map(|(u, v)| i128::from((u & v).count_ones()))
            .sum()
    };
    let (plus, minus) = (0..n)
        .into_par_iter()
        .map(|x| {
            let (px, nx) = (row(&pos, x, words), row(&neg, x, words));
            let mut acc = (0i128, 0i128);
            for y in 0..n {
                let (py, ny) = (row(&pos, y, words), row(&neg, y, words));
                let p = and_count(px, py) + and_count(nx, ny);
                let q = and_count(px, ny) + and_count(nx, py);
                acc.0 += p * p + q * q;
                acc.1 += 2 * p * q;
            }
            acc
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let fit = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow("sign census"));
    Ok(SignCensus {
        c_total: fit(plus + minus)?,
        c_plus: fit(plus)?,
        c_minus: fit(minus)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arcs(n: usize, a: &[(usize, usize)]) -> PartiallyOrientedGraph {
        PartiallyOrientedGraph::from_arcs(n, a).unwrap()
    }

    /// Count maps `V(C4) -> V(D)` by enumerating all `n⁴` of them.
    fn brute_c4(g: &PartiallyOrientedGraph, states: [EdgeState; 4]) -> i64 {
        let n = g.n();
        let ok = |x: usize, y: usize, s: EdgeState| match s {
            EdgeState::Forward => g.has_arc(x, y),
            EdgeState::Reverse => g.has_arc(y, x),
            EdgeState::Unoriented => g.has_edge(x, y),
        };
        let mut count = 0;
        for m in 0..n.pow(4) {
            let f = [m % n, m / n % n, m / n / n % n, m / n / n / n];
            if (0..4).all(|i| ok(f[i], f[(i + 1) % 4], states[i])) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn named_censuses() {
        let c4 = arcs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(
            four_cycle_census(&c4).unwrap().as_tuple(),
            (8, 0, 16, 8, 32)
        );
        let tt3 = arcs(3, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(
            four_cycle_census(&tt3).unwrap().as_tuple(),
            (0, 0, 4, 14, 18)
        );
        let arc = arcs(2, &[(0, 1)]);
        assert_eq!(four_cycle_census(&arc).unwrap().as_tuple(), (0, 0, 0, 2, 2));
        let empty = PartiallyOrientedGraph::empty(5);
        assert_eq!(
            four_cycle_census(&empty).unwrap(),
            FourCycleCensus::default()
        );
    }

    #[test]
    fn closed_form_orientation_counts_match_enumeration() {
        use EdgeState::*;
        let g = arcs(5, &[(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (4, 3), (2, 4)]);
        let all = [Forward, Reverse, Unoriented];
        for i in 0..81 {
            let s = [all[i % 3], all[i / 3 % 3], all[i / 9 % 3], all[i / 27]];
            assert_eq!(four_cycle_hom(&g, s).unwrap(), brute_c4(&g, s), "{s:?}");
        }
    }

    #[test]
    fn both_type_iii_forms_agree() {
        let g = arcs(
            6,
            &[
                (0, 1),
                (1, 2),
                (2, 0),
                (3, 0),
                (3, 1),
                (4, 3),
                (2, 4),
                (5, 1),
                (4, 5),
            ],
        );
        let s = pair_sums(&g).unwrap();
        assert_eq!(s.hom_iii_same_side(), s.hom_iii_mixed());
    }

    #[test]
    fn sign_census_examples() {
        let c4 = arcs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let s = sign_census(&c4).unwrap();
        assert_eq!((s.c_total, s.c_plus, s.c_minus), (32, 32, 0));
        let arc = arcs(2, &[(0, 1)]);
        let s = sign_census(&arc).unwrap();
        assert_eq!((s.c_total, s.c_plus, s.c_minus), (2, 2, 0));
        let s = sign_census(&PartiallyOrientedGraph::empty(3)).unwrap();
        assert_eq!(s, SignCensus::default());
    }

    #[test]
    fn sign_census_matches_four_index_enumeration() {
        let g = arcs(5, &[(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (4, 3), (2, 4)]);
        let m = |x: usize, y: usize| -> i64 {
            if g.has_arc(x, y) {
                1
            } else if g.has_arc(y, x) {
                -1
            } else {
                0
            }
        };
        let (mut plus, mut minus) = (0, 0);
        for x in 0..5 {
            for xp in 0..5 {
                for y in 0..5 {
                    for yp in 0..5 {
                        match m(x, y) * m(x, yp) * m(xp, y) * m(xp, yp) {
                            1 => plus += 1,
                            -1 => minus += 1,
                            _ => {}
                        }
                    }
                }
            }
        }
        let s = sign_census(&g).unwrap();
        assert_eq!((s.c_plus, s.c_minus), (plus, minus));
        let c = four_cycle_census(&g).unwrap();
        assert_eq!(s.c_total, c.hom_c4);
        assert_eq!(s.c_minus, c.hom_ii);
    }

    #[test]
    fn four_cycle_detection() {
        let h = arcs(4, &[(0, 2), (2, 1), (3, 1), (3, 0)]);
        let (states, order) = as_four_cycle(&h).unwrap();
        assert_eq!(order, [0, 2, 1, 3]);
        use EdgeState::*;
        assert_eq!(states, [Forward, Forward, Reverse, Forward]);
        let path = arcs(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(as_four_cycle(&path).is_none());
        let two_edges = arcs(4, &[(0, 1), (2, 3)]);
        assert!(as_four_cycle(&two_edges).is_none());
    }

    #[test]
    fn requires_orientation() {
        let g = PartiallyOrientedGraph::from_unoriented(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            four_cycle_census(&g),
            Err(Error::NotFullyOriented { .. })
        ));
        assert!(matches!(
            sign_census(&g),
            Err(Error::NotFullyOriented { .. })
        ));
    }
}
