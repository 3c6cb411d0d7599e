//! Directed discrepancy `max_{A,B} e⃗(A,B) - e⃗(B,A)` and the biased-pair
//! parameter `bias_ν`.
//!
//! For a fixed `B`, write `f_B(x) = e⃗({x},B) - e⃗(B,{x})`. The discrepancy of
//! `(A, B)` is `Σ_{x∈A} f_B(x)`, so the best `A` for that `B` is the set of
//! vertices with `f_B(x) > 0`. The exact search therefore only enumerates `B`,
//! in Gray-code order so each step toggles one vertex and updates `f_B` along
//! that vertex's arcs.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Link, PartiallyOrientedGraph, VertexSubsetPair};
use crate::rational::{decimal, Rational};
use crate::rng::SplitMix64;

/// Default largest `n` for the exact discrepancy search.
pub const EXACT_DISCREPANCY_CAP: usize = 24;
/// Default largest `n` for the exact bias enumeration.
pub const EXACT_BIAS_CAP: usize = 14;
/// Hard limit for both exact searches (subset masks are 64-bit words).
const MASK_BITS: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscrepancyResult {
    #[serde(with = "decimal")]
    pub value: i64,
    pub witness: VertexSubsetPair,
    pub exact: bool,
    /// `value / n²`.
    pub gamma: Rational,
}

fn normalized(value: i64, n: usize) -> Rational {
    if n == 0 {
        Rational::zero()
    } else {
        Rational::new(value, (n as i64) * (n as i64))
    }
}

/// `cols[y]` lists `(x, M_xy)` over the arcs at `y`.
fn signed_columns(g: &PartiallyOrientedGraph) -> Vec<Vec<(usize, i64)>> {
    (0..g.n())
        .map(|y| {
            g.neighbors(y)
                .iter()
                .filter_map(|&(x, l)| match l {
                    // Arc y -> x means M_xy = -1.
                    Link::Out => Some((x, -1)),
                    Link::In => Some((x, 1)),
                    Link::Plain => None,
                })
                .collect()
        })
        .collect()
}

/// `f_B(x)` for every `x`.
fn gains(cols: &[Vec<(usize, i64)>], b: &[bool]) -> Vec<i64> {
    let mut f = vec![0i64; cols.len()];
    for (y, col) in cols.iter().enumerate() {
        if b[y] {
            for &(x, m) in col {
                f[x] += m;
            }
        }
    }
    f
}

fn positive_set(f: &[i64]) -> Vec<bool> {
    f.iter().map(|&v| v > 0).collect()
}

fn check_exact_size(what: &'static str, n: usize, cap: usize) -> Result<()> {
    let limit = cap.min(MASK_BITS);
    if n > limit {
        Err(Error::TooLargeForExact { what, n, limit })
    } else {
        Ok(())
    }
}

/// Exact maximum discrepancy with the default size cap.
pub fn max_discrepancy_exact(g: &PartiallyOrientedGraph) -> Result<DiscrepancyResult> {
    max_discrepancy_exact_capped(g, EXACT_DISCREPANCY_CAP)
}

/// Exact maximum discrepancy for `n ≤ cap`.
///
/// The `B` space is split on its high bits across workers. Among maximizers
/// the witness with the numerically smallest `B` mask (bit `i` = vertex `i`)
/// is returned, and `A` keeps only vertices with strictly positive gain.
pub fn max_discrepancy_exact_capped(
    g: &PartiallyOrientedGraph,
    cap: usize,
) -> Result<DiscrepancyResult> {
    let n = g.n();
    check_exact_size("exact discrepancy", n, cap)?;
    let cols = signed_columns(g);
    let high = n.saturating_sub(10).min(8);
    let low = n - high;
    let (value, b_mask) = (0u64..1 << high)
        .into_par_iter()
        .map(|chunk| {
            let base = chunk << low;
            let b: Vec<bool> = (0..n).map(|i| base >> i & 1 == 1).collect();
            let mut f = gains(&cols, &b);
            let mut pos: i64 = f.iter().map(|&v| v.max(0)).sum();
            let mut mask = base;
            let mut best = (pos, mask);
            for step in 1u64..1 << low {
                let y = step.trailing_zeros() as usize;
                mask ^= 1 << y;
                let dir = if mask >> y & 1 == 1 { 1 } else { -1 };
                for &(x, m) in &cols[y] {
                    let old = f[x];
                    let new = old + dir * m;
                    pos += new.max(0) - old.max(0);
                    f[x] = new;
                }
                if pos > best.0 || (pos == best.0 && mask < best.1) {
                    best = (pos, mask);
                }
            }
            best
        })
        .reduce(
            || (i64::MIN, u64::MAX),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    let b: Vec<bool> = (0..n).map(|i| b_mask >> i & 1 == 1).collect();
    let a = positive_set(&gains(&cols, &b));
    let value = value.max(0);
    Ok(DiscrepancyResult {
        value,
        witness: VertexSubsetPair::from_masks(a, b)?,
        exact: true,
        gamma: normalized(value, n),
    })
}

/// Alternating maximization from random starting sets: best `A` for the
/// current `B`, then best `B` for that `A`, until the value stops improving.
/// Restart `i` draws from `SplitMix64::derive(seed, i)`, so results depend
/// only on `(graph, restarts, seed)`. Ties keep the earliest restart.
pub fn max_discrepancy_heuristic(
    g: &PartiallyOrientedGraph,
    restarts: usize,
    seed: u64,
) -> DiscrepancyResult {
    let n = g.n();
    let cols = signed_columns(g);
    let rows: Vec<Vec<(usize, i64)>> = (0..n)
        .map(|x| cols[x].iter().map(|&(y, m)| (y, -m)).collect())
        .collect();
    let best = (0..restarts.max(1) as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = SplitMix64::derive(seed, r);
            let mut b: Vec<bool> = (0..n).map(|_| rng.next_bit()).collect();
            let mut best = (0i64, vec![false; n], vec![false; n]);
            for _ in 0..1000 {
                let a = positive_set(&gains(&cols, &b));
                // Gain of y as a member of B given A: Σ_{x∈A} M_xy, which is
                // the f-function of the transposed arcs.
                let h = gains(&rows, &a);
                let value: i64 = h.iter().map(|&v| v.max(0)).sum();
                b = positive_set(&h);
                if value > best.0 {
                    best = (value, a, b.clone());
                } else {
                    break;
                }
            }
            (r, best)
        })
        .reduce_with(|x, y| {
            if y.1 .0 > x.1 .0 || (y.1 .0 == x.1 .0 && y.0 < x.0) {
                y
            } else {
                x
            }
        });
    let (value, a, b) = best.map(|(_, v)| v).unwrap_or((0, vec![], vec![]));
    let witness = if a.len() == n {
        VertexSubsetPair::from_masks(a, b).expect("equal lengths")
    } else {
        VertexSubsetPair::empty(n)
    };
    DiscrepancyResult {
        value,
        witness,
        exact: false,
        gamma: normalized(value, n),
    }
}

/// Constraint level of a biased pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BiasLevel {
    /// `e⃗(B,A) ≤ ν e⃗(A,B)` with rational `ν`.
    Nu(Rational),
    /// `e⃗(B,A) ≤ (1 - √s) e⃗(A,B)` for rational `s ∈ [0, 1]`, decided exactly
    /// as `e⃗(B,A) ≤ e⃗(A,B)` and `s·e⃗(A,B)² ≤ (e⃗(A,B) - e⃗(B,A))²`.
    OneMinusSqrt(Rational),
}

impl BiasLevel {
    pub fn nu(v: Rational) -> Result<Self> {
        if v.is_negative() || v >= Rational::one() {
            return Err(Error::InvalidArgument(format!(
                "nu must lie in [0, 1), got {v}"
            )));
        }
        Ok(BiasLevel::Nu(v))
    }

    pub fn one_minus_sqrt(s: Rational) -> Result<Self> {
        if s.is_negative() || s > Rational::one() {
            return Err(Error::InvalidArgument(format!(
                "square of epsilon must lie in [0, 1], got {s}"
            )));
        }
        Ok(BiasLevel::OneMinusSqrt(s))
    }

    /// Whether a pair with `forward = e⃗(A,B)` and `backward = e⃗(B,A)` is biased.
    pub fn admits(&self, forward: u64, backward: u64) -> bool {
        let (f, r) = (BigInt::from(forward), BigInt::from(backward));
        match self {
            BiasLevel::Nu(nu) => r * nu.denom() <= f * nu.numer(),
            BiasLevel::OneMinusSqrt(s) => {
                if r > f {
                    return false;
                }
                let gap = &f - &r;
                s.numer() * &f * &f <= s.denom() * &gap * &gap
            }
        }
    }

    /// `ν` as a float, for the greedy ordering in the heuristic search.
    fn approx(&self) -> f64 {
        match self {
            BiasLevel::Nu(nu) => nu.to_f64(),
            BiasLevel::OneMinusSqrt(s) => 1.0 - s.to_f64().sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiasResult {
    pub level: BiasLevel,
    #[serde(with = "decimal")]
    pub value: i64,
    pub witness: VertexSubsetPair,
    #[serde(with = "decimal")]
    pub backward: i64,
    pub exact: bool,
}

/// One point of a bias profile: the fewest reverse arcs seen among pairs with
/// exactly `forward` forward arcs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfilePoint {
    pub forward: u64,
    pub backward: u64,
    pub witness: VertexSubsetPair,
}

/// For each achievable `e⃗(A,B)`, the smallest `e⃗(B,A)` over pairs attaining
/// it. Every bias level (and the bias-based parameter) is a query on this.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiasProfile {
    pub n: usize,
    pub exact: bool,
    pub points: Vec<ProfilePoint>,
}

/// Exhaustive profile over all `4ⁿ` pairs with the default cap.
pub fn bias_profile_exact(g: &PartiallyOrientedGraph) -> Result<BiasProfile> {
    bias_profile_exact_capped(g, EXACT_BIAS_CAP)
}

pub fn bias_profile_exact_capped(g: &PartiallyOrientedGraph, cap: usize) -> Result<BiasProfile> {
    let n = g.n();
    check_exact_size("exact bias", n, cap)?;
    let max_f = g.oriented_edge_count();
    // Per forward count: (backward, b_mask, a_mask), lexicographically minimal.
    type Slots = Vec<(u64, u64, u64)>;
    let none = (u64::MAX, u64::MAX, u64::MAX);
    let out_arcs: Vec<Vec<usize>> = (0..n)
        .map(|x| g.signed_neighbors(x, crate::graph::Sign::Plus).collect())
        .collect();
    let merge = |mut a: Slots, b: Slots| {
        for (s, t) in a.iter_mut().zip(b) {
            if t < *s {
                *s = t;
            }
        }
        a
    };
    let slots = (0u64..1 << n)
        .into_par_iter()
        .fold(
            || vec![none; max_f + 1],
            |mut slots, b_mask| {
                let in_b = |y: usize| b_mask >> y & 1 == 1;
                let mut fwd = vec![0u64; n];
                let mut bwd = vec![0u64; n];
                for x in 0..n {
                    for &y in &out_arcs[x] {
                        if in_b(y) {
                            fwd[x] += 1;
                        }
                        if in_b(x) {
                            bwd[y] += 1;
                        }
                    }
                }
                let (mut f, mut r, mut a_mask) = (0u64, 0u64, 0u64);
                let record = |f: u64, r: u64, a: u64, slots: &mut Slots| {
                    let cand = (r, b_mask, a);
                    let s = &mut slots[f as usize];
                    if cand < *s {
                        *s = cand;
                    }
                };
                record(0, 0, 0, &mut slots);
                for step in 1u64..1 << n {
                    let x = step.trailing_zeros() as usize;
                    a_mask ^= 1 << x;
                    if a_mask >> x & 1 == 1 {
                        f += fwd[x];
                        r += bwd[x];
                    } else {
                        f -= fwd[x];
                        r -= bwd[x];
                    }
                    record(f, r, a_mask, &mut slots);
                }
                slots
            },
        )
        .reduce(|| vec![none; max_f + 1], merge);
    let points = slots
        .into_iter()
        .enumerate()
        .filter(|(_, s)| s.0 != u64::MAX)
        .map(|(f, (r, b, a))| ProfilePoint {
            forward: f as u64,
            backward: r,
            witness: VertexSubsetPair::from_bits(n, a, b),
        })
        .collect();
    Ok(BiasProfile {
        n,
        exact: true,
        points,
    })
}

impl BiasProfile {
    /// Profile built from arbitrary observed pairs (keeps the fewest reverse
    /// arcs per forward count). Not exact.
    pub fn from_observations(
        g: &PartiallyOrientedGraph,
        pairs: impl IntoIterator<Item = VertexSubsetPair>,
    ) -> Self {
        let mut best: std::collections::BTreeMap<u64, (u64, VertexSubsetPair)> = Default::default();
        best.insert(0, (0, VertexSubsetPair::empty(g.n())));
        for p in pairs {
            let c = crate::graph::edge_counts_between(g, &p);
            let slot = best.entry(c.forward).or_insert((u64::MAX, p.clone()));
            if c.backward < slot.0 {
                *slot = (c.backward, p);
            }
        }
        BiasProfile {
            n: g.n(),
            exact: false,
            points: best
                .into_iter()
                .map(|(forward, (backward, witness))| ProfilePoint {
                    forward,
                    backward,
                    witness,
                })
                .collect(),
        }
    }

    /// `bias` at the given level: the largest forward count among biased points.
    pub fn bias(&self, level: &BiasLevel) -> BiasResult {
        let p = self
            .points
            .iter()
            .filter(|p| level.admits(p.forward, p.backward))
            .max_by_key(|p| p.forward)
            .cloned()
            .unwrap_or(ProfilePoint {
                forward: 0,
                backward: 0,
                witness: VertexSubsetPair::empty(self.n),
            });
        BiasResult {
            level: level.clone(),
            value: p.forward as i64,
            witness: p.witness,
            backward: p.backward as i64,
            exact: self.exact,
        }
    }

    /// Smallest `ε` (as an infimum) with `bias_{1-ε}(D) ≤ ε n²`.
    ///
    /// A point `(F, R)` with `F > 0` is `(1-ε)`-biased iff
    /// `ε ≤ ρ = (F - R) / F`, so `bias_{1-ε}` is a step function of `ε` that
    /// only changes at the distinct positive `ρ` values. On each step the
    /// condition is `ε ≥ bias / n²`, giving one candidate per step.
    pub fn epsilon(&self) -> Rational {
        let n2 = (self.n * self.n) as i64;
        let mut levels: Vec<(Rational, u64)> = self
            .points
            .iter()
            .filter(|p| p.forward > 0 && p.backward < p.forward)
            .map(|p| {
                (
                    Rational::new(p.forward as i64 - p.backward as i64, p.forward as i64),
                    p.forward,
                )
            })
            .collect();
        if levels.is_empty() || n2 == 0 {
            return Rational::zero();
        }
        levels.sort_by(|a, b| b.0.cmp(&a.0));
        // Distinct ρ levels, each with the best forward count reachable at or above it.
        let mut steps: Vec<(Rational, u64)> = Vec::new();
        let mut running = 0;
        for (rho, f) in levels {
            running = running.max(f);
            match steps.last_mut() {
                Some(last) if last.0 == rho => last.1 = running,
                _ => steps.push((rho, running)),
            }
        }
        let mut best = Rational::one();
        if steps[0].0 < Rational::one() {
            best = steps[0].0.clone();
        }
        for (j, (rho, g_val)) in steps.iter().enumerate() {
            let need = Rational::new(*g_val as i64, n2);
            if &need <= rho {
                let floor = steps
                    .get(j + 1)
                    .map(|s| s.0.clone())
                    .unwrap_or_else(Rational::zero);
                let cand = if need > floor { need } else { floor };
                if cand < best {
                    best = cand;
                }
            }
        }
        best
    }
}

/// Exact `bias_ν` with the default cap.
pub fn bias_exact(g: &PartiallyOrientedGraph, level: &BiasLevel) -> Result<BiasResult> {
    Ok(bias_profile_exact(g)?.bias(level))
}

/// Best `A` for fixed per-vertex forward/backward contributions under a bias
/// level: every vertex that helps is taken, then vertices by forward gain per
/// unit of slack while the level still admits the total.
fn constrained_pick(fwd: &[u64], bwd: &[u64], level: &BiasLevel) -> Vec<bool> {
    let nu = level.approx();
    let n = fwd.len();
    let mut pick = vec![false; n];
    let (mut f, mut r) = (0u64, 0u64);
    let mut costly: Vec<(f64, usize)> = Vec::new();
    for x in 0..n {
        if fwd[x] == 0 {
            continue;
        }
        let w = bwd[x] as f64 - nu * fwd[x] as f64;
        if w <= 0.0 && level.admits(f + fwd[x], r + bwd[x]) {
            pick[x] = true;
            f += fwd[x];
            r += bwd[x];
        } else {
            costly.push((fwd[x] as f64 / w.max(1e-12), x));
        }
    }
    costly.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    for (_, x) in costly {
        if level.admits(f + fwd[x], r + bwd[x]) {
            pick[x] = true;
            f += fwd[x];
            r += bwd[x];
        }
    }
    pick
}

fn side_counts(
    g: &PartiallyOrientedGraph,
    fixed: &[bool],
    fixed_is_b: bool,
) -> (Vec<u64>, Vec<u64>) {
    // For each free vertex x: arcs between x and the fixed set, split by
    // direction relative to the (A, B) roles.
    let n = g.n();
    let mut fwd = vec![0u64; n];
    let mut bwd = vec![0u64; n];
    for (t, h) in g.arcs() {
        if fixed_is_b {
            // x ∈ A: forward arcs x -> B, backward arcs B -> x.
            if fixed[h] {
                fwd[t] += 1;
            }
            if fixed[t] {
                bwd[h] += 1;
            }
        } else {
            // y ∈ B: forward arcs A -> y, backward arcs y -> A.
            if fixed[t] {
                fwd[h] += 1;
            }
            if fixed[h] {
                bwd[t] += 1;
            }
        }
    }
    (fwd, bwd)
}

/// Constrained alternating search; returns a valid biased witness whose
/// forward count is a lower bound on `bias`.
pub fn bias_heuristic(
    g: &PartiallyOrientedGraph,
    level: &BiasLevel,
    restarts: usize,
    seed: u64,
) -> BiasResult {
    let n = g.n();
    let runs: Vec<(u64, u64, VertexSubsetPair)> = (0..restarts.max(1) as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = SplitMix64::derive(seed, r);
            let mut b: Vec<bool> = (0..n).map(|_| rng.next_bit()).collect();
            let mut best = (0u64, 0u64, VertexSubsetPair::empty(n));
            for _ in 0..200 {
                let (fa, ba) = side_counts(g, &b, true);
                let a = constrained_pick(&fa, &ba, level);
                let (fb, bb) = side_counts(g, &a, false);
                b = constrained_pick(&fb, &bb, level);
                let pair = VertexSubsetPair::from_masks(a, b.clone()).expect("equal lengths");
                let c = crate::graph::edge_counts_between(g, &pair);
                if !level.admits(c.forward, c.backward) || c.forward <= best.0 {
                    break;
                }
                best = (c.forward, c.backward, pair);
            }
            best
        })
        .collect();
    let mut best = (0u64, 0u64, VertexSubsetPair::empty(n));
    for run in runs {
        if run.0 > best.0 {
            best = run;
        }
    }
    BiasResult {
        level: level.clone(),
        value: best.0 as i64,
        witness: best.2,
        backward: best.1 as i64,
        exact: false,
    }
}

/// Heuristic profile: witnesses of constrained searches over a ladder of
/// levels `ν = 1 - 2^-j` (and `ν = 0`), plus the discrepancy witness.
pub fn bias_profile_heuristic(
    g: &PartiallyOrientedGraph,
    restarts: usize,
    seed: u64,
) -> BiasProfile {
    let mut pairs = Vec::new();
    let mut levels = vec![BiasLevel::Nu(Rational::zero())];
    for j in 1..=12 {
        levels.push(BiasLevel::Nu(Rational::one() - Rational::new(1, 1i64 << j)));
    }
    for (i, level) in levels.iter().enumerate() {
        let r = bias_heuristic(g, level, restarts, seed.wrapping_add(i as u64));
        pairs.push(r.witness);
    }
    pairs.push(max_discrepancy_heuristic(g, restarts, seed).witness);
    BiasProfile::from_observations(g, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::edge_counts_between;

    fn arcs(n: usize, a: &[(usize, usize)]) -> PartiallyOrientedGraph {
        PartiallyOrientedGraph::from_arcs(n, a).unwrap()
    }

    fn c4() -> PartiallyOrientedGraph {
        arcs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])
    }

    fn tt3() -> PartiallyOrientedGraph {
        arcs(3, &[(0, 1), (0, 2), (1, 2)])
    }

    /// Every pair `(A, B)` by brute force.
    fn brute_max(g: &PartiallyOrientedGraph) -> i64 {
        let n = g.n();
        let mut best = 0i64;
        for a in 0u64..1 << n {
            for b in 0u64..1 << n {
                let c = edge_counts_between(g, &VertexSubsetPair::from_bits(n, a, b));
                best = best.max(c.forward as i64 - c.backward as i64);
            }
        }
        best
    }

    fn brute_bias(g: &PartiallyOrientedGraph, level: &BiasLevel) -> u64 {
        let n = g.n();
        let mut best = 0;
        for a in 0u64..1 << n {
            for b in 0u64..1 << n {
                let c = edge_counts_between(g, &VertexSubsetPair::from_bits(n, a, b));
                if level.admits(c.forward, c.backward) {
                    best = best.max(c.forward);
                }
            }
        }
        best
    }

    #[test]
    fn named_discrepancies() {
        let r = max_discrepancy_exact(&tt3()).unwrap();
        assert_eq!(r.value, 3);
        assert!(r.witness.a()[0] && r.witness.b()[2]);
        let c = edge_counts_between(&tt3(), &r.witness);
        assert_eq!(c.forward as i64 - c.backward as i64, 3);
        assert_eq!(r.gamma, Rational::new(1, 3));

        let r = max_discrepancy_exact(&c4()).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(r.gamma, Rational::new(1, 8));

        let r = max_discrepancy_exact(&PartiallyOrientedGraph::empty(5)).unwrap();
        assert_eq!(r.value, 0);
        assert!(r.witness.a_indices().is_empty());
    }

    #[test]
    fn exact_matches_brute_force() {
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
        assert_eq!(max_discrepancy_exact(&g).unwrap().value, brute_max(&g));
        assert_eq!(
            max_discrepancy_exact(&g.reversed()).unwrap().value,
            brute_max(&g)
        );
    }

    #[test]
    fn exact_cap() {
        let g = PartiallyOrientedGraph::empty(25);
        assert!(matches!(
            max_discrepancy_exact(&g),
            Err(Error::TooLargeForExact {
                n: 25,
                limit: 24,
                ..
            })
        ));
        assert!(max_discrepancy_exact_capped(&g, 25).is_ok());
    }

    #[test]
    fn heuristic_named() {
        for seed in 0..5 {
            assert_eq!(max_discrepancy_heuristic(&tt3(), 1, seed).value, 3);
        }
        assert_eq!(max_discrepancy_heuristic(&c4(), 8, 1).value, 2);
        let r = max_discrepancy_heuristic(&c4().reversed(), 8, 1);
        assert_eq!(r.value, 2);
        let c = edge_counts_between(&c4().reversed(), &r.witness);
        assert_eq!(c.forward as i64 - c.backward as i64, r.value);
        assert_eq!(
            max_discrepancy_heuristic(&PartiallyOrientedGraph::empty(3), 4, 0).value,
            0
        );
    }

    #[test]
    fn heuristic_is_deterministic() {
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
        assert_eq!(
            max_discrepancy_heuristic(&g, 16, 99),
            max_discrepancy_heuristic(&g, 16, 99)
        );
    }

    #[test]
    fn named_bias() {
        for nu in ["0", "1/2", "9/10"] {
            let level = BiasLevel::nu(nu.parse().unwrap()).unwrap();
            let r = bias_exact(&tt3(), &level).unwrap();
            assert_eq!(r.value, 3, "nu = {nu}");
            assert_eq!(r.backward, 0);
        }
        let zero = BiasLevel::nu(Rational::zero()).unwrap();
        assert_eq!(bias_exact(&c4(), &zero).unwrap().value, 2);
        assert_eq!(
            bias_exact(&PartiallyOrientedGraph::empty(4), &zero)
                .unwrap()
                .value,
            0
        );
        assert!(BiasLevel::nu(Rational::one()).is_err());
    }

    #[test]
    fn bias_profile_matches_brute_force() {
        let g = arcs(5, &[(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (4, 3), (2, 4)]);
        let profile = bias_profile_exact(&g).unwrap();
        for level in [
            BiasLevel::Nu(Rational::zero()),
            BiasLevel::Nu(Rational::new(1, 3)),
            BiasLevel::Nu(Rational::new(4, 5)),
            BiasLevel::OneMinusSqrt(Rational::new(1, 4)),
            BiasLevel::OneMinusSqrt(Rational::new(2, 9)),
        ] {
            let r = profile.bias(&level);
            assert_eq!(r.value as u64, brute_bias(&g, &level), "{level:?}");
            let c = edge_counts_between(&g, &r.witness);
            assert_eq!((c.forward as i64, c.backward as i64), (r.value, r.backward));
            assert!(level.admits(c.forward, c.backward));
        }
    }

    #[test]
    fn sqrt_level_is_exact() {
        // ε = 1/2: (F, R) = (4, 2) sits exactly on the boundary R = (1 - ε)F.
        let level = BiasLevel::OneMinusSqrt(Rational::new(1, 4));
        assert!(level.admits(4, 2));
        assert!(!level.admits(4, 3));
        assert!(level.admits(0, 0));
        assert!(!level.admits(0, 1));
    }

    #[test]
    fn epsilon_is_the_infimum() {
        for g in [
            tt3(),
            c4(),
            arcs(5, &[(0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (4, 3), (2, 4)]),
        ] {
            let profile = bias_profile_exact(&g).unwrap();
            let eps = profile.epsilon();
            let n2 = Rational::integer((g.n() * g.n()) as i64);
            // Just above the infimum the condition holds...
            let above = &eps + &Rational::new(1, 1_000_000);
            let value = profile.bias(&BiasLevel::OneMinusSqrt(above.pow(2))).value;
            assert!(Rational::integer(value) <= &above * &n2, "{eps}");
            // ...and just below it fails.
            if eps > Rational::new(1, 1_000_000) {
                let below = &eps - &Rational::new(1, 1_000_000);
                let value = profile.bias(&BiasLevel::OneMinusSqrt(below.pow(2))).value;
                assert!(Rational::integer(value) > &below * &n2, "{eps}");
            }
        }
        let empty = bias_profile_exact(&PartiallyOrientedGraph::empty(3)).unwrap();
        assert_eq!(empty.epsilon(), Rational::zero());
    }

    #[test]
    fn heuristic_bias_is_valid_lower_bound() {
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
        let profile = bias_profile_exact(&g).unwrap();
        for nu in [Rational::zero(), Rational::new(1, 2), Rational::new(7, 8)] {
            let level = BiasLevel::nu(nu).unwrap();
            let h = bias_heuristic(&g, &level, 8, 3);
            let c = edge_counts_between(&g, &h.witness);
            assert!(level.admits(c.forward, c.backward));
            assert_eq!(c.forward as i64, h.value);
            assert!(h.value <= profile.bias(&level).value);
        }
        let hp = bias_profile_heuristic(&g, 8, 3);
        assert!(hp.epsilon() <= profile.epsilon());
    }
}
