//! Brute-force oracles shared by the integration tests. None of them go
//! through the closed forms, joint degrees, Gray codes or eigen-solvers they
//! are compared against.

#![allow(dead_code)]

use qro::generators::gnp_oriented;
use qro::graph::{edge_counts_between, VertexSubsetPair};
use qro::rng::SplitMix64;
use qro::{PartiallyOrientedGraph, Rational};

/// `M[x][y]`: 1 for an arc `x -> y`, -1 for `y -> x`, else 0.
pub fn m(g: &PartiallyOrientedGraph, x: usize, y: usize) -> i64 {
    if g.has_arc(x, y) {
        1
    } else if g.has_arc(y, x) {
        -1
    } else {
        0
    }
}

/// Census tuple `(I, II, III, IV, C4)` by walking every closed 4-tuple.
///
/// A tuple `x0 x1 x2 x3` whose consecutive pairs are all arcs is the image
/// of exactly one labelled orientation of the four-cycle; its type follows
/// from how often the arc direction flips going around the cycle.
pub fn brute_census(g: &PartiallyOrientedGraph) -> [i64; 5] {
    let n = g.n();
    let mut out = [0i64; 5];
    for x0 in 0..n {
        for x1 in 0..n {
            for x2 in 0..n {
                for x3 in 0..n {
                    let xs = [x0, x1, x2, x3];
                    let dirs: Vec<i64> = (0..4).map(|i| m(g, xs[i], xs[(i + 1) % 4])).collect();
                    if dirs.contains(&0) {
                        continue;
                    }
                    out[4] += 1;
                    let flips = (0..4).filter(|&i| dirs[i] != dirs[(i + 1) % 4]).count();
                    let forward = dirs.iter().filter(|&&d| d == 1).count();
                    let t = match (flips, forward) {
                        (0, _) => 0,
                        (4, _) => 3,
                        (2, 2) => 2,
                        (2, _) => 1,
                        _ => unreachable!("flip count around a cycle is even"),
                    };
                    out[t] += 1;
                }
            }
        }
    }
    out
}

/// `Σ M_xy M_xy' M_x'y M_x'y'` over all ordered quadruples.
pub fn brute_quadruple_sum(g: &PartiallyOrientedGraph) -> i64 {
    let n = g.n();
    let mut s = 0;
    for x in 0..n {
        for xp in 0..n {
            let mut inner = 0;
            for y in 0..n {
                inner += m(g, x, y) * m(g, xp, y);
            }
            s += inner * inner;
        }
    }
    s
}

/// `trace(M^k)` by repeated dense multiplication.
pub fn brute_trace_power(g: &PartiallyOrientedGraph, k: u32) -> i64 {
    let n = g.n();
    let base: Vec<Vec<i64>> = (0..n)
        .map(|x| (0..n).map(|y| m(g, x, y)).collect())
        .collect();
    let mut p = base.clone();
    for _ in 1..k {
        p = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| (0..n).map(|z| p[x][z] * base[z][y]).sum())
                    .collect()
            })
            .collect();
    }
    (0..n).map(|x| p[x][x]).sum()
}

fn all_pairs(n: usize) -> impl Iterator<Item = VertexSubsetPair> {
    (0u64..1 << n)
        .flat_map(move |a| (0u64..1 << n).map(move |b| VertexSubsetPair::from_bits(n, a, b)))
}

/// Maximum of `e(A,B) - e(B,A)` over all `4^n` pairs.
pub fn brute_discrepancy(g: &PartiallyOrientedGraph) -> i64 {
    all_pairs(g.n())
        .map(|p| {
            let c = edge_counts_between(g, &p);
            c.forward as i64 - c.backward as i64
        })
        .max()
        .unwrap_or(0)
}

/// Largest `e(A,B)` over pairs with `e(B,A) <= nu e(A,B)`.
pub fn brute_bias(g: &PartiallyOrientedGraph, nu: &Rational) -> i64 {
    all_pairs(g.n())
        .filter_map(|p| {
            let c = edge_counts_between(g, &p);
            let (f, r) = (Rational::integer(c.forward), Rational::integer(c.backward));
            (r <= nu * &f).then_some(c.forward as i64)
        })
        .max()
        .unwrap_or(0)
}

/// Random oriented graph with `n` drawn from `lo..=hi` and a density drawn
/// from a small ladder, reproducible from `(stream, i)`.
pub fn random_oriented(stream: u64, i: u64, lo: usize, hi: usize) -> PartiallyOrientedGraph {
    let mut rng = SplitMix64::derive(stream, i);
    let n = lo + rng.below((hi - lo + 1) as u64) as usize;
    let p = [
        Rational::new(1, 4),
        Rational::new(1, 2),
        Rational::new(3, 4),
        Rational::one(),
    ][rng.below(4) as usize]
        .clone();
    gnp_oriented(n, &p, rng.next_u64()).expect("valid density")
}
