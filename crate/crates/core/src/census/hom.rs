//! Backtracking homomorphism counter for small partially oriented patterns.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{Link, PartiallyOrientedGraph};
use crate::rational::Rational;

use super::{as_four_cycle, four_cycle_hom};

/// Largest pattern the backtracking counter accepts.
pub const HOM_MAX_PATTERN: usize = 5;

/// Default bound on the estimated number of search states.
pub const HOM_STATE_LIMIT: u128 = 100_000_000;

/// A requirement that the candidate image relate to an earlier image.
#[derive(Debug, Clone, Copy)]
struct Constraint {
    earlier: usize,
    /// `None` accepts any edge of the underlying graph.
    link: Option<Link>,
}

struct Plan {
    order: Vec<usize>,
    constraints: Vec<Vec<Constraint>>,
}

fn plan(h: &PartiallyOrientedGraph) -> Plan {
    let k = h.n();
    let mut placed = vec![false; k];
    let mut order = Vec::with_capacity(k);
    let mut position = vec![usize::MAX; k];
    for _ in 0..k {
        // Most edges back into the placed set, then highest degree, then lowest index.
        let next = (0..k)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = h.neighbors(v).iter().filter(|&&(y, _)| placed[y]).count();
                (back, h.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[next] = true;
        position[next] = order.len();
        order.push(next);
    }
    let constraints = order
        .iter()
        .map(|&v| {
            let mut cs: Vec<Constraint> = h
                .neighbors(v)
                .iter()
                .filter(|&&(y, _)| position[y] < position[v])
                .map(|&(y, l)| Constraint {
                    earlier: position[y],
                    // `l` says how y relates to v; the image of v must relate
                    // to the image of y as `l` reversed.
                    link: match l {
                        Link::Plain => None,
                        other => Some(other.reversed()),
                    },
                })
                .collect();
            // Oriented constraints first: their candidate lists are shorter.
            cs.sort_by_key(|c| c.link.is_none());
            cs
        })
        .collect();
    Plan { order, constraints }
}

fn estimate(plan: &Plan, d: &PartiallyOrientedGraph) -> u128 {
    let n = d.n() as u128;
    let deg = d.max_degree() as u128;
    plan.constraints
        .iter()
        .map(|cs| if cs.is_empty() { n } else { deg })
        .fold(1u128, |acc, f| acc.saturating_mul(f.max(1)))
}

/// Exact number of homomorphisms `h -> d` (non-injective maps allowed) using
/// the default search-space limit.
///
/// Arcs of `h` must land on arcs of `d` with the same direction; unoriented
/// edges of `h` may land on any edge of `d`, oriented or not.
pub fn hom_count(h: &PartiallyOrientedGraph, d: &PartiallyOrientedGraph) -> Result<u64> {
    hom_count_limited(h, d, Some(HOM_STATE_LIMIT))
}

/// As [`hom_count`] with an explicit state limit (`None` disables it; the
/// pattern-size cap still applies).
pub fn hom_count_limited(
    h: &PartiallyOrientedGraph,
    d: &PartiallyOrientedGraph,
    limit: Option<u128>,
) -> Result<u64> {
    let k = h.n();
    let plan = plan(h);
    let states = estimate(&plan, d);
    if k > HOM_MAX_PATTERN {
        return Err(Error::PatternTooLarge {
            k,
            states,
            limit: limit.unwrap_or(u128::MAX),
        });
    }
    if let Some(limit) = limit {
        if states > limit {
            return Err(Error::PatternTooLarge { k, states, limit });
        }
    }
    if k == 0 {
        return Ok(1);
    }
    let mut image = vec![0usize; k];
    Ok(search(&plan, d, &mut image, 0))
}

fn admits(d: &PartiallyOrientedGraph, from: usize, to: usize, want: Option<Link>) -> bool {
    match (d.link(from, to), want) {
        (None, _) => false,
        (Some(_), None) => true,
        (Some(l), Some(w)) => l == w,
    }
}

fn search(plan: &Plan, d: &PartiallyOrientedGraph, image: &mut [usize], depth: usize) -> u64 {
    let last = depth + 1 == plan.order.len();
    let cs = &plan.constraints[depth];
    let mut count = 0u64;
    let mut visit = |c: usize, image: &mut [usize]| {
        if cs[1.min(cs.len())..]
            .iter()
            .all(|k| admits(d, image[k.earlier], c, k.link))
        {
            if last {
                count += 1;
            } else {
                image[depth] = c;
                count += search(plan, d, image, depth + 1);
            }
        }
    };
    match cs.first() {
        None => {
            for c in 0..d.n() {
                visit(c, image);
            }
        }
        Some(first) => {
            let anchor = image[first.earlier];
            for &(c, l) in d.neighbors(anchor) {
                if first.link.is_none_or(|w| w == l) {
                    visit(c, image);
                }
            }
        }
    }
    count
}

/// Homomorphism count using the four-cycle closed form when `h` is a
/// (partially oriented) four-cycle and `d` is fully oriented, and the
/// backtracking search otherwise.
pub fn pattern_hom_count(h: &PartiallyOrientedGraph, d: &PartiallyOrientedGraph) -> Result<u64> {
    if d.is_oriented() {
        if let Some((states, _)) = as_four_cycle(h) {
            let v = four_cycle_hom(d, states)?;
            return Ok(v as u64);
        }
    }
    hom_count(h, d)
}

/// `hom(h, d) - 2^{-ē(h)} hom(h̄, d)` as an exact rational.
pub fn hom_deviation(h: &PartiallyOrientedGraph, d: &PartiallyOrientedGraph) -> Result<Rational> {
    let direct = pattern_hom_count(h, d)?;
    if h.is_unoriented() {
        return Ok(Rational::zero());
    }
    let plain = pattern_hom_count(&h.underlying(), d)?;
    let scale = BigInt::from(1u8) << h.oriented_edge_count();
    Ok(Rational::integer(direct) - Rational::new(plain, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeState;

    fn arcs(n: usize, a: &[(usize, usize)]) -> PartiallyOrientedGraph {
        PartiallyOrientedGraph::from_arcs(n, a).unwrap()
    }

    /// Enumerate all `|V(d)|^k` maps.
    fn brute(h: &PartiallyOrientedGraph, d: &PartiallyOrientedGraph) -> u64 {
        let (k, n) = (h.n(), d.n());
        let mut count = 0;
        for code in 0..n.pow(k as u32) {
            let f: Vec<usize> = (0..k).map(|i| code / n.pow(i as u32) % n).collect();
            let ok = h.edges().iter().all(|e| match e.state {
                EdgeState::Forward => d.has_arc(f[e.u], f[e.v]),
                EdgeState::Reverse => d.has_arc(f[e.v], f[e.u]),
                EdgeState::Unoriented => d.has_edge(f[e.u], f[e.v]),
            });
            count += u64::from(ok);
        }
        count
    }

    #[test]
    fn named_counts() {
        let c4 = arcs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let tt3 = arcs(3, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(hom_count(&c4, &c4).unwrap(), 4);
        assert_eq!(hom_count(&arcs(2, &[(0, 1)]), &tt3).unwrap(), 3);
        let plain_c4 =
            PartiallyOrientedGraph::from_unoriented(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(hom_count(&plain_c4, &tt3).unwrap(), 18);
    }

    #[test]
    fn matches_enumeration_on_mixed_targets() {
        let d = PartiallyOrientedGraph::from_edges(
            5,
            [
                (0, 1, EdgeState::Forward),
                (1, 2, EdgeState::Unoriented),
                (2, 0, EdgeState::Forward),
                (3, 1, EdgeState::Forward),
                (3, 4, EdgeState::Unoriented),
                (4, 0, EdgeState::Forward),
                (2, 4, EdgeState::Forward),
            ],
        )
        .unwrap();
        let patterns = [
            arcs(3, &[(0, 1), (1, 2), (2, 0)]),
            arcs(3, &[(0, 1), (0, 2)]),
            PartiallyOrientedGraph::from_edges(
                4,
                [
                    (0, 1, EdgeState::Forward),
                    (1, 2, EdgeState::Unoriented),
                    (2, 3, EdgeState::Forward),
                ],
            )
            .unwrap(),
            arcs(4, &[(0, 1), (2, 3)]),
            PartiallyOrientedGraph::empty(2),
            arcs(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]),
        ];
        for h in &patterns {
            assert_eq!(hom_count(h, &d).unwrap(), brute(h, &d), "{h:?}");
        }
    }

    #[test]
    fn arcs_do_not_land_on_unoriented_edges() {
        let d = PartiallyOrientedGraph::from_unoriented(2, &[(0, 1)]).unwrap();
        assert_eq!(hom_count(&arcs(2, &[(0, 1)]), &d).unwrap(), 0);
        assert_eq!(hom_count(&d, &d).unwrap(), 2);
    }

    #[test]
    fn deviations() {
        let tt3 = arcs(3, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(
            hom_deviation(&arcs(2, &[(0, 1)]), &tt3).unwrap(),
            Rational::zero()
        );
        assert_eq!(
            hom_deviation(&arcs(3, &[(0, 1), (1, 2), (2, 0)]), &tt3).unwrap(),
            Rational::new(-3, 4)
        );
        let plain = PartiallyOrientedGraph::from_unoriented(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(hom_deviation(&plain, &tt3).unwrap(), Rational::zero());
    }

    #[test]
    fn size_limits() {
        let big = PartiallyOrientedGraph::empty(6);
        let d = PartiallyOrientedGraph::empty(3);
        assert!(matches!(
            hom_count(&big, &d),
            Err(Error::PatternTooLarge { k: 6, .. })
        ));
        let isolated = PartiallyOrientedGraph::empty(5);
        let wide = PartiallyOrientedGraph::empty(100);
        assert!(matches!(
            hom_count(&isolated, &wide),
            Err(Error::PatternTooLarge { k: 5, .. })
        ));
        assert_eq!(
            hom_count_limited(&PartiallyOrientedGraph::empty(2), &wide, None).unwrap(),
            10_000
        );
    }
}
