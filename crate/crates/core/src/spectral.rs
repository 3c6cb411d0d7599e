//! Skew adjacency matrix, exact fourth-moment sums and eigenvalue magnitudes.
//!
//! `M` is antisymmetric, so `-M² = MᵀM` is symmetric positive semidefinite and
//! its eigenvalues are the squared magnitudes `|λ_i|²` of the (purely
//! imaginary) eigenvalues of `M`. All exact quantities go through integer
//! entries of `M²`; floating point is used only to report magnitudes.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Link, PartiallyOrientedGraph};
use crate::rational::decimal;
use crate::rng::SplitMix64;
use crate::verdict::Verdict;

/// Relative tolerance of the dominant-eigenvalue iteration.
pub const POWER_TOLERANCE: f64 = 1e-9;
/// Iteration cap of the dominant-eigenvalue iteration.
pub const POWER_MAX_ITERATIONS: usize = 10_000;
/// Largest `n` for the dense full-spectrum path.
pub const FULL_SPECTRUM_CAP: usize = 2048;
/// Largest `n` for the dense `trace(M⁴)` route.
pub const DENSE_TRACE_CAP: usize = 4096;
/// Relative tolerance used when floating magnitudes are compared to exact sums.
pub const SPECTRAL_REL_TOL: f64 = 1e-6;

/// Dense skew adjacency matrix with entries in `{-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewAdjacency {
    n: usize,
    entries: Vec<i8>,
}

impl SkewAdjacency {
    pub fn new(g: &PartiallyOrientedGraph) -> Result<Self> {
        g.require_oriented()?;
        let n = g.n();
        let mut entries = vec![0i8; n * n];
        for (t, h) in g.arcs() {
            entries[t * n + h] = 1;
            entries[h * n + t] = -1;
        }
        Ok(Self { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> i8 {
        self.entries[x * self.n + y]
    }

    pub fn row(&self, x: usize) -> &[i8] {
        &self.entries[x * self.n..(x + 1) * self.n]
    }
}

fn sign(l: Link) -> i64 {
    match l {
        Link::Out => 1,
        Link::In => -1,
        Link::Plain => unreachable!("oriented graph"),
    }
}

/// Row `x` of `M²` by walking two steps from `x`.
fn square_row(g: &PartiallyOrientedGraph, x: usize, row: &mut [i64], touched: &mut Vec<usize>) {
    for &y in touched.iter() {
        row[y] = 0;
    }
    touched.clear();
    for &(z, lz) in g.neighbors(x) {
        let mxz = sign(lz);
        for &(y, ly) in g.neighbors(z) {
            if row[y] == 0 {
                touched.push(y);
            }
            row[y] += mxz * sign(ly);
        }
    }
    // An entry that cancels to zero and is hit again gets pushed twice.
    touched.sort_unstable();
    touched.dedup();
}

/// `Σ_{x,x',y,y'} M_xy M_xy' M_x'y M_x'y'`, computed exactly as the squared
/// Frobenius norm of `M²`. Always nonnegative.
pub fn quadruple_sum(g: &PartiallyOrientedGraph) -> Result<i64> {
    g.require_oriented()?;
    let n = g.n();
    let total: i128 = (0..n)
        .into_par_iter()
        .fold(
            || (vec![0i64; n], Vec::new(), 0i128),
            |(mut row, mut touched, acc), x| {
                square_row(g, x, &mut row, &mut touched);
                let s: i128 = touched.iter().map(|&y| i128::from(row[y] * row[y])).sum();
                (row, touched, acc + s)
            },
        )
        .map(|(_, _, acc)| acc)
        .sum();
    i64::try_from(total).map_err(|_| Error::Overflow("quadruple sum"))
}

/// `trace(M⁴) = Σ_{x,y} (M²)_{xy} (M²)_{yx}` from a dense copy of `M²`.
pub fn trace_m4(g: &PartiallyOrientedGraph) -> Result<i64> {
    g.require_oriented()?;
    let n = g.n();
    if n > DENSE_TRACE_CAP {
        return Err(Error::SizeCap {
            what: "dense trace(M^4)",
            n,
            limit: DENSE_TRACE_CAP,
        });
    }
    let mut sq = vec![0i32; n * n];
    sq.par_chunks_mut(n.max(1))
        .enumerate()
        .for_each(|(x, out)| {
            let mut row = vec![0i64; n];
            let mut touched = Vec::new();
            square_row(g, x, &mut row, &mut touched);
            for &y in &touched {
                out[y] = row[y] as i32;
            }
        });
    let total: i128 = (0..n)
        .into_par_iter()
        .map(|x| {
            (0..n)
                .map(|y| i128::from(sq[x * n + y]) * i128::from(sq[y * n + x]))
                .sum::<i128>()
        })
        .sum();
    i64::try_from(total).map_err(|_| Error::Overflow("trace(M^4)"))
}

/// `trace(-M²) = Σ_x d(x) = 2 e(D)`.
pub fn trace_neg_m2(g: &PartiallyOrientedGraph) -> Result<i64> {
    g.require_oriented()?;
    let n = g.n();
    let mut row = vec![0i64; n];
    let mut touched = Vec::new();
    let mut total = 0i64;
    for x in 0..n {
        square_row(g, x, &mut row, &mut touched);
        total -= row[x];
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumSummary {
    /// `|λ_1| ≥ … ≥ |λ_n|` when `full`, otherwise just `[|λ_1|]`.
    pub magnitudes: Vec<f64>,
    pub full: bool,
    pub lambda1: f64,
    /// Relative accuracy target of the floating magnitudes.
    pub tolerance: f64,
    pub iterations: usize,
    pub residual: f64,
    /// `Σ λ_i⁴ = trace(M⁴)`, exact.
    #[serde(with = "decimal")]
    pub sum_lambda4: i64,
    /// `Σ |λ_i|² = 2 e(D)`, exact.
    #[serde(with = "decimal")]
    pub sum_lambda2_abs: i64,
}

/// `u = -M(Mv)` through the adjacency lists.
fn apply_neg_square(g: &PartiallyOrientedGraph, v: &[f64], tmp: &mut [f64], out: &mut [f64]) {
    for (x, t) in tmp.iter_mut().enumerate() {
        *t = g
            .neighbors(x)
            .iter()
            .map(|&(y, l)| sign(l) as f64 * v[y])
            .sum();
    }
    for (x, o) in out.iter_mut().enumerate() {
        *o = -g
            .neighbors(x)
            .iter()
            .map(|&(y, l)| sign(l) as f64 * tmp[y])
            .sum::<f64>();
    }
}

/// Largest eigenvalue of `-M²` by power iteration; returns
/// `(eigenvalue, iterations, residual)`.
fn dominant_eigenvalue(g: &PartiallyOrientedGraph) -> Result<(f64, usize, f64)> {
    let n = g.n();
    if g.edge_count() == 0 {
        return Ok((0.0, 0, 0.0));
    }
    let norm = |v: &[f64]| v.iter().map(|a| a * a).sum::<f64>().sqrt();
    let mut tmp = vec![0.0; n];
    let mut u = vec![0.0; n];
    for attempt in 0..4u64 {
        let mut rng = SplitMix64::derive(0x5EED_5EC7_0A1B_2C3D, attempt);
        let mut v: Vec<f64> = (0..n).map(|_| rng.next_f64() - 0.5).collect();
        let s = norm(&v);
        v.iter_mut().for_each(|a| *a /= s);
        let mut rho = 0.0;
        let mut residual = f64::INFINITY;
        for it in 1..=POWER_MAX_ITERATIONS {
            apply_neg_square(g, &v, &mut tmp, &mut u);
            let next: f64 = v.iter().zip(&u).map(|(a, b)| a * b).sum();
            let len = norm(&u);
            if len == 0.0 {
                break;
            }
            residual = v
                .iter()
                .zip(&u)
                .map(|(a, b)| (b - next * a).powi(2))
                .sum::<f64>()
                .sqrt()
                / next.max(f64::MIN_POSITIVE);
            let converged = (next - rho).abs() <= POWER_TOLERANCE * next;
            rho = next;
            v.iter_mut().zip(&u).for_each(|(a, b)| *a = b / len);
            if converged {
                return Ok((rho, it, residual));
            }
        }
        if rho > 0.0 {
            return Err(Error::ConvergenceFailure {
                iterations: POWER_MAX_ITERATIONS,
                residual,
            });
        }
        // Start vector fell in the kernel of M; retry with a fresh one.
    }
    Err(Error::ConvergenceFailure {
        iterations: POWER_MAX_ITERATIONS,
        residual: f64::NAN,
    })
}

/// Eigenvalues of a dense symmetric matrix (row-major), unsorted.
pub fn symmetric_eigenvalues(a: Vec<f64>, n: usize) -> Vec<f64> {
    assert_eq!(a.len(), n * n);
    DMatrix::from_row_slice(n, n, &a)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect()
}

/// Magnitudes of the eigenvalues of `M` plus the exact fourth- and
/// second-moment sums. With `full` unset only `|λ_1|` is computed.
pub fn spectrum(g: &PartiallyOrientedGraph, full: bool) -> Result<SpectrumSummary> {
    g.require_oriented()?;
    let n = g.n();
    let sum_lambda4 = quadruple_sum(g)?;
    let sum_lambda2_abs = 2 * g.edge_count() as i64;
    if full {
        if n > FULL_SPECTRUM_CAP {
            return Err(Error::SizeCap {
                what: "full spectrum",
                n,
                limit: FULL_SPECTRUM_CAP,
            });
        }
        let mut dense = vec![0.0f64; n * n];
        let mut row = vec![0i64; n];
        let mut touched = Vec::new();
        for x in 0..n {
            square_row(g, x, &mut row, &mut touched);
            for &y in &touched {
                dense[x * n + y] = -(row[y] as f64);
            }
        }
        let mut magnitudes: Vec<f64> = symmetric_eigenvalues(dense, n)
            .into_iter()
            .map(|e| e.max(0.0).sqrt())
            .collect();
        magnitudes.sort_by(|a, b| b.total_cmp(a));
        let lambda1 = magnitudes.first().copied().unwrap_or(0.0);
        return Ok(SpectrumSummary {
            magnitudes,
            full: true,
            lambda1,
            tolerance: 1e-9,
            iterations: 0,
            residual: 0.0,
            sum_lambda4,
            sum_lambda2_abs,
        });
    }
    let (top, iterations, residual) = dominant_eigenvalue(g)?;
    let lambda1 = top.max(0.0).sqrt();
    Ok(SpectrumSummary {
        magnitudes: vec![lambda1],
        full: false,
        lambda1,
        tolerance: POWER_TOLERANCE,
        iterations,
        residual,
        sum_lambda4,
        sum_lambda2_abs,
    })
}

/// Check `Σ|λ_i|² = 2e(D) ≤ n²`, `|λ_1|⁴ ≤ Σ λ_i⁴` and
/// `Σ λ_i⁴ ≤ |λ_1|² · 2e(D)` against a computed spectrum.
pub fn spectral_identities_check(
    g: &PartiallyOrientedGraph,
    s: &SpectrumSummary,
) -> Result<Vec<Verdict>> {
    let n = g.n() as i64;
    let two_e = trace_neg_m2(g)?;
    let mut out = vec![
        Verdict::exact_eq(
            "trace_neg_m2_is_2e",
            "trace(-M^2) = 2e(D)",
            &two_e.into(),
            &s.sum_lambda2_abs.into(),
        ),
        Verdict::exact_le(
            "two_e_at_most_n2",
            "2e(D) <= n^2",
            &two_e.into(),
            &(n * n).into(),
        ),
    ];
    if s.full {
        let sq: f64 = s.magnitudes.iter().map(|m| m * m).sum();
        out.push(Verdict::float_eq(
            "magnitudes_square_sum",
            "sum |lambda_i|^2 = 2e(D)",
            sq,
            two_e as f64,
            SPECTRAL_REL_TOL,
        ));
        let fourth: f64 = s.magnitudes.iter().map(|m| m.powi(4)).sum();
        out.push(Verdict::float_eq(
            "magnitudes_fourth_sum",
            "sum |lambda_i|^4 = trace(M^4)",
            fourth,
            s.sum_lambda4 as f64,
            SPECTRAL_REL_TOL,
        ));
    }
    let l1 = s.lambda1;
    out.push(Verdict::float_le(
        "lambda1_fourth_at_most_sum",
        "|lambda_1|^4 <= sum lambda_i^4",
        l1.powi(4),
        s.sum_lambda4 as f64,
        SPECTRAL_REL_TOL,
    ));
    out.push(Verdict::float_le(
        "sum_fourth_at_most_lambda1_sq_2e",
        "sum lambda_i^4 <= |lambda_1|^2 * 2e(D)",
        s.sum_lambda4 as f64,
        l1 * l1 * two_e as f64,
        SPECTRAL_REL_TOL,
    ));
    Ok(out)
}
