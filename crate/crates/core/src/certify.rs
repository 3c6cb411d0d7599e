//! Measured quasi-randomness parameters and the checks tying them together.
//!
//! Each parameter is the smallest value for which its condition holds on the
//! given graph, normalized by the matching power of `n`:
//!
//! | name    | value                                             |
//! |---------|---------------------------------------------------|
//! | `alpha` | `|hom_IV - hom_C4/8| / n⁴`                        |
//! | `delta` | `(hom_C4 - 2 hom_II) / n⁴ = trace(M⁴) / n⁴`       |
//! | `gamma` | `max_{A,B} (e⃗(A,B) - e⃗(B,A)) / n²`               |
//! | `epsilon` | infimum of `ε` with `bias_{1-ε} ≤ ε n²`         |
//! | `zeta`  | `|λ_1| / n`                                       |
//! | `beta`  | `|hom(H) - 2^{-ē(H)} hom(H̄)| / n^k` per pattern  |
//!
//! Roots never enter exact verdicts: `γ⁴ ≤ δ` is compared as rationals and
//! `bias ≤ √γ n²` as `bias² ≤ γ n⁴`.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::census::{
    census_from_sums, pair_sums, pattern_hom_count, sign_census, FourCycleCensus, SignCensus,
};
use crate::discrepancy::{
    bias_profile_exact_capped, bias_profile_heuristic, max_discrepancy_exact_capped,
    max_discrepancy_heuristic, BiasLevel, BiasResult, EXACT_BIAS_CAP, EXACT_DISCREPANCY_CAP,
};
use crate::error::{Error, Result};
use crate::generators::{default_patterns, FourCycleType, NamedPattern};
use crate::graph::{PartiallyOrientedGraph, VertexSubsetPair};
use crate::rational::{decimal, decimal_opt, Rational};
use crate::spectral::{
    spectral_identities_check, spectrum, trace_m4, SpectrumSummary, DENSE_TRACE_CAP,
    SPECTRAL_REL_TOL,
};
use crate::verdict::{Status, Verdict};

/// Largest `n` for which the full spectrum is computed by default.
pub const AUTO_FULL_SPECTRUM: usize = 256;

#[derive(Debug, Clone)]
pub struct EvaluateOptions {
    /// Exact discrepancy is used when `n` is at most this.
    pub exact_discrepancy_limit: usize,
    /// Exact bias profile is used when `n` is at most this.
    pub exact_bias_limit: usize,
    pub restarts: usize,
    pub seed: u64,
    pub patterns: Vec<NamedPattern>,
    /// `None` picks the full spectrum for `n ≤ AUTO_FULL_SPECTRUM`.
    pub full_spectrum: Option<bool>,
}

impl Default for EvaluateOptions {
    fn default() -> Self {
        EvaluateOptions {
            exact_discrepancy_limit: EXACT_DISCREPANCY_CAP,
            exact_bias_limit: EXACT_BIAS_CAP,
            restarts: 32,
            seed: 0,
            patterns: default_patterns(),
            full_spectrum: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GammaReport {
    pub value: Rational,
    #[serde(with = "decimal")]
    pub discrepancy: i64,
    pub exact: bool,
    pub witness: VertexSubsetPair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonReport {
    pub value: Rational,
    pub exact: bool,
    /// `bias_{1-ε}` at `ε = √gamma`.
    pub bias_at_sqrt_gamma: BiasResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZetaReport {
    pub value: f64,
    pub lambda1: f64,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaEntry {
    pub name: String,
    pub k: usize,
    pub oriented_edges: usize,
    pub edges: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub four_cycle_type: Option<FourCycleType>,
    #[serde(with = "decimal_opt")]
    pub hom: Option<u64>,
    #[serde(with = "decimal_opt")]
    pub hom_underlying: Option<u64>,
    /// `hom - 2^{-ē} hom_underlying`.
    pub deviation: Option<Rational>,
    /// `|deviation| / n^k`.
    pub normalized: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unavailable: Option<String>,
}

impl BetaEntry {
    /// Fully oriented pattern with at least one arc (contributes to `beta`).
    pub fn is_oriented(&self) -> bool {
        self.edges > 0 && self.oriented_edges == self.edges
    }

    /// Mixed pattern (contributes to `eta`).
    pub fn is_partial(&self) -> bool {
        self.oriented_edges > 0 && self.oriented_edges < self.edges
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuasiRandomnessReport {
    pub n: usize,
    #[serde(with = "decimal")]
    pub e: u64,
    #[serde(with = "decimal")]
    pub e_oriented: u64,
    pub census: FourCycleCensus,
    pub sign_census: SignCensus,
    #[serde(with = "decimal")]
    pub quadruple_sum: i64,
    #[serde(with = "decimal_opt")]
    pub trace_m4: Option<i64>,
    pub alpha: Rational,
    pub delta: Rational,
    pub gamma: GammaReport,
    pub epsilon: EpsilonReport,
    pub zeta: ZetaReport,
    pub spectrum: SpectrumSummary,
    /// Largest normalized deviation over oriented patterns.
    pub beta: Option<Rational>,
    /// Largest normalized deviation over partially oriented patterns.
    pub eta: Option<Rational>,
    pub beta_table: Vec<BetaEntry>,
    pub verdicts: Vec<Verdict>,
}

impl QuasiRandomnessReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn exit_code(&self) -> i32 {
        exit_code(&self.verdicts)
    }
}

/// 0 when every verdict passed, 2 if any failed, otherwise 3 if any was skipped.
pub fn exit_code(verdicts: &[Verdict]) -> i32 {
    if verdicts.iter().any(|v| v.status == Status::Fail) {
        2
    } else if verdicts.iter().any(|v| v.status == Status::Skipped) {
        3
    } else {
        0
    }
}

fn n_pow(n: usize, k: usize) -> Rational {
    Rational::integer(num_traits::pow(BigInt::from(n), k))
}

fn int(v: i64) -> Rational {
    Rational::integer(v)
}

fn normalize(v: i64, n: usize, k: usize) -> Rational {
    if n == 0 {
        Rational::zero()
    } else {
        &int(v) / &n_pow(n, k)
    }
}

struct Structural<'a> {
    census: &'a FourCycleCensus,
    hom_iii_alt: i64,
    sign: &'a SignCensus,
    quadruple_sum: i64,
    trace_m4: Option<i64>,
}

fn structural_verdicts(s: &Structural) -> Vec<Verdict> {
    let c = s.census;
    let (i, ii, iii, iv, c4) = (
        int(c.hom_i),
        int(c.hom_ii),
        int(c.hom_iii),
        int(c.hom_iv),
        int(c.hom_c4),
    );
    let k = |m: i64, v: &Rational| &int(m) * v;
    let mut out = vec![
        Verdict::exact_eq(
            "census_decomposition",
            "hom_C4 = hom_I + hom_II + hom_III + hom_IV",
            &c4,
            &(&(&i + &ii) + &(&iii + &iv)),
        ),
        Verdict::exact_le("type_iv_lower_bound", "hom_C4 <= 8 hom_IV", &c4, &k(8, &iv)),
        Verdict::exact_le("type_ii_upper_bound", "2 hom_II <= hom_C4", &k(2, &ii), &c4),
        Verdict::exact_le("type_iii_vs_iv", "hom_III <= 2 hom_IV", &iii, &k(2, &iv)),
        Verdict::exact_le("type_i_vs_iii", "2 hom_I <= hom_III", &k(2, &i), &iii),
        Verdict::exact_le(
            "type_ii_vs_iii_iv",
            "hom_II <= 2 hom_IV + hom_III",
            &ii,
            &(&k(2, &iv) + &iii),
        ),
        Verdict::exact_le("type_i_vs_iv", "hom_I <= hom_IV", &i, &iv),
        Verdict::exact_le("type_ii_vs_iv", "hom_II <= 4 hom_IV", &ii, &k(4, &iv)),
        Verdict::exact_eq(
            "type_iii_forms_agree",
            "4 sum d++ d-- = 2 sum (d+-)^2 + (d-+)^2",
            &iii,
            &int(s.hom_iii_alt),
        ),
        Verdict::exact_eq(
            "sign_census_total",
            "|C| = hom_C4",
            &int(s.sign.c_total),
            &c4,
        ),
        Verdict::exact_eq(
            "sign_census_minus",
            "|C-| = hom_II",
            &int(s.sign.c_minus),
            &ii,
        ),
        Verdict::exact_eq(
            "sign_census_signed",
            "|C+| - |C-| = hom_C4 - 2 hom_II",
            &int(s.sign.signed_total()),
            &int(c.quadruple_sum()),
        ),
        Verdict::exact_eq(
            "quadruple_sum_matches_census",
            "sum of quadruple products = hom_C4 - 2 hom_II",
            &int(s.quadruple_sum),
            &int(c.quadruple_sum()),
        ),
    ];
    out.push(match s.trace_m4 {
        Some(t) => Verdict::exact_eq(
            "trace_m4_matches",
            "trace(M^4) = sum of quadruple products",
            &int(t),
            &int(s.quadruple_sum),
        ),
        None => Verdict::skipped(
            "trace_m4_matches",
            "trace(M^4) = sum of quadruple products",
            format!("dense trace limited to n <= {DENSE_TRACE_CAP}"),
        ),
    });
    out.push(Verdict::exact_le(
        "quadruple_sum_nonnegative",
        "0 <= sum of quadruple products",
        &Rational::zero(),
        &int(s.quadruple_sum),
    ));
    out
}

fn optional_trace(g: &PartiallyOrientedGraph) -> Result<Option<i64>> {
    if g.n() > DENSE_TRACE_CAP {
        return Ok(None);
    }
    trace_m4(g).map(Some)
}

/// Exact census inequalities and the identities linking census, sign census,
/// quadruple sum and `trace(M⁴)`. Each verdict carries `rhs - lhs`.
pub fn verify_structural(g: &PartiallyOrientedGraph) -> Result<Vec<Verdict>> {
    let sums = pair_sums(g)?;
    let census = census_from_sums(&sums)?;
    let sign = sign_census(g)?;
    let q = crate::spectral::quadruple_sum(g)?;
    let alt = i64::try_from(sums.hom_iii_mixed()).map_err(|_| Error::Overflow("hom_III"))?;
    Ok(structural_verdicts(&Structural {
        census: &census,
        hom_iii_alt: alt,
        sign: &sign,
        quadruple_sum: q,
        trace_m4: optional_trace(g)?,
    }))
}

/// Everything the implication checks consume.
#[derive(Debug, Clone)]
pub struct ImplicationInputs<'a> {
    pub n: usize,
    pub census: &'a FourCycleCensus,
    pub alpha: &'a Rational,
    pub delta: &'a Rational,
    pub gamma: &'a GammaReport,
    pub epsilon: &'a EpsilonReport,
    pub bias_profile_exact: bool,
    pub zeta: &'a ZetaReport,
    pub beta_table: &'a [BetaEntry],
    /// `hom` of the two labelled Type IV orientations.
    pub type_iv_homs: [u64; 2],
}

fn gamma_missing(name: &str, statement: &str) -> Verdict {
    Verdict::skipped(
        name,
        statement,
        Error::IncompleteInputs("exact discrepancy unavailable at this size".into()).to_string(),
    )
}

/// The parameter maps between conditions, checked as inequalities between
/// measured values. Checks that need exact discrepancy (or an exact bias
/// profile) are skipped when only heuristic values exist.
pub fn implication_verdicts(x: &ImplicationInputs) -> Vec<Verdict> {
    let n = x.n;
    let mut out = vec![Verdict::exact_le(
        "delta_from_alpha",
        "delta <= 8 alpha",
        x.delta,
        &(&int(8) * x.alpha),
    )];

    let gamma_exact = x.gamma.exact;
    let statement = "gamma^4 <= delta";
    out.push(if gamma_exact {
        Verdict::exact_le(
            "gamma_from_delta",
            statement,
            &x.gamma.value.pow(4),
            x.delta,
        )
    } else {
        gamma_missing("gamma_from_delta", statement)
    });

    for entry in x.beta_table {
        let name = format!("pattern_deviation[{}]", entry.name);
        let statement = "|hom(H) - 2^-e(H) hom(H underlying)| <= (1 - 2^-e(H)) disc n^(k-2)";
        out.push(match (&entry.deviation, gamma_exact) {
            (_, false) => gamma_missing(&name, statement),
            (None, true) => Verdict::skipped(
                &name,
                statement,
                entry.unavailable.clone().unwrap_or_default(),
            ),
            (Some(dev), true) => {
                let frac = Rational::one()
                    - Rational::new(1, num_traits::pow(BigInt::from(2), entry.oriented_edges));
                // disc · n^(k-2) = gamma · n^k.
                let bound = &(&frac * &x.gamma.value) * &n_pow(n, entry.k);
                Verdict::exact_le(&name, statement, &dev.abs(), &bound)
            }
        });
    }

    // hom_C4 / 16 is the expected share of each labelled Type IV orientation.
    let c4_share = &int(x.census.hom_c4) / &int(16);
    let iv_dev: Rational = x
        .type_iv_homs
        .iter()
        .map(|&h| (&Rational::integer(h) - &c4_share).abs())
        .fold(Rational::zero(), |a, b| a + b);
    out.push(Verdict::exact_le(
        "alpha_from_type_iv_deviation",
        "alpha n^4 <= |dev(IV_a)| + |dev(IV_b)|",
        &(x.alpha * &n_pow(n, 4)),
        &iv_dev,
    ));

    let statement = "bias_(1-eps)^2 <= gamma n^4 at eps^2 = gamma";
    out.push(if !gamma_exact {
        gamma_missing("bias_from_gamma", statement)
    } else if !x.bias_profile_exact {
        Verdict::skipped(
            "bias_from_gamma",
            statement,
            "exact bias profile unavailable at this size",
        )
    } else {
        let b = int(x.epsilon.bias_at_sqrt_gamma.value);
        Verdict::exact_le(
            "bias_from_gamma",
            statement,
            &b.pow(2),
            &(&x.gamma.value * &n_pow(n, 4)),
        )
    });

    let statement = "gamma <= epsilon";
    out.push(if gamma_exact && x.epsilon.exact {
        Verdict::exact_le(
            "gamma_from_epsilon",
            statement,
            &x.gamma.value,
            &x.epsilon.value,
        )
    } else if !gamma_exact {
        gamma_missing("gamma_from_epsilon", statement)
    } else {
        Verdict::skipped(
            "gamma_from_epsilon",
            statement,
            "exact bias profile unavailable at this size",
        )
    });

    let z = x.zeta.value;
    let d = x.delta.to_f64();
    out.push(Verdict::float_le(
        "zeta_from_delta",
        "zeta^4 <= delta",
        z.powi(4),
        d,
        SPECTRAL_REL_TOL,
    ));
    out.push(Verdict::float_le(
        "delta_from_zeta",
        "delta <= zeta^2",
        d,
        z * z,
        SPECTRAL_REL_TOL,
    ));
    out
}

fn beta_entry(p: &NamedPattern, d: &PartiallyOrientedGraph) -> BetaEntry {
    let h = &p.graph;
    let k = h.n();
    let mut entry = BetaEntry {
        name: p.name.clone(),
        k,
        oriented_edges: h.oriented_edge_count(),
        edges: h.edge_count(),
        four_cycle_type: p.four_cycle_type,
        hom: None,
        hom_underlying: None,
        deviation: None,
        normalized: None,
        unavailable: None,
    };
    let counts =
        pattern_hom_count(h, d).and_then(|a| Ok((a, pattern_hom_count(&h.underlying(), d)?)));
    match counts {
        Ok((hom, plain)) => {
            let scale = num_traits::pow(BigInt::from(2), h.oriented_edge_count());
            let dev = Rational::integer(hom) - Rational::new(plain, scale);
            entry.normalized = Some(if d.n() == 0 {
                Rational::zero()
            } else {
                &dev.abs() / &n_pow(d.n(), k)
            });
            entry.hom = Some(hom);
            entry.hom_underlying = Some(plain);
            entry.deviation = Some(dev);
        }
        Err(e) => entry.unavailable = Some(e.to_string()),
    }
    entry
}

fn max_normalized<'a>(entries: impl Iterator<Item = &'a BetaEntry>) -> Option<Rational> {
    entries.filter_map(|e| e.normalized.clone()).max()
}

/// Computes every parameter, then runs the structural, spectral and
/// implication checks. Exact searches that are infeasible at this size fall
/// back to heuristics and the report says so.
pub fn evaluate(
    g: &PartiallyOrientedGraph,
    opts: &EvaluateOptions,
) -> Result<QuasiRandomnessReport> {
    evaluate_split(g, opts).map(|(r, _)| r)
}

/// The report plus the index of its first implication verdict.
fn evaluate_split(
    g: &PartiallyOrientedGraph,
    opts: &EvaluateOptions,
) -> Result<(QuasiRandomnessReport, usize)> {
    g.require_oriented()?;
    let n = g.n();
    let full = opts.full_spectrum.unwrap_or(n <= AUTO_FULL_SPECTRUM);

    let (structural, (spec, (disc, (profile, beta_table)))) = rayon::join(
        || -> Result<_> {
            Ok((
                pair_sums(g)?,
                sign_census(g)?,
                crate::spectral::quadruple_sum(g)?,
                optional_trace(g)?,
            ))
        },
        || {
            rayon::join(
                || spectrum(g, full),
                || {
                    rayon::join(
                        || {
                            if n <= opts.exact_discrepancy_limit {
                                max_discrepancy_exact_capped(g, opts.exact_discrepancy_limit)
                            } else {
                                Ok(max_discrepancy_heuristic(g, opts.restarts, opts.seed))
                            }
                        },
                        || {
                            rayon::join(
                                || {
                                    if n <= opts.exact_bias_limit {
                                        bias_profile_exact_capped(g, opts.exact_bias_limit)
                                    } else {
                                        Ok(bias_profile_heuristic(g, opts.restarts, opts.seed))
                                    }
                                },
                                || {
                                    opts.patterns
                                        .par_iter()
                                        .map(|p| beta_entry(p, g))
                                        .collect::<Vec<_>>()
                                },
                            )
                        },
                    )
                },
            )
        },
    );
    let (sums, sign, q, trace) = structural?;
    let (spec, disc, profile) = (spec?, disc?, profile?);
    let census = census_from_sums(&sums)?;
    let hom_iii_alt =
        i64::try_from(sums.hom_iii_mixed()).map_err(|_| Error::Overflow("hom_III"))?;

    let n4 = n_pow(n, 4);
    let alpha = if n == 0 {
        Rational::zero()
    } else {
        &(&int(8 * census.hom_iv - census.hom_c4).abs() / &int(8)) / &n4
    };
    let delta = normalize(census.quadruple_sum(), n, 4);
    let gamma = GammaReport {
        value: disc.gamma.clone(),
        discrepancy: disc.value,
        exact: disc.exact,
        witness: disc.witness,
    };
    let epsilon = EpsilonReport {
        value: profile.epsilon(),
        exact: profile.exact,
        bias_at_sqrt_gamma: profile.bias(&BiasLevel::OneMinusSqrt(gamma.value.clone())),
    };
    let zeta = ZetaReport {
        value: if n == 0 { 0.0 } else { spec.lambda1 / n as f64 },
        lambda1: spec.lambda1,
        tolerance: spec.tolerance,
    };
    let lib_iv: Vec<_> = crate::generators::pattern_library()
        .of_type(FourCycleType::IV)
        .map(|p| pattern_hom_count(&p.graph, g))
        .collect::<Result<_>>()?;
    let type_iv_homs = [lib_iv[0], lib_iv[1]];

    let mut verdicts = structural_verdicts(&Structural {
        census: &census,
        hom_iii_alt,
        sign: &sign,
        quadruple_sum: q,
        trace_m4: trace,
    });
    verdicts.extend(spectral_identities_check(g, &spec)?);
    let split = verdicts.len();
    verdicts.extend(implication_verdicts(&ImplicationInputs {
        n,
        census: &census,
        alpha: &alpha,
        delta: &delta,
        gamma: &gamma,
        epsilon: &epsilon,
        bias_profile_exact: profile.exact,
        zeta: &zeta,
        beta_table: &beta_table,
        type_iv_homs,
    }));

    let report = QuasiRandomnessReport {
        n,
        e: g.edge_count() as u64,
        e_oriented: g.oriented_edge_count() as u64,
        census,
        sign_census: sign,
        quadruple_sum: q,
        trace_m4: trace,
        alpha,
        delta,
        beta: max_normalized(beta_table.iter().filter(|e| e.is_oriented())),
        eta: max_normalized(beta_table.iter().filter(|e| e.is_partial())),
        gamma,
        epsilon,
        zeta,
        spectrum: spec,
        beta_table,
        verdicts,
    };
    Ok((report, split))
}

/// Runs [`evaluate`] and keeps only the implication verdicts.
pub fn verify_implications(
    g: &PartiallyOrientedGraph,
    opts: &EvaluateOptions,
) -> Result<Vec<Verdict>> {
    let (mut report, split) = evaluate_split(g, opts)?;
    Ok(report.verdicts.split_off(split))
}
