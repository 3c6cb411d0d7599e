use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qro::census::{four_cycle_census, hom_count_limited, sign_census, HOM_STATE_LIMIT};
use qro::certify::{evaluate, exit_code, EvaluateOptions, QuasiRandomnessReport};
use qro::discrepancy::{
    bias_heuristic, bias_profile_exact_capped, max_discrepancy_exact_capped,
    max_discrepancy_heuristic, BiasLevel, EXACT_BIAS_CAP, EXACT_DISCREPANCY_CAP,
};
use qro::generators::{
    default_patterns, generate, FourCycleType, GeneratorSpec, Model, NamedPattern,
};
use qro::spectral::spectrum;
use qro::verdict::{Status, Verdict};
use qro::{Error, PartiallyOrientedGraph, Rational};
use serde_json::json;

/// Appends a line to the output buffer.
macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {{
        let _ = writeln!($out, $($arg)*);
    }};
}

/// Quasi-randomness certificates for oriented graphs.
#[derive(Parser)]
#[command(name = "qro", version)]
struct Cli {
    /// Worker threads (defaults to one per core).
    #[arg(long, global = true, env = "QRO_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every parameter and run all checks.
    Analyze(AnalyzeArgs),
    /// Four-cycle census and sign census.
    Census(InputArgs),
    /// Eigenvalue magnitudes of the skew adjacency matrix.
    Spectrum {
        #[command(flatten)]
        input: InputArgs,
        /// All magnitudes instead of only the largest.
        #[arg(long)]
        full: bool,
    },
    /// Maximum directed discrepancy.
    Disc(SearchArgs),
    /// Largest forward count over biased pairs.
    Bias {
        #[command(flatten)]
        search: SearchArgs,
        /// Bias level as `p/q` or a decimal in [0, 1).
        #[arg(long)]
        nu: String,
    },
    /// Homomorphism count of a pattern into a target.
    Hom {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Lift the search-space limit.
        #[arg(long)]
        no_limit: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run all checks; nonzero exit on any failure.
    Verify(AnalyzeArgs),
    /// Generate a graph.
    Gen(GenArgs),
}

#[derive(Args)]
struct InputArgs {
    file: PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Force exhaustive search.
    #[arg(long, conflicts_with = "heuristic")]
    exact: bool,
    /// Force local search.
    #[arg(long)]
    heuristic: bool,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Directory of `.poag` pattern files replacing the default pattern set.
    #[arg(long)]
    patterns: Option<PathBuf>,
    /// Largest n for exact discrepancy.
    #[arg(long, default_value_t = EXACT_DISCREPANCY_CAP)]
    exact_limit: usize,
    /// Largest n for the exact bias profile.
    #[arg(long, default_value_t = EXACT_BIAS_CAP)]
    exact_bias_limit: usize,
    #[arg(long, default_value_t = 32)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Compute the full spectrum regardless of size.
    #[arg(long)]
    full_spectrum: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    model: String,
    #[arg(long)]
    n: Option<usize>,
    /// Edge probability as `p/q` or a decimal.
    #[arg(long)]
    p: Option<String>,
    /// Clone count for blow-ups.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    base: Option<PathBuf>,
    #[arg(long)]
    seed: u64,
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooLargeForExact { .. }
            | Error::SizeCap { .. }
            | Error::PatternTooLarge { .. }
            | Error::IncompleteInputs(_) => 3,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn load(path: &Path) -> Result<PartiallyOrientedGraph, Failure> {
    PartiallyOrientedGraph::load_path(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn print_json(out: &mut String, v: &impl serde::Serialize) {
    emit!(
        out,
        "{}",
        serde_json::to_string_pretty(v).expect("serializable")
    );
}

fn load_patterns(dir: &Path) -> Result<Vec<NamedPattern>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "poag"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let graph = load(p)?;
            let four_cycle_type =
                (graph.n() == 4 && graph.edge_count() == 4 && graph.is_oriented())
                    .then(|| FourCycleType::classify(&graph))
                    .flatten();
            Ok(NamedPattern {
                name: p
                    .file_stem()
                    .unwrap_or_default()
                    .to_string_lossy()
                    .into_owned(),
                graph,
                four_cycle_type,
            })
        })
        .collect()
}

fn options(a: &AnalyzeArgs) -> Result<EvaluateOptions, Failure> {
    Ok(EvaluateOptions {
        exact_discrepancy_limit: a.exact_limit,
        exact_bias_limit: a.exact_bias_limit,
        restarts: a.restarts,
        seed: a.seed,
        patterns: match &a.patterns {
            Some(dir) => load_patterns(dir)?,
            None => default_patterns(),
        },
        full_spectrum: a.full_spectrum.then_some(true),
    })
}

fn exactness(exact: bool) -> &'static str {
    if exact {
        "exact"
    } else {
        "heuristic lower bound"
    }
}

fn print_verdicts(out: &mut String, verdicts: &[Verdict], all: bool) {
    let count = |s: Status| verdicts.iter().filter(|v| v.status == s).count();
    emit!(
        out,
        "verdicts: {} pass, {} fail, {} skipped",
        count(Status::Pass),
        count(Status::Fail),
        count(Status::Skipped)
    );
    for v in verdicts {
        if all || v.status != Status::Pass {
            let status = match v.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            match &v.note {
                Some(note) => emit!(out, "  {status} {}: {} ({note})", v.name, v.statement),
                None => emit!(out, "  {status} {}: {}", v.name, v.statement),
            }
        }
    }
}

fn print_report(out: &mut String, r: &QuasiRandomnessReport) {
    let c = &r.census;
    emit!(out, "n {}  edges {}  arcs {}", r.n, r.e, r.e_oriented);
    emit!(
        out,
        "census I={} II={} III={} IV={} C4={}",
        c.hom_i,
        c.hom_ii,
        c.hom_iii,
        c.hom_iv,
        c.hom_c4
    );
    match r.trace_m4 {
        Some(t) => emit!(out, "quadruple sum {}  trace(M^4) {t}", r.quadruple_sum),
        None => emit!(out, "quadruple sum {}", r.quadruple_sum),
    }
    emit!(out, "alpha {}", r.alpha);
    emit!(out, "delta {}", r.delta);
    emit!(
        out,
        "gamma {} (discrepancy {}, {})",
        r.gamma.value,
        r.gamma.discrepancy,
        exactness(r.gamma.exact)
    );
    emit!(
        out,
        "epsilon {} ({})",
        r.epsilon.value,
        exactness(r.epsilon.exact)
    );
    emit!(
        out,
        "zeta {:.9} (tolerance {:e})",
        r.zeta.value,
        r.zeta.tolerance
    );
    let show = |q: &Option<Rational>| q.as_ref().map_or("n/a".to_string(), |q| q.to_string());
    emit!(
        out,
        "beta {}  eta {}  ({} patterns)",
        show(&r.beta),
        show(&r.eta),
        r.beta_table.len()
    );
}

fn analyze(out: &mut String, a: &AnalyzeArgs, verify_only: bool) -> Outcome {
    let g = load(&a.input.file)?;
    let report = evaluate(&g, &options(a)?)?;
    if a.input.json {
        if verify_only {
            print_json(out, &json!({ "verdicts": report.verdicts }));
        } else {
            emit!(out, "{}", report.to_json());
        }
    } else {
        if !verify_only {
            print_report(out, &report);
        }
        print_verdicts(out, &report.verdicts, verify_only);
    }
    Ok(exit_code(&report.verdicts) as u8)
}

fn census(out: &mut String, input: &InputArgs) -> Outcome {
    let g = load(&input.file)?;
    let c = four_cycle_census(&g)?;
    let s = sign_census(&g)?;
    if input.json {
        print_json(
            out,
            &json!({
                "census": c,
                "sign_census": s,
                "quadruple_sum": c.quadruple_sum().to_string(),
            }),
        );
    } else {
        let (i, ii, iii, iv, c4) = c.as_tuple();
        emit!(out, "({i}, {ii}, {iii}, {iv}, {c4})");
        emit!(
            out,
            "sign census total {} plus {} minus {}",
            s.c_total,
            s.c_plus,
            s.c_minus
        );
        emit!(out, "quadruple sum {}", c.quadruple_sum());
    }
    Ok(0)
}

fn spectrum_cmd(out: &mut String, input: &InputArgs, full: bool) -> Outcome {
    let g = load(&input.file)?;
    let s = spectrum(&g, full)?;
    if input.json {
        print_json(out, &s);
    } else {
        let mags: Vec<String> = s.magnitudes.iter().map(|m| format!("{m:.9}")).collect();
        emit!(out, "magnitudes {}", mags.join(" "));
        emit!(out, "sum lambda^4 {}", s.sum_lambda4);
        emit!(out, "sum |lambda|^2 {}", s.sum_lambda2_abs);
    }
    Ok(0)
}

fn use_exact(s: &SearchArgs, n: usize, cap: usize) -> bool {
    s.exact || (!s.heuristic && n <= cap)
}

fn disc(out: &mut String, s: &SearchArgs) -> Outcome {
    let g = load(&s.input.file)?;
    let r = if use_exact(s, g.n(), EXACT_DISCREPANCY_CAP) {
        max_discrepancy_exact_capped(&g, usize::MAX)?
    } else {
        max_discrepancy_heuristic(&g, s.restarts, s.seed)
    };
    if s.input.json {
        print_json(out, &r);
    } else {
        emit!(out, "discrepancy {} ({})", r.value, exactness(r.exact));
        emit!(out, "gamma {}", r.gamma);
        emit!(out, "A {:?}", r.witness.a_indices());
        emit!(out, "B {:?}", r.witness.b_indices());
    }
    Ok(0)
}

fn bias(out: &mut String, s: &SearchArgs, nu: &str) -> Outcome {
    let g = load(&s.input.file)?;
    let level = BiasLevel::nu(nu.parse()?)?;
    let r = if use_exact(s, g.n(), EXACT_BIAS_CAP) {
        bias_profile_exact_capped(&g, usize::MAX)?.bias(&level)
    } else {
        bias_heuristic(&g, &level, s.restarts, s.seed)
    };
    if s.input.json {
        print_json(out, &r);
    } else {
        emit!(out, "bias {} ({})", r.value, exactness(r.exact));
        emit!(out, "reverse arcs {}", r.backward);
        emit!(out, "A {:?}", r.witness.a_indices());
        emit!(out, "B {:?}", r.witness.b_indices());
    }
    Ok(0)
}

fn hom(out: &mut String, pattern: &Path, target: &Path, no_limit: bool, as_json: bool) -> Outcome {
    let h = load(pattern)?;
    let d = load(target)?;
    let limit = (!no_limit).then_some(HOM_STATE_LIMIT);
    let count = hom_count_limited(&h, &d, limit)?;
    let plain = hom_count_limited(&h.underlying(), &d, limit)?;
    // A pattern on at most five vertices has at most ten arcs.
    let deviation =
        Rational::integer(count) - Rational::new(plain, 1u64 << h.oriented_edge_count());
    if as_json {
        print_json(
            out,
            &json!({
                "hom": count.to_string(),
                "hom_underlying": plain.to_string(),
                "deviation": deviation,
            }),
        );
    } else {
        emit!(out, "hom {count}");
        emit!(out, "hom underlying {plain}");
        emit!(out, "deviation {deviation}");
    }
    Ok(0)
}

fn gen(out: &mut String, a: &GenArgs) -> Outcome {
    let mut spec = GeneratorSpec::new(a.model.parse::<Model>()?, a.seed);
    spec.n = a.n;
    spec.m = a.m;
    spec.p = a.p.as_deref().map(str::parse).transpose()?;
    spec.base = a.base.as_deref().map(load).transpose()?;
    let text = generate(&spec)?.save();
    match &a.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))?
        }
        None => out.push_str(&text),
    }
    Ok(0)
}

fn run(out: &mut String, cli: Cli) -> Outcome {
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| usage(e.to_string()))?;
    }
    match &cli.command {
        Command::Analyze(a) => analyze(out, a, false),
        Command::Verify(a) => analyze(out, a, true),
        Command::Census(i) => census(out, i),
        Command::Spectrum { input, full } => spectrum_cmd(out, input, *full),
        Command::Disc(s) => disc(out, s),
        Command::Bias { search, nu } => bias(out, search, nu),
        Command::Hom {
            pattern,
            target,
            no_limit,
            json,
        } => hom(out, pattern, target, *no_limit, *json),
        Command::Gen(a) => gen(out, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let mut out = String::new();
    let result = run(&mut out, cli);
    let _ = std::io::stdout().write_all(out.as_bytes());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
