mod input;
mod output;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kprimitive::analytic::{erdos_constant, named_constants, solve_tau1, Precision};
use kprimitive::exponents::{verify_lemma_primeineq, verify_strong_base};
use kprimitive::primitivity::{
    check_primitive, check_ysmall, refute_randomized, CandidateSet, PrimitivityOptions, RandomVerdict,
    DEFAULT_SET_CAP, YSMALL_DEFAULT_LAMBDAS,
};
use kprimitive::search::{bracket_tau, cgs_construct, max_weighted_sum, DEFAULT_BUDGET};
use kprimitive::structure::{block_split_trials, derived_map_trials, smooth_count_check};
use kprimitive::verify::{
    asymptotic_leg_check, claim1_check, claim2_check, fan_out, i_bound_check, monotone_exponent_property,
    strong_goal_check, ysmall_exhaustive, MARGIN_FROM, STRONG_FROM,
};
use kprimitive::{report::all_pass, ExponentSchedule, MarginReport, PrimeTable, Variant};
use serde::Serialize;
use serde_json::json;

use output::{Document, Format};

const DEFAULT_SIEVE_LIMIT: u64 = 1_000_000;

/// Numerical toolkit for k-primitive sets of integers: primitivity checks,
/// exponent schedules, weighted-sum searches and margin verification.
#[derive(Debug, Parser)]
#[command(name = "kprim", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Upper limit of the prime sieve.
    #[arg(long, global = true, env = "KPRIM_SIEVE_LIMIT", default_value_t = DEFAULT_SIEVE_LIMIT)]
    sieve_limit: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Prime table queries: p_n, pi(x) and Chebyshev's theta(x).
    Sieve(SieveArgs),
    /// Named constants, optionally recomputed from their defining series.
    Constants(ConstantsArgs),
    /// Exponent schedule rows (k, p_k, lambda, theta, nu).
    Exponents(ExponentsArgs),
    /// Decide whether a set of integers is k-primitive under a notion.
    Check(CheckArgs),
    /// Seeded property runs for the derived maps and block splitting.
    LemmaLab(LemmaLabArgs),
    /// Maximise the weighted sum over k-primitive subsets of [2, N].
    Search(SearchArgs),
    /// Build the product-of-two-primes set that beats the primes for small lambda.
    ConstructCgs(CgsArgs),
    /// Run margin checks over ranges of k.
    Verify(VerifyArgs),
}

#[derive(Debug, Args, Serialize)]
struct SieveArgs {
    /// The n-th prime (1-based).
    #[arg(long)]
    nth: Option<usize>,
    /// Number of primes up to x.
    #[arg(long)]
    pi: Option<f64>,
    /// Sum of log p over primes up to x.
    #[arg(long)]
    theta: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
struct ConstantsArgs {
    /// Solve for the exponent where the sum over primes of p^-tau equals one plus its square-free correction.
    #[arg(long)]
    tau1: bool,
    /// Evaluate sum 1/(p log p) by series and prime sums.
    #[arg(long)]
    erdos: bool,
    /// Relative tolerance for series truncation.
    #[arg(long, default_value_t = 1e-10)]
    rel_tol: f64,
    /// Maximum number of Mobius-series terms.
    #[arg(long, default_value_t = 1000)]
    max_terms: usize,
    /// Root tolerance for bisection.
    #[arg(long, default_value_t = 1e-8)]
    bisect_tol: f64,
}

#[derive(Debug, Args, Serialize)]
struct ExponentsArgs {
    #[arg(long, value_parser = parse_variant, default_value = "main")]
    variant: Variant,
    /// Defaults to the first k the schedule defines.
    #[arg(long)]
    k_from: Option<usize>,
    #[arg(long, default_value_t = 20)]
    k_to: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Notion {
    Main,
    Strong,
    Lcm,
}

impl From<Notion> for Variant {
    fn from(n: Notion) -> Variant {
        match n {
            Notion::Main => Variant::Main,
            Notion::Strong => Variant::Strong,
            Notion::Lcm => Variant::Lcm,
        }
    }
}

#[derive(Debug, Args, Serialize)]
struct CheckArgs {
    #[arg(long)]
    k: usize,
    /// main: distinct products of j <= k members; strong: multisets; lcm: lcm of distinct members.
    #[arg(long, value_enum, default_value = "main")]
    notion: Notion,
    /// Forbid only products of exactly k other members.
    #[arg(long)]
    single_j: bool,
    /// Largest set decided exactly; larger sets get randomized refutation.
    #[arg(long, default_value_t = DEFAULT_SET_CAP)]
    cap: usize,
    /// Trials for randomized refutation.
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also run the small-support cardinality and weighted-sum checks (lcm notion, k >= 2).
    #[arg(long)]
    ysmall: bool,
    /// Read the set from a file, or `-` for stdin (JSON array or whitespace separated).
    #[arg(long)]
    #[serde(skip)]
    input: Option<PathBuf>,
    /// Members of the set.
    values: Vec<u64>,
}

#[derive(Debug, Args, Serialize)]
struct LemmaLabArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random sets per derived map.
    #[arg(long, default_value_t = 500)]
    trials: usize,
    /// Random smooth integers for the block split.
    #[arg(long, default_value_t = 500)]
    block_trials: usize,
    /// Largest z for the exhaustive smooth-count check.
    #[arg(long, default_value_t = 200)]
    z_max: u64,
}

#[derive(Debug, Args, Serialize)]
struct SearchArgs {
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 1.0)]
    lam: f64,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, value_parser = parse_variant, default_value = "main")]
    variant: Variant,
    /// Node budget for branch and bound.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Bracket the smallest lambda at which the primes win instead.
    #[arg(long)]
    bracket: bool,
    #[arg(long, default_value_t = 1e-4)]
    tol: f64,
}

#[derive(Debug, Args, Serialize)]
struct CgsArgs {
    #[arg(long)]
    x: u64,
    #[arg(long, default_value_t = 1)]
    k: usize,
    /// Exponents at which to compare against the primes (repeatable).
    #[arg(long = "lam", default_values_t = [0.0, 0.5, 1.0])]
    lams: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Claim {
    Primeineq,
    Primeineq2,
    Claim1,
    Claim2,
    Ibound,
    Asymptotic,
    Goal2,
    Ysmall,
    Monotone,
}

#[derive(Debug, Args, Serialize)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_variant, default_value = "main")]
    variant: Variant,
    /// Checks to run.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "claim2")]
    claims: Vec<Claim>,
    /// Overrides the per-check default range start.
    #[arg(long)]
    k_from: Option<usize>,
    #[arg(long)]
    k_to: Option<usize>,
    /// Largest j for the termwise check.
    #[arg(long, default_value_t = 50)]
    j_max: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    /// Bound for the exhaustive small-support enumeration.
    #[arg(long, default_value_t = 50)]
    ysmall_max: u64,
    /// Worker threads; the output does not depend on it.
    #[arg(long, env = "KPRIM_JOBS", default_value_t = 1)]
    #[serde(skip)]
    jobs: usize,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse::<Variant>().map_err(|e| e.to_string())
}

type CmdResult = Result<(Document, bool), Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((doc, ok)) => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            if let Err(e) = doc.write(cli.format, &mut out).and_then(|_| Ok(out.flush()?)) {
                if !is_broken_pipe(e.as_ref()) {
                    eprintln!("kprim: {e}");
                    return ExitCode::from(2);
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("kprim: {e}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &(dyn std::error::Error + 'static)) -> bool {
    if let Some(io) = e.downcast_ref::<io::Error>() {
        return io.kind() == io::ErrorKind::BrokenPipe;
    }
    if let Some(c) = e.downcast_ref::<csv::Error>() {
        return matches!(c.kind(), csv::ErrorKind::Io(io) if io.kind() == io::ErrorKind::BrokenPipe);
    }
    e.downcast_ref::<serde_json::Error>().and_then(|j| j.io_error_kind()) == Some(io::ErrorKind::BrokenPipe)
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Sieve(a) => sieve(cli, a),
        Command::Constants(a) => constants(a),
        Command::Exponents(a) => exponents(cli, a),
        Command::Check(a) => check(a),
        Command::LemmaLab(a) => lemma_lab(a),
        Command::Search(a) => search(a),
        Command::ConstructCgs(a) => construct_cgs(cli, a),
        Command::Verify(a) => verify(cli, a),
    }
}

fn sieve(cli: &Cli, a: &SieveArgs) -> CmdResult {
    let table = PrimeTable::sieve(cli.sieve_limit)?;
    let mut result = serde_json::Map::new();
    result.insert("limit".into(), json!(table.limit()));
    result.insert("prime_count".into(), json!(table.len()));
    if let Some(n) = a.nth {
        result.insert("nth".into(), json!(table.nth_prime(n)?));
    }
    if let Some(x) = a.pi {
        result.insert("pi".into(), json!(table.prime_count(x)?));
    }
    if let Some(x) = a.theta {
        result.insert("theta".into(), json!(table.chebyshev_theta(x)?));
    }
    Ok((Document::new("sieve", a).with_result(result), true))
}

fn constants(a: &ConstantsArgs) -> CmdResult {
    let prec = Precision {
        rel_tol: a.rel_tol,
        max_terms: a.max_terms,
        bisect_tol: a.bisect_tol,
    };
    prec.validate()?;
    let mut result = serde_json::to_value(named_constants())?;
    let map = result.as_object_mut().expect("constants serialize as an object");
    if a.tau1 {
        map.insert("tau1".into(), json!(solve_tau1(&prec)?));
    }
    if a.erdos {
        map.insert("erdos".into(), json!(erdos_constant(&prec)?));
    }
    Ok((Document::new("constants", a).with_result(result), true))
}

#[derive(Serialize)]
struct ExponentRow {
    k: usize,
    p_k: u64,
    lambda: f64,
    theta: Option<f64>,
    nu: Option<f64>,
}

fn exponents(cli: &Cli, a: &ExponentsArgs) -> CmdResult {
    let k_from = a.k_from.unwrap_or(if a.variant == Variant::Strong { 2 } else { 1 });
    if k_from == 0 || k_from > a.k_to {
        return Err(format!("need 1 <= k-from <= k-to, got {}..{}", k_from, a.k_to).into());
    }
    let table = PrimeTable::sieve(cli.sieve_limit)?;
    let sched = ExponentSchedule::new(a.variant, &table);
    let rows = (k_from..=a.k_to)
        .map(|k| {
            Ok(ExponentRow {
                k,
                p_k: sched.prime(k)?,
                lambda: sched.lambda(k)?,
                theta: sched.theta(k).ok(),
                nu: sched.nu(k).ok(),
            })
        })
        .collect::<kprimitive::Result<Vec<_>>>()?;
    Ok((Document::new("exponents", a).with_result(rows), true))
}

fn read_set(a: &CheckArgs) -> Result<Vec<u64>, Box<dyn std::error::Error>> {
    let mut values = a.values.clone();
    if let Some(path) = &a.input {
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        } else {
            std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
        };
        values.extend(input::parse_set(&text)?);
    }
    if values.is_empty() {
        return Err("no set given; pass values or --input".into());
    }
    Ok(values)
}

fn check(a: &CheckArgs) -> CmdResult {
    let values = read_set(a)?;
    let set = CandidateSet::new(values)?;
    let notion = Variant::from(a.notion);
    let opts = PrimitivityOptions {
        cap: a.cap,
        single_j: a.single_j,
    };
    let mut result = serde_json::Map::new();
    result.insert("set".into(), json!(set.values()));
    let verdict = if set.len() <= a.cap {
        let out = check_primitive(&set, a.k, notion, &opts)?;
        result.insert("method".into(), json!("exact"));
        result.insert("primitive".into(), json!(out.primitive));
        result.insert("witness".into(), serde_json::to_value(&out.witness)?);
        Some(out.primitive)
    } else {
        if a.single_j {
            return Err("--single-j needs the exact check; raise --cap".into());
        }
        result.insert("method".into(), json!("randomized"));
        match refute_randomized(&set, a.k, notion, a.trials, a.seed)? {
            RandomVerdict::Refuted(w) => {
                result.insert("primitive".into(), json!(false));
                result.insert("witness".into(), serde_json::to_value(&w)?);
                Some(false)
            }
            RandomVerdict::Unknown => {
                result.insert("primitive".into(), serde_json::Value::Null);
                result.insert("witness".into(), serde_json::Value::Null);
                None
            }
        }
    };
    let mut ok = verdict == Some(true);
    if a.ysmall {
        if notion != Variant::Lcm {
            return Err("--ysmall applies to the lcm notion".into());
        }
        let report = check_ysmall(&set, a.k, &YSMALL_DEFAULT_LAMBDAS)?;
        ok &= report.passed();
        result.insert("ysmall_passed".into(), json!(report.passed()));
        result.insert("ysmall".into(), serde_json::to_value(&report)?);
    }
    Ok((Document::new("check", a).with_result(result), ok))
}

fn lemma_lab(a: &LemmaLabArgs) -> CmdResult {
    let mut rows = vec![
        serde_json::to_value(derived_map_trials(Variant::Lcm, a.trials, a.seed)?)?,
        serde_json::to_value(derived_map_trials(Variant::Strong, a.trials, a.seed)?)?,
        serde_json::to_value(block_split_trials(a.block_trials, a.seed)?)?,
    ];
    let mut ok = rows.iter().all(|r| r["violations"].as_array().is_some_and(|v| v.is_empty()));
    let mut smooth_violations = Vec::new();
    let mut smooth_cases = 0usize;
    for z in (20..=a.z_max).step_by(20) {
        for k in [2usize, 3] {
            let c = smooth_count_check(z, k, 1.0 / k as f64)?;
            smooth_cases += 1;
            if !c.passed() {
                smooth_violations.push(format!("z={z} k={k}: {} members > {:.4}", c.max_set.len(), c.bound));
            }
        }
    }
    ok &= smooth_violations.is_empty();
    rows.push(json!({
        "property": "smooth_count",
        "seed": a.seed,
        "trials": smooth_cases,
        "skipped": 0,
        "violations": smooth_violations,
    }));
    Ok((Document::new("lemma-lab", a).with_result(rows), ok))
}

fn search(a: &SearchArgs) -> CmdResult {
    let doc = Document::new("search", a);
    if a.bracket {
        let b = bracket_tau(a.n, a.k, a.variant, a.tol)?;
        return Ok((doc.with_result(b), true));
    }
    let r = max_weighted_sum(a.n, a.lam, a.k, a.variant, a.budget)?;
    let primes_win = r.primes_win();
    let mut v = serde_json::to_value(&r)?;
    v.as_object_mut().expect("object").insert("primes_win".into(), json!(primes_win));
    Ok((doc.with_result(v), true))
}

fn construct_cgs(cli: &Cli, a: &CgsArgs) -> CmdResult {
    let table = PrimeTable::sieve(cli.sieve_limit)?;
    let c = cgs_construct(a.x, a.k, &table, &a.lams)?;
    let reports = c.reports.clone();
    let mut summary = serde_json::to_value(&c)?;
    summary.as_object_mut().expect("object").remove("reports");
    Ok((Document::new("construct-cgs", a).with_result(summary).with_reports(reports), true))
}

fn verify(cli: &Cli, a: &VerifyArgs) -> CmdResult {
    let table = PrimeTable::sieve(cli.sieve_limit)?;
    let variant = a.variant;
    let range = |from: usize, to: usize| (a.k_from.unwrap_or(from), a.k_to.unwrap_or(to));
    let mut reports: Vec<MarginReport> = Vec::new();
    for claim in &a.claims {
        match claim {
            Claim::Primeineq => {
                if variant == Variant::Strong {
                    reports.extend(verify_strong_base(&table)?);
                } else {
                    let (_, to) = range(1, table.len().min(9592));
                    reports.extend(verify_lemma_primeineq(&table, to)?);
                }
            }
            Claim::Primeineq2 => {
                let xs: Vec<f64> = (1..=6).map(|e| 10f64.powi(e)).filter(|&x| x <= table.limit() as f64).collect();
                reports.extend(kprimitive::primes::check_rs_theta_bounds(&table, &xs)?);
            }
            Claim::Claim1 => {
                let (from, to) = range(2, 50);
                reports.extend(fan_out(from, to, a.jobs, |lo, hi| {
                    let mut out = Vec::new();
                    for k in lo..=hi {
                        out.extend(claim1_check(&table, k, a.j_max, variant)?);
                    }
                    Ok(out)
                })?);
            }
            Claim::Claim2 => {
                let default_from = if variant == Variant::Lcm { 2 } else { 3 };
                let (from, to) = range(default_from, MARGIN_FROM - 1);
                reports.extend(fan_out(from, to, a.jobs, |lo, hi| claim2_check(&table, variant, lo, hi))?);
            }
            Claim::Ibound => {
                let default_from = if variant == Variant::Lcm { 2 } else { 3 };
                let (from, to) = range(default_from, MARGIN_FROM - 1);
                reports.extend(fan_out(from, to, a.jobs, |lo, hi| i_bound_check(&table, variant, lo, hi))?);
            }
            Claim::Asymptotic => {
                let (from, to) = range(MARGIN_FROM, 1000);
                reports.extend(fan_out(from, to, a.jobs, |lo, hi| asymptotic_leg_check(&table, variant, lo, hi))?);
            }
            Claim::Goal2 => {
                let (from, to) = range(STRONG_FROM, 1000);
                reports.extend(fan_out(from, to, a.jobs, |lo, hi| strong_goal_check(&table, lo, hi))?);
            }
            Claim::Ysmall => {
                let (from, to) = range(2, 3);
                for k in from.max(2)..=to {
                    let s = ysmall_exhaustive(a.ysmall_max, k, &YSMALL_DEFAULT_LAMBDAS)?;
                    reports.push(
                        MarginReport::less_eq("ysmall_violations", s.violations.len() as f64, 0.0)
                            .with_k(k as u64)
                            .with_x(a.ysmall_max as f64)
                            .term("sets_checked", s.sets_checked as f64)
                            .claim("every lcm k-primitive set with at most k primes has at most that many members and a smaller weighted sum than its primes"),
                    );
                }
            }
            Claim::Monotone => {
                let s = monotone_exponent_property(a.trials, a.seed);
                reports.push(
                    MarginReport::less_eq("monotone_counterexamples", s.counterexamples.len() as f64, 0.0)
                        .term("trials", s.trials as f64)
                        .term("hypothesis_held", s.hypothesis_held as f64)
                        .term("larger_exponents_checked", s.larger_exponents_checked as f64)
                        .claim("a nonnegative difference of Dirichlet sums at one exponent stays nonnegative at every larger exponent"),
                );
            }
        }
    }
    let ok = all_pass(&reports);
    Ok((Document::new("verify", a).with_reports(reports), ok))
}
