//! Command-line interface for the plateau census library.
//!
//! Subcommands: `factor` (cyclic factorization of x^n - 1), `genpoly`
//! (generating polynomial of a family), `counts` (plateau distribution
//! with bent/semi-bent extraction and printed-corollary comparison),
//! `weights` (Reed-Muller subcode weight enumerator), and `verify`
//! (theorem vs independent-oracle sweep).
//!
//! Every subcommand accepts `--json`. Big integers cross the JSON
//! boundary as decimal strings. Output is deterministic: byte-identical
//! across runs and across worker counts.

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use plateau_core::census::{
    gen_poly, gen_poly_via_propositions, printed_corollaries, special_counts, FamilyId,
    FamilyTag, PlateauDistribution,
};
use plateau_core::factorization::{factor_cyclic, split_p_part};
use plateau_core::fieldpoly::{FpPoly, PrimeModulus};
use plateau_core::oracle::{
    enumerate_range, family_evaluations, plateau_s, EvalContext, QuadraticFunction,
    DEFAULT_ENUM_BUDGET,
};
use plateau_core::rmcode::{code_params, weight_enumerator};

/// Exit status for a verification mismatch (usage errors use 2, which
/// is also what clap produces for malformed invocations).
const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "plateau",
    about = "Exact plateau-parameter censuses for quadratic function families",
    version
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    C1,
    C2,
    D,
}

impl FamilyArg {
    fn tag(self) -> FamilyTag {
        match self {
            FamilyArg::C1 => FamilyTag::C1,
            FamilyArg::C2 => FamilyTag::C2,
            FamilyArg::D => FamilyTag::D,
        }
    }
}

#[derive(Args)]
struct FamilySelector {
    /// Function family: C1, C2 (p = 2), or D (odd p).
    #[arg(long, value_enum, ignore_case = true)]
    family: FamilyArg,

    /// Field characteristic (defaults to 2 for c1/c2).
    #[arg(short)]
    p: Option<u64>,

    /// Extension degree n.
    #[arg(short)]
    n: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Factor x^n - 1 over F_p into irreducible factors.
    Factor {
        /// Field characteristic.
        #[arg(short)]
        p: u64,
        /// Exponent n of x^n - 1.
        #[arg(short)]
        n: u64,
    },
    /// Print the generating polynomial of a family (coefficient of z^t
    /// counts the (n - t)-plateaued members).
    Genpoly {
        #[command(flatten)]
        sel: FamilySelector,
        /// Print only the coefficient of z^k (text mode).
        #[arg(long)]
        coeff: Option<u64>,
    },
    /// Print the plateau distribution with bent and semi-bent counts
    /// and the printed-corollary comparison.
    Counts {
        #[command(flatten)]
        sel: FamilySelector,
    },
    /// Print the weight enumerator of the Reed-Muller subcode attached
    /// to a binary family.
    Weights {
        #[command(flatten)]
        sel: FamilySelector,
    },
    /// Check the generating-polynomial routes against independent
    /// oracles across a sweep of family instances.
    Verify {
        /// Restrict the sweep to one family.
        #[arg(long, value_enum, ignore_case = true)]
        family: Option<FamilyArg>,
        /// Restrict the sweep to one characteristic.
        #[arg(short)]
        p: Option<u64>,
        /// Largest n to sweep (default 12).
        #[arg(long = "max-n", default_value_t = 12)]
        max_n: u64,
        /// Also cross-validate every function's Walsh spectrum.
        #[arg(long)]
        walsh: bool,
        /// Evaluation budget for enumeration (overrides PLATEAU_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
        /// Worker threads for enumeration (default: available cores).
        #[arg(long)]
        workers: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Factor { p, n } => cmd_factor(*p, *n, cli.json),
        Command::Genpoly { sel, coeff } => cmd_genpoly(sel, *coeff, cli.json),
        Command::Counts { sel } => cmd_counts(sel, cli.json),
        Command::Weights { sel } => cmd_weights(sel, cli.json),
        Command::Verify { family, p, max_n, walsh, budget, workers } => {
            cmd_verify(*family, *p, *max_n, *walsh, *budget, *workers, cli.json)
        }
    }
}

fn parse_prime(p: u64) -> Result<PrimeModulus, String> {
    PrimeModulus::new(p).map_err(|e| e.to_string())
}

impl FamilySelector {
    fn resolve(&self) -> Result<FamilyId, String> {
        let p = match (self.family, self.p) {
            (FamilyArg::C1 | FamilyArg::C2, None) => 2,
            (_, Some(p)) => p,
            (FamilyArg::D, None) => {
                return Err("family d requires -p (an odd prime)".into());
            }
        };
        let p = parse_prime(p)?;
        FamilyId::new(self.family.tag(), p, self.n).map_err(|e| e.to_string())
    }
}

/// Conventional display, highest power first: "x^3 + 2x + 1".
fn poly_display(poly: &FpPoly) -> String {
    let coeffs = poly.coeffs();
    if coeffs.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        let var = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        parts.push(format!("{coeff}{var}"));
    }
    parts.join(" + ")
}

fn emit(value: Value) {
    println!("{}", value);
}

fn cmd_factor(p: u64, n: u64, as_json: bool) -> Result<ExitCode, String> {
    let p = parse_prime(p)?;
    if n == 0 {
        return Err("n must be positive".into());
    }
    let factors = factor_cyclic(n, p).map_err(|e| e.to_string())?;
    let (m, v, _pv) = split_p_part(n, p.get());
    if as_json {
        let rows: Vec<Value> = factors
            .iter()
            .map(|f| {
                json!({
                    "poly": f.poly.coeffs(),
                    "degree": f.poly.degree().unwrap_or(0),
                    "multiplicity": f.multiplicity,
                })
            })
            .collect();
        emit(json!({
            "p": p.get(),
            "n": n,
            "v": v,
            "m": m,
            "factors": rows,
        }));
    } else {
        println!("x^{} - 1 over F_{}: v = {}, m = {}", n, p.get(), v, m);
        for f in &factors {
            if f.multiplicity == 1 {
                println!("  {}", poly_display(&f.poly));
            } else {
                println!("  ({})^{}", poly_display(&f.poly), f.multiplicity);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_genpoly(sel: &FamilySelector, coeff: Option<u64>, as_json: bool) -> Result<ExitCode, String> {
    let family = sel.resolve()?;
    let g = gen_poly(family);
    if as_json {
        let coeffs: Vec<String> = g.coeffs().iter().map(|c| c.to_string()).collect();
        emit(json!({
            "p": family.p().get(),
            "n": family.n(),
            "family": family.tag().name(),
            "coefficients": coeffs,
        }));
    } else if let Some(k) = coeff {
        println!("{}", g.coeff(k as usize));
    } else {
        println!(
            "generating polynomial for {} p={} n={}",
            family.tag().name(),
            family.p().get(),
            family.n()
        );
        for (t, c) in g.coeffs().iter().enumerate() {
            println!("  z^{t}: {c}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn corollary_value(num: &BigInt, den: u32) -> String {
    if den == 1 {
        num.to_string()
    } else {
        format!("{num}/{den}")
    }
}

fn cmd_counts(sel: &FamilySelector, as_json: bool) -> Result<ExitCode, String> {
    let family = sel.resolve()?;
    let g = gen_poly(family);
    let dist = PlateauDistribution::from_gen_poly(family, &g);
    let special = special_counts(family);
    let reports = printed_corollaries(family);
    if as_json {
        let counts: BTreeMap<String, String> = dist
            .counts()
            .iter()
            .map(|(s, c)| (s.to_string(), c.to_string()))
            .collect();
        let corollaries: Vec<Value> = reports
            .iter()
            .map(|r| {
                json!({
                    "kind": r.kind,
                    "num": r.num.to_string(),
                    "den": r.den,
                    "theorem": r.theorem.to_string(),
                    "agrees": r.agrees,
                    "annotation": r.annotation,
                })
            })
            .collect();
        emit(json!({
            "p": family.p().get(),
            "n": family.n(),
            "family": family.tag().name(),
            "size": family.size().to_string(),
            "counts": counts,
            "bent": special.bent.to_string(),
            "semibent": special.semibent.to_string(),
            "corollaries": corollaries,
        }));
    } else {
        println!(
            "plateau distribution for {} p={} n={} (size {})",
            family.tag().name(),
            family.p().get(),
            family.n(),
            family.size()
        );
        for (s, c) in dist.counts() {
            println!("  s={s}: {c}");
        }
        println!("bent: {}", special.bent);
        println!("semibent: {}", special.semibent);
        for r in &reports {
            let printed = corollary_value(&r.num, r.den);
            if r.agrees {
                println!("corollary {}: {} (agrees)", r.kind, printed);
            } else {
                println!(
                    "corollary {}: {} != {} [{}]",
                    r.kind,
                    printed,
                    r.theorem,
                    r.annotation.expect("disagreement carries the label"),
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_weights(sel: &FamilySelector, as_json: bool) -> Result<ExitCode, String> {
    let family = sel.resolve()?;
    let enumerator = weight_enumerator(family).map_err(|e| e.to_string())?;
    let params = code_params(family).ok();
    if as_json {
        let rows: Vec<Value> = enumerator
            .rows
            .iter()
            .map(|r| json!({"weight": r.weight, "multiplicity": r.multiplicity.to_string()}))
            .collect();
        let code = params.map(|c| json!([c.length, c.dimension, c.min_distance]));
        emit(json!({
            "p": family.p().get(),
            "n": family.n(),
            "family": family.tag().name(),
            "rows": rows,
            "total": enumerator.total().to_string(),
            "code": code,
        }));
    } else {
        println!(
            "weight enumerator for {} p={} n={} ({} codewords)",
            family.tag().name(),
            family.p().get(),
            family.n(),
            enumerator.total()
        );
        for r in &enumerator.rows {
            println!("  {}: {}", r.weight, r.multiplicity);
        }
        if let Some(c) = params {
            println!("code: [{}, {}, {}]", c.length, c.dimension, c.min_distance);
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// One family instance in the verify sweep.
struct SweepItem {
    family: FamilyId,
}

/// Outcome of checking one instance.
struct InstanceOutcome {
    family: FamilyId,
    enumerated: Option<u64>,
    enum_skipped: bool,
    walsh_checked: Option<u64>,
    walsh_skipped: bool,
    mismatch: Option<Mismatch>,
}

struct Mismatch {
    s: u64,
    theorem: BigInt,
    observed: BigInt,
    route: &'static str,
}

fn resolve_budget(flag: Option<u64>) -> Result<u64, String> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("PLATEAU_BUDGET") {
        Ok(s) => s
            .trim()
            .parse::<u64>()
            .map_err(|_| format!("PLATEAU_BUDGET is not a valid integer: {s:?}")),
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_ENUM_BUDGET),
        Err(e) => Err(format!("PLATEAU_BUDGET is unreadable: {e}")),
    }
}

fn build_sweep(
    family: Option<FamilyArg>,
    p: Option<u64>,
    max_n: u64,
) -> Result<Vec<SweepItem>, String> {
    let two = parse_prime(2)?;
    let mut items = Vec::new();
    let tags: Vec<FamilyTag> = match family {
        Some(f) => vec![f.tag()],
        None => match p {
            Some(2) => vec![FamilyTag::C1, FamilyTag::C2],
            Some(_) => vec![FamilyTag::D],
            None => vec![FamilyTag::C1, FamilyTag::C2, FamilyTag::D],
        },
    };
    for tag in tags {
        match tag {
            FamilyTag::C1 | FamilyTag::C2 => {
                if let Some(q) = p {
                    if q != 2 {
                        return Err(format!(
                            "family {} requires p = 2, got {q}",
                            tag.name()
                        ));
                    }
                }
                let start = if tag == FamilyTag::C2 { 2 } else { 1 };
                let step = if tag == FamilyTag::C2 { 2 } else { 1 };
                let mut n = start;
                while n <= max_n {
                    items.push(SweepItem {
                        family: FamilyId::new(tag, two, n).map_err(|e| e.to_string())?,
                    });
                    n += step;
                }
            }
            FamilyTag::D => {
                let primes: Vec<u64> = match p {
                    Some(2) => {
                        return Err("family d requires an odd prime".into());
                    }
                    Some(q) => vec![q],
                    None => vec![3, 5, 7],
                };
                for q in primes {
                    let q = parse_prime(q)?;
                    for n in 1..=max_n {
                        items.push(SweepItem {
                            family: FamilyId::new(FamilyTag::D, q, n)
                                .map_err(|e| e.to_string())?,
                        });
                    }
                }
            }
        }
    }
    Ok(items)
}

/// Enumerates a family's distribution by fanning contiguous index
/// ranges out to worker threads and merging the per-worker histograms
/// by addition, which makes the result independent of worker count.
fn parallel_enumerate(family: FamilyId, workers: usize) -> BTreeMap<u64, u64> {
    let total = family_evaluations(family);
    if workers <= 1 || total < 1024 {
        return enumerate_range(family, 0, total);
    }
    let workers = workers.min(total as usize);
    let chunk = total.div_ceil(workers as u64);
    let mut merged: BTreeMap<u64, u64> = BTreeMap::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..workers as u64 {
            let start = (w * chunk).min(total);
            let end = ((w + 1) * chunk).min(total);
            handles.push(scope.spawn(move || enumerate_range(family, start, end)));
        }
        for h in handles {
            for (s, c) in h.join().expect("enumeration worker panicked") {
                *merged.entry(s).or_insert(0) += c;
            }
        }
    });
    merged
}

/// Checks every function's Walsh spectrum against the gcd route,
/// returning the lowest-index violation as (s, detail).
fn walsh_check(ctx: &EvalContext, workers: usize) -> Result<u64, Mismatch> {
    let family = ctx.family();
    let total = family_evaluations(family);
    let workers = workers.clamp(1, total.max(1) as usize);
    let chunk = total.div_ceil(workers as u64);
    let mut first: Option<(u64, Mismatch)> = None;
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..workers as u64 {
            let start = (w * chunk).min(total);
            let end = ((w + 1) * chunk).min(total);
            handles.push(scope.spawn(move || -> Option<(u64, Mismatch)> {
                for idx in start..end {
                    let f = QuadraticFunction::from_index(family, idx);
                    let s = plateau_s(&f);
                    let report = ctx.walsh_spectrum(&f);
                    let p = family.p().get();
                    let expected_support = p.pow((family.n() - s) as u32);
                    let fine = report.s_from_spectrum == s
                        && report.magnitudes_ok
                        && report.parseval_ok
                        && report.support_size == expected_support;
                    if !fine {
                        return Some((
                            idx,
                            Mismatch {
                                s,
                                theorem: BigInt::from(s),
                                observed: BigInt::from(report.s_from_spectrum),
                                route: "walsh",
                            },
                        ));
                    }
                }
                None
            }));
        }
        for h in handles {
            if let Some((idx, m)) = h.join().expect("walsh worker panicked") {
                if first.as_ref().map_or(true, |(best, _)| idx < *best) {
                    first = Some((idx, m));
                }
            }
        }
    });
    match first {
        Some((_, m)) => Err(m),
        None => Ok(total),
    }
}

/// Compares the three routes for one instance.
fn check_instance(
    family: FamilyId,
    budget: u64,
    workers: usize,
    walsh: bool,
) -> InstanceOutcome {
    let mut outcome = InstanceOutcome {
        family,
        enumerated: None,
        enum_skipped: false,
        walsh_checked: None,
        walsh_skipped: false,
        mismatch: None,
    };

    // Route agreement: closed-form product vs divisor-sum propositions.
    let g = gen_poly(family);
    let g_prop = gen_poly_via_propositions(family);
    if g != g_prop {
        let n = family.n() as usize;
        for t in 0..=n {
            if g.coeff(t) != g_prop.coeff(t) {
                outcome.mismatch = Some(Mismatch {
                    s: (n - t) as u64,
                    theorem: g.coeff(t),
                    observed: g_prop.coeff(t),
                    route: "propositions",
                });
                return outcome;
            }
        }
    }
    let theorem = PlateauDistribution::from_gen_poly(family, &g);

    // Independent enumeration through the gcd criterion.
    let required = family_evaluations(family);
    if required <= budget {
        let observed = parallel_enumerate(family, workers);
        outcome.enumerated = Some(required);
        for s in 0..=family.n() {
            let got = BigInt::from(observed.get(&s).copied().unwrap_or(0));
            let want = theorem.count_for(s);
            if got != want {
                outcome.mismatch = Some(Mismatch {
                    s,
                    theorem: want,
                    observed: got,
                    route: "enumeration",
                });
                return outcome;
            }
        }
    } else {
        outcome.enum_skipped = true;
    }

    // Spectral cross-validation.
    if walsh {
        match EvalContext::new(family) {
            Ok(ctx) => match walsh_check(&ctx, workers) {
                Ok(count) => outcome.walsh_checked = Some(count),
                Err(m) => {
                    outcome.mismatch = Some(m);
                    return outcome;
                }
            },
            Err(_) => outcome.walsh_skipped = true,
        }
    }
    outcome
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map(|v| v.get()).unwrap_or(1).min(16)
}

fn cmd_verify(
    family: Option<FamilyArg>,
    p: Option<u64>,
    max_n: u64,
    walsh: bool,
    budget: Option<u64>,
    workers: Option<usize>,
    as_json: bool,
) -> Result<ExitCode, String> {
    let budget = resolve_budget(budget)?;
    let workers = match workers {
        Some(0) => return Err("--workers must be at least 1".into()),
        Some(w) => w,
        None => default_workers(),
    };
    let sweep = build_sweep(family, p, max_n)?;
    if sweep.is_empty() {
        return Err("the requested sweep is empty".into());
    }

    let mut instances = Vec::new();
    let mut failure: Option<InstanceOutcome> = None;
    for item in &sweep {
        let outcome = check_instance(item.family, budget, workers, walsh);
        let failed = outcome.mismatch.is_some();
        instances.push(outcome);
        if failed {
            failure = Some(instances.pop().expect("just pushed"));
            break;
        }
    }

    if as_json {
        let rows: Vec<Value> = instances.iter().map(instance_json).collect();
        let status = if failure.is_some() { "mismatch" } else { "ok" };
        let first_mismatch = failure.as_ref().map(|o| {
            let m = o.mismatch.as_ref().expect("failure carries mismatch");
            json!({
                "family": o.family.tag().name(),
                "p": o.family.p().get(),
                "n": o.family.n(),
                "s": m.s,
                "route": m.route,
                "theorem": m.theorem.to_string(),
                "observed": m.observed.to_string(),
            })
        });
        emit(json!({
            "status": status,
            "budget": budget,
            "instances": rows,
            "first_mismatch": first_mismatch,
        }));
    } else {
        for o in &instances {
            println!("{}", instance_line(o));
        }
        if let Some(o) = &failure {
            let m = o.mismatch.as_ref().expect("failure carries mismatch");
            println!(
                "MISMATCH family={} p={} n={} s={} ({}): theorem {} vs {}",
                o.family.tag().name(),
                o.family.p().get(),
                o.family.n(),
                m.s,
                m.route,
                m.theorem,
                m.observed,
            );
        } else {
            println!("all {} instances verified", instances.len());
        }
    }
    Ok(if failure.is_some() {
        ExitCode::from(EXIT_MISMATCH)
    } else {
        ExitCode::SUCCESS
    })
}

fn instance_line(o: &InstanceOutcome) -> String {
    let mut line = format!(
        "{} p={} n={}: routes ok",
        o.family.tag().name(),
        o.family.p().get(),
        o.family.n()
    );
    if let Some(count) = o.enumerated {
        line.push_str(&format!(", enumeration ok ({count} functions)"));
    } else if o.enum_skipped {
        line.push_str(", enumeration skipped (budget)");
    }
    if let Some(count) = o.walsh_checked {
        line.push_str(&format!(", walsh ok ({count} spectra)"));
    } else if o.walsh_skipped {
        line.push_str(", walsh skipped (limit)");
    }
    line
}

fn instance_json(o: &InstanceOutcome) -> Value {
    json!({
        "family": o.family.tag().name(),
        "p": o.family.p().get(),
        "n": o.family.n(),
        "routes": "ok",
        "enumerated": o.enumerated,
        "enum_skipped": o.enum_skipped,
        "walsh_checked": o.walsh_checked,
        "walsh_skipped": o.walsh_skipped,
    })
}
