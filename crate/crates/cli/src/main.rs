mod cache;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use orthodontia::families::{self, InnerOmega};
use orthodontia::lascouxbasis::{self, positivity_check, Outcome, ScanRecord, ScanSummary};
use orthodontia::pipedreams::{enumerate_pd, weight_sum};
use orthodontia::sortorder::{is_sorted, os_covers, primary_column_data, sigma_of, sort_of};
use orthodontia::suites::{run_suite, Suite, SuiteOptions};
use orthodontia::{Composition, Diagram, Error, OsEndpoint, Permutation, Polynomial};
use serde_json::{json, Value};

use report::{print_json, RunReport, Summary, EXIT_FAILURE, EXIT_OK, EXIT_USAGE};

#[derive(Parser)]
#[command(name = "orthodontia", version, about = "Exact computations with Schubert, Grothendieck and Lascoux polynomials")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores). Results do not depend on this.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one polynomial.
    Poly(PolyArgs),
    /// Enumerate the pipe dreams of a permutation.
    Pipedreams(PipeDreamArgs),
    /// Print the orthodontic sequence (K, i, j, M) of a diagram.
    Orthodontia(OrthodontiaArgs),
    /// Primary column data, sorting and predecessors of a permutation.
    Sortorder(SortorderArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Scan a family of instances for Lascoux positivity.
    Scan(ScanArgs),
    /// Check a single instance.
    Check(CheckArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    DoubleGrothendieck,
    DoubleSchubert,
    Grothendieck,
    Schubert,
    Lascoux,
    Key,
    StableGrothendieck,
    #[value(name = "script-G")]
    ScriptG,
    #[value(name = "script-S")]
    ScriptS,
}

#[derive(Args)]
struct PolyArgs {
    family: FamilyName,
    #[arg(long)]
    w: Option<Permutation>,
    #[arg(long)]
    alpha: Option<Composition>,
    #[arg(long)]
    diagram: Option<Diagram>,
    /// Number of variables for stable Grothendieck polynomials.
    #[arg(long, default_value_t = 3)]
    nvars: usize,
    /// Print a LaTeX sum.
    #[arg(long)]
    latex: bool,
    /// Use unbarred nested omega factors in script-G.
    #[arg(long)]
    unbarred_inner_omega: bool,
}

#[derive(Args)]
struct PipeDreamArgs {
    #[arg(long)]
    w: Permutation,
    /// Print only the number of pipe dreams.
    #[arg(long)]
    count: bool,
    /// Print the pipe dreams as a JSON array.
    #[arg(long)]
    emit_json: bool,
}

#[derive(Args)]
struct OrthodontiaArgs {
    #[arg(long, conflicts_with = "w", required_unless_present = "w")]
    diagram: Option<Diagram>,
    /// Use the Rothe diagram of this permutation.
    #[arg(long)]
    w: Option<Permutation>,
    /// Run the steps even when the diagram contains the forbidden pattern.
    #[arg(long)]
    allow_any: bool,
}

#[derive(Args)]
struct SortorderArgs {
    #[arg(long)]
    w: Permutation,
    #[arg(long, value_enum, default_value = "alpha-plus-one")]
    os_endpoint: Endpoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum Endpoint {
    Alpha,
    AlphaPlusOne,
}

impl From<Endpoint> for OsEndpoint {
    fn from(e: Endpoint) -> Self {
        match e {
            Endpoint::Alpha => OsEndpoint::Alpha,
            Endpoint::AlphaPlusOne => OsEndpoint::AlphaPlusOne,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    suite: Suite,
    #[arg(long, default_value_t = 4)]
    nmax: usize,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long)]
    unbarred_inner_omega: bool,
    #[arg(long, value_enum, default_value = "alpha-plus-one")]
    os_endpoint: Endpoint,
}

#[derive(Args)]
struct ScanArgs {
    #[command(subcommand)]
    target: ScanTarget,
}

#[derive(Subcommand)]
enum ScanTarget {
    /// Every diagram without the forbidden pattern in [n] x [m].
    #[command(name = "conj14")]
    PercentAvoiding {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// phi_i applied to L_alpha for alpha in [0, max-entry]^n.
    #[command(name = "conj15")]
    PhiLascoux {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        max_entry: u32,
    },
    /// Rothe diagrams of the vexillary permutations in S_nmax.
    #[command(name = "thm12-vexillary")]
    Vexillary {
        #[arg(long)]
        nmax: usize,
    },
}

#[derive(Args)]
struct CheckArgs {
    #[command(subcommand)]
    target: CheckTarget,
}

#[derive(Subcommand)]
enum CheckTarget {
    /// Lascoux positivity of one diagram with columns ordered by inclusion.
    #[command(name = "thm12")]
    Positivity {
        #[arg(long, conflicts_with = "w", required_unless_present = "w")]
        diagram: Option<Diagram>,
        #[arg(long)]
        w: Option<Permutation>,
        /// Skip the inclusion-order precondition.
        #[arg(long)]
        relax: bool,
    },
}

/// A failure that is the caller's fault.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

type CmdResult = Result<ExitCode, Usage>;

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    if let Some(k) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(k.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let ctx = Context { json: cli.json, argv: argv[1..].to_vec(), started: Instant::now() };
    let result = match cli.command {
        Command::Poly(a) => cmd_poly(&ctx, a),
        Command::Pipedreams(a) => cmd_pipedreams(&ctx, a),
        Command::Orthodontia(a) => cmd_orthodontia(&ctx, a),
        Command::Sortorder(a) => cmd_sortorder(&ctx, a),
        Command::Verify(a) => cmd_verify(&ctx, a),
        Command::Scan(a) => cmd_scan(&ctx, a.target),
        Command::Check(a) => cmd_check(&ctx, a.target),
    };
    result.unwrap_or_else(|Usage(msg)| {
        eprintln!("error: {msg}");
        ExitCode::from(EXIT_USAGE)
    })
}

struct Context {
    json: bool,
    argv: Vec<String>,
    started: Instant,
}

fn need<T: Clone>(value: &Option<T>, flag: &str, family: &str) -> Result<T, Usage> {
    value.clone().ok_or_else(|| Usage(format!("{family} needs --{flag}")))
}

fn diagram_or_rothe(diagram: &Option<Diagram>, w: &Option<Permutation>) -> Result<Diagram, Usage> {
    match (diagram, w) {
        (Some(d), _) => Ok(d.clone()),
        (None, Some(w)) => Ok(Diagram::rothe(w)),
        (None, None) => Err(Usage("pass --diagram or --w".into())),
    }
}

fn cmd_poly(ctx: &Context, a: PolyArgs) -> CmdResult {
    use FamilyName::*;
    let inner = if a.unbarred_inner_omega { InnerOmega::Unbarred } else { InnerOmega::Barred };
    let name = a.family.to_possible_value().expect("no skipped variants").get_name().to_string();
    let poly: Polynomial = match a.family {
        DoubleGrothendieck => families::double_grothendieck(&need(&a.w, "w", &name)?),
        DoubleSchubert => families::double_schubert(&need(&a.w, "w", &name)?),
        Grothendieck => families::grothendieck(&need(&a.w, "w", &name)?),
        Schubert => families::schubert(&need(&a.w, "w", &name)?),
        Lascoux => families::lascoux(&need(&a.alpha, "alpha", &name)?),
        Key => families::key(&need(&a.alpha, "alpha", &name)?),
        StableGrothendieck => families::stable_grothendieck(&need(&a.w, "w", &name)?, a.nvars)?,
        ScriptG => families::script_g(&diagram_or_rothe(&a.diagram, &a.w)?, inner)?,
        ScriptS => families::script_s(&diagram_or_rothe(&a.diagram, &a.w)?)?,
    };
    if ctx.json {
        print_json(&poly);
    } else if a.latex {
        println!("{}", poly.to_latex());
    } else {
        println!("{poly}");
    }
    Ok(ExitCode::from(EXIT_OK))
}

fn cmd_pipedreams(ctx: &Context, a: PipeDreamArgs) -> CmdResult {
    let pds = enumerate_pd(&a.w)?;
    if a.count {
        if ctx.json {
            print_json(&json!({ "w": a.w, "count": pds.len() }));
        } else {
            println!("{}", pds.len());
        }
    } else if a.emit_json || ctx.json {
        print_json(&pds);
    } else {
        println!("{} pipe dreams for {}", pds.len(), a.w);
        for p in &pds {
            let cells: Vec<String> = p.crosses().iter().map(|(i, j)| format!("({i},{j})")).collect();
            println!("  {}", cells.join(" "));
        }
        println!("signed weight sum: {}", weight_sum(&a.w)?);
    }
    Ok(ExitCode::from(EXIT_OK))
}

fn cmd_orthodontia(ctx: &Context, a: OrthodontiaArgs) -> CmdResult {
    let d = diagram_or_rothe(&a.diagram, &a.w)?;
    let s = d.orthodontia(a.allow_any)?.sequence;
    if ctx.json {
        print_json(&json!({ "diagram": d.to_string(), "K": s.k, "i": s.i, "j": s.j, "M": s.m }));
    } else {
        println!("diagram: {d}");
        println!("K: {:?}", s.k);
        println!("i: {:?}", s.i);
        println!("j: {:?}", s.j);
        println!("M: {:?}", s.m);
    }
    Ok(ExitCode::from(EXIT_OK))
}

fn cmd_sortorder(ctx: &Context, a: SortorderArgs) -> CmdResult {
    let w = a.w;
    let p = primary_column_data(&w);
    let sigma = sigma_of(&w);
    let sorted = sort_of(&w);
    let covers = os_covers(&w, a.os_endpoint.into())?;
    if ctx.json {
        print_json(&json!({
            "w": w,
            "primary": p,
            "sigma": sigma,
            "sorted": is_sorted(&w),
            "w_sort": sorted,
            "predecessors": covers,
        }));
    } else {
        println!("w: {w}");
        println!("h = {}, C = {:?}, alpha = {}, i1 = {}, beta = {}", p.h, p.c, p.alpha, p.i1, p.beta);
        println!("sigma: {sigma}");
        println!("sorted: {}", is_sorted(&w));
        println!("w_sort: {sorted}");
        let list: Vec<String> = covers.iter().map(ToString::to_string).collect();
        println!("predecessors: {}", if list.is_empty() { "none".into() } else { list.join(", ") });
    }
    Ok(ExitCode::from(EXIT_OK))
}

fn cmd_verify(ctx: &Context, a: VerifyArgs) -> CmdResult {
    let opts = SuiteOptions {
        inner: if a.unbarred_inner_omega { InnerOmega::Unbarred } else { InnerOmega::Barred },
        endpoint: a.os_endpoint.into(),
        seed: a.seed,
        ..SuiteOptions::default()
    };
    let r = run_suite(a.suite, a.nmax, &opts);
    let failed = r.failures.len();
    let summary = Summary { checked: r.checks, passed: r.checks.saturating_sub(failed), failed };
    let mut report = RunReport::new(&ctx.argv, ctx.started, summary);
    report.counterexamples = r.failures.iter().map(|f| json!(f)).collect();
    if ctx.json {
        print_json(&report);
    } else {
        println!("{}: {} checks, {} failures", r.suite, r.checks, failed);
        for f in &r.failures {
            println!("  FAIL {}: {}", f.item, f.detail);
        }
    }
    Ok(report.exit_code())
}

fn emit_scan(ctx: &Context, records: Vec<ScanRecord>) -> ExitCode {
    let s = ScanSummary::of(&records);
    let summary = Summary { checked: s.checked, passed: s.positive, failed: s.violations + s.errors };
    let mut report = RunReport::new(&ctx.argv, ctx.started, summary);
    report.counterexamples = records
        .iter()
        .filter(|r| r.verdict != Outcome::Positive)
        .map(|r| json!(r))
        .collect();
    if ctx.json {
        for r in &records {
            print_json(r);
        }
        print_json(&report);
    } else {
        for r in &records {
            let verdict = match r.verdict {
                Outcome::Positive => "positive",
                Outcome::Violation => "VIOLATION",
                Outcome::Error => "ERROR",
            };
            println!("{:<32} {verdict:<10} terms={:<4} d0={}", r.item, r.expansion.len(), fmt_d0(r.d0));
        }
        for r in records.iter().filter(|r| r.verdict != Outcome::Positive) {
            println!("counterexample {}: {}", r.item, full_record(r));
        }
        println!(
            "checked {}, positive {}, violations {}, errors {}",
            s.checked, s.positive, s.violations, s.errors
        );
    }
    report.exit_code()
}

fn fmt_d0(d0: Option<u32>) -> String {
    d0.map_or("-".into(), |d| d.to_string())
}

fn full_record(r: &ScanRecord) -> String {
    match &r.error {
        Some(e) => e.clone(),
        None => r.to_expansion(0).to_string(),
    }
}

fn cmd_scan(ctx: &Context, target: ScanTarget) -> CmdResult {
    let cache = cache::load();
    let records = match target {
        ScanTarget::PercentAvoiding { n, m } => {
            guard(n * m < 32, "n * m must stay below 32")?;
            lascouxbasis::percent_avoiding_scan(n, m, &cache)
        }
        ScanTarget::PhiLascoux { n, max_entry } => {
            guard(n >= 1 && n <= 8, "n must be in 1..=8")?;
            lascouxbasis::phi_lascoux_scan(n, max_entry, &cache)
        }
        ScanTarget::Vexillary { nmax } => {
            guard(nmax >= 1 && nmax <= 8, "nmax must be in 1..=8")?;
            let perms: Vec<Permutation> = Permutation::all(nmax).into_iter().filter(Permutation::is_vexillary).collect();
            lascouxbasis::rothe_scan(&perms, &cache)
        }
    };
    cache::store(&cache);
    Ok(emit_scan(ctx, records))
}

fn guard(ok: bool, msg: &str) -> Result<(), Usage> {
    if ok {
        Ok(())
    } else {
        Err(Usage(msg.into()))
    }
}

fn cmd_check(ctx: &Context, target: CheckTarget) -> CmdResult {
    let CheckTarget::Positivity { diagram, w, relax } = target;
    let d = diagram_or_rothe(&diagram, &w)?;
    let cache = cache::load();
    let check = positivity_check(&d, relax, &cache)?;
    cache::store(&cache);
    let positive = check.verdict.positive;
    if ctx.json {
        let value: Value = json!({
            "diagram": d.to_string(),
            "flipped": check.flipped,
            "expansion": check.expansion.sorted_terms().into_iter().map(|(a, c)| json!({ "alpha": a, "c": c })).collect::<Vec<_>>(),
            "d0": check.expansion.baseline_degree,
            "verdict": if positive { "positive" } else { "violation" },
            "violations": check.verdict.violations,
        });
        print_json(&value);
    } else {
        println!("diagram: {d}");
        println!("expansion: {}", check.expansion);
        println!("lowest degree: {}", fmt_d0(check.expansion.baseline_degree));
        println!("graded positive: {positive}");
        for a in &check.verdict.violations {
            println!("  wrong sign at {a}");
        }
    }
    Ok(ExitCode::from(if positive { EXIT_OK } else { EXIT_FAILURE }))
}
