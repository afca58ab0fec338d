use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use condint::bounds::{
    analyze_nonintersecting, bollobas_check, bound_tables, shadow_lemma_check, BoundsError, ChoiceFunction,
};
use condint::cache::{CacheRecord, ResultsCache};
use condint::cluster::{find_violation, ClusterWitness, WitnessRecord};
use condint::family::{complete_kgraph, full_star, kset_plus_star, SetFamily};
use condint::io::{read_family, serialize_family};
use condint::search::{classify_family, max_family, max_nonintersecting, Enumerate, Mode, SearchConfig, SearchResult};
use condint::structure::{decompose, hypothesis_union_bound, verify_decomposition, Decomposition, StructureError};
use condint::{corpus, VertexSet};

#[derive(Parser)]
#[command(name = "condint", version, about = "Conditionally intersecting set families: checks, certificates, bounds and exact search")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Look for d members with union of size at most s and empty intersection.
    Check {
        file: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        s: usize,
    },
    /// Build and verify the Y/Z, H/B/S decomposition certificate.
    Decompose {
        file: PathBuf,
        #[arg(long)]
        d: usize,
        /// Union bound to verify against (default 2k+d-3, or 2k when d = k).
        #[arg(long)]
        s: Option<usize>,
        /// Also write the certificate JSON to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a decomposition certificate against a family.
    Verify {
        file: PathBuf,
        certificate: PathBuf,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        s: Option<usize>,
    },
    /// Unique-subset sum and shadow inequality.
    Bounds { file: PathBuf },
    /// Level and trace analysis of a nonintersecting (3,2k) family.
    Analyze { file: PathBuf },
    /// Exact maximum family size by branch-and-bound.
    Search(SearchArgs),
    /// Binomial bound tables.
    Tables {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
    },
    /// Write a generated family in the family file format.
    Generate(GenerateArgs),
}

#[derive(clap::Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, required_unless_present = "nonintersecting")]
    d: Option<usize>,
    #[arg(long, required_unless_present = "nonintersecting")]
    s: Option<usize>,
    /// Maximize over (3,2k) families containing a disjoint pair.
    #[arg(long)]
    nonintersecting: bool,
    /// Report every maximum family.
    #[arg(long, conflicts_with = "value_only")]
    all: bool,
    /// Report only the value; may be answered from the cache.
    #[arg(long)]
    value_only: bool,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Give up after this many search nodes.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, env = "CONDINT_CACHE", default_value = "./hcache.tsv")]
    cache: PathBuf,
    #[arg(long)]
    no_cache: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    FullStar,
    Complete,
    KsetPlusStar,
    Composite,
    RandomCi,
    Unique,
    Nonintersecting,
}

#[derive(clap::Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 3)]
    d: usize,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long, default_value_t = 1)]
    core: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 60)]
    attempts: usize,
}

/// Outcome of a command: exit status, text body and JSON body.
struct Report {
    code: u8,
    text: String,
    json: Value,
}

impl Report {
    fn new(code: u8, text: String, json: Value) -> Self {
        Report { code, text, json }
    }
}

/// Usage or input error: exit status 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<Report, UsageError>;

fn load(path: &Path) -> Result<SetFamily, UsageError> {
    Ok(read_family(path)?)
}

fn witness_lines(w: &ClusterWitness) -> String {
    w.members
        .iter()
        .map(|m| m.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

fn witness_report(command: &str, w: &ClusterWitness) -> Report {
    let text = format!(
        "conditionally intersecting: false\nwitness (d = {}, union size {} <= {}):\n{}",
        w.d,
        w.union_size,
        w.s,
        witness_lines(w)
    );
    Report::new(
        1,
        text,
        json!({"command": command, "conditionally_intersecting": false, "witness": WitnessRecord::from(w)}),
    )
}

fn cmd_check(file: &Path, d: usize, s: usize) -> CmdResult {
    let f = load(file)?;
    match find_violation(&f, d, s)? {
        Some(w) => Ok(witness_report("check", &w)),
        None => Ok(Report::new(
            0,
            "conditionally intersecting: true\n".into(),
            json!({"command": "check", "conditionally_intersecting": true, "d": d, "s": s, "members": f.len()}),
        )),
    }
}

fn structure_failure(command: &str, e: StructureError) -> CmdResult {
    match e {
        StructureError::NotConditionallyIntersecting(w) => Ok(witness_report(command, &w)),
        other => Err(other.into()),
    }
}

fn verification_report(command: &str, f: &SetFamily, dec: &Decomposition, d: usize, s: usize) -> Report {
    let report = verify_decomposition(f, dec, d, s);
    let status = if report.passed() { "pass" } else { "FAIL" };
    let mut text = String::new();
    if command == "decompose" {
        text.push_str(&dec.render());
    }
    text.push_str(&report.render());
    text.push_str(&format!("verification: {status}\n"));
    let certificate: Value = serde_json::from_str(&dec.to_json()).expect("certificate is JSON");
    Report::new(
        if report.passed() { 0 } else { 1 },
        text,
        json!({"command": command, "d": d, "s": s, "passed": report.passed(), "verification": report, "certificate": certificate}),
    )
}

fn cmd_decompose(file: &Path, d: usize, s: Option<usize>, out: Option<&Path>) -> CmdResult {
    let f = load(file)?;
    let dec = match decompose(&f, d) {
        Ok(dec) => dec,
        Err(e) => return structure_failure("decompose", e),
    };
    if let Some(path) = out {
        std::fs::write(path, dec.to_json() + "\n").map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    }
    let s = s.unwrap_or_else(|| hypothesis_union_bound(f.k(), d));
    Ok(verification_report("decompose", &f, &dec, d, s))
}

fn cmd_verify(file: &Path, certificate: &Path, d: usize, s: Option<usize>) -> CmdResult {
    let f = load(file)?;
    let text = std::fs::read_to_string(certificate).map_err(|e| UsageError(format!("{}: {e}", certificate.display())))?;
    let dec = Decomposition::from_json(&text)?;
    let s = s.unwrap_or_else(|| hypothesis_union_bound(f.k(), d));
    Ok(verification_report("verify", &f, &dec, d, s))
}

fn cmd_bounds(file: &Path) -> CmdResult {
    let f = load(file)?;
    let shadow = shadow_lemma_check(&f);
    let mut text = String::new();
    let mut code = 0;
    let bollobas = match ChoiceFunction::least_unique(&f) {
        Some(choice) => match bollobas_check(&f, &choice) {
            Ok(out) => {
                text.push_str(&format!("unique-subset sum: {} (<= 1: {})\n", out.sum, out.valid));
                serde_json::to_value(&out).expect("serializable")
            }
            Err(BoundsError::BollobasViolated(sum)) => {
                code = 1;
                text.push_str(&format!("unique-subset sum: {sum} exceeds 1\n"));
                json!({"sum": sum, "valid": true, "violated": true})
            }
            Err(e) => return Err(e.into()),
        },
        None => {
            text.push_str("unique-subset sum: not applicable (some member has no unique subset)\n");
            Value::Null
        }
    };
    text.push_str(&format!(
        "shadow: |H| = {}, |shadow| = {}, n|H| = {}, (n-k+1)|shadow| = {}",
        shadow.family_size, shadow.shadow_size, shadow.lhs, shadow.rhs
    ));
    match shadow.holds {
        Some(h) => {
            text.push_str(&format!(", holds: {h}\n"));
            if !h {
                code = 1;
            }
        }
        None => {
            let m = shadow.counterexample.as_ref().expect("counterexample when hypothesis fails");
            text.push_str(&format!(", not applicable ({m:?} has no unique subset)\n"));
        }
    }
    Ok(Report::new(code, text, json!({"command": "bounds", "bollobas": bollobas, "shadow": shadow})))
}

fn cmd_analyze(file: &Path) -> CmdResult {
    let f = load(file)?;
    match analyze_nonintersecting(&f) {
        Ok(report) => {
            let code = if report.inequality_holds() && report.fk_is_ab { 0 } else { 1 };
            let json = json!({"command": "analyze", "report": report});
            Ok(Report::new(code, report.render(), json))
        }
        Err(BoundsError::HypothesisNotMet(h)) => {
            let mut json = json!({"command": "analyze", "hypothesis_met": false, "reason": h.reason()});
            let mut text = format!("hypothesis not met: {}\n", h.reason());
            if let condint::bounds::HypothesisFailure::HasThreeCluster(w) = &h {
                json["witness"] = serde_json::to_value(WitnessRecord::from(w)).expect("serializable");
                text.push_str(&witness_lines(w));
            }
            Ok(Report::new(1, text, json))
        }
        Err(e) => Err(e.into()),
    }
}

fn search_json(r: &SearchResult) -> Value {
    let labels: Vec<&str> = r.witnesses.iter().map(|w| classify_family(w).as_str()).collect();
    json!({
        "command": "search",
        "source": "search",
        "n": r.n, "k": r.k, "d": r.d, "s": r.s,
        "mode": r.mode.as_str(),
        "h": r.h,
        "upper_bound": r.upper_bound,
        "certified": r.certified,
        "nodes_explored": r.nodes_explored,
        "lower_bound": r.lower_bound,
        "lower_bound_construction": r.lower_bound_construction.as_str(),
        "witnesses": r.witnesses.iter().map(|w| w.to_lists()).collect::<Vec<_>>(),
        "classification": labels,
    })
}

fn cmd_search(a: &SearchArgs) -> CmdResult {
    let (mode, d, s) = if a.nonintersecting {
        (Mode::Nonintersecting, 3, 2 * a.k)
    } else {
        (Mode::Plain, a.d.expect("required"), a.s.expect("required"))
    };
    if a.workers == 0 {
        return Err(UsageError("--workers must be at least 1".into()));
    }
    let enumerate = if a.all {
        Enumerate::AllMaximum
    } else if a.value_only {
        Enumerate::ValueOnly
    } else {
        Enumerate::OneWitness
    };
    let cache = (!a.no_cache).then(|| ResultsCache::new(&a.cache));
    if enumerate == Enumerate::ValueOnly {
        if let Some(cache) = &cache {
            if let Some(rec) = cache.lookup(a.n, a.k, d, s, mode)?.filter(|r| r.certified) {
                let text = format!("h({}, {}, {}, {}) = {} [{}, cached]\n", a.n, a.k, d, s, rec.h, mode.as_str());
                let json = json!({
                    "command": "search", "source": "cache",
                    "n": a.n, "k": a.k, "d": d, "s": s, "mode": mode.as_str(),
                    "h": rec.h, "upper_bound": rec.h, "certified": true, "nodes_explored": rec.nodes,
                });
                return Ok(Report::new(0, text, json));
            }
        }
    }
    let mut config = SearchConfig::new(enumerate).workers(a.workers);
    config.node_budget = a.budget;
    let result = match mode {
        Mode::Plain => max_family(a.n, a.k, d, s, &config),
        Mode::Nonintersecting => max_nonintersecting(a.n, a.k, &config),
    };
    let r = match result {
        Ok(r) => r,
        Err(condint::search::SearchError::BadParameters(m)) => return Err(UsageError(m)),
        Err(e) => return Err(e.into()),
    };
    if let Some(cache) = &cache {
        cache.append(&CacheRecord::from_result(&r))?;
    }
    let mut text = if r.certified {
        format!("h({}, {}, {}, {}) = {} [{}]\n", r.n, r.k, r.d, r.s, r.h, mode.as_str())
    } else {
        format!(
            "inconclusive: {} <= h({}, {}, {}, {}) <= {} [{}]\n",
            r.h,
            r.n,
            r.k,
            r.d,
            r.s,
            r.upper_bound,
            mode.as_str()
        )
    };
    text.push_str(&format!("nodes explored: {}\n", r.nodes_explored));
    text.push_str(&format!("lower bound {} ({})\n", r.lower_bound, r.lower_bound_construction));
    for (i, w) in r.witnesses.iter().enumerate() {
        text.push_str(&format!("witness {} ({}):\n", i + 1, classify_family(w)));
        text.push_str(serialize_family(w).split_once('\n').map_or("", |(_, rest)| rest));
    }
    Ok(Report::new(if r.certified { 0 } else { 1 }, text, search_json(&r)))
}

fn cmd_tables(n: usize, k: usize, d: usize) -> CmdResult {
    let t = bound_tables(n, k, d)?;
    let code = if t.vandermonde_ok { 0 } else { 1 };
    Ok(Report::new(code, t.render(), json!({"command": "tables", "tables": t})))
}

fn cmd_generate(g: &GenerateArgs) -> CmdResult {
    let mut rng = corpus::rng(g.seed);
    let f = match g.kind {
        Kind::FullStar => full_star(g.n, g.k, g.core)?,
        Kind::Complete => complete_kgraph(g.k, VertexSet::ground(g.n))?,
        Kind::KsetPlusStar => kset_plus_star(g.n, g.k)?,
        Kind::Composite => {
            if !(3..=g.k).contains(&g.d) {
                return Err(UsageError(format!("composite needs 3 <= d <= k (got d = {}, k = {})", g.d, g.k)));
            }
            corpus::composite(&mut rng, g.k, g.d)
        }
        Kind::RandomCi => {
            let s = g.s.unwrap_or(2 * g.k);
            if g.d < 2 || s < g.k || g.k == 0 || g.k > g.n {
                return Err(UsageError("random-ci needs d >= 2 and k <= s, k <= n".into()));
            }
            corpus::random_ci(&mut rng, g.n, g.k, g.d, s, g.attempts)
        }
        Kind::Unique => {
            if g.k == 0 || g.k > g.n {
                return Err(UsageError("unique needs 1 <= k <= n".into()));
            }
            corpus::unique_subset_family(&mut rng, g.n, g.k, g.attempts)
        }
        Kind::Nonintersecting => {
            if g.n < 2 * g.k || g.k == 0 {
                return Err(UsageError("nonintersecting needs n >= 2k".into()));
            }
            corpus::nonintersecting_family(&mut rng, g.n, g.k, g.attempts)
        }
    };
    let json = json!({"command": "generate", "n": f.n(), "k": f.k(), "members": f.to_lists()});
    Ok(Report::new(0, serialize_family(&f), json))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { file, d, s } => cmd_check(file, *d, *s),
        Command::Decompose { file, d, s, out } => cmd_decompose(file, *d, *s, out.as_deref()),
        Command::Verify { file, certificate, d, s } => cmd_verify(file, certificate, *d, *s),
        Command::Bounds { file } => cmd_bounds(file),
        Command::Analyze { file } => cmd_analyze(file),
        Command::Search(a) => cmd_search(a),
        Command::Tables { n, k, d } => cmd_tables(*n, *k, *d),
        Command::Generate(g) => cmd_generate(g),
    };
    match result {
        Ok(report) => {
            let body = match cli.format {
                Format::Text => report.text,
                Format::Json => {
                    let mut body = json!({"schema": 1});
                    if let (Value::Object(dst), Value::Object(src)) = (&mut body, report.json) {
                        dst.extend(src);
                    }
                    serde_json::to_string_pretty(&body).expect("serializable") + "\n"
                }
            };
            // A closed pipe (e.g. `| head`) is not an error worth a panic.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(report.code)
        }
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
