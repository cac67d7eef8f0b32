//! `verify`: run the determinantal threefold verification scenarios.
//!
//! Exit codes: 0 all executed claims pass; 2 at least one claim failed;
//! 3 no failures but at least one flagged discrepancy or capped-out claim;
//! 64 usage error (unknown scenario, bad flag value, unwritable output).

use cascade_core::scenario::{
    consistency_matrix, list_scenarios, run_scenario, scenario_info, ClaimReport, ClaimStatus,
    ScenarioConfig, ScenarioReport,
};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 2;
const EXIT_FLAGGED: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(
    name = "verify",
    version,
    about = "Recompute and check the claims of the determinantal threefold scenarios"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the scenarios and their registered claims.
    List {
        /// Emit the registry as JSON instead of a table.
        #[arg(long)]
        json: bool,
        /// Include the stretch (long-budget) claims in the listing.
        #[arg(long)]
        stretch: bool,
    },
    /// Run one or more scenarios ("all" for every scenario plus the
    /// cross-scenario consistency rows).
    Run {
        /// Scenario ids, or "all".
        #[arg(required = true)]
        ids: Vec<String>,
        #[command(flatten)]
        run_opts: RunOpts,
    },
    /// Inspect or clear the on-disk Gröbner basis cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
        /// Cache directory (default: $CASCADE_CACHE_DIR, then a per-user dir).
        #[arg(long, global = true)]
        cache_dir: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunOpts {
    /// Coefficient field modulus; must be prime (default: $CASCADE_PRIME,
    /// then the built-in 30-bit prime).
    #[arg(long)]
    prime: Option<u64>,
    /// Seed for all pseudo-random data (default: $CASCADE_SEED, then 1).
    #[arg(long)]
    seed: Option<u64>,
    /// Write the JSON report to this path instead of printing a text table.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Include the stretch (long-budget) claims.
    #[arg(long)]
    stretch: bool,
    /// Run up to N scenarios concurrently.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Per-scenario budget override, as <scenario>=<seconds>; repeatable.
    #[arg(long, value_name = "SCENARIO=SECONDS")]
    budget: Vec<String>,
    /// Gröbner cache directory (default: $CASCADE_CACHE_DIR; no caching if unset).
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CacheAction {
    /// Report the number of cached bases and their total size.
    Stats,
    /// Delete every cached basis.
    Clear,
}

#[derive(Serialize)]
struct RunDocument {
    version: String,
    prime: u64,
    seed: u64,
    stretch: bool,
    scenarios: Vec<ScenarioReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    consistency: Option<Vec<ClaimReport>>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::List { json, stretch } => cmd_list(json, stretch),
        Command::Run { ids, run_opts } => cmd_run(ids, run_opts),
        Command::Cache { action, cache_dir } => cmd_cache(action, cache_dir),
    };
    ExitCode::from(code)
}

fn env_u64(name: &str) -> Result<Option<u64>, String> {
    match std::env::var(name) {
        Ok(v) => v
            .parse::<u64>()
            .map(Some)
            .map_err(|_| format!("environment variable {name}={v:?} is not a 64-bit integer")),
        Err(_) => Ok(None),
    }
}

fn env_cache_dir() -> Option<PathBuf> {
    std::env::var_os("CASCADE_CACHE_DIR").map(PathBuf::from)
}

fn default_cache_dir() -> PathBuf {
    if let Some(home) = std::env::var_os("HOME") {
        PathBuf::from(home).join(".cache").join("cascade-verify")
    } else {
        std::env::temp_dir().join("cascade-verify-cache")
    }
}

fn cmd_list(json: bool, stretch: bool) -> u8 {
    let scenarios = list_scenarios();
    if json {
        #[derive(Serialize)]
        struct ClaimRow {
            label: &'static str,
            expected: &'static str,
            reference: &'static str,
            stretch: bool,
        }
        #[derive(Serialize)]
        struct ScenarioRow {
            id: &'static str,
            description: &'static str,
            claims: Vec<ClaimRow>,
        }
        let rows: Vec<ScenarioRow> = scenarios
            .iter()
            .map(|s| ScenarioRow {
                id: s.id,
                description: s.description,
                claims: s
                    .claims
                    .iter()
                    .filter(|c| stretch || !c.stretch)
                    .map(|c| ClaimRow {
                        label: c.label,
                        expected: c.expected,
                        reference: c.reference,
                        stretch: c.stretch,
                    })
                    .collect(),
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&rows).unwrap());
        return EXIT_OK;
    }
    for s in scenarios {
        let shown = s.claims.iter().filter(|c| stretch || !c.stretch).count();
        let held_back = s.claims.len() - shown;
        println!("{:10}  {}", s.id, s.description);
        for c in s.claims.iter().filter(|c| stretch || !c.stretch) {
            let tag = if c.stretch { " [stretch]" } else { "" };
            println!("    - {}{tag}: expect {}", c.label, c.expected);
        }
        if held_back > 0 {
            println!("    ({held_back} stretch claim(s) hidden; pass --stretch to list them)");
        }
    }
    EXIT_OK
}

fn parse_budgets(specs: &[String]) -> Result<HashMap<String, u64>, String> {
    let mut map = HashMap::new();
    for spec in specs {
        let (id, secs) = spec
            .split_once('=')
            .ok_or_else(|| format!("--budget {spec:?} is not of the form <scenario>=<seconds>"))?;
        if scenario_info(id).is_none() {
            return Err(format!("--budget names unknown scenario {id:?}"));
        }
        let secs: u64 = secs
            .parse()
            .map_err(|_| format!("--budget {spec:?}: seconds must be an integer"))?;
        map.insert(id.to_string(), secs);
    }
    Ok(map)
}

fn cmd_run(ids: Vec<String>, opts: RunOpts) -> u8 {
    let run_all = ids.len() == 1 && ids[0] == "all";
    let ids: Vec<String> = if run_all {
        list_scenarios().iter().map(|s| s.id.to_string()).collect()
    } else {
        ids
    };
    for id in &ids {
        if scenario_info(id).is_none() {
            eprintln!("verify: unknown scenario {id:?} (see `verify list`)");
            return EXIT_USAGE;
        }
    }
    let prime = match opts.prime.map(|p| Ok(Some(p))).unwrap_or_else(|| env_u64("CASCADE_PRIME")) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("verify: {e}");
            return EXIT_USAGE;
        }
    };
    let seed = match opts.seed.map(|s| Ok(Some(s))).unwrap_or_else(|| env_u64("CASCADE_SEED")) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("verify: {e}");
            return EXIT_USAGE;
        }
    };
    let budget_overrides = match parse_budgets(&opts.budget) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("verify: {e}");
            return EXIT_USAGE;
        }
    };
    let defaults = ScenarioConfig::default();
    let cfg = ScenarioConfig {
        prime: prime.unwrap_or(defaults.prime),
        seed: seed.unwrap_or(defaults.seed),
        stretch: opts.stretch,
        budget_overrides,
        cache_dir: opts.cache_dir.or_else(env_cache_dir),
    };
    if let Some(dir) = &cfg.cache_dir {
        if let Err(e) = std::fs::create_dir_all(dir) {
            eprintln!("verify: cannot create cache directory {}: {e}", dir.display());
            return EXIT_USAGE;
        }
    }

    let jobs = opts.jobs.max(1);
    let results: Vec<Result<ScenarioReport, String>> = if jobs == 1 {
        ids.iter()
            .map(|id| run_scenario(id, &cfg).map_err(|e| format!("{id}: {e}")))
            .collect()
    } else {
        let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(p) => p,
            Err(e) => {
                eprintln!("verify: cannot build thread pool: {e}");
                return EXIT_USAGE;
            }
        };
        pool.install(|| {
            use rayon::prelude::*;
            ids.par_iter()
                .map(|id| run_scenario(id, &cfg).map_err(|e| format!("{id}: {e}")))
                .collect()
        })
    };

    let mut scenarios = Vec::new();
    for res in results {
        match res {
            Ok(rep) => scenarios.push(rep),
            Err(e) => {
                eprintln!("verify: {e}");
                return EXIT_USAGE;
            }
        }
    }
    let consistency = if run_all {
        match consistency_matrix() {
            Ok(rows) => Some(rows),
            Err(e) => {
                eprintln!("verify: consistency matrix: {e}");
                return EXIT_USAGE;
            }
        }
    } else {
        None
    };

    let doc = RunDocument {
        version: env!("CARGO_PKG_VERSION").to_string(),
        prime: cfg.prime,
        seed: cfg.seed,
        stretch: cfg.stretch,
        scenarios,
        consistency,
    };

    if let Some(path) = &opts.json {
        let text = serde_json::to_string_pretty(&doc).unwrap();
        if let Err(e) = std::fs::write(path, text) {
            eprintln!("verify: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    } else {
        print_text_report(&doc);
    }
    exit_code_for(&doc)
}

fn status_word(s: ClaimStatus) -> &'static str {
    match s {
        ClaimStatus::Pass => "pass",
        ClaimStatus::Fail => "FAIL",
        ClaimStatus::FlaggedDiscrepancy => "flagged",
        ClaimStatus::CappedOut => "capped",
    }
}

fn print_claim(c: &ClaimReport) {
    println!("  [{:7}] {:7.2}s  {}", status_word(c.status), c.seconds, c.label);
    if c.status != ClaimStatus::Pass {
        println!("             expected: {}", c.expected);
        println!("             computed: {}", c.computed);
        println!("             source:   {}", c.reference);
    }
}

fn print_text_report(doc: &RunDocument) {
    println!("verify v{} — prime {}, seed {}", doc.version, doc.prime, doc.seed);
    for rep in &doc.scenarios {
        println!("{}:", rep.scenario);
        for c in &rep.claims {
            print_claim(c);
        }
    }
    if let Some(rows) = &doc.consistency {
        println!("consistency matrix:");
        for c in rows {
            print_claim(c);
        }
    }
}

fn exit_code_for(doc: &RunDocument) -> u8 {
    let all_claims = doc
        .scenarios
        .iter()
        .flat_map(|r| r.claims.iter())
        .chain(doc.consistency.iter().flatten());
    let mut flagged = false;
    for c in all_claims {
        match c.status {
            ClaimStatus::Fail => return EXIT_FAIL,
            ClaimStatus::FlaggedDiscrepancy | ClaimStatus::CappedOut => flagged = true,
            ClaimStatus::Pass => {}
        }
    }
    if flagged {
        EXIT_FLAGGED
    } else {
        EXIT_OK
    }
}

fn cmd_cache(action: CacheAction, cache_dir: Option<PathBuf>) -> u8 {
    let dir = cache_dir
        .or_else(env_cache_dir)
        .unwrap_or_else(default_cache_dir);
    let entries = || -> std::io::Result<Vec<(PathBuf, u64)>> {
        let mut out = Vec::new();
        match std::fs::read_dir(&dir) {
            Ok(rd) => {
                for e in rd {
                    let e = e?;
                    let path = e.path();
                    if path.extension().and_then(|x| x.to_str()) == Some("gb") {
                        out.push((path, e.metadata()?.len()));
                    }
                }
                Ok(out)
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(out),
            Err(e) => Err(e),
        }
    };
    match action {
        CacheAction::Stats => match entries() {
            Ok(list) => {
                let bytes: u64 = list.iter().map(|(_, b)| b).sum();
                println!(
                    "cache {}: {} entries, {} bytes",
                    dir.display(),
                    list.len(),
                    bytes
                );
                EXIT_OK
            }
            Err(e) => {
                eprintln!("verify: cannot read cache {}: {e}", dir.display());
                EXIT_USAGE
            }
        },
        CacheAction::Clear => match entries() {
            Ok(list) => {
                let n = list.len();
                for (path, _) in list {
                    if let Err(e) = std::fs::remove_file(&path) {
                        eprintln!("verify: cannot remove {}: {e}", path.display());
                        return EXIT_USAGE;
                    }
                }
                println!("cache {}: removed {} entries", dir.display(), n);
                EXIT_OK
            }
            Err(e) => {
                eprintln!("verify: cannot read cache {}: {e}", dir.display());
                EXIT_USAGE
            }
        },
    }
}
