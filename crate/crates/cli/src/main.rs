use std::fmt::Write as _;
use std::io::Write as _;

/// Print to stdout, treating a closed pipe as success.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    if out.write_all(text.as_bytes()).is_err() {
        std::process::exit(0);
    }
}
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use weyl3::classify::{ClassifyConfig, SystemRecord, classify, compare_golden, record_for};
use weyl3::golden::{appendix_lines, golden, golden_system};
use weyl3::groupoid::{self, OrderKey};
use weyl3::lattice::Root;
use weyl3::search::SearchConfig;
use weyl3::words::{emit_word, parse_word};

/// Classify, verify and inspect rank-three Weyl groupoid root systems.
#[derive(Parser)]
#[command(name = "weyl3", version, about)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Order {
    /// Height-major ordering of the published listings.
    HeightLex,
    /// Plain lexicographic fallback.
    Lex,
}

impl From<Order> for OrderKey {
    fn from(o: Order) -> OrderKey {
        match o {
            Order::HeightLex => OrderKey::HeightLex,
            Order::Lex => OrderKey::Lex,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate every root system, verify and canonicalize the candidates,
    /// and compare the result against the golden dataset
    Classify {
        /// Prune root strings longer than this bound
        #[arg(long, default_value_t = 7)]
        cartan_bound: i64,
        /// Abandon branches growing beyond this many roots (safety net)
        #[arg(long, default_value_t = 64)]
        max_roots: usize,
        /// Disable the required-root shortcut (much slower, same output)
        #[arg(long)]
        no_required_root: bool,
        /// Worker threads (default: all cores)
        #[arg(long)]
        threads: Option<usize>,
        /// Recursion depth distributed to worker threads
        #[arg(long, default_value_t = 5)]
        parallel_depth: usize,
        /// Skip the comparison against the golden dataset
        #[arg(long)]
        no_golden: bool,
        /// Root ordering for the canonical listings
        #[arg(long, value_enum, default_value_t = Order::HeightLex)]
        order: Order,
        /// Write the JSON report here instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a file of roots closes into a finite root system
    Verify {
        /// Root list: one root per line, "n1,n2,n3" or word notation
        file: PathBuf,
    },
    /// Print the invariants of one system (by number or from a file)
    Invariants {
        /// A system number 1..=55 or a path to a root list
        target: String,
        #[arg(long)]
        json: bool,
    },
    /// Emit an object change diagram as DOT text
    Diagram {
        /// A system number 1..=55 or a path to a root list
        target: String,
        /// Diagram of the simply connected cover
        #[arg(long, conflicts_with = "quotient")]
        cover: bool,
        /// Diagram of the quotient (the default)
        #[arg(long)]
        quotient: bool,
    },
    /// Print all 55 root systems in word notation
    Appendix,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Classify {
            cartan_bound,
            max_roots,
            no_required_root,
            threads,
            parallel_depth,
            no_golden,
            order,
            out,
        } => {
            let cfg = ClassifyConfig {
                search: SearchConfig {
                    cartan_bound,
                    max_roots,
                    use_required_root: !no_required_root,
                    parallel_depth,
                },
                order: order.into(),
                threads,
            };
            let started = Instant::now();
            eprintln!("searching (cartan bound {cartan_bound}, required-root {})...", !no_required_root);
            let outcome = classify(&cfg).map_err(|e| e.to_string())?;
            eprintln!(
                "{} candidate sets ({} failed verification) -> {} systems in {:.1?}",
                outcome.emitted,
                outcome.invalid,
                outcome.records.len(),
                started.elapsed()
            );
            let json = serde_json::to_string_pretty(&outcome.records).map_err(|e| e.to_string())?;
            match &out {
                Some(path) => std::fs::write(path, json + "\n").map_err(|e| e.to_string())?,
                None => emit(&(json + "\n")),
            }
            let mut ok = outcome.records.len() == 55;
            if !no_golden {
                let diffs = compare_golden(&outcome.records);
                for d in &diffs {
                    eprintln!("golden mismatch: {d}");
                }
                ok &= diffs.is_empty();
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Cmd::Verify { file } => {
            let roots = read_roots(&file)?;
            match groupoid::orbit(&roots) {
                Ok(orb) => {
                    println!("valid: {} object(s)", orb.len());
                    Ok(ExitCode::SUCCESS)
                }
                Err(invalid) => {
                    println!("invalid: {invalid}");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Cmd::Invariants { target, json } => {
            let roots = resolve_target(&target)?;
            let orb = groupoid::orbit(&roots).map_err(|e| e.to_string())?;
            let canonical = groupoid::canonical_form(&orb, OrderKey::HeightLex);
            let mut record = record_for(&canonical, OrderKey::HeightLex).map_err(|e| e.to_string())?;
            record.nr = target.parse().unwrap_or(0);
            if json {
                let text = serde_json::to_string_pretty(&record).map_err(|e| e.to_string())?;
                emit(&(text + "\n"));
            } else {
                emit(&render_invariants(&record));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Diagram { target, cover, quotient: _ } => {
            let roots = resolve_target(&target)?;
            let orb = groupoid::orbit(&roots).map_err(|e| e.to_string())?;
            if cover {
                emit(&groupoid::cover_dot(&groupoid::cover(&orb)));
            } else {
                emit(&groupoid::quotient_dot(&orb));
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Appendix => {
            let text: String = golden().iter().map(|g| appendix_lines(g.nr, &g.words)).collect();
            emit(&text);
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// A system number 1..=55, or a root-list file path.
fn resolve_target(target: &str) -> Result<Vec<Root>, String> {
    if let Ok(nr) = target.parse::<usize>() {
        let g = golden_system(nr).ok_or(format!("no system {nr}; expected 1..=55"))?;
        let mut roots = g.roots();
        roots.sort();
        return Ok(roots);
    }
    read_roots(&PathBuf::from(target))
}

/// One root per line, "n1,n2,n3" or word notation; '#' starts a comment.
fn read_roots(path: &PathBuf) -> Result<Vec<Root>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let mut roots = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let parsed = if line.contains(',') {
            let parts: Vec<&str> = line.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(format!("{}:{}: expected three coordinates", path.display(), lineno + 1));
            }
            let mut c = [0i64; 3];
            for (slot, p) in c.iter_mut().zip(&parts) {
                *slot = p
                    .parse()
                    .map_err(|_| format!("{}:{}: bad coordinate {p:?}", path.display(), lineno + 1))?;
            }
            Root::from_coords(c)
        } else {
            parse_word(line).map_err(|e| format!("{}:{}: {e}", path.display(), lineno + 1))?
        };
        roots.push(parsed);
    }
    if roots.is_empty() {
        return Err(format!("{}: no roots", path.display()));
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn render_invariants(r: &SystemRecord) -> String {
    let mut out = String::new();
    if r.nr > 0 {
        let _ = writeln!(out, "Nr. {}", r.nr);
    }
    let words: Vec<String> = r
        .roots
        .iter()
        .map(|&c| emit_word(Root::from_coords(c)).unwrap_or_else(|_| format!("{c:?}")))
        .collect();
    let _ = writeln!(out, "roots: {}", words.join(", "));
    let _ = writeln!(out, "|R+| = {}", r.roots.len());
    let _ = writeln!(out, "|O| = {}", r.orbit_size);
    let _ = writeln!(out, "|A| = {}", r.cover_size);
    let _ = writeln!(out, "Hom(a) = {} (order {})", r.hom.name, r.hom.order);
    let planes: Vec<String> =
        r.planes.iter().map(|(size, count)| format!("{size}^{count}")).collect();
    let _ = writeln!(out, "planes: {}", planes.join(", "));
    out
}
