//! Command-line front end. `run` maps argv to an exit code: 0 success,
//! 1 verification failure or runtime error, 2 usage error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::code::{griesmer_max_d, LinearCode};
use crate::constructs::{build_optimal_lcd, seed_db, table4_entry, SeedOptions, TABLE4};
use crate::db::{default_db_path, Database, DB_ENV};
use crate::defvec::{defining_vector, matrix_from_defvec, DefiningVector};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::search::{exhaustive_dl, hill_climb, SearchBudget};
use crate::theorem::{check_all, check_theorem, Status, TheoremReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "lcdcode", version, about = "Binary LCD code construction, verification and search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the [n, 6] LCD code for n >= 51 from the database.
    Construct {
        #[arg(long)]
        n: usize,
        /// Write the generator here instead of standard output.
        #[arg(long)]
        emit: Option<PathBuf>,
        #[command(flatten)]
        db: DbArg,
    },
    /// Recompute parameters of a .g2m generator.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print the periodic table of offsets as TSV.
    Table {
        #[arg(long, default_value_t = 1)]
        s_max: usize,
    },
    /// Exhaustive or randomized search at small lengths.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Fill the database with small records.
    SeedDb {
        /// Iterations per climbing restart.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        restarts: Option<u32>,
        #[arg(long)]
        seed: Option<u64>,
        /// Rebuild records that already exist.
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        db: DbArg,
    },
    /// Run the nonexistence-argument checker.
    VerifyTheorems {
        #[arg(long)]
        id: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Convert between a .g2m generator and a defining-vector line.
    Defvec { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum SearchCmd {
    /// Exact d_l(n, k) over defining-vector orbits.
    Exhaustive {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Randomized local search for an LCD code.
    Climb {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        target_d: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        iters: Option<u64>,
        #[arg(long)]
        restarts: Option<u32>,
        /// Accept codes with nontrivial hull.
        #[arg(long)]
        any_hull: bool,
    },
}

#[derive(Args, Debug)]
struct DbArg {
    /// Database directory (default: $LCD_DB, else ./db).
    #[arg(long = "db")]
    path: Option<PathBuf>,
}

/// Resolved settings shared by the subcommands.
#[derive(Clone, Debug)]
pub struct CliConfig {
    pub db_path: PathBuf,
    pub json: bool,
    pub budget: SearchBudget,
}

impl CliConfig {
    fn new(db: Option<PathBuf>) -> Self {
        CliConfig {
            db_path: db.unwrap_or_else(default_db_path),
            json: false,
            budget: SearchBudget::default(),
        }
    }
}

/// Runs against the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            return match e.kind() {
                DisplayHelp | DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidArgument(_) | Error::UnknownTheorem(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            }
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Construct { n, emit, db } => construct(n, emit, CliConfig::new(db.path), out),
        Command::Check { file, json } => check(&file, json, out),
        Command::Table { s_max } => table(s_max, out),
        Command::Search(s) => search(s, out),
        Command::SeedDb {
            budget,
            restarts,
            seed,
            force,
            db,
        } => {
            let mut opts = SeedOptions {
                force,
                ..SeedOptions::default()
            };
            if let Some(b) = budget {
                opts.budget.max_iterations = b;
            }
            if let Some(r) = restarts {
                opts.budget.restarts = r;
            }
            if let Some(s) = seed {
                opts.budget.seed = s;
            }
            seed_cmd(CliConfig::new(db.path), &opts, out, err)
        }
        Command::VerifyTheorems { id, json } => verify_theorems(id.as_deref(), json, out),
        Command::Defvec { file } => defvec(&file, out),
    }
}

fn io_out(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn construct(n: usize, emit: Option<PathBuf>, cfg: CliConfig, out: &mut dyn Write) -> Result<i32> {
    let db = Database::open(&cfg.db_path)?;
    let built = build_optimal_lcd(&db, n)?;
    let g2m = built.record.code.generator().to_g2m();
    match &emit {
        Some(path) => fs::write(path, &g2m).map_err(|e| Error::io(path, e))?,
        None => out.write_all(g2m.as_bytes()).map_err(io_out)?,
    }
    let m = &built.record.meta;
    writeln!(out, "n={} k={} d={} hull={} status={}", m.n, m.k, m.d, m.hull, built.status)
        .map_err(io_out)?;
    Ok(if built.meets_plan() { EXIT_OK } else { EXIT_FAILURE })
}

fn read_matrix(path: &PathBuf) -> Result<BitMatrix> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    BitMatrix::from_g2m(&text)
}

fn check(path: &PathBuf, json: bool, out: &mut dyn Write) -> Result<i32> {
    let code = LinearCode::new(read_matrix(path)?)?;
    let p = code.params()?;
    let lcd = p.hull_dim == 0;
    if json {
        let v = json!({"n": p.n, "k": p.k, "d": p.d, "hull": p.hull_dim, "is_lcd": lcd});
        writeln!(out, "{v}").map_err(io_out)?;
    } else {
        writeln!(out, "n={} k={} d={} hull={} is_lcd={}", p.n, p.k, p.d, p.hull_dim, lcd)
            .map_err(io_out)?;
    }
    Ok(EXIT_OK)
}

fn table(s_max: usize, out: &mut dyn Write) -> Result<i32> {
    writeln!(out, "s\tt\tn\td_a_offset\td_l_offset\tstatus").map_err(io_out)?;
    let mut ok = true;
    for s in 0..=s_max {
        for entry in TABLE4.iter() {
            let n = 63 * s + entry.t;
            if n < 42 {
                continue;
            }
            let e = table4_entry(n);
            ok &= griesmer_max_d(n, 6) as i64 == 32 * s as i64 + e.d_a;
            let status = if e.is_open() { "open" } else { "exact" };
            writeln!(out, "{s}\t{}\t{n}\t{}\t{}\t{status}", e.t, e.d_a, e.d_l_text())
                .map_err(io_out)?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}

fn search(cmd: SearchCmd, out: &mut dyn Write) -> Result<i32> {
    let (n, k, found) = match cmd {
        SearchCmd::Exhaustive { n, k } => {
            let r = exhaustive_dl(n, k)?;
            (n, k, r.map(|r| LinearCode::new(matrix_from_defvec(&r.witness))).transpose()?)
        }
        SearchCmd::Climb {
            n,
            k,
            target_d,
            seed,
            iters,
            restarts,
            any_hull,
        } => {
            let mut budget = SearchBudget::default();
            if let Some(s) = seed {
                budget.seed = s;
            }
            if let Some(i) = iters {
                budget.max_iterations = i;
            }
            if let Some(r) = restarts {
                budget.restarts = r;
            }
            let r = hill_climb(n, k, target_d, !any_hull, &budget)?;
            (n, k, r.map(|o| o.record.code))
        }
    };
    match found {
        Some(code) => {
            let p = code.params()?;
            out.write_all(code.generator().to_g2m().as_bytes()).map_err(io_out)?;
            let v = json!({"n": p.n, "k": p.k, "d": p.d, "hull": p.hull_dim, "found": true});
            writeln!(out, "{v}").map_err(io_out)?;
            Ok(EXIT_OK)
        }
        None => {
            let v = json!({"n": n, "k": k, "d": null, "hull": null, "found": false});
            writeln!(out, "{v}").map_err(io_out)?;
            Ok(EXIT_FAILURE)
        }
    }
}

fn seed_cmd(cfg: CliConfig, opts: &SeedOptions, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let mut db = Database::create(&cfg.db_path)?;
    let outcomes = seed_db(&mut db, opts, |o| {
        let _ = writeln!(err, "{o}");
    })?;
    let missed = outcomes.iter().filter(|o| o.is_missed()).count();
    let failed = db.verify_all().into_iter().filter(|(_, r)| r.is_err()).count();
    writeln!(
        out,
        "records={} missed={missed} reverify_failures={failed} db={} ({DB_ENV} overrides the default)",
        db.len(),
        cfg.db_path.display()
    )
    .map_err(io_out)?;
    Ok(if missed == 0 && failed == 0 { EXIT_OK } else { EXIT_FAILURE })
}

fn print_report(r: &TheoremReport, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "{}", r.theorem).map_err(io_out)?;
    for c in &r.claims {
        writeln!(out, "  ({}) {} {}", c.label, c.family, c.status).map_err(io_out)?;
        for b in &c.branches {
            let case = if b.case.is_empty() { "-" } else { &b.case };
            writeln!(out, "    [{}] {} :: {}", b.status, case, b.rule).map_err(io_out)?;
        }
    }
    for n in &r.notes {
        writeln!(out, "  note: {n}").map_err(io_out)?;
    }
    Ok(())
}

fn verify_theorems(id: Option<&str>, json: bool, out: &mut dyn Write) -> Result<i32> {
    let (reports, clean) = match id {
        Some(id) => (vec![check_theorem(id)?], true),
        None => {
            let full = check_all()?;
            let clean = full.spot_check_failures.is_empty()
                && full.preflight.iter().all(|p| p.failures == 0);
            if !json {
                for p in &full.preflight {
                    writeln!(out, "preflight {}: {} instances, {} failures", p.name, p.instances, p.failures)
                        .map_err(io_out)?;
                }
            }
            (full.theorems, clean)
        }
    };
    for r in &reports {
        if json {
            writeln!(out, "{}", r.to_json()?).map_err(io_out)?;
        } else {
            print_report(r, out)?;
        }
    }
    let unresolved: usize = reports.iter().map(|r| r.count(Status::Unresolved)).sum();
    if !json {
        writeln!(out, "unresolved branches: {unresolved}").map_err(io_out)?;
    }
    Ok(if clean && unresolved == 0 { EXIT_OK } else { EXIT_FAILURE })
}

fn defvec(path: &PathBuf, out: &mut dyn Write) -> Result<i32> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    if text.contains(':') {
        let l: DefiningVector = text.trim().parse()?;
        out.write_all(matrix_from_defvec(&l).to_g2m().as_bytes()).map_err(io_out)?;
    } else {
        let l = defining_vector(&BitMatrix::from_g2m(&text)?)?;
        writeln!(out, "{l}").map_err(io_out)?;
    }
    Ok(EXIT_OK)
}
