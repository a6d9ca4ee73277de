//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verification or closed-form comparison failed,
//! 2 invalid input, 3 precision or resource failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::cache::{Cache, CacheKey};
use crate::error::{Error, Result};
use crate::exactmath::{faber_pandharipande, Field, Framing, RatFunc, Rational};
use crate::recursion::{
    decompose_in_zeta_basis, default_order, engine, is_stable, with_retry, HodgeJson,
};
use crate::verify::{run_suite, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "c3-remodel", version, about = "Exact topological recursion on the framed mirror curve of C^3")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Free energies F_g, compared against the closed form.
    Fg {
        /// A single genus or an inclusive range `a..b`.
        #[arg(long, value_parser = parse_genus_range)]
        genus: GenusRange,
        #[command(flatten)]
        common: Common,
    },
    /// The correlator W^g_n in the zeta basis (Hodge coefficients).
    Wgn {
        #[arg(long)]
        genus: u32,
        #[arg(long = "n-points")]
        n_points: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "genus-max", default_value_t = 3)]
        genus_max: u32,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
pub struct Common {
    /// `symbolic` or a rational such as `2` or `-1/2`.
    #[arg(long, default_value = "symbolic", value_parser = parse_framing, allow_hyphen_values = true)]
    pub framing: Framing,
    #[arg(long = "order-margin", default_value_t = 6, allow_hyphen_values = true)]
    pub order_margin: i64,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long = "cache-dir")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long = "no-cache")]
    pub no_cache: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenusRange {
    pub lo: u32,
    pub hi: u32,
}

fn parse_genus_range(s: &str) -> std::result::Result<GenusRange, String> {
    let num = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad genus {t:?}: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => {
            let g = num(s)?;
            (g, g)
        }
    };
    if lo < 2 || hi < lo {
        return Err(format!("genus range {s:?} must satisfy 2 <= a <= b"));
    }
    Ok(GenusRange { lo, hi })
}

fn parse_framing(s: &str) -> std::result::Result<Framing, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Precision(_) | Error::Io(_) => EXIT_PRECISION,
        Error::Domain(_)
        | Error::Genericity(_)
        | Error::Parse(_)
        | Error::ModeMismatch
        | Error::Evaluation(_) => EXIT_INPUT,
        _ => EXIT_FAIL,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let common = match &cli.command {
        Command::Fg { common, .. } | Command::Wgn { common, .. } | Command::Verify { common, .. } => {
            common
        }
    };
    match execute(&cli.command) {
        Ok((text, code)) => match emit(common, &text, stdout) {
            Ok(()) => code,
            Err(e) => {
                let _ = writeln!(stderr, "error: {e}");
                exit_code(&e)
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(common: &Common, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match &common.out {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn open_cache(common: &Common) -> Option<Cache> {
    if common.no_cache {
        return None;
    }
    Cache::locate(common.cache_dir.as_deref()).map(Cache::new)
}

fn store(cache: &Option<Cache>, key: &CacheKey, payload: serde_json::Value) {
    if let Some(c) = cache {
        // a cache that cannot be written only costs recomputation
        let _ = c.put(key, payload);
    }
}

fn execute(cmd: &Command) -> Result<(String, i32)> {
    match cmd {
        Command::Fg { genus, common } => run_fg(*genus, common),
        Command::Wgn {
            genus,
            n_points,
            common,
        } => run_wgn(*genus, *n_points, common),
        Command::Verify {
            suite,
            genus_max,
            common,
        } => run_verify(suite, *genus_max, common),
    }
}

#[derive(Debug, Clone, Serialize)]
struct FgRow {
    genus: u32,
    framing: String,
    value: String,
    matches: bool,
}

fn run_fg(range: GenusRange, common: &Common) -> Result<(String, i32)> {
    let framing = &common.framing;
    let cache = open_cache(common);
    let key = |g: u32| CacheKey::new("fg", g, 0, framing, default_order(g, 1, common.order_margin));
    let mut values: Vec<Option<String>> = (range.lo..=range.hi)
        .map(|g| {
            cache
                .as_ref()
                .and_then(|c| c.get(&key(g)))
                .and_then(|v| v["value"].as_str().map(str::to_string))
        })
        .collect();
    let missing: Vec<u32> = (range.lo..=range.hi)
        .filter(|g| values[(g - range.lo) as usize].is_none())
        .collect();
    if let Some(&top) = missing.last() {
        let computed = match framing {
            Framing::Symbolic => energies::<RatFunc>(framing, &missing, top, common.order_margin)?,
            Framing::Fixed(_) => energies::<Rational>(framing, &missing, top, common.order_margin)?,
        };
        for (g, v) in missing.iter().zip(computed) {
            store(&cache, &key(*g), serde_json::json!({ "value": v }));
            values[(g - range.lo) as usize] = Some(v);
        }
    }
    let mut rows = Vec::new();
    for (g, v) in (range.lo..=range.hi).zip(values) {
        let value = v.expect("every genus filled");
        let want = faber_pandharipande(g)?.to_string();
        rows.push(FgRow {
            genus: g,
            framing: framing.to_string(),
            matches: value == want,
            value,
        });
    }
    let code = if rows.iter().all(|r| r.matches) {
        EXIT_OK
    } else {
        EXIT_FAIL
    };
    let text = match common.format.unwrap_or(Format::Table) {
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
        Format::Csv => {
            let mut s = String::from("genus,framing,value,matches\n");
            for r in &rows {
                let _ = writeln!(s, "{},{},{},{}", r.genus, r.framing, r.value, r.matches);
            }
            s
        }
        Format::Table => {
            let w = rows.iter().map(|r| r.value.len()).max().unwrap_or(5).max(5);
            let mut s = format!("{:>5}  {:<9}  {:<w$}  matches\n", "genus", "framing", "value");
            for r in &rows {
                let _ = writeln!(s, "{:>5}  {:<9}  {:<w$}  {}", r.genus, r.framing, r.value, r.matches);
            }
            s
        }
    };
    Ok((text, code))
}

fn energies<F: Field>(framing: &Framing, genera: &[u32], top: u32, margin: i64) -> Result<Vec<String>> {
    with_retry(default_order(top, 1, margin), |order| {
        let mut r = engine::<F>(framing, order)?;
        genera
            .iter()
            .map(|&g| r.free_energy(g).map(|v| v.to_string()))
            .collect()
    })
}

fn hodge_json<F: Field>(framing: &Framing, g: u32, n: u32, margin: i64) -> Result<HodgeJson> {
    with_retry(default_order(g, n, margin), |order| {
        let mut r = engine::<F>(framing, order)?;
        let t = r.correlator(g, n)?;
        Ok(decompose_in_zeta_basis(r.curve(), &t)?.to_json())
    })
}

fn run_wgn(g: u32, n: u32, common: &Common) -> Result<(String, i32)> {
    if !is_stable(g, n) || n == 0 {
        return Err(Error::Domain(format!(
            "W^{g}_{n} needs 2g - 2 + n > 0 and n >= 1"
        )));
    }
    let framing = &common.framing;
    let cache = open_cache(common);
    let key = CacheKey::new("wgn", g, n, framing, default_order(g, n, common.order_margin));
    let cached = cache
        .as_ref()
        .and_then(|c| c.get(&key))
        .and_then(|v| serde_json::from_value::<HodgeJson>(v).ok());
    let table = match cached {
        Some(t) => t,
        None => {
            let t = match framing {
                Framing::Symbolic => hodge_json::<RatFunc>(framing, g, n, common.order_margin)?,
                Framing::Fixed(_) => hodge_json::<Rational>(framing, g, n, common.order_margin)?,
            };
            store(&cache, &key, serde_json::to_value(&t)?);
            t
        }
    };
    let text = match common.format.unwrap_or(Format::Json) {
        Format::Json => serde_json::to_string_pretty(&table)? + "\n",
        Format::Csv => {
            let mut s = String::from("b,coeff\n");
            for e in &table.entries {
                let _ = writeln!(s, "{},{}", join_b(&e.b), e.coeff);
            }
            s
        }
        Format::Table => {
            let mut s = format!("W^{g}_{n}  framing {framing}  zeta basis\n");
            for e in &table.entries {
                let _ = writeln!(s, "  ({})  {}", join_b(&e.b), e.coeff);
            }
            s
        }
    };
    Ok((text, EXIT_OK))
}

fn join_b(b: &[u32]) -> String {
    b.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run_verify(suite: &str, g_max: u32, common: &Common) -> Result<(String, i32)> {
    if !SUITES.contains(&suite) {
        return Err(Error::Parse(format!(
            "unknown suite {suite:?}; expected one of {}",
            SUITES.join(", ")
        )));
    }
    let report = run_suite(suite, g_max, &common.framing, common.order_margin)?;
    let code = if report.passed() { EXIT_OK } else { EXIT_FAIL };
    let text = match common.format.unwrap_or(Format::Table) {
        Format::Json => serde_json::to_string_pretty(&report)? + "\n",
        Format::Csv => {
            let mut s = String::from("id,status,anchor\n");
            for c in &report.checks {
                let status = serde_json::to_value(c.status)?;
                let _ = writeln!(s, "{},{},\"{}\"", c.id, status.as_str().unwrap_or(""), c.anchor);
            }
            s
        }
        Format::Table => report.to_table(),
    };
    Ok((text, code))
}
