//! Command-line front end.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::fiber::{build_fiber, canonical, classify_fiber, FiberClassification, FiberError, FiberFlags};
use crate::scalar::{Field, FieldMode, Fp, Rational};
use crate::semigroup::{classify_ring, NumericalSemigroup, RingClassification};
use crate::verify::{check_pair, pair_seed, run_campaign, write_csv, CampaignConfig, PairConfig, TheoremReport};
use crate::window::{build_window, WindowOverrides};

/// Exit status: everything checked out.
pub const EXIT_OK: i32 = 0;
/// Exit status: a disagreement or failed identity was found.
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
/// Exit status: bad arguments or configuration.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "agfiber", version, about = "Gorenstein-type classification of numerical semigroup rings and their fiber products")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Args)]
pub struct Opts {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write a CSV table (campaign only).
    #[arg(long, global = true)]
    pub csv: bool,
    /// Coefficient field: `rational` or `prime:<p>`.
    #[arg(long, global = true, default_value = "rational", value_parser = parse_field)]
    pub field: FieldMode,
    /// Window bound N (auto-sized when absent).
    #[arg(long = "window", global = true)]
    pub window: Option<i64>,
    /// Negative offset D (auto-sized when absent).
    #[arg(long = "neg-offset", global = true)]
    pub neg_offset: Option<i64>,
    /// Worker threads for campaigns.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: u32,
    /// Master seed for all randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Largest genus enumerated by a campaign.
    #[arg(long = "max-genus", global = true, default_value_t = 2)]
    pub max_genus: usize,
    /// Report file for campaigns; the CSV goes next to it.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify the ring of one numerical semigroup.
    ClassifySg {
        #[arg(value_parser = parse_semigroup)]
        gens: NumericalSemigroup,
    },
    /// Classify the fiber product of two semigroup rings.
    ClassifyFiber {
        #[arg(value_parser = parse_semigroup)]
        left: NumericalSemigroup,
        #[arg(value_parser = parse_semigroup)]
        right: NumericalSemigroup,
    },
    /// Run the full battery on one ordered pair.
    VerifyPair {
        #[arg(value_parser = parse_semigroup)]
        left: NumericalSemigroup,
        #[arg(value_parser = parse_semigroup)]
        right: NumericalSemigroup,
    },
    /// Run the battery on all ordered pairs up to a genus bound.
    Campaign {
        /// Skip pairs with a DVR factor.
        #[arg(long)]
        no_dvr: bool,
    },
}

fn parse_semigroup(s: &str) -> Result<NumericalSemigroup, String> {
    s.parse().map_err(|e: crate::semigroup::SemigroupError| e.to_string())
}

fn parse_field(s: &str) -> Result<FieldMode, String> {
    s.parse().map_err(|e: crate::scalar::FieldModeError| e.to_string())
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn render_ring(c: &RingClassification, out: &mut impl Write) -> io::Result<()> {
    let gens: Vec<String> = c.gens.iter().map(u32::to_string).collect();
    writeln!(out, "semigroup            ⟨{}⟩", gens.join(","))?;
    writeln!(out, "multiplicity e       {}", c.e)?;
    writeln!(out, "embedding dim v      {}", c.v)?;
    writeln!(out, "Frobenius F          {}", c.frobenius)?;
    writeln!(out, "genus                {}", c.genus)?;
    writeln!(out, "type r               {}", c.r)?;
    writeln!(out, "l(K/R)               {}", c.lengths.len_k_mod_r)?;
    writeln!(out, "l(R/c)               {}", c.lengths.len_r_mod_c)?;
    let f = &c.flags;
    writeln!(out, "DVR                  {}", yes(f.is_dvr))?;
    writeln!(out, "Gorenstein           {}", yes(f.gorenstein))?;
    writeln!(out, "almost Gorenstein    {}", yes(f.almost_gorenstein))?;
    writeln!(out, "generalized Gor.     {}", yes(f.generalized_gorenstein))?;
    writeln!(out, "2-almost Gorenstein  {}", yes(f.two_almost_gorenstein))?;
    writeln!(out, "nearly Gorenstein    {}", yes(f.nearly_gorenstein))
}

fn render_fiber(c: &FiberClassification, out: &mut impl Write) -> io::Result<()> {
    let g = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(",");
    writeln!(out, "fiber product        ⟨{}⟩ ×_k ⟨{}⟩", g(&c.gens[0]), g(&c.gens[1]))?;
    writeln!(out, "e, v, r              {}, {}, {}", c.e, c.v, c.r)?;
    writeln!(out, "l(X/A), l(A/c)       {}, {}", c.lengths.len_x_mod_a, c.lengths.len_a_mod_c)?;
    writeln!(out, "canonical ideal      {}", c.provenance.as_str())?;
    writeln!(out, "{:<21}{:<10}predicted", "", "direct")?;
    type Getter = fn(&FiberFlags) -> bool;
    let rows: [(&str, Getter); 5] = [
        ("Gorenstein", |f| f.gorenstein),
        ("almost Gorenstein", |f| f.almost_gorenstein),
        ("generalized Gor.", |f| f.generalized_gorenstein),
        ("2-almost Gorenstein", |f| f.two_almost_gorenstein),
        ("nearly Gorenstein", |f| f.nearly_gorenstein),
    ];
    for (name, get) in rows {
        writeln!(out, "{:<21}{:<10}{}", name, yes(get(&c.direct)), yes(get(&c.predicted)))?;
    }
    writeln!(out, "agree                {}", yes(c.agree))
}

fn render_report(r: &TheoremReport, out: &mut impl Write) -> io::Result<()> {
    for i in &r.identities {
        let status = match (&i.skipped, i.ok) {
            (Some(why), _) => format!("skip ({why})"),
            (None, true) => "ok".to_string(),
            (None, false) => format!("FAIL: {} ≠ {}", i.lhs, i.rhs),
        };
        writeln!(out, "{:<44}{}", i.id, status)?;
    }
    for t in &r.theorems {
        let status = match (&t.skipped, t.ok) {
            (Some(why), _) => format!("skip ({why})"),
            (None, true) => format!("ok ({})", t.direct.unwrap_or(false)),
            (None, false) => format!("FAIL: predicted {:?}, direct {:?}", t.predicted, t.direct),
        };
        writeln!(out, "{:<44}{}", t.id, status)?;
    }
    if let Some(e) = &r.error {
        writeln!(out, "engine error: {e}")?;
    }
    writeln!(out, "window N={} D={} stable={}", r.window.bound, r.window.neg_offset, r.window.stable)?;
    writeln!(out, "checks={} failures={}", r.checks(), r.failures())
}

fn fiber_classification<F: Field>(
    left: &NumericalSemigroup,
    right: &NumericalSemigroup,
    opts: &Opts,
    params: F::Params,
) -> Result<FiberClassification, FiberError> {
    let cfg = build_window(left, right, opts.field, overrides(opts))?;
    let f = build_fiber::<F>(cfg, params)?;
    let seed = pair_seed(opts.seed, left, right);
    let (x, _) = canonical(&f, seed)?;
    classify_fiber(&f, &x, seed)
}

fn overrides(opts: &Opts) -> WindowOverrides {
    WindowOverrides { bound: opts.window, neg_offset: opts.neg_offset }
}

fn emit_json<T: serde::Serialize>(value: &T, out: &mut impl Write) -> io::Result<()> {
    let s = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
    writeln!(out, "{s}")
}

fn csv_path(out: &std::path::Path) -> PathBuf {
    out.with_extension("csv")
}

/// Runs a parsed command, writing to `out` and diagnostics to `err`.
pub fn execute(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> io::Result<i32> {
    let opts = &cli.opts;
    match &cli.command {
        Command::ClassifySg { gens } => {
            let c = classify_ring(gens);
            if opts.json {
                emit_json(&c, out)?;
            } else {
                render_ring(&c, out)?;
            }
            Ok(EXIT_OK)
        }
        Command::ClassifyFiber { left, right } => {
            let res = match opts.field {
                FieldMode::Rational => fiber_classification::<Rational>(left, right, opts, ()),
                FieldMode::Prime(p) => fiber_classification::<Fp>(left, right, opts, p),
            };
            let c = match res {
                Ok(c) => c,
                Err(FiberError::Window(e @ crate::window::WindowError::BadOverride(_))) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(EXIT_USAGE);
                }
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(EXIT_COUNTEREXAMPLE);
                }
            };
            if opts.json {
                emit_json(&c, out)?;
            } else {
                render_fiber(&c, out)?;
            }
            Ok(if c.agree { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
        }
        Command::VerifyPair { left, right } => {
            if let Err(e) = build_window(left, right, opts.field, overrides(opts)) {
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_USAGE);
            }
            let pc = PairConfig { field: opts.field, overrides: overrides(opts), seed: opts.seed };
            let r = check_pair(left, right, &pc);
            if opts.json {
                emit_json(&r, out)?;
            } else {
                render_report(&r, out)?;
            }
            Ok(if r.passed() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
        }
        Command::Campaign { no_dvr } => {
            let cfg = CampaignConfig {
                max_genus: opts.max_genus,
                include_dvr: !no_dvr,
                field: opts.field,
                jobs: opts.jobs as usize,
                seed: opts.seed,
                overrides: overrides(opts),
            };
            let report = match run_campaign(&cfg) {
                Ok(r) => r,
                Err(e) => {
                    writeln!(err, "error: {e}")?;
                    return Ok(EXIT_USAGE);
                }
            };
            let json = report.to_json().map_err(io::Error::other)?;
            match &opts.out {
                Some(path) => {
                    std::fs::write(path, format!("{json}\n"))?;
                    if opts.csv {
                        write_csv(&report, BufWriter::new(File::create(csv_path(path))?)).map_err(io::Error::other)?;
                    }
                    writeln!(out, "{}", report.summary_line())?;
                }
                None if opts.json => {
                    writeln!(out, "{json}")?;
                    writeln!(err, "{}", report.summary_line())?;
                }
                None if opts.csv => {
                    write_csv(&report, &mut *out).map_err(io::Error::other)?;
                    writeln!(err, "{}", report.summary_line())?;
                }
                None => writeln!(out, "{}", report.summary_line())?,
            }
            for c in report.summary.counterexamples.iter().take(20) {
                writeln!(err, "counterexample {:?} {}: {} ≠ {}", c.pair, c.id, c.lhs, c.rhs)?;
            }
            Ok(if report.passed() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
        }
    }
}

/// Parses `args` and runs; returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    match execute(&cli, &mut stdout.lock(), &mut stderr.lock()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}
