//! The `vw` command line: homology tables, verification suites, bases.

pub mod cache;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::complex::{ComplexVariant, Limits, DEFAULT_MAX_SLICE};
use crate::diagram::Parity;
use crate::error::Error;
use crate::homology::{HomologyEngine, HomologyEntry, HomologyTable};
use crate::linalg::snf::SnfLimits;
use crate::ring::Ring;
use crate::verify::{self, Suite, SuiteOptions};

pub use cache::{Cache, EntryKey, ENGINE_VERSION};

pub const EXIT_OK: i32 = 0;
/// A verification suite reported failures, or the arguments were unusable.
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "vw", version, about = "Diagram complexes of the Vassiliev spectral sequence for long knots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Worker threads for independent slices.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Largest slice basis allowed before giving up.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SLICE)]
    pub max_slice: usize,
    /// Wall-clock budget in seconds, checked between slices.
    #[arg(long, global = true)]
    pub time_budget: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Homology groups of slice complexes as a JSON or CSV table.
    Homology(HomologyArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Print the basis of one slice.
    Basis(BasisArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ParityChoice {
    Odd,
    Even,
    Both,
}

impl ParityChoice {
    pub fn parities(self) -> Vec<Parity> {
        match self {
            ParityChoice::Odd => vec![Parity::Odd],
            ParityChoice::Even => vec![Parity::Even],
            ParityChoice::Both => Parity::BOTH.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

fn parse_complex(s: &str) -> Result<ComplexVariant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_ring(s: &str) -> Result<Ring, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Args)]
pub struct HomologyArgs {
    /// One or more of Tss, Tss_h, Ts, T, T0, Z (comma separated).
    #[arg(long, value_parser = parse_complex, value_delimiter = ',', required = true)]
    pub complex: Vec<ComplexVariant>,
    #[arg(long, value_enum, default_value = "odd")]
    pub parity: ParityChoice,
    /// Z, Q or Fp:<p>.
    #[arg(long, value_parser = parse_ring, default_value = "Z")]
    pub ring: Ring,
    #[arg(long, default_value_t = 3)]
    pub i_max: usize,
    /// Only this complexity.
    #[arg(long)]
    pub i: Option<usize>,
    /// Only this second grading.
    #[arg(long)]
    pub j: Option<usize>,
    /// Homology of the transposed differentials.
    #[arg(long)]
    pub dual: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Cache directory; `VW_CACHE_DIR` is used when absent.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    /// Recompute this fraction of cache hits and compare.
    #[arg(long, num_args = 0..=1, default_missing_value = "0.05")]
    pub audit: Option<f64>,
    /// Write every differential used as a sparse triplet file here.
    #[arg(long)]
    pub dump_matrices: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// d-squared, iso-I, hopf-axioms, quasi-iso, kunneth or chord-split.
    #[arg(value_parser = |s: &str| s.parse::<Suite>().map_err(|e| e.to_string()))]
    pub suite: Suite,
    #[arg(long, value_enum, default_value = "both")]
    pub parity: ParityChoice,
    #[arg(long, default_value_t = 3)]
    pub i_max: usize,
    #[arg(long, default_value_t = 5)]
    pub order_max: usize,
    #[arg(long, default_value_t = 500)]
    pub random_cases: usize,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[arg(long, value_parser = parse_complex)]
    pub complex: ComplexVariant,
    #[arg(long, value_enum, default_value = "odd")]
    pub parity: ParityChoice,
    #[arg(long)]
    pub i: usize,
    #[arg(long)]
    pub j: usize,
}

/// An engine error, with the slice it happened at when known.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{source} (at {slice})")]
    AtSlice { slice: String, source: Error },
    #[error(transparent)]
    Engine(#[from] Error),
    #[error("cache audit mismatch at {0}")]
    AuditMismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::AtSlice { source, .. } | CliError::Engine(source) => match source {
                Error::ResourceLimit(_) => EXIT_RESOURCE,
                Error::Parse(_) | Error::Io(_) => EXIT_FAILED,
                _ => EXIT_INTERNAL,
            },
            CliError::AuditMismatch(_) => EXIT_INTERNAL,
        }
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Engine(e.into())
}

struct Budget {
    start: Instant,
    limit: Option<Duration>,
}

impl Budget {
    fn check(&self, slice: &str) -> Result<(), CliError> {
        match self.limit {
            Some(l) if self.start.elapsed() > l => Err(CliError::AtSlice {
                slice: slice.to_string(),
                source: Error::ResourceLimit(format!("time budget of {}s spent", l.as_secs())),
            }),
            _ => Ok(()),
        }
    }
}

fn slice_name(v: ComplexVariant, p: Parity, i: usize, j: usize) -> String {
    format!("{v} {p} (i={i}, j={j})")
}

fn new_engine(max_slice: usize) -> HomologyEngine {
    HomologyEngine::new(Limits { max_slice }, SnfLimits::default())
}

/// Runs a parsed command line, writing results to `out`. `Ok(false)` means
/// a verification suite ran and failed.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool, CliError> {
    let budget = Budget {
        start: Instant::now(),
        limit: cli.time_budget.map(Duration::from_secs),
    };
    match &cli.command {
        Command::Homology(a) => homology(cli, a, &budget, out).map(|()| true),
        Command::Verify(a) => {
            let opts = SuiteOptions {
                parities: a.parity.parities(),
                i_max: a.i_max,
                order_max: a.order_max,
                random_cases: a.random_cases,
                seed: a.seed,
            };
            let mut engine = new_engine(cli.max_slice);
            let report = verify::run(a.suite, &opts, &mut engine)?;
            write!(out, "{report}").map_err(io)?;
            Ok(report.passed())
        }
        Command::Basis(a) => {
            let mut engine = new_engine(cli.max_slice);
            for p in a.parity.parities() {
                let s = engine
                    .slice(a.complex, p, a.i, a.j)
                    .map_err(|source| CliError::AtSlice {
                        slice: slice_name(a.complex, p, a.i, a.j),
                        source,
                    })?;
                writeln!(out, "# {} {} i={} j={} dim={}", a.complex, p, a.i, a.j, s.dim()).map_err(io)?;
                for line in s.listing() {
                    writeln!(out, "{line}").map_err(io)?;
                }
            }
            Ok(true)
        }
    }
}

/// Runs `execute` and maps the outcome to an exit code, reporting errors on
/// `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_FAILED,
        Err(e) => {
            let _ = writeln!(err, "vw: {e}");
            e.exit_code()
        }
    }
}

fn cache_dir(a: &HomologyArgs) -> Option<PathBuf> {
    a.cache_dir
        .clone()
        .or_else(|| std::env::var_os("VW_CACHE_DIR").map(PathBuf::from))
}

struct Job<'a> {
    args: &'a HomologyArgs,
    max_slice: usize,
    cache: Option<&'a Cache>,
    budget: &'a Budget,
}

impl Job<'_> {
    fn ranges(&self) -> Vec<(usize, usize)> {
        let is: Vec<usize> = match self.args.i {
            Some(i) => vec![i],
            None => (1..=self.args.i_max).collect(),
        };
        let mut out = Vec::new();
        for i in is {
            match self.args.j {
                Some(j) => out.push((i, j)),
                None => out.extend((0..=2 * i).map(|j| (i, j))),
            }
        }
        out
    }

    fn key(&self, v: ComplexVariant, p: Parity, i: usize, j: usize) -> EntryKey {
        let mut k = EntryKey::new(v, p, i, j, self.args.ring, self.max_slice);
        if self.args.dual {
            k.engine.push_str("+dual");
        }
        k
    }

    fn compute(&self, engine: &mut HomologyEngine, v: ComplexVariant, p: Parity, i: usize, j: usize) -> crate::Result<HomologyEntry> {
        let ring = self.args.ring;
        let value = if self.args.dual {
            engine.dual_homology_group(v, p, i, j, ring)?
        } else {
            engine.homology_group(v, p, i, j, ring)?
        };
        let zhat_nonzero = if !self.args.dual && j == i + 1 {
            engine.zhat_status(v, p, i, ring)?.map(|s| s.nonzero)
        } else {
            None
        };
        Ok(HomologyEntry {
            complex: v,
            parity: p,
            i,
            j,
            ring,
            value,
            zhat_nonzero,
        })
    }

    fn dump(&self, engine: &mut HomologyEngine, v: ComplexVariant, p: Parity, i: usize, j: usize) -> crate::Result<()> {
        let Some(dir) = &self.args.dump_matrices else {
            return Ok(());
        };
        for jj in [j, j + 1] {
            if jj == 0 || jj > 2 * i {
                continue;
            }
            let path = dir.join(format!("{v}_{p}_i{i}_j{jj}.txt"));
            if !path.exists() {
                fs::write(path, engine.matrix_dump(v, p, i, jj)?)?;
            }
        }
        Ok(())
    }

    /// All entries of one complex and parity, sharing one engine.
    fn run_group(&self, v: ComplexVariant, p: Parity) -> Result<Vec<HomologyEntry>, CliError> {
        let mut engine = new_engine(self.max_slice);
        let mut rng = rand::thread_rng();
        let mut out = Vec::new();
        for (i, j) in self.ranges() {
            let name = slice_name(v, p, i, j);
            self.budget.check(&name)?;
            let at = |source| CliError::AtSlice {
                slice: name.clone(),
                source,
            };
            let key = self.key(v, p, i, j);
            let cached = self.cache.and_then(|c| c.get(&key));
            let entry = match cached {
                Some(hit) => {
                    if self.args.audit.is_some_and(|rate| rng.gen::<f64>() < rate) {
                        let fresh = self.compute(&mut engine, v, p, i, j).map_err(at)?;
                        if fresh != hit {
                            return Err(CliError::AuditMismatch(name));
                        }
                    }
                    hit
                }
                None => {
                    let e = self.compute(&mut engine, v, p, i, j).map_err(at)?;
                    if let Some(c) = self.cache {
                        c.put(&key, &e)?;
                    }
                    e
                }
            };
            self.dump(&mut engine, v, p, i, j).map_err(at)?;
            out.push(entry);
        }
        Ok(out)
    }
}

fn homology(cli: &Cli, a: &HomologyArgs, budget: &Budget, out: &mut dyn Write) -> Result<(), CliError> {
    let cache = cache_dir(a).map(Cache::open).transpose()?;
    if let Some(dir) = &a.dump_matrices {
        fs::create_dir_all(dir).map_err(io)?;
    }
    let job = Job {
        args: a,
        max_slice: cli.max_slice,
        cache: cache.as_ref(),
        budget,
    };
    let groups: Vec<(ComplexVariant, Parity)> = a
        .complex
        .iter()
        .flat_map(|&v| a.parity.parities().into_iter().map(move |p| (v, p)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build()
        .map_err(|e| CliError::Engine(Error::Io(e.to_string())))?;
    let results: Vec<Result<Vec<HomologyEntry>, CliError>> =
        pool.install(|| groups.par_iter().map(|&(v, p)| job.run_group(v, p)).collect());
    let mut entries = Vec::new();
    for r in results {
        entries.extend(r?);
    }
    let table = HomologyTable::new(entries);
    let text = match a.format {
        Format::Json => table.to_json(),
        Format::Csv => table.to_csv(),
    };
    match &a.out {
        Some(path) => fs::write(path, text).map_err(io)?,
        None => out.write_all(text.as_bytes()).map_err(io)?,
    }
    Ok(())
}
