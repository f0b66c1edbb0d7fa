//! `planepart` — exact and asymptotic counting of linear and plane
//! partitions.
//!
//! Exit codes: 0 success, 2 usage or domain error, 3 generator ceiling
//! exceeded, 4 series convergence failure. Warnings go to stderr prefixed
//! `warning:`; primary output stays clean for piping.

mod cache;
mod output;

use std::io::Write;
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use planepart::asymptotics::{self, CVariant, EstimateBase};
use planepart::bose::{self, Dimension, OscillatorPoint};
use planepart::counting::{self, RestrictionSpec};
use planepart::plane;
use planepart::Error;

use cache::Cache;
use output::{Format, ZnRow};

#[derive(Parser)]
#[command(
    name = "planepart",
    version,
    about = "Exact and asymptotic counting of linear and plane partitions"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CountKind {
    P1d,
    P2d,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BaseArg {
    /// Exact p2d(n) as the base value.
    Exact,
    /// Asymptotic base with c = zeta'(-1).
    Wright,
    /// Asymptotic base with c = -1/6.
    Pr,
}

impl BaseArg {
    fn name(self) -> &'static str {
        match self {
            BaseArg::Exact => "exact",
            BaseArg::Wright => "wright",
            BaseArg::Pr => "pr",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact partition count, optionally restricted to at most N parts
    Count {
        /// Which sequence: linear (p1d) or plane (p2d) partitions
        #[arg(value_enum)]
        kind: CountKind,
        /// The integer being partitioned
        #[arg(long)]
        n: u64,
        /// Cap on the number of nonzero parts
        #[arg(long)]
        max_parts: Option<u64>,
        /// JSON cache file for unrestricted counts
        #[arg(long, env = "PLANEPART_CACHE")]
        cache: Option<PathBuf>,
        /// Worker threads for the restricted plane counting pass
        #[arg(long)]
        jobs: Option<NonZeroUsize>,
        /// Override the generator ceiling
        #[arg(long)]
        ceiling: Option<u64>,
    },
    /// Asymptotic estimate of the (restricted) plane partition count
    Estimate {
        #[arg(long)]
        n: u64,
        /// Cap on the number of parts; omit for the unrestricted estimate
        #[arg(long)]
        max_parts: Option<u64>,
        /// Base value the restriction factor multiplies
        #[arg(long, value_enum, default_value_t = BaseArg::Exact)]
        base: BaseArg,
    },
    /// Partition function Z_N(x) and correction factor y_N(x) over N
    Zn {
        /// Oscillator dimension, 1 or 2
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        dim: u8,
        /// Boltzmann factor, strictly between 0 and 1
        #[arg(long)]
        x: f64,
        /// Largest N to evaluate
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n_max: u64,
        /// Relative truncation tolerance for ln Z_inf
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Exhaustively generate plane partitions of n
    Gen {
        #[arg(long)]
        n: u64,
        /// Print every partition in the block text format instead of the count
        #[arg(long)]
        emit: bool,
        /// Worker threads for the counting pass
        #[arg(long)]
        jobs: Option<NonZeroUsize>,
        /// Override the generator ceiling
        #[arg(long)]
        ceiling: Option<u64>,
    },
    /// Benchmark table: exact restricted counts vs the three estimates
    Table1,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidArgument(_) | Error::DimensionMismatch { .. } => 2,
        Error::CeilingExceeded { .. } => 3,
        Error::Convergence { .. } => 4,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Count {
            kind,
            n,
            max_parts,
            cache,
            jobs,
            ceiling,
        } => cmd_count(cli.format, kind, n, max_parts, cache, jobs, ceiling),
        Command::Estimate { n, max_parts, base } => cmd_estimate(cli.format, n, max_parts, base),
        Command::Zn { dim, x, n_max, tol } => cmd_zn(cli.format, dim, x, n_max as usize, tol),
        Command::Gen {
            n,
            emit,
            jobs,
            ceiling,
        } => cmd_gen(cli.format, n, emit, jobs, ceiling),
        Command::Table1 => {
            let rows = asymptotics::table1_report()?;
            output::emit_table1(cli.format, &rows);
            Ok(())
        }
    }
}

fn cmd_count(
    format: Format,
    kind: CountKind,
    n: u64,
    max_parts: Option<u64>,
    cache_path: Option<PathBuf>,
    jobs: Option<NonZeroUsize>,
    ceiling: Option<u64>,
) -> Result<(), Error> {
    let spec = RestrictionSpec::new(n, max_parts)?;
    let kind_name = match kind {
        CountKind::P1d => "p1d",
        CountKind::P2d => "p2d",
    };

    // Unrestricted counts go through the cache when one is configured.
    let count = if spec.max_parts.is_none() {
        if let Some(path) = &cache_path {
            let mut cache = Cache::load(path);
            match cache.get(kind_name, n) {
                Some(hit) => hit,
                None => {
                    let computed = match kind {
                        CountKind::P1d => counting::p1d(n),
                        CountKind::P2d => counting::p2d(n),
                    };
                    cache.insert(kind_name, n, &computed);
                    cache.save(path);
                    computed
                }
            }
        } else {
            match kind {
                CountKind::P1d => counting::p1d(n),
                CountKind::P2d => counting::p2d(n),
            }
        }
    } else {
        match kind {
            CountKind::P1d => counting::p1d_atmost(spec),
            CountKind::P2d => {
                let ceiling = ceiling.unwrap_or(plane::DEFAULT_CEILING);
                match (jobs, spec.max_parts) {
                    (Some(workers), Some(cap)) if cap < n => {
                        let hist = plane::count_by_parts_parallel(n, ceiling, workers)?;
                        let mut total = BigUint::zero();
                        for h in hist.iter().take(cap as usize + 1) {
                            total += h;
                        }
                        total
                    }
                    _ => counting::p2d_atmost_with_ceiling(spec, ceiling)?,
                }
            }
        }
    };

    output::emit_count(format, kind_name, n, max_parts, &count);
    Ok(())
}

fn cmd_estimate(
    format: Format,
    n: u64,
    max_parts: Option<u64>,
    base: BaseArg,
) -> Result<(), Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("estimate requires n >= 1".into()));
    }
    match max_parts {
        Some(0) => Err(Error::InvalidArgument(
            "max_parts must be at least 1 when given".into(),
        )),
        Some(cap) => {
            let estimate_base = match base {
                BaseArg::Exact => EstimateBase::Exact,
                BaseArg::Wright => EstimateBase::Wright,
                BaseArg::Pr => EstimateBase::Pr,
            };
            let est = asymptotics::p2d_restricted_estimate(n, cap, estimate_base);
            if !est.in_window {
                let (lo, hi) = asymptotics::parts_window(n);
                eprintln!(
                    "warning: max_parts = {cap} is outside the validity window [{lo:.3}, {hi}) for n = {n}"
                );
            }
            output::emit_estimate(
                format,
                n,
                Some(cap),
                base.name(),
                est.value,
                Some(est.in_window),
            );
            Ok(())
        }
        None => {
            let value = match base {
                BaseArg::Exact => counting::p2d(n).to_f64().unwrap_or(f64::INFINITY),
                BaseArg::Wright => asymptotics::p2d_unrestricted_estimate(n, CVariant::Wright),
                BaseArg::Pr => asymptotics::p2d_unrestricted_estimate(n, CVariant::Pr),
            };
            output::emit_estimate(format, n, None, base.name(), value, None);
            Ok(())
        }
    }
}

fn cmd_zn(format: Format, dim: u8, x: f64, n_max: usize, tol: f64) -> Result<(), Error> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument("tol must be positive".into()));
    }
    let dim = Dimension::from_value(dim)?;
    let point = OscillatorPoint::new(x, dim)?;
    let ln_zinf = bose::z_inf(point, tol)?;
    let ln_zn = bose::zn_ln_recurrence(point, n_max);

    let mut rows = Vec::with_capacity(n_max + 1);
    let mut max_rel_dev: Option<f64> = None;
    for (n, &ln_z) in ln_zn.iter().enumerate() {
        let z = ln_z.exp();
        let y = (ln_z - ln_zinf).exp().min(1.0);
        let z_closed = match dim {
            Dimension::One => {
                let closed = bose::zn_1d_closed(point, n)?;
                let dev = (z / closed - 1.0).abs();
                max_rel_dev = Some(max_rel_dev.unwrap_or(0.0).max(dev));
                Some(closed)
            }
            Dimension::Two => None,
        };
        rows.push(ZnRow { n, z, y, z_closed });
    }
    output::emit_zn(format, dim.value(), x, &rows, max_rel_dev);
    Ok(())
}

fn cmd_gen(
    format: Format,
    n: u64,
    emit: bool,
    jobs: Option<NonZeroUsize>,
    ceiling: Option<u64>,
) -> Result<(), Error> {
    let ceiling = ceiling.unwrap_or(plane::DEFAULT_CEILING);
    if emit {
        if format != Format::Table {
            return Err(Error::InvalidArgument(
                "--emit writes the plain block format; drop --format".into(),
            ));
        }
        let stdout = std::io::stdout();
        let mut out = std::io::BufWriter::new(stdout.lock());
        let mut first = true;
        plane::visit_all_with_ceiling(n, ceiling, |rows| {
            if !first {
                let _ = writeln!(out);
            }
            first = false;
            for row in rows {
                let line: Vec<String> = row.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "{}", line.join(" "));
            }
        })?;
        let _ = out.flush();
        return Ok(());
    }

    let hist = match jobs {
        Some(workers) => plane::count_by_parts_parallel(n, ceiling, workers)?,
        None => plane::count_by_parts_with_ceiling(n, ceiling)?,
    };
    let mut total = BigUint::zero();
    for h in &hist {
        total += h;
    }
    output::emit_gen_count(format, n, &total);
    Ok(())
}
