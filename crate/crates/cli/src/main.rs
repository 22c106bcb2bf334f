use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use qslice::Rational;
use qslice_cli::{run, ArrangementKind, Command, EngineArg, Format, RunConfig, Window, EXIT_USAGE};

/// Roots, leaves, slice quivers and bounded-chamber classification for
/// framed flower quivers, in exact arithmetic.
///
/// Set QS_LOG (error, warn, info, debug, trace) for diagnostics on stderr.
#[derive(Parser, Debug)]
#[command(name = "qslice", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,

    /// Dimension at the flower vertex; slice rank for classify and chambers.
    #[arg(long, default_value_t = 2)]
    n: u32,

    /// Number of loops at the flower vertex.
    #[arg(long, default_value_t = 2)]
    loops: u32,

    /// Framing rank.
    #[arg(long, default_value_t = 1)]
    framing: u32,

    /// Quantization parameter, an exact rational such as 3, -7/3.
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<Rational>,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Worker threads (defaults to all cores).
    #[arg(long)]
    jobs: Option<usize>,

    /// Quiver JSON file for `roots`.
    #[arg(long)]
    quiver: Option<PathBuf>,

    /// Inclusive integer range `a:b` of parameters for `sweep`.
    #[arg(long, allow_hyphen_values = true)]
    window: Option<Window>,

    /// Random points per run of `modelcheck`.
    #[arg(long, default_value_t = 20)]
    samples: usize,

    #[arg(long, value_enum, default_value_t = EngineArg::Simplex)]
    engine: EngineArg,

    /// Arrangement scanned by `chambers`.
    #[arg(long, value_enum, default_value_t = ArrangementKind::Reduced)]
    arrangement: ArrangementKind,

    /// Leaf point `s1,..,sl,t1,..,tl` whose transition matrix `modelcheck` prints.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    point: Option<Vec<Rational>>,

    /// Include elimination traces for bounded chambers in `chambers`.
    #[arg(long)]
    trace: bool,
}

impl From<Args> for RunConfig {
    fn from(a: Args) -> Self {
        RunConfig {
            command: a.command,
            n: a.n,
            loops: a.loops,
            framing: a.framing,
            lambda: a.lambda,
            format: a.format,
            seed: a.seed,
            jobs: a.jobs,
            quiver: a.quiver,
            window: a.window,
            samples: a.samples,
            engine: a.engine,
            arrangement: a.arrangement,
            point: a.point,
            trace: a.trace,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("QS_LOG", "warn")).init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let config = RunConfig::from(args);
    match run(&config) {
        Ok(report) => {
            print!("{}", report.render(config.format));
            if !report.ok {
                eprintln!("cross-check mismatch; see the report");
            }
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("qslice: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
