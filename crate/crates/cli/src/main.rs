use std::fs;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mbspline::analysis::check;
use mbspline::sampling::{order_experiment, parse_functionals, AnalysisFunctional, Boundary, TestFunction};
use mbspline_cli::job::ReconstructJob;
use mbspline_cli::space::{Space, SpaceSpec};
use mbspline_cli::table::{curve_csv, fmt_f64, read_samples, slice_csv};
use mbspline_cli::{server, CliError};

#[derive(Parser)]
#[command(name = "mbspline", version, about = "Shortest-support spline bases and generalized sampling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a basis; writes <out>.json and <out>.csv, or prints the slice table.
    Build {
        /// Degree vector such as `4,5`, or a named basis id.
        space: SpaceSpec,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a basis and print the report. Exits 1 if any invariant fails.
    Check {
        /// Basis JSON file, degree vector or named basis id.
        space: SpaceSpec,
        /// Frequency samples on [0, 2π) for the Riesz bounds.
        #[arg(long, env = "MBSPLINE_OMEGA_GRID", default_value_t = 1024)]
        grid: usize,
        #[arg(long)]
        json: bool,
    },
    /// Reconstruct a dense curve from a samples CSV (`k,g1..gN`).
    Reconstruct {
        space: SpaceSpec,
        /// One file per curve dimension.
        #[arg(long, required = true)]
        samples: Vec<PathBuf>,
        /// Comma-separated tokens such as `v@0,d1@0`; defaults depend on the space.
        #[arg(long)]
        functionals: Option<String>,
        /// Curve points per unit interval.
        #[arg(long, default_value_t = 16)]
        grid: usize,
        #[arg(long, default_value = "mirror")]
        boundary: Boundary,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Approximation-order experiment on a smooth test function.
    Order {
        space: SpaceSpec,
        /// `sin`, `cos`, `exp` or `x^m`.
        #[arg(long, default_value = "sin")]
        function: TestFunction,
        #[arg(long, value_delimiter = ',', default_value = "0.5,0.25,0.125")]
        steps: Vec<f64>,
        #[arg(long)]
        functionals: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Serve POST /reconstruct.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Build { space, out } => {
            let space = space.load()?;
            let csv = slice_csv(&space.gs);
            match out {
                Some(stem) => {
                    let json = serde_json::to_string(&space.gs.to_json())?;
                    write(&stem.with_extension("json"), &(json + "\n"))?;
                    write(&stem.with_extension("csv"), &csv)?;
                }
                None => print!("{csv}"),
            }
        }
        Command::Check { space, grid, json } => {
            if grid < 2 {
                return Err(CliError::Usage("--grid must be at least 2".into()));
            }
            let space = space.load()?;
            let report = check(&space.gs, grid);
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                print!("{}", report.table());
            }
            if let Some(first) = report.failures.first() {
                println!("witness: {first}");
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Reconstruct {
            space,
            samples,
            functionals,
            grid,
            boundary,
            out,
        } => {
            let space = space.load()?;
            let mut start = None;
            let mut dims = Vec::with_capacity(samples.len());
            for path in &samples {
                let file = fs::File::open(path).map_err(|e| CliError::io(path, e))?;
                let s = read_samples(file)?;
                if start.is_some_and(|k| k != s.start) {
                    return Err(CliError::Usage("sample files start at different k".into()));
                }
                start = Some(s.start);
                dims.push(s.channels);
            }
            let job = ReconstructJob {
                functionals: functionals_or_default(functionals, &space)?,
                gs: space.gs,
                start: start.unwrap_or(0),
                dims,
                grid,
                boundary,
            };
            let curve = job.run()?;
            let csv = curve_csv(&curve);
            match out {
                Some(path) => {
                    write(&path, &csv)?;
                    println!("consistency {}", fmt_f64(curve.consistency));
                }
                None => {
                    print!("{csv}");
                    eprintln!("consistency {}", fmt_f64(curve.consistency));
                }
            }
        }
        Command::Order {
            space,
            function,
            steps,
            functionals,
            json,
        } => {
            if steps.len() < 3 || steps.iter().any(|h| h.is_nan() || *h <= 0.0) {
                return Err(CliError::Usage("need at least 3 positive steps".into()));
            }
            let space = space.load()?;
            let psi = functionals_or_default(functionals, &space)?;
            let report = order_experiment(&space.gs, &psi, function, &steps)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("space {}", space.label);
                println!("function {}", report.function);
                println!("h,error");
                for (h, e) in report.steps.iter().zip(&report.errors) {
                    println!("{},{}", fmt_f64(*h), fmt_f64(*e));
                }
                println!("slope {}", report.slope.map_or("n/a".into(), fmt_f64));
                println!("exact {}", report.exact);
            }
        }
        Command::Serve { port, host } => {
            let addr = SocketAddr::new(host, port);
            let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::io("runtime", e))?;
            eprintln!("listening on http://{addr}/reconstruct");
            rt.block_on(server::serve(addr)).map_err(|e| CliError::io(addr.to_string(), e))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn functionals_or_default(arg: Option<String>, space: &Space) -> Result<Vec<AnalysisFunctional>, CliError> {
    match arg {
        Some(s) => Ok(parse_functionals(&s)?),
        None => Ok(space.default_functionals.clone()),
    }
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}
