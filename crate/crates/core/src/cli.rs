//! Command-line front end. Exit codes: 0 solved or passed, 2 infeasible or
//! failed, 1 for any error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::grid::build_grid;
use crate::instance::{Instance, Mode, Schedule};
use crate::json::{grid_to_value, parse_instance, parse_schedule, serialize_schedule};
use crate::oracle::{bfs_parallel, bfs_serial, default_window, OracleAnswer};
use crate::solve::{solve, SolveError, SolveOptions, SolverChoice};
use crate::svg::render;
use crate::verify::verify_schedule;

#[derive(Parser, Debug)]
#[command(name = "rect-motion", about = "Translation schedules for rectangular robots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SolverArg {
    Grid,
    Lp,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Find a shortest schedule.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum)]
        solver: Option<SolverArg>,
        #[arg(long)]
        max_moves: Option<usize>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Branch on the four edge cases instead of separating axes.
        #[arg(long)]
        legacy_cases: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a schedule against an instance.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        schedule: PathBuf,
    },
    /// Print the instance grid as JSON.
    Grid {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        depth: usize,
    },
    /// Optimal length by brute force over integer positions.
    Oracle {
        #[arg(long)]
        instance: PathBuf,
        /// Side of the square search window (ignored for boxed instances).
        #[arg(long, default_value_t = 13)]
        window: i64,
    },
    /// Write one SVG frame per step.
    Render {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        schedule: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_instance(path: &Path) -> Result<Instance, String> {
    parse_instance(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_schedule(path: &Path) -> Result<Schedule, String> {
    parse_schedule(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_file(path: &Path, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32, String> {
    let io = |e: std::io::Error| e.to_string();
    match cmd {
        Command::Solve { instance, solver, max_moves, threads, legacy_cases, out: dest } => {
            let inst = load_instance(&instance)?;
            let choice = solver.map(|s| match s {
                SolverArg::Grid => SolverChoice::Grid,
                SolverArg::Lp => SolverChoice::EventLp,
            });
            let opts = SolveOptions { threads: threads.max(1), max_moves, legacy_cases };
            match solve(&inst, choice, &opts) {
                Ok(s) => {
                    let text = serialize_schedule(&s);
                    match dest {
                        Some(p) => {
                            write_file(&p, &text)?;
                            writeln!(out, "solved: {} steps", s.len()).map_err(io)?;
                        }
                        None => writeln!(out, "{text}").map_err(io)?,
                    }
                    Ok(0)
                }
                Err(e @ SolveError::Infeasible { .. }) => {
                    writeln!(out, "infeasible: {e}").map_err(io)?;
                    Ok(2)
                }
                Err(e) => Err(e.to_string()),
            }
        }
        Command::Verify { instance, schedule } => {
            let inst = load_instance(&instance)?;
            let s = load_schedule(&schedule)?;
            let report = verify_schedule(&inst, &s);
            writeln!(out, "{report}").map_err(io)?;
            Ok(if report.passed() { 0 } else { 2 })
        }
        Command::Grid { instance, depth } => {
            let inst = load_instance(&instance)?;
            let g = build_grid(&inst, depth).map_err(|e| e.to_string())?;
            let v = grid_to_value(&g.xs, &g.ys);
            writeln!(out, "{}", serde_json::to_string_pretty(&v).map_err(|e| e.to_string())?).map_err(io)?;
            Ok(0)
        }
        Command::Oracle { instance, window } => {
            let inst = load_instance(&instance)?;
            if window <= 0 {
                return Err("window must be positive".into());
            }
            let w = default_window(&inst, window);
            let answer = match inst.mode() {
                Mode::Serial => bfs_serial(&inst, &w),
                Mode::Parallel => bfs_parallel(&inst, &w),
            }
            .map_err(|e| e.to_string())?;
            match answer {
                OracleAnswer::Optimal(n) => {
                    writeln!(out, "{n}").map_err(io)?;
                    Ok(0)
                }
                OracleAnswer::Infeasible => {
                    writeln!(out, "infeasible").map_err(io)?;
                    Ok(2)
                }
            }
        }
        Command::Render { instance, schedule, out: dir } => {
            let inst = load_instance(&instance)?;
            let s = load_schedule(&schedule)?;
            std::fs::create_dir_all(&dir).map_err(|e| format!("{}: {e}", dir.display()))?;
            let frames = render(&inst, &s);
            for (name, text) in &frames {
                write_file(&dir.join(name), text)?;
            }
            writeln!(out, "wrote {} frames to {}", frames.len(), dir.display()).map_err(io)?;
            Ok(0)
        }
    }
}

/// Runs the command line `argv` (program name first), writing results to
/// `out` and a single diagnostic line to `err` on failure.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let text = e.to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("usage error");
            let _ = writeln!(err, "{line}");
            return 1;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

pub fn run(argv: &[String]) -> i32 {
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
