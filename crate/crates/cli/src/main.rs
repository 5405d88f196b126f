//! `chedra`: build, classify, flex and validate axial cone-nets from JSON
//! spec documents.
//!
//! Exit status is 0 when everything checks out, 2 when a net fails
//! validation or is not flexible, and 1 for any other error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use chedra_core::exec::Execution;
use chedra_core::io::{export_geometry, load_spec, to_stable_json, Format, GeometryDocument};
use chedra_core::net::{build_net, build_unchecked, flex, net_flexion_range, parallel_transfer, sweep, ConeNet, ParallelScales};
use chedra_core::validation::{validate_net, validate_state};
use chedra_core::Error;

#[derive(Parser)]
#[command(name = "chedra", version, about = "Axial cone-net construction and flexion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Output file (stdout when omitted).
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// json or obj.
    #[arg(long, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Build the net and export its reference state.
    Build {
        spec: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Print the case label of every triple.
    Classify { spec: PathBuf },
    /// Export one flexed state or a sweep of OBJ frames.
    Flex {
        spec: PathBuf,
        #[arg(long, conflicts_with = "sweep", required_unless_present = "sweep")]
        a: Option<f64>,
        /// Number of frames across the flexion range, written as
        /// `frame_####.obj` into the directory given by `-o`.
        #[arg(long)]
        sweep: Option<usize>,
        #[command(flatten)]
        out: Output,
    },
    /// Print the flexion range.
    Range { spec: PathBuf },
    /// Run planarity, isometry and collinearity checks.
    Validate {
        spec: PathBuf,
        /// State to check (reference state when omitted).
        #[arg(long)]
        a: Option<f64>,
    },
    /// Export the edge-parallel transfer of a net.
    Parallel {
        spec: PathBuf,
        /// JSON file with `row_scales` and `col_scales`; defaults to the
        /// spec's `parallel` field.
        #[arg(long)]
        scales: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Start the HTTP service.
    Serve {
        #[arg(long, default_value_t = chedra_service::DEFAULT_PORT)]
        port: u16,
    },
}

fn is_validation_failure(e: &anyhow::Error) -> bool {
    matches!(e.downcast_ref::<Error>(), Some(Error::NotFlexible { .. } | Error::MixedCases(_)))
}

fn write_out(out: &Output, bytes: &[u8]) -> Result<()> {
    match &out.output {
        Some(p) => fs::write(p, bytes).with_context(|| format!("writing {}", p.display())),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

fn export(net: &ConeNet, a: Option<f64>, out: &Output) -> Result<bool> {
    let state = match a {
        Some(a) => flex(net, a)?,
        None => net.reference_state(),
    };
    let report = validate_state(net, &state)?;
    let passed = report.passed;
    let doc = GeometryDocument::new(&state, Some(report));
    write_out(out, &export_geometry(&doc, out.format)?)?;
    Ok(passed)
}

fn frames(net: &ConeNet, n: usize, dir: &Path) -> Result<bool> {
    if n == 0 {
        bail!("--sweep needs at least one frame");
    }
    let Some(iv) = net_flexion_range(net).into_iter().next() else {
        bail!("the net has an empty flexion range");
    };
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let values = iv.interior_samples(n);
    let mut passed = true;
    for (i, st) in sweep(net, &values, Execution::default()).into_iter().enumerate() {
        let st = st?;
        passed &= validate_state(net, &st)?.passed;
        let doc = GeometryDocument::new(&st, None);
        let path = dir.join(format!("frame_{i:04}.obj"));
        fs::write(&path, export_geometry(&doc, Format::Obj)?).with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!("wrote {n} frames for a in [{:e}, {:e}]", values[0], values[n - 1]);
    Ok(passed)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Build { spec, out } => {
            let net = build_net(&load_spec(&spec)?, true)?;
            export(&net, None, &out)
        }
        Command::Classify { spec } => {
            let net = build_unchecked(&load_spec(&spec)?)?;
            for c in &net.classification {
                println!("{}", c.label);
            }
            Ok(net.is_flexible())
        }
        Command::Flex { spec, a, sweep: n, out } => {
            let net = build_net(&load_spec(&spec)?, true)?;
            match n {
                Some(n) => frames(&net, n, out.output.as_deref().unwrap_or(Path::new("."))),
                None => export(&net, a, &out),
            }
        }
        Command::Range { spec } => {
            let net = build_net(&load_spec(&spec)?, true)?;
            println!("{}", to_stable_json(&net_flexion_range(&net))?);
            Ok(true)
        }
        Command::Validate { spec, a } => {
            let net = build_unchecked(&load_spec(&spec)?)?;
            let report = validate_net(&net, a)?;
            println!("{}", to_stable_json(&report)?);
            Ok(report.passed)
        }
        Command::Parallel { spec, scales, out } => {
            let mut spec = load_spec(&spec)?;
            let scales: ParallelScales = match scales {
                Some(p) => {
                    let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
                    serde_json::from_str(&text).map_err(|e| Error::Schema(e.to_string()))?
                }
                None => match spec.parallel.take() {
                    Some(s) => s,
                    None => bail!("no scales: pass --scales or add a \"parallel\" field"),
                },
            };
            spec.parallel = None;
            let net = parallel_transfer(&build_net(&spec, true)?, &scales)?;
            export(&net, None, &out)
        }
        Command::Serve { port } => {
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(chedra_service::serve(port))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    // Usage errors exit with 1; clap's default of 2 is reserved for
    // validation failures.
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let status = match run(cli) {
        Ok(true) => 0,
        Ok(false) => 2,
        Err(e) => {
            eprintln!("error: {e:#}");
            if is_validation_failure(&e) {
                2
            } else {
                1
            }
        }
    };
    ExitCode::from(status)
}
