//! Command-line frontend: scene input, habitat/locus/inverse queries, field
//! verification, and SVG figure emission.
//!
//! Exit codes: 0 on success (an empty habitat is a valid answer), 1 when
//! verification finds a residual breach, 2 on invalid input.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod report;
mod scene;
mod svg;

use scene::Scene;

#[derive(Debug)]
pub enum CliError {
    /// Malformed scene or request; exit code 2.
    Input(String),
    /// A verification residual exceeded its budget; exit code 1.
    Verification(String),
}

#[derive(Parser)]
#[command(
    name = "trilocus",
    version,
    about = "Level sets of distance sums over convex polygons: habitats, conic loci, and inverse ellipse synthesis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SceneArgs {
    /// Scene file path, or '-' for stdin.
    #[arg(long)]
    scene: String,
    /// Write an SVG figure to this path.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Draw perpendicular feet from a probe point onto every side line.
    #[arg(long)]
    decorate: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Locate the level set of the side-distance sum inside the polygon.
    Habitat {
        #[command(flatten)]
        io: SceneArgs,
        /// Also compute and draw this many parallel level segments.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        levels: Option<u32>,
    },
    /// Classify the conic locus of the squared side-distance sum.
    Locus {
        #[command(flatten)]
        io: SceneArgs,
    },
    /// Synthesize the isosceles triangle realizing a canonical ellipse.
    Inverse {
        #[command(flatten)]
        io: SceneArgs,
    },
    /// Cross-check the closed-form answers against brute-force sampled fields.
    Verify {
        /// Scene file path, or '-' for stdin.
        #[arg(long)]
        scene: String,
        /// Grid nodes per unit length.
        #[arg(long, default_value_t = 512, value_parser = clap::value_parser!(u32).range(8..))]
        resolution: u32,
        /// Inject an error of this size into the computed answer (self-test).
        #[arg(long)]
        perturb: Option<f64>,
        /// Dump the first sampled field as CSV to this path.
        #[arg(long)]
        dump_field: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Verification(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Habitat { io, levels } => {
            let scene = load_scene(&io.scene)?;
            let out = commands::habitat(
                &scene,
                io.svg.is_some(),
                io.decorate || scene.decorate,
                levels.map(|m| m as usize),
            )?;
            emit(&out.report, out.svg.as_deref(), io.svg.as_deref())
        }
        Command::Locus { io } => {
            let scene = load_scene(&io.scene)?;
            let out = commands::locus(&scene, io.svg.is_some(), io.decorate || scene.decorate)?;
            emit(&out.report, out.svg.as_deref(), io.svg.as_deref())
        }
        Command::Inverse { io } => {
            let scene = load_scene(&io.scene)?;
            let out = commands::inverse(&scene, io.svg.is_some(), io.decorate || scene.decorate)?;
            emit(&out.report, out.svg.as_deref(), io.svg.as_deref())
        }
        Command::Verify { scene, resolution, perturb, dump_field } => {
            let scene = load_scene(&scene)?;
            let out = commands::verify(&scene, resolution, perturb, dump_field.is_some())?;
            print!("{}", out.report);
            if let (Some(path), Some(csv)) = (dump_field, out.field_csv) {
                fs::write(&path, csv)
                    .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
            }
            if out.passed {
                Ok(())
            } else {
                Err(CliError::Verification("verification failed".into()))
            }
        }
    }
}

fn load_scene(source: &str) -> Result<Scene, CliError> {
    let text = if source == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| CliError::Input(format!("cannot read stdin: {e}")))?;
        buffer
    } else {
        fs::read_to_string(source)
            .map_err(|e| CliError::Input(format!("cannot read {source}: {e}")))?
    };
    Scene::parse(&text)
}

fn emit(
    report: &str,
    svg: Option<&str>,
    svg_path: Option<&std::path::Path>,
) -> Result<(), CliError> {
    print!("{report}");
    if let (Some(path), Some(markup)) = (svg_path, svg) {
        fs::write(path, markup)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}
