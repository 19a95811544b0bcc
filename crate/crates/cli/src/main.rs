use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polyvert::decomposition::DecompositionKind;
use polyvert::io::{
    decomposition_from_json, decomposition_to_json, error_json, gallery, parse_point, parse_scene,
    run, Command, RunOptions,
};
use polyvert::{par, Error, Result};

const EXIT_CODES: &str = "\
Exit codes:
  0  success, every certificate and check passed
  1  a certificate or check failed (the report has \"ok\": false)
  2  usage error (bad arguments or POLYVERT_WORKERS)
  3  schema error in an input file (the body names the line or field)
  4  non-rational number in an input (floats are rejected)
  5  dimension mismatch
  6  unbounded support where bounded support is required
  7  evaluation point is a pole of the transform
  8  file system error
  9  unknown gallery scene
  10 precondition failed (e.g. minimality check on a failed certificate)
  11 polyhedron is not full-dimensional
  12 polyhedron is empty
  13 cone generators are linearly dependent
  14 direction is orthogonal to a cone generator

Reports and error bodies are JSON on stdout. Scenes are file paths or
gallery:<name>. POLYVERT_WORKERS bounds the worker pool.";

#[derive(Parser)]
#[command(name = "polyvert", version, about = "Algebraic vertices and certified decompositions of polyhedral functions", after_help = EXIT_CODES)]
struct Cli {
    /// Seed for random scenes and the zero-test grid offset.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Add wall-clock timing to reports (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Simplices,
    Cones,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify arrangement vertices as algebraic and/or geometric.
    Vertices { scene: String },
    /// Signed decomposition into simplices or cones, with certificate.
    Decompose {
        #[arg(long, value_enum)]
        mode: Mode,
        scene: String,
        /// Also write the decomposition JSON here.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Symbolic transform, optionally evaluated and checked by quadrature.
    Transform {
        scene: String,
        /// Evaluation point: "z=[-1,-2]", a JSON array, or a JSON file.
        #[arg(long)]
        eval: Option<String>,
        /// Compare against numerical integration.
        #[arg(long)]
        check_oracle: bool,
    },
    /// Check the signed-section criterion on the generating hyperplanes.
    CheckSections { scene: String },
    /// Re-check a stored decomposition against a scene.
    Verify {
        scene: String,
        decomposition: PathBuf,
    },
    /// List or export the built-in scenes.
    Gallery {
        #[arg(long, conflicts_with = "dump")]
        list: bool,
        /// Write every scene as <name>.json into this directory.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

/// Prints the result and returns whether every check passed.
fn execute(cli: &Cli) -> Result<bool> {
    let options = RunOptions {
        seed: cli.seed,
        timing: cli.timing,
    };
    let (scene, command, output) = match &cli.command {
        Cmd::Gallery { dump, .. } => {
            let scenes = gallery(cli.seed);
            let mut listing = Vec::new();
            if let Some(dir) = dump {
                std::fs::create_dir_all(dir)
                    .map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
            }
            for s in &scenes {
                let mut entry =
                    json!({ "name": s.name, "dimension": s.ambient_dim, "digest": s.digest() });
                if let Some(n) = &s.note {
                    entry["note"] = json!(n);
                }
                if let Some(dir) = dump {
                    let path = dir.join(format!("{}.json", s.name));
                    write(&path, &s.to_json_string())?;
                    entry["path"] = json!(path.display().to_string());
                }
                listing.push(entry);
            }
            print!("{}", pretty(&json!({ "scenes": listing })));
            return Ok(true);
        }
        Cmd::Vertices { scene } => (scene, Command::Vertices, None),
        Cmd::Decompose {
            mode,
            scene,
            output,
        } => {
            let kind = match mode {
                Mode::Simplices => DecompositionKind::Simplices,
                Mode::Cones => DecompositionKind::Cones,
            };
            (scene, Command::Decompose { kind }, output.as_ref())
        }
        Cmd::Transform {
            scene,
            eval,
            check_oracle,
        } => {
            let eval = eval.as_deref().map(parse_point).transpose()?;
            (
                scene,
                Command::Transform {
                    eval,
                    check_oracle: *check_oracle,
                },
                None,
            )
        }
        Cmd::CheckSections { scene } => (scene, Command::CheckSections, None),
        Cmd::Verify {
            scene,
            decomposition,
        } => {
            let decomposition = decomposition_from_json(&read(decomposition)?)?;
            (scene, Command::Verify { decomposition }, None)
        }
    };
    let scene = parse_scene(scene, cli.seed)?;
    let report = run(&command, &scene, &options)?;
    if let (Some(path), Some(dec)) = (output, &report.decomposition) {
        write(path, &pretty(&decomposition_to_json(dec)))?;
    }
    print!("{}", report.to_json_string());
    Ok(report.ok)
}

fn workers() -> std::result::Result<Option<usize>, String> {
    match std::env::var("POLYVERT_WORKERS") {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!(
                "POLYVERT_WORKERS must be a positive integer, got {s:?}"
            )),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match workers() {
        Err(msg) => {
            print!(
                "{}",
                pretty(
                    &json!({ "ok": false, "error": { "error": "usage", "message": msg, "exit_code": 2 } })
                )
            );
            return ExitCode::from(2);
        }
        Ok(Some(n)) => par::with_workers(n, || execute(&cli)),
        Ok(None) => execute(&cli),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            print!("{}", pretty(&error_json(&e)));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
