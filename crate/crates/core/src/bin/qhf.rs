use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use qhf_core::report::{cmd_construct, cmd_verify, write_artifacts, Command as ReportCommand, RunReport};
use qhf_core::scene::{max_dim_from_env, Scene, SceneConfig};
use qhf_core::sweep::{run_sweep, Fault, SweepOptions, DEFAULT_MAX_ORDER};

const EXIT_INPUT: u8 = 4;

#[derive(Parser)]
#[command(name = "qhf", version, about = "Exact algebraic quantum hypergroup constructions over Q(i)")]
struct Cli {
    /// Output format for stdout.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,

    /// Include failure witnesses in JSON output.
    #[arg(long, global = true)]
    witnesses: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    FunctionAlgebra,
    GroupAlgebra,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build every object in a scene and verify its axioms and invariants.
    Verify {
        scene: PathBuf,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the scene's pipelines and serialize every construction.
    Construct {
        scene: PathBuf,
        /// Directory for per-construction JSON artifacts.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sweep the group catalog and every subgroup.
    Sweep {
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
        #[arg(long)]
        search_exceptional: bool,
        /// Only catalog entries whose name contains this string.
        #[arg(long)]
        only: Option<String>,
        /// Corrupt one builder's output (testing only).
        #[arg(long, value_enum, hide = true)]
        fault: Option<FaultArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_scene(path: &PathBuf) -> Result<Scene, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let config = SceneConfig::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let max_dim = max_dim_from_env().map_err(|e| e.to_string())?;
    Scene::resolve(config, max_dim).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit(report: &RunReport, cli: &Cli, witnesses: bool, out: Option<&PathBuf>) -> Result<(), String> {
    let json = report.to_json(witnesses).map_err(|e| e.to_string())?;
    if let Some(path) = out {
        std::fs::write(path, &json).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    match cli.format {
        Format::Json => print!("{json}"),
        Format::Text => print!("{}", report.to_text()),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, (u8, String)> {
    let input = |e: String| (EXIT_INPUT, e);
    let start = Instant::now();
    let (mut report, witnesses, out) = match &cli.command {
        Cmd::Verify { scene, out } => {
            let scene = load_scene(scene).map_err(input)?;
            let w = cli.witnesses || scene.config.options.emit_witnesses;
            (cmd_verify(&scene), w, out.as_ref())
        }
        Cmd::Construct { scene, out_dir, out } => {
            let scene = load_scene(scene).map_err(input)?;
            let w = cli.witnesses || scene.config.options.emit_witnesses;
            let report = cmd_construct(&scene).map_err(|e| input(e.to_string()))?;
            if let Some(dir) = out_dir {
                write_artifacts(&report, dir, w).map_err(|e| input(e.to_string()))?;
            }
            (report, w, out.as_ref())
        }
        Cmd::Sweep { max_order, search_exceptional, only, fault, out } => {
            let opts = SweepOptions {
                max_order: *max_order,
                search_exceptional: *search_exceptional,
                fault: fault.map(|f| match f {
                    FaultArg::FunctionAlgebra => Fault::FunctionAlgebra,
                    FaultArg::GroupAlgebra => Fault::GroupAlgebra,
                }),
                only: only.clone(),
            };
            let sweep = run_sweep(&opts).map_err(|e| (2, e.to_string()))?;
            let mut report = RunReport::new(ReportCommand::Sweep);
            report.sweep = Some(sweep);
            report.recompute_summary();
            (report, cli.witnesses, out.as_ref())
        }
    };
    report.elapsed_secs = Some(start.elapsed().as_secs_f64());
    emit(&report, cli, witnesses, out).map_err(input)?;
    Ok(report.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("qhf: {msg}");
            ExitCode::from(code)
        }
    }
}
