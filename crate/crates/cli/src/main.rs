use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use tambara_cli::workspace::builtin_functor_names;
use tambara_cli::{execute, execute_workspace, export_functor, load_workspace, Plan, Run, Scope, Workspace};

#[derive(Parser)]
#[command(name = "tambara", version, about = "Ideals, prime spectra and axiom checks for finite Tambara functors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Tambara functor axioms.
    Check(Common),
    /// Enumerate ideals and check the radical and product laws.
    Ideals(Common),
    /// Compute the prime spectrum and verify its topology.
    Spectrum(Common),
    /// Build the frame of radical ideals.
    Frame(Common),
    /// Check the maps induced by morphisms on frames and spectra.
    Map {
        #[command(flatten)]
        common: Common,
        /// Only this morphism.
        #[arg(long)]
        morphism: Option<String>,
    },
    /// Run a named suite: axioms, ideals, spectrum, frame, functoriality or full.
    Suite {
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run the job list of a workspace.
    Run(Common),
    /// Print a functor as a workspace with explicit tables.
    Export(Common),
    /// List the built-in functors.
    List,
}

#[derive(Args)]
struct Common {
    /// Workspace document; without it the built-in fixtures are used.
    #[arg(long)]
    workspace: Option<PathBuf>,
    /// Restrict to one functor (workspace name or built-in name).
    #[arg(long)]
    functor: Option<String>,
    /// Write the report and artifacts into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

fn workspace(c: &Common) -> Result<Option<Workspace>> {
    c.workspace.as_deref().map(|p| load_workspace(p).with_context(|| format!("loading {}", p.display()))).transpose()
}

fn scope(c: &Common, ws: Option<&Workspace>) -> Result<Scope> {
    let scope = ws.map_or_else(Scope::builtin, Scope::from_workspace);
    Ok(match &c.functor {
        Some(f) => scope.with_functor(f)?,
        None => scope,
    })
}

fn write_out(dir: &Path, run: &Run) -> Result<()> {
    if run.report.jobs.is_empty() && run.artifacts.is_empty() {
        return Ok(());
    }
    std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for a in &run.artifacts {
        let path = dir.join(&a.path);
        std::fs::write(&path, &a.content).with_context(|| format!("writing {}", path.display()))?;
    }
    let path = dir.join("report.json");
    std::fs::write(&path, run.report.to_json()).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn print(c: &Common, run: &Run) -> Result<()> {
    match c.format {
        Format::Json => print!("{}", run.report.to_json()),
        Format::Text => print!("{}", run.report.to_text()),
        Format::Dot => {
            let dots: Vec<&str> =
                run.artifacts.iter().filter(|a| a.path.ends_with(".dot")).map(|a| a.content.as_str()).collect();
            if dots.is_empty() && !run.report.jobs.is_empty() {
                bail!("this command emits no DOT output; use frame or spectrum");
            }
            print!("{}", dots.concat());
        }
    }
    Ok(())
}

fn finish(c: &Common, run: Run) -> Result<ExitCode> {
    if let Some(dir) = &c.out {
        write_out(dir, &run)?;
    }
    print(c, &run)?;
    Ok(if run.report.passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn verb(name: &str, suite: Option<&str>, c: &Common, morphism: Option<&str>) -> Result<ExitCode> {
    let plan = Plan::for_verb(name, suite)?;
    let ws = workspace(c)?;
    let mut scope = scope(c, ws.as_ref())?;
    if let Some(m) = morphism {
        scope = scope.with_morphism(m)?;
    }
    let command = match suite {
        Some(s) => format!("{name} {s}"),
        None => name.to_string(),
    };
    finish(c, execute(&command, &plan, &scope, c.jobs)?)
}

fn run() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Check(c) => verb("check", None, &c, None),
        Command::Ideals(c) => verb("ideals", None, &c, None),
        Command::Spectrum(c) => verb("spectrum", None, &c, None),
        Command::Frame(c) => verb("frame", None, &c, None),
        Command::Map { common, morphism } => verb("map", None, &common, morphism.as_deref()),
        Command::Suite { name, common } => verb("suite", Some(&name), &common, None),
        Command::Run(c) => {
            let Some(ws) = workspace(&c)? else { bail!("run needs --workspace") };
            finish(&c, execute_workspace(&ws, c.jobs)?)
        }
        Command::Export(c) => {
            let Some(name) = &c.functor else { bail!("export needs --functor") };
            let ws = workspace(&c)?;
            let t = scope(&c, ws.as_ref())?.functors.remove(0);
            print!("{}", export_functor(name, &t).to_json());
            Ok(ExitCode::SUCCESS)
        }
        Command::List => {
            for name in builtin_functor_names() {
                println!("{name}");
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    run().unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
