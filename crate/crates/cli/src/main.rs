//! hqc: build, verify and export exterior algebras described by scenario files.

use clap::{Parser, Subcommand};
use hqc_core::report::Report;
use hqc_core::scenario::{self, Build, Scenario, ScenarioError, FIXTURE_NAMES};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(name = "hqc", version, about = "Exact Hopf-algebraic calculi over finite groups")]
struct Cli {
    /// highest degree built
    #[arg(long, global = true, env = "HQC_DEGREE_CAP")]
    degree_cap: Option<usize>,
    /// write the JSON report (or export, or fixture) to this file
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// print JSON on stdout instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// construct the objects and report construction-time checks
    Build { scenario: PathBuf },
    /// run the full invariant suite
    Verify { scenario: PathBuf },
    /// print dimensions per degree
    Dims { scenario: PathBuf },
    /// build and check the duality pairing with the partner
    Pair { scenario: PathBuf },
    /// write structure constants and matrices as JSON
    Export { scenario: PathBuf },
    /// write the built-in scenario files
    Fixtures {
        /// z2-minimal, z2-universal, z2-subshuffle or all
        name: String,
        /// directory for `all` (default: current directory)
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Construction(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Schema(_) | CliError::Io(_) => 1,
            CliError::Construction(_) => 2,
            CliError::Verification(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Schema(_) => "schema",
            CliError::Io(_) => "io",
            CliError::Construction(_) => "construction",
            CliError::Verification(_) => "verification",
        }
    }
}

impl From<ScenarioError> for CliError {
    fn from(e: ScenarioError) -> Self {
        match e {
            ScenarioError::Schema(m) => CliError::Schema(m),
            ScenarioError::Construction(m) => CliError::Construction(m),
        }
    }
}

fn load(path: &Path) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Schema(format!("{}: {}", path.display(), e)))?;
    Ok(Scenario::from_json(&text)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn report_json(b: &Build, command: &str, r: Option<&Report>) -> Value {
    let mut v = json!({
        "scenario": b.scenario.name,
        "command": command,
        "degree_cap": b.cap,
        "dims": scenario::degree_map(&b.omega.dims),
    });
    if let Some(r) = r {
        v["status"] = json!(if r.all_pass() { "pass" } else { "fail" });
        v["checks"] = json!(r.checks);
    } else {
        v["status"] = json!("pass");
    }
    v
}

fn dims_line(b: &Build) -> String {
    b.dims().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
}

/// Emits the report per the flags and maps its status to the exit code.
fn emit(cli: &Cli, b: &Build, command: &str, r: Option<&Report>) -> Result<(), CliError> {
    let v = report_json(b, command, r);
    if let Some(path) = &cli.out {
        write_file(path, &pretty(&v))?;
    }
    if cli.json {
        print!("{}", pretty(&v));
    } else {
        println!("{} [{}] cap {}: dims {}", b.scenario.name, command, b.cap, dims_line(b));
        if let Some(r) = r {
            print!("{}", r);
            let f = r.failures().len();
            println!("{} checks, {} failed", r.checks.len(), f);
        }
    }
    match r.map(|r| r.failures()) {
        Some(f) if !f.is_empty() => Err(CliError::Verification(f[0].id.clone())),
        _ => Ok(()),
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let prepare = |path: &Path| -> Result<Build, CliError> {
        let s = load(path)?;
        let cap = scenario::resolve_cap(cli.degree_cap, &s);
        Ok(scenario::build(&s, cap)?)
    };
    match &cli.command {
        Command::Build { scenario } => {
            let b = prepare(scenario)?;
            emit(cli, &b, "build", Some(&b.notes))
        }
        Command::Verify { scenario } => {
            let b = prepare(scenario)?;
            emit(cli, &b, "verify", Some(&b.verify()))
        }
        Command::Dims { scenario } => {
            let b = prepare(scenario)?;
            if cli.json || cli.out.is_some() {
                emit(cli, &b, "dims", None)
            } else {
                println!("{}", dims_line(&b));
                Ok(())
            }
        }
        Command::Pair { scenario } => {
            let b = prepare(scenario)?;
            if b.dual.is_none() {
                return Err(CliError::Construction("scenario has no duality partner".into()));
            }
            emit(cli, &b, "pair", Some(&b.pair_report()))
        }
        Command::Export { scenario } => {
            let b = prepare(scenario)?;
            let text = pretty(&b.export());
            match &cli.out {
                Some(path) => write_file(path, &text),
                None => {
                    print!("{}", text);
                    Ok(())
                }
            }
        }
        Command::Fixtures { name, dir } => {
            let names: Vec<&str> = if name == "all" { FIXTURE_NAMES.to_vec() } else { vec![name.as_str()] };
            let mut scenarios = Vec::new();
            for n in names {
                let s = scenario::fixture(n).ok_or_else(|| CliError::Schema(format!("unknown fixture {:?} (expected one of {} or all)", n, FIXTURE_NAMES.join(", "))))?;
                scenarios.push(s);
            }
            if name != "all" && dir.is_none() {
                let text = scenarios[0].to_json() + "\n";
                return match &cli.out {
                    Some(path) => write_file(path, &text),
                    None => {
                        print!("{}", text);
                        Ok(())
                    }
                };
            }
            let dir = dir.clone().unwrap_or_else(|| PathBuf::from("."));
            std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("{}: {}", dir.display(), e)))?;
            for s in &scenarios {
                let path = dir.join(format!("{}.json", s.name));
                write_file(&path, &(s.to_json() + "\n"))?;
                if !cli.json {
                    println!("wrote {}", path.display());
                }
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if cli.json && !matches!(e, CliError::Verification(_)) {
                print!("{}", pretty(&json!({"status": "error", "kind": e.kind(), "message": e.to_string()})));
            }
            eprintln!("hqc: {}", e);
            ExitCode::from(e.code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_report_maps_to_exit_3() {
        let cli = Cli::try_parse_from(["hqc", "--json", "verify", "x.json"]).unwrap();
        let b = scenario::build(&scenario::fixture("z2-minimal").unwrap(), 1).unwrap();
        let mut r = Report::new();
        r.fail("forced", "witness");
        let e = emit(&cli, &b, "verify", Some(&r)).unwrap_err();
        assert_eq!(e.code(), 3);
        assert!(emit(&cli, &b, "verify", Some(&Report::new())).is_ok());
        assert_eq!(CliError::Schema(String::new()).code(), 1);
        assert_eq!(CliError::Construction(String::new()).code(), 2);
    }
}
