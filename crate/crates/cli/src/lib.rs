//! Command-line front end for `cliffsphere-core`: runs the identity suite,
//! correlation sweeps, rotor transport checks and the `Cl(7,0)` report, and
//! writes CSV/JSON outputs with a digest manifest.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod executor;
pub mod format;
pub mod manifest;

use std::io::Write;
use std::path::Path;

pub use args::Cli;
pub use config::RunConfig;
pub use error::{CliError, CliResult};
pub use executor::Parallel;
pub use manifest::Manifest;

use manifest::{sha256_hex, write_file, OutputDigest};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::VerificationFailed => 1,
        }
    }
}

fn say(stdout: &mut dyn Write, line: &str) -> CliResult<()> {
    writeln!(stdout, "{line}").map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

/// Executes `cfg`, writes its outputs and `manifest.json` into `out`.
pub fn record(cfg: &RunConfig, out: &Path, stdout: &mut dyn Write) -> CliResult<(Manifest, Status)> {
    let started_at = chrono::Utc::now().to_rfc3339();
    let outcome = commands::execute(cfg)?;
    for m in &outcome.messages {
        say(stdout, m)?;
    }
    let mut outputs = Vec::with_capacity(outcome.files.len());
    for (name, bytes) in &outcome.files {
        let path = write_file(out, name, bytes)?;
        say(stdout, &format!("wrote {}", path.display()))?;
        outputs.push(OutputDigest {
            path: name.clone(),
            sha256: sha256_hex(bytes),
        });
    }
    let manifest = Manifest {
        command: cfg.name().to_string(),
        config: cfg.to_value(),
        seed: cfg.seed(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        started_at,
        finished_at: chrono::Utc::now().to_rfc3339(),
        outputs,
    };
    manifest.write(out)?;
    let status = if outcome.passed { Status::Ok } else { Status::VerificationFailed };
    Ok((manifest, status))
}

/// Re-runs the command recorded in `manifest_path` into `out` and compares digests.
pub fn replay(manifest_path: &Path, out: &Path, stdout: &mut dyn Write) -> CliResult<Status> {
    let old = Manifest::load(manifest_path)?;
    if old.version != env!("CARGO_PKG_VERSION") {
        say(
            stdout,
            &format!("note: manifest version {} differs from {}", old.version, env!("CARGO_PKG_VERSION")),
        )?;
    }
    let cfg = RunConfig::from_parts(&old.command, old.config.clone())?;
    let (new, _) = record(&cfg, out, stdout)?;
    let mut identical = !old.outputs.is_empty();
    for o in &old.outputs {
        let verdict = match new.digest_of(&o.path) {
            Some(d) if d == o.sha256 => "identical",
            Some(_) => {
                identical = false;
                "DIFFERS"
            }
            None => {
                identical = false;
                "MISSING"
            }
        };
        say(stdout, &format!("{verdict} {} {}", o.path, o.sha256))?;
    }
    Ok(if identical { Status::Ok } else { Status::VerificationFailed })
}

pub fn run(cli: &Cli, stdout: &mut dyn Write) -> CliResult<Status> {
    match &cli.command {
        args::Command::Replay(r) => replay(&r.manifest, &cli.out, stdout),
        cmd => {
            let cfg = RunConfig::from_command(cmd)?.ok_or_else(|| CliError::usage("nothing to run"))?;
            record(&cfg, &cli.out, stdout).map(|(_, status)| status)
        }
    }
}
