//! Serializable echo of each command's inputs. A manifest stores one of these,
//! and replay rebuilds the run from it alone.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::{Command, SweepSpec};
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentitiesConfig {
    pub tolerance: f64,
    pub pairs: usize,
    pub seed: u64,
    pub inject_fault: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DirectionsConfig {
    Sweep { start_deg: f64, stop_deg: f64, steps: u32 },
    Pair { a: [f64; 3], b: [f64; 3] },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateConfig {
    pub trials: u64,
    pub seed: u64,
    pub directions: DirectionsConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HopfConfig {
    pub psi_a: f64,
    pub phi_deg: f64,
    pub limit_separations: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum EmbeddingConfig {
    Default,
    File { path: String, rows: [[f64; 3]; 7] },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct S7Config {
    pub a: [f64; 3],
    pub lambda: i64,
    pub embedding: EmbeddingConfig,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RunConfig {
    Identities(IdentitiesConfig),
    Simulate(SimulateConfig),
    Hopf(HopfConfig),
    S7(S7Config),
}

impl RunConfig {
    /// `None` for `replay`, which is not itself a recorded run.
    pub fn from_command(cmd: &Command) -> CliResult<Option<Self>> {
        Ok(Some(match cmd {
            Command::Identities(a) => RunConfig::Identities(IdentitiesConfig {
                tolerance: a.tolerance,
                pairs: a.pairs,
                seed: a.seed,
                inject_fault: a.inject_fault,
            }),
            Command::Simulate(a) => {
                let directions = match (a.a, a.b, a.sweep) {
                    (Some(va), Some(vb), _) => DirectionsConfig::Pair { a: va, b: vb },
                    (_, _, sweep) => sweep.unwrap_or_default().into(),
                };
                RunConfig::Simulate(SimulateConfig {
                    trials: a.trials,
                    seed: a.seed,
                    directions,
                })
            }
            Command::Hopf(a) => RunConfig::Hopf(HopfConfig {
                psi_a: a.psi_a,
                phi_deg: a.phi_deg,
                limit_separations: a.limit_separations.clone(),
            }),
            Command::S7(a) => RunConfig::S7(S7Config {
                a: a.a,
                lambda: a.lambda,
                embedding: match a.embedding.as_str() {
                    "default" => EmbeddingConfig::Default,
                    path => EmbeddingConfig::File {
                        path: path.to_string(),
                        rows: read_embedding(Path::new(path))?,
                    },
                },
            }),
            Command::Replay(_) => return Ok(None),
        }))
    }

    pub fn name(&self) -> &'static str {
        match self {
            RunConfig::Identities(_) => "identities",
            RunConfig::Simulate(_) => "simulate",
            RunConfig::Hopf(_) => "hopf",
            RunConfig::S7(_) => "s7",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            RunConfig::Identities(c) => Some(c.seed),
            RunConfig::Simulate(c) => Some(c.seed),
            RunConfig::Hopf(_) | RunConfig::S7(_) => None,
        }
    }

    pub fn to_value(&self) -> Value {
        let v = match self {
            RunConfig::Identities(c) => serde_json::to_value(c),
            RunConfig::Simulate(c) => serde_json::to_value(c),
            RunConfig::Hopf(c) => serde_json::to_value(c),
            RunConfig::S7(c) => serde_json::to_value(c),
        };
        v.unwrap_or(Value::Null)
    }

    pub fn from_parts(command: &str, config: Value) -> CliResult<Self> {
        let bad = |e: serde_json::Error| CliError::usage(format!("manifest config for {command:?}: {e}"));
        Ok(match command {
            "identities" => RunConfig::Identities(serde_json::from_value(config).map_err(bad)?),
            "simulate" => RunConfig::Simulate(serde_json::from_value(config).map_err(bad)?),
            "hopf" => RunConfig::Hopf(serde_json::from_value(config).map_err(bad)?),
            "s7" => RunConfig::S7(serde_json::from_value(config).map_err(bad)?),
            other => return Err(CliError::usage(format!("unknown command in manifest: {other:?}"))),
        })
    }
}

impl From<SweepSpec> for DirectionsConfig {
    fn from(s: SweepSpec) -> Self {
        DirectionsConfig::Sweep {
            start_deg: s.start_deg,
            stop_deg: s.stop_deg,
            steps: s.steps,
        }
    }
}

pub fn read_embedding(path: &Path) -> CliResult<[[f64; 3]; 7]> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}
