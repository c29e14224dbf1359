use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::format::parse_vec3;

#[derive(Debug, Parser)]
#[command(name = "cliffsphere", version, about = "Clifford-algebra identity checks and EPR-Bohm simulations")]
pub struct Cli {
    /// Directory receiving every output file and manifest.json
    #[arg(long, global = true, default_value = "./out")]
    pub out: PathBuf,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the algebraic identity suite
    Identities(IdentitiesArgs),
    /// Estimate correlations over an angle sweep or one setting pair
    Simulate(SimulateArgs),
    /// Rotor transport checks and the null-limit probe
    Hopf(HopfArgs),
    /// Trivector report in Cl(7,0)
    S7(S7Args),
    /// Re-run a recorded command and compare output digests
    Replay(ReplayArgs),
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    #[arg(long, default_value_t = cliffsphere_core::IDENTITY_TOL)]
    pub tolerance: f64,
    /// Random unit-vector pairs per identity and orientation
    #[arg(long, default_value_t = 1000)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0x5eed)]
    pub seed: u64,
    /// Flip the sign of the abstract structure constant
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub start_deg: f64,
    pub stop_deg: f64,
    pub steps: u32,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            start_deg: 0.0,
            stop_deg: 180.0,
            steps: 37,
        }
    }
}

pub fn parse_sweep(s: &str) -> Result<SweepSpec, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, steps] = parts.as_slice() else {
        return Err(format!("expected START:STOP:STEPS but got {s:?}"));
    };
    let num = |p: &str| -> Result<f64, String> {
        let v = p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"))?;
        v.is_finite().then_some(v).ok_or_else(|| format!("{p:?} is not finite"))
    };
    Ok(SweepSpec {
        start_deg: num(start)?,
        stop_deg: num(stop)?,
        steps: steps.trim().parse().map_err(|e| format!("{steps:?}: {e}"))?,
    })
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 100_000)]
    pub trials: u64,
    #[arg(long, env = "CLIFFSPHERE_SEED", default_value_t = 42)]
    pub seed: u64,
    /// Angle sweep in degrees, START:STOP:STEPS [default: 0:180:37]
    #[arg(long, value_parser = parse_sweep, conflicts_with_all = ["a", "b"], allow_hyphen_values = true)]
    pub sweep: Option<SweepSpec>,
    /// Alice's setting x,y,z
    #[arg(long, value_parser = parse_vec3, requires = "b", allow_hyphen_values = true)]
    pub a: Option<[f64; 3]>,
    /// Bob's setting x,y,z
    #[arg(long, value_parser = parse_vec3, requires = "a", allow_hyphen_values = true)]
    pub b: Option<[f64; 3]>,
}

#[derive(Debug, Args)]
pub struct HopfArgs {
    /// Fiber phase at a, radians
    #[arg(long, default_value_t = 0.01, allow_negative_numbers = true)]
    pub psi_a: f64,
    /// Angle between a and b, degrees
    #[arg(long, default_value_t = 90.0, allow_negative_numbers = true)]
    pub phi_deg: f64,
    /// Decreasing separations for the null-limit probe, radians
    #[arg(long, value_delimiter = ',', default_value = "1e-1,1e-2,1e-3,1e-4,1e-5,1e-6")]
    pub limit_separations: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct S7Args {
    #[arg(long, value_parser = parse_vec3, default_value = "1,0,0", allow_hyphen_values = true)]
    pub a: [f64; 3],
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub lambda: i64,
    /// `default` pads with zeros; otherwise a JSON file of 7 rows x 3 columns
    #[arg(long, default_value = "default")]
    pub embedding: String,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    #[arg(long)]
    pub manifest: PathBuf,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_spec_parses() {
        assert_eq!(parse_sweep("0:180:37"), Ok(SweepSpec::default()));
        assert_eq!(
            parse_sweep("-10:10.5:3"),
            Ok(SweepSpec { start_deg: -10.0, stop_deg: 10.5, steps: 3 })
        );
        assert!(parse_sweep("0:180").is_err());
        assert!(parse_sweep("0:nan:3").is_err());
        assert!(parse_sweep("0:1:-3").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
