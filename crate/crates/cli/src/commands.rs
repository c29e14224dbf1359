use std::f64::consts::PI;
use std::time::Instant;

use cliffsphere_core::epr::{self, Directions, ExperimentConfig};
use cliffsphere_core::hopf::{fiber_phase_flip, null_limit_probe, parallel_transport_check, transition_relation};
use cliffsphere_core::identities::{all_passed, run_suite, SuiteOptions};
use cliffsphere_core::oriented::Orientation;
use cliffsphere_core::seven::{self, Embedding};
use cliffsphere_core::{UnitVec3, Vec3};
use serde::Serialize;

use crate::config::{DirectionsConfig, EmbeddingConfig, HopfConfig, IdentitiesConfig, RunConfig, S7Config, SimulateConfig};
use crate::error::{CliError, CliResult};
use crate::executor::Parallel;
use crate::format::{csv, sci, sci_opt, terms, Term};

pub const CORRELATIONS_HEADER: &str = "theta_deg,raw_mean,std_scalar,resid_x,resid_y,resid_z,resid_norm,stderr,n";
pub const NULL_LIMIT_HEADER: &str = "psi_rad,wedge_magnitude,axis_x,axis_y,axis_z";
pub const IDENTITIES_HEADER: &str = "check,max_residual,tolerance,samples,passed";

/// Residual bound for the rotor transport checks.
pub const HOPF_TOL: f64 = 1e-10;
/// Bound on `|wedge magnitude - 1|` in the null-limit probe.
pub const NULL_LIMIT_TOL: f64 = 1e-9;

/// Files produced by one command, in memory, plus the verification verdict.
#[derive(Debug, Default)]
pub struct Outcome {
    pub files: Vec<(String, Vec<u8>)>,
    pub messages: Vec<String>,
    pub passed: bool,
}

pub fn execute(cfg: &RunConfig) -> CliResult<Outcome> {
    match cfg {
        RunConfig::Identities(c) => identities(c),
        RunConfig::Simulate(c) => simulate(c),
        RunConfig::Hopf(c) => hopf(c),
        RunConfig::S7(c) => s7(c),
    }
}

fn identities(c: &IdentitiesConfig) -> CliResult<Outcome> {
    if !(c.tolerance.is_finite() && c.tolerance > 0.0) {
        return Err(CliError::usage("--tolerance must be positive and finite"));
    }
    if c.pairs == 0 {
        return Err(CliError::usage("--pairs must be at least 1"));
    }
    let opts = SuiteOptions {
        tolerance: c.tolerance,
        pairs: c.pairs,
        seed: c.seed,
        inject_sign_flip: c.inject_fault,
    };
    let started = Instant::now();
    let results = run_suite(&opts);
    let elapsed = started.elapsed();

    let mut messages = vec![format!("tolerance: {:e}", c.tolerance)];
    for r in &results {
        messages.push(format!(
            "{} {:<40} max_residual={:.3e} tol={:.1e}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.max_residual,
            r.tolerance
        ));
    }
    let passed = all_passed(&results);
    let failed = results.iter().filter(|r| !r.passed).count();
    messages.push(format!(
        "{} checks, {} failed, {:.2} s",
        results.len(),
        failed,
        elapsed.as_secs_f64()
    ));
    let rows = results.iter().map(|r| {
        vec![
            r.name.to_string(),
            sci(r.max_residual),
            sci(r.tolerance),
            r.samples.to_string(),
            r.passed.to_string(),
        ]
    });
    Ok(Outcome {
        files: vec![("identities.csv".into(), csv(IDENTITIES_HEADER, rows))],
        messages,
        passed,
    })
}

fn unit(v: [f64; 3], flag: &str) -> CliResult<UnitVec3> {
    UnitVec3::try_from(v).map_err(|e| CliError::usage(format!("{flag}: {e}")))
}

fn simulate(c: &SimulateConfig) -> CliResult<Outcome> {
    let directions = match c.directions {
        DirectionsConfig::Sweep { start_deg, stop_deg, steps } => Directions::Sweep { start_deg, stop_deg, steps },
        DirectionsConfig::Pair { a, b } => Directions::Pairs(vec![(unit(a, "--a")?, unit(b, "--b")?)]),
    };
    let cfg = ExperimentConfig {
        n_trials: c.trials,
        seed: c.seed,
        directions,
    };
    cfg.validate()?;
    let started = Instant::now();
    let rows = epr::sweep(&cfg, &Parallel)?;
    let violations: u64 = rows.iter().map(|r| r.violations).sum();
    let messages = vec![
        format!("{} settings x {} trials, seed {}", rows.len(), c.trials, c.seed),
        format!("raw-score scalar violations: {violations}"),
        format!("{:.2} s", started.elapsed().as_secs_f64()),
    ];
    let table = rows.iter().map(|r| {
        vec![
            sci(r.theta_deg),
            sci(r.raw_mean),
            sci(r.std_scalar),
            sci(r.resid[0]),
            sci(r.resid[1]),
            sci(r.resid[2]),
            sci(r.resid_norm),
            sci(r.stderr),
            r.n.to_string(),
        ]
    });
    Ok(Outcome {
        files: vec![("correlations.csv".into(), csv(CORRELATIONS_HEADER, table))],
        messages,
        passed: violations == 0,
    })
}

fn hopf(c: &HopfConfig) -> CliResult<Outcome> {
    if !c.psi_a.is_finite() || !c.phi_deg.is_finite() {
        return Err(CliError::usage("--psi-a and --phi-deg must be finite"));
    }
    let a = UnitVec3::Z;
    let b = UnitVec3::in_xz_plane(c.phi_deg.to_radians());
    let mut messages = Vec::new();
    let mut passed = true;

    let t = transition_relation(a, b, c.psi_a)?;
    messages.push(format!(
        "transition: psi_a={:e} phi={:.17e} psi_b={:.17e} residual={:.3e}",
        t.probe.psi_a, t.probe.phi, t.probe.psi_b, t.residual
    ));
    passed &= t.residual < HOPF_TOL;
    for lambda in Orientation::BOTH {
        let r = parallel_transport_check(a, b, c.psi_a, lambda)?;
        messages.push(format!("transport lambda={:+}: residual={:.3e}", lambda.value(), r.residual));
        passed &= r.residual < HOPF_TOL;
    }
    let flip = fiber_phase_flip(t.axis, c.psi_a, PI);
    let flipped = flip.is_sign_flip(HOPF_TOL);
    messages.push(format!(
        "phase at phi=pi: scalar {:.6} -> {:.6}, antipodal residual={:.3e}, sign flip: {flipped}",
        flip.scalar_a, flip.scalar_b, flip.antipodal_residual
    ));
    passed &= flipped;

    let rows = null_limit_probe(a, &c.limit_separations).map_err(|e| CliError::usage(format!("--limit-separations: {e}")))?;
    for r in &rows {
        if let (Some(w), Some(x)) = (r.wedge_magnitude, r.cross_magnitude) {
            let ok = (w - 1.0).abs() <= NULL_LIMIT_TOL && (w - x).abs() <= 1e-12;
            messages.push(format!("null limit psi={:e}: |a~^a~'|={w:.17} paths differ by {:.1e}", r.psi, (w - x).abs()));
            passed &= ok;
        } else {
            messages.push(format!("null limit psi={:e}: undefined", r.psi));
        }
    }
    let table = rows.iter().map(|r| {
        let axis = r.axis.map(|v: Vec3| v.0);
        vec![
            sci(r.psi),
            sci_opt(r.wedge_magnitude),
            sci_opt(axis.map(|v| v[0])),
            sci_opt(axis.map(|v| v[1])),
            sci_opt(axis.map(|v| v[2])),
        ]
    });
    Ok(Outcome {
        files: vec![("null_limit.csv".into(), csv(NULL_LIMIT_HEADER, table))],
        messages,
        passed,
    })
}

#[derive(Debug, Serialize)]
struct GradePart {
    grade: u8,
    norm: f64,
    terms: Vec<Term>,
}

#[derive(Debug, Serialize)]
struct RawScoreReport {
    scalar: f64,
    grade_norms: Vec<f64>,
    grades: Vec<GradePart>,
}

#[derive(Debug, Serialize)]
struct S7Report {
    a: [f64; 3],
    lambda: i8,
    embedding: &'static str,
    embedded_n: [f64; 7],
    j_blades: Vec<Term>,
    contract_terms: Vec<Term>,
    standard_score: Vec<Term>,
    raw_score_7: RawScoreReport,
}

fn s7(c: &S7Config) -> CliResult<Outcome> {
    let a = unit(c.a, "--a")?;
    let lambda = Orientation::from_sign(c.lambda).map_err(|e| CliError::usage(format!("--lambda: {e}")))?;
    let (embedding, kind) = match &c.embedding {
        EmbeddingConfig::Default => (Embedding::PadWithZeros, "default"),
        EmbeddingConfig::File { path, rows } => (
            Embedding::isometry(*rows).map_err(|e| CliError::usage(format!("{path}: {e}")))?,
            "isometry",
        ),
    };
    let n = seven::embed(a, &embedding);
    let n_mv = cliffsphere_core::Multivector::vector(7, &n)?;
    let raw = seven::raw_score_7(a, lambda, &embedding);
    let report = S7Report {
        a: a.components(),
        lambda: lambda.value(),
        embedding: kind,
        embedded_n: n,
        j_blades: terms(&seven::build_j().value),
        contract_terms: terms(&seven::j_dot(&n_mv)),
        standard_score: terms(&seven::standard_score_7(a, lambda, &embedding)),
        raw_score_7: RawScoreReport {
            scalar: raw.scalar,
            grade_norms: raw.grade_norms.clone(),
            grades: raw
                .grades
                .iter()
                .map(|(g, part)| GradePart {
                    grade: *g,
                    norm: raw.grade_norms[usize::from(*g)],
                    terms: terms(part),
                })
                .collect(),
        },
    };
    let mut json = serde_json::to_string_pretty(&report).map_err(|source| CliError::Json {
        path: "s7_report.json".into(),
        source,
    })?;
    json.push('\n');
    let grades: Vec<String> = raw.grades.iter().map(|(g, _)| g.to_string()).collect();
    let messages = vec![
        format!(
            "contract(J,N): {}",
            report
                .contract_terms
                .iter()
                .map(|t| format!("{:+}*{}", t.coeff, t.blade))
                .collect::<Vec<_>>()
                .join(" ")
        ),
        format!("raw_score_7 scalar {} grades [{}]", raw.scalar, grades.join(",")),
    ];
    Ok(Outcome {
        files: vec![("s7_report.json".into(), json.into_bytes())],
        messages,
        passed: true,
    })
}
