//! Command-line driver: loads vectors, operators and sequence specs from
//! JSON files, runs the verification suites and the operator-norm
//! estimator, and emits JSON (the contract) or a human-readable text
//! rendering.
//!
//! Exit codes: 0 = all requested suites passed, 1 = violations found,
//! 2 = input or configuration error.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use softnorm_core::{
    check_linearity, converges_to, convergent_implies_cauchy, is_cauchy, op_norm,
    op_norm_with_oracle, rank_detail, verify_bounded, verify_metric_axioms,
    verify_metric_norm_compatibility, verify_norm_axioms, verify_opnorm_axioms,
    verify_power_bound, verify_submultiplicative, BoundedMetric, CanonicalSoftNorm,
    InducedMetric, NoAbsNorm, OpNormConfig, ParamDiffMetric, SampleConfig, SoftLinearOperator64,
    SoftMetric, SoftNorm, SoftVector64, SoftVectorSequence64, SquaredDistMetric, SquaredNorm,
    VerificationReport, DEFAULT_RANK_TOL,
};

#[derive(Parser)]
#[command(name = "softnorm", version, about = "Verification suites for soft normed linear spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Master seed for all sampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Samples per suite.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    /// Violation tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Base-norm exponent: 1, 2 or inf.
    #[arg(long, default_value = "2")]
    p: String,
    /// Ambient soft-vector dimension for norm/metric suites.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Sequence horizon.
    #[arg(long, default_value_t = 1000)]
    horizon: u64,
    /// Sequence epsilon.
    #[arg(long, default_value_t = 0.01)]
    eps: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run axiom/theorem suites against a norm, metric or operator file.
    Verify {
        /// Named norm: canonical, no-abs, squared.
        #[arg(long)]
        norm: Option<String>,
        /// Named metric: canonical, bounded, param-diff, squared-dist.
        #[arg(long)]
        metric: Option<String>,
        /// Operator JSON file (object or array of objects).
        #[arg(long)]
        operator: Option<PathBuf>,
        /// Operator suite: submultiplicative, power, axioms, bounded, linearity.
        #[arg(long)]
        suite: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Estimate the operator norm of an operator file.
    Opnorm {
        file: PathBuf,
        /// Cross-check against the grid oracle (lifted dimension <= 3).
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Decide soft linear independence of a vector file.
    Indep {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run convergence/Cauchy diagnostics on a sequence spec file.
    Sequence {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
}

/// Errors that map to exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn parse_p(p: &str) -> Result<f64, InputError> {
    match p {
        "1" => Ok(1.0),
        "2" => Ok(2.0),
        "inf" => Ok(f64::INFINITY),
        other => Err(InputError(format!("invalid --p '{other}': expected 1, 2 or inf"))),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &PathBuf) -> Result<T, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| InputError(format!("cannot parse {}: {e}", path.display())))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(SoftLinearOperator64),
    Many(Vec<SoftLinearOperator64>),
}

fn read_operators(path: &PathBuf) -> Result<Vec<SoftLinearOperator64>, InputError> {
    let parsed: OneOrMany = read_json(path)?;
    let ops = match parsed {
        OneOrMany::One(op) => vec![op],
        OneOrMany::Many(ops) => ops,
    };
    if ops.is_empty() {
        return Err(InputError("operator file is empty".into()));
    }
    for op in &ops {
        op.validate()?;
    }
    Ok(ops)
}

#[derive(Deserialize)]
struct SequenceSpec {
    kind: String,
    base: SoftVector64,
    #[serde(default)]
    direction: Option<SoftVector64>,
    #[serde(default)]
    rho: Option<f64>,
}

fn build_sequence(spec: &SequenceSpec) -> Result<SoftVectorSequence64, InputError> {
    spec.base.validate()?;
    let direction = |spec: &SequenceSpec| -> Result<SoftVector64, InputError> {
        let d = spec
            .direction
            .clone()
            .ok_or_else(|| InputError(format!("'{}' sequence needs a direction", spec.kind)))?;
        d.validate()?;
        Ok(d)
    };
    match spec.kind.as_str() {
        "constant" => Ok(SoftVectorSequence64::constant(spec.base.clone())),
        "geometric" => {
            let rho = spec
                .rho
                .ok_or_else(|| InputError("geometric sequence needs rho".into()))?;
            Ok(SoftVectorSequence64::geometric(spec.base.clone(), direction(spec)?, rho)?)
        }
        "harmonic" => Ok(SoftVectorSequence64::harmonic(spec.base.clone(), direction(spec)?)?),
        "alternating" => Ok(SoftVectorSequence64::alternating(spec.base.clone(), direction(spec)?)?),
        other => Err(InputError(format!("unknown sequence kind '{other}'"))),
    }
}

fn make_norm(name: &str, dim: usize, p: f64) -> Result<Box<dyn SoftNorm<f64>>, InputError> {
    Ok(match name {
        "canonical" => Box::new(CanonicalSoftNorm::new(dim, p)?),
        "no-abs" => Box::new(NoAbsNorm { dim, p }),
        "squared" => Box::new(SquaredNorm { dim, p }),
        other => return Err(InputError(format!("unknown norm '{other}'"))),
    })
}

fn make_metric(name: &str, dim: usize, p: f64) -> Result<Box<dyn SoftMetric<f64>>, InputError> {
    Ok(match name {
        "canonical" => Box::new(InducedMetric::new(CanonicalSoftNorm::new(dim, p)?)),
        "bounded" => Box::new(BoundedMetric::new(InducedMetric::new(CanonicalSoftNorm::new(
            dim, p,
        )?))),
        "param-diff" => Box::new(ParamDiffMetric { dim }),
        "squared-dist" => Box::new(SquaredDistMetric { dim, p }),
        other => return Err(InputError(format!("unknown metric '{other}'"))),
    })
}

fn render_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(report).expect("report serializes"),
        Format::Text => format!(
            "suite={} samples={} violations={} max_violation={:.3e} tol={:.1e} -> {}",
            report.suite,
            report.samples,
            report.violations,
            report.max_violation,
            report.tolerance,
            if report.passed() { "PASS" } else { "FAIL" }
        ),
    }
}

fn render_value(value: &serde_json::Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(value).expect("value serializes"),
        Format::Text => {
            let obj = value.as_object().expect("rendered values are objects");
            obj.iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(" ")
        }
    }
}

fn emit(lines: &[String], out: &Option<PathBuf>) -> Result<(), InputError> {
    let text = lines.join("\n") + "\n";
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| InputError(format!("cannot write {}: {e}", path.display()))),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| InputError(e.to_string()))
        }
    }
}

fn run_verify(
    norm: Option<String>,
    metric: Option<String>,
    operator: Option<PathBuf>,
    suite: Option<String>,
    common: &Common,
) -> Result<Vec<VerificationReport>, InputError> {
    let p = parse_p(&common.p)?;
    let sample_cfg = SampleConfig {
        seed: common.seed,
        ..SampleConfig::default()
    };
    let op_cfg = OpNormConfig {
        seed: common.seed,
        ..OpNormConfig::default()
    };
    let mut reports = Vec::new();

    if let Some(name) = norm {
        let n = make_norm(&name, common.dim, p)?;
        reports.push(verify_norm_axioms(
            n.as_ref(),
            &sample_cfg,
            common.samples,
            common.tol,
        ));
    }
    if let Some(name) = metric {
        let m = make_metric(&name, common.dim, p)?;
        reports.push(verify_metric_axioms(
            m.as_ref(),
            &sample_cfg,
            common.samples,
            common.tol,
        ));
        reports.push(verify_metric_norm_compatibility(
            m.as_ref(),
            &sample_cfg,
            common.samples,
            common.tol,
        ));
    }
    if let Some(path) = operator {
        let suite = suite.ok_or_else(|| InputError("--operator requires --suite".into()))?;
        let ops = read_operators(&path)?;
        let norm_for = |dim: usize| -> Result<CanonicalSoftNorm, InputError> {
            Ok(CanonicalSoftNorm::new(dim, p)?)
        };
        match suite.as_str() {
            "submultiplicative" => {
                if ops.len() != 2 {
                    return Err(InputError(
                        "submultiplicative suite needs exactly two operators [S, T]".into(),
                    ));
                }
                let (s, t) = (&ops[0], &ops[1]);
                reports.push(verify_submultiplicative(
                    s,
                    t,
                    &norm_for(t.in_dim())?,
                    &norm_for(t.out_dim())?,
                    &norm_for(s.out_dim())?,
                    &op_cfg,
                    common.tol,
                )?);
            }
            "power" => {
                for op in &ops {
                    reports.push(verify_power_bound(
                        op,
                        5,
                        &norm_for(op.in_dim())?,
                        &norm_for(op.out_dim())?,
                        &op_cfg,
                        common.tol,
                    )?);
                }
            }
            "axioms" => {
                let d_in = ops[0].in_dim();
                let d_out = ops[0].out_dim();
                reports.push(verify_opnorm_axioms(
                    &ops,
                    &norm_for(d_in)?,
                    &norm_for(d_out)?,
                    &op_cfg,
                    common.tol,
                )?);
            }
            "bounded" => {
                for op in &ops {
                    let nin = norm_for(op.in_dim())?;
                    let nout = norm_for(op.out_dim())?;
                    let estimate = op_norm(op, &nin, &nout, &op_cfg)?;
                    reports.push(verify_bounded(
                        op,
                        estimate.value,
                        &nin,
                        &nout,
                        &sample_cfg,
                        common.samples,
                        common.tol,
                    ));
                }
            }
            "linearity" => {
                for op in &ops {
                    let in_dim = op.in_dim();
                    let op = op.clone();
                    reports.push(check_linearity(
                        &move |v: &SoftVector64| op.apply(v).expect("dims agree"),
                        in_dim,
                        &sample_cfg,
                        common.samples,
                        common.tol,
                    ));
                }
            }
            other => return Err(InputError(format!("unknown operator suite '{other}'"))),
        }
    }
    if reports.is_empty() {
        return Err(InputError(
            "verify needs at least one of --norm, --metric, --operator".into(),
        ));
    }
    Ok(reports)
}

fn run() -> Result<bool, InputError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            norm,
            metric,
            operator,
            suite,
            common,
        } => {
            let reports = run_verify(norm, metric, operator, suite, &common)?;
            let lines: Vec<String> = reports
                .iter()
                .map(|r| render_report(r, common.format))
                .collect();
            emit(&lines, &common.out)?;
            Ok(reports.iter().all(|r| r.passed()))
        }
        Command::Opnorm { file, oracle, common } => {
            let p = parse_p(&common.p)?;
            let ops = read_operators(&file)?;
            let cfg = OpNormConfig {
                seed: common.seed,
                ..OpNormConfig::default()
            };
            let mut lines = Vec::new();
            for op in &ops {
                let nin = CanonicalSoftNorm::new(op.in_dim(), p)?;
                let nout = CanonicalSoftNorm::new(op.out_dim(), p)?;
                let result = if oracle {
                    op_norm_with_oracle(op, &nin, &nout, &cfg)?
                } else {
                    op_norm(op, &nin, &nout, &cfg)?
                };
                let value = serde_json::to_value(&result).expect("result serializes");
                lines.push(render_value(&value, common.format));
            }
            emit(&lines, &common.out)?;
            Ok(true)
        }
        Command::Indep { file, common } => {
            let vecs: Vec<SoftVector64> = read_json(&file)?;
            if vecs.is_empty() {
                return Err(InputError("vector file is empty".into()));
            }
            for v in &vecs {
                v.validate()?;
            }
            let detail = rank_detail(&vecs, DEFAULT_RANK_TOL)?;
            let value = json!({
                "independent": detail.independent,
                "rank": detail.rank,
                "singular_values": detail.singular_values,
                "count": vecs.len(),
            });
            emit(&[render_value(&value, common.format)], &common.out)?;
            Ok(true)
        }
        Command::Sequence { file, common } => {
            let p = parse_p(&common.p)?;
            let spec: SequenceSpec = read_json(&file)?;
            let seq = build_sequence(&spec)?;
            let norm = CanonicalSoftNorm::new(seq.dim().max(1), p)?;
            let limit = seq
                .declared_limit()
                .cloned()
                .expect("built-in sequences declare a limit");
            let conv = converges_to(&seq, &limit, &norm, common.eps, common.horizon)?;
            let cauchy = is_cauchy(&seq, &norm, common.eps, common.horizon)?;
            let implication =
                convergent_implies_cauchy(&seq, &limit, &norm, common.eps, common.horizon)?;
            let value = json!({
                "convergence": conv,
                "cauchy": cauchy,
                "implication": serde_json::to_value(&implication).expect("report serializes"),
            });
            emit(&[render_value(&value, common.format)], &common.out)?;
            Ok(implication.passed())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::from(0),
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
