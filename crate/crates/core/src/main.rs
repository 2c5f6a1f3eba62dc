//! Command-line front end: every computation in the library as a
//! subcommand with machine-readable output.
//!
//! Exit codes: 0 = success (a definitive NotTraceClass answer is a
//! success), 2 = argument error, 3 = numerical non-convergence.
//!
//! JSON records follow a fixed schema; `runtime_ms` is only emitted under
//! `--timing` so that identical invocations produce byte-identical output.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use spectral_traces::counterexamples::{diag_partial_sums, Example};
use spectral_traces::error::{Error, Result};
use spectral_traces::finop;
use spectral_traces::lattice;
use spectral_traces::special;
use spectral_traces::torus::{
    p2_divergence_certificate, trace_inv_laplacian_s1, trace_inv_laplacian_t2, trace_p_power_t2,
    DivergenceCertificate, TraceClassification, TraceReport,
};

const TOL_MIN: f64 = 1e-13;
const TOL_MAX: f64 = 1e-2;

#[derive(Parser)]
#[command(name = "spectral-traces", version, about = "Traces of spectrally defined operators on the circle and flat torus")]
struct Cli {
    /// Error tolerance for series truncation and quadrature.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Worker threads (accepted for interface stability; computations are
    /// deterministic and currently single-threaded).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Include wall-clock runtime in the JSON record (makes output
    /// non-reproducible byte-for-byte).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Trace of a spectrally defined operator.
    Trace {
        #[command(subcommand)]
        operator: TraceOperator,
    },
    /// Direct lattice sum Σ(k²+m²)^{-n} over sup-norm shells.
    LatticeSum {
        /// Exponent n ≥ 2 (real values allowed).
        #[arg(long)]
        n: f64,
        /// Sup-norm cutoff radius.
        #[arg(long)]
        radius: u32,
    },
    /// Mellin transform M_n(θ₃² - 1) by adaptive quadrature.
    Mellin {
        /// Integer order n ≥ 2.
        #[arg(long)]
        n: u32,
    },
    /// Constructive divergence certificates.
    Diverge {
        #[command(subcommand)]
        which: DivergeTarget,
    },
    /// Basis-dependent diagonal-sum demonstrations on l² truncations.
    Counterexample {
        /// Which demonstration to run.
        name: ExampleName,
        /// Number of partial sums.
        #[arg(long)]
        terms: usize,
    },
    /// Finite-dimensional operator demonstrations.
    Finop {
        #[command(subcommand)]
        which: FinopDemo,
    },
    /// Scalar special functions.
    Special {
        #[command(subcommand)]
        which: SpecialFn,
    },
}

#[derive(Subcommand)]
enum TraceOperator {
    /// D⁻ⁿ on the circle: 2(-1)ⁿζ(2n).
    S1 {
        #[arg(long)]
        power: u32,
    },
    /// D⁻ⁿ on the torus: 4(-1)ⁿζ(n)β(n) for n ≥ 2.
    T2 {
        #[arg(long)]
        power: u32,
    },
    /// Pⁿ = (d*∘D⁻¹)ⁿ on the torus.
    P {
        #[arg(long)]
        power: u32,
    },
}

#[derive(Subcommand)]
enum DivergeTarget {
    /// Dyadic block certificate that P² is not trace class.
    P2 {
        /// Number of dyadic blocks to sum.
        #[arg(long)]
        target: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ExampleName {
    Identity,
    Alternating,
    LeftShiftStandard,
    LeftShiftPsi,
}

#[derive(Subcommand)]
enum FinopDemo {
    /// Random operator: trace, trace norm, and the eigenvalue-sum check.
    Demo {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum SpecialFn {
    /// Riemann zeta ζ(s), s > 1.
    Zeta {
        #[arg(long)]
        s: f64,
    },
    /// Dirichlet beta β(s), s > 0.
    Beta {
        #[arg(long)]
        s: f64,
    },
}

#[derive(Serialize)]
struct ValueJson {
    re: f64,
    im: f64,
}

impl From<Complex64> for ValueJson {
    fn from(z: Complex64) -> Self {
        ValueJson { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum CertificateJson {
    Dyadic {
        target: u32,
        radius: u64,
        attained: f64,
        block_sums: Vec<f64>,
    },
    MonotoneGrowth {
        radii: Vec<u32>,
        partial_abs_sums: Vec<f64>,
    },
}

impl From<&DivergenceCertificate> for CertificateJson {
    fn from(cert: &DivergenceCertificate) -> Self {
        match cert {
            DivergenceCertificate::Dyadic {
                target,
                radius,
                attained,
                block_sums,
            } => CertificateJson::Dyadic {
                target: *target,
                radius: *radius,
                attained: *attained,
                block_sums: block_sums.clone(),
            },
            DivergenceCertificate::MonotoneGrowth {
                radii,
                partial_abs_sums,
            } => CertificateJson::MonotoneGrowth {
                radii: radii.clone(),
                partial_abs_sums: partial_abs_sums.clone(),
            },
        }
    }
}

#[derive(Serialize)]
struct Record {
    tool_version: &'static str,
    subcommand: String,
    params: serde_json::Value,
    status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<ValueJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<CertificateJson>,
    terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    runtime_ms: Option<u128>,
    extension_flag: bool,
}

impl Record {
    fn new(subcommand: &str, params: serde_json::Value) -> Self {
        Record {
            tool_version: env!("CARGO_PKG_VERSION"),
            subcommand: subcommand.to_string(),
            params,
            status: "Ok".to_string(),
            value: None,
            error_bound: None,
            certificate: None,
            terms: 0,
            runtime_ms: None,
            extension_flag: false,
        }
    }

    fn fill_trace(mut self, report: &TraceReport) -> Self {
        self.terms = report.terms;
        self.extension_flag = report.extension;
        match &report.classification {
            TraceClassification::TraceClass { value, error_bound } => {
                self.status = "TraceClass".to_string();
                self.value = Some((*value).into());
                self.error_bound = Some(*error_bound);
            }
            TraceClassification::NotTraceClass { certificate } => {
                self.status = "NotTraceClass".to_string();
                self.certificate = Some(certificate.into());
            }
            TraceClassification::Undetermined { reason } => {
                self.status = format!("Undetermined: {reason}");
            }
        }
        self
    }
}

/// Per-format payload: the JSON record plus optional CSV rows.
struct Report {
    record: Record,
    csv: Option<Vec<String>>,
    plain: String,
}

fn check_tol(tol: f64) -> Result<()> {
    if !(TOL_MIN..=TOL_MAX).contains(&tol) {
        return Err(Error::InvalidArgument(format!(
            "--tol must lie in [{TOL_MIN:e}, {TOL_MAX:e}], got {tol:e}"
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Report> {
    check_tol(cli.tol)?;
    let tol = cli.tol;
    match &cli.command {
        Command::Trace { operator } => {
            let (name, power, report) = match operator {
                TraceOperator::S1 { power } => ("trace s1", *power, trace_inv_laplacian_s1(*power, tol)?),
                TraceOperator::T2 { power } => ("trace t2", *power, trace_inv_laplacian_t2(*power, tol)?),
                TraceOperator::P { power } => ("trace p", *power, trace_p_power_t2(*power, tol)?),
            };
            let record = Record::new(name, json!({ "power": power, "tol": tol }))
                .fill_trace(&report);
            let plain = match (&record.value, &record.certificate) {
                (Some(v), _) => format!(
                    "{name} --power {power}: {} value = {:.17e} + {:.17e}i (error bound {:.17e})",
                    record.status,
                    v.re,
                    v.im,
                    record.error_bound.unwrap_or(0.0)
                ),
                _ => format!("{name} --power {power}: {}", record.status),
            };
            Ok(Report {
                record,
                csv: None,
                plain,
            })
        }
        Command::LatticeSum { n, radius } => {
            let rows = lattice::lattice_sum_shells(*n, *radius)?;
            let outcome = lattice::lattice_sum_direct(*n, *radius)?;
            let mut record = Record::new(
                "lattice-sum",
                json!({ "n": n, "radius": radius, "tol": tol }),
            );
            record.value = Some(outcome.value.into());
            record.error_bound = Some(outcome.tail_bound);
            record.terms = outcome.terms;
            let csv = std::iter::once("r,shell_sum,cumulative,tail_bound".to_string())
                .chain(rows.iter().map(|row| {
                    format!(
                        "{},{:.17e},{:.17e},{:.17e}",
                        row.r, row.shell_sum, row.cumulative, row.tail_bound
                    )
                }))
                .collect();
            let plain = format!(
                "lattice-sum n = {n}, R = {radius}: {:.17e} (tail bound {:.17e}, {} terms)",
                outcome.value.re, outcome.tail_bound, outcome.terms
            );
            Ok(Report {
                record,
                csv: Some(csv),
                plain,
            })
        }
        Command::Mellin { n } => {
            let m = special::mellin_theta(*n, tol)?;
            let mut record = Record::new("mellin", json!({ "n": n, "tol": tol }));
            record.value = Some(Complex64::new(m.value, 0.0).into());
            record.error_bound = Some(m.error_bound);
            record.terms = m.terms_used;
            let plain = format!(
                "mellin n = {n}: {:.17e} (error bound {:.17e}, {} integrand evaluations)",
                m.value, m.error_bound, m.terms_used
            );
            Ok(Report {
                record,
                csv: None,
                plain,
            })
        }
        Command::Diverge {
            which: DivergeTarget::P2 { target },
        } => {
            let cert = p2_divergence_certificate(*target)?;
            let mut record = Record::new("diverge p2", json!({ "target": target, "tol": tol }));
            record.status = "NotTraceClass".to_string();
            record.certificate = Some((&cert).into());
            let (csv, plain) = match &cert {
                DivergenceCertificate::Dyadic {
                    attained,
                    radius,
                    block_sums,
                    ..
                } => {
                    record.terms = (1..=*target).map(|j| 4usize.pow(j)).sum();
                    let mut cumulative = 0.0;
                    let csv = std::iter::once("j,partial_sum".to_string())
                        .chain(block_sums.iter().enumerate().map(|(idx, b)| {
                            cumulative += b;
                            format!("{},{:.17e}", idx + 1, cumulative)
                        }))
                        .collect();
                    let plain = format!(
                        "diverge p2 --target {target}: attained {attained:.17e} over radius {radius} (every block > 1/4)"
                    );
                    (csv, plain)
                }
                _ => unreachable!("p2 certificate is dyadic"),
            };
            Ok(Report {
                record,
                csv: Some(csv),
                plain,
            })
        }
        Command::Counterexample { name, terms } => {
            let (label, example) = match name {
                ExampleName::Identity => ("identity", Example::Identity),
                ExampleName::Alternating => ("alternating", Example::Alternating),
                ExampleName::LeftShiftStandard => {
                    ("left-shift-standard", Example::LeftShiftStandard)
                }
                ExampleName::LeftShiftPsi => ("left-shift-psi", Example::LeftShiftPsi),
            };
            let sums = diag_partial_sums::<f64>(example, *terms)?;
            let last = *sums.last().expect("terms >= 1");
            let mut record = Record::new(
                "counterexample",
                json!({ "name": label, "terms": terms }),
            );
            record.value = Some(Complex64::new(last, 0.0).into());
            record.terms = *terms;
            let csv = std::iter::once("j,partial_sum".to_string())
                .chain(
                    sums.iter()
                        .enumerate()
                        .map(|(idx, s)| format!("{},{:.17e}", idx + 1, s)),
                )
                .collect();
            let plain = format!(
                "counterexample {label}, N = {terms}: final partial sum {last:.17e}"
            );
            Ok(Report {
                record,
                csv: Some(csv),
                plain,
            })
        }
        Command::Finop {
            which: FinopDemo::Demo { dim, seed },
        } => {
            let a = finop::random_operator(*dim, *seed)?;
            let standard = finop::OrthonormalBasis::standard(*dim)?;
            let trace = finop::trace_diag(&a, &standard)?;
            let eigs = finop::eig::eigenvalues(a.entries(), a.dim())?;
            let eig_sum: Complex64 = eigs.iter().sum();
            let (_, trace_norm) = finop::canonical_and_trace_norm(&a)?;
            let deviation = (trace - eig_sum).norm();
            let mut record = Record::new(
                "finop demo",
                json!({
                    "dim": dim,
                    "seed": seed,
                    "trace_norm": trace_norm,
                    "tol": tol,
                }),
            );
            record.value = Some(trace.into());
            record.error_bound = Some(deviation);
            record.terms = *dim;
            if deviation > tol.max(1e-8) * a.frobenius_norm().max(1.0) {
                return Err(Error::ResidualTooLarge {
                    residual: deviation,
                    tol,
                });
            }
            let plain = format!(
                "finop demo d = {dim}, seed = {seed}: trace {:.17e} + {:.17e}i, trace norm {trace_norm:.17e}, eigenvalue-sum deviation {deviation:.3e}",
                trace.re, trace.im
            );
            Ok(Report {
                record,
                csv: None,
                plain,
            })
        }
        Command::Special { which } => {
            let (name, s, b) = match which {
                SpecialFn::Zeta { s } => ("special zeta", *s, special::zeta(*s, tol)?),
                SpecialFn::Beta { s } => ("special beta", *s, special::dirichlet_beta(*s, tol)?),
            };
            let mut record = Record::new(name, json!({ "s": s, "tol": tol }));
            record.value = Some(Complex64::new(b.value, 0.0).into());
            record.error_bound = Some(b.error_bound);
            record.terms = b.terms_used;
            let plain = format!(
                "{name} at s = {s}: {:.17e} (error bound {:.17e}, {} terms)",
                b.value, b.error_bound, b.terms_used
            );
            Ok(Report {
                record,
                csv: None,
                plain,
            })
        }
    }
}

fn emit(cli: &Cli, report: Report, runtime_ms: Option<u128>) -> std::io::Result<()> {
    let mut record = report.record;
    record.runtime_ms = runtime_ms;
    let body = match cli.format {
        Format::Json => {
            serde_json::to_string_pretty(&record).expect("record serialization cannot fail")
        }
        Format::Csv => match report.csv {
            Some(rows) => rows.join("\n"),
            None => {
                eprintln!("error: this subcommand has no CSV form; use --format json or plain");
                std::process::exit(2);
            }
        },
        Format::Plain => report.plain,
    };
    match &cli.output {
        Some(path) => {
            let mut file = std::fs::File::create(path)?;
            writeln!(file, "{body}")
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            writeln!(lock, "{body}")
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    match run(&cli) {
        Ok(report) => {
            let runtime = cli.timing.then(|| start.elapsed().as_millis());
            match emit(&cli, report, runtime) {
                Ok(()) => ExitCode::SUCCESS,
                Err(err) => {
                    eprintln!("error: {err}");
                    ExitCode::from(3)
                }
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_argument_error() {
                ExitCode::from(2)
            } else {
                ExitCode::from(3)
            }
        }
    }
}
