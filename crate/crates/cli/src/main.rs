//! Command-line front end. All machine-readable output is JSON on stdout,
//! human summaries go to stderr, and the exit code contract is:
//! 0 success, 1 mathematically negative result with certificate,
//! 2 usage or malformed input, 3 numerical or cap failure.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;

use chordal_extend::cayley;
use chordal_extend::error::Error;
use chordal_extend::extend::{self, PdFunctionData};
use chordal_extend::graphs;
use chordal_extend::groups;
use chordal_extend::{Caps, CMatrix};

#[derive(Parser)]
#[command(
    name = "chordal-extend",
    about = "Positive definite extension on amenable groups: chordality checks, kernel completion, Folner averaging, counterexample certificates",
    after_help = "Caps can be overridden with CHORDAL_EXTEND_CAPS, e.g. 'radius=128,clique=20000,window=8000'.\nDefaults: radius cap 64, clique cap 10000, window cap 5000, tol 1e-9, seed 0."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chordality of the Cayley graph of (G, S) on a word ball.
    ChordalCheck {
        /// Group spec JSON, e.g. '{"kind":"int_lattice","d":2}'.
        #[arg(long)]
        group: String,
        /// Symmetric set JSON, e.g. '{"rule":"cross","m":2,"n":2}'.
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 2)]
        radius: u32,
        #[arg(long)]
        out: Option<String>,
    },
    /// Full extension pipeline: verify, complete, Folner-average, report.
    Extend {
        /// PD function data: inline JSON or a path to a JSON file.
        #[arg(long)]
        data: String,
        #[arg(long, default_value_t = 4)]
        radius: u32,
        /// Folner parameters, comma separated.
        #[arg(long = "folner-sizes", value_delimiter = ',', default_value = "2,4")]
        folner_sizes: Vec<u32>,
        /// Extra target elements as a JSON array.
        #[arg(long)]
        targets: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Counterexample certificates: z2 or cross.
    Certify {
        /// Which certificate: "z2" or "cross".
        which: String,
        /// For cross: the two unitaries as a JSON array [U1, U2]
        /// (default: the Pauli pair).
        #[arg(long)]
        unitaries: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Chordless polygon cycle for a finite symmetric spanning set in Z^2.
    LuluCycle {
        /// The set as a JSON array of pairs, e.g. '[[0,0],[1,0],[-1,0],[0,1],[0,-1]]'.
        #[arg(long)]
        set: String,
        /// Polygon side length; omitted means auto (doubling search).
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Folner boundary ratios for the generators of a group.
    Folner {
        #[arg(long)]
        group: String,
        #[arg(long = "folner-sizes", value_delimiter = ',', default_value = "2,4,8,16")]
        folner_sizes: Vec<u32>,
        #[arg(long)]
        out: Option<String>,
    },
    /// Caratheodory-Fejer decomposition of a moment sequence.
    CfDecompose {
        /// Moments c_0..c_m as a JSON array of [re, im] pairs.
        #[arg(long)]
        moments: String,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match std::env::var("CHORDAL_EXTEND_CAPS") {
        Ok(s) => match Caps::from_env_str(&s) {
            Some(caps) => caps,
            None => {
                eprintln!("error: malformed CHORDAL_EXTEND_CAPS: {s}");
                return ExitCode::from(2);
            }
        },
        Err(_) => Caps::default(),
    };
    let (output, code) = match run(cli.command, &caps) {
        Ok((value, out_path)) => {
            if let Some(path) = out_path {
                if let Err(e) = std::fs::write(&path, format!("{value}\n")) {
                    eprintln!("error: cannot write {path}: {e}");
                    return ExitCode::from(2);
                }
            }
            (value, 0)
        }
        Err(CmdError { value, code }) => (value, code),
    };
    let mut stdout = std::io::stdout().lock();
    let _ = writeln!(stdout, "{output}");
    ExitCode::from(code)
}

struct CmdError {
    value: serde_json::Value,
    code: u8,
}

impl CmdError {
    fn usage(msg: impl Into<String>) -> Self {
        let msg = msg.into();
        eprintln!("error: {msg}");
        CmdError {
            value: serde_json::json!({"error": msg}),
            code: 2,
        }
    }
}

/// Exit code for library errors: negative-with-certificate is 1, bad input
/// is 2, caps and numerics are 3.
fn classify(e: &Error) -> u8 {
    match e {
        Error::NotChordal { .. } | Error::CliqueNotPsd { .. } | Error::NotPsd { .. } => 1,
        Error::Json(_)
        | Error::MalformedElement { .. }
        | Error::InvalidSpec(_)
        | Error::RuleMismatch(_)
        | Error::IncompatibleMorphism(_)
        | Error::PreconditionViolation(_)
        | Error::DimensionMismatch(_)
        | Error::NonFiniteEntry
        | Error::NonHermitian { .. }
        | Error::OutsideSet { .. }
        | Error::MissingValue { .. }
        | Error::NotUnitary { .. }
        | Error::NotSpanning
        | Error::VertexOutOfRange { .. } => 2,
        Error::RadiusCapExceeded { .. }
        | Error::WordLengthCapExceeded { .. }
        | Error::CliqueCapExceeded { .. }
        | Error::WindowCapExceeded { .. }
        | Error::WindowTooSmall { .. }
        | Error::LuluCapExceeded { .. }
        | Error::RootOffCircle { .. }
        | Error::EigenNoConvergence { .. }
        | Error::NoFillablePair => 3,
    }
}

fn lib_error(e: Error) -> CmdError {
    eprintln!("error: {e}");
    let value = match &e {
        Error::NotChordal { cycle } => {
            serde_json::json!({"error": "not_chordal", "cycle": cycle, "detail": e.to_string()})
        }
        Error::CliqueNotPsd { clique, min_eig } => serde_json::json!({
            "error": "clique_not_psd", "clique": clique, "min_eigenvalue": min_eig,
            "detail": e.to_string(),
        }),
        Error::NotPsd { context, min_eig } => serde_json::json!({
            "error": "not_psd", "context": context, "min_eigenvalue": min_eig,
            "detail": e.to_string(),
        }),
        other => serde_json::json!({"error": other.to_string()}),
    };
    CmdError {
        value,
        code: classify(&e),
    }
}

type CmdResult = Result<(serde_json::Value, Option<String>), CmdError>;

fn parse_json(label: &str, s: &str) -> Result<serde_json::Value, CmdError> {
    serde_json::from_str(s).map_err(|e| CmdError::usage(format!("malformed {label} JSON: {e}")))
}

/// Inline JSON (starts with '{' or '[') or a file path.
fn data_source(label: &str, s: &str) -> Result<serde_json::Value, CmdError> {
    let trimmed = s.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        parse_json(label, s)
    } else {
        let text = std::fs::read_to_string(s)
            .map_err(|e| CmdError::usage(format!("cannot read {s}: {e}")))?;
        parse_json(label, &text)
    }
}

fn run(command: Command, caps: &Caps) -> CmdResult {
    match command {
        Command::ChordalCheck {
            group,
            set,
            radius,
            out,
        } => {
            let spec = groups::spec_from_json(&parse_json("group", &group)?)
                .map_err(|e| CmdError::usage(e.to_string()))?;
            let set = groups::set_from_json(&spec, &parse_json("set", &set)?)
                .map_err(|e| CmdError::usage(e.to_string()))?;
            let window = cayley::ball(&spec, radius, caps).map_err(lib_error)?;
            let graph = cayley::cayley_graph(&spec, &set, &window).map_err(lib_error)?;
            let cert = graphs::is_chordal(&graph);
            let verified = graphs::verify_certificate(&graph, &cert);
            let chordal = cert.is_chordal();
            let value = serde_json::json!({
                "chordal": chordal,
                "verified": verified,
                "window_size": window.len(),
                "window": window.to_json(),
                "certificate": cert,
            });
            eprintln!(
                "chordal-check: {} on {} vertices",
                if chordal { "chordal" } else { "not chordal" },
                window.len()
            );
            if chordal {
                Ok((value, out))
            } else {
                Err(CmdError { value, code: 1 })
            }
        }
        Command::Extend {
            data,
            radius,
            folner_sizes,
            targets,
            tol,
            seed,
            out,
        } => {
            let data = PdFunctionData::from_json(&data_source("data", &data)?)
                .map_err(|e| CmdError::usage(e.to_string()))?;
            let targets = match targets {
                Some(t) => parse_json("targets", &t)?
                    .as_array()
                    .ok_or_else(|| CmdError::usage("targets must be a JSON array"))?
                    .iter()
                    .map(|e| groups::element_from_json(&data.spec, e))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| CmdError::usage(e.to_string()))?,
                None => vec![],
            };
            let report =
                extend::extension_report(&data, &[radius], &folner_sizes, &targets, seed, tol, caps)
                    .map_err(lib_error)?;
            let worst = report
                .cells
                .iter()
                .map(|c| c.gram_min_eigenvalue)
                .fold(f64::INFINITY, f64::min);
            eprintln!(
                "extend: {} cells, worst Gram min eigenvalue {worst:.3e}",
                report.cells.len()
            );
            Ok((serde_json::to_value(&report).expect("serializable"), out))
        }
        Command::Certify {
            which,
            unitaries,
            tol,
            out,
        } => match which.as_str() {
            "z2" => {
                let cert = extend::certify_z2_counterexample(tol, caps).map_err(|e| {
                    let mut err = lib_error(e);
                    if err.code != 2 {
                        err.code = 3;
                    }
                    err
                })?;
                let confirmed = (cert.contradiction - 1.0).abs() <= 1e-9;
                let mut value = serde_json::to_value(&cert).expect("serializable");
                value["confirmed"] = serde_json::json!(confirmed);
                eprintln!(
                    "certify z2: contradiction magnitude {} ({})",
                    cert.contradiction,
                    if confirmed { "confirmed" } else { "NOT confirmed" }
                );
                if confirmed {
                    Ok((value, out))
                } else {
                    Err(CmdError { value, code: 3 })
                }
            }
            "cross" => {
                let (u1, u2) = match unitaries {
                    Some(s) => {
                        let v = parse_json("unitaries", &s)?;
                        let arr = v
                            .as_array()
                            .filter(|a| a.len() == 2)
                            .ok_or_else(|| CmdError::usage("unitaries must be [U1, U2]"))?;
                        let u1: CMatrix = serde_json::from_value(arr[0].clone())
                            .map_err(|e| CmdError::usage(format!("bad U1: {e}")))?;
                        let u2: CMatrix = serde_json::from_value(arr[1].clone())
                            .map_err(|e| CmdError::usage(format!("bad U2: {e}")))?;
                        (u1, u2)
                    }
                    None => (
                        CMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]),
                        CMatrix::from_real(&[&[1.0, 0.0], &[0.0, -1.0]]),
                    ),
                };
                let cert = extend::certify_cross_counterexample(&u1, &u2, tol).map_err(|e| {
                    let mut err = lib_error(e);
                    if err.code != 2 {
                        err.code = 3;
                    }
                    err
                })?;
                eprintln!(
                    "certify cross: forced values differ by {} ({})",
                    cert.norm_difference,
                    if cert.extendable { "extendable" } else { "not extendable" }
                );
                Ok((serde_json::to_value(&cert).expect("serializable"), out))
            }
            other => Err(CmdError::usage(format!(
                "unknown certificate {other}; expected z2 or cross"
            ))),
        },
        Command::LuluCycle { set, n, out } => {
            let v = parse_json("set", &set)?;
            let pts: Vec<(i64, i64)> = v
                .as_array()
                .ok_or_else(|| CmdError::usage("set must be a JSON array of pairs"))?
                .iter()
                .map(|p| {
                    let pair: Vec<i64> = serde_json::from_value(p.clone()).ok()?;
                    (pair.len() == 2).then(|| (pair[0], pair[1]))
                })
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| CmdError::usage("set entries must be [x, y]"))?;
            let cycle = cayley::lulu_cycle(&pts, n).map_err(lib_error)?;
            eprintln!("lulu-cycle: chordless cycle of length {}", cycle.len());
            let value = serde_json::json!({
                "length": cycle.len(),
                "verified_chordless": true,
                "cycle": cycle.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>(),
            });
            Ok((value, out))
        }
        Command::Folner {
            group,
            folner_sizes,
            out,
        } => {
            let spec = groups::spec_from_json(&parse_json("group", &group)?)
                .map_err(|e| CmdError::usage(e.to_string()))?;
            let mut rows = Vec::new();
            for n in folner_sizes {
                let k = cayley::folner_set(&spec, n).map_err(lib_error)?;
                let ratio = cayley::folner_ratio(&spec, &spec.generators, &k).map_err(lib_error)?;
                rows.push(serde_json::json!({
                    "N": n,
                    "set_size": k.elements.len(),
                    "ratio": ratio,
                }));
            }
            eprintln!("folner: {} ratios computed", rows.len());
            Ok((
                serde_json::json!({
                    "group": groups::spec_to_json(&spec),
                    "ratios": rows,
                }),
                out,
            ))
        }
        Command::CfDecompose { moments, tol, out } => {
            let v = parse_json("moments", &moments)?;
            let pairs: Vec<[f64; 2]> = serde_json::from_value(v)
                .map_err(|e| CmdError::usage(format!("moments must be [[re,im],...]: {e}")))?;
            let moments: Vec<Complex64> =
                pairs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
            let atoms = extend::cf_decompose(&moments, tol).map_err(lib_error)?;
            eprintln!("cf-decompose: {} atoms", atoms.len());
            Ok((
                serde_json::json!({
                    "atoms": atoms,
                }),
                out,
            ))
        }
    }
}
