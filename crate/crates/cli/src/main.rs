//! `antiorb`: command-line driver for exact Fourier analysis on cyclic
//! quiver representation spaces over small finite fields.
//!
//! Exit codes: 0 all asserted checks pass, 1 a check failed, 2 usage error,
//! 3 point budget exceeded. `ANTIORB_BUDGET` overrides the default point
//! budget. Reports are deterministic: identical configuration and seed
//! produce byte-identical output.

mod tableio;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use antiorb_core::accept;
use antiorb_core::casestudies;
use antiorb_core::finitefield::FqField;
use antiorb_core::invariants;
use antiorb_core::quiver::{self, GradedDims, QuiverRep};
use antiorb_core::segments::count_multisegments;
use antiorb_core::transform::{kloosterman, kloosterman_bound_ok};
use antiorb_core::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "antiorb",
    version,
    about = "Exact finite-field Fourier analysis on cyclic-quiver representation spaces"
)]
struct Cli {
    /// Write the JSON report to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,

    /// Seed for sampled checks and generated inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the orbit label of a representation read from JSON.
    Decompose {
        /// Input file: {field, m, eps, dims, blocks}.
        #[arg(long = "in")]
        input: String,
    },
    /// Enumerate rational orbits on E^eps_V(F_q).
    Orbits {
        #[arg(long)]
        m: usize,
        /// Comma-separated dimension vector, e.g. "1,1".
        #[arg(long)]
        dims: String,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        eps: String,
        /// Restrict to the nilpotent locus.
        #[arg(long)]
        nilpotent: bool,
    },
    /// Fourier-transform a function table (JSON or AORB1 binary).
    Fourier {
        #[arg(long = "in")]
        input: String,
        #[arg(long = "out-table")]
        out_table: String,
    },
    /// Evaluate a generalized Kloosterman sum and its archimedean bound.
    Kloosterman {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: u64,
        /// Element index of lambda in the field enumeration (nonzero).
        #[arg(long)]
        lambda: u64,
    },
    /// Compute the biorbital function space and compare with the aperiodic
    /// multisegment count.
    Biorbital {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        dims: String,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        eps: String,
        /// Kept for interface stability; the JSON report is always emitted.
        #[arg(long)]
        json: bool,
    },
    /// Parabolic induction of invariant tables read from JSON.
    Induce {
        /// Input file: {eps, parts: [{dims: {m, dims}, table: FuncTable}]}.
        #[arg(long = "in")]
        input: String,
        #[arg(long = "out-table")]
        out_table: String,
    },
    /// Check commutation of induction or restriction with the transform on
    /// seeded invariant inputs.
    VerifyCommutation {
        /// "induction" or "restriction".
        #[arg(long)]
        kind: String,
        #[arg(long)]
        q: u64,
        /// Split as dims joined by '+', e.g. "1,1+1,1" or "1,0+0,1+1,1".
        #[arg(long)]
        split: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        eps: String,
    },
    /// Run one of the worked examples.
    Case {
        /// quadric | symplectic | symmetric | unipotent
        which: String,
        #[arg(long)]
        q: u64,
        /// Ambient dimension for the quadric (default 4) or n for the
        /// symplectic pair (default 2).
        #[arg(long)]
        n: Option<usize>,
        /// Optional single lambda (element index) for the quadric.
        #[arg(long)]
        lambda: Option<u64>,
        /// Kept for interface stability; the JSON report is always emitted.
        #[arg(long)]
        json: bool,
    },
    /// Run the whole verification suite.
    AcceptAll {
        #[arg(long, default_value = "desk")]
        profile: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

enum CliError {
    Core(CoreError),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(s) => write!(f, "{s}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Core(CoreError::BudgetExceeded { .. }) => ExitCode::from(3),
            _ => ExitCode::from(2),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

impl From<String> for CliError {
    fn from(s: String) -> Self {
        CliError::Usage(s)
    }
}

fn budget() -> u64 {
    std::env::var("ANTIORB_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(antiorb_core::DEFAULT_POINT_BUDGET)
}

fn check_budget(q: u64, dim: u32) -> Result<(), CliError> {
    let needed = (q as u128).pow(dim);
    if needed > budget() as u128 {
        return Err(CoreError::BudgetExceeded {
            needed,
            budget: budget(),
        }
        .into());
    }
    Ok(())
}

fn parse_dims(m: usize, dims: &str) -> Result<GradedDims, CliError> {
    let parsed: Result<Vec<u32>, _> = dims.split(',').map(|s| s.trim().parse()).collect();
    let parsed = parsed.map_err(|_| CliError::Usage(format!("cannot parse dims {dims:?}")))?;
    if parsed.len() != m {
        return Err(CliError::Usage(format!(
            "dims has {} entries but m = {m}",
            parsed.len()
        )));
    }
    Ok(GradedDims::new(m, parsed))
}

fn parse_eps(eps: &str) -> Result<i32, CliError> {
    match eps.trim() {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(CliError::Usage(format!(
            "eps must be +1 or -1, got {other:?}"
        ))),
    }
}

fn parse_lambda(
    field: &FqField,
    lambda: u64,
) -> Result<antiorb_core::finitefield::FqElem, CliError> {
    if lambda == 0 || lambda >= field.q() {
        return Err(CliError::Usage(format!(
            "lambda index {lambda} out of range 1..{}",
            field.q()
        )));
    }
    Ok(field.from_index(lambda))
}

/// Emits a report (stdout or `--out`) and converts a boolean check into the
/// exit-code contract.
fn emit(
    out: &Option<String>,
    report: serde_json::Value,
    all_pass: bool,
) -> Result<ExitCode, CliError> {
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match out {
        Some(path) => tableio::write_string(path, &text)?,
        None => print!("{text}"),
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Cmd::Decompose { input } => {
            let text = tableio::read_to_string(&input)?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(e.to_string()))?;
            let rep = QuiverRep::from_json(&value)?;
            let label = quiver::decompose(&rep);
            let report = json!({
                "command": "decompose",
                "version": antiorb_core::VERSION,
                "config": {"input": input},
                "label": label,
                "nilpotent": label.is_nilpotent(),
            });
            emit(&cli.out, report, true)
        }
        Cmd::Orbits {
            m,
            dims,
            q,
            eps,
            nilpotent,
        } => {
            let field = FqField::for_q(q)?;
            let dims = parse_dims(m, &dims)?;
            let eps = parse_eps(&eps)?;
            check_budget(q, dims.space_dim(eps))?;
            let orbits =
                quiver::enumerate_rational_orbits(&field, &dims, eps, nilpotent, budget())?;
            let listing: Vec<serde_json::Value> = orbits
                .iter()
                .map(|o| {
                    json!({
                        "representative": o.representative.to_json(),
                        "size": o.points.len(),
                        "label": o.label,
                    })
                })
                .collect();
            let report = json!({
                "command": "orbits",
                "version": antiorb_core::VERSION,
                "config": {"m": m, "dims": dims.dims, "q": q, "eps": eps, "nilpotent": nilpotent},
                "orbit_count": orbits.len(),
                "orbits": listing,
            });
            emit(&cli.out, report, true)
        }
        Cmd::Fourier { input, out_table } => {
            let table = tableio::read_table(&input)?;
            if table.space.num_points() > budget() as u128 {
                return Err(CoreError::BudgetExceeded {
                    needed: table.space.num_points(),
                    budget: budget(),
                }
                .into());
            }
            let out = table.fourier();
            tableio::write_table(&out_table, &out)?;
            let report = json!({
                "command": "fourier",
                "version": antiorb_core::VERSION,
                "config": {"input": input, "out_table": out_table},
                "points": out.values.len(),
                "norm_halves": out.norm_halves,
            });
            emit(&cli.out, report, true)
        }
        Cmd::Kloosterman { m, q, lambda } => {
            let field = FqField::for_q(q)?;
            let lam = parse_lambda(&field, lambda)?;
            let value = kloosterman(m, &field, &lam)?;
            let bound_ok = kloosterman_bound_ok(m, &field, &lam, accept::BOUND_TOL)?;
            let report = json!({
                "command": "kloosterman",
                "version": antiorb_core::VERSION,
                "config": {"m": m, "q": q, "lambda": lambda},
                "value": value,
                "display": format!("{value}"),
                "bound_ok": bound_ok,
            });
            emit(&cli.out, report, bound_ok)
        }
        Cmd::Biorbital {
            m,
            dims,
            q,
            eps,
            json: _,
        } => {
            let field = FqField::for_q(q)?;
            let dims = parse_dims(m, &dims)?;
            let eps = parse_eps(&eps)?;
            check_budget(q, dims.space_dim(eps))?;
            let (space, orbits) = invariants::biorbital_space(&field, &dims, eps, budget())?;
            let (_, aperiodic) = count_multisegments(m, &dims.dims);
            let matched = space.dimension == aperiodic;
            let report = json!({
                "command": "biorbital",
                "version": antiorb_core::VERSION,
                "config": {"m": m, "dims": dims.dims, "q": q, "eps": eps},
                "dimension": space.dimension,
                "aperiodic_count": aperiodic,
                "match": matched,
                "orbit_sizes": orbits.iter().map(|o| o.points.len()).collect::<Vec<_>>(),
                "basis": space.basis,
            });
            emit(&cli.out, report, matched)
        }
        Cmd::Induce { input, out_table } => {
            let text = tableio::read_to_string(&input)?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(e.to_string()))?;
            let eps = value
                .get("eps")
                .and_then(|x| x.as_i64())
                .ok_or_else(|| CliError::Usage("missing eps".into()))? as i32;
            let parts_json = value
                .get("parts")
                .and_then(|x| x.as_array())
                .ok_or_else(|| CliError::Usage("missing parts".into()))?;
            let mut parts = Vec::new();
            for pj in parts_json {
                let dims: GradedDims = serde_json::from_value(
                    pj.get("dims")
                        .cloned()
                        .ok_or_else(|| CliError::Usage("part missing dims".into()))?,
                )
                .map_err(|e| CliError::Usage(e.to_string()))?;
                let table: antiorb_core::transform::FuncTable = serde_json::from_value(
                    pj.get("table")
                        .cloned()
                        .ok_or_else(|| CliError::Usage("part missing table".into()))?,
                )
                .map_err(|e| CliError::Usage(e.to_string()))?;
                table.validate()?;
                parts.push((dims, table));
            }
            let m = parts
                .first()
                .map(|(d, _)| d.m)
                .ok_or_else(|| CliError::Usage("no parts given".into()))?;
            let mut sum = vec![0u32; m];
            for (d, _) in &parts {
                for i in 0..m {
                    sum[i] += d.dims[i];
                }
            }
            let q = parts[0].1.space.field.q();
            let target = GradedDims::new(m, sum);
            check_budget(q, target.space_dim(eps))?;
            let table = invariants::induce(&parts, eps)?;
            tableio::write_table(&out_table, &table)?;
            let report = json!({
                "command": "induce",
                "version": antiorb_core::VERSION,
                "config": {"input": input, "out_table": out_table},
                "target_dims": target.dims,
                "points": table.values.len(),
            });
            emit(&cli.out, report, true)
        }
        Cmd::VerifyCommutation {
            kind,
            q,
            split,
            eps,
        } => {
            let field = FqField::for_q(q)?;
            let eps = parse_eps(&eps)?;
            let dims_list: Result<Vec<Vec<u32>>, CliError> = split
                .split('+')
                .map(|part| {
                    part.split(',')
                        .map(|s| s.trim().parse::<u32>())
                        .collect::<Result<Vec<u32>, _>>()
                        .map_err(|_| CliError::Usage(format!("cannot parse split {split:?}")))
                })
                .collect();
            let dims_list = dims_list?;
            if dims_list.len() < 2 {
                return Err(CliError::Usage("split needs at least two parts".into()));
            }
            let m = dims_list[0].len();
            if dims_list.iter().any(|d| d.len() != m) {
                return Err(CliError::Usage("split parts have differing m".into()));
            }
            let total: Vec<u32> = (0..m)
                .map(|i| dims_list.iter().map(|d| d[i]).sum())
                .collect();
            let total_dims = GradedDims::new(m, total);
            check_budget(q, total_dims.space_dim(eps))?;
            let inner = match kind.as_str() {
                "induction" => {
                    let parts: Vec<(GradedDims, antiorb_core::transform::FuncTable)> = dims_list
                        .iter()
                        .enumerate()
                        .map(|(j, d)| {
                            let dims = GradedDims::new(m, d.clone());
                            let t = invariants::random_invariant_table(
                                &field,
                                &dims,
                                eps,
                                cli.seed.wrapping_add(j as u64),
                                budget(),
                            )?;
                            Ok::<_, CoreError>((dims, t))
                        })
                        .collect::<Result<_, _>>()?;
                    invariants::check_fourier_induction_commutes(&parts, eps)?
                }
                "restriction" => {
                    if dims_list.len() != 2 {
                        return Err(CliError::Usage(
                            "restriction takes exactly two split parts".into(),
                        ));
                    }
                    let d1 = GradedDims::new(m, dims_list[0].clone());
                    let d2 = GradedDims::new(m, dims_list[1].clone());
                    let f = invariants::random_invariant_table(
                        &field,
                        &total_dims,
                        eps,
                        cli.seed,
                        budget(),
                    )?;
                    invariants::check_fourier_restriction_commutes(&f, &d1, &d2, eps)?
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "kind must be induction or restriction, got {other:?}"
                    )))
                }
            };
            // Degenerate inputs are flagged but do not fail the run.
            let pass = inner.colinear;
            let report = json!({
                "command": "verify-commutation",
                "version": antiorb_core::VERSION,
                "config": {"kind": kind, "q": q, "split": split, "eps": eps, "seed": cli.seed},
                "colinear": inner.colinear,
                "degenerate": inner.degenerate,
                "scalar": inner.scalar,
                "scalar_q_exponent": inner.scalar_q_exponent,
            });
            emit(&cli.out, report, pass)
        }
        Cmd::Case {
            which,
            q,
            n,
            lambda,
            json: _,
        } => {
            let field = FqField::for_q(q)?;
            let case_report = match which.as_str() {
                "quadric" => {
                    let n_dim = n.unwrap_or(4);
                    check_budget(q, n_dim as u32)?;
                    let lam = match lambda {
                        Some(l) => Some(parse_lambda(&field, l)?),
                        None => None,
                    };
                    casestudies::quadric_check(n_dim, &field, lam.as_ref())?
                }
                "symplectic" => casestudies::symplectic_check(n.unwrap_or(2), &field)?,
                "symmetric" => casestudies::symmetric_case_check(&field)?,
                "unipotent" => {
                    check_budget(q, 6)?;
                    casestudies::unipotent_check(&field)?
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown case {other:?}; expected quadric|symplectic|symmetric|unipotent"
                    )))
                }
            };
            let pass = case_report.passed;
            let report = json!({
                "command": "case",
                "version": antiorb_core::VERSION,
                "config": {"which": which, "q": q, "n": n, "lambda": lambda},
                "report": case_report,
            });
            emit(&cli.out, report, pass)
        }
        Cmd::AcceptAll { profile } => {
            if profile != "desk" {
                return Err(CliError::Usage(format!(
                    "unknown profile {profile:?}; only \"desk\" is available"
                )));
            }
            let results = accept::accept_all()?;
            let mut all_pass = true;
            for r in &results {
                eprintln!(
                    "criterion {:>2} {:<42} {}",
                    r.id,
                    r.name,
                    if r.passed { "PASS" } else { "FAIL" }
                );
                all_pass &= r.passed;
            }
            let report = json!({
                "command": "accept-all",
                "version": antiorb_core::VERSION,
                "config": {"profile": profile},
                "criteria": results,
                "all_passed": all_pass,
            });
            emit(&cli.out, report, all_pass)
        }
    }
}
