//! Command-line front end: `compute`, `verify` and `sweep`.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::closed_form;
use crate::linalg::{self, c, C64};
use crate::mayer_vietoris::{direct_abelian_torsion, tor_e, MvError};
use crate::presentation::{cable_exterior_presentation, PresentationError, MU};
use crate::representation::{rep_build, Family, RepError, RepIndex};
use crate::torsion::{sign_class_distance, TorsionOptions};
use crate::verify::{self, index_label, Suite, VerifyConfig};

pub const SCHEMA: &str = "1";
pub const TOL_RANK_ENV: &str = "TORSION_TOL_RANK";
pub const DEFAULT_TOL_MATCH: f64 = 1e-6;

/// Exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "knot-torsion",
    version,
    about = "Adjoint Reidemeister torsion of cable knot exteriors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one torsion and compare it with its closed form.
    Compute(ComputeArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Evaluate every admissible index of a family.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Tolerances {
    /// Rank tolerance relative to the largest singular value.
    #[arg(long)]
    pub tol_rank: Option<f64>,
    /// Relative tolerance for matching the closed form up to sign.
    #[arg(long, default_value_t = DEFAULT_TOL_MATCH)]
    pub tol_match: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub a: i64,
    #[arg(long)]
    pub b: i64,
    #[arg(long)]
    pub j: Option<i64>,
    #[arg(long)]
    pub k: Option<i64>,
    #[arg(long)]
    pub l: Option<i64>,
    #[arg(long)]
    pub m: Option<i64>,
    /// Complex parameter as `re,im`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub xi: C64,
    #[command(flatten)]
    pub tol: Tolerances,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Include the chain complexes of the pieces in the JSON record.
    #[arg(long)]
    pub dump_complex: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = parse_suite, default_value = "all")]
    pub suite: Suite,
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long)]
    pub tol_rank: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub a: i64,
    #[arg(long)]
    pub b: i64,
    /// One or more `re,im` values.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true, num_args = 1.., required = true)]
    pub xi: Vec<C64>,
    #[command(flatten)]
    pub tol: Tolerances,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse()
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// Parses `re,im`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `re,im`, got `{s}`"))?;
    let re: f64 = re
        .trim()
        .parse()
        .map_err(|e| format!("real part `{re}`: {e}"))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|e| format!("imaginary part `{im}`: {e}"))?;
    if !re.is_finite() || !im.is_finite() {
        return Err(format!("`{s}` is not finite"));
    }
    Ok(c(re, im))
}

/// Rank tolerance from the flag, then the environment, then the default.
pub fn rank_tolerance(flag: Option<f64>) -> Result<f64, String> {
    let tol = match flag {
        Some(t) => t,
        None => match std::env::var(TOL_RANK_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|e| format!("{TOL_RANK_ENV}=`{v}`: {e}"))?,
            Err(_) => linalg::DEFAULT_RANK_TOL,
        },
    };
    if !(tol > 0.0 && tol < 1.0) {
        return Err(format!("rank tolerance {tol} must lie in (0, 1)"));
    }
    Ok(tol)
}

fn index_from_flags(
    family: Family,
    j: Option<i64>,
    k: Option<i64>,
    l: Option<i64>,
    m: Option<i64>,
) -> Result<RepIndex, String> {
    let given = [("j", j), ("k", k), ("l", l), ("m", m)];
    let allowed: &[&str] = match family {
        Family::AA => &[],
        Family::AN => &["j"],
        Family::NA => &["k"],
        Family::NN => &["l", "m"],
    };
    if let Some((name, _)) = given
        .iter()
        .find(|(n, v)| v.is_some() && !allowed.contains(n))
    {
        return Err(format!("family {family} does not take --{name}"));
    }
    let need =
        |name: &str, v: Option<i64>| v.ok_or_else(|| format!("family {family} needs --{name}"));
    Ok(match family {
        Family::AA => RepIndex::None,
        Family::AN => RepIndex::J(need("j", j)?),
        Family::NA => RepIndex::K(need("k", k)?),
        Family::NN => RepIndex::LM {
            l: need("l", l)?,
            m: need("m", m)?,
        },
    })
}

fn index_pair(index: RepIndex) -> (Option<i64>, Option<i64>) {
    index.pair()
}

/// Outcome of one command: exit status and the text to print.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn invalid(msg: impl Into<String>) -> Outcome {
        Outcome {
            status: EXIT_INVALID,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
        }
    }
}

/// A computed torsion together with its reference value.
#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub family: Family,
    pub a: i64,
    pub b: i64,
    pub index: RepIndex,
    pub xi: C64,
    pub torsion: C64,
    pub reference: C64,
    pub relative_error: f64,
    pub matched: bool,
    pub extra: Value,
}

/// Errors that mean the parameters themselves are inadmissible.
fn is_invalid_parameter(e: &MvError) -> bool {
    matches!(
        e,
        MvError::Presentation(_)
            | MvError::Rep(RepError::IndexOutOfRange { .. })
            | MvError::Rep(RepError::WrongIndex { .. })
            | MvError::Rep(RepError::DegenerateXi { .. })
            | MvError::Rep(RepError::Presentation(_))
    )
}

#[derive(Debug)]
pub enum PointError {
    Invalid(String),
    Failed(String),
}

fn pair_json(z: C64) -> Value {
    json!([z.re, z.im])
}

/// One parameter point with the options it is evaluated under.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointRequest {
    pub family: Family,
    pub a: i64,
    pub b: i64,
    pub index: RepIndex,
    pub xi: C64,
    pub opts: TorsionOptions,
    pub tol_match: f64,
    pub dump_complex: bool,
}

/// Evaluates one parameter point.
pub fn compute_point(req: &PointRequest) -> Result<PointResult, PointError> {
    let PointRequest {
        family,
        a,
        b,
        index,
        xi,
        tol_match,
        dump_complex,
        ..
    } = *req;
    let opts = &req.opts;
    let classify = |e: MvError| {
        if is_invalid_parameter(&e) {
            PointError::Invalid(e.to_string())
        } else {
            PointError::Failed(e.to_string())
        }
    };
    let (torsion, reference, extra) = if family == Family::AA {
        let (p, per) = cable_exterior_presentation(a, b)
            .map_err(|e: PresentationError| PointError::Invalid(e.to_string()))?;
        let rep = rep_build(family, xi, a, b, index).map_err(|e| classify(MvError::Rep(e)))?;
        let mu = per.get(MU).cloned().expect("cable meridian");
        let t = direct_abelian_torsion(&p, &rep, &mu, opts).map_err(classify)?;
        let tau0 =
            closed_form::tau(0, xi, a, b, index).map_err(|e| PointError::Failed(e.to_string()))?;
        let reference = (tau0.value * tau0.value).inv();
        let mut extra = json!({ "route": "direct" });
        if dump_complex {
            let cx = crate::chain::presentation_complex(&p, &rep, opts.tol)
                .map_err(|e| PointError::Failed(e.to_string()))?;
            extra["complexes"] = json!({ "E": cx.to_json() });
        }
        (t.value(), reference, extra)
    } else {
        let g = tor_e(family, a, b, index, xi, opts).map_err(classify)?;
        let reference = closed_form::exterior_torsion(family, a, b, index, xi)
            .map_err(|e| PointError::Failed(e.to_string()))?
            .value;
        let mut extra = json!({
            "route": "splitting",
            "pieces": {
                "C": pair_json(g.tor_c.value()),
                "D": pair_json(g.tor_d.value()),
                "S": pair_json(g.tor_s.value()),
                "sequence": pair_json(g.tor_sequence.value()),
            },
            "exactness_residual": g.sequence.exactness_residual,
            "square_zero_residual": [
                g.data.c.complex.square_zero_residual(),
                g.data.d.complex.square_zero_residual(),
                g.data.s.complex.square_zero_residual(),
            ],
        });
        if dump_complex {
            extra["complexes"] = json!({
                "C": g.data.c.complex.to_json(),
                "D": g.data.d.complex.to_json(),
                "S": g.data.s.complex.to_json(),
                "sequence": g.sequence.complex.to_json(),
            });
        }
        (g.value.value(), reference, extra)
    };
    let relative_error = sign_class_distance(torsion, reference);
    Ok(PointResult {
        family,
        a,
        b,
        index,
        xi,
        torsion,
        reference,
        relative_error,
        matched: relative_error <= tol_match,
        extra,
    })
}

fn point_json(r: &PointResult) -> Value {
    let (i1, i2) = index_pair(r.index);
    let mut v = json!({
        "schema": SCHEMA,
        "family": r.family.to_string(),
        "params": { "a": r.a, "b": r.b, "index1": i1, "index2": i2 },
        "xi": pair_json(r.xi),
        "engine_torsion": pair_json(r.torsion),
        "closed_form": pair_json(r.reference),
        "match_up_to_sign": r.matched,
        "residuals": { "relative_error": r.relative_error },
    });
    if let (Some(obj), Value::Object(extra)) = (v.as_object_mut(), &r.extra) {
        for (key, val) in extra {
            obj.insert(key.clone(), val.clone());
        }
    }
    v
}

pub const CSV_HEADER: &str =
    "family,a,b,index1,index2,xi_re,xi_im,tor_re,tor_im,ref_re,ref_im,match";

fn opt(v: Option<i64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn csv_row(r: &PointResult) -> String {
    let (i1, i2) = index_pair(r.index);
    format!(
        "{},{},{},{},{},{:e},{:e},{:e},{:e},{:e},{:e},{}",
        r.family,
        r.a,
        r.b,
        opt(i1),
        opt(i2),
        r.xi.re,
        r.xi.im,
        r.torsion.re,
        r.torsion.im,
        r.reference.re,
        r.reference.im,
        r.matched
    )
}

fn compute(args: &ComputeArgs) -> Outcome {
    let tol = match rank_tolerance(args.tol.tol_rank) {
        Ok(t) => t,
        Err(e) => return Outcome::invalid(e),
    };
    let index = match index_from_flags(args.family, args.j, args.k, args.l, args.m) {
        Ok(i) => i,
        Err(e) => return Outcome::invalid(e),
    };
    let opts = TorsionOptions::with_tol(tol);
    let req = PointRequest {
        family: args.family,
        a: args.a,
        b: args.b,
        index,
        xi: args.xi,
        opts,
        tol_match: args.tol.tol_match,
        dump_complex: args.dump_complex,
    };
    match compute_point(&req) {
        Ok(r) => {
            let stdout = match args.format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&point_json(&r)).expect("serializable")
                ),
                Format::Csv => format!("{CSV_HEADER}\n{}\n", csv_row(&r)),
            };
            let (status, stderr) = if r.matched {
                (EXIT_OK, String::new())
            } else {
                (
                    EXIT_MISMATCH,
                    format!(
                        "error: torsion differs from the closed form by {:.3e} (tolerance {:.1e})\n",
                        r.relative_error, args.tol.tol_match
                    ),
                )
            };
            Outcome {
                status,
                stdout,
                stderr,
            }
        }
        Err(PointError::Invalid(e)) => Outcome::invalid(e),
        Err(PointError::Failed(e)) => Outcome {
            status: EXIT_MISMATCH,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn verify_cmd(args: &VerifyArgs) -> Outcome {
    let tol_rank = match rank_tolerance(args.tol_rank) {
        Ok(t) => t,
        Err(e) => return Outcome::invalid(e),
    };
    let cfg = VerifyConfig {
        seed: args.seed,
        tol_rank,
    };
    let reports = verify::run_suite(args.suite, &cfg);
    let passed = reports.iter().all(|r| r.passed());
    let doc = json!({
        "schema": SCHEMA,
        "seed": args.seed,
        "tol_rank": tol_rank,
        "passed": passed,
        "criteria": reports,
    });
    let mut stderr = String::new();
    for r in &reports {
        let _ = writeln!(
            stderr,
            "criterion {}: {} - {} ({} cases)",
            r.id,
            if r.passed() { "PASS" } else { "FAIL" },
            r.title,
            r.cases.len()
        );
        for case in r.failures() {
            let _ = writeln!(stderr, "    failed: {} {}", case.name, case.detail);
        }
    }
    Outcome {
        status: if passed { EXIT_OK } else { EXIT_MISMATCH },
        stdout: format!(
            "{}\n",
            serde_json::to_string_pretty(&doc).expect("serializable")
        ),
        stderr,
    }
}

fn sweep(args: &SweepArgs) -> Outcome {
    let tol = match rank_tolerance(args.tol.tol_rank) {
        Ok(t) => t,
        Err(e) => return Outcome::invalid(e),
    };
    if let Err(e) = cable_exterior_presentation(args.a, args.b) {
        return Outcome::invalid(e.to_string());
    }
    let opts = TorsionOptions::with_tol(tol);
    let points: Vec<(RepIndex, C64)> = verify::index_range(args.family, args.a, args.b)
        .into_iter()
        .flat_map(|index| args.xi.iter().map(move |xi| (index, *xi)))
        .collect();
    if points.is_empty() {
        return Outcome::invalid(format!(
            "family {} has no admissible index at (a, b) = ({}, {})",
            args.family, args.a, args.b
        ));
    }
    // Collecting an indexed parallel iterator keeps parameter order.
    let results: Vec<Result<PointResult, PointError>> = points
        .par_iter()
        .map(|(index, xi)| {
            compute_point(&PointRequest {
                family: args.family,
                a: args.a,
                b: args.b,
                index: *index,
                xi: *xi,
                opts,
                tol_match: args.tol.tol_match,
                dump_complex: false,
            })
        })
        .collect();
    let mut ok = Vec::with_capacity(results.len());
    let mut stderr = String::new();
    let mut status = EXIT_OK;
    for ((index, xi), r) in points.iter().zip(results) {
        match r {
            Ok(r) => {
                if !r.matched {
                    status = EXIT_MISMATCH;
                }
                ok.push(r);
            }
            Err(PointError::Invalid(e)) => {
                return Outcome::invalid(format!("{} xi={xi}: {e}", index_label(*index)))
            }
            Err(PointError::Failed(e)) => {
                status = EXIT_MISMATCH;
                let _ = writeln!(stderr, "error: {} xi={xi}: {e}", index_label(*index));
            }
        }
    }
    let stdout = match args.format {
        Format::Csv => {
            let mut out = format!("{CSV_HEADER}\n");
            for r in &ok {
                out.push_str(&csv_row(r));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let rows: Vec<Value> = ok.iter().map(point_json).collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&json!({ "schema": SCHEMA, "results": rows }))
                    .expect("serializable")
            )
        }
    };
    Outcome {
        status,
        stdout,
        stderr,
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Compute(args) => compute(args),
        Command::Verify(args) => verify_cmd(args),
        Command::Sweep(args) => sweep(args),
    }
}
