//! Command-line front end.
//!
//! Exit codes: 0 when everything checked passes, 1 when a check fails or a
//! computation errors, 2 on usage errors (including out-of-range numbers).

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classify::{
    codim1_certificate, compare_closed_forms, linear_part_matrix, random_sweep, LinearFunction,
};
use crate::crosscap::{build_context, CrossCapContext};
use crate::error::Error;
use crate::fields::{euler_lowerable, family, generator_set, lowerable, Family, FieldLabel};
use crate::image::{derlog0_check, image_equation_cached, tangency_factor, Tangency};
use crate::lift::{lift_euler, verify_all, LiftReport};
use crate::order::{default_degree_bound, graded_membership_check, leading_term_table};

#[derive(Debug, Parser)]
#[command(
    name = "liftvf",
    version,
    about = "Liftable vector fields over minimal cross caps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct Common {
    /// Multiplicity of the cross cap (k >= 2).
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print liftable fields (all generators, or one with --family/--j).
    Fields {
        #[command(flatten)]
        common: Common,
        /// 1, 2, 3 or `euler`.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, allow_negative_numbers = true)]
        j: Option<i64>,
        /// Also print the lowerable field.
        #[arg(long)]
        lowerable: bool,
    },
    /// Check the lifting identity for every generator.
    Verify {
        #[command(flatten)]
        common: Common,
    },
    /// Print the defining equation of the image.
    Image {
        #[command(flatten)]
        common: Common,
    },
    /// Check that every generator annihilates the image equation and that
    /// the Euler field scales it by k^2.
    Tangency {
        #[command(flatten)]
        common: Common,
        /// Allow k >= 5.
        #[arg(long)]
        slow: bool,
    },
    /// Leading terms under the negative lexicographic order.
    LeadingTerms {
        #[command(flatten)]
        common: Common,
    },
    /// Graded comparison of tangent fields with the generators' span.
    Membership {
        #[command(flatten)]
        common: Common,
        /// Largest weighted shift checked (default 2k).
        #[arg(long, allow_negative_numbers = true)]
        max_degree: Option<i64>,
        /// Allow k >= 6.
        #[arg(long)]
        slow: bool,
    },
    /// Codimension-one certificate for linear functions.
    Classify {
        #[command(flatten)]
        common: Common,
        /// JSON file with alpha, beta, gamma1, gamma2 as rational strings.
        #[arg(long)]
        coeffs: Option<std::path::PathBuf>,
        /// Number of random functions to test.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the standard battery of checks.
    Suite {
        #[arg(long, default_value_t = 6)]
        max_k: i64,
        #[arg(long)]
        slow: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidK(_)
            | Error::IndexOutOfRange { .. }
            | Error::InvalidFamily(_)
            | Error::Parse(_) => Failure::Usage(e.to_string()),
            Error::ComponentCount { .. } | Error::ZeroLinearFunction => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Compute(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(String, bool), Failure>;

/// Runs the command line `argv` (program name first), writing results to
/// standard output and diagnostics to standard error.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let threads = std::env::var("LIFTVF_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok());
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads.filter(|&n| n > 0) {
        builder = builder.num_threads(n);
    }
    let result = match builder.build() {
        Ok(pool) => pool.install(|| dispatch(cli.command)),
        Err(e) => Err(Failure::Compute(e.to_string())),
    };
    match result {
        Ok((text, pass)) => {
            let _ = out.write_all(text.as_bytes());
            if pass {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Compute(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

fn context(k: i64) -> Result<CrossCapContext, Failure> {
    Ok(build_context(k)?)
}

fn emit_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Fields {
            common,
            family,
            j,
            lowerable,
        } => cmd_fields(&common, family.as_deref(), j, lowerable),
        Command::Verify { common } => cmd_verify(&common),
        Command::Image { common } => cmd_image(&common),
        Command::Tangency { common, slow } => cmd_tangency(&common, slow),
        Command::LeadingTerms { common } => cmd_leading_terms(&common),
        Command::Membership {
            common,
            max_degree,
            slow,
        } => cmd_membership(&common, max_degree, slow),
        Command::Classify {
            common,
            coeffs,
            random,
            seed,
        } => cmd_classify(&common, coeffs.as_deref(), random, seed),
        Command::Suite {
            max_k,
            slow,
            seed,
            format,
        } => cmd_suite(max_k, slow, seed, format),
    }
}

fn field_text(
    ctx: &CrossCapContext,
    out: &mut String,
    title: &str,
    f: &crate::fields::VectorField,
) {
    let t = ctx.table(f.space);
    let _ = writeln!(out, "{title}");
    for (i, c) in f.components.iter().enumerate() {
        let _ = writeln!(out, "  d/d{}: {}", t.name(i), c);
    }
}

fn cmd_fields(common: &Common, fam: Option<&str>, j: Option<i64>, with_lowerable: bool) -> Outcome {
    let ctx = context(common.k)?;
    let k = ctx.k() as i64;
    let selected: Vec<FieldLabel> = match (fam, j) {
        (None, None) => generator_set(&ctx).iter().filter_map(|g| g.label).collect(),
        (Some("euler"), None) => vec![FieldLabel::Euler],
        (Some("euler"), Some(_)) => {
            return Err(Failure::Usage(
                "--j does not apply to the Euler field".into(),
            ))
        }
        (Some(f), Some(j)) => {
            let family: Family = f.parse()?;
            if !(1..k).contains(&j) {
                return Err(Error::IndexOutOfRange { j, max: k - 1 }.into());
            }
            vec![FieldLabel::Family {
                family,
                j: j as usize,
            }]
        }
        (Some(_), None) => return Err(Failure::Usage("--family requires --j".into())),
        (None, Some(_)) => return Err(Failure::Usage("--j requires --family".into())),
    };
    let mut items = Vec::new();
    for label in selected {
        let (xi, eta) = match label {
            FieldLabel::Euler => (crate::crosscap::euler_field(&ctx), euler_lowerable(&ctx)),
            FieldLabel::Family { family: f, j } => (family(&ctx, f, j)?, lowerable(&ctx, f, j)?),
        };
        items.push((label, xi, eta));
    }
    let text = match common.format {
        Format::Json => {
            let values: Vec<Value> = items
                .iter()
                .map(|(_, xi, eta)| {
                    let mut v = xi.to_json(&ctx);
                    if with_lowerable {
                        v["lowerable"] = eta.to_json(&ctx);
                    }
                    v
                })
                .collect();
            if values.len() == 1 {
                emit_json(&values[0])
            } else {
                emit_json(&json!({"k": ctx.k(), "fields": values}))
            }
        }
        Format::Text => {
            let mut s = String::new();
            for (label, xi, eta) in &items {
                field_text(&ctx, &mut s, &label.to_string(), xi);
                if with_lowerable {
                    field_text(&ctx, &mut s, &format!("lowerable of {label}"), eta);
                }
            }
            s
        }
    };
    Ok((text, true))
}

fn lift_reports(ctx: &CrossCapContext) -> Result<Vec<LiftReport>, Failure> {
    Ok(verify_all(ctx)?)
}

fn cmd_verify(common: &Common) -> Outcome {
    let ctx = context(common.k)?;
    let reports = lift_reports(&ctx)?;
    let pass = reports.iter().all(|r| r.ok);
    let text = match common.format {
        Format::Json => emit_json(&json!({"k": ctx.k(), "pass": pass, "fields": reports})),
        Format::Text => {
            let mut s = String::new();
            for r in &reports {
                let _ = writeln!(
                    s,
                    "{} {} residual_terms={}",
                    status(r.ok),
                    r.label,
                    r.residual_norm
                );
            }
            let _ = writeln!(
                s,
                "k={} lifted {}/{}",
                ctx.k(),
                reports.iter().filter(|r| r.ok).count(),
                reports.len()
            );
            s
        }
    };
    Ok((text, pass))
}

fn cmd_image(common: &Common) -> Outcome {
    let ctx = context(common.k)?;
    let eq = image_equation_cached(ctx.k())?;
    let text = match common.format {
        Format::Json => emit_json(&json!({
            "k": ctx.k(),
            "terms": eq.h.num_terms(),
            "h": crate::algebra::poly_to_json(&eq.h),
        })),
        Format::Text => format!("k={} terms={}\nh = {}\n", ctx.k(), eq.h.num_terms(), eq.h),
    };
    Ok((text, true))
}

#[derive(serde::Serialize)]
struct TangencyRow {
    label: String,
    tangent: bool,
    derlog0: bool,
    factor: Option<String>,
}

fn tangency_rows(ctx: &CrossCapContext) -> Result<Vec<TangencyRow>, Failure> {
    let eq = image_equation_cached(ctx.k())?;
    let mut rows = Vec::new();
    for g in generator_set(ctx) {
        let label = g.label.map(|l| l.to_string()).unwrap_or_default();
        let t = tangency_factor(&eq, &g)?;
        let derlog0 = derlog0_check(&eq, &g)?;
        rows.push(TangencyRow {
            label,
            tangent: t.is_tangent(),
            derlog0,
            factor: match t {
                Tangency::Factor(q) => Some(q.render()),
                Tangency::NotTangent(_) => None,
            },
        });
    }
    Ok(rows)
}

/// Family fields annihilate `h_V`; the Euler field scales it by `k^2`.
fn tangency_pass(k: usize, rows: &[TangencyRow]) -> bool {
    let k2 = (k * k).to_string();
    rows.iter().all(|r| {
        if r.label == "xi_e" {
            r.factor.as_deref() == Some(k2.as_str())
        } else {
            r.derlog0
        }
    })
}

fn check_slow(k: i64, limit: i64, slow: bool, what: &str) -> Result<(), Failure> {
    if k >= limit && !slow {
        Err(Failure::Usage(format!(
            "k = {k} exceeds the {what} bound k <= {}; pass --slow to run it",
            limit - 1
        )))
    } else {
        Ok(())
    }
}

fn cmd_tangency(common: &Common, slow: bool) -> Outcome {
    let ctx = context(common.k)?;
    check_slow(common.k, 5, slow, "tangency")?;
    let rows = tangency_rows(&ctx)?;
    let pass = tangency_pass(ctx.k(), &rows);
    let text = match common.format {
        Format::Json => emit_json(&json!({"k": ctx.k(), "pass": pass, "fields": rows})),
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{} tangent={} derlog0={} factor={}",
                    r.label,
                    r.tangent,
                    r.derlog0,
                    r.factor.as_deref().unwrap_or("-")
                );
            }
            let _ = writeln!(s, "{} k={}", status(pass), ctx.k());
            s
        }
    };
    Ok((text, pass))
}

fn cmd_leading_terms(common: &Common) -> Outcome {
    let ctx = context(common.k)?;
    let report = leading_term_table(&ctx)?;
    let pass = report.ok();
    let text = match common.format {
        Format::Json => emit_json(&json!({"pass": pass, "report": report})),
        Format::Text => {
            let mut s = String::new();
            for r in &report.rows {
                let _ = writeln!(
                    s,
                    "{} -> ({}, {}, {}) expected: {}",
                    r.label,
                    r.coeff,
                    r.monomial,
                    r.position,
                    r.expected.as_deref().unwrap_or("not tabulated")
                );
            }
            let _ = writeln!(s, "distinct: {}", report.distinct);
            let _ = writeln!(s, "{} k={}", status(pass), ctx.k());
            s
        }
    };
    Ok((text, pass))
}

fn cmd_membership(common: &Common, max_degree: Option<i64>, slow: bool) -> Outcome {
    let ctx = context(common.k)?;
    check_slow(common.k, 6, slow, "membership")?;
    let bound = max_degree.unwrap_or_else(|| default_degree_bound(&ctx));
    let eq = image_equation_cached(ctx.k())?;
    let report = graded_membership_check(&ctx, &eq, bound)?;
    let pass = report.ok();
    let text = match common.format {
        Format::Json => emit_json(&json!({"pass": pass, "report": report})),
        Format::Text => {
            let mut s = String::new();
            for d in &report.slices {
                let _ = writeln!(
                    s,
                    "delta={} tangent={} span={} {}",
                    d.delta,
                    d.tangent_dim,
                    d.span_dim,
                    status(d.ok)
                );
            }
            let _ = writeln!(s, "{} k={} max_degree={}", status(pass), ctx.k(), bound);
            s
        }
    };
    Ok((text, pass))
}

fn cmd_classify(
    common: &Common,
    coeffs: Option<&std::path::Path>,
    random: Option<usize>,
    seed: u64,
) -> Outcome {
    let ctx = context(common.k)?;
    match (coeffs, random) {
        (Some(path), None) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            let v: Value = serde_json::from_str(&raw)
                .map_err(|e| Failure::Usage(format!("invalid JSON: {e}")))?;
            let h = LinearFunction::from_json(&ctx, &v)?;
            let cert = codim1_certificate(&ctx, &h)?;
            let matrix = linear_part_matrix(&ctx, &h)?;
            let forms = compare_closed_forms(&ctx, &h)?;
            let text = match common.format {
                Format::Json => emit_json(&json!({
                    "k": ctx.k(),
                    "h": h.to_json(),
                    "rank": cert.rank,
                    "certified": cert.certified,
                    "rows": matrix.row_labels,
                    "forms": forms,
                })),
                Format::Text => {
                    let mut s = String::new();
                    let _ = writeln!(s, "h = {}", h.to_poly(&ctx));
                    for f in &forms {
                        let _ = writeln!(s, "{}(h) = {} mod m^2", f.label, f.direct);
                        if !f.agree {
                            let _ = writeln!(s, "  closed form gives {}", f.closed_form);
                        }
                    }
                    let _ = writeln!(s, "rank={} of {}", cert.rank, ctx.codomain_dim());
                    let _ = writeln!(s, "certified={}", cert.certified);
                    s
                }
            };
            Ok((text, true))
        }
        (None, Some(n)) => {
            let report = random_sweep(&ctx, n, seed)?;
            let pass = report.ok();
            let text = match common.format {
                Format::Json => emit_json(&json!({"pass": pass, "report": report})),
                Format::Text => {
                    let mut s = String::new();
                    for f in &report.failures {
                        let _ = writeln!(
                            s,
                            "not certified: trial {} rank {} h={}",
                            f.trial, f.rank, f.h
                        );
                    }
                    let _ = writeln!(
                        s,
                        "{} k={} seed={} certified {}/{}",
                        status(pass),
                        ctx.k(),
                        seed,
                        report.certified,
                        report.trials
                    );
                    s
                }
            };
            Ok((text, pass))
        }
        _ => Err(Failure::Usage(
            "classify needs exactly one of --coeffs or --random".into(),
        )),
    }
}

fn cmd_suite(max_k: i64, slow: bool, seed: u64, format: Format) -> Outcome {
    if max_k < 2 {
        return Err(Error::InvalidK(max_k).into());
    }
    let mut lines: Vec<(String, bool)> = Vec::new();
    for k in 2..=max_k {
        let ctx = context(k)?;
        let reports = lift_reports(&ctx)?;
        let (_, euler_ok) = lift_euler(&ctx)?;
        let ok = euler_ok && reports.iter().all(|r| r.ok);
        lines.push((format!("lift k={k} ({} fields)", reports.len()), ok));
    }
    let tangency_max = if slow { max_k } else { max_k.min(4) };
    for k in 2..=tangency_max {
        let ctx = context(k)?;
        let rows = tangency_rows(&ctx)?;
        lines.push((format!("tangency k={k}"), tangency_pass(ctx.k(), &rows)));
    }
    for k in 3..=max_k {
        let ctx = context(k)?;
        lines.push((
            format!("leading-terms k={k}"),
            leading_term_table(&ctx)?.ok(),
        ));
    }
    for k in 3..=max_k.min(5) {
        let ctx = context(k)?;
        let report = random_sweep(&ctx, 100, seed)?;
        lines.push((
            format!(
                "classify k={k} ({}/{} certified)",
                report.certified, report.trials
            ),
            report.ok(),
        ));
        let family1_ok = (0..10u64).try_fold(true, |acc, t| -> Result<bool, Failure> {
            let h = crate::classify::random_linear_function(
                &ctx,
                &mut crate::classify::trial_rng(seed, t),
            );
            let forms = compare_closed_forms(&ctx, &h)?;
            Ok(acc
                && forms
                    .iter()
                    .filter(|f| f.label.starts_with("xi1_"))
                    .all(|f| f.agree))
        })?;
        lines.push((format!("closed forms family 1 k={k}"), family1_ok));
    }
    let pass = lines.iter().all(|(_, ok)| *ok);
    let text = match format {
        Format::Json => emit_json(&json!({
            "pass": pass,
            "checks": lines.iter().map(|(n, ok)| json!({"check": n, "ok": ok})).collect::<Vec<_>>(),
        })),
        Format::Text => {
            let mut s = String::new();
            for (name, ok) in &lines {
                let _ = writeln!(s, "{} {name}", status(*ok));
            }
            s
        }
    };
    Ok((text, pass))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("liftvf").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn verify_k2() {
        let (code, out, _) = call(&["verify", "--k", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.matches("PASS").count(), 4);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["bogus"]).0, 2);
        assert_eq!(call(&["verify"]).0, 2);
        let (code, _, err) = call(&["verify", "--k", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("at least 2"), "{err}");
        let (code, _, err) = call(&["fields", "--k", "3", "--family", "1", "--j", "3"]);
        assert_eq!(code, 2);
        assert!(err.contains("1 <= j <= 2"), "{err}");
        let (code, _, err) = call(&["tangency", "--k", "5"]);
        assert_eq!(code, 2);
        assert!(err.contains("--slow"), "{err}");
        assert_eq!(call(&["classify", "--k", "3"]).0, 2);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("leading-terms"));
    }
}
