//! `qtheta`: evaluate theta and q-trigonometric functions, verify identities
//! numerically, and emit exact certificates.

use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qtheta::identity::{
    formal_certificate, numeric_verify, reports_to_csv, reports_to_json, run_suite_for, IdentityId,
    IdentityReport, Mode, SamplePlan,
};
use qtheta::{
    make_param, qtrig_product, qtrig_theta, theta_eval, theta_eval_reduced, Error, Method,
    QTrigKind, ThetaKind, TruncationPolicy,
};

#[derive(Parser)]
#[command(
    name = "qtheta",
    version,
    about = "Jacobi theta functions and q-trigonometric identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate theta1..theta4 or a q-trigonometric function at one point.
    Eval(EvalArgs),
    /// Check one identity on random samples.
    Verify(VerifyArgs),
    /// Certify one identity exactly and write the coefficient tables.
    Certify(CertifyArgs),
    /// Run every identity in every applicable mode.
    Suite(SuiteArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Route {
    Series,
    Product,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct EvalArgs {
    /// theta1..theta4, sin_q, cos_q, tan_q, cot_q, ssn_q or ccs_q.
    #[arg(long = "fn")]
    function: String,
    /// Argument as "re,im"; either part may be written pi*<number>.
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    #[arg(long, allow_hyphen_values = true)]
    tau: String,
    /// Series (theta quotients for q-trigonometric functions) or products.
    #[arg(long, value_enum, default_value = "series")]
    method: Route,
    /// Bring z into the fundamental box before summing a theta series.
    #[arg(long)]
    reduce: bool,
}

#[derive(Args)]
struct PlanArgs {
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Samples per tau.
    #[arg(long, default_value_t = 500)]
    count: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Replace the default tau set; repeatable.
    #[arg(long, allow_hyphen_values = true)]
    tau: Vec<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    id: String,
    #[command(flatten)]
    plan: PlanArgs,
    /// Pin x instead of sampling it.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Pin y instead of sampling it.
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    id: String,
    /// Highest power of q compared; defaults to 12 (20 for duplications).
    #[arg(long)]
    order: Option<i64>,
    /// Write the certificate here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SuiteArgs {
    #[command(flatten)]
    plan: PlanArgs,
    /// Certification order for every formal identity.
    #[arg(long)]
    order: Option<i64>,
    /// Leave an identity out; repeatable.
    #[arg(long)]
    exclude: Vec<String>,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Convergence(_) | Error::Pole(_) => 3,
        Error::UnsupportedFormal(_) => 4,
        _ => 2,
    }
}

fn parse_real(s: &str) -> Result<f64, Error> {
    let s = s.trim();
    let bad = || Error::Domain(format!("cannot parse {s:?} as a number"));
    if let Some(rest) = s.strip_prefix("pi*") {
        return rest
            .trim()
            .parse::<f64>()
            .map(|v| PI * v)
            .map_err(|_| bad());
    }
    match s {
        "pi" => Ok(PI),
        "-pi" => Ok(-PI),
        _ => s.parse::<f64>().map_err(|_| bad()),
    }
}

/// `"re,im"` or a bare real part.
fn parse_complex(s: &str) -> Result<Complex64, Error> {
    let v = match s.split_once(',') {
        Some((re, im)) => Complex64::new(parse_real(re)?, parse_real(im)?),
        None => Complex64::new(parse_real(s)?, 0.0),
    };
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("{s:?} is not finite")))
    }
}

fn format_value(v: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 0.5e-15 { 0.0 } else { x };
    let (re, im) = (clean(v.re), clean(v.im));
    if im == 0.0 {
        format!("{re:.15}")
    } else {
        format!("{re:.15},{im:.15}")
    }
}

fn eval(a: &EvalArgs) -> Result<Complex64, Error> {
    let z = parse_complex(&a.z)?;
    let p = make_param(parse_complex(&a.tau)?)?;
    let policy = TruncationPolicy::default();
    if let Some(idx) = a.function.strip_prefix("theta") {
        let kind = idx
            .parse::<u8>()
            .map_err(|_| Error::Domain(format!("unknown function {:?}", a.function)))?;
        let kind = ThetaKind::from_index(kind)?;
        return match (a.method, a.reduce) {
            (Route::Series, true) => theta_eval_reduced(kind, z, &p, &policy),
            (Route::Series, false) => theta_eval(kind, z, &p, &policy, Method::Series),
            (Route::Product, _) => theta_eval(kind, z, &p, &policy, Method::Product),
        };
    }
    let kind: QTrigKind = a.function.parse()?;
    match a.method {
        Route::Series => qtrig_theta(kind, z, &p, &policy),
        Route::Product => qtrig_product(kind, z / PI, p.q(), &policy),
    }
}

fn plan_from(a: &PlanArgs) -> Result<SamplePlan, Error> {
    let mut plan = SamplePlan {
        seed: a.seed,
        count: a.count,
        ..SamplePlan::default()
    };
    if !a.tau.is_empty() {
        plan.tau_set = a
            .tau
            .iter()
            .map(|t| parse_complex(t))
            .collect::<Result<_, _>>()?;
    }
    if !(a.tol.is_finite() && a.tol >= 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be a non-negative number, got {}",
            a.tol
        )));
    }
    plan.validate()?;
    Ok(plan)
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(reports: &[IdentityReport], format: Format) -> Result<String, Error> {
    match format {
        Format::Json => reports_to_json(reports).map(|s| s + "\n"),
        Format::Csv => reports_to_csv(reports),
        Format::Text => Ok(reports.iter().map(text_row).collect()),
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Formal => "formal",
        Mode::Numeric => "numeric",
    }
}

fn text_row(r: &IdentityReport) -> String {
    let measure = match (r.certified_order, r.max_abs_residual) {
        (Some(o), _) => format!("order {o}"),
        (None, Some(m)) => format!("max residual {m:.3e}"),
        (None, None) => "-".to_string(),
    };
    let status = if r.passed() { "pass" } else { "fail" };
    format!(
        "{:<24} {:<8} {status:<5} samples {:<6} {measure} failures {}\n",
        r.id.to_string(),
        mode_name(r.mode),
        r.samples,
        r.failure_count
    )
}

fn summarize(reports: &[IdentityReport]) {
    for r in reports.iter().filter(|r| !r.passed()) {
        let why = r
            .failures
            .first()
            .map(|f| {
                f.error
                    .clone()
                    .unwrap_or_else(|| format!("residual {:?} at {}", f.residual, f.inputs))
            })
            .or_else(|| {
                r.mismatch
                    .as_ref()
                    .map(|m| format!("mismatch at quarter grade {}", m.quarter_grade))
            })
            .unwrap_or_default();
        eprintln!("FAIL {} ({}): {why}", r.id, mode_name(r.mode));
    }
}

fn verify(a: &VerifyArgs) -> Result<bool, Error> {
    let id: IdentityId = a.id.parse()?;
    let mut plan = plan_from(&a.plan)?;
    plan.pin_x = a.x.as_deref().map(parse_complex).transpose()?;
    plan.pin_y = a.y.as_deref().map(parse_complex).transpose()?;
    let r = numeric_verify(id, &plan, a.plan.tol, &TruncationPolicy::default())?;
    let reports = [r];
    write_out(&a.plan.output, &render(&reports, a.plan.format)?)?;
    summarize(&reports);
    Ok(reports[0].passed())
}

fn certify(a: &CertifyArgs) -> Result<bool, Error> {
    let id: IdentityId = a.id.parse()?;
    let (report, cert) = formal_certificate(id, a.order.unwrap_or(id.default_order()))?;
    write_out(&a.output, &cert.to_text())?;
    summarize(std::slice::from_ref(&report));
    Ok(report.passed())
}

fn suite(a: &SuiteArgs) -> Result<bool, Error> {
    let plan = plan_from(&a.plan)?;
    let excluded: Vec<IdentityId> = a
        .exclude
        .iter()
        .map(|s| s.parse())
        .collect::<Result<_, _>>()?;
    let ids: Vec<IdentityId> = IdentityId::all()
        .into_iter()
        .filter(|i| !excluded.contains(i))
        .collect();
    let reports = run_suite_for(&ids, &plan, a.plan.tol, a.order)?;
    write_out(&a.plan.output, &render(&reports, a.plan.format)?)?;
    summarize(&reports);
    Ok(reports.iter().all(IdentityReport::passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Eval(a) => eval(a).map(|v| {
            println!("{}", format_value(v));
            true
        }),
        Command::Verify(a) => verify(a),
        Command::Certify(a) => certify(a),
        Command::Suite(a) => suite(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
