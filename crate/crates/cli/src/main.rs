//! `cube`: stress evaluation, bifurcation thresholds, branch tracing, region
//! scans and the self-check suite for the dead-loaded cube problem, emitting
//! CSV or JSON for plotting.
//!
//! Exit codes: 0 on success, 1 on numerical failure (non-convergence or a
//! failed verification), 2 on usage or parameter errors.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use output::{fmt_f64, num, CsvDoc, JsonDoc};
use rivlin_cube::criteria::{classify_point, region_scan, ScanDomain, ScanMode};
use rivlin_cube::material::{energy_principal, MaterialParams, PrincipalStretches};
use rivlin_cube::solver::{bifurcation_point, trace_branches_with_tol, BranchSide, SolutionRecord};
use rivlin_cube::stress::principal_biot;
use rivlin_cube::verify::{run as run_verify, VerifyConfig, VerifyReport};
use rivlin_cube::Error as CoreError;

#[derive(Parser)]
#[command(
    name = "cube",
    version,
    about = "Biot stress-stretch analysis and dead-load bifurcation of a compressible Neo-Hooke cube"
)]
struct Cli {
    /// Stiffness ratio M = (lambda + 2*mu/3)/mu, must exceed 2/3.
    /// Mutually exclusive with --mu/--lambda.
    #[arg(long, global = true)]
    m: Option<f64>,

    /// Shear modulus (stress units); requires --lambda.
    #[arg(long, global = true)]
    mu: Option<f64>,

    /// Second Lame parameter (stress units); requires --mu.
    #[arg(long, global = true)]
    lambda: Option<f64>,

    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    /// Classification tolerance on eigenvalues (0 means sign-only).
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate stresses, energy, Jacobian determinant, minors and the
    /// point classification at one stretch triple.
    Eval {
        /// Stretch triple as "l1,l2,l3" (all positive).
        #[arg(long)]
        stretches: String,
    },
    /// Report the bifurcation stretch/load and the branch-onset stretch/load.
    Bifurcate,
    /// Trace the radial and non-radial branches over a load range.
    Trace {
        #[arg(long, allow_hyphen_values = true)]
        alpha_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        alpha_max: f64,
        #[arg(long)]
        step: f64,
    },
    /// Classify a grid of stretch points (plane slice or 3D box).
    Regions {
        /// Slice selector; only "two-equal" (the (l1, l1, l2) plane) is defined.
        #[arg(long)]
        slice: Option<String>,
        /// Square slice range "lo,hi" (requires --slice two-equal).
        #[arg(long = "box")]
        box2: Option<String>,
        /// Cubic box range "lo,hi" for a full 3D scan.
        #[arg(long)]
        box3: Option<String>,
        /// Grid resolution per axis.
        #[arg(long, default_value_t = 50)]
        res: usize,
        /// Which classification family the scan is for (all are computed).
        #[arg(long, value_enum, default_value_t = Mode::Monotonicity)]
        mode: Mode,
    },
    /// Run the library self-check suite.
    Verify {
        /// Reduce sample counts (still deterministic).
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Monotonicity,
    Stability,
    JacobianSign,
}

impl Mode {
    fn to_scan(self) -> ScanMode {
        match self {
            Mode::Monotonicity => ScanMode::Monotonicity,
            Mode::Stability => ScanMode::Stability,
            Mode::JacobianSign => ScanMode::JacobianSign,
        }
    }
}

enum CliError {
    Usage(String),
    Numerical(String),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::ParameterDomain(_) => CliError::Usage(e.to_string()),
            other => CliError::Numerical(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn material(cli: &Cli) -> Result<MaterialParams, CliError> {
    match (cli.m, cli.mu, cli.lambda) {
        (Some(m), None, None) => Ok(MaterialParams::from_stiffness_ratio(m)?),
        (None, Some(mu), Some(lambda)) => Ok(MaterialParams::from_lame(mu, lambda)?),
        (None, None, None) => Err(CliError::Usage(
            "provide the material: either --m or both --mu and --lambda".into(),
        )),
        _ => Err(CliError::Usage(
            "provide either --m or both --mu and --lambda, not a mixture".into(),
        )),
    }
}

fn parse_triple(text: &str) -> Result<[f64; 3], CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "expected three comma-separated values, got \"{text}\""
        )));
    }
    let mut out = [0.0; 3];
    for (i, p) in parts.iter().enumerate() {
        out[i] = p
            .trim()
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("could not parse \"{p}\" as a number")))?;
    }
    Ok(out)
}

fn parse_range(text: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(CliError::Usage(format!(
            "expected a range \"lo,hi\", got \"{text}\""
        )));
    }
    let lo = parts[0]
        .trim()
        .parse::<f64>()
        .map_err(|_| CliError::Usage(format!("could not parse \"{}\" as a number", parts[0])))?;
    let hi = parts[1]
        .trim()
        .parse::<f64>()
        .map_err(|_| CliError::Usage(format!("could not parse \"{}\" as a number", parts[1])))?;
    Ok((lo, hi))
}

fn emit(cli: &Cli, content: String) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Numerical(format!("could not write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn material_meta_csv(doc: &mut CsvDoc, cli: &Cli, params: &MaterialParams) {
    doc.comment("m", fmt_f64(params.stiffness_ratio()));
    if cli.mu.is_some() {
        doc.comment("mu", fmt_f64(params.mu()));
        doc.comment("lambda", fmt_f64(params.lambda()));
    }
    doc.comment("seed", cli.seed.to_string());
}

fn material_meta_json(doc: &mut JsonDoc, cli: &Cli, params: &MaterialParams) {
    doc.meta("m", num(params.stiffness_ratio()));
    if cli.mu.is_some() {
        doc.meta("mu", num(params.mu()));
        doc.meta("lambda", num(params.lambda()));
    }
    doc.meta("seed", Value::from(cli.seed));
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let params = material(cli)?;
    if !(cli.tol.is_finite() && cli.tol >= 0.0) {
        return Err(CliError::Usage(format!(
            "--tol must be nonnegative (got {})",
            cli.tol
        )));
    }
    match &cli.command {
        Command::Eval { stretches } => cmd_eval(cli, &params, stretches),
        Command::Bifurcate => cmd_bifurcate(cli, &params),
        Command::Trace {
            alpha_min,
            alpha_max,
            step,
        } => cmd_trace(cli, &params, *alpha_min, *alpha_max, *step),
        Command::Regions {
            slice,
            box2,
            box3,
            res,
            mode,
        } => cmd_regions(
            cli,
            &params,
            slice.as_deref(),
            box2.as_deref(),
            box3.as_deref(),
            *res,
            *mode,
        ),
        Command::Verify { quick } => cmd_verify(cli, &params, *quick),
    }
}

fn cmd_eval(cli: &Cli, params: &MaterialParams, stretches: &str) -> Result<(), CliError> {
    let triple = parse_triple(stretches)?;
    let s = PrincipalStretches::from_array(triple)?;
    let m = params.stiffness_ratio();
    let t = principal_biot(m, &s);
    let g = energy_principal(m, &s);
    let point = classify_point(m, &s, cli.tol);
    let mu = params.mu();

    let content = match cli.format {
        Format::Csv => {
            let mut doc = CsvDoc::new();
            material_meta_csv(&mut doc, cli, params);
            doc.comment("tol", fmt_f64(cli.tol));
            doc.header(&[
                "l1",
                "l2",
                "l3",
                "t1",
                "t2",
                "t3",
                "energy",
                "det_DT",
                "m1",
                "m2",
                "m3",
                "monotonicity",
                "stable",
            ]);
            doc.row(&[
                fmt_f64(s.l1()),
                fmt_f64(s.l2()),
                fmt_f64(s.l3()),
                fmt_f64(t.t1),
                fmt_f64(t.t2),
                fmt_f64(t.t3),
                fmt_f64(g),
                fmt_f64(point.jacobian_det),
                fmt_f64(point.minors[0]),
                fmt_f64(point.minors[1]),
                fmt_f64(point.minors[2]),
                point.monotonicity.as_str().into(),
                (point.energetically_stable as u8).to_string(),
            ]);
            doc.finish()
        }
        Format::Json => {
            let mut doc = JsonDoc::new("eval");
            material_meta_json(&mut doc, cli, params);
            doc.meta("tol", num(cli.tol));
            let mut record = serde_json::Map::new();
            record.insert("l1".into(), num(s.l1()));
            record.insert("l2".into(), num(s.l2()));
            record.insert("l3".into(), num(s.l3()));
            record.insert("t1".into(), num(t.t1));
            record.insert("t2".into(), num(t.t2));
            record.insert("t3".into(), num(t.t3));
            record.insert("energy".into(), num(g));
            record.insert("det_DT".into(), num(point.jacobian_det));
            record.insert("m1".into(), num(point.minors[0]));
            record.insert("m2".into(), num(point.minors[1]));
            record.insert("m3".into(), num(point.minors[2]));
            record.insert(
                "monotonicity".into(),
                Value::String(point.monotonicity.as_str().into()),
            );
            record.insert("stable".into(), Value::Bool(point.energetically_stable));
            if cli.mu.is_some() {
                // physical (unnormalized) stresses and energy
                record.insert("t1_physical".into(), num(mu * t.t1));
                record.insert("t2_physical".into(), num(mu * t.t2));
                record.insert("t3_physical".into(), num(mu * t.t3));
                record.insert("energy_physical".into(), num(mu * g));
            }
            doc.push(Value::Object(record));
            doc.finish()
        }
    };
    emit(cli, content)
}

fn cmd_bifurcate(cli: &Cli, params: &MaterialParams) -> Result<(), CliError> {
    let report = bifurcation_point(params.stiffness_ratio())?;
    let content = match cli.format {
        Format::Csv => {
            let mut doc = CsvDoc::new();
            material_meta_csv(&mut doc, cli, params);
            doc.header(&[
                "lambda_star",
                "alpha_star",
                "lambda_flat",
                "alpha_flat",
                "sextic_residual",
                "crossing_residual",
                "flat_slope",
            ]);
            doc.row(&[
                fmt_f64(report.lambda_star),
                fmt_f64(report.alpha_star),
                fmt_f64(report.lambda_flat),
                fmt_f64(report.alpha_flat),
                fmt_f64(report.sextic_residual),
                fmt_f64(report.crossing_residual),
                fmt_f64(report.flat_slope),
            ]);
            doc.finish()
        }
        Format::Json => {
            let mut doc = JsonDoc::new("bifurcate");
            material_meta_json(&mut doc, cli, params);
            doc.push(serde_json::json!({
                "lambda_star": report.lambda_star,
                "alpha_star": report.alpha_star,
                "lambda_flat": report.lambda_flat,
                "alpha_flat": report.alpha_flat,
                "sextic_residual": report.sextic_residual,
                "crossing_residual": report.crossing_residual,
                "flat_slope": report.flat_slope,
            }));
            doc.finish()
        }
    };
    emit(cli, content)
}

fn branch_label(side: BranchSide) -> &'static str {
    match side {
        BranchSide::TowardBifurcation => "nonradial_a",
        BranchSide::AwayFromBifurcation => "nonradial_b",
    }
}

fn cmd_trace(
    cli: &Cli,
    params: &MaterialParams,
    alpha_min: f64,
    alpha_max: f64,
    step: f64,
) -> Result<(), CliError> {
    let trace = trace_branches_with_tol(
        params.stiffness_ratio(),
        alpha_min,
        alpha_max,
        step,
        cli.tol,
    )?;
    let content = match cli.format {
        Format::Csv => {
            let mut doc = CsvDoc::new();
            material_meta_csv(&mut doc, cli, params);
            doc.comment("alpha_min", fmt_f64(alpha_min));
            doc.comment("alpha_max", fmt_f64(alpha_max));
            doc.comment("step", fmt_f64(step));
            doc.comment("tol", fmt_f64(cli.tol));
            doc.header(&[
                "alpha",
                "branch",
                "l1",
                "l2",
                "l3",
                "residual",
                "monotonicity",
                "stable",
                "total_energy",
            ]);
            for rec in &trace.records {
                let mut rows: Vec<(&str, &SolutionRecord)> = vec![("radial", &rec.radial)];
                for (side, sol) in &rec.nonradial {
                    rows.push((branch_label(*side), sol));
                }
                for (label, sol) in rows {
                    doc.row(&[
                        fmt_f64(rec.alpha),
                        label.into(),
                        fmt_f64(sol.stretches.l1()),
                        fmt_f64(sol.stretches.l2()),
                        fmt_f64(sol.stretches.l3()),
                        fmt_f64(sol.residual),
                        sol.monotonicity.as_str().into(),
                        (sol.energetically_stable as u8).to_string(),
                        fmt_f64(sol.total_energy),
                    ]);
                }
            }
            doc.finish()
        }
        Format::Json => {
            let mut doc = JsonDoc::new("trace");
            material_meta_json(&mut doc, cli, params);
            doc.meta("alpha_min", num(alpha_min));
            doc.meta("alpha_max", num(alpha_max));
            doc.meta("step", num(step));
            doc.meta("tol", num(cli.tol));
            for rec in &trace.records {
                let mut rows: Vec<(&str, &SolutionRecord)> = vec![("radial", &rec.radial)];
                for (side, sol) in &rec.nonradial {
                    rows.push((branch_label(*side), sol));
                }
                for (label, sol) in rows {
                    doc.push(serde_json::json!({
                        "alpha": rec.alpha,
                        "branch": label,
                        "l1": sol.stretches.l1(),
                        "l2": sol.stretches.l2(),
                        "l3": sol.stretches.l3(),
                        "residual": sol.residual,
                        "monotonicity": sol.monotonicity.as_str(),
                        "stable": sol.energetically_stable,
                        "total_energy": sol.total_energy,
                    }));
                }
            }
            doc.finish()
        }
    };
    emit(cli, content)
}

fn cmd_regions(
    cli: &Cli,
    params: &MaterialParams,
    slice: Option<&str>,
    box2: Option<&str>,
    box3: Option<&str>,
    res: usize,
    mode: Mode,
) -> Result<(), CliError> {
    let domain = match (slice, box2, box3) {
        (Some(kind), Some(range), None) => {
            if kind != "two-equal" {
                return Err(CliError::Usage(format!(
                    "unknown slice \"{kind}\"; the only defined slice is \"two-equal\""
                )));
            }
            let r = parse_range(range)?;
            ScanDomain::TwoEqualSlice {
                l1: r,
                l2: r,
                resolution: (res, res),
            }
        }
        (None, None, Some(range)) => {
            let r = parse_range(range)?;
            ScanDomain::Box3 {
                l1: r,
                l2: r,
                l3: r,
                resolution: (res, res, res),
            }
        }
        _ => {
            return Err(CliError::Usage(
                "provide either --slice two-equal --box lo,hi or --box3 lo,hi".into(),
            ));
        }
    };
    let scan = region_scan(params.stiffness_ratio(), &domain, mode.to_scan(), cli.tol)?;

    let (box_text, kind_text) = match &domain {
        ScanDomain::TwoEqualSlice { l1, .. } => (
            format!("{},{}", fmt_f64(l1.0), fmt_f64(l1.1)),
            "two-equal-slice",
        ),
        ScanDomain::Box3 { l1, .. } => (format!("{},{}", fmt_f64(l1.0), fmt_f64(l1.1)), "box3"),
    };

    let content = match cli.format {
        Format::Csv => {
            let mut doc = CsvDoc::new();
            material_meta_csv(&mut doc, cli, params);
            doc.comment("domain", kind_text);
            doc.comment("box", &box_text);
            doc.comment("res", res.to_string());
            doc.comment("mode", scan.mode.as_str());
            doc.comment("tol", fmt_f64(scan.tolerance));
            doc.header(&[
                "l1",
                "l2",
                "l3",
                "det_DT",
                "m1",
                "m2",
                "m3",
                "monotonicity",
                "stable",
            ]);
            for sample in &scan.samples {
                let p = &sample.point;
                doc.row(&[
                    fmt_f64(sample.stretches.l1()),
                    fmt_f64(sample.stretches.l2()),
                    fmt_f64(sample.stretches.l3()),
                    fmt_f64(p.jacobian_det),
                    fmt_f64(p.minors[0]),
                    fmt_f64(p.minors[1]),
                    fmt_f64(p.minors[2]),
                    p.monotonicity.as_str().into(),
                    (p.energetically_stable as u8).to_string(),
                ]);
            }
            doc.finish()
        }
        Format::Json => {
            let mut doc = JsonDoc::new("regions");
            material_meta_json(&mut doc, cli, params);
            doc.meta("domain", Value::String(kind_text.into()));
            doc.meta("box", Value::String(box_text));
            doc.meta("res", Value::from(res));
            doc.meta("mode", Value::String(scan.mode.as_str().into()));
            doc.meta("tol", num(scan.tolerance));
            for sample in &scan.samples {
                let p = &sample.point;
                doc.push(serde_json::json!({
                    "l1": sample.stretches.l1(),
                    "l2": sample.stretches.l2(),
                    "l3": sample.stretches.l3(),
                    "det_DT": p.jacobian_det,
                    "m1": p.minors[0],
                    "m2": p.minors[1],
                    "m3": p.minors[2],
                    "monotonicity": p.monotonicity.as_str(),
                    "stable": p.energetically_stable,
                }));
            }
            doc.finish()
        }
    };
    emit(cli, content)
}

fn cmd_verify(cli: &Cli, params: &MaterialParams, quick: bool) -> Result<(), CliError> {
    let config = VerifyConfig {
        m: params.stiffness_ratio(),
        seed: cli.seed,
        quick,
        tol: cli.tol,
    };
    let report = run_verify(&config)?;

    let document = match cli.format {
        Format::Csv => {
            let mut doc = CsvDoc::new();
            material_meta_csv(&mut doc, cli, params);
            doc.comment("quick", if quick { "1" } else { "0" });
            doc.comment("tol", fmt_f64(cli.tol));
            doc.header(&["check", "passed", "detail"]);
            for c in &report.checks {
                doc.row(&[
                    c.name.into(),
                    (c.passed as u8).to_string(),
                    format!("\"{}\"", c.detail.replace('"', "'")),
                ]);
            }
            doc.finish()
        }
        Format::Json => {
            let mut doc = JsonDoc::new("verify");
            material_meta_json(&mut doc, cli, params);
            doc.meta("quick", Value::Bool(quick));
            doc.meta("tol", num(cli.tol));
            doc.meta("all_passed", Value::Bool(report.all_passed()));
            for c in &report.checks {
                doc.push(serde_json::json!({
                    "check": c.name,
                    "passed": c.passed,
                    "detail": c.detail,
                }));
            }
            doc.finish()
        }
    };

    match (&cli.out, cli.format) {
        // document to the file, human-readable lines to stdout
        (Some(_), _) => {
            print_human_verify(&report);
            emit(cli, document)?;
        }
        // machine-readable document explicitly requested on stdout
        (None, Format::Json) => print!("{document}"),
        // default: the human-readable report
        (None, Format::Csv) => print_human_verify(&report),
    }

    if report.all_passed() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!(
            "verification failed: {}",
            report.failed_names().join(", ")
        )))
    }
}

fn print_human_verify(report: &VerifyReport) {
    for c in &report.checks {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!("{tag} {} - {}", c.name, c.detail);
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    println!(
        "verify: {} checks, {} failed (m = {}, seed = {}, quick = {})",
        report.checks.len(),
        failed,
        fmt_f64(report.m),
        report.seed,
        report.quick
    );
}
