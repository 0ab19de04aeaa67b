//! Command-line front end for the `uniopt` library.
//!
//! [`run`] is the whole program; `main` only wires it to the process streams.

mod args;
mod error;
pub mod format;
pub mod plot;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;
use uniopt::critical::{CriticalKind, CriticalPoint, Direction, TestUsed};
use uniopt::{
    CinemaModel, CriticalOptions, Interval, Method, MinimizeResult, PipeModel, ScalarFunction, SolveOptions,
};

use args::{AnalyzeArgs, CinemaArgs, Cli, Command, MarkArg, MethodArg, ModelArg, ModelCommand, PipeArgs, PlotArgs, SolveArgs, SolverFlags};
pub use error::CliError;
use format::sig6;
use plot::{Marker, SvgOptions};
use report::{CinemaRecord, MarkerRecord, PipeRecord, PlotRecord, PointRecord, RunReport, SegmentRecord, SolveResult};

const DEG: f64 = std::f64::consts::PI / 180.0;

struct Outcome {
    report: RunReport,
    text: String,
    json: bool,
    exit: i32,
}

/// Runs one invocation. `argv[0]` is the program name. Returns the exit code:
/// 0 on success, 1 for usage or parse errors, 2 when the solver fails.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let rendered = e.render().to_string();
                    let line = rendered.lines().find(|l| !l.trim().is_empty()).unwrap_or("error: invalid arguments");
                    let _ = writeln!(err, "{}", line.trim());
                    1
                }
            };
        }
    };
    match execute(cli) {
        Ok(outcome) => {
            let emitted = if outcome.json { outcome.report.to_json() } else { outcome.text };
            let _ = out.write_all(emitted.as_bytes());
            if outcome.exit != 0 {
                for w in &outcome.report.warnings {
                    let _ = writeln!(err, "error: {w}");
                }
            }
            outcome.exit
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<Outcome, CliError> {
    let start = Instant::now();
    let (mut outcome, timing) = match cli.command {
        Command::Minimize(a) => {
            let t = a.output.timing;
            (solve("minimize", a)?, t)
        }
        Command::Maximize(a) => {
            let t = a.output.timing;
            (solve("maximize", a)?, t)
        }
        Command::CriticalPoints(a) => {
            let t = a.output.timing;
            (critical_points(a)?, t)
        }
        Command::Monotonic(a) => {
            let t = a.output.timing;
            (monotonic(a)?, t)
        }
        Command::Model { model: ModelCommand::Pipe(a) } => {
            let t = a.output.timing;
            (pipe(a)?, t)
        }
        Command::Model { model: ModelCommand::Cinema(a) } => {
            let t = a.output.timing;
            (cinema(a)?, t)
        }
        Command::Plot(a) => {
            let t = a.output.timing;
            (plot_cmd(a)?, t)
        }
    };
    if timing {
        let ms = start.elapsed().as_secs_f64() * 1e3;
        outcome.report.elapsed_ms = ms;
        outcome.text.push_str(&format!("elapsed: {} ms\n", sig6(ms)));
    }
    Ok(outcome)
}

fn parse_function(text: &str) -> Result<ScalarFunction<f64>, CliError> {
    Ok(ScalarFunction::from(uniopt::parse::<f64>(text)?))
}

fn interval(lo: f64, hi: f64, degrees: bool) -> Result<Interval<f64>, CliError> {
    let scale = if degrees { DEG } else { 1.0 };
    Ok(Interval::new(lo * scale, hi * scale)?)
}

fn from_rad(x: f64, degrees: bool) -> f64 {
    if degrees {
        x / DEG
    } else {
        x
    }
}

fn solve_options(flags: &SolverFlags) -> Result<SolveOptions<f64>, CliError> {
    let method = match flags.method {
        MethodArg::Brent => Method::Brent,
        MethodArg::Golden => Method::Golden,
    };
    let opts = SolveOptions::default()
        .with_tolerance(flags.tol)
        .with_max_iterations(flags.max_iter)
        .with_method(method);
    opts.validate()?;
    Ok(opts)
}

fn solver_inputs(flags: &SolverFlags) -> serde_json::Value {
    json!({ "tol": flags.tol, "max_iter": flags.max_iter, "method": flags.method.name() })
}

fn not_converged(r: &MinimizeResult<f64>) -> Option<String> {
    (!r.converged).then(|| {
        format!(
            "MaxIterations: stopped after {} iterations with bracket width {}",
            r.iterations,
            sig6(r.final_bracket_width)
        )
    })
}

fn exit_for(warning: &Option<String>) -> i32 {
    if warning.is_some() {
        2
    } else {
        0
    }
}

fn solve(command: &str, a: SolveArgs) -> Result<Outcome, CliError> {
    let f = parse_function(&a.expression)?;
    let iv = interval(a.lo, a.hi, a.degrees)?;
    let opts = solve_options(&a.solver)?;
    let r = if command == "maximize" {
        uniopt::maximize_bounded(&f, iv, &opts)?
    } else {
        uniopt::minimize_bounded(&f, iv, &opts)?
    };
    let x = from_rad(r.x_min, a.degrees);
    let result = SolveResult {
        x,
        f: r.f_min,
        iterations: r.iterations,
        evaluations: r.function_evaluations,
        converged: r.converged,
        final_bracket_width: from_rad(r.final_bracket_width, a.degrees),
    };
    let warning = not_converged(&r);
    let mut inputs = json!({ "expression": a.expression, "lo": a.lo, "hi": a.hi, "degrees": a.degrees });
    merge(&mut inputs, solver_inputs(&a.solver));
    let unit = if a.degrees { " deg" } else { "" };
    let mut text = format!(
        "x = {}{unit}\nf(x) = {}\n{} iterations, {} evaluations{}\n",
        sig6(x),
        sig6(r.f_min),
        r.iterations,
        r.function_evaluations,
        if r.converged { "" } else { " (not converged)" }
    );
    if let Some(w) = &warning {
        text.push_str(&format!("warning: {w}\n"));
    }
    Ok(Outcome {
        exit: exit_for(&warning),
        report: RunReport {
            command: command.to_string(),
            inputs,
            result: serde_json::to_value(result).expect("serializable"),
            warnings: warning.into_iter().collect(),
            elapsed_ms: 0.0,
        },
        text,
        json: a.output.json,
    })
}

fn merge(target: &mut serde_json::Value, extra: serde_json::Value) {
    if let (Some(t), serde_json::Value::Object(e)) = (target.as_object_mut(), extra) {
        t.extend(e);
    }
}

fn kind_name(kind: CriticalKind) -> &'static str {
    match kind {
        CriticalKind::LocalMin => "LocalMin",
        CriticalKind::LocalMax => "LocalMax",
        CriticalKind::NotExtremum => "NotExtremum",
        CriticalKind::Inconclusive => "Inconclusive",
    }
}

fn test_name(test: TestUsed) -> &'static str {
    match test {
        TestUsed::FirstDerivative => "FirstDerivative",
        TestUsed::SecondDerivative => "SecondDerivative",
    }
}

fn direction_name(d: Direction) -> &'static str {
    match d {
        Direction::Increasing => "increasing",
        Direction::Decreasing => "decreasing",
        Direction::Undetermined => "undetermined",
    }
}

fn point_records(points: &[CriticalPoint<f64>], degrees: bool) -> Vec<PointRecord> {
    points
        .iter()
        .map(|p| PointRecord {
            x: from_rad(p.x, degrees),
            f: p.f_value,
            kind: kind_name(p.kind).to_string(),
            test: test_name(p.test_used).to_string(),
            derivative_residual: p.derivative_residual,
        })
        .collect()
}

fn point_lines(points: &[PointRecord]) -> String {
    if points.is_empty() {
        return "no critical points\n".to_string();
    }
    points
        .iter()
        .map(|p| format!("x = {}  f = {}  {} ({})\n", sig6(p.x), sig6(p.f), p.kind, p.test))
        .collect()
}

type Analysis = (ScalarFunction<f64>, Interval<f64>, CriticalOptions<f64>);

fn analysis_setup(a: &AnalyzeArgs) -> Result<Analysis, CliError> {
    let f = parse_function(&a.expression)?;
    let iv = interval(a.lo, a.hi, a.degrees)?;
    if a.grid < 2 {
        return Err(CliError::Usage(format!("--grid must be at least 2, got {}", a.grid)));
    }
    Ok((f, iv, CriticalOptions::default().with_grid(a.grid)))
}

fn analysis_inputs(a: &AnalyzeArgs) -> serde_json::Value {
    json!({ "expression": a.expression, "lo": a.lo, "hi": a.hi, "grid": a.grid, "degrees": a.degrees })
}

fn warning_lines(warnings: &[String]) -> String {
    warnings.iter().map(|w| format!("warning: {w}\n")).collect()
}

fn critical_points(a: AnalyzeArgs) -> Result<Outcome, CliError> {
    let (f, iv, opts) = analysis_setup(&a)?;
    let report = uniopt::find_critical_points(&f, iv, &opts)?;
    let points = point_records(&report.points, a.degrees);
    let text = point_lines(&points) + &warning_lines(&report.warnings);
    Ok(Outcome {
        exit: 0,
        report: RunReport {
            command: "critical-points".into(),
            inputs: analysis_inputs(&a),
            result: json!({ "points": points }),
            warnings: report.warnings,
            elapsed_ms: 0.0,
        },
        text,
        json: a.output.json,
    })
}

fn monotonic(a: AnalyzeArgs) -> Result<Outcome, CliError> {
    let (f, iv, opts) = analysis_setup(&a)?;
    let report = uniopt::monotonic_intervals(&f, iv, &opts)?;
    let segments: Vec<SegmentRecord> = report
        .segments
        .iter()
        .map(|s| SegmentRecord {
            lo: from_rad(s.interval.lo(), a.degrees),
            hi: from_rad(s.interval.hi(), a.degrees),
            direction: direction_name(s.direction).to_string(),
        })
        .collect();
    let points = point_records(&report.critical_points, a.degrees);
    let mut text: String = segments
        .iter()
        .map(|s| format!("[{}, {}]  {}\n", sig6(s.lo), sig6(s.hi), s.direction))
        .collect();
    text.push_str(&warning_lines(&report.warnings));
    Ok(Outcome {
        exit: 0,
        report: RunReport {
            command: "monotonic".into(),
            inputs: analysis_inputs(&a),
            result: json!({ "segments": segments, "critical_points": points }),
            warnings: report.warnings,
            elapsed_ms: 0.0,
        },
        text,
        json: a.output.json,
    })
}

fn pipe(a: PipeArgs) -> Result<Outcome, CliError> {
    let model = PipeModel::new(a.a, a.b)?;
    let opts = solve_options(&a.solver)?;
    let sol = model.max_length(&opts)?;
    let (alpha_cf, length_cf) = model.closed_form();
    let warning = not_converged(&sol.solve);
    let record = PipeRecord {
        alpha: sol.alpha,
        alpha_deg: sol.alpha / DEG,
        length: sol.length,
        closed_form_alpha: alpha_cf,
        closed_form_length: length_cf,
        iterations: sol.solve.iterations,
        evaluations: sol.solve.function_evaluations,
        converged: sol.solve.converged,
    };
    let mut text = format!(
        "alpha* = {:.6} rad ({:.3} deg), L* = {:.6}\nclosed form: alpha* = {:.6} rad, L* = {:.6}\n",
        record.alpha, record.alpha_deg, record.length, alpha_cf, length_cf
    );
    if let Some(w) = &warning {
        text.push_str(&format!("warning: {w}\n"));
    }
    let mut inputs = json!({ "a": a.a, "b": a.b });
    merge(&mut inputs, solver_inputs(&a.solver));
    Ok(Outcome {
        exit: exit_for(&warning),
        report: RunReport {
            command: "model pipe".into(),
            inputs,
            result: serde_json::to_value(record).expect("serializable"),
            warnings: warning.into_iter().collect(),
            elapsed_ms: 0.0,
        },
        text,
        json: a.output.json,
    })
}

fn cinema(a: CinemaArgs) -> Result<Outcome, CliError> {
    let model = CinemaModel::new(a.top, a.bottom)?;
    let lo = a.lo.unwrap_or(1e-6 * a.top);
    let hi = a.hi.unwrap_or(100.0 * a.top);
    let search = Interval::new(lo, hi)?;
    let opts = solve_options(&a.solver)?;
    let sol = model.best_distance(search, &opts)?;
    let (x_cf, theta_cf) = model.closed_form();
    let mut warnings = sol.warnings.clone();
    let failure = not_converged(&sol.solve);
    let exit = exit_for(&failure);
    warnings.extend(failure);
    let record = CinemaRecord {
        distance: sol.distance,
        angle: sol.angle,
        angle_deg: sol.angle / DEG,
        closed_form_distance: x_cf,
        closed_form_angle: theta_cf,
        iterations: sol.solve.iterations,
        evaluations: sol.solve.function_evaluations,
        converged: sol.solve.converged,
    };
    let mut text = format!(
        "x* = {:.6}, theta* = {:.6} rad ({:.3} deg)\nclosed form: x* = {:.6}, theta* = {:.6} rad\n",
        record.distance, record.angle, record.angle_deg, x_cf, theta_cf
    );
    text.push_str(&warning_lines(&warnings));
    let mut inputs = json!({ "top": a.top, "bottom": a.bottom, "lo": lo, "hi": hi });
    merge(&mut inputs, solver_inputs(&a.solver));
    Ok(Outcome {
        exit,
        report: RunReport {
            command: "model cinema".into(),
            inputs,
            result: serde_json::to_value(record).expect("serializable"),
            warnings,
            elapsed_ms: 0.0,
        },
        text,
        json: a.output.json,
    })
}

enum PlotFormat {
    Csv,
    Svg,
}

fn plot_cmd(a: PlotArgs) -> Result<Outcome, CliError> {
    let (f, title, mut inputs) = match (&a.expression, a.model) {
        (Some(text), None) => (parse_function(text)?, text.clone(), json!({ "expression": text })),
        (None, Some(ModelArg::Pipe)) => (
            ScalarFunction::from(PipeModel::new(a.a, a.b)?),
            format!("pipe length, a = {}, b = {}", sig6(a.a), sig6(a.b)),
            json!({ "model": "pipe", "a": a.a, "b": a.b }),
        ),
        (None, Some(ModelArg::Cinema)) => (
            ScalarFunction::from(CinemaModel::new(a.top, a.bottom)?),
            format!("viewing angle, top = {}, bottom = {}", sig6(a.top), sig6(a.bottom)),
            json!({ "model": "cinema", "top": a.top, "bottom": a.bottom }),
        ),
        (None, None) => return Err(CliError::Usage("plot needs an expression or --model".into())),
        (Some(_), Some(_)) => return Err(CliError::Usage("give either an expression or --model, not both".into())),
    };
    merge(
        &mut inputs,
        json!({ "lo": a.lo, "hi": a.hi, "samples": a.samples, "degrees": a.degrees, "out": a.out }),
    );
    let format = match a.out.as_deref() {
        None if a.output.json => return Err(CliError::Usage("--json with plot needs --out".into())),
        None => PlotFormat::Csv,
        Some(path) if path.ends_with(".csv") => PlotFormat::Csv,
        Some(path) if path.ends_with(".svg") => PlotFormat::Svg,
        Some(path) => return Err(CliError::Usage(format!("--out must end in .csv or .svg: {path}"))),
    };
    let iv = interval(a.lo, a.hi, a.degrees)?;
    let mut series = plot::sample(&f, iv, a.samples)?;

    let mut markers = Vec::new();
    if let Some(mark) = a.mark {
        let opts = SolveOptions::default();
        let (r, name) = match mark {
            MarkArg::Min => (uniopt::minimize_bounded(&f, iv, &opts)?, "min"),
            MarkArg::Max => (uniopt::maximize_bounded(&f, iv, &opts)?, "max"),
        };
        let x = from_rad(r.x_min, a.degrees);
        markers.push(Marker { x, y: r.f_min, label: format!("{name} ({}, {})", sig6(x), sig6(r.f_min)) });
    }
    if a.degrees {
        series.scale_x(1.0 / DEG);
    }

    let body = match format {
        PlotFormat::Csv => plot::emit_csv(&series),
        PlotFormat::Svg => plot::emit_svg(
            &series,
            &SvgOptions { width: a.width, height: a.height, title, markers: markers.clone() },
        ),
    };
    let mut text = String::new();
    match &a.out {
        Some(path) => {
            std::fs::write(path, &body).map_err(|source| CliError::Io { path: path.clone(), source })?;
            text.push_str(&format!("wrote {} samples ({} gaps) to {path}\n", series.len(), series.gaps()));
            for m in &markers {
                text.push_str(&format!("{}\n", m.label));
            }
        }
        None => text.push_str(&body),
    }
    let record = PlotRecord {
        samples: series.len(),
        gaps: series.gaps(),
        out: a.out.clone(),
        markers: markers.iter().map(|m| MarkerRecord { x: m.x, y: m.y, label: m.label.clone() }).collect(),
    };
    Ok(Outcome {
        exit: 0,
        report: RunReport {
            command: "plot".into(),
            inputs,
            result: serde_json::to_value(record).expect("serializable"),
            warnings: Vec::new(),
            elapsed_ms: 0.0,
        },
        text,
        json: a.output.json,
    })
}
