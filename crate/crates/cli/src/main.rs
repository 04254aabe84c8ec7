//! `catgate` command-line front end.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 degenerate measurement
//! outcome, 4 I/O failure.

mod args;

use args::{
    Cli, Command, DiagnosticsArgs, Format, InputState, OutputArgs, StateArgs, SweepArgs, ValueOrRange,
    WignerArgs,
};
use catgate::gate::{
    cat_diagnostics, cat_from_state, classify_parity, exact_output, stationary_output, CatDiagnostics,
    GateParams, Parity,
};
use catgate::states::{fidelity, make_coherent, make_fock, WaveFunction};
use catgate::sweeps::{overlay_guides, run_sweep, SweepSpec};
use catgate::wigner::transform;
use catgate::{format_number, Error, GridSpec};
use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_VALIDATION: u8 = 2;
const EXIT_DEGENERATE: u8 = 3;
const EXIT_IO: u8 = 4;

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn validation(message: impl Into<String>) -> Self {
        Self { code: EXIT_VALIDATION, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DegenerateOutcome(_) => EXIT_DEGENERATE,
            _ => EXIT_VALIDATION,
        };
        Self { code, message: e.to_string() }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_VALIDATION);
        }
        // Only fails if a global pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let result = match cli.command {
        Command::Gate(a) => cmd_gate(&a),
        Command::Stationary(a) => cmd_stationary(&a),
        Command::Wigner(a) => cmd_wigner(&a),
        Command::Diagnostics(a) => cmd_diagnostics(&a),
        Command::Sweep(a) => cmd_sweep(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn single_value(flag: &str, v: ValueOrRange) -> CliResult<f64> {
    match v {
        ValueOrRange::Value(x) => Ok(x),
        ValueOrRange::Range { .. } => Err(CliError::validation(format!(
            "{flag} expects a single value here; ranges are only accepted by `sweep`"
        ))),
    }
}

fn range(flag: &str, v: ValueOrRange) -> CliResult<(f64, f64)> {
    match v {
        ValueOrRange::Range { lo, hi } => Ok((lo, hi)),
        ValueOrRange::Value(_) => Err(CliError::validation(format!(
            "{flag} expects a lo:hi range for `sweep`; use `gate` for a single point"
        ))),
    }
}

fn gate_params(y_m: ValueOrRange, gamma: ValueOrRange) -> CliResult<GateParams> {
    let y_m = single_value("--ym", y_m)?;
    let gamma = single_value("--gamma", gamma)?;
    GateParams::new(gamma, y_m).map_err(|e| CliError::validation(format!("--gamma/--ym: {e}")))
}

fn coordinate_grid(a: &StateArgs) -> CliResult<GridSpec> {
    let (lo, hi) = a.grid.x_range;
    GridSpec::with_spacing(lo, hi, a.grid.dx).map_err(|e| CliError::validation(format!("--x-range/--dx: {e}")))
}

fn build_input(input: InputState, grid: GridSpec) -> CliResult<WaveFunction> {
    let psi = match (input.fock(), input.alpha()) {
        (Some(spec), _) => make_fock(spec, grid),
        (None, Some(alpha)) => make_coherent(alpha, grid),
        (None, None) => unreachable!("input is either fock or coherent"),
    };
    psi.map_err(|e| CliError::validation(format!("--input {input}: {e}")))
}

fn write_output(out: &OutputArgs, text: &str) -> CliResult<()> {
    match &out.output {
        Some(path) => write_file(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush()) {
                Ok(()) => Ok(()),
                // a closed pipe (e.g. `| head`) is not an error for the producer
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                Err(e) => Err(CliError { code: EXIT_IO, message: format!("cannot write to standard output: {e}") }),
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text)
        .map_err(|e| CliError { code: EXIT_IO, message: format!("cannot write {}: {e}", path.display()) })
}

fn state_config(command: &str, a: &StateArgs, grid: &GridSpec, params: &GateParams) -> Value {
    json!({
        "command": command,
        "input": a.input,
        "y_m": params.y_m,
        "gamma": params.gamma,
        "grid": grid,
        "parity_tol": a.parity_tol,
        "format": a.out.format,
    })
}

/// Diagnostics and reference fidelities reported alongside an output state.
#[derive(Debug, Serialize)]
struct Report {
    diagnostics: Option<CatDiagnostics>,
    parity: Option<Parity>,
    f_cat: Option<f64>,
    f_st: Option<f64>,
    notes: Vec<String>,
}

fn report(input: &WaveFunction, exact: Option<&WaveFunction>, params: &GateParams, parity_tol: f64) -> CliResult<Report> {
    let mut notes = Vec::new();
    let mut r = Report { diagnostics: None, parity: None, f_cat: None, f_st: None, notes: Vec::new() };
    match cat_diagnostics(params) {
        Ok(d) => {
            r.parity = Some(
                classify_parity(&d, parity_tol).map_err(|e| CliError::validation(format!("--parity-tol: {e}")))?,
            );
            r.diagnostics = Some(d);
            if let Some(out) = exact {
                match cat_from_state(input, params).and_then(|cat| fidelity(out, &cat)) {
                    Ok(f) => r.f_cat = Some(f),
                    Err(e) => notes.push(format!("F_cat unavailable: {e}")),
                }
            }
        }
        Err(e) => notes.push(format!("cat diagnostics unavailable: {e}")),
    }
    let exact_owned;
    let exact = match exact {
        Some(e) => Some(e),
        None => match exact_output(input, params) {
            Ok(e) => {
                exact_owned = e;
                Some(&exact_owned)
            }
            Err(e) => {
                notes.push(format!("exact output unavailable: {e}"));
                None
            }
        },
    };
    if let Some(out) = exact {
        match stationary_output(input, params).and_then(|st| fidelity(out, &st)) {
            Ok(f) => r.f_st = Some(f),
            Err(e) => notes.push(format!("F_st unavailable: {e}")),
        }
    }
    r.notes = notes;
    Ok(r)
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".to_string(), format_number)
}

fn report_header(command: &str, config: &Value, r: &Report) -> String {
    let mut h = String::new();
    let _ = writeln!(h, "# catgate {command}");
    let _ = writeln!(h, "# config: {config}");
    let d = r.diagnostics.as_ref();
    let _ = writeln!(h, "# theta: {}", opt(d.map(|d| d.theta)));
    let _ = writeln!(h, "# p_plus: {}", opt(d.map(|d| d.p_plus)));
    let _ = writeln!(h, "# alpha: {}", d.map_or("n/a".to_string(), |d| format!("{}{:+}i", d.alpha.re, d.alpha.im)));
    let _ = writeln!(h, "# lambda_shear: {}", opt(d.map(|d| d.lambda_shear)));
    let _ = writeln!(h, "# lambda_rounded: {}", opt(d.map(|d| d.lambda_rounded)));
    let _ = writeln!(h, "# parity: {}", r.parity.map_or("n/a".to_string(), |p| p.to_string()));
    let _ = writeln!(h, "# F_cat: {}", opt(r.f_cat));
    let _ = writeln!(h, "# F_st: {}", opt(r.f_st));
    for note in &r.notes {
        let _ = writeln!(h, "# note: {note}");
    }
    h
}

fn emit_state(command: &str, out: &OutputArgs, config: Value, r: &Report, psi: &WaveFunction) -> CliResult<()> {
    let text = match out.format {
        Format::Csv => report_header(command, &config, r) + &psi.to_csv(),
        Format::Json => {
            let mut v = psi.to_json_value();
            v["config"] = config;
            v["report"] = serde_json::to_value(r).expect("serializable");
            v.to_string() + "\n"
        }
    };
    write_output(out, &text)
}

fn cmd_gate(a: &StateArgs) -> CliResult<()> {
    let params = gate_params(a.y_m, a.gamma)?;
    let grid = coordinate_grid(a)?;
    let input = build_input(a.input, grid)?;
    let out = exact_output(&input, &params)?;
    let r = report(&input, Some(&out), &params, a.parity_tol)?;
    emit_state("gate", &a.out, state_config("gate", a, &grid, &params), &r, &out)
}

fn cmd_stationary(a: &StateArgs) -> CliResult<()> {
    let params = gate_params(a.y_m, a.gamma)?;
    let grid = coordinate_grid(a)?;
    let input = build_input(a.input, grid)?;
    let st = stationary_output(&input, &params)?;
    let r = report(&input, None, &params, a.parity_tol)?;
    emit_state("stationary", &a.out, state_config("stationary", a, &grid, &params), &r, &st)
}

fn cmd_wigner(a: &WignerArgs) -> CliResult<()> {
    let s = &a.state;
    let params = gate_params(s.y_m, s.gamma)?;
    let grid = coordinate_grid(s)?;
    let input = build_input(s.input, grid)?;
    let p_axis = GridSpec::new(a.p_range.0, a.p_range.1, a.p_points)
        .map_err(|e| CliError::validation(format!("--p-range/--p-points: {e}")))?;
    let psi = if a.no_gate { input } else { exact_output(&input, &params)? };
    let w = transform(&psi, p_axis).map_err(|e| CliError::validation(format!("--p-range: {e}")))?;
    let mut config = state_config("wigner", s, &grid, &params);
    config["p_axis"] = json!(p_axis);
    config["no_gate"] = json!(a.no_gate);
    let text = match s.out.format {
        Format::Csv => format!("# catgate wigner\n# config: {config}\n") + &w.to_csv(),
        Format::Json => {
            let mut v = w.to_json_value();
            v["config"] = config;
            v.to_string() + "\n"
        }
    };
    write_output(&s.out, &text)
}

fn cmd_diagnostics(a: &DiagnosticsArgs) -> CliResult<()> {
    let params = gate_params(a.y_m, a.gamma)?;
    let d = cat_diagnostics(&params)?;
    let parity = classify_parity(&d, a.parity_tol).map_err(|e| CliError::validation(format!("--parity-tol: {e}")))?;
    let config = json!({
        "command": "diagnostics",
        "y_m": params.y_m,
        "gamma": params.gamma,
        "parity_tol": a.parity_tol,
        "format": a.out.format,
    });
    let text = match a.out.format {
        Format::Csv => {
            let mut t = format!("# catgate diagnostics\n# config: {config}\nkey,value\n");
            for (k, v) in [
                ("theta", d.theta),
                ("p_plus", d.p_plus),
                ("alpha_re", d.alpha.re),
                ("alpha_im", d.alpha.im),
                ("lambda_shear", d.lambda_shear),
                ("lambda_rounded", d.lambda_rounded),
                ("parity_angle", d.parity_angle),
            ] {
                let _ = writeln!(t, "{k},{}", format_number(v));
            }
            let _ = writeln!(t, "parity,{parity}");
            t
        }
        Format::Json => json!({ "config": config, "diagnostics": d, "parity": parity }).to_string() + "\n",
    };
    write_output(&a.out, &text)
}

fn guides_path(a: &SweepArgs) -> Option<PathBuf> {
    a.guides.clone().or_else(|| {
        a.out.output.as_ref().map(|p| {
            let ext = match a.out.format {
                Format::Csv => "guides.csv",
                Format::Json => "guides.json",
            };
            p.with_extension(ext)
        })
    })
}

fn cmd_sweep(a: &SweepArgs) -> CliResult<()> {
    let (y_lo, y_hi) = range("--ym", a.y_m)?;
    let (g_lo, g_hi) = range("--gamma", a.gamma)?;
    let input = a
        .input
        .fock()
        .ok_or_else(|| CliError::validation(format!("--input: sweeps take a Fock input, got {}", a.input)))?;
    if g_lo <= 0.0 {
        return Err(CliError::validation(format!("--gamma: range must start above 0 (gamma > 0), got {g_lo}")));
    }
    let spec = SweepSpec {
        y_m_axis: GridSpec::new(y_lo, y_hi, a.cells.0).map_err(|e| CliError::validation(format!("--ym: {e}")))?,
        gamma_axis: GridSpec::new(g_lo, g_hi, a.cells.1)
            .map_err(|e| CliError::validation(format!("--gamma: {e}")))?,
        input,
        metric: a.metric.into(),
    };
    let result = run_sweep(&spec)?;
    let guides = overlay_guides(&spec);
    let config = json!({
        "command": "sweep",
        "metric": a.metric,
        "input": a.input,
        "y_m": [y_lo, y_hi],
        "gamma": [g_lo, g_hi],
        "cells": [a.cells.0, a.cells.1],
        "grid": result.grid,
        "format": a.out.format,
    });
    let (map, guide_text) = match a.out.format {
        Format::Csv => (
            format!("# catgate sweep\n# config: {config}\n") + &result.to_csv(),
            format!("# catgate sweep guides\n# config: {config}\n") + &guides.to_csv(&spec),
        ),
        Format::Json => {
            let mut v = result.to_json_value();
            v["config"] = config.clone();
            (
                v.to_string() + "\n",
                json!({ "config": config, "guides": guides }).to_string() + "\n",
            )
        }
    };
    write_output(&a.out, &map)?;
    if let Some(path) = guides_path(a) {
        write_file(&path, &guide_text)?;
    }
    match result.extremes() {
        Some(((y0, g0, v0), (y1, g1, v1))) => eprintln!(
            "{}: min {v0} at (y_m={y0}, gamma={g0}); max {v1} at (y_m={y1}, gamma={g1}); {} failed cell(s)",
            spec.metric.name(),
            result.failures.len()
        ),
        None => eprintln!("{}: no finite cells; {} failed cell(s)", spec.metric.name(), result.failures.len()),
    }
    Ok(())
}
