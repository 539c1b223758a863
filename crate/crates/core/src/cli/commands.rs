use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use super::config::{OutputFormat, RunConfig};
use super::document::{fmt_f64, transform_csv, ClassificationDocument, TransformDocument};
use super::verify::run_checks;
use crate::darboux::{build_transform, LevelSelection, TransformResult};
use crate::error::{Error, Result};
use crate::model::SolvableModel;
use crate::spectral::{verify_spectrum, SpectrumReport};
use crate::susy::classify_transform;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Exit status for an error: bad or inadmissible input is 2, everything
/// else (numerics, I/O) is 1.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InadmissibleSelection { .. }
        | Error::NodefulWronskian { .. }
        | Error::InvalidSelection(_)
        | Error::InvalidGrid(_)
        | Error::UnknownModel(_)
        | Error::EmptyInput(_)
        | Error::DegenerateTransformationFunctions
        | Error::Json(_) => EXIT_INVALID,
        _ => EXIT_FAILURE,
    }
}

fn prepare(cfg: &RunConfig) -> Result<(Box<dyn SolvableModel>, TransformResult)> {
    let model = cfg.model()?;
    let sel = LevelSelection::new(model.as_ref(), cfg.levels.clone())?;
    let mut tr = build_transform(model.as_ref(), &sel)?;
    if let Some(delta) = &cfg.perturb_vn {
        tr = tr.with_shifted_potential(delta);
    }
    Ok((model, tr))
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), contents)?;
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn transform(cfg: &RunConfig) -> Result<i32> {
    let (model, tr) = prepare(cfg)?;
    let doc = TransformDocument::from_transform(model.name(), &tr);
    let json = to_json(&doc)?;
    let csv = transform_csv(model.as_ref(), &tr, cfg.n_max, &cfg.grid)?;
    match &cfg.out {
        Some(dir) => {
            write_file(dir, "transform.json", &json)?;
            write_file(dir, "transform.csv", &csv)?;
        }
        None => match cfg.format {
            OutputFormat::Json => print!("{json}"),
            OutputFormat::Csv => print!("{csv}"),
        },
    }
    Ok(EXIT_OK)
}

pub fn verify(cfg: &RunConfig) -> Result<i32> {
    let (model, tr) = prepare(cfg)?;
    let report = run_checks(model.as_ref(), &tr, cfg.n_max, &cfg.grid, cfg.parallel);
    let json = to_json(&report)?;
    match &cfg.out {
        Some(dir) => write_file(dir, "verify.json", &json)?,
        None => print!("{json}"),
    }
    Ok(match report.first_failure() {
        Some(check) => {
            eprintln!("verification failed: {} ({})", check.name, check.residual);
            EXIT_FAILURE
        }
        None => EXIT_OK,
    })
}

fn spectrum_table(report: &SpectrumReport) -> String {
    let mut out = format!(
        "{:>5}  {:>10}  {:>14}  {:>14}  {:>10}\n",
        "level", "exact", "h0", "hN", "abs_error"
    );
    for row in &report.rows {
        let hn = row.hn.map_or_else(|| "deleted".to_string(), |v| format!("{v:.8}"));
        let _ = writeln!(
            out,
            "{:>5}  {:>10.4}  {:>14.8}  {:>14}  {:>10.3e}",
            row.level, row.exact, row.h0, hn, row.abs_error
        );
    }
    out
}

fn spectrum_csv(report: &SpectrumReport) -> String {
    let mut out = String::from("level,exact,h0,hN,abs_error\n");
    for row in &report.rows {
        let hn = row.hn.map_or_else(|| "deleted".to_string(), fmt_f64);
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            row.level,
            fmt_f64(row.exact),
            fmt_f64(row.h0),
            hn,
            fmt_f64(row.abs_error)
        );
    }
    out
}

#[derive(Serialize)]
struct SpectrumRowDocument {
    level: u32,
    exact: f64,
    h0: f64,
    /// A number, or the string "deleted".
    hn: serde_json::Value,
    abs_error: f64,
}

fn spectrum_json(report: &SpectrumReport) -> Result<String> {
    let rows: Vec<SpectrumRowDocument> = report
        .rows
        .iter()
        .map(|r| SpectrumRowDocument {
            level: r.level,
            exact: r.exact,
            h0: r.h0,
            hn: r.hn.map_or_else(|| "deleted".into(), Into::into),
            abs_error: r.abs_error,
        })
        .collect();
    to_json(&serde_json::json!({
        "grid": report.grid,
        "rows": rows,
        "max_abs_error": report.max_abs_error,
        "tolerance": report.tolerance,
        "passed": report.passed(),
    }))
}

pub fn spectrum(cfg: &RunConfig) -> Result<i32> {
    let (model, tr) = prepare(cfg)?;
    let report = verify_spectrum(model.as_ref(), &tr, cfg.n_max, &cfg.grid)?;
    print!("{}", spectrum_table(&report));
    if let Some(dir) = &cfg.out {
        match cfg.format {
            OutputFormat::Json => write_file(dir, "spectrum.json", &spectrum_json(&report)?)?,
            OutputFormat::Csv => write_file(dir, "spectrum.csv", &spectrum_csv(&report))?,
        }
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        eprintln!(
            "spectrum error {:.3e} exceeds tolerance {:.1e}",
            report.max_abs_error, report.tolerance
        );
        EXIT_FAILURE
    })
}

pub fn classify(cfg: &RunConfig) -> Result<i32> {
    let (model, tr) = prepare(cfg)?;
    let n_max = cfg.n_max.max(tr.selection.max_level());
    let cls = classify_transform(model.as_ref(), &tr, n_max)?;
    let json = to_json(&ClassificationDocument::new(model.as_ref(), &cfg.levels, &cls))?;
    match &cfg.out {
        Some(dir) => write_file(dir, "classify.json", &json)?,
        None => print!("{json}"),
    }
    Ok(EXIT_OK)
}
