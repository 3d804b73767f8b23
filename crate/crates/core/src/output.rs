//! CSV and JSON persistence.
//!
//! Floats are written as `{:.16e}` (17 significant digits), which
//! round-trips every finite `f64` exactly. Missing values are empty fields;
//! several warnings in one row are joined with [`WARNING_SEPARATOR`].

use std::io::{Read, Write};

use serde::Serialize;
use serde_json::{json, Value};

use crate::entanglement::EntanglementReport;
use crate::error::{Error, Result};
use crate::params::{NoiseNormalization, SystemParams};
use crate::pipeline::PointResult;
use crate::sweep::SweepRow;

pub const CSV_HEADER: [&str; 14] = [
    "sweep_value",
    "alpha1",
    "alpha2",
    "density",
    "gamma12",
    "v12",
    "du2",
    "dv2",
    "absorption",
    "sigma11",
    "sigma22",
    "sigma33",
    "entangled",
    "warnings",
];

pub const WARNING_SEPARATOR: &str = " | ";

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn csv_err(e: csv::Error) -> Error {
    Error::Csv(e.to_string())
}

pub fn emit_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        let record = [
            fmt_f64(r.sweep_value),
            fmt_f64(r.alpha1),
            fmt_f64(r.alpha2),
            fmt_f64(r.density),
            fmt_f64(r.gamma12),
            fmt_opt(r.v12),
            fmt_opt(r.du2),
            fmt_opt(r.dv2),
            fmt_opt(r.absorption),
            fmt_opt(r.sigma11),
            fmt_opt(r.sigma22),
            fmt_opt(r.sigma33),
            r.entangled.map(|b| b.to_string()).unwrap_or_default(),
            r.warnings.join(WARNING_SEPARATOR),
        ];
        w.write_record(&record).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Csv(e.to_string()))?;
    Ok(())
}

pub fn csv_string(rows: &[SweepRow]) -> Result<String> {
    let mut buf = Vec::new();
    emit_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Csv(e.to_string()))
}

fn parse_f64(s: &str, column: &str) -> Result<f64> {
    s.parse()
        .map_err(|_| Error::Csv(format!("column {column}: cannot parse `{s}`")))
}

fn parse_opt(s: &str, column: &str) -> Result<Option<f64>> {
    if s.is_empty() {
        Ok(None)
    } else {
        parse_f64(s, column).map(Some)
    }
}

pub fn parse_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = rd.headers().map_err(csv_err)?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(Error::Csv(format!(
            "unexpected header `{}`",
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(csv_err)?;
        let f = |i: usize| rec.get(i).unwrap_or("");
        let entangled = match f(12) {
            "" => None,
            "true" => Some(true),
            "false" => Some(false),
            other => return Err(Error::Csv(format!("column entangled: `{other}`"))),
        };
        rows.push(SweepRow {
            sweep_value: parse_f64(f(0), CSV_HEADER[0])?,
            alpha1: parse_f64(f(1), CSV_HEADER[1])?,
            alpha2: parse_f64(f(2), CSV_HEADER[2])?,
            density: parse_f64(f(3), CSV_HEADER[3])?,
            gamma12: parse_f64(f(4), CSV_HEADER[4])?,
            v12: parse_opt(f(5), CSV_HEADER[5])?,
            du2: parse_opt(f(6), CSV_HEADER[6])?,
            dv2: parse_opt(f(7), CSV_HEADER[7])?,
            absorption: parse_opt(f(8), CSV_HEADER[8])?,
            sigma11: parse_opt(f(9), CSV_HEADER[9])?,
            sigma22: parse_opt(f(10), CSV_HEADER[10])?,
            sigma33: parse_opt(f(11), CSV_HEADER[11])?,
            entangled,
            warnings: if f(13).is_empty() {
                Vec::new()
            } else {
                f(13).split(WARNING_SEPARATOR).map(str::to_owned).collect()
            },
        });
    }
    Ok(rows)
}

/// Inputs in the config's units.
#[derive(Debug, Serialize)]
struct ParamsView {
    delta1_mhz: f64,
    delta2_mhz: f64,
    gamma1_mhz: f64,
    gamma2_mhz: f64,
    gamma12_mhz: f64,
    lambda1_nm: f64,
    lambda2_nm: f64,
    density_per_m3: f64,
    length_m: f64,
    radius_m: f64,
    alpha1: [f64; 2],
    alpha2: [f64; 2],
    omega_mhz: f64,
    noise_normalization: NoiseNormalization,
}

impl From<&SystemParams> for ParamsView {
    fn from(p: &SystemParams) -> Self {
        ParamsView {
            delta1_mhz: p.delta1,
            delta2_mhz: p.delta2,
            gamma1_mhz: p.gamma1,
            gamma2_mhz: p.gamma2,
            gamma12_mhz: p.gamma12,
            lambda1_nm: p.lambda1 * 1e9,
            lambda2_nm: p.lambda2 * 1e9,
            density_per_m3: p.density,
            length_m: p.length,
            radius_m: p.radius,
            alpha1: [p.alpha1.re, p.alpha1.im],
            alpha2: [p.alpha2.re, p.alpha2.im],
            omega_mhz: p.omega,
            noise_normalization: p.noise_normalization,
        }
    }
}

/// JSON document for one evaluated point.
pub fn point_report(p: &SystemParams, r: &PointResult) -> Value {
    let report: &EntanglementReport = &r.report;
    json!({
        "params": ParamsView::from(p),
        "couplings": r.couplings,
        "steady_state": r.steady_state,
        "report": report,
        "diagnostics": {
            "commutator_error": r.output.commutator_error(),
            "heisenberg_min_eigenvalue": r.output.heisenberg_min_eigenvalue(),
        },
        "warnings": r.warnings.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
    })
}
