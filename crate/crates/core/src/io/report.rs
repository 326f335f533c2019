use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::check::DissipativeReport;
use crate::error::{Error, Result};
use crate::solver::Trajectory;

use super::json::{format_f64, to_json_string};

pub const CSV_HEADER: &str = "t,energy,lhs,rhs,margin";

/// One line of the per-run CSV time series.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub t: f64,
    pub energy: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

/// Joins snapshot energies with a dissipative report computed on the same
/// trajectory.
pub fn report_rows(traj: &Trajectory, report: &DissipativeReport) -> Result<Vec<ReportRow>> {
    if traj.snapshots.len() != report.t.len() {
        return Err(Error::Contract(format!(
            "report has {} samples but trajectory has {} snapshots",
            report.t.len(),
            traj.snapshots.len()
        )));
    }
    Ok(traj
        .snapshots
        .iter()
        .enumerate()
        .map(|(i, s)| ReportRow {
            t: s.t,
            energy: s.energy,
            lhs: report.lhs[i],
            rhs: report.rhs[i],
            margin: report.margin[i],
        })
        .collect())
}

pub fn write_report_csv(path: impl AsRef<Path>, rows: &[ReportRow]) -> Result<()> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            format_f64(r.t),
            format_f64(r.energy),
            format_f64(r.lhs),
            format_f64(r.rhs),
            format_f64(r.margin)
        );
    }
    let path = path.as_ref();
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Serializes with exact float formatting and writes the result.
pub fn write_json<T: Serialize + ?Sized>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, to_json_string(value)?).map_err(|e| Error::io(path, e))
}
