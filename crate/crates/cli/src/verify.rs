use std::time::Instant;

use serde::Serialize;
use sixbeam::oracle::{verify_sweep, VerificationReport, VerificationSweep};
use sixbeam::Basis;

use crate::config::{Format, RunConfig};
use crate::output::{emit, write_json, Cell, Table};
use crate::{elapsed_ms, CliError, Timings};

pub const MAX_INDEX: usize = 50;

#[derive(Clone, Debug, Serialize)]
pub struct VerifySummary {
    pub max_index: usize,
    pub checked: usize,
    pub failed: usize,
    pub documented: usize,
    pub worst_discrepancy: f64,
    pub pass: bool,
    pub timings: Option<Timings>,
}

#[derive(Serialize)]
struct Document<'a> {
    summary: &'a VerifySummary,
    reports: &'a [VerificationReport],
    documented_discrepancies: &'a [VerificationReport],
}

pub fn sweep(max_index: usize, timings: bool) -> Result<(VerificationSweep, VerifySummary), CliError> {
    if max_index > MAX_INDEX {
        return Err(CliError::Usage(format!("max-index = {max_index} exceeds {MAX_INDEX}")));
    }
    let start = Instant::now();
    let basis = Basis::new(max_index.max(1))?;
    let basis_ms = elapsed_ms(start);
    let t1 = Instant::now();
    let s = verify_sweep(&basis, max_index)?;
    let solve_ms = elapsed_ms(t1);
    let summary = VerifySummary {
        max_index,
        checked: s.checked,
        failed: s.failed,
        documented: s.documented_discrepancies.len(),
        worst_discrepancy: s.reports.iter().map(|r| r.discrepancy).fold(0.0, f64::max),
        pass: s.pass,
        timings: timings.then(|| Timings {
            basis_ms,
            solve_ms,
            total_ms: elapsed_ms(start),
        }),
    };
    Ok((s, summary))
}

pub fn report_table(s: &VerificationSweep) -> Table {
    let mut t = Table::new([
        "label", "formula", "variant", "parity", "n", "m", "p", "closed_form", "quadrature", "discrepancy", "pass",
    ]);
    let opt = |v: Option<i64>| v.map_or(Cell::Empty, Cell::Int);
    for r in s.reports.iter().chain(&s.documented_discrepancies) {
        let variant = serde_json::to_value(r.variant).expect("enum");
        t.push(vec![
            Cell::Text(r.label()),
            Cell::Text(r.formula.to_string()),
            Cell::Text(variant.as_str().unwrap_or_default().to_string()),
            Cell::Text(r.parity.to_string()),
            opt(r.n.map(|n| n as i64)),
            Cell::Int(r.m as i64),
            opt(r.p.map(i64::from)),
            Cell::Num(r.closed_form),
            Cell::Num(r.quadrature),
            Cell::Num(r.discrepancy),
            Cell::Text(r.pass.to_string()),
        ]);
    }
    t
}

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let max_index = cfg.max_index.unwrap_or(20);
    let (s, summary) = sweep(max_index, cfg.timings.unwrap_or(true))?;
    let format = match cfg.format {
        Some(f) => f,
        None => Format::Json,
    };
    emit(cfg.out.as_deref(), |w| match format {
        Format::Json => write_json(
            w,
            &Document {
                summary: &summary,
                reports: &s.reports,
                documented_discrepancies: &s.documented_discrepancies,
            },
        ),
        Format::Csv => report_table(&s).write_csv(w),
    })?;
    log::info!(
        "{} checked, {} failed, {} documented printed-form discrepancies",
        summary.checked,
        summary.failed,
        summary.documented
    );
    if !summary.pass {
        let worst = s
            .reports
            .iter()
            .filter(|r| !r.pass)
            .max_by(|a, b| a.discrepancy.total_cmp(&b.discrepancy))
            .map(|r| format!("{} off by {:e}", r.label(), r.discrepancy))
            .unwrap_or_default();
        return Err(CliError::Verification(format!("{} of {} entries ({worst})", summary.failed, summary.checked)));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sweep_passes() {
        let (s, summary) = sweep(0, false).unwrap();
        assert!(summary.pass && s.reports.is_empty() && summary.checked == 0);
    }

    #[test]
    fn limit_is_enforced() {
        assert!(matches!(sweep(51, false), Err(CliError::Usage(_))));
    }

    #[test]
    fn small_sweep_table() {
        let (s, summary) = sweep(2, false).unwrap();
        assert!(summary.pass);
        let t = report_table(&s);
        assert_eq!(t.rows.len(), s.reports.len() + s.documented_discrepancies.len());
        assert!(summary.worst_discrepancy < 1e-8);
    }
}
