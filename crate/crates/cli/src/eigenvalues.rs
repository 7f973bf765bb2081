use sixbeam::eigenbasis::{eigenvalue_asymptotic, solve_eigenvalue};
use sixbeam::Parity;

use crate::config::{ParityFilter, RunConfig};
use crate::output::{emit, Cell, Table};
use crate::CliError;

/// Rows `m = 0..=m_max` laid out as `m, λ_m^c, (m+1/6)π, λ_m^s, (m-1/3)π`.
/// Entries that do not exist (the odd family at `m = 0`, the asymptotic
/// value of the constant mode) are left empty.
pub fn table(m_max: usize, filter: ParityFilter) -> Result<Table, CliError> {
    let families: Vec<Parity> = [Parity::Even, Parity::Odd].into_iter().filter(|&p| filter.includes(p)).collect();
    let mut cols = vec!["m".to_string()];
    for p in &families {
        cols.push(format!("lambda_{}", p.letter()));
        cols.push(format!("asymptotic_{}", p.letter()));
    }
    let mut t = Table::new(cols);
    let first = if filter == ParityFilter::Odd { 1 } else { 0 };
    for m in first..=m_max {
        let mut row = vec![Cell::Int(m as i64)];
        for &p in &families {
            if m < p.first_index() {
                row.extend([Cell::Empty, Cell::Empty]);
                continue;
            }
            row.push(Cell::Num(solve_eigenvalue(p, m)?.lambda));
            row.push(if m == 0 { Cell::Empty } else { Cell::Num(eigenvalue_asymptotic(p, m)?) });
        }
        t.push(row);
    }
    Ok(t)
}

pub fn run(cfg: &RunConfig) -> Result<(), CliError> {
    let m_max = match cfg.m_max {
        Some(m) => m,
        None => cfg.order()?,
    };
    if m_max > 10_000 {
        return Err(CliError::Usage(format!("m-max = {m_max} exceeds 10000")));
    }
    let t = table(m_max, cfg.parity.unwrap_or_default())?;
    emit(cfg.out.as_deref(), |w| t.write(w, cfg.format()))?;
    Ok(())
}
