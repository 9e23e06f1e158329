//! Convergence tables.

use lattice_digits::digit_operators::{lattice_term_coefficient, line_coefficient};
use lattice_digits::integral::integral_error_bound;
use lattice_digits::{ln3_series_partial, ternary_integral, LatticeSpec};
use serde::Serialize;

use crate::args::{parse_rational, SweepArg, SweepArgs};
use crate::CliError;

/// Momentum digit counts visited by the line sweep.
pub const LINE_N_PLUS: [u32; 5] = [4, 6, 8, 10, 12];

/// Lower cutoffs visited by the integral sweep.
pub const INTEGRAL_S_LO: [i32; 6] = [-5, -10, -15, -20, -25, -30];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables always serialize")
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.serialize(row)?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.to_string()))?)
            .expect("csv output is UTF-8"))
    }
}

pub fn run(a: &SweepArgs) -> Result<Table, CliError> {
    match a.sweep {
        SweepArg::LineConvergence => line_convergence(a),
        SweepArg::IntegralConvergence => {
            let x = parse_rational("amount", &a.amount)?.to_f64();
            integral_convergence(x)
        }
        SweepArg::Ln3Series => ln3_series(),
    }
}

/// Largest distance between lattice and line coefficients of the momentum
/// digit over `|D| ≤ d_max`, as the momentum digit count grows.
fn line_convergence(a: &SweepArgs) -> Result<Table, CliError> {
    let system = a.lattice.system()?;
    let mut t = Table::new(&["n_plus", "dim", "max_deviation"]);
    let d_max = a.d_max as i64;
    for n_plus in LINE_N_PLUS {
        let spec = LatticeSpec::for_system(system, n_plus + a.lattice.n_minus, a.lattice.n_minus)?;
        let mut worst = 0.0f64;
        for d in -d_max..=d_max {
            for sigma in 1..system.q() {
                let lattice = lattice_term_coefficient(&spec, system, a.index, d, sigma)?;
                worst = worst.max((lattice - line_coefficient(system, d, sigma)).norm());
            }
        }
        t.rows.push(vec![n_plus as f64, spec.dim() as f64, worst]);
    }
    Ok(t)
}

fn integral_convergence(x: f64) -> Result<Table, CliError> {
    let mut t = Table::new(&["x", "s_lo", "value", "deviation", "bound"]);
    for s_lo in INTEGRAL_S_LO {
        let s_lo = s_lo as f64;
        let value = ternary_integral(x, s_lo)?;
        t.rows.push(vec![x, s_lo, value, (value - x).abs(), integral_error_bound(s_lo)]);
    }
    Ok(t)
}

fn ln3_series() -> Result<Table, CliError> {
    let mut t = Table::new(&["k", "partial_sum", "deviation"]);
    for e in 1..=6 {
        let k = 10u64.pow(e);
        let s = ln3_series_partial(k)?;
        t.rows.push(vec![k as f64, s, (s - 3f64.ln()).abs()]);
    }
    Ok(t)
}
