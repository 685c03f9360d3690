//! Self-check against the embedded reference table.
//!
//! Every printed number is compared to a full-precision recomputation:
//!
//! * the five (θ, φ) pairs come from assembling the sequence at the row's
//!   frozen `(λx, λy)` scales, so the comparison is not contaminated by the
//!   4-decimal rounding of the scales themselves;
//! * `λx`, `λy`, the pulse area, and the infidelity coefficient come from
//!   re-running the subfamily optimization at the row's net rotation.

use crate::error::Error;
use crate::families::{ask1, net_axis, reference_table, task1, ReferenceRow, Subfamily, Task1Params};
use crate::optimizer::{minimize_area, minimize_infidelity};

const TAU: f64 = std::f64::consts::TAU;

/// Absolute tolerance on every table column (the table is printed with four
/// decimals).
pub const TABLE_TOL: f64 = 5e-4;

/// One out-of-tolerance column.
#[derive(Clone, Debug)]
pub struct ColumnDelta {
    pub column: String,
    pub expected: f64,
    pub actual: f64,
}

impl ColumnDelta {
    pub fn delta(&self) -> f64 {
        (self.actual - self.expected).abs()
    }
}

/// Outcome of re-deriving one reference row.
#[derive(Clone, Debug)]
pub struct RowCheck {
    pub subfamily: Subfamily,
    pub net_rotation: f64,
    /// Largest absolute deviation seen across all compared columns.
    pub max_delta: f64,
    /// Columns that exceeded [`TABLE_TOL`]; empty when the row passes.
    pub failures: Vec<ColumnDelta>,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

fn check_row(row: &ReferenceRow) -> Result<RowCheck, Error> {
    let mut failures = Vec::new();
    let mut max_delta = 0.0_f64;
    let mut compare = |column: String, expected: f64, actual: f64, angular: bool| {
        let d = if angular {
            angular_distance(actual, expected)
        } else {
            (actual - expected).abs()
        };
        max_delta = max_delta.max(d);
        if d > TABLE_TOL {
            failures.push(ColumnDelta { column, expected, actual });
        }
    };

    // Pulse columns: assemble at the frozen scales.
    let inner = ask1(row.lambda_x, row.lambda_y)?;
    let achieved = net_axis(&inner).angle;
    compare("net_rotation".into(), row.net_rotation, achieved, false);
    let params = Task1Params::solve(row.lambda_x, row.lambda_y, achieved, 0.0)?;
    let seq = task1(&params)?;
    for (k, p) in seq.pulses().iter().enumerate() {
        compare(format!("theta_{}", k + 1), row.thetas[k], p.theta(), false);
        compare(format!("phi_{}", k + 1), row.phis[k], p.phi(), true);
    }

    // Parameter and cost columns: re-run the optimization.
    let opt = match row.subfamily {
        Subfamily::TimeMinimal => minimize_area(row.net_rotation, 0.0)?,
        Subfamily::ErrorMinimal => minimize_infidelity(row.net_rotation, 0.0)?,
    };
    let opt_seq = task1(&opt.params)?;
    compare("lambda_x".into(), row.lambda_x, opt.params.lambda_x, false);
    compare("lambda_y".into(), row.lambda_y, opt.params.lambda_y, false);
    compare("pulse_area".into(), row.pulse_area, opt_seq.total_pulse_area(), false);
    compare(
        "infidelity_coeff".into(),
        row.infidelity_coeff,
        opt_seq.infidelity_coefficient()?,
        false,
    );

    Ok(RowCheck {
        subfamily: row.subfamily,
        net_rotation: row.net_rotation,
        max_delta,
        failures,
    })
}

/// Re-derive all 16 reference rows and report per-row deviations.
pub fn check_reference_table() -> Result<Vec<RowCheck>, Error> {
    let rows = reference_table();
    crate::exec::map_indexed(rows.len(), |k| check_row(&rows[k]))
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_rows_pass() {
        let checks = check_reference_table().unwrap();
        assert_eq!(checks.len(), 16);
        for c in &checks {
            assert!(
                c.passed(),
                "{} {:.4} failed: {:?} (max delta {:.2e})",
                c.subfamily,
                c.net_rotation,
                c.failures,
                c.max_delta
            );
        }
    }
}
