//! Neighbor-qubit addressing-error simulation.
//!
//! A neighbor illuminated at relative drive strength `ε` evolves under the
//! scaled propagator; the measured signal is the population inversion
//! `|⟨0|U(ε)|1⟩|²` times a single detection-fidelity visibility factor.
//! Position sweeps map ion position to `ε` through a Gaussian beam profile.

use crate::error::Error;
use crate::pulse::PulseSequence;

/// Gaussian addressing beam along the trap axis.
///
/// `epsilon(x) = exp(-(x - center)² / w²)` follows the field amplitude (the
/// Rabi frequency is an amplitude coupling), so the intensity falls off as
/// `exp(-2(x - center)² / w²)` with `w` the 1/e² intensity radius.
#[derive(Clone, Copy, Debug)]
pub struct BeamModel {
    waist_radius: f64,
    center: f64,
}

impl BeamModel {
    /// `waist_radius` in micrometers; must be positive and finite.
    pub fn new(waist_radius: f64, center: f64) -> Result<Self, Error> {
        if !waist_radius.is_finite() || !center.is_finite() {
            return Err(Error::NonFinite("beam parameters"));
        }
        if waist_radius <= 0.0 {
            return Err(Error::NonPositiveScale { value: waist_radius });
        }
        Ok(Self { waist_radius, center })
    }

    pub fn waist_radius(&self) -> f64 {
        self.waist_radius
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// Relative drive strength at position `x`.
    pub fn epsilon(&self, x: f64) -> f64 {
        let u = (x - self.center) / self.waist_radius;
        (-u * u).exp()
    }
}

/// Single multiplicative visibility factor applied to ideal populations.
#[derive(Clone, Copy, Debug)]
pub struct DetectionModel {
    fidelity: f64,
}

impl DetectionModel {
    pub const IDEAL: Self = Self { fidelity: 1.0 };

    pub fn new(fidelity: f64) -> Result<Self, Error> {
        if !(0.0..=1.0).contains(&fidelity) {
            return Err(Error::InvalidRange("detection fidelity must be in [0, 1]"));
        }
        Ok(Self { fidelity })
    }

    pub fn fidelity(&self) -> f64 {
        self.fidelity
    }
}

/// Population inversion of a neighbor driven at strength `eps`:
/// `fidelity × |⟨0|U(ε)|1⟩|²`.
pub fn inversion(seq: &PulseSequence, eps: f64, det: &DetectionModel) -> f64 {
    det.fidelity * seq.scaled_propagator(eps).transition_probability()
}

/// Which independent variable a sweep runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepKind {
    /// Drive-strength ratio ε.
    Epsilon,
    /// Ion position along the trap axis, micrometers.
    Position,
}

/// Specification of one sweep: grid, sequences, detection, and (for position
/// sweeps) the beam mapping position to drive strength.
#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub kind: SweepKind,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub sequences: Vec<PulseSequence>,
    pub detection: DetectionModel,
    pub beam: Option<BeamModel>,
}

impl SweepSpec {
    fn validate(&self) -> Result<(), Error> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::InvalidSweep("need finite lo < hi"));
        }
        if self.points < 2 {
            return Err(Error::InvalidSweep("need at least 2 grid points"));
        }
        if self.kind == SweepKind::Position && self.beam.is_none() {
            return Err(Error::InvalidSweep("position sweeps need a beam model"));
        }
        Ok(())
    }

    fn grid(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|k| self.lo + (self.hi - self.lo) * k as f64 / (n - 1) as f64)
            .collect()
    }
}

/// Result table of a sweep: the axis grid plus one inversion column per
/// sequence.
#[derive(Clone, Debug)]
pub struct SweepTable {
    pub axis_label: &'static str,
    pub axis: Vec<f64>,
    pub columns: Vec<(String, Vec<f64>)>,
}

fn run_sweep(spec: &SweepSpec, eps_of: impl Fn(f64) -> f64 + Sync + Send) -> Vec<Vec<f64>> {
    let grid = spec.grid();
    let rows = crate::exec::map_indexed(grid.len(), |k| {
        let eps = eps_of(grid[k]);
        spec.sequences
            .iter()
            .map(|seq| inversion(seq, eps, &spec.detection))
            .collect::<Vec<f64>>()
    });
    rows
}

fn collect_table(spec: &SweepSpec, label: &'static str, rows: Vec<Vec<f64>>) -> SweepTable {
    let columns = spec
        .sequences
        .iter()
        .enumerate()
        .map(|(j, seq)| {
            let col = rows.iter().map(|r| r[j]).collect();
            (seq.name().to_string(), col)
        })
        .collect();
    SweepTable { axis_label: label, axis: spec.grid(), columns }
}

/// Inversion of every sequence over a uniform grid of drive strengths.
pub fn epsilon_sweep(spec: &SweepSpec) -> Result<SweepTable, Error> {
    spec.validate()?;
    if spec.kind != SweepKind::Epsilon {
        return Err(Error::InvalidSweep("spec kind is not epsilon"));
    }
    let rows = run_sweep(spec, |eps| eps);
    Ok(collect_table(spec, "eps", rows))
}

/// Inversion of every sequence over a uniform grid of ion positions.
pub fn position_sweep(spec: &SweepSpec) -> Result<SweepTable, Error> {
    spec.validate()?;
    if spec.kind != SweepKind::Position {
        return Err(Error::InvalidSweep("spec kind is not position"));
    }
    let beam = spec.beam.expect("validated above");
    let rows = run_sweep(spec, move |x| beam.epsilon(x));
    Ok(collect_table(spec, "x_um", rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pulse::Pulse;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn simple(theta: f64) -> PulseSequence {
        PulseSequence::new("simple", vec![Pulse::new(theta, 0.0).unwrap()])
    }

    #[test]
    fn beam_profile_values() {
        let b = BeamModel::new(22.1, 0.0).unwrap();
        assert!((b.epsilon(0.0) - 1.0).abs() < 1e-15);
        assert!((b.epsilon(22.1) - (-1.0_f64).exp()).abs() < 1e-15);
        assert!((b.epsilon(3.0 * 22.1) - (-9.0_f64).exp()).abs() < 1e-18);
        assert!(BeamModel::new(0.0, 0.0).is_err());
        assert!(BeamModel::new(f64::NAN, 0.0).is_err());
    }

    #[test]
    fn detection_model_bounds() {
        assert!(DetectionModel::new(1.2).is_err());
        assert!(DetectionModel::new(-0.1).is_err());
        assert!((DetectionModel::new(0.8).unwrap().fidelity() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn inversion_values() {
        let det = DetectionModel::IDEAL;
        assert!(inversion(&simple(PI), 0.0, &det).abs() < 1e-15);
        assert!((inversion(&simple(FRAC_PI_2), 1.0, &det) - 0.5).abs() < 1e-12);
        // detection scales linearly
        let det08 = DetectionModel::new(0.8).unwrap();
        let full = inversion(&simple(PI), 0.37, &det);
        let scaled = inversion(&simple(PI), 0.37, &det08);
        assert!((scaled - 0.8 * full).abs() < 1e-15);
    }

    #[test]
    fn epsilon_sweep_matches_rabi_formula() {
        let spec = SweepSpec {
            kind: SweepKind::Epsilon,
            lo: 0.0,
            hi: 1.0,
            points: 11,
            sequences: vec![simple(PI)],
            detection: DetectionModel::IDEAL,
            beam: None,
        };
        let table = epsilon_sweep(&spec).unwrap();
        assert_eq!(table.columns.len(), 1);
        for (k, &eps) in table.axis.iter().enumerate() {
            let expect = (eps * PI / 2.0).sin().powi(2);
            assert!((table.columns[0].1[k] - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn position_sweep_matches_closed_form() {
        let beam = BeamModel::new(22.1, 0.0).unwrap();
        let spec = SweepSpec {
            kind: SweepKind::Position,
            lo: -60.0,
            hi: 60.0,
            points: 41,
            sequences: vec![simple(PI)],
            detection: DetectionModel::IDEAL,
            beam: Some(beam),
        };
        let table = position_sweep(&spec).unwrap();
        for (k, &x) in table.axis.iter().enumerate() {
            let expect = (beam.epsilon(x) * PI / 2.0).sin().powi(2);
            assert!((table.columns[0].1[k] - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn narrowband_far_tail_is_negligible() {
        let beam = BeamModel::new(22.1, 0.0).unwrap();
        let params =
            crate::families::Task1Params::solve(0.5, 0.5, PI, 0.0).unwrap();
        let seq = crate::families::task1(&params).unwrap();
        let eps = beam.epsilon(5.0 * beam.waist_radius());
        assert!(inversion(&seq, eps, &DetectionModel::IDEAL) < 1e-10);
    }

    #[test]
    fn sweep_spec_validation() {
        let mut spec = SweepSpec {
            kind: SweepKind::Position,
            lo: 0.0,
            hi: 1.0,
            points: 5,
            sequences: vec![simple(PI)],
            detection: DetectionModel::IDEAL,
            beam: None,
        };
        assert!(matches!(position_sweep(&spec), Err(Error::InvalidSweep(_))));
        spec.kind = SweepKind::Epsilon;
        spec.points = 1;
        assert!(matches!(epsilon_sweep(&spec), Err(Error::InvalidSweep(_))));
        spec.points = 5;
        spec.hi = -1.0;
        assert!(matches!(epsilon_sweep(&spec), Err(Error::InvalidSweep(_))));
    }
}
