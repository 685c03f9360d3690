//! The SK1, ASK1, and TASK1 sequence families and the embedded reference
//! table of optimized TASK1 parameters.
//!
//! SK1 is the three-pulse seed: a target pulse followed by two 2π pulses
//! whose phases `±φ_SK1` are chosen so the generators close (`F_1 = 0`).
//! ASK1 dilates the 2π SK1 triangle axis-by-axis, which preserves closure
//! but moves the net rotation axis out of the X-Y plane. TASK1 restores an
//! in-plane target gate by sandwiching the phase-advanced ASK1 core between
//! a minimum-angle tilt pulse and its inverse.

use crate::error::Error;
use crate::pulse::{normalize_phase, Pulse, PulseSequence, Target};
use crate::su2::{axis_angle, AlgebraVector, AxisAngle};

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;

/// Net-angle agreement required between `ask1(λx, λy)` and the requested
/// target angle when assembling a TASK1 sequence.
pub const CONSTRAINT_TOL: f64 = 1e-8;
/// Axis z-components below this are treated as exactly in-plane, so the tilt
/// pulse collapses to zero area and its phase takes the fixed convention.
const TILT_SNAP_TOL: f64 = 1e-12;

/// SK1 sequence for the target gate `exp(-i θ_T σ(φ_T)/2)`.
///
/// Pulses: `(θ_T @ φ_T)`, `(2π @ φ_T + φ_SK1)`, `(2π @ φ_T - φ_SK1)` with
/// `φ_SK1 = arccos(-θ_T/4π)`, the sign that closes `F_1`.
pub fn sk1(theta_t: f64, phi_t: f64) -> Result<PulseSequence, Error> {
    if !theta_t.is_finite() || !phi_t.is_finite() {
        return Err(Error::NonFinite("sk1 target"));
    }
    if !(0.0..=TAU).contains(&theta_t) {
        return Err(Error::AngleOutOfRange { angle: theta_t, min: 0.0, max: TAU });
    }
    let phi_sk1 = (-theta_t / (4.0 * PI)).acos();
    let pulses = vec![
        Pulse::new(theta_t, phi_t)?,
        Pulse::new(TAU, phi_t + phi_sk1)?,
        Pulse::new(TAU, phi_t - phi_sk1)?,
    ];
    Ok(PulseSequence::new("sk1", pulses)
        .with_target(Target { theta: theta_t, phi: normalize_phase(phi_t) }))
}

/// ASK1 sequence: the 2π SK1 triangle dilated by `(λx, λy)`.
pub fn ask1(lambda_x: f64, lambda_y: f64) -> Result<PulseSequence, Error> {
    for &l in &[lambda_x, lambda_y] {
        if !l.is_finite() {
            return Err(Error::NonFinite("dilation scale"));
        }
        if l <= 0.0 {
            return Err(Error::NonPositiveScale { value: l });
        }
    }
    let base = sk1(TAU, 0.0)?;
    let mut seq = base.dilate(lambda_x, lambda_y);
    seq = PulseSequence::new("ask1", seq.pulses().to_vec());
    Ok(seq)
}

/// Axis-angle normal form of a sequence's net gate, on the `[0, 2π]` branch.
pub fn net_axis(seq: &PulseSequence) -> AxisAngle {
    axis_angle(&seq.propagator())
}

/// Signed tilt angle removing the axis' out-of-plane component; positive
/// tilts point at azimuth `φ_T + π/2`.
fn tilt_angle(m: &AxisAngle) -> f64 {
    let mut nz = m.axis_z();
    if nz.abs() < TILT_SNAP_TOL {
        nz = 0.0;
    }
    -nz.clamp(-1.0, 1.0).asin()
}

/// Decompose the frame rotation taking a net axis onto the in-plane target
/// direction `(cos φ_T, sin φ_T, 0)`.
///
/// Returns the tilt generator `r'` (in-plane, azimuth `φ_T ± π/2`, norm
/// `|arcsin(axis_z)| ≤ π/2`) and the phase advance `β ∈ [0, 2π)`. Axes with
/// `|axis_z|` below the snap tolerance take `r' = 0`.
pub fn align(m: &AxisAngle, phi_t: f64) -> Result<(AlgebraVector, f64), Error> {
    if m.degenerate {
        return Err(Error::DegenerateAxis);
    }
    let delta = tilt_angle(m);
    let beta = normalize_phase(phi_t - m.azimuth());
    // r' = delta * (unit vector at azimuth phi_t + pi/2)
    let r_prime = AlgebraVector::new(-delta * phi_t.sin(), delta * phi_t.cos(), 0.0);
    Ok((r_prime, beta))
}

/// Full parameterization of one TASK1 sequence.
#[derive(Clone, Copy, Debug)]
pub struct Task1Params {
    pub lambda_x: f64,
    pub lambda_y: f64,
    pub theta_t: f64,
    pub phi_t: f64,
    /// Signed tilt angle of `r'`; positive tilts point at azimuth `φ_T + π/2`.
    pub delta: f64,
    /// Phase advance applied to the inner ASK1 pulses.
    pub beta: f64,
}

impl Task1Params {
    /// Derive the tilt and phase advance for `(λx, λy)` implementing the
    /// target `exp(-i θ_T σ(φ_T)/2)`.
    ///
    /// The caller must supply scales on the constraint curve: the ASK1 net
    /// angle has to match `θ_T` to [`CONSTRAINT_TOL`]. The degenerate net
    /// gate `-I` (θ_T = 2π) takes `r' = 0` with `β = φ_T + π/3`, the limit of
    /// the equilateral subfamily.
    pub fn solve(
        lambda_x: f64,
        lambda_y: f64,
        theta_t: f64,
        phi_t: f64,
    ) -> Result<Self, Error> {
        if !theta_t.is_finite() || !phi_t.is_finite() {
            return Err(Error::NonFinite("task1 target"));
        }
        if !(theta_t > 0.0 && theta_t <= TAU) {
            return Err(Error::AngleOutOfRange { angle: theta_t, min: 0.0, max: TAU });
        }
        let inner = ask1(lambda_x, lambda_y)?;
        let m = net_axis(&inner);
        if (m.angle - theta_t).abs() > CONSTRAINT_TOL {
            return Err(Error::ConstraintViolation {
                expected: theta_t,
                actual: m.angle,
                tol: CONSTRAINT_TOL,
            });
        }
        let phi_t = normalize_phase(phi_t);
        let (delta, beta) = if m.degenerate {
            (0.0, normalize_phase(phi_t + PI / 3.0))
        } else {
            let (_, beta) = align(&m, phi_t)?;
            (tilt_angle(&m), beta)
        };
        Ok(Self { lambda_x, lambda_y, theta_t, phi_t, delta, beta })
    }
}

/// Assemble the five-pulse TASK1 sequence for `params`.
///
/// Layout: tilt pulse of `r'`, the three ASK1 pulses phase-advanced by `β`,
/// then the inverse tilt `-r'` realized as the same area at azimuth + π.
/// Zero-area tilts keep the fixed phase convention `φ_T + π/2` first for
/// targets up to π and `φ_T + 3π/2` first beyond.
pub fn task1(params: &Task1Params) -> Result<PulseSequence, Error> {
    let inner = ask1(params.lambda_x, params.lambda_y)?;
    let m = net_axis(&inner);
    if (m.angle - params.theta_t).abs() > CONSTRAINT_TOL {
        return Err(Error::ConstraintViolation {
            expected: params.theta_t,
            actual: m.angle,
            tol: CONSTRAINT_TOL,
        });
    }
    let phi_t = params.phi_t;
    let delta = params.delta;
    let first_phase = if delta > 0.0 || (delta == 0.0 && params.theta_t <= PI) {
        phi_t + 0.5 * PI
    } else {
        phi_t + 1.5 * PI
    };
    let last_phase = first_phase + PI;

    let mut pulses = Vec::with_capacity(5);
    pulses.push(Pulse::new(delta.abs(), first_phase)?);
    for p in inner.phase_advance(params.beta).pulses() {
        pulses.push(*p);
    }
    pulses.push(Pulse::new(delta.abs(), last_phase)?);
    Ok(PulseSequence::new("task1", pulses)
        .with_target(Target { theta: params.theta_t, phi: phi_t }))
}

/// The two optimized TASK1 subfamilies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subfamily {
    /// Minimizes the total pulse area.
    TimeMinimal,
    /// Minimizes the residual infidelity coefficient.
    ErrorMinimal,
}

impl Subfamily {
    pub fn label(&self) -> &'static str {
        match self {
            Subfamily::TimeMinimal => "T_min",
            Subfamily::ErrorMinimal => "E_min",
        }
    }
}

impl std::fmt::Display for Subfamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// One frozen reference row: optimized TASK1 parameters at 4-decimal
/// precision, used by the self-check.
#[derive(Clone, Copy, Debug)]
pub struct ReferenceRow {
    pub subfamily: Subfamily,
    pub net_rotation: f64,
    pub lambda_x: f64,
    pub lambda_y: f64,
    pub thetas: [f64; 5],
    pub phis: [f64; 5],
    pub pulse_area: f64,
    pub infidelity_coeff: f64,
}

const T: Subfamily = Subfamily::TimeMinimal;
const E: Subfamily = Subfamily::ErrorMinimal;

// literal 4-decimal values as printed; several happen to round pi multiples
#[allow(clippy::approx_constant)]
#[rustfmt::skip]
static REFERENCE_TABLE: [ReferenceRow; 16] = [
    ReferenceRow { subfamily: T, net_rotation: 0.25 * PI, lambda_x: 0.2730, lambda_y: 0.1828,
        thetas: [0.6817, 1.7155, 1.3133, 1.3133, 0.6817],
        phis: [1.5708, 1.2177, 3.5002, 5.2184, 4.7124],
        pulse_area: 5.7055, infidelity_coeff: 0.0910 },
    ReferenceRow { subfamily: T, net_rotation: 0.50 * PI, lambda_x: 0.3988, lambda_y: 0.2723,
        thetas: [0.3013, 2.5057, 1.9404, 1.9404, 0.3013],
        phis: [1.5708, 1.2348, 3.5075, 5.2453, 4.7124],
        pulse_area: 6.9890, infidelity_coeff: 0.4308 },
    ReferenceRow { subfamily: T, net_rotation: 0.75 * PI, lambda_x: 0.5000, lambda_y: 0.3550,
        thetas: [0.0000, 3.1416, 2.4898, 2.4898, 0.0000],
        phis: [1.5708, 1.2566, 3.5101, 5.2863, 4.7124],
        pulse_area: 8.1213, infidelity_coeff: 1.1510 },
    ReferenceRow { subfamily: T, net_rotation: PI, lambda_x: 0.5000, lambda_y: 0.5000,
        thetas: [0.0000, 3.1416, 3.1416, 3.1416, 0.0000],
        phis: [1.5708, 1.0472, 3.1416, 5.2360, 4.7124],
        pulse_area: 9.4248, infidelity_coeff: 2.2830 },
    ReferenceRow { subfamily: T, net_rotation: 1.25 * PI, lambda_x: 0.5532, lambda_y: 0.6227,
        thetas: [0.1309, 3.4758, 3.8081, 3.8081, 0.1309],
        phis: [4.7124, 0.8958, 2.9405, 5.1343, 1.5708],
        pulse_area: 11.3539, infidelity_coeff: 4.3347 },
    ReferenceRow { subfamily: T, net_rotation: 1.50 * PI, lambda_x: 0.6447, lambda_y: 0.7135,
        thetas: [0.3447, 4.0507, 4.3792, 4.3792, 0.3447],
        phis: [4.7124, 0.8251, 2.8767, 5.0567, 1.5708],
        pulse_area: 13.4984, infidelity_coeff: 7.7300 },
    ReferenceRow { subfamily: T, net_rotation: 1.75 * PI, lambda_x: 0.7578, lambda_y: 0.8246,
        thetas: [0.5262, 4.7613, 5.0795, 5.0795, 0.5262],
        phis: [4.7124, 0.5860, 2.6446, 4.8106, 1.5708],
        pulse_area: 15.9728, infidelity_coeff: 14.2640 },
    ReferenceRow { subfamily: T, net_rotation: TAU, lambda_x: 1.0000, lambda_y: 1.0000,
        thetas: [0.0000, 6.2832, 6.2832, 6.2832, 0.0000],
        phis: [4.7124, 1.0472, 3.1416, 5.2360, 1.5708],
        pulse_area: 18.8496, infidelity_coeff: 36.5284 },
    ReferenceRow { subfamily: E, net_rotation: 0.25 * PI, lambda_x: 0.2226, lambda_y: 0.2226,
        thetas: [0.8001, 1.3984, 1.3984, 1.3984, 0.8001],
        phis: [1.5708, 1.0472, 3.1416, 5.2360, 4.7124],
        pulse_area: 5.7953, infidelity_coeff: 0.0896 },
    ReferenceRow { subfamily: E, net_rotation: 0.50 * PI, lambda_x: 0.3268, lambda_y: 0.3268,
        thetas: [0.4826, 2.0534, 2.0534, 2.0534, 0.4826],
        phis: [1.5708, 1.0472, 3.1416, 5.2360, 4.7124],
        pulse_area: 7.1255, infidelity_coeff: 0.4167 },
    ReferenceRow { subfamily: E, net_rotation: 0.75 * PI, lambda_x: 0.4159, lambda_y: 0.4159,
        thetas: [0.2301, 2.6134, 2.6134, 2.6134, 0.2301],
        phis: [1.5708, 1.0472, 3.1416, 5.2360, 4.7124],
        pulse_area: 8.3002, infidelity_coeff: 1.0932 },
    ReferenceRow { subfamily: E, net_rotation: PI, lambda_x: 0.5000, lambda_y: 0.5000,
        thetas: [0.0000, 3.1416, 3.1416, 3.1416, 0.0000],
        phis: [1.5708, 1.0472, 3.1416, 5.2360, 4.7124],
        pulse_area: 9.4248, infidelity_coeff: 2.2830 },
    ReferenceRow { subfamily: E, net_rotation: 1.25 * PI, lambda_x: 0.5841, lambda_y: 0.5841,
        thetas: [0.2301, 3.6698, 3.6698, 3.6698, 0.2301],
        phis: [4.7124, 1.0472, 3.1416, 5.2360, 1.5708],
        pulse_area: 11.4696, infidelity_coeff: 4.2510 },
    ReferenceRow { subfamily: E, net_rotation: 1.50 * PI, lambda_x: 0.6732, lambda_y: 0.6732,
        thetas: [0.4826, 4.2298, 4.2298, 4.2298, 0.4826],
        phis: [4.7124, 1.0472, 3.1416, 5.2360, 1.5708],
        pulse_area: 13.6545, infidelity_coeff: 7.5020 },
    ReferenceRow { subfamily: E, net_rotation: 1.75 * PI, lambda_x: 0.7774, lambda_y: 0.7774,
        thetas: [0.8001, 4.8848, 4.8848, 4.8848, 0.8001],
        phis: [4.7124, 1.0472, 3.1416, 5.2360, 1.5708],
        pulse_area: 16.2547, infidelity_coeff: 13.3445 },
    ReferenceRow { subfamily: E, net_rotation: TAU, lambda_x: 1.0000, lambda_y: 1.0000,
        thetas: [0.0000, 6.2832, 6.2832, 6.2832, 0.0000],
        phis: [4.7124, 1.0472, 3.1416, 5.2360, 1.5708],
        pulse_area: 18.8496, infidelity_coeff: 36.5284 },
];

/// All 16 reference rows (8 net rotations × 2 subfamilies) at the frozen
/// 4-decimal precision.
pub fn reference_table() -> &'static [ReferenceRow; 16] {
    &REFERENCE_TABLE
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::{expm, trace_fidelity};

    fn target_gate(theta: f64, phi: f64) -> crate::su2::Unitary2 {
        expm(AlgebraVector::in_plane(theta, phi)).unwrap()
    }

    #[test]
    fn sk1_2pi_is_equilateral() {
        let s = sk1(TAU, 0.0).unwrap();
        let phis: Vec<f64> = s.pulses().iter().map(Pulse::phi).collect();
        assert!((phis[0]).abs() < 1e-15);
        assert!((phis[1] - 2.0 * PI / 3.0).abs() < 1e-12);
        assert!((phis[2] - 4.0 * PI / 3.0).abs() < 1e-12);
        for p in s.pulses() {
            assert!((p.theta() - TAU).abs() < 1e-15);
        }
    }

    #[test]
    fn sk1_pi_values() {
        let s = sk1(PI, 0.0).unwrap();
        let phi_sk1 = (-0.25_f64).acos();
        assert!((s.pulses()[1].phi() - phi_sk1).abs() < 1e-12);
        assert!((s.total_pulse_area() - 5.0 * PI).abs() < 1e-12);
        assert!(s.f1().norm() < 1e-12);
        assert!(trace_fidelity(&s.propagator(), &target_gate(PI, 0.0)) > 1.0 - 1e-12);
    }

    #[test]
    fn sk1_zero_target_degenerates_cleanly() {
        let s = sk1(0.0, 0.0).unwrap();
        assert!((s.pulses()[0].theta()).abs() < 1e-15);
        assert!((s.pulses()[1].phi() - 0.5 * PI).abs() < 1e-12);
        assert!((s.pulses()[2].phi() - 1.5 * PI).abs() < 1e-12);
        assert!(s.propagator().identity_infidelity() < 1e-14);
    }

    #[test]
    fn flipped_phase_sign_breaks_closure() {
        // with phases +-arccos(+theta/4pi) the generators sum to 2*theta
        for theta in [0.7, PI, 5.0] {
            let phi = (theta / (4.0 * PI)).acos();
            let s = PulseSequence::new(
                "flipped",
                vec![
                    Pulse::new(theta, 0.0).unwrap(),
                    Pulse::new(TAU, phi).unwrap(),
                    Pulse::new(TAU, -phi).unwrap(),
                ],
            );
            assert!((s.f1().norm() - 2.0 * theta).abs() < 1e-10);
            assert!(s.infidelity_coefficient().is_err());
        }
    }

    #[test]
    fn sk1_rejects_out_of_range() {
        assert!(matches!(sk1(-0.1, 0.0), Err(Error::AngleOutOfRange { .. })));
        assert!(matches!(sk1(TAU + 0.1, 0.0), Err(Error::AngleOutOfRange { .. })));
    }

    #[test]
    fn ask1_identity_dilation_is_sk1() {
        let a = ask1(1.0, 1.0).unwrap();
        let s = sk1(TAU, 0.0).unwrap();
        for (pa, ps) in a.pulses().iter().zip(s.pulses()) {
            assert!((pa.theta() - ps.theta()).abs() < 1e-12);
            assert!((pa.phi() - ps.phi()).abs() < 1e-12);
        }
    }

    #[test]
    fn ask1_uniform_half_is_pi_triangle() {
        let a = ask1(0.5, 0.5).unwrap();
        for (k, p) in a.pulses().iter().enumerate() {
            assert!((p.theta() - PI).abs() < 1e-12);
            assert!((p.phi() - 2.0 * PI * k as f64 / 3.0).abs() < 1e-12);
        }
        assert!(a.f1().norm() < 1e-12);
    }

    #[test]
    fn ask1_rejects_non_positive_scales() {
        assert!(matches!(ask1(0.0, 0.5), Err(Error::NonPositiveScale { .. })));
        assert!(matches!(ask1(0.5, -1.0), Err(Error::NonPositiveScale { .. })));
    }

    #[test]
    fn net_axis_of_half_triangle() {
        let m = net_axis(&ask1(0.5, 0.5).unwrap());
        assert!(!m.degenerate);
        assert!((m.angle - PI).abs() < 1e-12);
        assert!((m.azimuth() + PI / 3.0).abs() < 1e-12);
        assert!(m.axis_z().abs() < 1e-12);
    }

    #[test]
    fn net_axis_degenerate_at_unit_scales() {
        let m = net_axis(&ask1(1.0, 1.0).unwrap());
        assert!(m.degenerate);
        assert!((m.angle - TAU).abs() < 1e-10);
    }

    #[test]
    fn net_axis_single_pulse() {
        let s = PulseSequence::new("p", vec![Pulse::new(0.5 * PI, 0.0).unwrap()]);
        let m = net_axis(&s);
        assert!((m.angle - 0.5 * PI).abs() < 1e-12);
        assert!((m.axis[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn align_in_plane_axis_needs_no_tilt() {
        let m = AxisAngle { axis: [1.0, 0.0, 0.0], angle: 1.0, degenerate: false };
        let (r, beta) = align(&m, 0.0).unwrap();
        assert!(r.norm() == 0.0);
        assert!(beta.abs() < 1e-15);

        let m = AxisAngle {
            axis: [(-PI / 3.0).cos(), (-PI / 3.0).sin(), 0.0],
            angle: 1.0,
            degenerate: false,
        };
        let (r, beta) = align(&m, 0.0).unwrap();
        assert!(r.norm() == 0.0);
        assert!((beta - PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn align_rejects_degenerate() {
        let m = AxisAngle { axis: [0.0; 3], angle: 0.0, degenerate: true };
        assert!(matches!(align(&m, 0.0), Err(Error::DegenerateAxis)));
    }

    #[test]
    fn align_tilt_matches_reference_row() {
        // T_min pi/2 row: tilt 0.3013 at azimuth pi/2
        let m = net_axis(&ask1(0.3988, 0.2723).unwrap());
        let (r, beta) = align(&m, 0.0).unwrap();
        assert!((r.norm() - 0.3013).abs() < 5e-4);
        assert!((r.azimuth() - 0.5 * PI).abs() < 1e-12);
        assert!((beta - 1.2348).abs() < 5e-4);
    }

    #[test]
    fn task1_emin_pi_row() {
        let params = Task1Params::solve(0.5, 0.5, PI, 0.0).unwrap();
        let seq = task1(&params).unwrap();
        let expect_thetas = [0.0, PI, PI, PI, 0.0];
        let expect_phis = [0.5 * PI, PI / 3.0, PI, 5.0 * PI / 3.0, 1.5 * PI];
        for (p, (&t, &f)) in seq
            .pulses()
            .iter()
            .zip(expect_thetas.iter().zip(expect_phis.iter()))
        {
            assert!((p.theta() - t).abs() < 1e-10, "theta {} vs {}", p.theta(), t);
            assert!((p.phi() - f).abs() < 1e-10, "phi {} vs {}", p.phi(), f);
        }
        assert!(trace_fidelity(&seq.propagator(), &target_gate(PI, 0.0)) > 1.0 - 1e-12);
    }

    #[test]
    fn task1_2pi_degenerate_row() {
        let params = Task1Params::solve(1.0, 1.0, TAU, 0.0).unwrap();
        let seq = task1(&params).unwrap();
        let thetas: Vec<f64> = seq.pulses().iter().map(Pulse::theta).collect();
        let phis: Vec<f64> = seq.pulses().iter().map(Pulse::phi).collect();
        assert!(thetas[0] == 0.0 && thetas[4] == 0.0);
        for &t in &thetas[1..4] {
            assert!((t - TAU).abs() < 1e-12);
        }
        assert!((phis[0] - 1.5 * PI).abs() < 1e-12);
        assert!((phis[4] - 0.5 * PI).abs() < 1e-12);
        assert!((phis[1] - PI / 3.0).abs() < 1e-12);
        assert!((seq.total_pulse_area() - 6.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn task1_rejects_off_constraint_params() {
        // net angle of ask1(0.5, 0.5) is pi, not pi/2
        assert!(matches!(
            Task1Params::solve(0.5, 0.5, 0.5 * PI, 0.0),
            Err(Error::ConstraintViolation { .. })
        ));
    }

    #[test]
    fn reference_rows_are_self_consistent() {
        for row in reference_table() {
            let sum: f64 = row.thetas.iter().sum();
            assert!(
                (sum - row.pulse_area).abs() < 5e-4,
                "{} {}: area {} vs sum {}",
                row.subfamily,
                row.net_rotation,
                row.pulse_area,
                sum
            );
            // printed pulses close to first order (4-decimal rounding)
            let pulses: Vec<Pulse> = row
                .thetas
                .iter()
                .zip(row.phis.iter())
                .map(|(&t, &p)| Pulse::new(t, p).unwrap())
                .collect();
            let printed = PulseSequence::new("row", pulses);
            assert!(printed.f1().norm() < 1e-3);
        }
    }

    #[test]
    fn reference_table_spot_values() {
        let t = reference_table();
        let t_pi = &t[3];
        assert_eq!(t_pi.subfamily, Subfamily::TimeMinimal);
        assert_eq!((t_pi.lambda_x, t_pi.lambda_y), (0.5, 0.5));
        assert_eq!(t_pi.pulse_area, 9.4248);
        assert_eq!(t_pi.infidelity_coeff, 2.2830);
        let e_quarter = &t[8];
        assert_eq!(e_quarter.lambda_x, 0.2226);
        assert_eq!(e_quarter.pulse_area, 5.7953);
        assert_eq!(e_quarter.infidelity_coeff, 0.0896);
        let t_3half = &t[5];
        assert_eq!((t_3half.lambda_x, t_3half.lambda_y), (0.6447, 0.7135));
        assert_eq!(t_3half.infidelity_coeff, 7.7300);
    }

    #[test]
    fn task1_pi_row_net_gate_entries() {
        let params = Task1Params::solve(0.5, 0.5, PI, 0.0).unwrap();
        let u = task1(&params).unwrap().propagator();
        let m = u.matrix();
        // exp(-i pi X / 2) = [[0, -i], [-i, 0]]
        assert!(m[0][0].norm() < 1e-10);
        assert!((m[0][1] - num_complex::Complex64::new(0.0, -1.0)).norm() < 1e-10);
        assert!((m[1][0] - num_complex::Complex64::new(0.0, -1.0)).norm() < 1e-10);
        assert!(m[1][1].norm() < 1e-10);
    }

    #[test]
    fn reference_table_has_8_angles_per_subfamily() {
        let t = reference_table()
            .iter()
            .filter(|r| r.subfamily == Subfamily::TimeMinimal)
            .count();
        assert_eq!(t, 8);
        assert_eq!(reference_table().len(), 16);
    }
}
