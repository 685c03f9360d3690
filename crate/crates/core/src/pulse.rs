//! Pulses, pulse sequences, propagators, and the first two terms of the
//! Magnus/BCH expansion of the reduced-strength propagator.
//!
//! A sequence applied at relative drive strength `ε` propagates as
//! `U(ε) = exp(ε r_L) ··· exp(ε r_2) exp(ε r_1)` — later pulses multiply on
//! the left. Collecting orders of `ε` gives `U(ε) = exp(Σ_m ε^m F_m)` with
//! `F_1 = Σ r_ℓ` and `F_2 = ½ Σ_{ℓ>k} [r_ℓ, r_k]`; a sequence with `F_1 = 0`
//! approximates the identity to first order at reduced strength while still
//! applying its full gate at ε = 1.

use crate::error::Error;
use crate::su2::{expm_raw, AlgebraVector, Unitary2};

const TAU: f64 = std::f64::consts::TAU;

/// Closure tolerance on |F1| required by [`PulseSequence::infidelity_coefficient`].
pub const F1_CLOSURE_TOL: f64 = 1e-8;

/// One constant-phase drive segment: rotation angle `θ ≥ 0` at laser phase `φ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pulse {
    theta: f64,
    phi: f64,
}

impl Pulse {
    /// Build a pulse, normalizing the phase into `[0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self, Error> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::NonFinite("pulse angle or phase"));
        }
        if theta < 0.0 {
            return Err(Error::AngleOutOfRange { angle: theta, min: 0.0, max: f64::INFINITY });
        }
        Ok(Self { theta, phi: normalize_phase(phi) })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Generator vector `(θ cos φ, θ sin φ, 0)`; strictly in-plane.
    pub fn generator(&self) -> AlgebraVector {
        AlgebraVector::in_plane(self.theta, self.phi)
    }
}

pub(crate) fn normalize_phase(phi: f64) -> f64 {
    let p = phi.rem_euclid(TAU);
    // rem_euclid can return TAU itself for tiny negative inputs
    if p >= TAU {
        0.0
    } else {
        p
    }
}

/// Optional target-gate metadata carried by a sequence: the in-plane rotation
/// `exp(-i θ σ(φ)/2)` the sequence is meant to implement at full strength.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Target {
    pub theta: f64,
    pub phi: f64,
}

/// Ordered list of pulses; index 0 is applied first.
#[derive(Clone, Debug, PartialEq)]
pub struct PulseSequence {
    name: String,
    target: Option<Target>,
    pulses: Vec<Pulse>,
}

impl PulseSequence {
    pub fn new(name: impl Into<String>, pulses: Vec<Pulse>) -> Self {
        Self { name: name.into(), target: None, pulses }
    }

    pub fn with_target(mut self, target: Target) -> Self {
        self.target = Some(target);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn target(&self) -> Option<Target> {
        self.target
    }

    pub fn pulses(&self) -> &[Pulse] {
        &self.pulses
    }

    pub fn len(&self) -> usize {
        self.pulses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulses.is_empty()
    }

    /// Full-strength propagator `exp(r_L) ··· exp(r_1)`.
    pub fn propagator(&self) -> Unitary2 {
        self.scaled_propagator(1.0)
    }

    /// Propagator with every generator scaled by `eps`; `eps = 1` reproduces
    /// [`PulseSequence::propagator`] exactly.
    pub fn scaled_propagator(&self, eps: f64) -> Unitary2 {
        debug_assert!(eps.is_finite());
        let mut u = Unitary2::IDENTITY;
        for p in &self.pulses {
            u = expm_raw(AlgebraVector::in_plane(eps * p.theta, p.phi)) * u;
        }
        u
    }

    /// First-order term `F_1 = Σ r_ℓ` as a generator vector.
    pub fn f1(&self) -> AlgebraVector {
        let mut acc = AlgebraVector::ZERO;
        for p in &self.pulses {
            acc = acc + p.generator();
        }
        acc
    }

    /// Second-order term: the vector `c` of `F_2 = -i(c·σ)/2`, i.e.
    /// `c = ½ Σ_{ℓ>k} v_ℓ × v_k` (equal-index commutators vanish).
    pub fn f2(&self) -> AlgebraVector {
        let gens: Vec<AlgebraVector> = self.pulses.iter().map(Pulse::generator).collect();
        let mut acc = AlgebraVector::ZERO;
        for l in 1..gens.len() {
            for k in 0..l {
                acc = acc + gens[l].cross(&gens[k]);
            }
        }
        acc.scaled(0.5)
    }

    /// Total pulse area `Σ |θ_ℓ|`, the gate-time proxy.
    pub fn total_pulse_area(&self) -> f64 {
        self.pulses.iter().map(|p| p.theta.abs()).sum()
    }

    /// Identity infidelity `1 - |tr U(ε)|/2` of the reduced-strength gate.
    pub fn infidelity(&self, eps: f64) -> f64 {
        self.scaled_propagator(eps).identity_infidelity()
    }

    /// Leading coefficient of `infidelity(ε)/ε⁴` as `ε → 0`, equal to `|F_2|²/8`.
    ///
    /// Requires first-order closure `|F_1| <` [`F1_CLOSURE_TOL`]: then
    /// `U(ε) ≈ exp(ε² F_2)`, `tr/2 = cos(ε²|c|/2)`, and the infidelity opens
    /// as `ε⁴ |c|²/8`.
    pub fn infidelity_coefficient(&self) -> Result<f64, Error> {
        let f1_norm = self.f1().norm();
        if f1_norm >= F1_CLOSURE_TOL {
            return Err(Error::NotNarrowband { f1_norm });
        }
        let c = self.f2().norm();
        Ok(c * c / 8.0)
    }

    /// Replace every phase by `(φ_ℓ + β) mod 2π`. Equivalent to conjugating
    /// each generator by the Z rotation of angle `β`.
    pub fn phase_advance(&self, beta: f64) -> PulseSequence {
        let pulses = self
            .pulses
            .iter()
            .map(|p| Pulse { theta: p.theta, phi: normalize_phase(p.phi + beta) })
            .collect();
        PulseSequence { name: self.name.clone(), target: self.target, pulses }
    }

    /// Axis-wise dilation of every generator: `(vx, vy) → (λx vx, λy vy)`.
    ///
    /// Each image is re-expressed as a pulse with `θ` the vector norm and `φ`
    /// its azimuth; zero-area images keep phase 0.
    pub fn dilate(&self, lambda_x: f64, lambda_y: f64) -> PulseSequence {
        debug_assert!(lambda_x.is_finite() && lambda_y.is_finite());
        let pulses = self
            .pulses
            .iter()
            .map(|p| {
                let g = p.generator();
                let vx = lambda_x * g.x;
                let vy = lambda_y * g.y;
                let theta = vx.hypot(vy);
                let phi = if theta > 0.0 { normalize_phase(vy.atan2(vx)) } else { 0.0 };
                Pulse { theta, phi }
            })
            .collect();
        PulseSequence { name: self.name.clone(), target: self.target, pulses }
    }

    /// Least-squares slope of `log I(ε)` vs `log ε` over a 9-point geometric
    /// grid in `[eps_lo, eps_hi]` — the numeric order-of-suppression estimate.
    pub fn suppression_order(&self, eps_lo: f64, eps_hi: f64) -> Result<f64, Error> {
        if !(eps_lo > 0.0 && eps_lo < eps_hi && eps_hi < 1.0) {
            return Err(Error::InvalidRange("need 0 < eps_lo < eps_hi < 1"));
        }
        const POINTS: usize = 9;
        let ratio = eps_hi / eps_lo;
        let mut logs = [(0.0_f64, 0.0_f64); POINTS];
        for (k, entry) in logs.iter_mut().enumerate() {
            let eps = eps_lo * ratio.powf(k as f64 / (POINTS - 1) as f64);
            let inf = self.infidelity(eps);
            if inf < 1e-300 {
                return Err(Error::Underflow);
            }
            *entry = (eps.ln(), inf.ln());
        }
        let n = POINTS as f64;
        let mx = logs.iter().map(|(x, _)| x).sum::<f64>() / n;
        let my = logs.iter().map(|(_, y)| y).sum::<f64>() / n;
        let sxy: f64 = logs.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = logs.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
        Ok(sxy / sxx)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::su2::{axis_angle, expm, trace_fidelity};
    use std::f64::consts::{FRAC_PI_2, PI};

    fn seq(pulses: &[(f64, f64)]) -> PulseSequence {
        PulseSequence::new(
            "test",
            pulses.iter().map(|&(t, p)| Pulse::new(t, p).unwrap()).collect(),
        )
    }

    #[test]
    fn pulse_rejects_bad_inputs() {
        assert!(Pulse::new(-0.1, 0.0).is_err());
        assert!(Pulse::new(f64::NAN, 0.0).is_err());
        assert!(Pulse::new(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn pulse_normalizes_phase() {
        let p = Pulse::new(1.0, -FRAC_PI_2).unwrap();
        assert!((p.phi() - 1.5 * PI).abs() < 1e-15);
        let p = Pulse::new(1.0, TAU + 0.25).unwrap();
        assert!((p.phi() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn empty_sequence_is_identity() {
        let s = seq(&[]);
        assert!(s.propagator().identity_infidelity() < 1e-15);
        assert!(s.f1().norm() == 0.0);
        assert!(s.total_pulse_area() == 0.0);
    }

    #[test]
    fn single_pi_pulse_is_minus_i_x() {
        let s = seq(&[(PI, 0.0)]);
        let target = expm(AlgebraVector::new(PI, 0.0, 0.0)).unwrap();
        assert!(trace_fidelity(&s.propagator(), &target) > 1.0 - 1e-14);
        assert!((s.infidelity(1.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn scaled_propagator_scales_generators() {
        let s = seq(&[(PI, 0.0)]);
        let half = s.scaled_propagator(0.5);
        let expect = expm(AlgebraVector::new(FRAC_PI_2, 0.0, 0.0)).unwrap();
        assert!(trace_fidelity(&half, &expect) > 1.0 - 1e-14);
        assert!(s.scaled_propagator(0.0).identity_infidelity() < 1e-15);
    }

    #[test]
    fn f1_antipodal_pair_closes() {
        let s = seq(&[(PI, 0.0), (PI, PI)]);
        assert!(s.f1().norm() < 1e-12);
    }

    #[test]
    fn f2_single_pulse_vanishes() {
        assert!(seq(&[(2.3, 0.7)]).f2().norm() == 0.0);
    }

    #[test]
    fn f2_equilateral_triangle() {
        let s = seq(&[(PI, PI / 3.0), (PI, PI), (PI, 5.0 * PI / 3.0)]);
        let c = s.f2();
        let expected = -3.0_f64.sqrt() * PI * PI / 4.0;
        assert!(c.x.abs() < 1e-12 && c.y.abs() < 1e-12);
        assert!((c.z - expected).abs() < 1e-12);
    }

    #[test]
    fn infidelity_coefficient_requires_closure() {
        let s = seq(&[(PI, 0.0)]);
        assert!(matches!(s.infidelity_coefficient(), Err(Error::NotNarrowband { .. })));
    }

    #[test]
    fn phase_advance_shifts_phases() {
        let s = seq(&[(PI, 0.0)]).phase_advance(FRAC_PI_2);
        assert!((s.pulses()[0].phi() - FRAC_PI_2).abs() < 1e-15);
        let s2 = seq(&[(1.0, 0.3), (2.0, 4.0)]);
        assert_eq!(s2.phase_advance(0.0), s2);
    }

    #[test]
    fn dilate_cases() {
        let s = seq(&[(TAU, 2.0 * PI / 3.0)]);
        let uniform = s.dilate(0.5, 0.5);
        assert!((uniform.pulses()[0].theta() - PI).abs() < 1e-12);
        assert!((uniform.pulses()[0].phi() - 2.0 * PI / 3.0).abs() < 1e-12);

        let flattened = s.dilate(1.0, 0.0);
        assert!((flattened.pulses()[0].theta() - PI).abs() < 1e-12);
        assert!((flattened.pulses()[0].phi() - PI).abs() < 1e-12);

        assert_eq!(s.dilate(1.0, 1.0).pulses()[0], s.pulses()[0]);
    }

    #[test]
    fn suppression_order_single_pulse_is_quadratic() {
        let s = seq(&[(PI, 0.0)]);
        let slope = s.suppression_order(1e-3, 1e-2).unwrap();
        assert!((slope - 2.0).abs() < 0.05, "slope = {slope}");
    }

    #[test]
    fn suppression_order_rejects_bad_range() {
        let s = seq(&[(PI, 0.0)]);
        assert!(matches!(s.suppression_order(0.0, 0.1), Err(Error::InvalidRange(_))));
        assert!(matches!(s.suppression_order(0.2, 0.1), Err(Error::InvalidRange(_))));
    }

    #[test]
    fn suppression_order_underflow_on_empty() {
        let s = seq(&[]);
        assert!(matches!(s.suppression_order(1e-3, 1e-2), Err(Error::Underflow)));
    }

    #[test]
    fn propagator_concatenation_order() {
        let a = seq(&[(0.7, 0.2), (1.1, 2.9)]);
        let b = seq(&[(2.2, 4.0)]);
        let mut joined = a.pulses().to_vec();
        joined.extend_from_slice(b.pulses());
        let ab = PulseSequence::new("joined", joined);
        let expect = b.propagator() * a.propagator();
        assert!(trace_fidelity(&ab.propagator(), &expect) > 1.0 - 1e-14);
    }

    #[test]
    fn phase_advance_conjugates_the_gate() {
        let s = seq(&[(1.3, 0.4), (0.8, 2.0), (2.0, 5.1)]);
        let beta = 0.9;
        let adv = s.phase_advance(beta);
        let rz = expm(AlgebraVector::new(0.0, 0.0, beta)).unwrap();
        let expect = rz * s.propagator() * rz.adjoint();
        assert!(trace_fidelity(&adv.propagator(), &expect) > 1.0 - 1e-13);
        let aa = axis_angle(&adv.propagator());
        let aa0 = axis_angle(&s.propagator());
        assert!((aa.angle - aa0.angle).abs() < 1e-12);
    }
}
