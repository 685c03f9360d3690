//! Exact SU(2) and su(2) arithmetic on a unit-quaternion representation.
//!
//! An algebra element is the real 3-vector `v` of the generator
//! `-i(vx·X + vy·Y + vz·Z)/2`; its Euclidean norm is the rotation angle.
//! A group element is stored as the quaternion `(w, x, y, z)` with
//!
//!   U = w·I - i(x·X + y·Y + z·Z)
//!
//! so that `det U = w² + x² + y² + z²` and constructors always produce
//! determinant-1 matrices up to rounding. Re(tr U) = 2w.

use num_complex::Complex64;

use crate::error::Error;

/// Tolerance below which a generator's z-component counts as in-plane.
pub const IN_PLANE_TOL: f64 = 1e-12;
/// Maximum unitarity defect accepted when ingesting raw matrix entries.
pub const UNITARITY_TOL: f64 = 1e-8;
/// Traceless-part norm below which the rotation axis is undefined.
pub const DEGENERATE_AXIS_TOL: f64 = 1e-10;
/// Trace criterion for the log branch point: tr(U)/2 <= -1 + this.
pub const BRANCH_TOL: f64 = 1e-10;

const TAU: f64 = std::f64::consts::TAU;

/// Coefficients `(vx, vy, vz)` of the su(2) generator `-i(v·σ)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl AlgebraVector {
    pub const ZERO: Self = Self { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// In-plane generator of a constant-phase pulse: `(θ cos φ, θ sin φ, 0)`.
    pub fn in_plane(theta: f64, phi: f64) -> Self {
        Self { x: theta * phi.cos(), y: theta * phi.sin(), z: 0.0 }
    }

    /// Rotation angle of `exp` of the generator.
    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn is_in_plane(&self) -> bool {
        self.z.abs() <= IN_PLANE_TOL
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Azimuth of the in-plane part, in `(-π, π]`.
    pub fn azimuth(&self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { x: factor * self.x, y: factor * self.y, z: factor * self.z }
    }
}

impl std::ops::Add for AlgebraVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl std::ops::Sub for AlgebraVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl std::ops::Neg for AlgebraVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// Special-unitary 2×2 matrix.
#[derive(Clone, Copy, Debug)]
pub struct Unitary2 {
    w: f64,
    x: f64,
    y: f64,
    z: f64,
}

impl Unitary2 {
    pub const IDENTITY: Self = Self { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };

    /// Validate and ingest raw matrix entries (row-major).
    ///
    /// Rejects inputs whose unitarity defect `max|UU† - I|` or determinant
    /// defect `|det U - 1|` exceeds [`UNITARITY_TOL`].
    pub fn from_entries(m: [[Complex64; 2]; 2]) -> Result<Self, Error> {
        let [[a, b], [c, d]] = m;
        if ![a, b, c, d].iter().all(|e| e.re.is_finite() && e.im.is_finite()) {
            return Err(Error::NonFinite("matrix entries"));
        }
        // UU† entries
        let r00 = a * a.conj() + b * b.conj();
        let r01 = a * c.conj() + b * d.conj();
        let r11 = c * c.conj() + d * d.conj();
        let det = a * d - b * c;
        let defect = [
            (r00 - 1.0).norm(),
            r01.norm(),
            (r11 - 1.0).norm(),
            (det - 1.0).norm(),
        ]
        .into_iter()
        .fold(0.0_f64, f64::max);
        if defect > UNITARITY_TOL {
            return Err(Error::NotUnitary { defect });
        }
        // U = [[w - iz, -y - ix], [y - ix, w + iz]]
        let q = Self {
            w: 0.5 * (a.re + d.re),
            x: -0.5 * (b.im + c.im),
            y: 0.5 * (c.re - b.re),
            z: 0.5 * (d.im - a.im),
        };
        Ok(q.renormalized())
    }

    /// Matrix entries (row-major).
    pub fn matrix(&self) -> [[Complex64; 2]; 2] {
        [
            [Complex64::new(self.w, -self.z), Complex64::new(-self.y, -self.x)],
            [Complex64::new(self.y, -self.x), Complex64::new(self.w, self.z)],
        ]
    }

    /// Conjugate transpose (= inverse).
    pub fn adjoint(&self) -> Self {
        Self { w: self.w, x: -self.x, y: -self.y, z: -self.z }
    }

    /// Re(tr U)/2.
    pub fn half_trace(&self) -> f64 {
        self.w / self.quat_norm()
    }

    /// Transition probability `|⟨0|U|1⟩|²` between the two basis states.
    pub fn transition_probability(&self) -> f64 {
        let n2 = self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z;
        (self.x * self.x + self.y * self.y) / n2
    }

    /// `1 - |tr U|/2`, evaluated without cancellation near the identity.
    ///
    /// Uses `1 - |w| = (x² + y² + z²) / (1 + |w|)` on the unit quaternion, so
    /// values down to ~1e-30 keep full relative precision.
    pub fn identity_infidelity(&self) -> f64 {
        let n = self.quat_norm();
        let v2 = self.x * self.x + self.y * self.y + self.z * self.z;
        v2 / (n * (n + self.w.abs()))
    }

    fn quat_norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    fn renormalized(self) -> Self {
        let n = self.quat_norm();
        Self { w: self.w / n, x: self.x / n, y: self.y / n, z: self.z / n }
    }
}

impl std::ops::Mul for Unitary2 {
    type Output = Unitary2;
    fn mul(self, rhs: Unitary2) -> Unitary2 {
        let (aw, ax, ay, az) = (self.w, self.x, self.y, self.z);
        let (bw, bx, by, bz) = (rhs.w, rhs.x, rhs.y, rhs.z);
        Unitary2 {
            w: aw * bw - ax * bx - ay * by - az * bz,
            x: aw * bx + bw * ax + (ay * bz - az * by),
            y: aw * by + bw * ay + (az * bx - ax * bz),
            z: aw * bz + bw * az + (ax * by - ay * bx),
        }
    }
}

/// Rotation in axis-angle normal form, angle on the `[0, 2π]` branch.
#[derive(Clone, Copy, Debug)]
pub struct AxisAngle {
    /// Unit rotation axis; all zeros when `degenerate`.
    pub axis: [f64; 3],
    /// Rotation angle in `[0, 2π]`.
    pub angle: f64,
    /// Set when the gate is `±I` and the axis is undefined.
    pub degenerate: bool,
}

impl AxisAngle {
    /// Azimuth of the axis in the X-Y plane, in `(-π, π]`.
    pub fn azimuth(&self) -> f64 {
        self.axis[1].atan2(self.axis[0])
    }

    pub fn axis_z(&self) -> f64 {
        self.axis[2]
    }
}

/// Principal matrix logarithm of a special unitary.
#[derive(Clone, Copy, Debug)]
pub struct MatrixLog {
    /// Generator vector with `|v| ∈ [0, 2π]`; `expm` of it reproduces the input.
    pub vector: AlgebraVector,
    /// Set at the branch point tr(U)/2 = -1, where any axis is valid.
    pub branch_ambiguous: bool,
}

/// `exp(-i(v·σ)/2)` in closed form, with the `|v| → 0` limit handled exactly.
pub fn expm(v: AlgebraVector) -> Result<Unitary2, Error> {
    if !v.is_finite() {
        return Err(Error::NonFinite("algebra vector"));
    }
    Ok(expm_raw(v))
}

pub(crate) fn expm_raw(v: AlgebraVector) -> Unitary2 {
    let n = v.norm();
    if n == 0.0 {
        return Unitary2::IDENTITY;
    }
    let half = 0.5 * n;
    let s = half.sin() / n;
    Unitary2 { w: half.cos(), x: s * v.x, y: s * v.y, z: s * v.z }
}

/// Inverse of [`expm`] on the `[0, 2π]` angle branch.
///
/// `expm(logm(u).vector)` reproduces `u`. At tr(U)/2 = -1 the axis is a
/// branch point; some axis is returned and `branch_ambiguous` is set.
pub fn logm(u: &Unitary2) -> MatrixLog {
    let u = u.renormalized();
    let vn = (u.x * u.x + u.y * u.y + u.z * u.z).sqrt();
    let angle = 2.0 * vn.atan2(u.w);
    let branch_ambiguous = u.w <= -1.0 + BRANCH_TOL;
    if vn < 1e-300 {
        let vector = if u.w > 0.0 {
            AlgebraVector::ZERO
        } else {
            AlgebraVector::new(TAU, 0.0, 0.0)
        };
        return MatrixLog { vector, branch_ambiguous };
    }
    let f = angle / vn;
    MatrixLog {
        vector: AlgebraVector::new(f * u.x, f * u.y, f * u.z),
        branch_ambiguous,
    }
}

/// Axis-angle normal form with the angle on `[0, 2π]`.
///
/// The angle equals `2·arccos(clamp(tr(U)/2, -1, 1))`; the axis comes from
/// the traceless part and is flagged degenerate when that part has norm
/// below [`DEGENERATE_AXIS_TOL`].
pub fn axis_angle(u: &Unitary2) -> AxisAngle {
    let u = u.renormalized();
    let vn = (u.x * u.x + u.y * u.y + u.z * u.z).sqrt();
    let angle = 2.0 * vn.atan2(u.w);
    if vn < DEGENERATE_AXIS_TOL {
        return AxisAngle { axis: [0.0; 3], angle, degenerate: true };
    }
    AxisAngle {
        axis: [u.x / vn, u.y / vn, u.z / vn],
        angle,
        degenerate: false,
    }
}

/// Similarity transform of a generator: v' with `-i(v'·σ)/2 = R(-i(v·σ)/2)R†`.
///
/// This is the SO(3) image of `v` under `R` and preserves the norm.
pub fn conjugate(v: AlgebraVector, r: &Unitary2) -> AlgebraVector {
    let r = r.renormalized();
    let q = AlgebraVector::new(r.x, r.y, r.z);
    let w = r.w;
    // v' = (w² - |q|²) v + 2(q·v) q + 2w (q × v)
    let a = w * w - q.dot(&q);
    let b = 2.0 * q.dot(&v);
    let cross = q.cross(&v);
    AlgebraVector::new(
        a * v.x + b * q.x + 2.0 * w * cross.x,
        a * v.y + b * q.y + 2.0 * w * cross.y,
        a * v.z + b * q.z + 2.0 * w * cross.z,
    )
}

/// Vector of the commutator `[-i(a·σ)/2, -i(b·σ)/2] = -i((a×b)·σ)/2`.
pub fn commutator(a: AlgebraVector, b: AlgebraVector) -> AlgebraVector {
    a.cross(&b)
}

/// Gate overlap `|tr(U†V)|/2 ∈ [0, 1]`.
pub fn trace_fidelity(u: &Unitary2, v: &Unitary2) -> f64 {
    let d = u.adjoint() * *v;
    d.w.abs() / d.quat_norm()
}
