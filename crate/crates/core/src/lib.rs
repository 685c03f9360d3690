//! Narrowband composite pulse sequences for selective single-qubit
//! addressing.
//!
//! A narrowband sequence applies its target gate at full drive strength
//! while approximating the identity on neighbors illuminated at a fraction
//! `ε` of the addressed Rabi frequency. This crate implements the SK1 seed
//! family, its axis-dilated generalization ASK1, and the five-pulse TASK1
//! construction that restores an arbitrary in-plane target gate, together
//! with the constrained optimization that picks time-minimal (`T_min`) and
//! error-minimal (`E_min`) scale parameters, and the simulation of
//! addressing errors over drive strength and ion position.
//!
//! Layout:
//!
//! * [`su2`] — quaternion-backed SU(2)/su(2) arithmetic.
//! * [`pulse`] — pulses, sequences, propagators, the `F_1`/`F_2` closure
//!   functionals, and error-scaling diagnostics.
//! * [`families`] — SK1/ASK1/TASK1 constructors and the embedded reference
//!   table of optimized sequences.
//! * [`optimizer`] — the `(λx, λy)` constraint curve, the two subfamily
//!   optimizations, and contour-grid evaluation.
//! * [`addressing`] — neighbor-qubit inversion sweeps over drive strength
//!   and ion position.
//! * [`seqfile`] — the on-disk sequence document format.
//! * [`verify`] — self-check against the reference table.
//!
//! Sweeps, grids, and the self-check parallelize with rayon by default; the
//! `parallel` feature can be disabled for a strictly sequential build.

pub mod addressing;
pub mod error;
mod exec;
pub mod families;
pub mod numfmt;
pub mod optimizer;
pub mod pulse;
pub mod seqfile;
pub mod su2;
pub mod verify;

pub use error::Error;
pub use families::{ask1, sk1, task1, Subfamily, Task1Params};
pub use pulse::{Pulse, PulseSequence, Target};
pub use su2::{AlgebraVector, AxisAngle, Unitary2};
