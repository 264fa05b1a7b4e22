//! Open quantum system dynamics in the Kraus operator-sum representation.
//!
//! The crate simulates a system S coupled to an environment A: a joint
//! unitary on S⊗A, an environment prepared in a basis (or purified mixed)
//! state, and the reduced dynamics ρ ↦ Σ_l K_l ρ K_l† obtained by tracing
//! the environment out. On top of that sit the amplitude-damping channel of
//! a two-level atom in the electromagnetic vacuum and the decay of its
//! quantum coherence along Bloch-sphere trajectories.

pub mod channels;
pub mod dynamics;
pub mod error;
pub mod linalg;
pub mod sample;
pub mod states;

pub use channels::{ChannelReport, JointUnitary, KrausChannel};
pub use dynamics::{DecayParams, TrajectoryPoint};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, HermitianEigen};
pub use states::{BlochVector, DensityMatrix, StateVector};

pub use num_complex::Complex64;
