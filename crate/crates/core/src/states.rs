//! Density operators, state vectors, the Bloch-ball parameterization of a
//! qubit, purification of mixed states, and the l1 coherence measure.
//!
//! Construction is strict: a [`DensityMatrix`] validates Hermiticity, unit
//! trace and positive semidefiniteness eagerly and rejects invalid input
//! instead of normalizing it, so channel bugs surface where they happen.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Tolerance on |Σ|amplitude|² − 1| for state vectors.
pub const STATE_NORM_TOL: f64 = 1e-12;

/// Tolerance shared by the three density-matrix invariants (Hermiticity,
/// unit trace, minimum eigenvalue).
pub const DENSITY_TOL: f64 = 1e-10;

/// Slack allowed on |r|² beyond the unit ball.
pub const BLOCH_BALL_TOL: f64 = 1e-10;

/// Eigenvalues below this are treated as zero Schmidt coefficients when
/// purifying.
pub const SCHMIDT_CUTOFF: f64 = 1e-14;

/// Normalized vector in a finite-dimensional Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Builds a state vector, rejecting non-finite entries and vectors whose
    /// squared norm deviates from one by more than [`STATE_NORM_TOL`].
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }
        let norm_sq: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        let deviation = (norm_sq - 1.0).abs();
        if deviation > STATE_NORM_TOL {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(Self { amplitudes })
    }

    /// Computational basis state |index⟩.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, dim });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Tensor product |self⟩⊗|other⟩ (system-major: self is the slow index).
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        StateVector { amplitudes }
    }

    /// The pure-state density operator |ψ⟩⟨ψ|.
    pub fn density(&self) -> DensityMatrix {
        let d = self.dim();
        let matrix = ComplexMatrix::from_fn(d, d, |i, j| {
            self.amplitudes[i] * self.amplitudes[j].conj()
        });
        // The outer product of a unit vector is exactly Hermitian, has the
        // vector's squared norm as trace and is rank one with a non-negative
        // eigenvalue, so validation cannot fail.
        DensityMatrix::new(matrix).expect("outer product of a unit vector is a valid state")
    }
}

/// Hermitian, unit-trace, positive semidefinite operator describing a
/// (possibly mixed) quantum state.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates all three invariants at [`DENSITY_TOL`] and rejects invalid
    /// input rather than repairing it.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let deviation = matrix.hermiticity_deviation();
        if deviation > DENSITY_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace().expect("square matrix has a trace");
        let trace_deviation = (trace - Complex64::new(1.0, 0.0)).norm();
        if trace_deviation > DENSITY_TOL {
            return Err(Error::TraceNotOne {
                deviation: trace_deviation,
            });
        }
        let eigen = matrix.hermitian_eigen()?;
        let min_eigenvalue = eigen.values.last().copied().unwrap_or(0.0);
        if min_eigenvalue < -DENSITY_TOL {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Maximally mixed state I/d.
    pub fn maximally_mixed(dim: usize) -> Self {
        let matrix = ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0));
        Self { matrix }
    }

    /// The qubit state ½(I + r·σ), written out as
    /// ½[[1+r₃, r₁−ir₂], [r₁+ir₂, 1−r₃]].
    pub fn from_bloch(r: &BlochVector) -> Self {
        let matrix = ComplexMatrix::new(
            2,
            2,
            vec![
                Complex64::new(0.5 * (1.0 + r.r3()), 0.0),
                Complex64::new(0.5 * r.r1(), -0.5 * r.r2()),
                Complex64::new(0.5 * r.r1(), 0.5 * r.r2()),
                Complex64::new(0.5 * (1.0 - r.r3()), 0.0),
            ],
        )
        .expect("finite Bloch components");
        // Hermitian by construction, trace exactly one up to a rounding unit,
        // and min eigenvalue (1−|r|)/2 ≥ −BLOCH_BALL_TOL/2.
        Self { matrix }
    }

    /// The Bloch polarizations r_j = Tr(ρ·σ_j) of a qubit state.
    pub fn to_bloch(&self) -> Result<BlochVector> {
        if self.dim() != 2 {
            return Err(Error::NotAQubit { dim: self.dim() });
        }
        let [sx, sy, sz] = ComplexMatrix::paulis();
        let component = |sigma: &ComplexMatrix| -> f64 {
            self.matrix
                .matmul(sigma)
                .expect("2x2 product")
                .trace()
                .expect("square")
                .re
        };
        BlochVector::new(component(&sx), component(&sy), component(&sz))
    }

    /// Sum of the moduli of all off-diagonal entries in the computational
    /// basis (the l1 coherence measure).
    pub fn coherence_l1(&self) -> f64 {
        let d = self.dim();
        let mut sum = 0.0;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    sum += self.matrix.get(i, j).norm();
                }
            }
        }
        sum
    }

    /// Purifies a mixed state on a d-dimensional space into a pure state on
    /// d², pairing eigenvectors (sorted by descending eigenvalue) with
    /// computational basis vectors of the auxiliary factor:
    /// |E₀⟩ = Σ_j √a_j |a_j⟩⊗|j⟩. Tracing out the auxiliary factor recovers
    /// the input.
    pub fn purify(&self) -> Result<StateVector> {
        let d = self.dim();
        let eigen = self.matrix.hermitian_eigen()?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); d * d];
        for (j, &a_j) in eigen.values.iter().enumerate() {
            if a_j < SCHMIDT_CUTOFF {
                continue;
            }
            let weight = a_j.sqrt();
            for k in 0..d {
                // |a_j⟩ ⊗ |j⟩ has its k-th system component at index k·d + j.
                amplitudes[k * d + j] += eigen.vectors.get(k, j).scale(weight);
            }
        }
        // Dropped Schmidt coefficients and the trace tolerance leave the norm
        // within ~1e-10 of one; renormalize so the output is a valid state.
        let norm: f64 = amplitudes
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        let amplitudes = amplitudes
            .into_iter()
            .map(|z| z / norm)
            .collect();
        StateVector::new(amplitudes)
    }
}

/// The three real polarizations (r₁, r₂, r₃) of a qubit state; constrained
/// to the closed unit ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    r1: f64,
    r2: f64,
    r3: f64,
}

impl BlochVector {
    pub fn new(r1: f64, r2: f64, r3: f64) -> Result<Self> {
        if !(r1.is_finite() && r2.is_finite() && r3.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sq = r1 * r1 + r2 * r2 + r3 * r3;
        if norm_sq > 1.0 + BLOCH_BALL_TOL {
            return Err(Error::OutsideBlochBall { norm_sq });
        }
        Ok(Self { r1, r2, r3 })
    }

    /// Spherical parameterization r(sinθcosφ, sinθsinφ, cosθ) with radius
    /// r ∈ [0, 1].
    pub fn from_spherical(r: f64, theta: f64, phi: f64) -> Result<Self> {
        if !r.is_finite() || !(0.0..=1.0 + 1e-12).contains(&r) {
            return Err(Error::RadiusOutOfRange { r });
        }
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::NonFinite);
        }
        Self::new(
            r * theta.sin() * phi.cos(),
            r * theta.sin() * phi.sin(),
            r * theta.cos(),
        )
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn r3(&self) -> f64 {
        self.r3
    }

    pub fn norm(&self) -> f64 {
        (self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3).sqrt()
    }

    /// Distance to another Bloch vector in the max (per-component) sense.
    pub fn max_component_diff(&self, other: &BlochVector) -> f64 {
        (self.r1 - other.r1)
            .abs()
            .max((self.r2 - other.r2).abs())
            .max((self.r3 - other.r3).abs())
    }
}
