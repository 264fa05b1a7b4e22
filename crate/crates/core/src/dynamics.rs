//! Time-parameterized amplitude-damping trajectories.
//!
//! Physical time enters through p = 1 − e^{−γt}. Every trajectory point is
//! computed through the Kraus channel machinery and cross-checked against
//! the closed-form Bloch evolution (r₁√(1−p), r₂√(1−p), p + r₃(1−p)), so
//! the channel path is exercised on every sample and the closed form acts
//! as the independent check.

use num_complex::Complex64;

use crate::channels::KrausChannel;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::{BlochVector, DensityMatrix};

/// Agreement demanded between the channel path and the closed form.
pub const CLOSED_FORM_TOL: f64 = 1e-12;

/// Largest p produced from finite time, keeping √(1−p) away from √ of a
/// negative round-off.
const P_CEILING: f64 = 1.0 - 1e-15;

/// Decay rate, time horizon and sample count for a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayParams {
    gamma: f64,
    t_max: f64,
    samples: usize,
}

impl DecayParams {
    pub fn new(gamma: f64, t_max: f64, samples: usize) -> Result<Self> {
        if !gamma.is_finite() || gamma <= 0.0 {
            return Err(Error::InvalidDecayRate { gamma });
        }
        if !t_max.is_finite() || t_max < 0.0 {
            return Err(Error::NegativeTime { t: t_max });
        }
        if samples < 2 {
            return Err(Error::TooFewSamples { samples, needed: 2 });
        }
        Ok(Self {
            gamma,
            t_max,
            samples,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn samples(&self) -> usize {
        self.samples
    }
}

/// One sample of an evolving qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryPoint {
    pub t: f64,
    pub p: f64,
    pub bloch: BlochVector,
    pub coherence: f64,
}

/// The parametrized time p = 1 − e^{−γt}, clamped just below one.
pub fn parametrized_time(gamma: f64, t: f64) -> Result<f64> {
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(Error::InvalidDecayRate { gamma });
    }
    if !t.is_finite() || t < 0.0 {
        return Err(Error::NegativeTime { t });
    }
    Ok((1.0 - (-gamma * t).exp()).min(P_CEILING))
}

/// Closed-form amplitude-damping evolution of a Bloch vector.
pub fn evolve_bloch(r: &BlochVector, p: f64) -> Result<BlochVector> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityOutOfRange { p });
    }
    let damp = (1.0 - p).sqrt();
    BlochVector::new(r.r1() * damp, r.r2() * damp, p + r.r3() * (1.0 - p))
}

/// Coherence decay law C(p) = √(1−p)·C(0).
pub fn coherence_decay(c0: f64, p: f64) -> Result<f64> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityOutOfRange { p });
    }
    Ok((1.0 - p).sqrt() * c0)
}

/// Trajectory on a uniform time grid over [0, t_max].
pub fn trajectory(initial: &BlochVector, params: &DecayParams) -> Result<Vec<TrajectoryPoint>> {
    let n = params.samples();
    let mut points = Vec::with_capacity(n);
    for i in 0..n {
        let t = params.t_max() * i as f64 / (n - 1) as f64;
        let p = parametrized_time(params.gamma(), t)?;
        points.push(evolve_point(initial, t, p)?);
    }
    Ok(points)
}

/// Trajectory on a uniform p grid over [0, 1]; time is recovered as
/// t = −ln(1−p)/γ, which is +∞ at the p = 1 endpoint.
pub fn trajectory_over_p(
    initial: &BlochVector,
    gamma: f64,
    samples: usize,
) -> Result<Vec<TrajectoryPoint>> {
    if !gamma.is_finite() || gamma <= 0.0 {
        return Err(Error::InvalidDecayRate { gamma });
    }
    if samples < 2 {
        return Err(Error::TooFewSamples {
            samples,
            needed: 2,
        });
    }
    let mut points = Vec::with_capacity(samples);
    for i in 0..samples {
        let p = i as f64 / (samples - 1) as f64;
        let t = -(1.0 - p).ln() / gamma;
        points.push(evolve_point(initial, t, p)?);
    }
    Ok(points)
}

/// Residual of the Pauli conjugation identities of the amplitude-damping
/// channel: Σ_j K_j σ_k K_j† = (√(1−p))^{1+δ₃ₖ} σ_k together with
/// Σ_j K_j K_j† = I + p·σ₃. Returns the larger of the two max-entry
/// residuals.
pub fn pauli_conjugation_residual(p: f64, axis: usize) -> Result<f64> {
    if !(1..=3).contains(&axis) {
        return Err(Error::InvalidPauliAxis { axis });
    }
    let channel = KrausChannel::amplitude_damping(p)?;
    let sigma = &ComplexMatrix::paulis()[axis - 1];

    let conjugated = sum_conjugations(&channel, Some(sigma));
    let exponent = if axis == 3 { 2 } else { 1 };
    let factor = (1.0 - p).sqrt().powi(exponent);
    let sigma_residual = conjugated.max_abs_diff(&sigma.scale(Complex64::new(factor, 0.0)));

    let kk = sum_conjugations(&channel, None);
    let expected = ComplexMatrix::identity(2)
        .add(&ComplexMatrix::pauli_z().scale(Complex64::new(p, 0.0)));
    let kk_residual = kk.max_abs_diff(&expected);

    Ok(sigma_residual.max(kk_residual))
}

/// Σ_j K_j·M·K_j† (or Σ_j K_j·K_j† when no middle factor is given).
fn sum_conjugations(channel: &KrausChannel, middle: Option<&ComplexMatrix>) -> ComplexMatrix {
    let d = channel.d_s();
    let mut acc = ComplexMatrix::zeros(d, d);
    for k in channel.operators() {
        let term = match middle {
            Some(m) => k
                .matmul(m)
                .expect("square factors")
                .matmul(&k.dagger())
                .expect("square factors"),
            None => k.matmul(&k.dagger()).expect("square factors"),
        };
        acc = acc.add(&term);
    }
    acc
}

fn evolve_point(initial: &BlochVector, t: f64, p: f64) -> Result<TrajectoryPoint> {
    let channel = KrausChannel::amplitude_damping(p)?;
    let evolved = channel.apply(&DensityMatrix::from_bloch(initial))?;
    let bloch = evolved.to_bloch()?;
    let closed_form = evolve_bloch(initial, p)?;
    let residual = bloch.max_component_diff(&closed_form);
    if residual > CLOSED_FORM_TOL {
        return Err(Error::CrossCheckFailed {
            what: "closed-form Bloch evolution",
            residual,
        });
    }
    Ok(TrajectoryPoint {
        t,
        p,
        bloch,
        coherence: evolved.coherence_l1(),
    })
}
