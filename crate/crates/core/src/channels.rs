//! Quantum channels in the operator-sum representation.
//!
//! A channel comes from a dilation: a joint unitary U on system⊗environment
//! and an environment prepared in a basis state |E_e⟩. Its Kraus operators
//! are read off entrywise as ⟨S_k|K_l|S_m⟩ = ⟨S_k E_l|U|S_m E_e⟩, and the
//! reduced dynamics is ρ ↦ Σ_l K_l ρ K_l†. Tracing the environment out of
//! the full unitary evolution gives the same map and serves as the
//! brute-force oracle throughout the tests.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::sample;
use crate::states::DensityMatrix;

/// Max entrywise residual of U†U − I accepted for a joint unitary.
pub const UNITARITY_TOL: f64 = 1e-10;

/// Max entrywise residual of ΣK†K − I accepted for a channel.
pub const COMPLETENESS_TOL: f64 = 1e-10;

/// Operators with squared Frobenius norm below this are dropped where
/// channels are assembled from analytic forms or reductions.
pub const NULL_OPERATOR_TOL: f64 = 1e-12;

/// Gram-matrix eigenvalues above this count towards the rank.
pub const GRAM_RANK_TOL: f64 = 1e-10;

/// Seed for the deterministic sampling done by [`KrausChannel::verify`].
const VERIFY_SEED: u64 = 0x4b72_6175_73;

/// Unitary on a system⊗environment space with declared factor dimensions.
///
/// Basis ordering is system-major: |S_k E_l⟩ sits at index k·d_a + l.
#[derive(Debug, Clone, PartialEq)]
pub struct JointUnitary {
    matrix: ComplexMatrix,
    d_s: usize,
    d_a: usize,
}

impl JointUnitary {
    /// Validates the factor dimensions and unitarity at [`UNITARITY_TOL`].
    pub fn new(matrix: ComplexMatrix, d_s: usize, d_a: usize) -> Result<Self> {
        if d_s == 0 || d_a == 0 || !matrix.is_square() || matrix.rows() != d_s * d_a {
            return Err(Error::CompositeSideMismatch {
                side: matrix.rows(),
                d_s,
                d_a,
            });
        }
        let residual = matrix.unitarity_residual();
        if residual > UNITARITY_TOL {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self { matrix, d_s, d_a })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn d_s(&self) -> usize {
        self.d_s
    }

    pub fn d_a(&self) -> usize {
        self.d_a
    }

    /// The amplitude-damping dilation on qubit⊗qubit:
    /// U|S₀E₀⟩ = |S₀E₀⟩ and U|S₁E₀⟩ = √(1−p)|S₁E₀⟩ + √p|S₀E₁⟩.
    ///
    /// Only the E₀ columns matter for extraction; the remaining two are
    /// completed with U|S₀E₁⟩ = −√p|S₁E₀⟩ + √(1−p)|S₀E₁⟩ and
    /// U|S₁E₁⟩ = |S₁E₁⟩, a real-valued completion whose orthogonality is
    /// checkable by hand.
    pub fn amplitude_damping(p: f64) -> Result<Self> {
        check_probability(p)?;
        let damp = (1.0 - p).sqrt();
        let hop = p.sqrt();
        let mut m = ComplexMatrix::zeros(4, 4);
        m.set(0, 0, Complex64::new(1.0, 0.0));
        m.set(2, 2, Complex64::new(damp, 0.0));
        m.set(1, 2, Complex64::new(hop, 0.0));
        m.set(2, 1, Complex64::new(-hop, 0.0));
        m.set(1, 1, Complex64::new(damp, 0.0));
        m.set(3, 3, Complex64::new(1.0, 0.0));
        Self::new(m, 2, 2)
    }

    /// Evolves ρ through the full dilation and traces out the environment:
    /// Tr_A(U·(ρ⊗|E_e⟩⟨E_e|)·U†). This is the oracle that extracted channels
    /// are checked against.
    pub fn evolve(&self, rho: &DensityMatrix, env_init: usize) -> Result<DensityMatrix> {
        if rho.dim() != self.d_s {
            return Err(Error::ShapeMismatch {
                op: "evolve",
                lhs: (self.d_s, self.d_s),
                rhs: (rho.dim(), rho.dim()),
            });
        }
        if env_init >= self.d_a {
            return Err(Error::IndexOutOfRange {
                index: env_init,
                dim: self.d_a,
            });
        }
        let projector = ComplexMatrix::from_fn(self.d_a, self.d_a, |i, j| {
            if i == env_init && j == env_init {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let joint = rho.matrix().kron(&projector);
        let evolved = self
            .matrix
            .matmul(&joint)?
            .matmul(&self.matrix.dagger())?;
        let reduced = evolved.partial_trace_env(self.d_s, self.d_a)?;
        DensityMatrix::new(reduced)
    }

    /// Post-composes a unitary v on the environment: U' = (I_S ⊗ v)·U.
    ///
    /// Extracting U' is the same as remixing the extraction of U by v.
    pub fn compose_env(&self, v: &ComplexMatrix) -> Result<JointUnitary> {
        if v.rows() != self.d_a || v.cols() != self.d_a {
            return Err(Error::ShapeMismatch {
                op: "compose_env",
                lhs: (self.d_a, self.d_a),
                rhs: (v.rows(), v.cols()),
            });
        }
        let residual = v.unitarity_residual();
        if residual > UNITARITY_TOL {
            return Err(Error::NotUnitary { residual });
        }
        let composed = ComplexMatrix::identity(self.d_s).kron(v).matmul(&self.matrix)?;
        JointUnitary::new(composed, self.d_s, self.d_a)
    }
}

/// Ordered set of Kraus operators satisfying the completeness relation
/// ΣK†K = I within [`COMPLETENESS_TOL`].
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    d_s: usize,
    operators: Vec<ComplexMatrix>,
}

/// Diagnostics of a (possibly broken) operator set; see [`diagnose`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelReport {
    /// Max entrywise |ΣK†K − I|.
    pub completeness_residual: f64,
    /// Max |Tr(output) − 1| over the sampled input states.
    pub trace_deviation_max: f64,
    /// Smallest output eigenvalue seen over the sampled input states.
    pub min_output_eigenvalue: f64,
    pub operator_count: usize,
    /// Number of Gram-matrix eigenvalues above [`GRAM_RANK_TOL`].
    pub gram_rank: usize,
}

impl KrausChannel {
    /// Validates shapes, finiteness and the completeness relation. Operators
    /// are kept exactly as given, zero operators included.
    pub fn new(d_s: usize, operators: Vec<ComplexMatrix>) -> Result<Self> {
        if d_s == 0 {
            return Err(Error::ZeroDimension);
        }
        if operators.is_empty() {
            return Err(Error::EmptyChannel);
        }
        for (index, op) in operators.iter().enumerate() {
            if op.rows() != d_s || op.cols() != d_s {
                return Err(Error::OperatorShape {
                    index,
                    rows: op.rows(),
                    cols: op.cols(),
                    d_s,
                });
            }
            if op.data().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::NonFinite);
            }
        }
        let residual = completeness_residual(d_s, &operators);
        if residual > COMPLETENESS_TOL {
            return Err(Error::IncompleteKraus { residual });
        }
        Ok(Self { d_s, operators })
    }

    /// The do-nothing channel {I_d}.
    pub fn identity(d_s: usize) -> Self {
        Self {
            d_s,
            operators: vec![ComplexMatrix::identity(d_s)],
        }
    }

    /// The amplitude-damping Kraus pair K₀ = [[1,0],[0,√(1−p)]],
    /// K₁ = [[0,√p],[0,0]], with null operators dropped (p = 0 leaves only
    /// the identity).
    pub fn amplitude_damping(p: f64) -> Result<Self> {
        check_probability(p)?;
        let damp = (1.0 - p).sqrt();
        let hop = p.sqrt();
        let zero = Complex64::new(0.0, 0.0);
        let k0 = ComplexMatrix::new(
            2,
            2,
            vec![Complex64::new(1.0, 0.0), zero, zero, Complex64::new(damp, 0.0)],
        )
        .expect("finite entries");
        let k1 = ComplexMatrix::new(
            2,
            2,
            vec![zero, Complex64::new(hop, 0.0), zero, zero],
        )
        .expect("finite entries");
        let operators = drop_null_operators(vec![k0, k1]);
        Self::new(2, operators)
    }

    /// Reads the Kraus operators off a joint unitary for the environment
    /// prepared in the basis state |E_{env_init}⟩: operator l has entry
    /// (k,m) = U(k·d_a + l, m·d_a + env_init).
    ///
    /// Returns exactly d_a operators (zero operators included). Completeness
    /// is asserted post-hoc rather than assumed: a violation signals a
    /// non-unitary input or an ordering bug and comes back as an error.
    pub fn extract(u: &JointUnitary, env_init: usize) -> Result<Self> {
        if env_init >= u.d_a() {
            return Err(Error::IndexOutOfRange {
                index: env_init,
                dim: u.d_a(),
            });
        }
        let d_s = u.d_s();
        let d_a = u.d_a();
        let operators: Vec<ComplexMatrix> = (0..d_a)
            .map(|l| {
                ComplexMatrix::from_fn(d_s, d_s, |k, m| {
                    u.matrix().get(k * d_a + l, m * d_a + env_init)
                })
            })
            .collect();
        Self::new(d_s, operators)
    }

    /// Extraction for an environment prepared in a mixed state: the state is
    /// purified into an enlarged environment A'⊗A'', the purification is
    /// rotated onto the first basis vector, and the ordinary extraction runs
    /// on kron(U, I)·(I_S ⊗ T) with env_init = 0.
    pub fn extract_with_env_state(u: &JointUnitary, env_state: &DensityMatrix) -> Result<Self> {
        if env_state.dim() != u.d_a() {
            return Err(Error::ShapeMismatch {
                op: "extract_with_env_state",
                lhs: (u.d_a(), u.d_a()),
                rhs: (env_state.dim(), env_state.dim()),
            });
        }
        let d_a = u.d_a();
        let purified = env_state.purify()?;
        let basis_change = unitary_with_first_column(purified.amplitudes());
        let enlarged = u
            .matrix()
            .kron(&ComplexMatrix::identity(d_a))
            .matmul(&ComplexMatrix::identity(u.d_s()).kron(&basis_change))?;
        let enlarged = JointUnitary::new(enlarged, u.d_s(), d_a * d_a)?;
        Self::extract(&enlarged, 0)
    }

    pub fn d_s(&self) -> usize {
        self.d_s
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn operator_count(&self) -> usize {
        self.operators.len()
    }

    /// Max entrywise |ΣK†K − I|.
    pub fn completeness_residual(&self) -> f64 {
        completeness_residual(self.d_s, &self.operators)
    }

    /// Copy of the channel with operators of squared Frobenius norm below
    /// [`NULL_OPERATOR_TOL`] removed. Dropping null operators does not
    /// change the action or the completeness sum.
    pub fn without_null_operators(&self) -> KrausChannel {
        KrausChannel {
            d_s: self.d_s,
            operators: drop_null_operators(self.operators.clone()),
        }
    }

    /// The operator-sum map ρ ↦ Σ_l K_l ρ K_l†. The output is validated as a
    /// density matrix, so trace preservation and positivity are enforced,
    /// not presumed.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.d_s {
            return Err(Error::ShapeMismatch {
                op: "apply",
                lhs: (self.d_s, self.d_s),
                rhs: (rho.dim(), rho.dim()),
            });
        }
        DensityMatrix::new(apply_raw(&self.operators, rho.matrix()))
    }

    /// Rewrites the operator set through a unitary matrix of coefficients:
    /// K'_l = Σ_n v(l,n)·K_n. The channel action is unchanged.
    pub fn remix(&self, v: &ComplexMatrix) -> Result<Self> {
        let n = self.operator_count();
        if v.rows() != n || v.cols() != n {
            return Err(Error::RemixShape {
                side: v.rows(),
                operator_count: n,
            });
        }
        let residual = v.unitarity_residual();
        if residual > UNITARITY_TOL {
            return Err(Error::NotUnitary { residual });
        }
        let operators = (0..n)
            .map(|l| {
                let mut acc = ComplexMatrix::zeros(self.d_s, self.d_s);
                for (idx, op) in self.operators.iter().enumerate() {
                    acc = acc.add(&op.scale(v.get(l, idx)));
                }
                acc
            })
            .collect();
        Self::new(self.d_s, operators)
    }

    /// Gram matrix W_lm = Tr(K_l†·K_m); Hermitian, positive semidefinite,
    /// with Tr(W) = d_s by completeness.
    pub fn gram_matrix(&self) -> ComplexMatrix {
        let n = self.operator_count();
        ComplexMatrix::from_fn(n, n, |l, m| {
            self.operators[l]
                .dagger()
                .matmul(&self.operators[m])
                .expect("same-shape operators")
                .trace()
                .expect("square")
        })
    }

    /// Compresses the operator set to at most d_s² elements by diagonalizing
    /// the Gram matrix: K'_j = Σ_m V(m,j)·K_m for eigenvector columns V,
    /// dropping combinations with Tr(K'†K') below [`NULL_OPERATOR_TOL`].
    /// The channel action is unchanged.
    pub fn reduce(&self) -> Result<Self> {
        let eigen = self.gram_matrix().hermitian_eigen()?;
        let n = self.operator_count();
        let mut kept = Vec::new();
        for j in 0..n {
            let mut combined = ComplexMatrix::zeros(self.d_s, self.d_s);
            for (m, op) in self.operators.iter().enumerate() {
                combined = combined.add(&op.scale(eigen.vectors.get(m, j)));
            }
            let weight = combined
                .dagger()
                .matmul(&combined)
                .expect("square")
                .trace()
                .expect("square")
                .re;
            if weight >= NULL_OPERATOR_TOL {
                kept.push(combined);
            }
        }
        Self::new(self.d_s, kept)
    }

    /// Smoke-checks the channel on deterministic pseudo-random input states;
    /// see [`diagnose`].
    pub fn verify(&self, samples: usize) -> ChannelReport {
        diagnose(self.d_s, &self.operators, samples).expect("operators already validated")
    }
}

/// Runs the CPTP diagnostics on a raw operator list, which — unlike
/// [`KrausChannel`] — is allowed to violate completeness. This is what makes
/// deliberately broken sets reportable instead of unrepresentable.
///
/// `samples` random input states (Gaussian Gram construction, fixed seed)
/// feed the trace-deviation and output-eigenvalue scans; at least one sample
/// is always drawn.
pub fn diagnose(d_s: usize, operators: &[ComplexMatrix], samples: usize) -> Result<ChannelReport> {
    if d_s == 0 {
        return Err(Error::ZeroDimension);
    }
    if operators.is_empty() {
        return Err(Error::EmptyChannel);
    }
    for (index, op) in operators.iter().enumerate() {
        if op.rows() != d_s || op.cols() != d_s {
            return Err(Error::OperatorShape {
                index,
                rows: op.rows(),
                cols: op.cols(),
                d_s,
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(VERIFY_SEED);
    let mut trace_deviation_max: f64 = 0.0;
    let mut min_output_eigenvalue = f64::INFINITY;
    for _ in 0..samples.max(1) {
        let rho = sample::density(d_s, &mut rng);
        let out = apply_raw(operators, rho.matrix());
        let trace = out.trace().expect("square");
        trace_deviation_max =
            trace_deviation_max.max((trace - Complex64::new(1.0, 0.0)).norm());
        let eigen = out.hermitian_eigen()?;
        min_output_eigenvalue =
            min_output_eigenvalue.min(eigen.values.last().copied().unwrap_or(0.0));
    }

    let n = operators.len();
    let gram = ComplexMatrix::from_fn(n, n, |l, m| {
        operators[l]
            .dagger()
            .matmul(&operators[m])
            .expect("same-shape operators")
            .trace()
            .expect("square")
    });
    let gram_rank = gram
        .hermitian_eigen()?
        .values
        .iter()
        .filter(|&&v| v > GRAM_RANK_TOL)
        .count();

    Ok(ChannelReport {
        completeness_residual: completeness_residual(d_s, operators),
        trace_deviation_max,
        min_output_eigenvalue,
        operator_count: n,
        gram_rank,
    })
}

fn check_probability(p: f64) -> Result<()> {
    if !p.is_finite() || !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityOutOfRange { p });
    }
    Ok(())
}

fn completeness_residual(d_s: usize, operators: &[ComplexMatrix]) -> f64 {
    let mut sum = ComplexMatrix::zeros(d_s, d_s);
    for op in operators {
        sum = sum.add(&op.dagger().matmul(op).expect("square operator"));
    }
    sum.max_abs_diff(&ComplexMatrix::identity(d_s))
}

fn apply_raw(operators: &[ComplexMatrix], rho: &ComplexMatrix) -> ComplexMatrix {
    let d = rho.rows();
    let mut out = ComplexMatrix::zeros(d, d);
    for op in operators {
        let term = op
            .matmul(rho)
            .expect("operator matches state dimension")
            .matmul(&op.dagger())
            .expect("square");
        out = out.add(&term);
    }
    out
}

fn drop_null_operators(operators: Vec<ComplexMatrix>) -> Vec<ComplexMatrix> {
    operators
        .into_iter()
        .filter(|op| {
            let norm_sq: f64 = op.data().iter().map(|z| z.norm_sqr()).sum();
            norm_sq >= NULL_OPERATOR_TOL
        })
        .collect()
}

/// Deterministic unitary completion: the first column is the given unit
/// vector, the rest come from Gram-Schmidt over the computational basis.
fn unitary_with_first_column(first: &[Complex64]) -> ComplexMatrix {
    let n = first.len();
    let mut columns: Vec<Vec<Complex64>> = vec![first.to_vec()];
    for candidate in 0..n {
        if columns.len() == n {
            break;
        }
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        w[candidate] = Complex64::new(1.0, 0.0);
        for _ in 0..2 {
            for col in &columns {
                let overlap: Complex64 =
                    col.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
                for k in 0..n {
                    let correction = col[k] * overlap;
                    w[k] -= correction;
                }
            }
        }
        let norm: f64 = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for z in &mut w {
                *z /= norm;
            }
            columns.push(w);
        }
    }
    ComplexMatrix::from_fn(n, n, |i, j| columns[j][i])
}
