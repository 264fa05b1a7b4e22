//! Dense complex linear algebra for the small matrices this crate works with.
//!
//! Storage is plain row-major `Vec<Complex64>`. Composite-space indexing is
//! system-major throughout: the product basis vector |S_k E_l⟩ of a
//! d_s·d_a-dimensional space sits at index `k * d_a + l`, which is exactly
//! what `kron(system, environment)` produces and what `partial_trace_env`
//! expects. Every operation is a pure function; values are immutable once
//! built and freely shareable across threads.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Max entrywise deviation from the conjugate transpose accepted by
/// [`ComplexMatrix::hermitian_eigen`].
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this
/// fraction of the input norm.
const JACOBI_REL_TOL: f64 = 1e-12;

/// Hard cap on Jacobi sweeps; reached only on pathological input.
const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

/// Eigendecomposition of a Hermitian matrix: `a · vectors ≈ vectors · diag(values)`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Real eigenvalues sorted in descending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose k-th column is the eigenvector for `values[k]`.
    pub vectors: ComplexMatrix,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major data, rejecting length mismatches and
    /// non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ZeroDimension);
        }
        if data.len() != rows * cols {
            return Err(Error::DataLength {
                expected: rows * cols,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = ONE;
        }
        m
    }

    /// Builds a matrix entry by entry. The closure must return finite values.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Diagonal square matrix with the given real entries.
    pub fn diagonal(entries: &[f64]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(entries[i], 0.0)
            } else {
                ZERO
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        self.data[row * self.cols + col] = value;
    }

    /// Row-major entries.
    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    /// Standard matrix product.
    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                op: "matmul",
                lhs: (self.rows, self.cols),
                rhs: (other.rows, other.cols),
            });
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a_ik = self.data[i * self.cols + k];
                if a_ik == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a_ik * other.data[k * other.cols + j];
                }
            }
        }
        Ok(out)
    }

    /// Conjugate transpose A†.
    pub fn dagger(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Tensor (Kronecker) product with system-major ordering: entry
    /// ((i·b.rows + k), (j·b.cols + l)) = a(i,j)·b(k,l).
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = ComplexMatrix::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a_ij = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * cols + (j * other.cols + l)] =
                            a_ij * other.get(k, l);
                    }
                }
            }
        }
        out
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok((0..self.rows).map(|i| self.data[i * self.cols + i]).sum())
    }

    /// Traces out the environment factor of a system⊗environment operator.
    ///
    /// With the system-major convention the composite index is k·d_a + l for
    /// |S_k E_l⟩, so the reduced entry is (k,m) ↦ Σ_l M(k·d_a + l, m·d_a + l).
    pub fn partial_trace_env(&self, d_s: usize, d_a: usize) -> Result<ComplexMatrix> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if d_s == 0 || d_a == 0 || self.rows != d_s * d_a {
            return Err(Error::CompositeSideMismatch {
                side: self.rows,
                d_s,
                d_a,
            });
        }
        Ok(ComplexMatrix::from_fn(d_s, d_s, |k, m| {
            (0..d_a)
                .map(|l| self.get(k * d_a + l, m * d_a + l))
                .sum()
        }))
    }

    /// True iff max entrywise |A†A − I| ≤ tol. Non-square matrices are never
    /// unitary here.
    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square() && self.unitarity_residual() <= tol
    }

    /// Max entrywise |A†A − I| (requires a square matrix).
    pub fn unitarity_residual(&self) -> f64 {
        let product = self
            .dagger()
            .matmul(self)
            .expect("square matrix times its adjoint");
        product.max_abs_diff(&ComplexMatrix::identity(self.rows))
    }

    /// Entrywise sum (panics on shape mismatch; this is an internal
    /// convenience, not a validated operation).
    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in add"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Entrywise difference (panics on shape mismatch).
    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in sub"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise |a − b| (panics on shape mismatch).
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "shape mismatch in max_abs_diff"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max entrywise deviation from the conjugate transpose.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    pub fn pauli_x() -> ComplexMatrix {
        ComplexMatrix {
            rows: 2,
            cols: 2,
            data: vec![ZERO, ONE, ONE, ZERO],
        }
    }

    pub fn pauli_y() -> ComplexMatrix {
        ComplexMatrix {
            rows: 2,
            cols: 2,
            data: vec![
                ZERO,
                Complex64::new(0.0, -1.0),
                Complex64::new(0.0, 1.0),
                ZERO,
            ],
        }
    }

    pub fn pauli_z() -> ComplexMatrix {
        ComplexMatrix {
            rows: 2,
            cols: 2,
            data: vec![ONE, ZERO, ZERO, Complex64::new(-1.0, 0.0)],
        }
    }

    /// The three Pauli matrices in the order σ₁, σ₂, σ₃.
    pub fn paulis() -> [ComplexMatrix; 3] {
        [Self::pauli_x(), Self::pauli_y(), Self::pauli_z()]
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
    /// rotations.
    ///
    /// The input must be Hermitian within [`HERMITICITY_TOL`] (max entrywise
    /// deviation from its adjoint). Returns eigenvalues sorted descending and
    /// a unitary eigenvector matrix satisfying
    /// ‖A·V − V·Λ‖_F ≤ 1e-10·max(1, ‖A‖_F).
    pub fn hermitian_eigen(&self) -> Result<HermitianEigen> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let deviation = self.hermiticity_deviation();
        if deviation > HERMITICITY_TOL {
            return Err(Error::NotHermitian { deviation });
        }

        let n = self.rows;
        // Work on the exactly Hermitian part (A + A†)/2 so the rotations see
        // real diagonals; within the tolerance above this changes nothing
        // beyond round-off.
        let mut a = self.add(&self.dagger()).scale(Complex64::new(0.5, 0.0));
        let mut v = ComplexMatrix::identity(n);

        let threshold = JACOBI_REL_TOL * a.frobenius_norm();
        let mut converged = off_diagonal_norm(&a) <= threshold;
        let mut sweeps = 0;
        while !converged && sweeps < JACOBI_MAX_SWEEPS {
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut a, &mut v, p, q);
                }
            }
            sweeps += 1;
            converged = off_diagonal_norm(&a) <= threshold;
        }
        if !converged {
            return Err(Error::EigenDidNotConverge {
                sweeps,
                off_diagonal: off_diagonal_norm(&a),
            });
        }

        let mut order: Vec<usize> = (0..n).collect();
        let diag: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
        order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).expect("finite eigenvalues"));

        let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
        let vectors = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));
        Ok(HermitianEigen { values, vectors })
    }
}

/// Frobenius norm of the strictly off-diagonal part.
fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation zeroing the (p,q) entry of the Hermitian
/// working matrix `a`, accumulating the rotation into `v`.
///
/// With β = a_pq = |β|e^{iφ}, α = a_pp, γ = a_qq the rotation is
/// U = [[c, −s·e^{iφ}], [s·e^{−iφ}, c]] on the (p,q) plane, applied as
/// a ← U†·a·U, and the annihilation condition gives
/// t² − 2τt − 1 = 0 with τ = (γ−α)/(2|β|); the smaller root keeps the
/// rotation angle below π/4, which is what makes the sweep unconditionally
/// stable.
fn jacobi_rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let beta = a.get(p, q);
    let beta_abs = beta.norm();
    if beta_abs == 0.0 {
        return;
    }
    let phase = beta / beta_abs; // e^{iφ}
    let alpha = a.get(p, p).re;
    let gamma = a.get(q, q).re;

    let tau = (gamma - alpha) / (2.0 * beta_abs);
    let sign = if tau >= 0.0 { 1.0 } else { -1.0 };
    let t = -sign / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.rows();
    let phase_conj = phase.conj();

    // a ← a·U (columns p and q of every row).
    for i in 0..n {
        let aip = a.get(i, p);
        let aiq = a.get(i, q);
        a.set(i, p, aip * c + aiq * (s * phase_conj));
        a.set(i, q, aip * (-s * phase) + aiq * c);
    }
    // a ← U†·a (rows p and q of every column).
    for j in 0..n {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, apj * c + aqj * (s * phase));
        a.set(q, j, apj * (-s * phase_conj) + aqj * c);
    }
    // v ← v·U.
    for i in 0..n {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, vip * c + viq * (s * phase_conj));
        v.set(i, q, vip * (-s * phase) + viq * c);
    }

    // The rotation annihilates (p,q) analytically; pin it and keep the
    // diagonal exactly real so round-off cannot accumulate there.
    a.set(p, q, ZERO);
    a.set(q, p, ZERO);
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    a.set(p, p, Complex64::new(app, 0.0));
    a.set(q, q, Complex64::new(aqq, 0.0));
}
