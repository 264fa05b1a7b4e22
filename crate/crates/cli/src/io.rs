//! On-disk formats: JSON for matrices and channels, CSV for trajectories.
//!
//! JSON numbers are written in serde_json's shortest exact form, so every
//! file parses back to bit-identical values. The CSV columns are printed
//! with 17 significant digits for the same reason.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use krausim_core::{Complex64, ComplexMatrix, TrajectoryPoint};

/// Command failure with its process exit code: 2 domain, 3 I/O, 4 parse
/// (0 is success and 1 is reserved for verification failures).
#[derive(Debug)]
pub enum CliError {
    Domain(String),
    Io(String),
    Parse(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 2,
            CliError::Io(_) => 3,
            CliError::Parse(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(msg) => write!(f, "{msg}"),
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
            CliError::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

impl From<krausim_core::Error> for CliError {
    fn from(err: krausim_core::Error) -> Self {
        CliError::Domain(err.to_string())
    }
}

/// Dense complex matrix as JSON: row-major `data` of `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.data().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn into_matrix(self) -> Result<ComplexMatrix, CliError> {
        let data = self
            .data
            .into_iter()
            .map(|[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::new(self.rows, self.cols, data)
            .map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        load_json(path)
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        save_json(self, path)
    }
}

/// Kraus operator set as JSON: system dimension plus one [`MatrixFile`] per
/// operator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChannelFile {
    pub d_s: usize,
    pub operators: Vec<MatrixFile>,
}

impl ChannelFile {
    pub fn from_operators(d_s: usize, operators: &[ComplexMatrix]) -> Self {
        Self {
            d_s,
            operators: operators.iter().map(MatrixFile::from_matrix).collect(),
        }
    }

    /// Structural validation only (shapes and finiteness); completeness is
    /// the caller's business so that broken sets stay loadable for
    /// diagnostics.
    pub fn into_operators(self) -> Result<(usize, Vec<ComplexMatrix>), CliError> {
        let d_s = self.d_s;
        let mut operators = Vec::with_capacity(self.operators.len());
        for (index, op) in self.operators.into_iter().enumerate() {
            let m = op.into_matrix()?;
            if m.rows() != d_s || m.cols() != d_s {
                return Err(CliError::Parse(format!(
                    "operator {index} is {}x{}, expected {d_s}x{d_s}",
                    m.rows(),
                    m.cols()
                )));
            }
            operators.push(m);
        }
        Ok((d_s, operators))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        load_json(path)
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        save_json(self, path)
    }
}

/// Writes the `t,p,r1,r2,r3,coherence` CSV, one row per sample, every value
/// with 17 significant digits.
pub fn save_trajectory_csv(points: &[TrajectoryPoint], path: &Path) -> Result<(), CliError> {
    let mut out = String::from("t,p,r1,r2,r3,coherence\n");
    for point in points {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
            point.t,
            point.p,
            point.bloch.r1(),
            point.bloch.r2(),
            point.bloch.r3(),
            point.coherence
        ));
    }
    fs::write(path, out).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn load_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn save_json<T: Serialize>(value: &T, path: &Path) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}
