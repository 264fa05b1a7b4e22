//! Helpers shared by the CLI test targets: running the binary and reading
//! the file formats back.

use std::path::{Path, PathBuf};
use std::process::Output;

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct ChannelJson {
    pub d_s: usize,
    pub operators: Vec<MatrixJson>,
}

pub fn krausim(args: &[&str]) -> Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_krausim"))
        .args(args)
        .output()
        .expect("spawning the krausim binary")
}

pub fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process terminated by signal")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn path_str(path: &Path) -> &str {
    path.to_str().expect("utf-8 path")
}

pub fn read_matrix(path: &Path) -> MatrixJson {
    serde_json::from_str(&std::fs::read_to_string(path).expect("matrix file exists"))
        .expect("matrix file parses")
}

pub fn read_channel(path: &Path) -> ChannelJson {
    serde_json::from_str(&std::fs::read_to_string(path).expect("channel file exists"))
        .expect("channel file parses")
}

pub fn write_json<T: serde::Serialize>(path: &Path, value: &T) {
    std::fs::write(path, serde_json::to_string_pretty(value).unwrap()).unwrap();
}

/// Parses the trajectory CSV into its header and numeric rows.
pub fn read_csv(path: &Path) -> (String, Vec<Vec<f64>>) {
    let text = std::fs::read_to_string(path).expect("csv exists");
    let mut lines = text.lines();
    let header = lines.next().expect("header line").to_owned();
    let rows = lines
        .map(|line| {
            line.split(',')
                .map(|field| field.parse::<f64>().expect("numeric field"))
                .collect()
        })
        .collect();
    (header, rows)
}

/// Matrix entry as a complex pair, row-major.
pub fn entry(m: &MatrixJson, i: usize, j: usize) -> [f64; 2] {
    m.data[i * m.cols + j]
}

pub fn approx(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn identity_matrix_json(n: usize) -> MatrixJson {
    let mut data = vec![[0.0, 0.0]; n * n];
    for i in 0..n {
        data[i * n + i] = [1.0, 0.0];
    }
    MatrixJson {
        rows: n,
        cols: n,
        data,
    }
}
