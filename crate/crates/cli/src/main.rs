//! `krausim` — amplitude damping, Kraus extraction and CPTP verification
//! from the command line.
//!
//! Exit codes are stable: 0 success, 1 verification failure, 2 domain
//! error, 3 I/O error, 4 parse error.

mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use io::{ChannelFile, CliError, MatrixFile};
use krausim_core::{
    channels, dynamics, states, BlochVector, Complex64, DecayParams, DensityMatrix, JointUnitary,
    KrausChannel,
};

#[derive(Parser)]
#[command(
    name = "krausim",
    version,
    about = "Open quantum system dynamics in the Kraus operator-sum representation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the amplitude-damping Kraus channel for emission probability p.
    AdChannel {
        #[arg(long)]
        p: f64,
        /// Output channel file (JSON).
        #[arg(long)]
        out: PathBuf,
    },
    /// Extract Kraus operators from a joint-unitary matrix file.
    Extract {
        /// Matrix file holding the system⊗environment unitary.
        #[arg(long)]
        unitary: PathBuf,
        /// System dimension.
        #[arg(long)]
        ds: usize,
        /// Environment dimension.
        #[arg(long)]
        da: usize,
        /// Environment basis state the evolution starts from.
        #[arg(long, default_value_t = 0)]
        env_init: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Apply a channel file to a density-matrix file.
    Apply {
        /// Channel file, or a joint-unitary matrix file with --via-dilation.
        #[arg(long)]
        channel: PathBuf,
        /// Input density matrix (JSON matrix file).
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Evolve through the full dilation and trace the environment out
        /// instead of using Kraus operators (requires --ds and --da).
        #[arg(long)]
        via_dilation: bool,
        #[arg(long)]
        ds: Option<usize>,
        #[arg(long)]
        da: Option<usize>,
        #[arg(long, default_value_t = 0)]
        env_init: usize,
    },
    /// Check the CPTP diagnostics of a channel file; exits 1 when they fail.
    Verify {
        #[arg(long)]
        channel: PathBuf,
        /// Number of random input states to probe.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Sample an amplitude-damping trajectory to CSV.
    Trajectory {
        /// Polar angle of the initial Bloch vector, in degrees
        /// (radians with --radians).
        #[arg(long)]
        theta_deg: f64,
        /// Azimuthal angle, same convention as --theta-deg.
        #[arg(long, default_value_t = 0.0)]
        phi_deg: f64,
        /// Bloch radius of the initial state.
        #[arg(long, default_value_t = 1.0)]
        r: f64,
        /// Decay rate γ in p = 1 − e^{−γt}.
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long)]
        t_max: f64,
        #[arg(long, default_value_t = 101)]
        samples: usize,
        #[arg(long)]
        out: PathBuf,
        /// Interpret --theta-deg and --phi-deg as radians.
        #[arg(long)]
        radians: bool,
    },
    /// Rewrite a channel file with at most d_s² Kraus operators.
    Reduce {
        #[arg(long)]
        channel: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::AdChannel { p, out } => cmd_ad_channel(p, &out),
        Command::Extract {
            unitary,
            ds,
            da,
            env_init,
            out,
        } => cmd_extract(&unitary, ds, da, env_init, &out),
        Command::Apply {
            channel,
            state,
            out,
            via_dilation,
            ds,
            da,
            env_init,
        } => cmd_apply(&channel, &state, &out, via_dilation, ds, da, env_init),
        Command::Verify { channel, samples } => cmd_verify(&channel, samples),
        Command::Trajectory {
            theta_deg,
            phi_deg,
            r,
            gamma,
            t_max,
            samples,
            out,
            radians,
        } => cmd_trajectory(theta_deg, phi_deg, r, gamma, t_max, samples, &out, radians),
        Command::Reduce { channel, out } => cmd_reduce(&channel, &out),
    }
}

fn cmd_ad_channel(p: f64, out: &PathBuf) -> Result<u8, CliError> {
    let channel = KrausChannel::amplitude_damping(p)?;
    ChannelFile::from_operators(channel.d_s(), channel.operators()).save(out)?;
    println!(
        "wrote {} operator(s) to {}",
        channel.operator_count(),
        out.display()
    );
    Ok(0)
}

fn cmd_extract(
    unitary: &PathBuf,
    ds: usize,
    da: usize,
    env_init: usize,
    out: &PathBuf,
) -> Result<u8, CliError> {
    let matrix = MatrixFile::load(unitary)?.into_matrix()?;
    let u = JointUnitary::new(matrix, ds, da)?;
    let channel = KrausChannel::extract(&u, env_init)?.without_null_operators();
    ChannelFile::from_operators(channel.d_s(), channel.operators()).save(out)?;
    println!("operators: {}", channel.operator_count());
    println!(
        "completeness residual: {:.3e}",
        channel.completeness_residual()
    );
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_apply(
    channel: &PathBuf,
    state: &PathBuf,
    out: &PathBuf,
    via_dilation: bool,
    ds: Option<usize>,
    da: Option<usize>,
    env_init: usize,
) -> Result<u8, CliError> {
    let rho = DensityMatrix::new(MatrixFile::load(state)?.into_matrix()?)?;

    let evolved = if via_dilation {
        let (ds, da) = match (ds, da) {
            (Some(ds), Some(da)) => (ds, da),
            _ => {
                return Err(CliError::Domain(
                    "--via-dilation requires --ds and --da".into(),
                ))
            }
        };
        let u = JointUnitary::new(MatrixFile::load(channel)?.into_matrix()?, ds, da)?;
        u.evolve(&rho, env_init)?
    } else {
        let (d_s, operators) = ChannelFile::load(channel)?.into_operators()?;
        KrausChannel::new(d_s, operators)?.apply(&rho)?
    };

    MatrixFile::from_matrix(evolved.matrix()).save(out)?;
    let trace = evolved.matrix().trace().expect("square");
    let min_eig = evolved
        .matrix()
        .hermitian_eigen()?
        .values
        .last()
        .copied()
        .unwrap_or(0.0);
    println!(
        "trace deviation: {:.3e}",
        (trace - Complex64::new(1.0, 0.0)).norm()
    );
    println!("min eigenvalue: {:.3e}", min_eig);
    Ok(0)
}

fn cmd_verify(channel: &PathBuf, samples: usize) -> Result<u8, CliError> {
    let (d_s, operators) = ChannelFile::load(channel)?.into_operators()?;
    let report = channels::diagnose(d_s, &operators, samples)?;
    println!(
        "{}",
        serde_json::json!({
            "completeness_residual": report.completeness_residual,
            "trace_deviation_max": report.trace_deviation_max,
            "min_output_eigenvalue": report.min_output_eigenvalue,
            "operator_count": report.operator_count,
            "gram_rank": report.gram_rank,
        })
    );
    let healthy = report.completeness_residual <= channels::COMPLETENESS_TOL
        && report.min_output_eigenvalue >= -states::DENSITY_TOL;
    Ok(if healthy { 0 } else { 1 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_trajectory(
    theta: f64,
    phi: f64,
    r: f64,
    gamma: f64,
    t_max: f64,
    samples: usize,
    out: &PathBuf,
    radians: bool,
) -> Result<u8, CliError> {
    let (theta, phi) = if radians {
        (theta, phi)
    } else {
        (theta.to_radians(), phi.to_radians())
    };
    let initial = BlochVector::from_spherical(r, theta, phi)?;
    let params = DecayParams::new(gamma, t_max, samples)?;
    let points = dynamics::trajectory(&initial, &params)?;
    io::save_trajectory_csv(&points, out)?;
    println!("wrote {} samples to {}", points.len(), out.display());
    Ok(0)
}

fn cmd_reduce(channel: &PathBuf, out: &PathBuf) -> Result<u8, CliError> {
    let (d_s, operators) = ChannelFile::load(channel)?.into_operators()?;
    let before = operators.len();
    let reduced = KrausChannel::new(d_s, operators)?.reduce()?;
    ChannelFile::from_operators(reduced.d_s(), reduced.operators()).save(out)?;
    println!("operators: {} -> {}", before, reduced.operator_count());
    Ok(0)
}
