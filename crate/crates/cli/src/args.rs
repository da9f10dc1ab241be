use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vpair::dynamics::{DEFAULT_DT, DEFAULT_T_FINAL};
use vpair::measures::PPT_TOL;

use crate::Failure;

#[derive(Parser, Debug)]
#[command(
    name = "vpair",
    version,
    about = "Asymptotic entanglement of two V-type atoms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Integrate the master equation from a JSON state file; prints the final state.
    Evolve,
    /// Closed-form limit state of a JSON state file.
    Asymptotic,
    /// Negativity, realignment negativity, linear entropy and PPT flag of a state file.
    Measures,
    /// Limit negativity of cos φ|1,2⟩ + sin φ|1,3⟩ over φ ∈ [0, π/2].
    Fig1,
    /// Limit negativity of three two-state mixtures over p ∈ [0, 1].
    Fig2,
    /// Boundary curves plus limits of random diagonal states.
    Fig3,
    /// Bound-entangled family over a ∈ [0.01, 0.99].
    Fig4,
    /// Boundary curves k1, k2, k3 only.
    Curves,
    /// Limits of random diagonal initial states, classified against the region.
    RegionSample,
    /// Liouvillian eigenvalues and kernel dimension.
    Spectrum,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Evolve => "evolve",
            Command::Asymptotic => "asymptotic",
            Command::Measures => "measures",
            Command::Fig1 => "fig1",
            Command::Fig2 => "fig2",
            Command::Fig3 => "fig3",
            Command::Fig4 => "fig4",
            Command::Curves => "curves",
            Command::RegionSample => "region-sample",
            Command::Spectrum => "spectrum",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Common vacuum, Γ = γ, exchange Ω.
    Small,
    /// Independent atoms, Γ = Ω = 0.
    Large,
}

#[derive(Args, Debug, Clone)]
pub struct ConfigArgs {
    /// Single-atom decay rate γ; time is measured in units of 1/γ.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub gamma: f64,
    /// Dipole-dipole shift Ω (small-separation regime only).
    #[arg(long, global = true, default_value_t = 0.0)]
    pub omega: f64,
    #[arg(long, global = true, value_enum, default_value_t = Regime::Small)]
    pub regime: Regime,
    /// Integration time [default: 40/γ].
    #[arg(long, global = true)]
    pub t_final: Option<f64>,
    /// Step size [default: 1e-3/γ].
    #[arg(long, global = true)]
    pub dt: Option<f64>,
    /// Number of random initial states for region sampling.
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Input density matrix (JSON).
    #[arg(long, global = true)]
    pub state: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// PPT tolerance on the smallest partial-transpose eigenvalue.
    #[arg(long, global = true, default_value_t = PPT_TOL)]
    pub tol: f64,
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub gamma: f64,
    pub omega: f64,
    pub regime: Regime,
    pub t_final: f64,
    pub dt: f64,
    pub samples: usize,
    pub seed: u64,
    pub state: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub tol: f64,
}

impl ConfigArgs {
    pub fn validate(self) -> Result<RunConfig, Failure> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(v)
            } else {
                Err(Failure::Input(format!(
                    "--{name} must be positive and finite, got {v}"
                )))
            }
        };
        let gamma = positive("gamma", self.gamma)?;
        if !self.omega.is_finite() {
            return Err(Failure::Input(format!(
                "--omega must be finite, got {}",
                self.omega
            )));
        }
        let t_final = positive("t-final", self.t_final.unwrap_or(DEFAULT_T_FINAL / gamma))?;
        let dt = positive("dt", self.dt.unwrap_or(DEFAULT_DT / gamma))?;
        if dt >= t_final {
            return Err(Failure::Input(format!(
                "--dt ({dt}) must be smaller than --t-final ({t_final})"
            )));
        }
        if self.samples == 0 {
            return Err(Failure::Input("--samples must be at least 1".into()));
        }
        let tol = positive("tol", self.tol)?;
        Ok(RunConfig {
            gamma,
            omega: self.omega,
            regime: self.regime,
            t_final,
            dt,
            samples: self.samples,
            seed: self.seed,
            state: self.state,
            out: self.out,
            tol,
        })
    }
}
