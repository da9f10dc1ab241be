use std::fs;

use vpair::asymptotics::{asymptotic_state, Membership};
use vpair::dynamics::{stationary_analysis, Integrator, SystemParams, SPECTRAL_TOL};
use vpair::experiments::{
    curves, fig1, fig2, fig4, region_samples, FIG1_POINTS, FIG2_MIXTURES, FIG2_POINTS,
    FIG3_CURVE_POINTS, FIG4_POINTS,
};
use vpair::measures::measure_report;
use vpair::states::DensityMatrix;

use crate::args::{Command, Regime, RunConfig};
use crate::output::{Cell, Csv};
use crate::Failure;

fn label(m: Membership) -> &'static str {
    match m {
        Membership::Inside => "inside",
        Membership::Boundary => "boundary",
        Membership::Outside => "outside",
    }
}

fn read_state(config: &RunConfig) -> Result<DensityMatrix, Failure> {
    let path = config
        .state
        .as_ref()
        .ok_or_else(|| Failure::Input("this command needs --state <path>".into()))?;
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    DensityMatrix::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn params(config: &RunConfig) -> Result<SystemParams, Failure> {
    let p = match config.regime {
        Regime::Small => SystemParams::small_separation(config.gamma, config.omega),
        Regime::Large => SystemParams::large_separation(config.gamma),
    };
    p.map_err(Failure::from)
}

/// Runs one subcommand and returns the text to write.
pub fn run(command: Command, config: &RunConfig) -> Result<String, Failure> {
    match command {
        Command::Evolve => {
            let rho = read_state(config)?;
            let out = Integrator::new(&params(config)?).evolve(&rho, config.t_final, config.dt)?;
            Ok(out.state.to_json() + "\n")
        }
        Command::Asymptotic => {
            let rho = read_state(config)?;
            Ok(asymptotic_state(&rho)?.to_json() + "\n")
        }
        Command::Measures => {
            let rho = read_state(config)?;
            let r = measure_report(&rho, config.tol)?;
            let mut csv = Csv::new(
                command,
                config,
                &[
                    "negativity",
                    "realignment_negativity",
                    "linear_entropy",
                    "ppt",
                    "min_pt_eigenvalue",
                ],
            );
            csv.row([
                r.negativity.into(),
                r.realignment_negativity.into(),
                r.linear_entropy.into(),
                r.ppt.into(),
                r.min_pt_eigenvalue.into(),
            ]);
            Ok(csv.finish())
        }
        Command::Fig1 => {
            let mut csv = Csv::new(command, config, &["phi", "negativity"]);
            for r in fig1(FIG1_POINTS)? {
                csv.row([r.phi.into(), r.negativity.into()]);
            }
            Ok(csv.finish())
        }
        Command::Fig2 => {
            let mut columns = vec!["p"];
            columns.extend(FIG2_MIXTURES.iter().map(|m| m.0));
            let mut csv = Csv::new(command, config, &columns);
            for r in fig2(FIG2_POINTS)? {
                csv.row(std::iter::once(Cell::from(r.p)).chain(r.negativity.map(Cell::from)));
            }
            Ok(csv.finish())
        }
        Command::Curves => {
            let mut csv = Csv::new(
                command,
                config,
                &["curve", "s", "linear_entropy", "negativity"],
            );
            for (c, p) in curves(FIG3_CURVE_POINTS) {
                csv.row([
                    c.label().into(),
                    p.s.into(),
                    p.linear_entropy.into(),
                    p.negativity.into(),
                ]);
            }
            Ok(csv.finish())
        }
        Command::RegionSample => {
            let mut csv = Csv::new(
                command,
                config,
                &[
                    "index",
                    "linear_entropy",
                    "negativity",
                    "membership",
                    "distance",
                ],
            );
            for s in region_samples(config.seed, config.samples)? {
                csv.row([
                    s.index.into(),
                    s.linear_entropy.into(),
                    s.negativity.into(),
                    label(s.membership).into(),
                    s.distance.into(),
                ]);
            }
            Ok(csv.finish())
        }
        Command::Fig3 => {
            let mut csv = Csv::new(
                command,
                config,
                &[
                    "series",
                    "index",
                    "linear_entropy",
                    "negativity",
                    "membership",
                ],
            );
            let mut index = [0usize; 3];
            for (c, p) in curves(FIG3_CURVE_POINTS) {
                let slot = &mut index[c as usize];
                csv.row([
                    c.label().into(),
                    (*slot).into(),
                    p.linear_entropy.into(),
                    p.negativity.into(),
                    "boundary".into(),
                ]);
                *slot += 1;
            }
            for s in region_samples(config.seed, config.samples)? {
                csv.row([
                    "sample".into(),
                    s.index.into(),
                    s.linear_entropy.into(),
                    s.negativity.into(),
                    label(s.membership).into(),
                ]);
            }
            Ok(csv.finish())
        }
        Command::Fig4 => {
            let mut csv = Csv::new(
                command,
                config,
                &[
                    "a",
                    "asymptotic_negativity",
                    "initial_realignment_negativity",
                    "initial_min_pt_eigenvalue",
                ],
            );
            for r in fig4(FIG4_POINTS)? {
                csv.row([
                    r.a.into(),
                    r.asymptotic_negativity.into(),
                    r.initial_realignment_negativity.into(),
                    r.initial_min_pt_eigenvalue.into(),
                ]);
            }
            Ok(csv.finish())
        }
        Command::Spectrum => {
            let s = stationary_analysis(&params(config)?)?;
            let mut csv = Csv::new(command, config, &["index", "re", "im", "class"]);
            csv.note(format!("kernel_dimension = {}", s.kernel_dimension));
            csv.note(format!("purely_imaginary = {}", s.purely_imaginary.len()));
            if let Some(gap) = s.relaxation_gap {
                csv.note(format!("relaxation_gap = {}", crate::output::float(gap)));
            }
            for (i, z) in s.eigenvalues.iter().enumerate() {
                let class = if z.norm() < SPECTRAL_TOL {
                    "kernel"
                } else if z.re.abs() < SPECTRAL_TOL {
                    "oscillating"
                } else {
                    "decaying"
                };
                csv.row([i.into(), z.re.into(), z.im.into(), class.into()]);
            }
            Ok(csv.finish())
        }
    }
}
