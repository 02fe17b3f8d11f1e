//! Command-line driver: simulation, epsilon ladders, sweeps, method
//! comparison and hypervolume scoring of saved fronts.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use tbmoc::config::{load_config, RunConfig};
use tbmoc::experiments::{
    compare_methods, method_front, representative_solutions, run_sweep, Axis, SweepSpec, SweepValue,
    REPRESENTATIVE_LEVELS,
};
use tbmoc::io::{read_front_csv, write_front_file, write_trajectory_file};
use tbmoc::metrics::hypervolume_2d;
use tbmoc::model::ControlValue;
use tbmoc::pareto::ObjectivePoint;
use tbmoc::scalarize::{Method, TradeoffFront};
use tbmoc::sim::{eval_f1, eval_f2, simulate, ControlSchedule};
use tbmoc::Error;

/// Environment variable naming the default output directory.
pub const OUTPUT_DIR_ENV: &str = "TBMOC_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "tbmoc", version, about = "Burden/effort trade-offs for tuberculosis treatment control")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Simulate one constant-control run and write its trajectory.
    Simulate {
        #[command(flatten)]
        common: Common,
        /// Constant control on active cases.
        #[arg(long, default_value_t = 0.0)]
        u1: f64,
        /// Constant control on latent cases.
        #[arg(long, default_value_t = 0.0)]
        u2: f64,
    },
    /// Build an epsilon-constraint front and its representative solutions.
    Front {
        #[command(flatten)]
        common: Common,
    },
    /// One front per value of a model parameter (or per method).
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_parser = parse_axis)]
        axis: Axis,
        /// Comma-separated values; defaults depend on the axis.
        #[arg(long, value_delimiter = ',')]
        values: Option<Vec<String>>,
    },
    /// Compare the three scalarizations by normalized hypervolume.
    Compare {
        #[command(flatten)]
        common: Common,
    },
    /// Hypervolume of a front CSV with respect to a reference point.
    Hv {
        #[command(flatten)]
        common: Common,
        /// Front CSV file.
        file: PathBuf,
        /// Reference point `f1,f2`.
        #[arg(long = "ref", value_parser = parse_point, allow_hyphen_values = true)]
        reference: ObjectivePoint,
    },
}

/// Flags shared by every subcommand; each overrides the config file.
#[derive(Debug, Args)]
struct Common {
    /// TOML configuration file.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory [default: config, then $TBMOC_OUTPUT_DIR, then ./out].
    #[arg(long, short)]
    output_dir: Option<PathBuf>,
    #[arg(long)]
    beta: Option<f64>,
    /// Total population.
    #[arg(long = "population", visible_alias = "N")]
    population: Option<f64>,
    #[arg(long)]
    eps1: Option<f64>,
    #[arg(long)]
    eps2: Option<f64>,
    #[arg(long)]
    horizon: Option<f64>,
    /// Evaluation budget per solve.
    #[arg(long)]
    budget: Option<usize>,
    /// Epsilon levels per ladder.
    #[arg(long)]
    levels: Option<usize>,
    /// Weight vectors per weighted front.
    #[arg(long)]
    weights: Option<usize>,
    /// RK4 steps per control interval.
    #[arg(long)]
    substeps: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Run batches on one thread.
    #[arg(long)]
    sequential: bool,
}

impl Common {
    fn resolve(&self) -> tbmoc::Result<(RunConfig, PathBuf)> {
        let mut cfg = match &self.config {
            Some(path) => load_config(path)?,
            None => RunConfig::default(),
        };
        let m = &mut cfg.model;
        let s = &mut cfg.solver;
        set(&mut m.beta, self.beta);
        set(&mut m.population, self.population);
        set(&mut m.eps1, self.eps1);
        set(&mut m.eps2, self.eps2);
        set(&mut m.horizon, self.horizon);
        set(&mut s.budget, self.budget);
        set(&mut s.levels, self.levels);
        set(&mut s.weights, self.weights);
        set(&mut s.substeps, self.substeps);
        set(&mut s.seed, self.seed);
        s.sequential |= self.sequential;
        cfg.validate()?;
        let dir = self
            .output_dir
            .clone()
            .or_else(|| cfg.output.dir.clone())
            .or_else(|| std::env::var_os(OUTPUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("out"));
        Ok((cfg, dir))
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}

fn parse_point(s: &str) -> Result<ObjectivePoint, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts[..] {
        [a, b] => match (a.trim().parse(), b.trim().parse()) {
            (Ok(f1), Ok(f2)) => Ok(ObjectivePoint::new(f1, f2)),
            _ => Err(format!("`{s}` is not a pair of numbers")),
        },
        _ => Err(format!("expected `f1,f2`, got `{s}`")),
    }
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    s.parse::<Axis>().map_err(|e| e.to_string())
}

fn default_values(axis: Axis) -> Vec<SweepValue> {
    let scalars = |v: &[f64]| v.iter().map(|&x| SweepValue::Scalar(x)).collect();
    match axis {
        Axis::Beta => scalars(&[75.0, 100.0, 150.0, 175.0]),
        Axis::Population => scalars(&[30_000.0, 40_000.0, 60_000.0]),
        Axis::Eps1 | Axis::Eps2 => scalars(&[0.25, 0.5, 0.75]),
        Axis::Method => Method::ALL.into_iter().map(SweepValue::Method).collect(),
    }
}

fn parse_values(axis: Axis, raw: &[String]) -> tbmoc::Result<Vec<SweepValue>> {
    raw.iter()
        .map(|s| {
            let s = s.trim();
            if axis == Axis::Method {
                s.parse::<Method>().map(SweepValue::Method)
            } else {
                s.parse::<f64>().map(SweepValue::Scalar).map_err(|_| Error::InvalidParameter {
                    name: "values",
                    reason: format!("`{s}` is not a number"),
                })
            }
        })
        .collect()
}

fn front_summary(out: &mut impl Write, front: &TradeoffFront, path: &Path) -> std::io::Result<()> {
    writeln!(
        out,
        "{}: {} points ({} usable, {} failed) -> {}",
        front.method,
        front.points.len(),
        front.successes(),
        front.failures.len(),
        path.display()
    )
}

fn execute(cli: Cli, out: &mut impl Write) -> tbmoc::Result<()> {
    match cli.command {
        Command::Simulate { common, u1, u2 } => {
            let (cfg, dir) = common.resolve()?;
            let p = cfg.model;
            let schedule = ControlSchedule::constant(ControlValue::new(u1, u2), p.horizon)?;
            let traj = simulate(&p, &schedule, cfg.solver.substeps)?;
            let path = dir.join("trajectory.csv");
            let extra = vec![
                ("u1".into(), u1.to_string()),
                ("u2".into(), u2.to_string()),
                ("seed".into(), cfg.solver.seed.to_string()),
            ];
            write_trajectory_file(&traj, &p, &extra, &path)?;
            writeln!(out, "f1 = {}\nf2 = {}\n-> {}", eval_f1(&traj), eval_f2(&schedule), path.display())?;
        }
        Command::Front { common } => {
            let (cfg, dir) = common.resolve()?;
            let s = cfg.solver;
            let mut front = method_front(&cfg.model, Method::EpsilonConstraint, s.levels, s.weights, &s.settings())?;
            set_seed(&mut front, s.seed);
            let path = dir.join("front.csv");
            write_front_file(&front, &path)?;
            front_summary(out, &front, &path)?;
            if let Ok(reps) = representative_solutions(&front, &REPRESENTATIVE_LEVELS) {
                for (level, rep) in REPRESENTATIVE_LEVELS.iter().zip(reps) {
                    let traj = simulate(&cfg.model, &rep.schedule, s.substeps)?;
                    let path = dir.join(format!("representative_f2_{level}.csv"));
                    let extra = vec![
                        ("level".into(), level.to_string()),
                        ("eps".into(), rep.parameter.to_string()),
                        ("f1".into(), rep.objectives.f1.to_string()),
                        ("f2".into(), rep.objectives.f2.to_string()),
                    ];
                    write_trajectory_file(&traj, &cfg.model, &extra, &path)?;
                    writeln!(out, "f2 <= {level}: f1 = {} -> {}", rep.objectives.f1, path.display())?;
                }
            }
        }
        Command::Sweep { common, axis, values } => {
            let (cfg, dir) = common.resolve()?;
            let values = match values {
                Some(raw) => parse_values(axis, &raw)?,
                None => default_values(axis),
            };
            let s = cfg.solver;
            let spec = SweepSpec {
                axis,
                values: values.clone(),
                base: cfg.model,
                levels: s.levels,
                weights: s.weights,
                settings: s.settings(),
                seed: s.seed,
            };
            let mut failed = 0;
            for (v, result) in values.iter().zip(run_sweep(&spec)?) {
                match result {
                    Ok(front) => {
                        let path = dir.join(format!("sweep_{axis}_{v}.csv"));
                        write_front_file(&front, &path)?;
                        front_summary(out, &front, &path)?;
                    }
                    Err(e) => {
                        failed += 1;
                        writeln!(out, "{axis} = {v}: failed: {e}")?;
                    }
                }
            }
            if failed > 0 {
                return Err(Error::InvalidSolverInput(format!("{failed} sweep value(s) failed")));
            }
        }
        Command::Compare { common } => {
            let (cfg, dir) = common.resolve()?;
            let s = cfg.solver;
            let report = compare_methods(&cfg.model, s.weights, s.levels, &s.settings(), s.seed)?;
            for front in &report.fronts {
                let path = dir.join(format!("compare_{}.csv", front.method));
                write_front_file(front, &path)?;
            }
            let path = dir.join("hypervolume.csv");
            let mut table = String::from("method,hypervolume,usable,flagged\n");
            for (f, hv) in report.fronts.iter().zip(&report.hypervolumes) {
                table.push_str(&format!("{},{hv},{},{}\n", f.method, f.successes(), report.flagged.contains(&f.method)));
            }
            if let Some(parent) = path.parent() {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(&path, table)?;
            write!(out, "{}", report.table())?;
            for m in &report.flagged {
                writeln!(out, "warning: {m} produced no usable point")?;
            }
        }
        Command::Hv { common, file, reference } => {
            common.resolve()?;
            let rows = read_front_csv(std::fs::File::open(&file)?)?;
            let points: Vec<ObjectivePoint> = rows
                .iter()
                .filter(|r| r.status != "infeasible")
                .map(|r| ObjectivePoint::new(r.f1, r.f2))
                .collect();
            writeln!(out, "{}", hypervolume_2d(&points, &reference))?;
        }
    }
    Ok(())
}

fn set_seed(front: &mut TradeoffFront, seed: u64) {
    front.provenance.retain(|(k, _)| k != "seed");
    front.provenance.push(("seed".into(), seed.to_string()));
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code: 0 on success, 2 on usage errors, 1 on runtime errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let stdout = std::io::stdout();
    match execute(cli, &mut stdout.lock()) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
