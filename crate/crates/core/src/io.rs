//! CSV output for trajectories, fronts and method comparisons, and readers
//! for the first two.
//!
//! Every file opens with `#` comment lines holding the provenance needed to
//! regenerate it. Numbers use the shortest representation that parses back
//! to the same `f64`.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::Deserialize;

use crate::error::Result;
use crate::model::{ModelParameters, StateVector};
use crate::scalarize::TradeoffFront;
use crate::sim::Trajectory;

pub const TRAJECTORY_HEADER: &str = "t,S,L1,I,L2,R,u1,u2";
pub const FRONT_HEADER: &str = "eps,f1,f2,status,evaluations";

/// Key/value lines describing the model parameters.
pub fn parameter_provenance(p: &ModelParameters) -> Vec<(String, String)> {
    [
        ("beta", p.beta),
        ("mu", p.mu),
        ("delta", p.delta),
        ("phi", p.phi),
        ("omega", p.omega),
        ("omega_r", p.omega_r),
        ("sigma", p.sigma),
        ("sigma_r", p.sigma_r),
        ("tau0", p.tau0),
        ("tau1", p.tau1),
        ("tau2", p.tau2),
        ("N", p.population),
        ("eps1", p.eps1),
        ("eps2", p.eps2),
        ("horizon", p.horizon),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v.to_string()))
    .collect()
}

fn write_comments<W: Write>(out: &mut W, lines: &[(String, String)]) -> Result<()> {
    for (k, v) in lines {
        writeln!(out, "# {k} = {v}")?;
    }
    Ok(())
}

/// Writes one row per RK4 node with the control held on that node's interval.
pub fn write_trajectory_csv<W: Write>(
    trajectory: &Trajectory,
    params: &ModelParameters,
    extra: &[(String, String)],
    mut out: W,
) -> Result<()> {
    let mut lines = parameter_provenance(params);
    lines.push(("substeps".into(), trajectory.substeps.to_string()));
    lines.extend_from_slice(extra);
    write_comments(&mut out, &lines)?;
    writeln!(out, "{TRAJECTORY_HEADER}")?;
    for (j, (t, x)) in trajectory.times.iter().zip(&trajectory.states).enumerate() {
        let u = trajectory.control_at_node(j);
        writeln!(out, "{t},{},{},{},{},{},{},{}", x.s, x.l1, x.i, x.l2, x.r, u.u1, u.u2)?;
    }
    out.flush()?;
    Ok(())
}

/// [`write_trajectory_csv`] to a file, creating parent directories.
pub fn write_trajectory_file(
    trajectory: &Trajectory,
    params: &ModelParameters,
    extra: &[(String, String)],
    path: &Path,
) -> Result<()> {
    write_trajectory_csv(trajectory, params, extra, BufWriter::new(create(path)?))
}

/// One parsed trajectory row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRow {
    pub t: f64,
    pub state: StateVector,
    pub u1: f64,
    pub u2: f64,
}

#[derive(Deserialize)]
struct RawTrajectoryRow {
    t: f64,
    #[serde(rename = "S")]
    s: f64,
    #[serde(rename = "L1")]
    l1: f64,
    #[serde(rename = "I")]
    i: f64,
    #[serde(rename = "L2")]
    l2: f64,
    #[serde(rename = "R")]
    r: f64,
    u1: f64,
    u2: f64,
}

fn reader<R: Read>(input: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input)
}

pub fn read_trajectory_csv<R: Read>(input: R) -> Result<Vec<TrajectoryRow>> {
    reader(input)
        .deserialize::<RawTrajectoryRow>()
        .map(|row| {
            let r = row?;
            Ok(TrajectoryRow {
                t: r.t,
                state: StateVector::new(r.s, r.l1, r.i, r.l2, r.r),
                u1: r.u1,
                u2: r.u2,
            })
        })
        .collect()
}

/// Writes a front sorted by its scalarization parameter. For weighted
/// methods the `eps` column holds the weight w1.
pub fn write_front_csv<W: Write>(front: &TradeoffFront, mut out: W) -> Result<()> {
    let mut lines = vec![("method".to_string(), front.method.to_string())];
    lines.extend(parameter_provenance(&front.params));
    lines.extend_from_slice(&front.provenance);
    for f in &front.failures {
        lines.push((format!("failed[{}]", f.index), format!("{} ({})", f.parameter, f.message)));
    }
    write_comments(&mut out, &lines)?;
    writeln!(out, "{FRONT_HEADER}")?;
    let mut rows: Vec<_> = front.points.iter().collect();
    rows.sort_by(|a, b| a.parameter.total_cmp(&b.parameter));
    for p in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            p.parameter, p.objectives.f1, p.objectives.f2, p.solve.status, p.solve.evaluations
        )?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_front_file(front: &TradeoffFront, path: &Path) -> Result<()> {
    write_front_csv(front, BufWriter::new(create(path)?))
}

/// One parsed front row.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct FrontRow {
    pub eps: f64,
    pub f1: f64,
    pub f2: f64,
    pub status: String,
    pub evaluations: usize,
}

pub fn read_front_csv<R: Read>(input: R) -> Result<Vec<FrontRow>> {
    Ok(reader(input).deserialize().collect::<std::result::Result<_, _>>()?)
}

fn create(path: &Path) -> Result<File> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    Ok(File::create(path)?)
}
