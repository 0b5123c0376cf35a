//! Command-line plumbing shared by the binary and the tests: angle parsing,
//! sweep configuration and CSV output, and the `inspect` views.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use crate::clifford::{OperatorMatrix, C64};
use crate::density::{sweep, GridRange, SweepAxis, SweepRow};
use crate::error::Error;
use crate::kinematics::{boost_z, make_momentum, velocity, Mass, SphericalMomentum};
use crate::spin_operators::{covariant_spin, dirac_hamiltonian, fw_mean_spin};
use crate::transport::{ab_params, transport_fw, wigner_block};

/// Failure of a CLI action; all map to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Parses a real number, optionally followed by `pi` (`0.54pi`, `pi`, `-pi`).
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let parse = |v: &str| v.parse::<f64>().map_err(|_| format!("not a number: {s:?}"));
    let value = match t.strip_suffix("pi") {
        Some("") | Some("+") => std::f64::consts::PI,
        Some("-") => -std::f64::consts::PI,
        Some(coeff) => parse(coeff.strip_suffix('*').unwrap_or(coeff))? * std::f64::consts::PI,
        None => parse(t)?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxisKind {
    Rapidity,
    Polar,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub axis: AxisKind,
    pub mass: f64,
    pub p_magnitude: f64,
    pub theta: Option<f64>,
    pub phi: f64,
    pub xi: Option<f64>,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub output_path: Option<PathBuf>,
}

impl SweepConfig {
    fn axis(&self) -> Result<SweepAxis, CliError> {
        match self.axis {
            AxisKind::Rapidity => {
                let theta = self.theta.ok_or_else(|| {
                    CliError::Config("--theta is required for the rapidity axis".into())
                })?;
                SphericalMomentum::new(self.p_magnitude, theta, self.phi)?;
                Ok(SweepAxis::Rapidity { theta })
            }
            AxisKind::Polar => {
                let xi = self.xi.ok_or_else(|| {
                    CliError::Config("--xi is required for the polar axis".into())
                })?;
                if !xi.is_finite() {
                    return Err(CliError::Config(format!(
                        "rapidity must be finite, got {xi}"
                    )));
                }
                if self.lo < 0.0 || self.hi > std::f64::consts::PI {
                    return Err(Error::PolarAngleOutOfRange(if self.lo < 0.0 {
                        self.lo
                    } else {
                        self.hi
                    })
                    .into());
                }
                Ok(SweepAxis::Polar { xi })
            }
        }
    }
}

/// Evaluates the sweep described by `config`.
pub fn sweep_rows(config: &SweepConfig) -> Result<Vec<SweepRow>, CliError> {
    let mass = Mass::new(config.mass)?;
    let axis = config.axis()?;
    let range = GridRange::new(config.lo, config.hi, config.steps)?;
    Ok(sweep(mass, config.p_magnitude, config.phi, axis, &range)?)
}

pub const CSV_HEADER: &str = "x,entropy_psi1,entropy_psi2,ln2";

/// CSV text: the grid coordinate in plain decimal, entropies in shortest
/// round-trip form.
pub fn format_csv(rows: &[SweepRow]) -> String {
    let ln2 = std::f64::consts::LN_2;
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{:?},{:?},{:?}",
            r.x, r.entropy_psi1, r.entropy_psi2, ln2
        )
        .expect("string write");
    }
    out
}

/// Runs the sweep and writes the CSV to the configured path or to `stdout`.
pub fn run_sweep(config: &SweepConfig, stdout: &mut dyn Write) -> Result<usize, CliError> {
    let rows = sweep_rows(config)?;
    let text = format_csv(&rows);
    match &config.output_path {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?,
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "stdout".into(),
                source,
            })?,
    }
    Ok(rows.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InspectKind {
    SpinR,
    SpinFw,
    Hamiltonian,
    Transport,
    WignerBlock,
    AbParams,
}

impl InspectKind {
    pub fn parse(s: &str) -> Result<Self, String> {
        Ok(match s {
            "spin_r" => InspectKind::SpinR,
            "spin_fw" => InspectKind::SpinFw,
            "hamiltonian" => InspectKind::Hamiltonian,
            "transport" => InspectKind::Transport,
            "wigner_block" => InspectKind::WignerBlock,
            "ab_params" => InspectKind::AbParams,
            other => {
                return Err(format!(
                    "unknown kind {other:?} (expected spin_r, spin_fw, hamiltonian, transport, wigner_block, ab_params)"
                ))
            }
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InspectParams {
    pub p: f64,
    pub m: f64,
    pub theta: f64,
    pub phi: f64,
    pub xi: f64,
}

type JsonMatrix = Vec<Vec<[f64; 2]>>;

fn json_matrix(m: &OperatorMatrix) -> JsonMatrix {
    (0..4)
        .map(|r| (0..4).map(|c| complex_pair(m.entry(r, c))).collect())
        .collect()
}

fn complex_pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum InspectData {
    Triple {
        x: JsonMatrix,
        y: JsonMatrix,
        z: JsonMatrix,
    },
    Matrix {
        matrix: JsonMatrix,
    },
    Block {
        a: [f64; 2],
        b: [f64; 2],
        norm: f64,
        velocity: f64,
    },
    Ab {
        a1: f64,
        b1: f64,
        a2: f64,
        b2: f64,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InspectOutput {
    pub kind: InspectKind,
    pub parameters: InspectParams,
    pub data: InspectData,
}

pub fn inspect(kind: InspectKind, params: InspectParams) -> Result<InspectOutput, CliError> {
    let mass = Mass::new(params.m)?;
    let sph = SphericalMomentum::new(params.p, params.theta, params.phi)?;
    if !params.xi.is_finite() {
        return Err(CliError::Config(format!(
            "rapidity must be finite, got {}",
            params.xi
        )));
    }
    let p = make_momentum(params.m, &sph)?;
    let triple = |t: [OperatorMatrix; 3]| InspectData::Triple {
        x: json_matrix(&t[0]),
        y: json_matrix(&t[1]),
        z: json_matrix(&t[2]),
    };
    let data = match kind {
        InspectKind::SpinR => triple(covariant_spin(&p).components),
        InspectKind::SpinFw => triple(fw_mean_spin(p.p3(), mass).components),
        InspectKind::Hamiltonian => InspectData::Matrix {
            matrix: json_matrix(&dirac_hamiltonian(p.p3(), mass)),
        },
        InspectKind::Transport => InspectData::Matrix {
            matrix: json_matrix(&transport_fw(&boost_z(params.xi), &p).entries),
        },
        InspectKind::WignerBlock => {
            let w = wigner_block(&transport_fw(&boost_z(params.xi), &p))?;
            InspectData::Block {
                a: complex_pair(w.a),
                b: complex_pair(w.b),
                norm: w.a.norm_sqr() + w.b.norm_sqr(),
                velocity: velocity(params.xi),
            }
        }
        InspectKind::AbParams => {
            let ab = ab_params(mass, &sph, params.xi);
            InspectData::Ab {
                a1: ab.a1,
                b1: ab.b1,
                a2: ab.a2,
                b2: ab.b2,
            }
        }
    };
    Ok(InspectOutput {
        kind,
        parameters: params,
        data,
    })
}

pub fn render_json(out: &InspectOutput) -> String {
    serde_json::to_string_pretty(out).expect("plain data serializes")
}

fn text_matrix(out: &mut String, name: &str, m: &JsonMatrix) {
    writeln!(out, "{name} =").expect("string write");
    for row in m {
        let cells: Vec<String> = row
            .iter()
            .map(|[re, im]| format!("({re:?}, {im:?})"))
            .collect();
        writeln!(out, "  [{}]", cells.join(", ")).expect("string write");
    }
}

pub fn render_text(out: &InspectOutput) -> String {
    let p = &out.parameters;
    let mut s = String::new();
    writeln!(
        s,
        "# p={:?} m={:?} theta={:?} phi={:?} xi={:?}",
        p.p, p.m, p.theta, p.phi, p.xi
    )
    .expect("string write");
    match &out.data {
        InspectData::Triple { x, y, z } => {
            text_matrix(&mut s, "x", x);
            text_matrix(&mut s, "y", y);
            text_matrix(&mut s, "z", z);
        }
        InspectData::Matrix { matrix } => text_matrix(&mut s, "matrix", matrix),
        InspectData::Block {
            a,
            b,
            norm,
            velocity,
        } => {
            writeln!(s, "A = ({:?}, {:?})", a[0], a[1]).expect("string write");
            writeln!(s, "B = ({:?}, {:?})", b[0], b[1]).expect("string write");
            writeln!(s, "|A|^2+|B|^2 = {norm:?}").expect("string write");
            writeln!(s, "velocity = {velocity:.10}").expect("string write");
        }
        InspectData::Ab { a1, b1, a2, b2 } => {
            writeln!(s, "a1 = {a1:?}\nb1 = {b1:?}\na2 = {a2:?}\nb2 = {b2:?}")
                .expect("string write");
        }
    }
    s
}
