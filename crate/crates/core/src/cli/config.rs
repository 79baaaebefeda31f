//! JSON job configuration and its conversion into library objects.

use serde::Deserialize;

use super::CliError;
use crate::channels::{amplitude_damping, depolarizing, KrausChannel};
use crate::error::Error;
use crate::geometry::{axis_rotation_path, geodesic_polygon_path, UnitaryPath};
use crate::interferometry::linspace;
use crate::numerics::{tol, ComplexMatrix};
use crate::states::{density_from_bloch, BlochVector, DensityMatrix};
use crate::Complex64;

/// Complex numbers are `[re, im]`; matrices are row-major nested arrays.
pub type MatrixSpec = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub state: Option<StateSpec>,
    pub channel: Option<ChannelSpec>,
    pub mu: Option<usize>,
    pub chi_grid: Option<ChiGrid>,
    pub path: Option<PathSpec>,
    #[serde(default)]
    pub tolerances: Tolerances,
    /// `verify` only: ε added to every diagonal entry of the dilation
    /// unitary before the dilation route runs.
    pub dilation_perturbation: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub bloch: Option<[f64; 3]>,
    pub density: Option<MatrixSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    Identity,
    Depolarizing,
    AmplitudeDamping,
    Kraus,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelSpec {
    pub preset: Preset,
    pub p: Option<f64>,
    pub kraus: Option<Vec<MatrixSpec>>,
    /// Dimension of the identity preset when no state fixes it.
    pub dim: Option<usize>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChiGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum PathSpec {
    GeodesicPolygon {
        vertices: Vec<[f64; 3]>,
        steps_per_edge: usize,
    },
    AxisRotation {
        axis: [f64; 3],
        angle: f64,
        steps: usize,
    },
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Pass threshold of `verify`.
    pub verify: Option<f64>,
    /// Visibility below which a phase is reported as undefined.
    pub phase: Option<f64>,
    /// Allowed completeness residual of explicit Kraus lists.
    pub completeness: Option<f64>,
    /// Trace, Hermiticity and positivity slack of explicit density matrices.
    pub state: Option<f64>,
    /// Parallel-transport residual above which `geomphase` warns.
    pub pt_residual: Option<f64>,
}

impl Tolerances {
    pub fn verify(&self) -> f64 {
        self.verify.unwrap_or(1e-10)
    }

    pub fn phase(&self) -> f64 {
        self.phase.unwrap_or(tol::PHASE)
    }

    pub fn completeness(&self) -> f64 {
        self.completeness.unwrap_or(tol::STRUCTURAL)
    }

    pub fn state(&self) -> f64 {
        self.state.unwrap_or(tol::EQUALITY)
    }

    pub fn pt_residual(&self) -> f64 {
        self.pt_residual.unwrap_or(tol::PT_RESIDUAL)
    }

    fn check(&self) -> Result<(), CliError> {
        let all = [
            ("verify", self.verify),
            ("phase", self.phase),
            ("completeness", self.completeness),
            ("state", self.state),
            ("pt_residual", self.pt_residual),
        ];
        for (name, value) in all {
            if let Some(v) = value {
                if !(v.is_finite() && v > 0.0) {
                    return Err(Error::InvalidParameter(format!("tolerance {name} = {v} must be positive")).into());
                }
            }
        }
        Ok(())
    }
}

impl JobConfig {
    /// Parses JSON; syntax errors carry their line and column.
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Input(format!("invalid config: {e}")))?;
        cfg.tolerances.check()?;
        Ok(cfg)
    }

    pub fn density(&self) -> Result<DensityMatrix, CliError> {
        let spec = self.state.as_ref().ok_or_else(|| missing("state"))?;
        match (&spec.bloch, &spec.density) {
            (Some(r), None) => Ok(density_from_bloch(&BlochVector::new(*r)?)),
            (None, Some(m)) => {
                let m = matrix("state.density", m)?;
                Ok(DensityMatrix::with_tolerance(m, self.tolerances.state())?)
            }
            (Some(_), Some(_)) => Err(CliError::Input(
                "state: give exactly one of \"bloch\" and \"density\"".into(),
            )),
            (None, None) => Err(CliError::Input(
                "state: one of \"bloch\" or \"density\" is required".into(),
            )),
        }
    }

    /// Builds the channel; `sys_dim` sizes the identity preset.
    pub fn channel(&self, sys_dim: Option<usize>) -> Result<KrausChannel, CliError> {
        let spec = self.channel.as_ref().ok_or_else(|| missing("channel"))?;
        let unexpected = |field: &str| {
            CliError::Input(format!("channel: field \"{field}\" does not apply to this preset"))
        };
        if spec.preset != Preset::Kraus && spec.kraus.is_some() {
            return Err(unexpected("kraus"));
        }
        if spec.preset != Preset::Identity && spec.dim.is_some() {
            return Err(unexpected("dim"));
        }
        let prob = || spec.p.ok_or_else(|| missing("channel.p"));
        let channel = match spec.preset {
            Preset::Identity => {
                if spec.p.is_some() {
                    return Err(unexpected("p"));
                }
                let n = match (spec.dim, sys_dim) {
                    (Some(d), Some(s)) if d != s => {
                        return Err(Error::DimensionMismatch(format!(
                            "identity channel dimension {d}, state dimension {s}"
                        ))
                        .into())
                    }
                    (Some(d), _) | (None, Some(d)) => d,
                    (None, None) => 2,
                };
                if n == 0 {
                    return Err(Error::InvalidParameter("channel.dim must be positive".into()).into());
                }
                KrausChannel::identity(n)
            }
            Preset::Depolarizing => depolarizing(prob()?)?,
            Preset::AmplitudeDamping => amplitude_damping(prob()?)?,
            Preset::Kraus => {
                if spec.p.is_some() {
                    return Err(unexpected("p"));
                }
                let list = spec.kraus.as_ref().ok_or_else(|| missing("channel.kraus"))?;
                let ops = list
                    .iter()
                    .enumerate()
                    .map(|(mu, m)| matrix(&format!("channel.kraus[{mu}]"), m))
                    .collect::<Result<Vec<_>, _>>()?;
                KrausChannel::with_tolerance(ops, self.tolerances.completeness())?
            }
        };
        if let Some(n) = sys_dim {
            if channel.sys_dim() != n {
                return Err(Error::DimensionMismatch(format!(
                    "channel acts on dimension {}, state has dimension {n}",
                    channel.sys_dim()
                ))
                .into());
            }
        }
        Ok(channel)
    }

    pub fn mu(&self) -> Result<usize, CliError> {
        self.mu.ok_or_else(|| missing("mu"))
    }

    pub fn chi_values(&self) -> Result<Vec<f64>, CliError> {
        let g = self.chi_grid.ok_or_else(|| missing("chi_grid"))?;
        if !(g.start.is_finite() && g.stop.is_finite()) || g.points == 0 {
            return Err(Error::InvalidParameter(
                "chi_grid needs finite bounds and at least one point".into(),
            )
            .into());
        }
        Ok(linspace(g.start, g.stop, g.points))
    }

    pub fn unitary_path(&self) -> Result<UnitaryPath, CliError> {
        match self.path.as_ref().ok_or_else(|| missing("path"))? {
            PathSpec::GeodesicPolygon {
                vertices,
                steps_per_edge,
            } => Ok(geodesic_polygon_path(vertices, *steps_per_edge)?),
            PathSpec::AxisRotation { axis, angle, steps } => Ok(axis_rotation_path(*axis, *angle, *steps)?),
        }
    }
}

fn missing(field: &str) -> CliError {
    CliError::Input(format!("missing field \"{field}\""))
}

fn matrix(name: &str, rows: &MatrixSpec) -> Result<ComplexMatrix, CliError> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || width == 0 || rows.iter().any(|r| r.len() != width) {
        return Err(CliError::Input(format!(
            "{name}: expected a non-empty rectangular array of [re, im] pairs"
        )));
    }
    let rows: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
        .collect();
    Ok(ComplexMatrix::from_rows(&rows)?)
}
