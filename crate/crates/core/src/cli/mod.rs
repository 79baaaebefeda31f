//! Command implementations behind the `cp-phase` binary.
//!
//! Each command takes a parsed [`JobConfig`] and returns a typed report;
//! [`run`] ties parsing, dispatch and rendering together and decides the
//! exit code: 0 success, 1 failed verification, 2 bad input, 3 violated
//! domain invariant.

mod config;

use std::fmt::{self, Write as _};

use serde::Serialize;

pub use config::{ChannelSpec, ChiGrid, JobConfig, MatrixSpec, PathSpec, Preset, StateSpec, Tolerances};

use crate::channels::{dilate, kraus_from_dilation, KrausChannel};
use crate::error::Error;
use crate::geometry::{solid_angle, transported_patterns, BlochLoop, UnitaryPath};
use crate::interferometry::{dilation_trace, fringe, pattern_set, purification_overlap, InterferencePattern};
use crate::numerics::ComplexMatrix;
use crate::states::{bloch_from_density, norm3, DensityMatrix};
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Pattern,
    Fringe,
    Verify,
    Geomphase,
    Dilate,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Unparseable JSON, missing or contradictory fields.
    Input(String),
    /// The input parsed but violates a mathematical invariant.
    Domain(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input(_) => 2,
            Self::Domain(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Input(msg) => write!(f, "input error: {msg}"),
            Self::Domain(e) => write!(f, "invariant violated: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        Self::Domain(e)
    }
}

/// Rendered command output and the exit code it warrants.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub exit_code: i32,
}

/// Parses `config_json` and runs `command`. `tol` overrides the `verify`
/// threshold from the config.
pub fn run(command: Command, config_json: &str, tol: Option<f64>) -> Result<Outcome, CliError> {
    let mut cfg = JobConfig::from_json(config_json)?;
    if let Some(t) = tol {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::Input(format!("--tol must be a positive number, got {t}")));
        }
        cfg.tolerances.verify = Some(t);
    }
    let ok = |text: String| Outcome { text, exit_code: 0 };
    Ok(match command {
        Command::Pattern => ok(cmd_pattern(&cfg)?.to_string()),
        Command::Fringe => ok(cmd_fringe(&cfg)?.to_csv()),
        Command::Verify => {
            let report = cmd_verify(&cfg)?;
            Outcome {
                exit_code: if report.passed { 0 } else { 1 },
                text: report.to_string(),
            }
        }
        Command::Geomphase => ok(cmd_geomphase(&cfg)?.to_string()),
        Command::Dilate => ok(cmd_dilate(&cfg)?.to_json()),
    })
}

/// One row per environment index.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternReport {
    pub rows: Vec<InterferencePattern>,
}

impl fmt::Display for PatternReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>4}  {:>18}  {:>18}  {:>18}  {:>18}  {:>13}",
            "mu", "re", "im", "visibility", "phase", "phase_defined"
        )?;
        for p in &self.rows {
            writeln!(
                f,
                "{:>4}  {:>18}  {:>18}  {:>18}  {:>18}  {:>13}",
                p.mu,
                fixed(p.value.re),
                fixed(p.value.im),
                fixed(p.visibility),
                fixed(p.phase),
                p.phase_defined
            )?;
        }
        Ok(())
    }
}

fn with_phase_tol(patterns: Vec<InterferencePattern>, phase_tol: f64) -> Vec<InterferencePattern> {
    patterns
        .into_iter()
        .map(|p| InterferencePattern::with_phase_tolerance(p.mu, p.value, phase_tol))
        .collect()
}

fn state_and_channel(cfg: &JobConfig) -> Result<(DensityMatrix, KrausChannel), CliError> {
    let rho = cfg.density()?;
    let channel = cfg.channel(Some(rho.dim()))?;
    Ok((rho, channel))
}

pub fn cmd_pattern(cfg: &JobConfig) -> Result<PatternReport, CliError> {
    let (rho, channel) = state_and_channel(cfg)?;
    let rows = with_phase_tol(pattern_set(&channel, &rho)?, cfg.tolerances.phase());
    Ok(PatternReport { rows })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FringeReport {
    pub mu: usize,
    pub chi: Vec<f64>,
    pub intensity: Vec<f64>,
}

impl FringeReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("chi,intensity\n");
        for (c, i) in self.chi.iter().zip(&self.intensity) {
            let _ = writeln!(out, "{},{}", sig15(*c), sig15(*i));
        }
        out
    }
}

pub fn cmd_fringe(cfg: &JobConfig) -> Result<FringeReport, CliError> {
    let mu = cfg.mu()?;
    let chi = cfg.chi_values()?;
    let (rho, channel) = state_and_channel(cfg)?;
    if mu >= channel.env_dim() {
        return Err(Error::IndexOutOfRange {
            index: mu,
            len: channel.env_dim(),
        }
        .into());
    }
    let pat = pattern_set(&channel, &rho)?[mu];
    let pat = InterferencePattern::with_phase_tolerance(mu, pat.value, cfg.tolerances.phase());
    let intensity = fringe(&pat, &chi);
    Ok(FringeReport { mu, chi, intensity })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRow {
    pub mu: usize,
    pub kraus: Complex64,
    pub dilation: Complex64,
    pub purification: Complex64,
    /// Largest pairwise distance between the three values.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>4}  {:>34}  {:>34}  {:>34}  {:>10}",
            "mu", "kraus", "dilation", "purification", "deviation"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>4}  {:>34}  {:>34}  {:>34}  {:>10.3e}",
                r.mu,
                complex(r.kraus),
                complex(r.dilation),
                complex(r.purification),
                r.deviation
            )?;
        }
        writeln!(f, "max deviation {:.3e} (tolerance {:.1e})", self.max_deviation, self.tolerance)?;
        writeln!(f, "{}", if self.passed { "PASS" } else { "FAIL" })
    }
}

/// Evaluates every pattern by the Kraus trace, the dilation trace and the
/// purification overlap and compares them.
pub fn cmd_verify(cfg: &JobConfig) -> Result<VerifyReport, CliError> {
    let (rho, channel) = state_and_channel(cfg)?;
    let d = dilate(&channel)?;
    let (n, k) = (d.sys_dim(), d.env_dim());
    let mut u_dil = d.unitary().clone();
    if let Some(eps) = cfg.dilation_perturbation {
        if !eps.is_finite() {
            return Err(Error::InvalidParameter("dilation_perturbation must be finite".into()).into());
        }
        u_dil = &u_dil + &ComplexMatrix::identity(n * k).scale_real(eps);
    }
    let kraus = pattern_set(&channel, &rho)?;
    let mut rows = Vec::with_capacity(k);
    for (mu, pk) in kraus.iter().enumerate() {
        let dil = dilation_trace(&u_dil, n, k, &rho, mu)?;
        let pur = purification_overlap(&d, &rho, mu)?.value;
        let deviation = (pk.value - dil).norm().max((pk.value - pur).norm()).max((dil - pur).norm());
        rows.push(VerifyRow {
            mu,
            kraus: pk.value,
            dilation: dil,
            purification: pur,
            deviation,
        });
    }
    let max_deviation = rows.iter().map(|r| r.deviation).fold(0.0, f64::max);
    let tolerance = cfg.tolerances.verify();
    Ok(VerifyReport {
        rows,
        max_deviation,
        tolerance,
        passed: max_deviation < tolerance,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeomphaseReport {
    pub patterns: PatternReport,
    pub residual_before: f64,
    pub residual_after: f64,
    /// Oriented solid angle of the loop, when there is a closed one.
    pub solid_angle: Option<f64>,
    pub cyclic: bool,
    pub warnings: Vec<String>,
}

impl fmt::Display for GeomphaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.patterns)?;
        writeln!(f, "pt_residual_before  {:.6e}", self.residual_before)?;
        writeln!(f, "pt_residual_after   {:.6e}", self.residual_after)?;
        match self.solid_angle {
            Some(omega) => writeln!(f, "solid_angle         {}", fixed(omega))?,
            None => writeln!(f, "solid_angle         n/a")?,
        }
        writeln!(f, "cyclic              {}", self.cyclic)?;
        for w in &self.warnings {
            writeln!(f, "warning: {w}")?;
        }
        Ok(())
    }
}

/// Transports the configured path in the eigenbasis of ρ, then applies the
/// channel to the final transporter and reports the pattern set.
pub fn cmd_geomphase(cfg: &JobConfig) -> Result<GeomphaseReport, CliError> {
    let (rho, channel) = state_and_channel(cfg)?;
    let path = cfg.unitary_path()?;
    let tp = transported_patterns(&channel, &rho, &path)?;
    let solid_angle = match cfg.path.as_ref() {
        Some(PathSpec::GeodesicPolygon { vertices, .. }) => {
            Some(solid_angle(&BlochLoop::geodesic_polygon(vertices.clone())?)?)
        }
        _ => traced_solid_angle(&path, &rho)?,
    };
    let mut warnings = Vec::new();
    let threshold = cfg.tolerances.pt_residual();
    if tp.residual_after > threshold {
        warnings.push(format!(
            "parallel-transport residual {:.3e} exceeds {threshold:.1e}",
            tp.residual_after
        ));
    }
    if !tp.cyclic {
        warnings.push("final transporter is not diagonal in the state eigenbasis".into());
    }
    Ok(GeomphaseReport {
        patterns: PatternReport {
            rows: with_phase_tol(tp.patterns, cfg.tolerances.phase()),
        },
        residual_before: tp.residual_before,
        residual_after: tp.residual_after,
        solid_angle,
        cyclic: tp.cyclic,
        warnings,
    })
}

/// Solid angle swept by the direction of the Bloch vector along the path,
/// if that direction returns to its start.
fn traced_solid_angle(path: &UnitaryPath, rho: &DensityMatrix) -> Result<Option<f64>, CliError> {
    if rho.dim() != 2 {
        return Ok(None);
    }
    let mut samples = Vec::with_capacity(path.len());
    for u in path.unitaries() {
        let m = &(u * rho.matrix()) * &u.adjoint();
        let r = bloch_from_density(&DensityMatrix::new(m)?)?.components();
        let len = norm3(r);
        if len < 1e-12 {
            return Ok(None);
        }
        samples.push(r.map(|x| x / len));
    }
    let (first, last) = (samples[0], samples[samples.len() - 1]);
    if norm3(std::array::from_fn(|i| first[i] - last[i])) > 1e-9 || samples.len() < 4 {
        return Ok(None);
    }
    *samples.last_mut().expect("non-empty") = first;
    Ok(Some(solid_angle(&BlochLoop::discretized(samples)?)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DilateReport {
    pub sys_dim: usize,
    pub env_dim: usize,
    /// Row-major, entries as [re, im].
    pub unitary: Vec<Vec<[f64; 2]>>,
    pub unitarity_residual: f64,
    /// max |m_mu - <mu_e|U|0_e>| over all Kraus operators.
    pub roundtrip_residual: f64,
}

impl DilateReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }
}

pub fn cmd_dilate(cfg: &JobConfig) -> Result<DilateReport, CliError> {
    let sys_dim = match cfg.state {
        Some(_) => Some(cfg.density()?.dim()),
        None => None,
    };
    let channel = cfg.channel(sys_dim)?;
    let d = dilate(&channel)?;
    let roundtrip_residual = kraus_from_dilation(&d)?.max_abs_diff(&channel);
    Ok(DilateReport {
        sys_dim: d.sys_dim(),
        env_dim: d.env_dim(),
        unitary: d
            .unitary()
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
            .collect(),
        unitarity_residual: d.unitary().unitarity_residual(),
        roundtrip_residual,
    })
}

/// 12 decimals with negative zero folded to zero.
fn fixed(x: f64) -> String {
    let s = format!("{x:.12}");
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

fn complex(z: Complex64) -> String {
    let im = fixed(z.im);
    match im.strip_prefix('-') {
        Some(mag) => format!("{} - {}i", fixed(z.re), mag),
        None => format!("{} + {}i", fixed(z.re), im),
    }
}

/// `%.15g`: 15 significant digits, trailing zeros dropped, exponent form
/// outside [1e-5, 1e15).
pub fn sig15(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.14e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa.to_string()), exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
