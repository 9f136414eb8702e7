//! Run configuration: JSON parsing, validation, defaults, and the bundled
//! experiment presets.
//!
//! A config is one flat JSON document; unknown keys are rejected. `dt`
//! defaults to 1/(10 N^2) and `snapshot_interval` to t_end/8 when absent.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::evolution::InitialCurveSpec;
use crate::model::{ModelKind, ModelParams};

/// Fully validated configuration of one batch run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Vertex count N.
    pub n: usize,
    pub params: ModelParams,
    pub snapshot_interval: f64,
    pub initial_curve: InitialCurveSpec,
    /// Output directory; the CLI `--out` flag overrides or supplies it.
    pub output_dir: Option<PathBuf>,
    pub emit_svg: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    model: ModelKind,
    #[serde(rename = "N")]
    n: Option<usize>,
    sigma: Option<f64>,
    bmv: Option<f64>,
    ca: Option<f64>,
    h_r: Option<f64>,
    omega: Option<f64>,
    r_a: Option<f64>,
    samples: Option<usize>,
    seed: Option<u64>,
    dt: Option<f64>,
    t_end: Option<f64>,
    snapshot_interval: Option<f64>,
    h0: Option<f64>,
    initial_curve: Option<InitialCurveSpec>,
    output_dir: Option<PathBuf>,
    emit_svg: Option<bool>,
}

pub fn parse_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<RunConfig> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;

    // The magnetic model has no default capillary number.
    if raw.model == ModelKind::Magnetic && raw.ca.is_none() {
        return Err(Error::Validation(
            "Ca required for the magnetic model".into(),
        ));
    }
    let n = raw
        .n
        .ok_or_else(|| Error::Validation("N (vertex count) required".into()))?;
    if n < 3 {
        return Err(Error::Validation(format!("N = {n} is below 3")));
    }

    let t_end = raw.t_end.unwrap_or(1.0);
    let params = ModelParams {
        kind: raw.model,
        sigma: raw.sigma.unwrap_or(2e-4),
        bmv: raw.bmv.unwrap_or(0.0),
        ca: raw.ca.unwrap_or(100.0),
        h_r: raw.h_r.unwrap_or(0.25),
        omega: raw.omega.unwrap_or(100.0),
        r_a: raw.r_a.unwrap_or(1.0),
        mc_samples: raw.samples.unwrap_or(1000),
        seed: raw.seed.unwrap_or(0),
        dt: raw.dt.unwrap_or(1.0 / (10.0 * (n * n) as f64)),
        t_end,
        h0: raw.h0.unwrap_or(1.0),
    };
    params.validate()?;

    let snapshot_interval = raw.snapshot_interval.unwrap_or(t_end / 8.0);
    if t_end > 0.0 && snapshot_interval <= 0.0 {
        return Err(Error::Validation(
            "snapshot_interval must be positive".into(),
        ));
    }

    Ok(RunConfig {
        n,
        params,
        snapshot_interval,
        initial_curve: raw.initial_curve.unwrap_or(InitialCurveSpec {
            r0: 1.0,
            modes: vec![],
        }),
        output_dir: raw.output_dir,
        emit_svg: raw.emit_svg.unwrap_or(false),
    })
}

/// Bundled experiment configs, reproducing the published parameter tables.
pub const PRESETS: &[(&str, &str)] = &[
    (
        "tdg_table1",
        r#"{
  "model": "tdg",
  "N": 300,
  "sigma": 2.0e-4,
  "r_a": 1.0,
  "omega": 100.0,
  "t_end": 2.58,
  "snapshot_interval": 0.36,
  "initial_curve": {
    "r0": 1.0,
    "modes": [
      { "kind": "cos", "k": 6, "amplitude": 0.02 },
      { "kind": "sin", "k": 14, "amplitude": 0.02 },
      { "kind": "cos", "k": 30, "amplitude": 0.02 },
      { "kind": "sin", "k": 50, "amplitude": 0.02 }
    ]
  }
}
"#,
    ),
    (
        "magnetic_bmv0_ca100",
        r#"{
  "model": "magnetic",
  "N": 300,
  "bmv": 0.0,
  "ca": 100.0,
  "h_r": 0.25,
  "samples": 1000,
  "r_a": 1.0,
  "omega": 100.0,
  "t_end": 2.94,
  "snapshot_interval": 0.42,
  "initial_curve": {
    "r0": 1.0,
    "modes": [
      { "kind": "cos", "k": 6, "amplitude": 0.02 },
      { "kind": "sin", "k": 14, "amplitude": 0.02 },
      { "kind": "cos", "k": 30, "amplitude": 0.02 },
      { "kind": "sin", "k": 50, "amplitude": 0.02 }
    ]
  }
}
"#,
    ),
    (
        "magnetic_bmv25_ca100",
        r#"{
  "model": "magnetic",
  "N": 300,
  "bmv": 25.0,
  "ca": 100.0,
  "h_r": 0.25,
  "samples": 1000,
  "r_a": 1.0,
  "omega": 100.0,
  "t_end": 2.94,
  "snapshot_interval": 0.42,
  "initial_curve": {
    "r0": 1.0,
    "modes": [
      { "kind": "cos", "k": 6, "amplitude": 0.02 },
      { "kind": "sin", "k": 14, "amplitude": 0.02 },
      { "kind": "cos", "k": 30, "amplitude": 0.02 },
      { "kind": "sin", "k": 50, "amplitude": 0.02 }
    ]
  }
}
"#,
    ),
    (
        "magnetic_bmv0_ca50",
        r#"{
  "model": "magnetic",
  "N": 300,
  "bmv": 0.0,
  "ca": 50.0,
  "h_r": 0.25,
  "samples": 1000,
  "r_a": 1.0,
  "omega": 100.0,
  "t_end": 2.94,
  "snapshot_interval": 0.42,
  "initial_curve": {
    "r0": 1.0,
    "modes": [
      { "kind": "cos", "k": 4, "amplitude": 0.05 },
      { "kind": "cos", "k": 10, "amplitude": -0.05 },
      { "kind": "cos", "k": 22, "amplitude": 0.05 },
      { "kind": "sin", "k": 6, "amplitude": -0.05 },
      { "kind": "sin", "k": 10, "amplitude": 0.05 }
    ]
  }
}
"#,
    ),
    (
        "magnetic_bmv35_ca50",
        r#"{
  "model": "magnetic",
  "N": 300,
  "bmv": 35.0,
  "ca": 50.0,
  "h_r": 0.25,
  "samples": 1000,
  "r_a": 1.0,
  "omega": 100.0,
  "t_end": 2.94,
  "snapshot_interval": 0.42,
  "initial_curve": {
    "r0": 1.0,
    "modes": [
      { "kind": "cos", "k": 4, "amplitude": 0.05 },
      { "kind": "cos", "k": 10, "amplitude": -0.05 },
      { "kind": "cos", "k": 22, "amplitude": 0.05 },
      { "kind": "sin", "k": 6, "amplitude": -0.05 },
      { "kind": "sin", "k": 10, "amplitude": 0.05 }
    ]
  }
}
"#,
    ),
];

pub fn preset(name: &str) -> Option<&'static str> {
    PRESETS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, json)| *json)
}
