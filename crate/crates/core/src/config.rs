//! TOML run configuration.
//!
//! ```toml
//! [system]
//! gamma12_mhz = 0.1
//! density_per_m3 = 1e19
//! alpha1 = 1.0          # or [re, im]
//! alpha2 = 20.0
//!
//! [sweep]
//! preset = "fig3"
//! points = 40
//! ```
//!
//! Every `[system]` key is optional and defaults to the resonant working
//! point. `[sweep]` starts from the preset's defaults; an explicit
//! `[[sweep.covary]]` list replaces the preset's co-variations.

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::params::{NoiseNormalization, SystemParams};
use crate::sweep::{Covariation, Preset, Rule, Scale, SweepParam, SweepSpec};

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub system: SystemParams,
    pub sweep: Option<SweepSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Amplitude {
    Real(f64),
    Complex([f64; 2]),
}

impl Amplitude {
    fn value(&self) -> C64 {
        match *self {
            Amplitude::Real(x) => C64::new(x, 0.0),
            Amplitude::Complex([re, im]) => C64::new(re, im),
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemSection {
    delta1_mhz: Option<f64>,
    delta2_mhz: Option<f64>,
    gamma1_mhz: Option<f64>,
    gamma2_mhz: Option<f64>,
    gamma12_mhz: Option<f64>,
    lambda1_nm: Option<f64>,
    lambda2_nm: Option<f64>,
    density_per_m3: Option<f64>,
    length_m: Option<f64>,
    radius_m: Option<f64>,
    alpha1: Option<Amplitude>,
    alpha2: Option<Amplitude>,
    omega_mhz: Option<f64>,
    noise_normalization: Option<NoiseNormalization>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CovarySection {
    target: String,
    source: Option<String>,
    factor: Option<f64>,
    value: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepSection {
    preset: Preset,
    variable: Option<String>,
    start: Option<f64>,
    stop: Option<f64>,
    points: Option<usize>,
    scale: Option<Scale>,
    covary: Option<Vec<CovarySection>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    system: SystemSection,
    sweep: Option<SweepSection>,
}

impl SystemSection {
    fn into_params(self) -> SystemParams {
        let d = SystemParams::default();
        SystemParams {
            delta1: self.delta1_mhz.unwrap_or(d.delta1),
            delta2: self.delta2_mhz.unwrap_or(d.delta2),
            gamma1: self.gamma1_mhz.unwrap_or(d.gamma1),
            gamma2: self.gamma2_mhz.unwrap_or(d.gamma2),
            gamma12: self.gamma12_mhz.unwrap_or(d.gamma12),
            lambda1: self.lambda1_nm.map_or(d.lambda1, |x| x * 1e-9),
            lambda2: self.lambda2_nm.map_or(d.lambda2, |x| x * 1e-9),
            density: self.density_per_m3.unwrap_or(d.density),
            length: self.length_m.unwrap_or(d.length),
            radius: self.radius_m.unwrap_or(d.radius),
            alpha1: self.alpha1.map_or(d.alpha1, |a| a.value()),
            alpha2: self.alpha2.map_or(d.alpha2, |a| a.value()),
            omega: self.omega_mhz.unwrap_or(d.omega),
            noise_normalization: self.noise_normalization.unwrap_or(d.noise_normalization),
        }
    }
}

impl CovarySection {
    fn into_covariation(self) -> Result<Covariation> {
        let target: SweepParam = self.target.parse()?;
        let rule = match (self.source, self.factor, self.value) {
            (Some(src), Some(factor), None) => Rule::Proportional {
                source: src.parse()?,
                factor,
            },
            (None, None, Some(v)) => Rule::Constant(v),
            _ => {
                return Err(Error::Config(format!(
                    "covary `{target}`: give either `source` and `factor`, or `value`"
                )))
            }
        };
        Ok(Covariation { target, rule })
    }
}

impl SweepSection {
    fn into_spec(self) -> Result<SweepSpec> {
        let mut spec = SweepSpec::preset(self.preset);
        if self.preset == Preset::Custom && self.variable.is_none() {
            return Err(Error::Config("custom sweep needs `variable`".into()));
        }
        if let Some(v) = self.variable {
            spec.variable = v.parse()?;
        }
        if let Some(x) = self.start {
            spec.start = x;
        }
        if let Some(x) = self.stop {
            spec.stop = x;
        }
        if let Some(n) = self.points {
            spec.points = n;
        }
        if let Some(s) = self.scale {
            spec.scale = s;
        }
        if let Some(list) = self.covary {
            spec.covariations = list
                .into_iter()
                .map(CovarySection::into_covariation)
                .collect::<Result<_>>()?;
        }
        spec.check()?;
        Ok(spec)
    }
}

impl Config {
    pub fn from_toml(text: &str) -> Result<Config> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let system = raw.system.into_params();
        system.check().map_err(|e| Error::Config(e.to_string()))?;
        let sweep = raw.sweep.map(SweepSection::into_spec).transpose()?;
        Ok(Config { system, sweep })
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_owned(),
            source,
        })?;
        Config::from_toml(&text)
    }
}
