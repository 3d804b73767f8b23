//! Parameter sweeps with co-varying parameters.
//!
//! Presets:
//! - `fig2`: pump intensity `|α2|²` with `α1 = α2/20`, `n = 10¹⁹·α1`
//!   (m⁻³, the amplitude taken as a pure number) and `γ12 = 0.1·α1`.
//! - `fig3`: density with `α2 = 20`, `α1 = 1`, `γ12 = 0.1`; densities below
//!   10¹⁰ m⁻³ are raised to that floor.
//! - `fig4`: `γ12` with `n = 10¹⁹`, `α2 = 20`, `α1 = 1`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::params::SystemParams;
use crate::pipeline::evaluate_point_detailed;

/// Smallest density used by the `fig3` preset.
pub const FIG3_DENSITY_FLOOR: f64 = 1e10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Fig2,
    Fig3,
    Fig4,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scale {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    /// `|α2|²`.
    PumpIntensity,
    Alpha1,
    Alpha2,
    Density,
    Gamma12,
    Gamma1,
    Gamma2,
    Delta1,
    Delta2,
    Length,
    Radius,
    Omega,
}

impl SweepParam {
    pub const ALL: [SweepParam; 12] = [
        SweepParam::PumpIntensity,
        SweepParam::Alpha1,
        SweepParam::Alpha2,
        SweepParam::Density,
        SweepParam::Gamma12,
        SweepParam::Gamma1,
        SweepParam::Gamma2,
        SweepParam::Delta1,
        SweepParam::Delta2,
        SweepParam::Length,
        SweepParam::Radius,
        SweepParam::Omega,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepParam::PumpIntensity => "pump_intensity",
            SweepParam::Alpha1 => "alpha1",
            SweepParam::Alpha2 => "alpha2",
            SweepParam::Density => "density",
            SweepParam::Gamma12 => "gamma12",
            SweepParam::Gamma1 => "gamma1",
            SweepParam::Gamma2 => "gamma2",
            SweepParam::Delta1 => "delta1",
            SweepParam::Delta2 => "delta2",
            SweepParam::Length => "length",
            SweepParam::Radius => "radius",
            SweepParam::Omega => "omega",
        }
    }

    /// Amplitudes read as magnitudes.
    pub fn get(self, p: &SystemParams) -> f64 {
        match self {
            SweepParam::PumpIntensity => p.alpha2.norm_sqr(),
            SweepParam::Alpha1 => p.alpha1.norm(),
            SweepParam::Alpha2 => p.alpha2.norm(),
            SweepParam::Density => p.density,
            SweepParam::Gamma12 => p.gamma12,
            SweepParam::Gamma1 => p.gamma1,
            SweepParam::Gamma2 => p.gamma2,
            SweepParam::Delta1 => p.delta1,
            SweepParam::Delta2 => p.delta2,
            SweepParam::Length => p.length,
            SweepParam::Radius => p.radius,
            SweepParam::Omega => p.omega,
        }
    }

    /// Amplitudes keep their phase and take `v` as magnitude.
    pub fn set(self, p: &mut SystemParams, v: f64) {
        let with_phase = |z: C64, m: f64| C64::from_polar(m, if z.norm() > 0.0 { z.arg() } else { 0.0 });
        match self {
            SweepParam::PumpIntensity => p.alpha2 = with_phase(p.alpha2, v.sqrt()),
            SweepParam::Alpha1 => p.alpha1 = with_phase(p.alpha1, v),
            SweepParam::Alpha2 => p.alpha2 = with_phase(p.alpha2, v),
            SweepParam::Density => p.density = v,
            SweepParam::Gamma12 => p.gamma12 = v,
            SweepParam::Gamma1 => p.gamma1 = v,
            SweepParam::Gamma2 => p.gamma2 = v,
            SweepParam::Delta1 => p.delta1 = v,
            SweepParam::Delta2 => p.delta2 = v,
            SweepParam::Length => p.length = v,
            SweepParam::Radius => p.radius = v,
            SweepParam::Omega => p.omega = v,
        }
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SweepParam::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown sweep parameter `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rule {
    /// `target = factor · source`, reading `source` after earlier rules ran.
    Proportional { source: SweepParam, factor: f64 },
    Constant(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Covariation {
    pub target: SweepParam,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub preset: Preset,
    pub variable: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub scale: Scale,
    /// Applied in order after the swept variable is set.
    pub covariations: Vec<Covariation>,
}

impl SweepSpec {
    /// Default ranges and co-variation rules of a preset. `Custom` starts
    /// from a two-point linear density sweep with no co-variations.
    pub fn preset(preset: Preset) -> SweepSpec {
        use SweepParam::*;
        let prop = |target, source, factor| Covariation {
            target,
            rule: Rule::Proportional { source, factor },
        };
        let constant = |target, v| Covariation {
            target,
            rule: Rule::Constant(v),
        };
        match preset {
            Preset::Fig2 => SweepSpec {
                preset,
                variable: PumpIntensity,
                start: 1.0,
                stop: 400.0,
                points: 40,
                scale: Scale::Log,
                covariations: vec![
                    prop(Alpha1, Alpha2, 1.0 / 20.0),
                    prop(Density, Alpha1, 1e19),
                    prop(Gamma12, Alpha1, 0.1),
                ],
            },
            Preset::Fig3 => SweepSpec {
                preset,
                variable: Density,
                start: 1e17,
                stop: 2e19,
                points: 40,
                scale: Scale::Log,
                covariations: vec![
                    constant(Alpha2, 20.0),
                    constant(Alpha1, 1.0),
                    constant(Gamma12, 0.1),
                ],
            },
            Preset::Fig4 => SweepSpec {
                preset,
                variable: Gamma12,
                start: 0.0,
                stop: 6.0,
                points: 61,
                scale: Scale::Linear,
                covariations: vec![
                    constant(Density, 1e19),
                    constant(Alpha2, 20.0),
                    constant(Alpha1, 1.0),
                ],
            },
            Preset::Custom => SweepSpec {
                preset,
                variable: Density,
                start: 0.0,
                stop: 1e19,
                points: 2,
                scale: Scale::Linear,
                covariations: Vec::new(),
            },
        }
    }

    pub fn check(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::Config(format!("points must be >= 2, got {}", self.points)));
        }
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(Error::Config(format!(
                "need finite start < stop, got {} .. {}",
                self.start, self.stop
            )));
        }
        if self.scale == Scale::Log && self.start <= 0.0 {
            return Err(Error::Config("log scale needs start > 0".into()));
        }
        for (i, c) in self.covariations.iter().enumerate() {
            if c.target == self.variable {
                return Err(Error::Config(format!(
                    "co-variation target `{}` is the swept variable",
                    c.target
                )));
            }
            if self.covariations[..i].iter().any(|o| o.target == c.target) {
                return Err(Error::Config(format!(
                    "co-variation target `{}` listed twice",
                    c.target
                )));
            }
            match c.rule {
                Rule::Proportional { factor, .. } | Rule::Constant(factor) if !factor.is_finite() => {
                    return Err(Error::Config(format!("non-finite rule for `{}`", c.target)));
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Sweep values in ascending order; both endpoints are exact.
    pub fn values(&self) -> Vec<f64> {
        let n = self.points;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    return self.stop;
                }
                let t = i as f64 / (n - 1) as f64;
                match self.scale {
                    Scale::Linear => self.start + (self.stop - self.start) * t,
                    Scale::Log => self.start * (self.stop / self.start).powf(t),
                }
            })
            .collect()
    }

    /// Parameters for each sweep point.
    pub fn point_params(&self, base: &SystemParams) -> Result<Vec<(f64, SystemParams)>> {
        self.check()?;
        Ok(self
            .values()
            .into_iter()
            .map(|x| (x, self.apply(base, x)))
            .collect())
    }

    fn apply(&self, base: &SystemParams, x: f64) -> SystemParams {
        let mut p = base.clone();
        let mut value = x;
        if self.preset == Preset::Fig3 && self.variable == SweepParam::Density {
            value = value.max(FIG3_DENSITY_FLOOR);
        }
        self.variable.set(&mut p, value);
        for c in &self.covariations {
            let v = match c.rule {
                Rule::Proportional { source, factor } => factor * source.get(&p),
                Rule::Constant(v) => v,
            };
            c.target.set(&mut p, v);
        }
        p
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub sweep_value: f64,
    pub alpha1: f64,
    pub alpha2: f64,
    pub density: f64,
    pub gamma12: f64,
    pub v12: Option<f64>,
    pub du2: Option<f64>,
    pub dv2: Option<f64>,
    pub absorption: Option<f64>,
    pub sigma11: Option<f64>,
    pub sigma22: Option<f64>,
    pub sigma33: Option<f64>,
    pub entangled: Option<bool>,
    pub warnings: Vec<String>,
}

impl SweepRow {
    /// True when the point evaluated (possibly with warnings).
    pub fn succeeded(&self) -> bool {
        self.v12.is_some()
    }
}

pub fn evaluate_row(sweep_value: f64, p: &SystemParams) -> SweepRow {
    let mut row = SweepRow {
        sweep_value,
        alpha1: p.alpha1.norm(),
        alpha2: p.alpha2.norm(),
        density: p.density,
        gamma12: p.gamma12,
        v12: None,
        du2: None,
        dv2: None,
        absorption: None,
        sigma11: None,
        sigma22: None,
        sigma33: None,
        entangled: None,
        warnings: Vec::new(),
    };
    match evaluate_point_detailed(p) {
        Ok(r) => {
            row.v12 = Some(r.report.v12);
            row.du2 = Some(r.report.du2);
            row.dv2 = Some(r.report.dv2);
            row.absorption = r.report.absorption;
            row.sigma11 = Some(r.steady_state.get(1, 1).re);
            row.sigma22 = Some(r.steady_state.get(2, 2).re);
            row.sigma33 = Some(r.steady_state.get(3, 3).re);
            row.entangled = Some(r.report.entangled);
            row.warnings = r.warnings.iter().map(|w| w.to_string()).collect();
        }
        Err(e) => row.warnings.push(format!("error: {e}")),
    }
    row
}

/// Evaluates every point; `jobs = None` uses rayon's default pool size.
/// Rows come back in sweep order regardless of `jobs`. Per-point failures
/// are recorded in the row, never returned as an error.
pub fn run_sweep(spec: &SweepSpec, base: &SystemParams, jobs: Option<usize>) -> Result<Vec<SweepRow>> {
    base.check()?;
    let points = spec.point_params(base)?;
    let eval = || -> Vec<SweepRow> {
        points
            .par_iter()
            .map(|(x, p)| evaluate_row(*x, p))
            .collect()
    };
    match jobs {
        Some(1) => Ok(points.iter().map(|(x, p)| evaluate_row(*x, p)).collect()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            Ok(pool.install(eval))
        }
        None => Ok(eval()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig2_rules_follow_the_pump() {
        let spec = SweepSpec::preset(Preset::Fig2);
        let pts = spec.point_params(&SystemParams::default()).unwrap();
        assert_eq!(pts.len(), 40);
        let (x, p) = &pts[39];
        assert_eq!(*x, 400.0);
        assert!((p.alpha2.norm() - 20.0).abs() < 1e-12);
        assert!((p.alpha1.norm() - 1.0).abs() < 1e-12);
        assert!((p.density - 1e19).abs() < 1e6);
        assert!((p.gamma12 - 0.1).abs() < 1e-12);
        let (_, p0) = &pts[0];
        assert!((p0.alpha1.norm() - 0.05).abs() < 1e-15);
    }

    #[test]
    fn fig3_floor_replaces_zero_density() {
        let spec = SweepSpec {
            start: 0.0,
            stop: 1e19,
            points: 2,
            scale: Scale::Linear,
            ..SweepSpec::preset(Preset::Fig3)
        };
        let pts = spec.point_params(&SystemParams::default()).unwrap();
        assert_eq!(pts[0].1.density, FIG3_DENSITY_FLOOR);
        assert_eq!(pts[0].0, 0.0);
        assert_eq!(pts[1].1.density, 1e19);
    }

    #[test]
    fn log_values_hit_endpoints() {
        let v = SweepSpec::preset(Preset::Fig3).values();
        assert_eq!(v[0], 1e17);
        assert_eq!(*v.last().unwrap(), 2e19);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn invalid_specs_are_rejected() {
        let base = SweepSpec::preset(Preset::Fig4);
        let bad = [
            SweepSpec { points: 1, ..base.clone() },
            SweepSpec { start: 6.0, stop: 0.0, ..base.clone() },
            SweepSpec { scale: Scale::Log, ..base.clone() },
            SweepSpec {
                covariations: vec![Covariation { target: SweepParam::Gamma12, rule: Rule::Constant(1.0) }],
                ..base.clone()
            },
        ];
        for s in &bad {
            assert!(s.check().is_err(), "{s:?}");
        }
    }

    #[test]
    fn parameter_names_round_trip() {
        for p in SweepParam::ALL {
            assert_eq!(p.name().parse::<SweepParam>().unwrap(), p);
        }
        assert!("nope".parse::<SweepParam>().is_err());
    }

    #[test]
    fn failed_points_become_blank_rows() {
        let p = SystemParams {
            gamma12: 0.0,
            alpha1: C64::new(0.0, 0.0),
            alpha2: C64::new(0.0, 0.0),
            ..Default::default()
        };
        let row = evaluate_row(0.0, &p);
        assert!(!row.succeeded());
        assert!(row.warnings[0].starts_with("error: steady-state"));
    }
}
