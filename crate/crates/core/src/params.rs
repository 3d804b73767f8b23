//! Physical inputs, unit conventions and the atom-field coupling.
//!
//! Every rate, detuning, Rabi frequency and Fourier frequency is an angular
//! frequency in rad·μs⁻¹ (numerically the "MHz" values quoted for the
//! experiment). Lengths are in metres and densities in m⁻³.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;

/// ⁸⁵Rb D₁ wavelength, used for both arms unless overridden.
pub const RB85_D1_WAVELENGTH: f64 = 794.98e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Speed of light in m·μs⁻¹.
    pub c: f64,
    /// Reduced Planck constant in J·s.
    pub hbar: f64,
    /// Vacuum permittivity in F·m⁻¹.
    pub eps0: f64,
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        PhysicalConstants {
            c: 299.792458,
            hbar: 1.054_571_817e-34,
            eps0: 8.854_187_812_8e-12,
        }
    }
}

impl PhysicalConstants {
    pub fn c_si(&self) -> f64 {
        self.c * 1e6
    }
}

/// How the Langevin noise strength is scaled against the vacuum level of
/// the field fluctuations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NoiseNormalization {
    /// `⟨F F⟩ → (c/N)·2D` in units where the input vacuum is 1. This is the
    /// scaling that keeps the output field commutators at their canonical
    /// values.
    #[default]
    Commutator,
    /// `⟨F F⟩ → (L/N)·D` taken directly against a unit vacuum. It does not
    /// preserve the field commutators; kept for comparison with published
    /// curves that use it.
    Literal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    pub delta1: f64,
    pub delta2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma12: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub density: f64,
    pub length: f64,
    pub radius: f64,
    pub alpha1: C64,
    pub alpha2: C64,
    pub omega: f64,
    pub noise_normalization: NoiseNormalization,
}

impl Default for SystemParams {
    /// Resonant working point with `α₂ = 20α₁ = 20`, `γ₁₂ = 0.1`,
    /// `n = 10¹⁹ m⁻³`.
    fn default() -> Self {
        SystemParams {
            delta1: 0.0,
            delta2: 0.0,
            gamma1: 3.0,
            gamma2: 3.0,
            gamma12: 0.1,
            lambda1: RB85_D1_WAVELENGTH,
            lambda2: RB85_D1_WAVELENGTH,
            density: 1e19,
            length: 0.06,
            radius: 2e-4,
            alpha1: C64::new(1.0, 0.0),
            alpha2: C64::new(20.0, 0.0),
            omega: 0.0,
            noise_normalization: NoiseNormalization::Commutator,
        }
    }
}

impl SystemParams {
    /// Optical coherence decay, `γ₁₃ = γ₂₃ = (γ₁+γ₂)/2`.
    pub fn gamma13(&self) -> f64 {
        (self.gamma1 + self.gamma2) / 2.0
    }

    pub fn gamma23(&self) -> f64 {
        self.gamma13()
    }

    /// Interaction volume `π r² L`.
    pub fn volume(&self) -> f64 {
        PI * self.radius * self.radius * self.length
    }

    pub fn atom_number(&self) -> f64 {
        self.density * self.volume()
    }

    /// Checks the hard invariants. A zero density is accepted and describes
    /// an empty medium.
    pub fn check(&self) -> Result<()> {
        let finite = [
            ("delta1", self.delta1),
            ("delta2", self.delta2),
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("gamma12", self.gamma12),
            ("lambda1", self.lambda1),
            ("lambda2", self.lambda2),
            ("density", self.density),
            ("length", self.length),
            ("radius", self.radius),
            ("alpha1", self.alpha1.re + self.alpha1.im),
            ("alpha2", self.alpha2.re + self.alpha2.im),
            ("omega", self.omega),
        ];
        if let Some((name, _)) = finite.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::InvalidParams(format!("{name} is not finite")));
        }
        let positive = [
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("lambda1", self.lambda1),
            ("lambda2", self.lambda2),
            ("length", self.length),
            ("radius", self.radius),
        ];
        if let Some((name, v)) = positive.iter().find(|(_, v)| *v <= 0.0) {
            return Err(Error::InvalidParams(format!("{name} must be > 0, got {v}")));
        }
        if self.gamma12 < 0.0 {
            return Err(Error::InvalidParams(format!(
                "gamma12 must be >= 0, got {}",
                self.gamma12
            )));
        }
        if self.density < 0.0 {
            return Err(Error::InvalidParams(format!(
                "density must be >= 0, got {}",
                self.density
            )));
        }
        Ok(())
    }
}

/// Atom-field coupling constants (rad·μs⁻¹) and the dipole moments (C·m)
/// they derive from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Couplings {
    pub g1: f64,
    pub g2: f64,
    pub mu13: f64,
    pub mu23: f64,
}

impl Couplings {
    /// Mean probe Rabi frequency `g₁⟨a₁⟩`.
    pub fn rabi1(&self, p: &SystemParams) -> C64 {
        p.alpha1 * self.g1
    }

    /// Mean pump Rabi frequency `g₂⟨a₂⟩`.
    pub fn rabi2(&self, p: &SystemParams) -> C64 {
        p.alpha2 * self.g2
    }
}

/// Dipole moments from the Weisskopf–Wigner relation on each arm's partial
/// decay rate, then `g = μ·√(ħω/2ε₀V)/ħ`.
pub fn derive_couplings(p: &SystemParams, k: &PhysicalConstants) -> Result<Couplings> {
    let volume = p.volume();
    if !(volume.is_finite() && volume > 0.0) {
        return Err(Error::NonFinite {
            quantity: "interaction volume",
        });
    }
    let c = k.c_si();
    let arm = |lambda: f64, gamma_per_us: f64, mu_name, g_name| -> Result<(f64, f64)> {
        let omega = 2.0 * PI * c / lambda;
        let gamma = gamma_per_us * 1e6;
        let mu = (3.0 * PI * k.eps0 * k.hbar * c.powi(3) * gamma / omega.powi(3)).sqrt();
        if !mu.is_finite() {
            return Err(Error::NonFinite { quantity: mu_name });
        }
        let photon_field = (k.hbar * omega / (2.0 * k.eps0 * volume)).sqrt();
        let g = mu * photon_field / k.hbar * 1e-6;
        if !g.is_finite() {
            return Err(Error::NonFinite { quantity: g_name });
        }
        Ok((mu, g))
    };
    let (mu13, g1) = arm(p.lambda1, p.gamma1, "mu13", "g1")?;
    let (mu23, g2) = arm(p.lambda2, p.gamma2, "mu23", "g2")?;
    Ok(Couplings { g1, g2, mu13, mu23 })
}

/// Non-fatal conditions under which the model's assumptions are shaky.
#[derive(Debug, Clone, PartialEq)]
pub enum Warning {
    /// `g₂|α₂| < 10·√(γ₁₂γ₁₃)`: outside the EIT regime the no-depletion
    /// treatment relies on.
    RegimeMarginal { pump_rabi: f64, threshold: f64 },
    /// Normalized probe absorption above 0.1.
    StrongAbsorption { absorption: f64 },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::RegimeMarginal {
                pump_rabi,
                threshold,
            } => write!(
                f,
                "EIT regime marginal: pump Rabi {pump_rabi:.4e} below {threshold:.4e}"
            ),
            Warning::StrongAbsorption { absorption } => write!(
                f,
                "absorption {absorption:.4e} above 0.1: no-depletion assumption questionable"
            ),
        }
    }
}

pub const REGIME_FACTOR: f64 = 10.0;
pub const ABSORPTION_WARN_LEVEL: f64 = 0.1;

pub fn validate(p: &SystemParams, k: &PhysicalConstants) -> Vec<Warning> {
    let mut warnings = Vec::new();
    let Ok(g) = derive_couplings(p, k) else {
        return warnings;
    };
    let pump_rabi = g.rabi2(p).norm();
    let threshold = REGIME_FACTOR * (p.gamma12 * p.gamma13()).sqrt();
    if pump_rabi < threshold {
        warnings.push(Warning::RegimeMarginal {
            pump_rabi,
            threshold,
        });
    }
    if p.alpha1.norm() > 0.0 {
        if let Ok(s) = crate::steady_state::solve_steady_state(p, &g) {
            if let Ok(absorption) = crate::steady_state::absorption_coefficient(&s, p, &g) {
                if absorption > ABSORPTION_WARN_LEVEL {
                    warnings.push(Warning::StrongAbsorption { absorption });
                }
            }
        }
    }
    warnings
}
